//! Components of the double-point curve: decomposition, twist pairing,
//! pairwise intersections and the Milnor number.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::germ::{corank, fold_normal_data, multipoint_data, CurveRoute, DoubleCurve, Germ, GermError};
use crate::localring::{
    intersection_multiplicity, milnor_number, quotient_dim, Dimension, LocalIdeal, LocalRingError,
};
use crate::mpoly::{factor_components, MpolyError, Poly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CurveError {
    #[error("overrides required for {stage}: {hint}")]
    OverridesRequired { stage: &'static str, hint: String },
    #[error("override validation failed: {0}")]
    ValidationFailed(String),
    #[error("components {0} and {1} share a branch")]
    RepeatedComponent(usize, usize),
    #[error("curve is not reduced")]
    NotReduced,
    #[error("curve has a non-isolated singularity")]
    NonIsolated,
    #[error("component {0} lies on the axis v = 0")]
    OnAxis(usize),
    #[error(transparent)]
    Germ(#[from] GermError),
    #[error(transparent)]
    Local(#[from] LocalRingError),
    #[error(transparent)]
    Poly(#[from] MpolyError),
}

impl CurveError {
    pub fn overrides_required(&self) -> bool {
        match self {
            CurveError::OverridesRequired { .. } => true,
            CurveError::Germ(g) => g.overrides_required(),
            _ => false,
        }
    }
}

/// One irreducible component of the image of `D`, in terms of 0-based
/// component indices of `D`. Pairs are stored with the smaller index first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ImageComponent {
    Twisted(usize),
    Untwisted(usize, usize),
}

impl ImageComponent {
    pub fn untwisted(i: usize, j: usize) -> Self {
        ImageComponent::Untwisted(i.min(j), i.max(j))
    }

    pub fn members(&self) -> Vec<usize> {
        match *self {
            ImageComponent::Twisted(i) => vec![i],
            ImageComponent::Untwisted(i, j) => vec![i, j],
        }
    }

    pub fn is_twisted(&self) -> bool {
        matches!(self, ImageComponent::Twisted(_))
    }
}

impl fmt::Display for ImageComponent {
    /// 1-based, as in reports.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ImageComponent::Twisted(i) => write!(f, "{{{}}}", i + 1),
            ImageComponent::Untwisted(i, j) => write!(f, "{{{},{}}}", i + 1, j + 1),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ComponentSet {
    pub curve: Poly,
    pub components: Vec<Poly>,
    /// Ordered by smallest member.
    pub pairing: Vec<ImageComponent>,
    /// Symmetric, zero diagonal.
    pub intersection: Vec<Vec<u64>>,
    /// `D_i . {v = 0}`, present on the fold route only.
    pub v_axis_mult: Option<Vec<u64>>,
}

impl ComponentSet {
    pub fn partner(&self, i: usize) -> Option<usize> {
        self.pairing.iter().find_map(|c| match *c {
            ImageComponent::Untwisted(a, b) if a == i => Some(b),
            ImageComponent::Untwisted(a, b) if b == i => Some(a),
            _ => None,
        })
    }

    pub fn untwisted_pairs(&self) -> Vec<(usize, usize)> {
        self.pairing
            .iter()
            .filter_map(|c| match *c {
                ImageComponent::Untwisted(a, b) => Some((a, b)),
                _ => None,
            })
            .collect()
    }

    /// `sum over ordered pairs i != k of D_i . D_k`.
    pub fn ordered_pair_sum(&self) -> u64 {
        self.intersection.iter().flatten().sum()
    }
}

/// Irreducible components of a reduced curve, or the validated override.
pub fn decompose(curve: &Poly, supplied: Option<&[Poly]>) -> Result<Vec<Poly>, CurveError> {
    if let Some(comps) = supplied {
        for (i, h) in comps.iter().enumerate() {
            if h.is_constant() || !h.vanishes_at_origin() {
                return Err(CurveError::ValidationFailed(format!(
                    "component {} does not pass through the origin",
                    i + 1
                )));
            }
            if let Some(j) = comps[..i].iter().position(|g| g.is_associate(h)) {
                return Err(CurveError::RepeatedComponent(j + 1, i + 1));
            }
        }
        let prod = comps.iter().fold(Poly::one(curve.ring()), |acc, h| &acc * h);
        if !prod.is_associate(curve) {
            return Err(CurveError::ValidationFailed(
                "the product of the components is not the double curve".into(),
            ));
        }
        return Ok(comps.iter().map(Poly::normalized).collect());
    }
    let factors = factor_components(curve).map_err(|e| match e {
        MpolyError::FactorizationIncomplete(msg) => CurveError::OverridesRequired {
            stage: "components",
            hint: format!("supply `components` ({msg})"),
        },
        other => other.into(),
    })?;
    if factors.iter().any(|(_, m)| *m > 1) {
        return Err(CurveError::NotReduced);
    }
    Ok(factors.into_iter().map(|(h, _)| h).collect())
}

fn check_partition(pairing: &[ImageComponent], n: usize) -> Result<(), CurveError> {
    let mut seen = vec![0u32; n];
    for c in pairing {
        if let ImageComponent::Untwisted(i, j) = *c {
            if i == j {
                return Err(CurveError::ValidationFailed(format!(
                    "component {} cannot be its own untwisted partner",
                    i + 1
                )));
            }
        }
        for m in c.members() {
            if m >= n {
                return Err(CurveError::ValidationFailed(format!(
                    "twist entry refers to component {}, but there are {n}",
                    m + 1
                )));
            }
            seen[m] += 1;
        }
    }
    if let Some(i) = seen.iter().position(|&s| s != 1) {
        return Err(CurveError::ValidationFailed(format!(
            "component {} must appear in exactly one twist entry",
            i + 1
        )));
    }
    Ok(())
}

fn canonical_pairing(mut pairing: Vec<ImageComponent>) -> Vec<ImageComponent> {
    for c in pairing.iter_mut() {
        if let ImageComponent::Untwisted(i, j) = *c {
            *c = ImageComponent::untwisted(i, j);
        }
    }
    pairing.sort_by_key(|c| c.members()[0]);
    pairing
}

fn pairing_from_partners(partners: Vec<Vec<usize>>) -> Result<Vec<ImageComponent>, CurveError> {
    let mut out = Vec::new();
    for (i, ps) in partners.iter().enumerate() {
        match ps.as_slice() {
            [j] if *j == i => out.push(ImageComponent::Twisted(i)),
            [j] if partners[*j].as_slice() == [i] => {
                if i < *j {
                    out.push(ImageComponent::Untwisted(i, *j));
                }
            }
            _ => {
                return Err(CurveError::OverridesRequired {
                    stage: "twist pairing",
                    hint: format!("component {} has no unique partner; supply `twist`", i + 1),
                })
            }
        }
    }
    Ok(canonical_pairing(out))
}

/// Partners on a fold: `h_j` associate to `h_i(u, -v)`.
fn fold_pairing(comps: &[Poly]) -> Result<Vec<ImageComponent>, CurveError> {
    let partners = comps
        .iter()
        .map(|h| {
            let r = h.ring();
            let flipped = h.substitute(1, &-Poly::var(r, 1))?;
            Ok(comps
                .iter()
                .enumerate()
                .filter(|(_, g)| g.is_associate(&flipped))
                .map(|(j, _)| j)
                .collect())
        })
        .collect::<Result<Vec<Vec<usize>>, CurveError>>()?;
    pairing_from_partners(partners)
}

/// Partners on a corank-1 germ `(u, f2, f3)`: `h_j` is a partner of `h_i`
/// when `h_i(u, v1) = h_j(u, v2) = P = Q = 0` is a curve through the origin.
fn corank1_pairing(f: &Germ, comps: &[Poly]) -> Result<Vec<ImageComponent>, CurveError> {
    let mp = multipoint_data(f)?;
    let mut partners = Vec::with_capacity(comps.len());
    for hi in comps {
        let a = mp.lift_first(hi)?;
        let mut ps = Vec::new();
        for (j, hj) in comps.iter().enumerate() {
            let b = mp.lift_second(hj)?;
            let ideal = LocalIdeal::new(vec![a.clone(), b, mp.p.clone(), mp.q.clone()])?;
            if quotient_dim(&ideal)? == Dimension::Infinite {
                ps.push(j);
            }
        }
        partners.push(ps);
    }
    pairing_from_partners(partners)
}

/// Twisted and untwisted image components.
pub fn classify_twist(f: &Germ, comps: &[Poly]) -> Result<Vec<ImageComponent>, CurveError> {
    let automatic = || -> Result<Vec<ImageComponent>, CurveError> {
        if fold_normal_data(f).is_some() {
            fold_pairing(comps)
        } else if corank(f) == 1 {
            corank1_pairing(f, comps)
        } else {
            Err(CurveError::OverridesRequired {
                stage: "twist pairing",
                hint: "corank-2 germs need `twist`".into(),
            })
        }
    };
    match &f.overrides().twist {
        Some(supplied) => {
            check_partition(supplied, comps.len())?;
            let supplied = canonical_pairing(supplied.clone());
            match automatic() {
                Ok(computed) if computed != supplied => Err(CurveError::ValidationFailed(
                    "the supplied twist pairing contradicts the computed one".into(),
                )),
                Ok(_) => Ok(supplied),
                Err(e) if e.overrides_required() => Ok(supplied),
                Err(e) => Err(e),
            }
        }
        None => automatic(),
    }
}

/// Pairwise intersection multiplicities, zero on the diagonal.
pub fn intersection_table(comps: &[Poly]) -> Result<Vec<Vec<u64>>, CurveError> {
    let n = comps.len();
    let mut t = vec![vec![0; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let m = intersection_multiplicity(&comps[i], &comps[j])?
                .finite()
                .ok_or(CurveError::RepeatedComponent(i + 1, j + 1))?;
            t[i][j] = m;
            t[j][i] = m;
        }
    }
    Ok(t)
}

/// `D_i . {v = 0}` for every component.
pub fn v_axis_mult(comps: &[Poly]) -> Result<Vec<u64>, CurveError> {
    comps
        .iter()
        .enumerate()
        .map(|(i, h)| {
            let v = Poly::var(h.ring(), 1);
            intersection_multiplicity(h, &v)?
                .finite()
                .ok_or(CurveError::OnAxis(i + 1))
        })
        .collect()
}

/// Milnor number of the reduced curve.
pub fn curve_milnor(curve: &Poly) -> Result<u64, CurveError> {
    milnor_number(curve)?.finite().ok_or(CurveError::NonIsolated)
}

/// Decomposition, pairing and intersection data for the double curve of `f`.
pub fn component_set(f: &Germ, curve: &DoubleCurve) -> Result<ComponentSet, CurveError> {
    let components = decompose(&curve.equation, f.overrides().components.as_deref())?;
    let pairing = classify_twist(f, &components)?;
    let intersection = intersection_table(&components)?;
    let v_axis_mult = if curve.route == CurveRoute::Fold || fold_normal_data(f).is_some() {
        Some(v_axis_mult(&components)?)
    } else {
        None
    };
    Ok(ComponentSet {
        curve: curve.equation.clone(),
        components,
        pairing,
        intersection,
        v_axis_mult,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::germ::{double_curve_equation, OverrideSet};
    use crate::mpoly::NumberField;

    fn fold(f3: &str) -> Germ {
        Germ::new("t", NumberField::gaussian(), ["u", "v^2", f3]).unwrap()
    }

    fn components_of(f: &Germ) -> ComponentSet {
        component_set(f, &double_curve_equation(f).unwrap()).unwrap()
    }

    #[test]
    fn decompositions() {
        let s1 = fold("v^3 + u^2*v");
        let cs = components_of(&s1);
        assert_eq!(cs.components.len(), 2);
        assert!(cs.components.iter().any(|h| h.is_associate(&s1.parse("u - i*v").unwrap())));
        let b4 = fold("u^2*v + v^9");
        let cs = components_of(&b4);
        assert!(cs.components.iter().any(|h| h.is_associate(&b4.parse("u + i*v^4").unwrap())));
        assert_eq!(components_of(&fold("u^3*v + v^5")).components.len(), 1);
    }

    #[test]
    fn twist_classification() {
        let cs = components_of(&fold("v^3 + u^2*v"));
        assert_eq!(cs.pairing, vec![ImageComponent::Untwisted(0, 1)]);
        let cs = components_of(&fold("u^2*v + v^9"));
        assert_eq!(cs.pairing, vec![ImageComponent::Twisted(0), ImageComponent::Twisted(1)]);
        let c5 = fold("u*v^3 + u^5*v");
        let cs = components_of(&c5);
        let u = cs.components.iter().position(|h| h.is_associate(&c5.parse("u").unwrap())).unwrap();
        assert!(cs.pairing.contains(&ImageComponent::Twisted(u)));
        assert_eq!(cs.untwisted_pairs().len(), 1);
    }

    #[test]
    fn fold_and_corank1_pairings_agree() {
        for f3 in ["v^3 + u^2*v", "u^2*v + v^9", "u*v^3 + u^5*v", "u*v^3 + u^4*v", "u*v"] {
            let f = fold(f3);
            let comps = components_of(&f).components;
            assert_eq!(fold_pairing(&comps).unwrap(), corank1_pairing(&f, &comps).unwrap(), "{f3}");
        }
    }

    #[test]
    fn twist_override_validation() {
        let f = fold("v^3 + u^2*v");
        let d = double_curve_equation(&f).unwrap();
        let bad = f.clone().with_overrides(OverrideSet {
            twist: Some(vec![ImageComponent::Twisted(0), ImageComponent::Twisted(1)]),
            ..Default::default()
        });
        assert!(matches!(component_set(&bad, &d), Err(CurveError::ValidationFailed(_))));
        let overlap = f.with_overrides(OverrideSet {
            twist: Some(vec![ImageComponent::Twisted(0), ImageComponent::Untwisted(0, 1)]),
            ..Default::default()
        });
        assert!(matches!(component_set(&overlap, &d), Err(CurveError::ValidationFailed(_))));
    }

    #[test]
    fn intersection_tables() {
        let cs = components_of(&fold("v^3 + u^2*v"));
        assert_eq!(cs.intersection, vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(cs.v_axis_mult, Some(vec![1, 1]));
        let h2 = Germ::new("h2", NumberField::eisenstein(), ["u", "u*v + v^5", "v^3"]).unwrap();
        let cs = components_of(&h2);
        assert_eq!(cs.intersection, vec![vec![0, 4], vec![4, 0]]);
        assert_eq!(cs.v_axis_mult, None);
        assert_eq!(cs.pairing, vec![ImageComponent::Untwisted(0, 1)]);
    }

    #[test]
    fn corank2_override_table() {
        let f = Germ::new("c2", NumberField::eisenstein(), ["u^2", "v^2", "u^3 + v^3 + u*v"]).unwrap();
        let comps: Vec<Poly> = ["u + v^2", "u^2 + v", "u + v", "u + zeta3*v", "u + zeta3^2*v"]
            .iter()
            .map(|s| f.parse(s).unwrap())
            .collect();
        let t = intersection_table(&comps).unwrap();
        for (i, row) in t.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                assert_eq!(x, u64::from(i != j));
            }
        }
        let d = comps.iter().fold(Poly::one(f.ring()), |a, h| &a * h);
        assert_eq!(decompose(&d, Some(&comps)).unwrap().len(), 5);
        assert!(matches!(
            decompose(&d, Some(&comps[..4])),
            Err(CurveError::ValidationFailed(_))
        ));
        assert!(matches!(
            decompose(&d, Some(&[comps[0].clone(), comps[0].clone()])),
            Err(CurveError::RepeatedComponent(1, 2))
        ));
    }

    #[test]
    fn milnor_numbers() {
        let r = crate::germ::source_ring(NumberField::eisenstein());
        let p = |s| crate::mpoly::parse_poly(s, &r).unwrap();
        assert_eq!(curve_milnor(&p("u^2 + v^2")).unwrap(), 1);
        assert_eq!(curve_milnor(&p("u^2 + u*v^4 + v^8")).unwrap(), 7);
        assert_eq!(curve_milnor(&p("v^2 + u^3")).unwrap(), 2);
    }
}
