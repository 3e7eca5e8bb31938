//! Map germs `(C^2,0) -> (C^3,0)` and their multiple-point invariants.

use std::sync::Arc;

use thiserror::Error;

use crate::curve::ImageComponent;
use crate::localring::{quotient_dim, Dimension, LocalIdeal, LocalRingError};
use crate::mpoly::{
    divided_difference, factor_components, parse_poly, resultant, squarefree_part, MpolyError,
    NumberField, Poly, PolyRing,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GermError {
    #[error("map component f{0} does not vanish at the origin")]
    NotAtOrigin(usize),
    #[error("the germ is an immersion, so its image is smooth")]
    Immersion,
    #[error("not finitely determined: {0}")]
    NotFinitelyDetermined(String),
    #[error("unsupported shape: {0}")]
    UnsupportedShape(String),
    #[error("overrides required for {stage}: {hint}")]
    OverridesRequired { stage: &'static str, hint: String },
    #[error("override validation failed: {0}")]
    ValidationFailed(String),
    #[error("triple-point space has length {0}, which is not divisible by 6")]
    NonExactTriple(u64),
    #[error(transparent)]
    Local(#[from] LocalRingError),
    #[error(transparent)]
    Poly(#[from] MpolyError),
}

impl GermError {
    pub fn overrides_required(&self) -> bool {
        matches!(self, GermError::OverridesRequired { .. })
    }
}

/// User-supplied data for invariants that are not computed automatically.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct OverrideSet {
    pub double_curve: Option<Poly>,
    pub components: Option<Vec<Poly>>,
    pub twist: Option<Vec<ImageComponent>>,
    pub vertical_indices: Vec<(ImageComponent, i64)>,
    pub triple_points: Option<u64>,
}

impl OverrideSet {
    pub fn is_empty(&self) -> bool {
        *self == OverrideSet::default()
    }
}

#[derive(Clone, Debug)]
pub struct Germ {
    name: String,
    ring: Arc<PolyRing>,
    map: [Poly; 3],
    overrides: OverrideSet,
}

impl Germ {
    /// Parses the three components over `field` in variables `(u, v)`.
    pub fn new(name: &str, field: NumberField, map: [&str; 3]) -> Result<Self, GermError> {
        let ring = source_ring(field);
        let polys = [
            parse_poly(map[0], &ring)?,
            parse_poly(map[1], &ring)?,
            parse_poly(map[2], &ring)?,
        ];
        Self::from_polys(name, polys)
    }

    pub fn from_polys(name: &str, map: [Poly; 3]) -> Result<Self, GermError> {
        let ring = map[0].ring().clone();
        if ring.vars() != ["u", "v"] || map.iter().any(|p| p.ring() != &ring) {
            return Err(MpolyError::RingMismatch.into());
        }
        if let Some(i) = map.iter().position(|p| !p.vanishes_at_origin()) {
            return Err(GermError::NotAtOrigin(i + 1));
        }
        Ok(Germ {
            name: name.to_string(),
            ring,
            map,
            overrides: OverrideSet::default(),
        })
    }

    pub fn with_overrides(mut self, overrides: OverrideSet) -> Self {
        self.overrides = overrides;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn field(&self) -> &NumberField {
        self.ring.field()
    }

    pub fn map(&self) -> &[Poly; 3] {
        &self.map
    }

    pub fn overrides(&self) -> &OverrideSet {
        &self.overrides
    }

    /// Parses a polynomial in the germ's source ring.
    pub fn parse(&self, src: &str) -> Result<Poly, MpolyError> {
        parse_poly(src, &self.ring)
    }
}

/// The ring `K[u, v]` every germ lives in.
pub fn source_ring(field: NumberField) -> Arc<PolyRing> {
    PolyRing::new(&["u", "v"], field)
}

/// `2 - rank df(0)`.
pub fn corank(f: &Germ) -> u8 {
    let field = f.field();
    let mut rows: Vec<[crate::mpoly::FieldElem; 2]> =
        f.map.iter().map(|p| [p.coeff(&[1, 0]), p.coeff(&[0, 1])]).collect();
    let mut rank = 0u8;
    for col in 0..2 {
        let Some(r) = (rank as usize..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(r, rank as usize);
        let pivot = rows[rank as usize].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank as usize || row[col].is_zero() {
                continue;
            }
            let m = field.div(&row[col], &pivot[col]).unwrap();
            for c in 0..2 {
                row[c] = field.sub(&row[c], &field.mul(&m, &pivot[c]));
            }
        }
        rank += 1;
    }
    2 - rank
}

/// The 2x2 minors of the Jacobian matrix.
pub fn jacobian_minors(f: &Germ) -> Vec<Poly> {
    let d: Vec<[Poly; 2]> = f.map.iter().map(|p| [p.derivative(0), p.derivative(1)]).collect();
    let minor = |i: usize, j: usize| &(&d[i][0] * &d[j][1]) - &(&d[i][1] * &d[j][0]);
    vec![minor(0, 1), minor(0, 2), minor(1, 2)]
}

/// Cross-cap number: the length of the ideal of 2x2 minors.
pub fn crosscap_number(f: &Germ) -> Result<u64, GermError> {
    let minors: Vec<Poly> = jacobian_minors(f).into_iter().filter(|m| !m.is_zero()).collect();
    if minors.is_empty() {
        return Err(GermError::NotFinitelyDetermined(
            "the Jacobian has rank at most 1 everywhere".into(),
        ));
    }
    quotient_dim(&LocalIdeal::new(minors)?)?.finite().ok_or_else(|| {
        GermError::NotFinitelyDetermined("the ideal of 2x2 minors has infinite colength".into())
    })
}

/// The polynomial `p(u, y)` when `f = (u, v^2, v p(u, v^2))` literally.
pub fn fold_normal_data(f: &Germ) -> Option<Poly> {
    let r = &f.ring;
    let u = Poly::var(r, 0);
    let v = Poly::var(r, 1);
    if f.map[0] != u || f.map[1] != v.pow(2) {
        return None;
    }
    let f3 = &f.map[2];
    if f3.terms().keys().any(|e| e[1] % 2 == 0) {
        return None;
    }
    let target = PolyRing::new(&["u", "y"], f.field().clone());
    Some(Poly::from_terms(
        &target,
        f3.terms()
            .iter()
            .map(|(e, c)| (vec![e[0], (e[1] - 1) / 2], c.clone())),
    ))
}

/// `p(u, v^2)` for a fold polynomial `p(u, y)`.
fn fold_curve(f: &Germ, p: &Poly) -> Result<Poly, GermError> {
    let r = &f.ring;
    Ok(p.subst(r, &[Poly::var(r, 0), Poly::var(r, 1).pow(2)])?)
}

/// `y p(x, y)^2 - z^2`, the image of a fold.
pub fn image_equation_fold(f: &Germ) -> Result<Poly, GermError> {
    let p = fold_normal_data(f)
        .ok_or_else(|| GermError::UnsupportedShape("not in the form (u, v^2, v p(u, v^2))".into()))?;
    let target = PolyRing::new(&["x", "y", "z"], f.field().clone());
    let x = Poly::var(&target, 0);
    let y = Poly::var(&target, 1);
    let z = Poly::var(&target, 2);
    let pxy = p.subst(&target, &[x, y.clone()])?;
    Ok(&(&y * &pxy.pow(2)) - &z.pow(2))
}

/// Divided differences of a corank-1 germ `(u, f2, f3)`.
#[derive(Clone, Debug)]
pub struct MultiPointData {
    /// `(f2(u,v1) - f2(u,v2)) / (v1 - v2)` in `(u, v1, v2)`.
    pub p: Poly,
    /// Same for `f3`.
    pub q: Poly,
    /// `P`, `Q` and their divided differences in `v2 -> (v2, v3)`, in `(u, v1, v2, v3)`.
    pub d3_ideal: LocalIdeal,
}

impl MultiPointData {
    pub fn ring(&self) -> &Arc<PolyRing> {
        self.p.ring()
    }

    /// `P (v1 - v2) = f2(u,v1) - f2(u,v2)` and the same for `Q`.
    pub fn satisfies_identity(&self, f: &Germ) -> bool {
        let r = self.ring();
        let (u, v1, v2) = (Poly::var(r, 0), Poly::var(r, 1), Poly::var(r, 2));
        let check = |dd: &Poly, g: &Poly| -> bool {
            let a = g.subst(r, &[u.clone(), v1.clone()]);
            let b = g.subst(r, &[u.clone(), v2.clone()]);
            match (a, b) {
                (Ok(a), Ok(b)) => dd * &(&v1 - &v2) == &a - &b,
                _ => false,
            }
        };
        check(&self.p, &f.map[1]) && check(&self.q, &f.map[2])
    }

    /// `h(u, v1)` in the ring of `P` and `Q`.
    pub fn lift_first(&self, h: &Poly) -> Result<Poly, MpolyError> {
        let r = self.ring();
        h.subst(r, &[Poly::var(r, 0), Poly::var(r, 1)])
    }

    /// `h(u, v2)` in the ring of `P` and `Q`.
    pub fn lift_second(&self, h: &Poly) -> Result<Poly, MpolyError> {
        let r = self.ring();
        h.subst(r, &[Poly::var(r, 0), Poly::var(r, 2)])
    }

    /// The curve `h(u, v1) = 0` meets the double-point space in a curve
    /// through the origin.
    pub fn carries_double_points(&self, h: &Poly) -> Result<bool, GermError> {
        let ideal = LocalIdeal::new(vec![self.p.clone(), self.q.clone(), self.lift_first(h)?])?;
        Ok(quotient_dim(&ideal)?.is_infinite())
    }
}

/// Requires `f1` to be a nonzero multiple of `u`.
pub fn multipoint_data(f: &Germ) -> Result<MultiPointData, GermError> {
    match corank(f) {
        0 => return Err(GermError::Immersion),
        1 => {}
        _ => {
            return Err(GermError::UnsupportedShape(
                "divided differences need a corank-1 germ".into(),
            ))
        }
    }
    if !f.map[0].is_associate(&Poly::var(&f.ring, 0)) {
        return Err(GermError::UnsupportedShape(
            "the first component must be u for the corank-1 route".into(),
        ));
    }
    let p = divided_difference(&f.map[1], "v", ("v1", "v2"))?;
    let q = divided_difference(&f.map[2], "v", ("v1", "v2"))?;
    let p3 = divided_difference(&p, "v2", ("v2", "v3"))?;
    let q3 = divided_difference(&q, "v2", ("v2", "v3"))?;
    let r4 = p3.ring().clone();
    let gens = vec![p.embed(&r4)?, q.embed(&r4)?, p3, q3.embed(&r4)?];
    let gens: Vec<Poly> = gens.into_iter().filter(|g| !g.is_zero()).collect();
    if gens.is_empty() {
        return Err(GermError::NotFinitelyDetermined("the germ is not injective anywhere".into()));
    }
    Ok(MultiPointData {
        p,
        q,
        d3_ideal: LocalIdeal::new(gens)?,
    })
}

/// How the double-point curve was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CurveRoute {
    Fold,
    Resultant,
    Override,
}

#[derive(Clone, Debug)]
pub struct DoubleCurve {
    /// Reduced equation in `(u, v)`.
    pub equation: Poly,
    pub route: CurveRoute,
}

/// `Res_{v2}(P, Q)` mapped to `(u, v)`, before any reduction.
pub fn double_point_resultant(f: &Germ, mp: &MultiPointData) -> Result<Poly, GermError> {
    let res = resultant(&mp.p, &mp.q, 2)?;
    if res.is_zero() {
        return Err(GermError::NotFinitelyDetermined(
            "P and Q share a common factor".into(),
        ));
    }
    let r = &f.ring;
    Ok(res.subst(r, &[Poly::var(r, 0), Poly::var(r, 1), Poly::zero(r)])?)
}

/// Reduced double-point curve via the resultant of the divided differences.
/// Factors without double points near the origin are dropped.
pub fn double_curve_by_resultant(f: &Germ) -> Result<Poly, GermError> {
    let mp = multipoint_data(f)?;
    let res = squarefree_part(&double_point_resultant(f, &mp)?);
    let factors = factor_components(&res).map_err(|e| match e {
        MpolyError::FactorizationIncomplete(msg) => GermError::OverridesRequired {
            stage: "double curve",
            hint: format!("supply `components` ({msg})"),
        },
        other => other.into(),
    })?;
    let mut curve = Poly::one(&f.ring);
    for (h, _) in factors {
        if mp.carries_double_points(&h)? {
            curve = &curve * &h;
        }
    }
    Ok(curve.normalized())
}

/// The reduced double-point curve `D(f)`.
pub fn double_curve_equation(f: &Germ) -> Result<DoubleCurve, GermError> {
    let k = corank(f);
    if k == 0 {
        return Err(GermError::Immersion);
    }
    if let Some(curve) = override_curve(f)? {
        if k == 1 {
            if let Ok(mp) = multipoint_data(f) {
                validate_against_resultant(f, &mp, &curve)?;
            }
        }
        return Ok(DoubleCurve {
            equation: curve,
            route: CurveRoute::Override,
        });
    }
    if let Some(p) = fold_normal_data(f) {
        return Ok(DoubleCurve {
            equation: squarefree_part(&fold_curve(f, &p)?),
            route: CurveRoute::Fold,
        });
    }
    if k == 2 {
        return Err(GermError::OverridesRequired {
            stage: "double curve",
            hint: "corank-2 germs need `double_curve` or `components`".into(),
        });
    }
    Ok(DoubleCurve {
        equation: double_curve_by_resultant(f)?,
        route: CurveRoute::Resultant,
    })
}

/// The overridden curve: `double_curve`, else the product of `components`.
fn override_curve(f: &Germ) -> Result<Option<Poly>, GermError> {
    let o = &f.overrides;
    let from_components = o.components.as_ref().map(|cs| {
        cs.iter().fold(Poly::one(&f.ring), |acc, h| &acc * h)
    });
    let curve = match (&o.double_curve, from_components) {
        (None, None) => return Ok(None),
        (Some(c), None) => c.clone(),
        (None, Some(prod)) => prod,
        (Some(c), Some(prod)) => {
            if !c.is_associate(&prod) {
                return Err(GermError::ValidationFailed(
                    "the product of `components` differs from `double_curve`".into(),
                ));
            }
            c.clone()
        }
    };
    if curve.is_constant() || !curve.vanishes_at_origin() {
        return Err(GermError::ValidationFailed(
            "the double curve must pass through the origin".into(),
        ));
    }
    if !squarefree_part(&curve).is_associate(&curve) {
        return Err(GermError::ValidationFailed("the double curve is not reduced".into()));
    }
    Ok(Some(curve.normalized()))
}

/// The curve must divide a power of the resultant, and what is left over
/// must carry no double points near the origin.
fn validate_against_resultant(f: &Germ, mp: &MultiPointData, curve: &Poly) -> Result<(), GermError> {
    let res = squarefree_part(&double_point_resultant(f, mp)?);
    let Some(rest) = res.div_exact(curve) else {
        return Err(GermError::ValidationFailed(
            "the double curve does not divide the resultant of the divided differences".into(),
        ));
    };
    if mp.carries_double_points(&rest)? {
        return Err(GermError::ValidationFailed(
            "the double curve misses components of the double-point set".into(),
        ));
    }
    Ok(())
}

/// How the triple-point number was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TripleRoute {
    /// The triple-point space is empty.
    Fold,
    /// Length of the triple-point space divided by 6.
    TriplePointSpace,
    Override,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TriplePoints {
    pub value: u64,
    pub route: TripleRoute,
}

/// Triple-point number `T(f)`.
pub fn triple_point_number(f: &Germ) -> Result<TriplePoints, GermError> {
    let k = corank(f);
    if k == 0 {
        return Err(GermError::Immersion);
    }
    let supplied = f.overrides.triple_points;
    if k == 2 {
        return supplied
            .map(|value| TriplePoints {
                value,
                route: TripleRoute::Override,
            })
            .ok_or_else(|| GermError::OverridesRequired {
                stage: "triple points",
                hint: "corank-2 germs need `T`".into(),
            });
    }
    let mp = multipoint_data(f)?;
    let computed = match quotient_dim(&mp.d3_ideal)? {
        Dimension::Infinite => {
            return Err(GermError::NotFinitelyDetermined(
                "the triple-point space is not zero-dimensional".into(),
            ))
        }
        Dimension::Finite(0) => TriplePoints {
            value: 0,
            route: if fold_normal_data(f).is_some() {
                TripleRoute::Fold
            } else {
                TripleRoute::TriplePointSpace
            },
        },
        Dimension::Finite(n) if n % 6 == 0 => TriplePoints {
            value: n / 6,
            route: TripleRoute::TriplePointSpace,
        },
        Dimension::Finite(n) => return Err(GermError::NonExactTriple(n)),
    };
    match supplied {
        Some(t) if t != computed.value => Err(GermError::ValidationFailed(format!(
            "T = {t} was supplied but the triple-point space gives {}",
            computed.value
        ))),
        Some(t) => Ok(TriplePoints {
            value: t,
            route: TripleRoute::Override,
        }),
        None => Ok(computed),
    }
}
