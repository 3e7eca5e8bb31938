//! Computations in the local ring of `C^n` at the origin.
//!
//! Standard bases are computed with Mora's tangent cone algorithm under a
//! local monomial order, which makes every polynomial with a non-zero
//! constant term a unit. Quotient dimensions are read off the leading
//! ideal by counting standard monomials.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::mpoly::{self, squarefree_part, Exponent, MonomialOrder, MpolyError, Poly, PolyRing};

/// Default cap on reduction steps for a single standard basis computation.
pub const DEFAULT_STEP_BUDGET: u64 = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LocalRingError {
    #[error("standard basis computation exceeded the budget of {0} reduction steps")]
    BudgetExceeded(u64),
    #[error("ideal has no generators")]
    NoGenerators,
    #[error(transparent)]
    Poly(#[from] MpolyError),
}

/// Dimension of a quotient `O/I`, possibly infinite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Dimension {
    Finite(u64),
    Infinite,
}

impl Dimension {
    pub fn finite(self) -> Option<u64> {
        match self {
            Dimension::Finite(n) => Some(n),
            Dimension::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == Dimension::Infinite
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dimension::Finite(n) => write!(f, "{n}"),
            Dimension::Infinite => f.write_str("infinite"),
        }
    }
}

/// An ideal of the local ring given by polynomial generators.
#[derive(Clone, Debug)]
pub struct LocalIdeal {
    generators: Vec<Poly>,
    order: MonomialOrder,
}

impl LocalIdeal {
    pub fn new(generators: Vec<Poly>) -> Result<Self, LocalRingError> {
        Self::with_order(generators, MonomialOrder::LocalDegRevLex)
    }

    pub fn with_order(generators: Vec<Poly>, order: MonomialOrder) -> Result<Self, LocalRingError> {
        let first = generators.first().ok_or(LocalRingError::NoGenerators)?;
        let ring = first.ring().clone();
        if generators.iter().any(|g| g.ring() != &ring) {
            return Err(MpolyError::RingMismatch.into());
        }
        Ok(LocalIdeal { generators, order })
    }

    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        self.generators[0].ring()
    }

    /// Some generator is a unit, so the ideal is the whole ring.
    pub fn is_unit_ideal_evidently(&self) -> bool {
        self.order.is_local() && self.generators.iter().any(|g| !g.vanishes_at_origin())
    }
}

/// A standard basis together with the minimal generators of its leading
/// ideal.
#[derive(Clone, Debug)]
pub struct StandardBasis {
    ideal: LocalIdeal,
    basis: Vec<Poly>,
    leading_ideal: Vec<Exponent>,
}

impl StandardBasis {
    pub fn ideal(&self) -> &LocalIdeal {
        &self.ideal
    }

    pub fn basis(&self) -> &[Poly] {
        &self.basis
    }

    pub fn leading_ideal(&self) -> &[Exponent] {
        &self.leading_ideal
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.leading_ideal.iter().any(|e| e.iter().all(|&x| x == 0))
    }

    /// Checks the S-pair criterion: every S-polynomial of basis elements
    /// has Mora normal form zero.
    pub fn satisfies_spair_criterion(&self) -> bool {
        let order = &self.ideal.order;
        for i in 0..self.basis.len() {
            for j in (i + 1)..self.basis.len() {
                let s = spoly(&self.basis[i], &self.basis[j], order);
                if !mora_normal_form(&s, &self.basis, order).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Dimension of the quotient by the ideal, counted as the number of
    /// monomials outside the leading ideal.
    pub fn quotient_dim(&self) -> Dimension {
        staircase_count(&self.leading_ideal, self.ideal.ring().nvars())
    }
}

/// Number of monomials in `n` variables not divisible by any of `gens`.
pub fn staircase_count(gens: &[Exponent], n: usize) -> Dimension {
    let mut bounds = vec![None; n];
    for g in gens {
        let support: Vec<usize> = (0..n).filter(|&i| g[i] > 0).collect();
        match support.as_slice() {
            [] => return Dimension::Finite(0),
            [i] => {
                let b: &mut Option<u32> = &mut bounds[*i];
                *b = Some(b.map_or(g[*i], |x| x.min(g[*i])));
            }
            _ => {}
        }
    }
    let Some(bounds): Option<Vec<u32>> = bounds.into_iter().collect() else {
        return Dimension::Infinite;
    };
    let mut count = 0u64;
    let mut cur = vec![0u32; n];
    loop {
        if !gens.iter().any(|g| mpoly::exp_divides(g, &cur)) {
            count += 1;
        }
        // odometer
        let mut k = 0;
        loop {
            if k == n {
                return Dimension::Finite(count);
            }
            cur[k] += 1;
            if cur[k] < bounds[k] {
                break;
            }
            cur[k] = 0;
            k += 1;
        }
    }
}

fn ecart(f: &Poly, order: &MonomialOrder) -> u32 {
    let lead = f.leading(order).map(|(e, _)| mpoly::exp_degree(e)).unwrap_or(0);
    f.total_degree() - lead
}

/// `h - (LT(h) / LT(g)) * g`, assuming `LM(g) | LM(h)`.
fn reduce_once(h: &Poly, g: &Poly, order: &MonomialOrder) -> Poly {
    let field = h.field();
    let (eh, ch) = h.leading(order).expect("nonzero");
    let (eg, cg) = g.leading(order).expect("nonzero");
    let shift = mpoly::exp_sub(eh, eg);
    let c = field.div(ch, cg).expect("nonzero leading coefficient");
    h - &g.mul_term(&shift, &c)
}

fn spoly(f: &Poly, g: &Poly, order: &MonomialOrder) -> Poly {
    let field = f.field();
    let (ef, cf) = f.leading(order).expect("nonzero");
    let (eg, cg) = g.leading(order).expect("nonzero");
    let l = mpoly::exp_lcm(ef, eg);
    let a = f.mul_term(&mpoly::exp_sub(&l, ef), &field.inv(cf).unwrap());
    let b = g.mul_term(&mpoly::exp_sub(&l, eg), &field.inv(cg).unwrap());
    &a - &b
}

/// Mora's weak normal form of `f` with respect to `basis`.
///
/// The result `r` satisfies `u*f = r (mod <basis>)` for a unit `u` of the
/// local ring. When `basis` is a standard basis, `r = 0` exactly when `f`
/// lies in the ideal.
pub fn mora_normal_form(f: &Poly, basis: &[Poly], order: &MonomialOrder) -> Poly {
    let mut steps = 0;
    mora_nf_budget(f, basis, order, None, &mut steps, u64::MAX).expect("unbounded budget")
}

/// Mora normal form that also drops every term of degree `>= cutoff`.
/// Valid when the maximal ideal to that power lies in the ideal.
fn mora_nf_budget(
    f: &Poly,
    basis: &[Poly],
    order: &MonomialOrder,
    cutoff: Option<u32>,
    steps: &mut u64,
    budget: u64,
) -> Result<Poly, LocalRingError> {
    let trunc = |p: Poly| match cutoff {
        Some(d) => p.truncated(d),
        None => p,
    };
    let mut h = trunc(f.clone());
    // (element, its leading exponent, its ecart)
    let mut t: Vec<(Poly, Exponent, u32)> = basis
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| (g.clone(), g.leading(order).unwrap().0.clone(), ecart(g, order)))
        .collect();
    while !h.is_zero() {
        let lm_h = h.leading(order).unwrap().0.clone();
        let best = t
            .iter()
            .filter(|(_, lm, _)| mpoly::exp_divides(lm, &lm_h))
            .min_by_key(|(_, _, e)| *e);
        let Some((g, _, eg)) = best else {
            break;
        };
        let g = g.clone();
        let eh = ecart(&h, order);
        if *eg > eh {
            t.push((h.clone(), lm_h, eh));
        }
        h = trunc(reduce_once(&h, &g, order));
        *steps += 1;
        if *steps > budget {
            return Err(LocalRingError::BudgetExceeded(budget));
        }
    }
    Ok(h)
}

/// Smallest `d` such that every monomial of degree `d` lies in the monomial
/// ideal generated by `leads`, if any.
fn saturation_degree(leads: &[Exponent], n: usize) -> Option<u32> {
    let mut pure = vec![None::<u32>; n];
    for e in leads {
        let support: Vec<usize> = (0..n).filter(|&i| e[i] > 0).collect();
        if let [i] = support.as_slice() {
            pure[*i] = Some(pure[*i].map_or(e[*i], |p| p.min(e[*i])));
        }
    }
    let pure: Vec<u32> = pure.into_iter().collect::<Option<_>>()?;
    let lo = *pure.iter().max().unwrap_or(&0);
    let hi = pure.iter().map(|p| p - 1).sum::<u32>() + 1;
    (lo..=hi.max(lo)).find(|&d| all_monomials_of_degree(n, d, &mut |m| leads.iter().any(|e| mpoly::exp_divides(e, m))))
}

/// Applies `pred` to every monomial of degree `d` in `n` variables; true when
/// it holds for all of them.
fn all_monomials_of_degree(n: usize, d: u32, pred: &mut dyn FnMut(&[u32]) -> bool) -> bool {
    fn go(m: &mut Vec<u32>, i: usize, left: u32, pred: &mut dyn FnMut(&[u32]) -> bool) -> bool {
        if i + 1 == m.len() {
            m[i] = left;
            return pred(m);
        }
        for k in 0..=left {
            m[i] = k;
            if !go(m, i + 1, left - k, pred) {
                return false;
            }
        }
        true
    }
    if n == 0 {
        return true;
    }
    go(&mut vec![0; n], 0, d, pred)
}

/// Standard basis with the default step budget.
pub fn standard_basis(ideal: &LocalIdeal) -> Result<StandardBasis, LocalRingError> {
    standard_basis_with_budget(ideal, DEFAULT_STEP_BUDGET)
}

pub fn standard_basis_with_budget(
    ideal: &LocalIdeal,
    budget: u64,
) -> Result<StandardBasis, LocalRingError> {
    let order = ideal.order.clone();
    let ring = ideal.ring().clone();
    let n = ring.nvars();
    if ideal.is_unit_ideal_evidently() {
        return Ok(StandardBasis {
            ideal: ideal.clone(),
            basis: vec![Poly::one(&ring)],
            leading_ideal: vec![vec![0; n]],
        });
    }
    // Once every monomial of degree d is a leading monomial, m^d lies in the
    // ideal and higher terms can be discarded.
    let truncatable = order == MonomialOrder::LocalDegRevLex;
    let mut cutoff: Option<u32> = None;
    let mut steps = 0u64;
    let mut basis: Vec<Poly> = Vec::new();
    let mut leads: Vec<Exponent> = Vec::new();
    let mut pairs: BTreeSet<(u32, usize, usize)> = BTreeSet::new();
    let push = |h: Poly,
                    basis: &mut Vec<Poly>,
                    leads: &mut Vec<Exponent>,
                    pairs: &mut BTreeSet<(u32, usize, usize)>,
                    cutoff: &mut Option<u32>| {
        let h = h.normalized();
        let eh = h.leading(&order).unwrap().0.clone();
        let k = basis.len();
        for (i, eg) in leads.iter().enumerate() {
            let l = mpoly::exp_lcm(eg, &eh);
            // product criterion
            if mpoly::exp_degree(&l) == mpoly::exp_degree(eg) + mpoly::exp_degree(&eh) {
                continue;
            }
            pairs.insert((mpoly::exp_degree(&l), i, k));
        }
        basis.push(h);
        leads.push(eh);
        if truncatable {
            if let Some(d) = saturation_degree(leads, n) {
                if cutoff.is_none_or(|c| d < c) {
                    *cutoff = Some(d);
                    // an element whose leading monomial has degree >= d is
                    // replaced by that monomial, which lies in the ideal
                    for (b, e) in basis.iter_mut().zip(leads.iter()) {
                        *b = if mpoly::exp_degree(e) >= d {
                            Poly::monomial(b.ring(), e.clone(), b.field().one())
                        } else {
                            b.truncated(d)
                        };
                    }
                }
            }
        }
    };
    for g in &ideal.generators {
        let r = mora_nf_budget(g, &basis, &order, cutoff, &mut steps, budget)?;
        if !r.is_zero() {
            push(r, &mut basis, &mut leads, &mut pairs, &mut cutoff);
        }
    }
    while let Some(&p) = pairs.iter().next() {
        pairs.remove(&p);
        let (_, i, j) = p;
        let s = spoly(&basis[i], &basis[j], &order);
        let r = mora_nf_budget(&s, &basis, &order, cutoff, &mut steps, budget)?;
        if !r.is_zero() {
            if !r.vanishes_at_origin() && order.is_local() {
                basis = vec![Poly::one(&ring)];
                leads = vec![vec![0; n]];
                break;
            }
            push(r, &mut basis, &mut leads, &mut pairs, &mut cutoff);
        }
    }
    // keep the elements whose leading monomials generate minimally
    let mut keep = Vec::new();
    let mut leading_ideal = Vec::new();
    for (i, e) in leads.iter().enumerate() {
        let redundant = leads
            .iter()
            .enumerate()
            .any(|(j, f)| j != i && mpoly::exp_divides(f, e) && (f != e || j < i));
        if !redundant {
            keep.push(basis[i].clone());
            leading_ideal.push(e.clone());
        }
    }
    Ok(StandardBasis {
        ideal: ideal.clone(),
        basis: keep,
        leading_ideal,
    })
}

/// `dim O/I`, or [`Dimension::Infinite`] when the quotient is not
/// zero-dimensional.
pub fn quotient_dim(ideal: &LocalIdeal) -> Result<Dimension, LocalRingError> {
    // Dimensions do not change under field extension; compute over Q when
    // the generators allow it.
    if ideal.ring().field().degree() > 1 && ideal.generators.iter().all(Poly::has_rational_coefficients) {
        let gens: Vec<Poly> = ideal
            .generators
            .iter()
            .map(Poly::restrict_to_rationals)
            .collect::<Option<_>>()
            .expect("rational coefficients");
        let sub = LocalIdeal::with_order(gens, ideal.order.clone())?;
        return Ok(standard_basis(&sub)?.quotient_dim());
    }
    Ok(standard_basis(ideal)?.quotient_dim())
}

/// Local intersection multiplicity of two plane curves at the origin.
pub fn intersection_multiplicity(h1: &Poly, h2: &Poly) -> Result<Dimension, LocalRingError> {
    quotient_dim(&LocalIdeal::new(vec![h1.clone(), h2.clone()])?)
}

/// Milnor number of the reduced curve (or hypersurface) defined by `h`.
pub fn milnor_number(h: &Poly) -> Result<Dimension, LocalRingError> {
    let r = squarefree_part(h);
    let n = r.ring().nvars();
    let jac: Vec<Poly> = (0..n).map(|i| r.derivative(i)).collect();
    if jac.iter().all(Poly::is_zero) {
        return Ok(Dimension::Finite(0));
    }
    quotient_dim(&LocalIdeal::new(jac)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpoly::{parse_poly, NumberField};

    fn ring(field: NumberField) -> Arc<PolyRing> {
        PolyRing::new(&["u", "v"], field)
    }

    fn ideal(r: &Arc<PolyRing>, gens: &[&str]) -> LocalIdeal {
        LocalIdeal::new(gens.iter().map(|g| parse_poly(g, r).unwrap()).collect()).unwrap()
    }

    #[test]
    fn normal_forms() {
        let r = ring(NumberField::rationals());
        let p = |s| parse_poly(s, &r).unwrap();
        let o = MonomialOrder::LocalDegRevLex;
        assert!(mora_normal_form(&p("u^2"), &[p("u")], &o).is_zero());
        assert_eq!(mora_normal_form(&p("v"), &[p("u")], &o), p("v"));
        assert!(mora_normal_form(&p("u"), &[p("u - u^2")], &o).is_zero());
    }

    #[test]
    fn standard_bases() {
        let r = ring(NumberField::rationals());
        let sb = standard_basis(&ideal(&r, &["u", "v"])).unwrap();
        assert_eq!(sb.leading_ideal(), &[vec![1, 0], vec![0, 1]]);
        let sb = standard_basis(&ideal(&r, &["2*v", "u", "-2*v^2"])).unwrap();
        let mut li = sb.leading_ideal().to_vec();
        li.sort();
        assert_eq!(li, vec![vec![0, 1], vec![1, 0]]);
        let sb = standard_basis(&ideal(&r, &["v^2 + u^2", "2*u"])).unwrap();
        let mut li = sb.leading_ideal().to_vec();
        li.sort();
        assert_eq!(li, vec![vec![0, 2], vec![1, 0]]);
        assert!(sb.satisfies_spair_criterion());
        for g in sb.basis() {
            assert_eq!(g.leading(&MonomialOrder::LocalDegRevLex).unwrap().1, &r.field().one());
        }
    }

    #[test]
    fn quotient_dims() {
        let r = ring(NumberField::rationals());
        assert_eq!(quotient_dim(&ideal(&r, &["u", "v"])).unwrap(), Dimension::Finite(1));
        assert_eq!(quotient_dim(&ideal(&r, &["u^2", "v^3"])).unwrap(), Dimension::Finite(6));
        assert_eq!(quotient_dim(&ideal(&r, &["u*v"])).unwrap(), Dimension::Infinite);
        assert_eq!(quotient_dim(&ideal(&r, &["1 + u", "v"])).unwrap(), Dimension::Finite(0));
        for k in 2..6 {
            let a = 3 * k - 1;
            let b = 3 * k - 2;
            let g = format!("u + {a}*v^{b}");
            assert_eq!(
                quotient_dim(&ideal(&r, &[&g, "v^2", "v^3"])).unwrap(),
                Dimension::Finite(2)
            );
        }
    }

    #[test]
    fn intersection_multiplicities() {
        let r = ring(NumberField::gaussian());
        let p = |s| parse_poly(s, &r).unwrap();
        assert_eq!(intersection_multiplicity(&p("u - i*v"), &p("u + i*v")).unwrap(), Dimension::Finite(1));
        assert_eq!(intersection_multiplicity(&p("u + v^2"), &p("u^2 + v")).unwrap(), Dimension::Finite(1));
        assert_eq!(intersection_multiplicity(&p("u*v"), &p("u")).unwrap(), Dimension::Infinite);
        let e = ring(NumberField::eisenstein());
        let q = |s| parse_poly(s, &e).unwrap();
        assert_eq!(
            intersection_multiplicity(&q("u - zeta3*v^4"), &q("u - zeta3^2*v^4")).unwrap(),
            Dimension::Finite(4)
        );
    }

    #[test]
    fn milnor_numbers() {
        let r = ring(NumberField::rationals());
        let p = |s| parse_poly(s, &r).unwrap();
        assert_eq!(milnor_number(&p("u^2 + v^2")).unwrap(), Dimension::Finite(1));
        assert_eq!(milnor_number(&p("u^2 + u*v^4 + v^8")).unwrap(), Dimension::Finite(7));
        assert_eq!(milnor_number(&p("v^2 + u^3")).unwrap(), Dimension::Finite(2));
        assert_eq!(milnor_number(&p("u")).unwrap(), Dimension::Finite(0));
    }

    #[test]
    fn budget_is_enforced() {
        let r = ring(NumberField::rationals());
        let i = ideal(&r, &["u^5 + v^7 + u^2*v^3", "u^4*v + v^6"]);
        assert!(matches!(
            standard_basis_with_budget(&i, 1),
            Err(LocalRingError::BudgetExceeded(1))
        ));
    }
}
