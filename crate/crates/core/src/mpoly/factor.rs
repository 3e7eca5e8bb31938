//! Decomposition of a plane curve germ into irreducible components.
//!
//! Only factors that can be certified irreducible at the origin are ever
//! returned. The certificates are:
//!
//! * a non-zero linear term (smooth germ);
//! * a single Newton edge from `(a, 0)` to `(0, b)` with `gcd(a, b) = 1`;
//! * `A x^2 + B x + C` with `A(0) != 0` and a discriminant of odd order.
//!
//! Splitting uses monomial and content extraction, the quadratic formula
//! in either variable, and for quasi-homogeneous pieces the roots of the
//! edge polynomial. Anything else is reported as
//! [`MpolyError::FactorizationIncomplete`].

use std::cmp::Ordering;

use num_integer::Integer;
use num_traits::Zero;

use super::algebra::{content_in, squarefree_part};
use super::field::{FieldElem, NumberField, Rational};
use super::order::MonomialOrder;
use super::poly::Poly;
use super::MpolyError;

/// Irreducible components through the origin with their multiplicities.
///
/// Factors that do not vanish at the origin are units of the local ring
/// and are dropped. Components are normalized and sorted canonically.
pub fn factor_components(a: &Poly) -> Result<Vec<(Poly, u32)>, MpolyError> {
    if a.ring().nvars() != 2 {
        return Err(MpolyError::FactorizationIncomplete(format!(
            "{a}: only bivariate curves are supported"
        )));
    }
    if a.is_zero() || !a.vanishes_at_origin() {
        return Err(MpolyError::FactorizationIncomplete(format!(
            "{a} is zero or a unit at the origin"
        )));
    }
    let sqf = squarefree_part(a);
    let mut comps = Vec::new();
    let mut work = vec![sqf];
    while let Some(q) = work.pop() {
        split_piece(q, &mut work, &mut comps)?;
    }
    sort_canonical(&mut comps);
    let mut out = Vec::with_capacity(comps.len());
    for h in comps {
        let mut m = 0;
        let mut rest = a.clone();
        while let Some(next) = rest.div_exact(&h) {
            rest = next;
            m += 1;
        }
        debug_assert!(m > 0);
        out.push((h, m));
    }
    Ok(out)
}

fn split_piece(q: Poly, work: &mut Vec<Poly>, comps: &mut Vec<Poly>) -> Result<(), MpolyError> {
    if q.is_constant() || !q.vanishes_at_origin() {
        return Ok(());
    }
    let ring = q.ring().clone();
    // coordinate axes
    for i in 0..2 {
        if q.terms().keys().all(|e| e[i] > 0) {
            let x = Poly::var(&ring, i);
            comps.push(x.clone());
            work.push(q.div_exact(&x).expect("divisible by variable"));
            return Ok(());
        }
    }
    if q.order() == Some(1) {
        comps.push(q.normalized());
        return Ok(());
    }
    for i in 0..2 {
        let c = content_in(&q, i);
        if !c.is_constant() {
            work.push(q.div_exact(&c).expect("content divides"));
            work.push(c);
            return Ok(());
        }
    }
    let newton = NewtonEdge::single(&q);
    if let Some(edge) = &newton {
        if edge.lattice_length() == 1 {
            comps.push(q.normalized());
            return Ok(());
        }
    }
    for x in 0..2 {
        if q.degree_in(x) != 2 {
            continue;
        }
        match split_quadratic(&q, x) {
            Quadratic::Split(f1, f2) => {
                let prod = &f1 * &f2;
                let cofactor = q
                    .div_exact(&prod)
                    .ok_or(MpolyError::Internal("quadratic split"))?;
                work.extend([f1, f2, cofactor]);
                return Ok(());
            }
            Quadratic::Irreducible => {
                comps.push(q.normalized());
                return Ok(());
            }
            Quadratic::Unknown => {}
        }
    }
    if let Some(edge) = newton {
        if let Some(factors) = edge.split_quasi_homogeneous(&q) {
            work.extend(factors);
            return Ok(());
        }
    }
    Err(MpolyError::FactorizationIncomplete(format!(
        "cannot certify the decomposition of {q}; supply the components explicitly"
    )))
}

enum Quadratic {
    Split(Poly, Poly),
    Irreducible,
    Unknown,
}

/// `q = A x^2 + B x + C` with `A, B, C` free of `x`.
fn split_quadratic(q: &Poly, x: usize) -> Quadratic {
    let ring = q.ring();
    let field = ring.field();
    let y = 1 - x;
    let co = q.coefficients_in(x);
    let (c, b, a) = (&co[0], &co[1], &co[2]);
    let disc = &(b * b) - &a.scale(&field.from_int(4)).checked_mul(c).unwrap();
    if disc.is_zero() {
        // q = A (x + B/2A)^2 is not squarefree; cannot happen for our input
        return Quadratic::Unknown;
    }
    let dcoef = univariate_coeffs(&disc, y);
    if let Some(root) = univariate_sqrt(field, &dcoef) {
        let s = from_univariate(ring, y, &root);
        let xv = Poly::var(ring, x);
        let two_ax = &a.scale(&field.from_int(2)) * &xv;
        let base = &two_ax + b;
        let f1 = primitive_in(&(&base - &s), x);
        let f2 = primitive_in(&(&base + &s), x);
        return Quadratic::Split(f1, f2);
    }
    let a0 = a.constant_term();
    let ord = dcoef.iter().position(|c| !c.is_zero()).unwrap();
    if !a0.is_zero() && ord % 2 == 1 {
        Quadratic::Irreducible
    } else {
        Quadratic::Unknown
    }
}

fn primitive_in(p: &Poly, x: usize) -> Poly {
    let c = content_in(p, x);
    p.div_exact(&c).expect("content divides").normalized()
}

fn univariate_coeffs(p: &Poly, y: usize) -> Vec<FieldElem> {
    let d = p.degree_in(y) as usize;
    let mut out = vec![p.field().zero(); d + 1];
    for (e, c) in p.terms() {
        out[e[y] as usize] = c.clone();
    }
    out
}

fn from_univariate(ring: &std::sync::Arc<super::PolyRing>, y: usize, c: &[FieldElem]) -> Poly {
    Poly::from_terms(
        ring,
        c.iter().enumerate().map(|(k, x)| {
            let mut e = vec![0; ring.nvars()];
            e[y] = k as u32;
            (e, x.clone())
        }),
    )
}

/// Square root of a univariate polynomial, if it is a perfect square over
/// the field.
fn univariate_sqrt(field: &NumberField, d: &[FieldElem]) -> Option<Vec<FieldElem>> {
    let deg = d.len() - 1;
    if deg % 2 == 1 {
        return None;
    }
    let m = deg / 2;
    let mut s = vec![field.zero(); m + 1];
    s[m] = field.sqrt(&d[deg])?;
    let two_lead = field.scale(&s[m], &Rational::from_integer(2.into()));
    let inv = field.inv(&two_lead)?;
    for j in (0..m).rev() {
        let mut acc = d[m + j].clone();
        for a in (j + 1)..m {
            let b = m + j - a;
            if b > j && b < m {
                acc = field.sub(&acc, &field.mul(&s[a], &s[b]));
            }
        }
        s[j] = field.mul(&acc, &inv);
    }
    // verify
    let mut sq = vec![field.zero(); 2 * m + 1];
    for (i, x) in s.iter().enumerate() {
        for (j, y) in s.iter().enumerate() {
            sq[i + j] = field.add(&sq[i + j], &field.mul(x, y));
        }
    }
    (sq == d).then_some(s)
}

/// Newton polygon consisting of the single edge from `(a, 0)` to `(0, b)`.
struct NewtonEdge {
    a: u32,
    b: u32,
}

impl NewtonEdge {
    fn single(q: &Poly) -> Option<NewtonEdge> {
        let a = q.terms().keys().filter(|e| e[1] == 0).map(|e| e[0]).min()?;
        let b = q.terms().keys().filter(|e| e[0] == 0).map(|e| e[1]).min()?;
        if a == 0 || b == 0 {
            return None;
        }
        let (a64, b64) = (a as u64, b as u64);
        q.terms()
            .keys()
            .all(|e| e[0] as u64 * b64 + e[1] as u64 * a64 >= a64 * b64)
            .then_some(NewtonEdge { a, b })
    }

    fn lattice_length(&self) -> u32 {
        self.a.gcd(&self.b)
    }

    /// For quasi-homogeneous `q`, factors `q = c * prod (u^a' - t v^b')`
    /// over the roots `t` of the edge polynomial.
    fn split_quasi_homogeneous(&self, q: &Poly) -> Option<Vec<Poly>> {
        let (a, b) = (self.a as u64, self.b as u64);
        if !q
            .terms()
            .keys()
            .all(|e| e[0] as u64 * b + e[1] as u64 * a == a * b)
        {
            return None;
        }
        let g = self.lattice_length();
        let (ap, bp) = (self.a / g, self.b / g);
        let field = q.field();
        // E(t) = sum_k c_k t^(g-k) where c_k is the coefficient of u^(a'(g-k)) v^(b'k)
        let mut edge = vec![field.zero(); g as usize + 1];
        for k in 0..=g {
            edge[(g - k) as usize] = q.coeff(&[ap * (g - k), bp * k]);
        }
        let roots = univariate_roots(field, &edge)?;
        let ring = q.ring();
        let factors: Vec<Poly> = roots
            .iter()
            .map(|t| {
                Poly::from_terms(
                    ring,
                    [(vec![ap, 0], field.one()), (vec![0, bp], field.neg(t))],
                )
            })
            .collect();
        let prod = factors.iter().fold(Poly::one(ring), |acc, f| &acc * f);
        q.is_associate(&prod).then_some(factors)
    }
}

/// All roots of a univariate polynomial (coefficients low to high) when it
/// splits into distinct linear factors over the field, found through
/// rational roots and the quadratic formula.
pub(crate) fn univariate_roots(field: &NumberField, c: &[FieldElem]) -> Option<Vec<FieldElem>> {
    let mut c = c.to_vec();
    while c.last().is_some_and(FieldElem::is_zero) {
        c.pop();
    }
    let mut roots = Vec::new();
    loop {
        let deg = c.len().checked_sub(1)?;
        match deg {
            0 => return Some(roots),
            1 => {
                roots.push(field.neg(&field.div(&c[0], &c[1])?));
                return Some(roots);
            }
            2 => {
                let (c0, c1, c2) = (&c[0], &c[1], &c[2]);
                let disc = field.sub(&field.mul(c1, c1), &field.scale(&field.mul(c0, c2), &Rational::from_integer(4.into())));
                let s = field.sqrt(&disc)?;
                let two_a = field.scale(c2, &Rational::from_integer(2.into()));
                let minus_b = field.neg(c1);
                roots.push(field.div(&field.add(&minus_b, &s), &two_a)?);
                roots.push(field.div(&field.sub(&minus_b, &s), &two_a)?);
                return Some(roots);
            }
            _ => {
                let r = rational_root(&c)?;
                roots.push(field.from_rational(r.clone()));
                c = deflate(field, &c, &field.from_rational(r));
            }
        }
    }
}

fn rational_root(c: &[FieldElem]) -> Option<Rational> {
    let rc: Vec<Rational> = c.iter().map(|x| x.as_rational().cloned()).collect::<Option<_>>()?;
    let lcm = rc.iter().fold(num_bigint::BigInt::from(1), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<num_bigint::BigInt> = rc
        .iter()
        .map(|x| (x * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    let lead = ints.last()?.clone();
    let constant = ints[0].clone();
    if constant.is_zero() {
        return Some(Rational::zero());
    }
    let small = |n: &num_bigint::BigInt| -> Vec<num_bigint::BigInt> {
        let n = if n < &num_bigint::BigInt::zero() { -n } else { n.clone() };
        let mut out = vec![];
        let mut k = num_bigint::BigInt::from(1);
        while &k * &k <= n && k < num_bigint::BigInt::from(1_000_000) {
            if (&n % &k).is_zero() {
                out.push(k.clone());
                out.push(&n / &k);
            }
            k += 1;
        }
        out
    };
    for p in small(&constant) {
        for q in small(&lead) {
            for sign in [1, -1] {
                let r = Rational::new(&p * sign, q.clone());
                let val = rc.iter().rev().fold(Rational::zero(), |acc, x| acc * &r + x);
                if val.is_zero() {
                    return Some(r);
                }
            }
        }
    }
    None
}

fn deflate(field: &NumberField, c: &[FieldElem], r: &FieldElem) -> Vec<FieldElem> {
    // synthetic division by (t - r)
    let n = c.len() - 1;
    let mut out = vec![field.zero(); n];
    let mut carry = field.zero();
    for k in (0..=n).rev() {
        let v = field.add(&c[k], &field.mul(&carry, r));
        if k > 0 {
            out[k - 1] = v.clone();
        }
        carry = v;
    }
    out
}

/// Canonical comparison of normalized polynomials: term by term in local
/// degrevlex order, then by coefficient coordinates.
pub fn canonical_cmp(a: &Poly, b: &Poly) -> Ordering {
    let order = MonomialOrder::LocalDegRevLex;
    fn sorted(p: &Poly) -> Vec<(&Vec<u32>, &FieldElem)> {
        let mut t: Vec<_> = p.terms().iter().collect();
        t.sort_by(|x, y| MonomialOrder::LocalDegRevLex.cmp(y.0, x.0));
        t
    }
    let (ta, tb) = (sorted(a), sorted(b));
    for (x, y) in ta.iter().zip(&tb) {
        let c = order.cmp(y.0, x.0).then_with(|| x.1.coords().cmp(y.1.coords()));
        if c != Ordering::Equal {
            return c;
        }
    }
    ta.len().cmp(&tb.len())
}

pub(crate) fn sort_canonical(v: &mut [Poly]) {
    v.sort_by(canonical_cmp);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpoly::{parse_poly, PolyRing};

    fn check(src: &str, field: NumberField, expect: &[&str]) {
        let r = PolyRing::new(&["u", "v"], field);
        let p = parse_poly(src, &r).unwrap();
        let comps = factor_components(&p).unwrap();
        let mut want: Vec<Poly> = expect.iter().map(|s| parse_poly(s, &r).unwrap().normalized()).collect();
        sort_canonical(&mut want);
        let got: Vec<Poly> = comps.iter().map(|(h, _)| h.clone()).collect();
        assert_eq!(got, want, "{src}");
        let prod = comps.iter().fold(Poly::one(&r), |acc, (h, m)| &acc * &h.pow(*m));
        assert!(prod.is_associate(&p), "{src}");
    }

    #[test]
    fn worked_example_curves() {
        check("u^2 + v^2", NumberField::gaussian(), &["u - i*v", "u + i*v"]);
        check("u*v^2 + u^3", NumberField::gaussian(), &["u", "u - i*v", "u + i*v"]);
        check("u^3 + v^4", NumberField::gaussian(), &["u^3 + v^4"]);
        check("u^2 + v^8", NumberField::gaussian(), &["u - i*v^4", "u + i*v^4"]);
        check(
            "u^2 + u*v^4 + v^8",
            NumberField::eisenstein(),
            &["u - zeta3*v^4", "u - zeta3^2*v^4"],
        );
        check("u*v^2 + u^5", NumberField::gaussian(), &["u", "u^2 + i*v", "u^2 - i*v"]);
        check("u*v^2 + u^4", NumberField::gaussian(), &["u", "v^2 + u^3"]);
        check("v^2 + u^3", NumberField::rationals(), &["v^2 + u^3"]);
    }

    #[test]
    fn multiplicities_and_units() {
        let r = PolyRing::new(&["u", "v"], NumberField::rationals());
        let p = parse_poly("v^2*(u+v)*(1+u)", &r).unwrap();
        let comps = factor_components(&p).unwrap();
        assert_eq!(comps.len(), 2);
        assert!(comps.iter().any(|(h, m)| *h == Poly::var(&r, 1) && *m == 2));
    }

    #[test]
    fn cubic_with_three_lines() {
        check(
            "u^3 - v^3",
            NumberField::eisenstein(),
            &["u - v", "u - zeta3*v", "u - zeta3^2*v"],
        );
    }

    #[test]
    fn node_over_too_small_field_fails() {
        let r = PolyRing::new(&["u", "v"], NumberField::rationals());
        let p = parse_poly("u^2 + v^2", &r).unwrap();
        assert!(matches!(factor_components(&p), Err(MpolyError::FactorizationIncomplete(_))));
        // nodal cubic: locally two analytic branches that are not polynomials
        let p = parse_poly("v^2 - u^2 - u^3", &r).unwrap();
        assert!(matches!(factor_components(&p), Err(MpolyError::FactorizationIncomplete(_))));
    }
}
