//! GCD, squarefree parts, resultants and divided differences.

use std::sync::Arc;

use super::poly::{Poly, PolyRing};
use super::MpolyError;

/// Coefficient of the highest power of `var`.
pub(crate) fn lead_coeff_in(a: &Poly, var: usize) -> Poly {
    let d = a.degree_in(var);
    let mut c = Poly::zero(a.ring());
    for (e, k) in a.terms() {
        if e[var] == d {
            let mut e2 = e.clone();
            e2[var] = 0;
            c.add_term(e2, k.clone());
        }
    }
    c
}

fn var_power(ring: &Arc<PolyRing>, var: usize, k: u32) -> Vec<u32> {
    let mut e = vec![0; ring.nvars()];
    e[var] = k;
    e
}

/// Pseudo-remainder of `a` by `b` in `var`:
/// `lc(b)^(deg a - deg b + 1) * a mod b`.
pub fn pseudo_remainder(a: &Poly, b: &Poly, var: usize) -> Poly {
    let n = b.degree_in(var);
    let m = a.degree_in(var);
    if a.is_zero() || m < n {
        return a.clone();
    }
    let lb = lead_coeff_in(b, var);
    let ring = a.ring().clone();
    let one = ring.field().one();
    let mut r = a.clone();
    let mut steps = 0u32;
    while !r.is_zero() && r.degree_in(var) >= n {
        let k = r.degree_in(var);
        let lr = lead_coeff_in(&r, var);
        let shift = b.mul_term(&var_power(&ring, var, k - n), &one);
        r = &(&lb * &r) - &(&lr * &shift);
        steps += 1;
    }
    let missing = (m - n + 1).saturating_sub(steps);
    if missing > 0 {
        r = &r * &lb.pow(missing);
    }
    r
}

pub(crate) fn content_in(a: &Poly, var: usize) -> Poly {
    let mut g = Poly::zero(a.ring());
    for c in a.coefficients_in(var) {
        if c.is_zero() {
            continue;
        }
        g = gcd_rec(&g, &c);
        if g.is_constant() {
            break;
        }
    }
    g
}

fn primitive_part_in(a: &Poly, var: usize) -> Poly {
    let c = content_in(a, var);
    a.div_exact(&c).expect("content divides").normalized()
}

fn gcd_rec(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.normalized();
    }
    if b.is_zero() {
        return a.normalized();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one(a.ring());
    }
    let n = a.ring().nvars();
    let x = (0..n)
        .find(|&i| a.involves(i) || b.involves(i))
        .expect("non-constant");
    if !a.involves(x) {
        return gcd_rec(a, &content_in(b, x));
    }
    if !b.involves(x) {
        return gcd_rec(&content_in(a, x), b);
    }
    let ca = content_in(a, x);
    let cb = content_in(b, x);
    let c = gcd_rec(&ca, &cb);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    let (mut r0, mut r1) = if pa.degree_in(x) >= pb.degree_in(x) {
        (pa, pb)
    } else {
        (pb, pa)
    };
    r1 = r1.normalized();
    loop {
        let r = pseudo_remainder(&r0, &r1, x);
        if r.is_zero() {
            break;
        }
        if !r.involves(x) {
            return c;
        }
        r0 = r1;
        r1 = primitive_part_in(&r, x);
    }
    (&c * &primitive_part_in(&r1, x)).normalized()
}

/// Greatest common divisor, normalized to leading coefficient 1 under local
/// degrevlex.
pub fn gcd(a: &Poly, b: &Poly) -> Result<Poly, MpolyError> {
    if a.ring() != b.ring() {
        return Err(MpolyError::RingMismatch);
    }
    if a.is_zero() && b.is_zero() {
        return Err(MpolyError::GcdOfZeros);
    }
    Ok(gcd_rec(a, b))
}

/// Product of the distinct irreducible factors of `a`, normalized.
pub fn squarefree_part(a: &Poly) -> Poly {
    if a.is_zero() {
        return a.clone();
    }
    if a.is_constant() {
        return Poly::one(a.ring());
    }
    let mut g = a.clone();
    for i in 0..a.ring().nvars() {
        let d = a.derivative(i);
        if !d.is_zero() {
            g = gcd_rec(&g, &d);
        }
    }
    a.div_exact(&g).expect("gcd divides").normalized()
}

/// Resultant in `var` via the subresultant PRS. Matches the Sylvester
/// determinant with the rows of `a` first.
pub fn resultant(a: &Poly, b: &Poly, var: usize) -> Result<Poly, MpolyError> {
    if a.ring() != b.ring() {
        return Err(MpolyError::RingMismatch);
    }
    let ring = a.ring().clone();
    if a.is_zero() || b.is_zero() {
        return Ok(Poly::zero(&ring));
    }
    let (da, db) = (a.degree_in(var), b.degree_in(var));
    if da == 0 && db == 0 {
        return Err(MpolyError::ConstantInVariable);
    }
    if db == 0 {
        return Ok(b.pow(da));
    }
    if da == 0 {
        return Ok(a.pow(db));
    }
    let mut s = 1i64;
    let (mut pa, mut pb) = (a.clone(), b.clone());
    if da < db {
        std::mem::swap(&mut pa, &mut pb);
        if da % 2 == 1 && db % 2 == 1 {
            s = -1;
        }
    }
    let mut g = Poly::one(&ring);
    let mut h = Poly::one(&ring);
    loop {
        let (deg_a, deg_b) = (pa.degree_in(var), pb.degree_in(var));
        let delta = deg_a - deg_b;
        if deg_a % 2 == 1 && deg_b % 2 == 1 {
            s = -s;
        }
        let r = pseudo_remainder(&pa, &pb, var);
        pa = pb;
        let divisor = &g * &h.pow(delta);
        pb = r.div_exact(&divisor).ok_or(MpolyError::Internal("subresultant division"))?;
        g = lead_coeff_in(&pa, var);
        h = if delta == 0 {
            h
        } else {
            g.pow(delta)
                .div_exact(&h.pow(delta - 1))
                .ok_or(MpolyError::Internal("subresultant h update"))?
        };
        if pb.is_zero() {
            return Ok(Poly::zero(&ring));
        }
        if pb.degree_in(var) == 0 {
            break;
        }
    }
    let d = pa.degree_in(var);
    let lb = lead_coeff_in(&pb, var);
    let res = lb
        .pow(d)
        .div_exact(&h.pow(d - 1))
        .ok_or(MpolyError::Internal("subresultant final step"))?;
    Ok(res.scale(&ring.field().from_int(s)))
}

/// `(a[var := x1] - a[var := x2]) / (x1 - x2)`.
///
/// The result lives in a new ring where `var` is renamed to `fresh.0` in
/// place and `fresh.1` is appended as the last variable.
pub fn divided_difference(a: &Poly, var: &str, fresh: (&str, &str)) -> Result<Poly, MpolyError> {
    let ring = a.ring();
    let vi = ring
        .var_index(var)
        .ok_or_else(|| MpolyError::UnknownVariable(var.into()))?;
    if fresh.0 == fresh.1 {
        return Err(MpolyError::FreshSymbolInUse(fresh.1.into()));
    }
    // the first fresh symbol replaces `var` in place, so it may reuse its name
    if fresh.0 != var && ring.var_index(fresh.0).is_some() {
        return Err(MpolyError::FreshSymbolInUse(fresh.0.into()));
    }
    if ring.var_index(fresh.1).is_some() {
        return Err(MpolyError::FreshSymbolInUse(fresh.1.into()));
    }
    let mut names: Vec<String> = ring.vars().to_vec();
    names[vi] = fresh.0.into();
    names.push(fresh.1.into());
    let target = PolyRing::new(&names, ring.field().clone());
    let mut out = Poly::zero(&target);
    for (e, c) in a.terms() {
        let k = e[vi];
        if k == 0 {
            continue;
        }
        // (x1^k - x2^k)/(x1 - x2) = sum_{i+j=k-1} x1^i x2^j
        for i in 0..k {
            let mut e2 = e.clone();
            e2[vi] = i;
            e2.push(k - 1 - i);
            out.add_term(e2, c.clone());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpoly::{parse_poly, NumberField};

    fn ring() -> Arc<PolyRing> {
        PolyRing::new(&["u", "v"], NumberField::rationals())
    }

    fn p(s: &str) -> Poly {
        parse_poly(s, &ring()).unwrap()
    }

    #[test]
    fn resultant_examples() {
        assert_eq!(resultant(&p("v - u"), &p("v + u"), 1).unwrap(), p("2*u"));
        assert_eq!(resultant(&p("v^2 + u^2"), &p("v"), 1).unwrap(), p("u^2"));
        assert!(matches!(
            resultant(&p("u"), &p("u^2"), 1),
            Err(MpolyError::ConstantInVariable)
        ));
        assert!(resultant(&p("v^2 - u"), &p("(v^2 - u)*(v+1)"), 1).unwrap().is_zero());
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd(&p("u^2 - v^2"), &p("u - v")).unwrap(), p("u - v"));
        assert_eq!(gcd(&p("u*v^2 + u^3"), &p("u^2*v")).unwrap(), p("u"));
        assert_eq!(gcd(&p("u + 1"), &p("v")).unwrap(), p("1"));
        assert!(matches!(gcd(&p("0"), &p("0")), Err(MpolyError::GcdOfZeros)));
    }

    #[test]
    fn squarefree_examples() {
        assert_eq!(squarefree_part(&p("v^2*(u+v)")), p("v*(u+v)").normalized());
        assert_eq!(squarefree_part(&p("u^2+v^2")), p("u^2+v^2"));
        assert_eq!(squarefree_part(&p("(u^2+v^3)^3*(u-v)^2")), p("(u^2+v^3)*(u-v)").normalized());
    }

    #[test]
    fn divided_differences() {
        let dd = divided_difference(&p("v^2"), "v", ("v1", "v2")).unwrap();
        assert_eq!(dd.to_expr_string(), "v1 + v2");
        let dd = divided_difference(&p("v^3 + u^4*v"), "v", ("v1", "v2")).unwrap();
        let r = dd.ring().clone();
        assert_eq!(dd, parse_poly("v1^2 + v1*v2 + v2^2 + u^4", &r).unwrap());
        let dd = divided_difference(&p("u*v + v^5"), "v", ("v1", "v2")).unwrap();
        let r = dd.ring().clone();
        let expect = parse_poly("u + v1^4 + v1^3*v2 + v1^2*v2^2 + v1*v2^3 + v2^4", &r).unwrap();
        assert_eq!(dd, expect);
        assert!(divided_difference(&p("v"), "v", ("u", "w")).is_err());
    }
}
