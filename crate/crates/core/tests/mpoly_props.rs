use std::sync::Arc;

use milnorsig_core::mpoly::{
    divided_difference, factor_components, gcd, parse_poly, resultant, squarefree_part,
    FieldElem, NumberField, Poly, PolyRing, Rational,
};
use proptest::prelude::*;

fn uv(field: NumberField) -> Arc<PolyRing> {
    PolyRing::new(&["u", "v"], field)
}

fn build(ring: &Arc<PolyRing>, terms: &[(u32, u32, i64)]) -> Poly {
    let f = ring.field();
    Poly::from_terms(ring, terms.iter().map(|&(a, b, c)| (vec![a, b], f.from_int(c))))
}

fn terms(max_deg: u32, len: usize) -> impl Strategy<Value = Vec<(u32, u32, i64)>> {
    prop::collection::vec((0..=max_deg, 0..=max_deg, -4i64..=4), 1..=len)
}

/// Determinant by cofactor expansion along the first row.
fn laplace_det(m: &[Vec<Poly>], ring: &Arc<PolyRing>) -> Poly {
    if m.is_empty() {
        return Poly::one(ring);
    }
    let mut acc = Poly::zero(ring);
    for j in 0..m.len() {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Poly>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, x)| x.clone()).collect())
            .collect();
        let term = &m[0][j] * &laplace_det(&minor, ring);
        acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

/// Sylvester matrix in `var` with the rows of `a` first.
fn sylvester(a: &Poly, b: &Poly, var: usize) -> Vec<Vec<Poly>> {
    let ring = a.ring();
    let ca: Vec<Poly> = a.coefficients_in(var).into_iter().rev().collect();
    let cb: Vec<Poly> = b.coefficients_in(var).into_iter().rev().collect();
    let (m, n) = (ca.len() - 1, cb.len() - 1);
    let size = m + n;
    let mut rows = Vec::new();
    for i in 0..n {
        let mut row = vec![Poly::zero(ring); size];
        for (k, c) in ca.iter().enumerate() {
            row[i + k] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![Poly::zero(ring); size];
        for (k, c) in cb.iter().enumerate() {
            row[i + k] = c.clone();
        }
        rows.push(row);
    }
    rows
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in terms(3, 4), b in terms(3, 4), c in terms(3, 4)) {
        let r = uv(NumberField::gaussian());
        let (a, b, c) = (build(&r, &a), build(&r, &b), build(&r, &c));
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a - &a), &Poly::zero(&r));
    }

    #[test]
    fn substitution_is_a_homomorphism(a in terms(3, 4), b in terms(3, 4), s in terms(2, 3), t in terms(2, 3)) {
        let r = uv(NumberField::rationals());
        let (a, b) = (build(&r, &a), build(&r, &b));
        let images = [build(&r, &s), build(&r, &t)];
        let sub = |p: &Poly| p.subst(&r, &images).unwrap();
        prop_assert_eq!(sub(&(&a + &b)), &sub(&a) + &sub(&b));
        prop_assert_eq!(sub(&(&a * &b)), &sub(&a) * &sub(&b));
    }

    #[test]
    fn resultant_matches_sylvester_determinant(a in terms(3, 4), b in terms(3, 4)) {
        let r = uv(NumberField::rationals());
        let (a, b) = (build(&r, &a), build(&r, &b));
        prop_assume!(a.degree_in(1) + b.degree_in(1) > 0 && !a.is_zero() && !b.is_zero());
        let res = resultant(&a, &b, 1).unwrap();
        prop_assert_eq!(res, laplace_det(&sylvester(&a, &b, 1), &r));
    }

    #[test]
    fn resultant_symmetry_and_multiplicativity(a in terms(2, 3), b in terms(2, 3), c in terms(2, 3)) {
        let r = uv(NumberField::rationals());
        let (a, b, c) = (build(&r, &a), build(&r, &b), build(&r, &c));
        prop_assume!(a.degree_in(1) > 0 && b.degree_in(1) > 0 && c.degree_in(1) > 0);
        let ab = resultant(&a, &b, 1).unwrap();
        let ba = resultant(&b, &a, 1).unwrap();
        let sign = if a.degree_in(1) * b.degree_in(1) % 2 == 0 { ba.clone() } else { -ba.clone() };
        prop_assert_eq!(&ab, &sign);
        let abc = resultant(&a, &(&b * &c), 1).unwrap();
        prop_assert_eq!(abc, &ab * &resultant(&a, &c, 1).unwrap());
    }

    #[test]
    fn squarefree_idempotent(a in terms(3, 3), b in terms(2, 3)) {
        let r = uv(NumberField::rationals());
        let a = &build(&r, &a) * &build(&r, &b).pow(2);
        prop_assume!(!a.is_zero());
        let s = squarefree_part(&a);
        prop_assert_eq!(squarefree_part(&s), s.clone());
        if s.degree_in(1) > 0 {
            let g = gcd(&s, &s.derivative(1)).unwrap();
            prop_assert_eq!(g.degree_in(1), 0);
            if s.degree_in(0) > 0 {
                prop_assert!(gcd(&g, &s.derivative(0)).unwrap().is_constant());
            }
        }
        prop_assert!(a.div_exact(&s).is_some());
    }

    #[test]
    fn divided_difference_identity(a in terms(5, 5)) {
        let r = uv(NumberField::rationals());
        let a = build(&r, &a);
        prop_assume!(a.degree_in(1) > 0);
        let dd = divided_difference(&a, "v", ("v1", "v2")).unwrap();
        let t = dd.ring().clone();
        let (u, v1, v2) = (Poly::var(&t, 0), Poly::var(&t, 1), Poly::var(&t, 2));
        let at1 = a.subst(&t, &[u.clone(), v1.clone()]).unwrap();
        let at2 = a.subst(&t, &[u, v2.clone()]).unwrap();
        prop_assert_eq!(&(&dd * &(&v1 - &v2)) + &at2, at1);
    }

    #[test]
    fn factors_multiply_back(cs in prop::collection::vec((-3i64..=3, 1u32..4), 1..4), axis in any::<bool>()) {
        // products of branches u - c v^m, optionally times u
        let r = uv(NumberField::gaussian());
        let mut a = if axis { build(&r, &[(1, 0, 1)]) } else { Poly::one(&r) };
        for &(c, m) in &cs {
            a = &a * &build(&r, &[(1, 0, 1), (0, m, -c)]);
        }
        prop_assume!(!a.is_constant());
        if let Ok(factors) = factor_components(&a) {
            let prod = factors.iter().fold(Poly::one(&r), |acc, (h, k)| &acc * &h.pow(*k));
            prop_assert!(prod.is_associate(&a));
        }
    }

    #[test]
    fn field_arithmetic(x in (-5i64..5, -5i64..5), y in (-5i64..5, -5i64..5), z in (-5i64..5, -5i64..5)) {
        let k = NumberField::eisenstein();
        let g = k.generator().unwrap();
        let elem = |(a, b): (i64, i64)| k.add(&k.from_int(a), &k.mul(&k.from_int(b), &g));
        let (x, y, z) = (elem(x), elem(y), elem(z));
        prop_assert_eq!(k.mul(&k.mul(&x, &y), &z), k.mul(&x, &k.mul(&y, &z)));
        if !x.is_zero() {
            prop_assert_eq!(k.mul(&x, &k.inv(&x).unwrap()), k.one());
        }
    }
}

#[test]
fn minimal_polynomial_vanishes_on_generator() {
    for k in [
        NumberField::gaussian(),
        NumberField::eisenstein(),
        NumberField::new("a", [-2, 0, 1].map(|c: i64| Rational::from_integer(c.into())).to_vec()).unwrap(),
    ] {
        let g = k.generator().unwrap();
        let value = k
            .minimal_poly()
            .iter()
            .enumerate()
            .fold(k.zero(), |acc, (i, c)| k.add(&acc, &k.scale(&k.pow(&g, i as u32), c)));
        assert!(value.is_zero(), "{}", k.descriptor());
    }
}

#[test]
fn parse_examples_over_eisenstein() {
    let r = uv(NumberField::eisenstein());
    let p = parse_poly("(u - zeta3*v^4)*(u - zeta3^2*v^4)", &r).unwrap();
    let coords: Vec<&FieldElem> = p.terms().values().collect();
    assert!(coords.iter().all(|c| c.is_rational()));
}
