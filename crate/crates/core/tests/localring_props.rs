use std::sync::Arc;

use milnorsig_core::localring::{
    intersection_multiplicity, quotient_dim, standard_basis, Dimension, LocalIdeal,
};
use milnorsig_core::mpoly::{NumberField, Poly, PolyRing};
use proptest::prelude::*;

fn uv() -> Arc<PolyRing> {
    PolyRing::new(&["u", "v"], NumberField::rationals())
}

fn build(ring: &Arc<PolyRing>, terms: &[(u32, u32, i64)]) -> Poly {
    let f = ring.field();
    Poly::from_terms(ring, terms.iter().map(|&(a, b, c)| (vec![a, b], f.from_int(c))))
}

/// Polynomials without constant term, low degree, small coefficients.
fn germ_terms() -> impl Strategy<Value = Vec<(u32, u32, i64)>> {
    prop::collection::vec((0u32..4, 0u32..4, -3i64..=3), 1..5).prop_map(|v| {
        v.into_iter().filter(|&(a, b, _)| a + b > 0 && a + b <= 4).collect()
    })
}

/// Monomial ideal in two variables that contains pure powers of both.
fn monomial_gens() -> impl Strategy<Value = Vec<(u32, u32)>> {
    (1u32..7, 1u32..7, prop::collection::vec((0u32..6, 0u32..6), 0..4)).prop_map(|(a, b, mut rest)| {
        rest.retain(|&(x, y)| x + y > 0);
        rest.push((a, 0));
        rest.push((0, b));
        rest
    })
}

/// Column-by-column count of monomials outside a two-variable monomial ideal.
fn staircase_oracle(gens: &[(u32, u32)]) -> u64 {
    let amax = gens.iter().filter(|g| g.1 == 0).map(|g| g.0).min().unwrap();
    (0..amax)
        .map(|a| {
            gens.iter()
                .filter(|g| g.0 <= a)
                .map(|g| g.1 as u64)
                .min()
                .unwrap()
        })
        .sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn monomial_times_unit_staircase(
        gens in monomial_gens(),
        tails in prop::collection::vec(germ_terms(), 8),
    ) {
        let r = uv();
        let one = Poly::one(&r);
        let polys: Vec<Poly> = gens
            .iter()
            .zip(tails.iter().cycle())
            .map(|(&(a, b), tail)| {
                let m = build(&r, &[(a, b, 1)]);
                &m * &(&one + &build(&r, tail))
            })
            .collect();
        let dim = quotient_dim(&LocalIdeal::new(polys).unwrap()).unwrap();
        prop_assert_eq!(dim, Dimension::Finite(staircase_oracle(&gens)));
    }

    #[test]
    fn spair_criterion_holds(f in germ_terms(), g in germ_terms(), h in germ_terms()) {
        let r = uv();
        let gens: Vec<Poly> = [f, g, h].iter().map(|t| build(&r, t)).filter(|p| !p.is_zero()).collect();
        prop_assume!(!gens.is_empty());
        let sb = standard_basis(&LocalIdeal::new(gens).unwrap()).unwrap();
        prop_assert!(sb.satisfies_spair_criterion());
    }

    #[test]
    fn intersection_symmetric(f in germ_terms(), g in germ_terms()) {
        let r = uv();
        let (f, g) = (build(&r, &f), build(&r, &g));
        prop_assert_eq!(
            intersection_multiplicity(&f, &g).unwrap(),
            intersection_multiplicity(&g, &f).unwrap()
        );
    }

    #[test]
    fn intersection_additive(f in germ_terms(), g in germ_terms(), h in germ_terms()) {
        let r = uv();
        let (f, g, h) = (build(&r, &f), build(&r, &g), build(&r, &h));
        prop_assume!(!f.is_zero() && !g.is_zero() && !h.is_zero());
        let a = intersection_multiplicity(&f, &h).unwrap();
        let b = intersection_multiplicity(&g, &h).unwrap();
        let ab = intersection_multiplicity(&(&f * &g), &h).unwrap();
        match (a, b) {
            (Dimension::Finite(x), Dimension::Finite(y)) => prop_assert_eq!(ab, Dimension::Finite(x + y)),
            _ => prop_assert_eq!(ab, Dimension::Infinite),
        }
    }
}

/// `u - c v^m` branches; two branches meet with multiplicity `min(m, n)`
/// unless they coincide.
fn branch_set() -> impl Strategy<Value = Vec<(i64, u32)>> {
    prop::collection::btree_set((prop_oneof![-3i64..=-1, 1i64..=3], 1u32..5), 1..5).prop_map(|s| s.into_iter().collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn quotient_dim_invariant_under_generator_moves(
        f in germ_terms(),
        g in germ_terms(),
        m in germ_terms(),
        scale in 1i64..5,
    ) {
        let r = uv();
        let (f, g, m) = (build(&r, &f), build(&r, &g), build(&r, &m));
        prop_assume!(!f.is_zero() && !g.is_zero());
        let base = quotient_dim(&LocalIdeal::new(vec![f.clone(), g.clone()]).unwrap()).unwrap();
        let swapped = quotient_dim(&LocalIdeal::new(vec![g.clone(), f.clone()]).unwrap()).unwrap();
        let scaled = quotient_dim(&LocalIdeal::new(vec![f.scale(&r.field().from_int(scale)), g.clone()]).unwrap()).unwrap();
        let moved = quotient_dim(&LocalIdeal::new(vec![f.clone(), &g + &(&m * &f)]).unwrap()).unwrap();
        prop_assert_eq!(base, swapped);
        prop_assert_eq!(base, scaled);
        prop_assert_eq!(base, moved);
    }

    #[test]
    fn milnor_number_matches_branch_oracle(branches in branch_set()) {
        let r = uv();
        let curve = branches
            .iter()
            .fold(Poly::one(&r), |acc, &(c, m)| &acc * &build(&r, &[(1, 0, 1), (0, m, -c)]));
        let mut delta = 0u64;
        for (i, &(a, m)) in branches.iter().enumerate() {
            for &(b, n) in &branches[i + 1..] {
                delta += if m == n { assert_ne!(a, b); u64::from(m) } else { u64::from(m.min(n)) };
            }
        }
        let r_count = branches.len() as u64;
        let mu = milnorsig_core::localring::milnor_number(&curve).unwrap();
        prop_assert_eq!(mu, Dimension::Finite(2 * delta + 1 - r_count));
    }
}
