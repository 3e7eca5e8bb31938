mod common;

use common::sturm_signature;
use milnorsig_core::milnorsig::{inertia, signature_of_form};
use proptest::prelude::*;

fn symmetric(max: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (0..=max).prop_flat_map(|n| {
        prop::collection::vec(-5i64..=5, n * n).prop_map(move |v| {
            let mut m = vec![vec![0; n]; n];
            for i in 0..n {
                for j in i..n {
                    m[i][j] = v[i * n + j];
                    m[j][i] = v[i * n + j];
                }
            }
            m
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn signature_matches_sturm_oracle(m in symmetric(8)) {
        prop_assert_eq!(signature_of_form(&m), sturm_signature(&m));
    }

    #[test]
    fn signature_invariant_under_permutation(m in symmetric(6), seed in any::<u64>()) {
        let n = m.len();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let p: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| m[perm[i]][perm[j]]).collect()).collect();
        prop_assert_eq!(inertia(&m), inertia(&p));
        prop_assert!(signature_of_form(&m).unsigned_abs() as usize <= n);
    }
}

#[test]
fn oracle_on_known_matrices() {
    let triple = vec![vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]];
    assert_eq!(sturm_signature(&triple), -1);
    assert_eq!(sturm_signature(&[vec![1, 1], vec![1, 1]]), 1);
    assert_eq!(sturm_signature(&[vec![2, 0, 0], vec![0, 2, 0], vec![0, 0, -1]]), 1);
    assert_eq!(sturm_signature(&[]), 0);
}
