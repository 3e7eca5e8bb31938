//! Test oracles shared by the integration suites.
#![allow(dead_code)]

use milnorsig_core::mpoly::Rational;
use num_traits::{One, Signed, Zero};

/// Univariate polynomial, lowest degree first, no trailing zeros.
type Upoly = Vec<Rational>;

fn trim(mut p: Upoly) -> Upoly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn derivative(p: &Upoly) -> Upoly {
    trim(p.iter().enumerate().skip(1).map(|(i, c)| c * Rational::from_integer(i.into())).collect())
}

fn rem(a: &Upoly, b: &Upoly) -> Upoly {
    let mut r = a.clone();
    let lb = b.last().unwrap().clone();
    while r.len() >= b.len() {
        let k = r.len() - b.len();
        let q = r.last().unwrap() / &lb;
        for (i, c) in b.iter().enumerate() {
            r[k + i] = &r[k + i] - &q * c;
        }
        r = trim(r);
        if r.is_empty() {
            break;
        }
    }
    r
}

fn gcd(a: &Upoly, b: &Upoly) -> Upoly {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_empty() {
        let r = rem(&a, &b);
        a = b;
        b = r;
    }
    a
}

fn sign_at_zero(p: &Upoly) -> i32 {
    p.first().map_or(0, |c| if c.is_positive() { 1 } else if c.is_negative() { -1 } else { 0 })
}

fn sign_at_infinity(p: &Upoly) -> i32 {
    p.last().map_or(0, |c| if c.is_positive() { 1 } else { -1 })
}

fn variations(signs: impl Iterator<Item = i32>) -> usize {
    let s: Vec<i32> = signs.filter(|&x| x != 0).collect();
    s.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Distinct roots in (0, inf) of `p`, which must not vanish at 0.
fn sturm_positive_distinct(p: &Upoly) -> usize {
    let mut seq = vec![p.clone(), derivative(p)];
    while seq.last().is_some_and(|q| !q.is_empty()) {
        let n = seq.len();
        let r: Upoly = rem(&seq[n - 2], &seq[n - 1]).into_iter().map(|c| -c).collect();
        seq.push(r);
    }
    seq.pop();
    variations(seq.iter().map(sign_at_zero)) - variations(seq.iter().map(sign_at_infinity))
}

/// Positive roots counted with multiplicity.
fn positive_roots(p: &Upoly) -> usize {
    if p.len() <= 1 {
        return 0;
    }
    sturm_positive_distinct(p) + positive_roots(&gcd(p, &derivative(p)))
}

/// Characteristic polynomial by the Faddeev-LeVerrier recursion.
pub fn charpoly(a: &[Vec<i64>]) -> Upoly {
    let n = a.len();
    let a: Vec<Vec<Rational>> = a.iter().map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect()).collect();
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = Rational::one();
    let mut m = vec![vec![Rational::zero(); n]; n];
    for k in 1..=n {
        // m = a * m + c_{n-k+1} I
        let mut next = vec![vec![Rational::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut s = Rational::zero();
                for l in 0..n {
                    s += &a[i][l] * &m[l][j];
                }
                if i == j {
                    s += &coeffs[n - k + 1];
                }
                next[i][j] = s;
            }
        }
        m = next;
        let mut tr = Rational::zero();
        for i in 0..n {
            for l in 0..n {
                tr += &a[i][l] * &m[l][i];
            }
        }
        coeffs[n - k] = -tr / Rational::from_integer((k as i64).into());
    }
    coeffs
}

pub fn sturm_signature(a: &[Vec<i64>]) -> i64 {
    let mut p = trim(charpoly(a));
    while sign_at_zero(&p) == 0 && p.len() > 1 {
        p.remove(0);
    }
    let flipped: Upoly = p
        .iter()
        .enumerate()
        .map(|(i, c)| if i % 2 == 1 { -c.clone() } else { c.clone() })
        .collect();
    positive_roots(&p) as i64 - positive_roots(&flipped) as i64
}
