//! The germ families of the worked examples, with their reference values.

use std::fmt;

use crate::curve::ImageComponent;
use crate::germ::{Germ, OverrideSet};
use crate::mpoly::NumberField;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    CrossCap,
    S(u32),
    B(u32),
    C(u32),
    F4,
    H(u32),
    Corank2,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::CrossCap => f.write_str("cross-cap"),
            Family::S(k) => write!(f, "S{k}"),
            Family::B(k) => write!(f, "B{k}"),
            Family::C(k) => write!(f, "C{k}"),
            Family::F4 => f.write_str("F4"),
            Family::H(k) => write!(f, "H{k}"),
            Family::Corank2 => f.write_str("corank-2"),
        }
    }
}

/// Reference values. `None` where no value is stated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Expected {
    pub sigma_f: i64,
    pub c: Option<u64>,
    pub t: Option<u64>,
    /// Vertical index of the single untwisted pair, or of the single
    /// twisted component for the cross-cap.
    pub vertical_index: Option<i64>,
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub family: Family,
    pub germ: Germ,
    pub expected: Expected,
}

impl Family {
    /// The map in `(u, v)`.
    pub fn map(self) -> [String; 3] {
        let s = |x: &str| x.to_string();
        match self {
            Family::CrossCap => [s("u"), s("v^2"), s("u*v")],
            Family::S(k) => [s("u"), s("v^2"), format!("v^3 + u^{}*v", k + 1)],
            Family::B(k) => [s("u"), s("v^2"), format!("u^2*v + v^{}", 2 * k + 1)],
            Family::C(k) => [s("u"), s("v^2"), format!("u*v^3 + u^{k}*v")],
            Family::F4 => [s("u"), s("v^2"), s("u^3*v + v^5")],
            Family::H(k) => [s("u"), format!("u*v + v^{}", 3 * k - 1), s("v^3")],
            Family::Corank2 => [s("u^2"), s("v^2"), s("u^3 + v^3 + u*v")],
        }
    }

    /// A field over which the double curve splits into components.
    pub fn field(self) -> NumberField {
        match self {
            Family::H(_) | Family::Corank2 => NumberField::eisenstein(),
            _ => NumberField::gaussian(),
        }
    }

    /// Reference signature of the family.
    pub fn table_sigma(self) -> i64 {
        match self {
            Family::CrossCap => -1,
            Family::S(k) if k % 2 == 1 => -(k as i64) - 2,
            Family::S(k) => -(k as i64) - 1,
            Family::B(k) if k % 2 == 1 => -3,
            Family::B(_) => -2,
            Family::C(k) if k % 2 == 1 => -(k as i64) - 1,
            Family::C(k) => -(k as i64),
            Family::F4 => -3,
            Family::H(k) => k as i64,
            Family::Corank2 => -2,
        }
    }

    pub fn expected(self) -> Expected {
        let (c, t, vertical_index) = match self {
            Family::CrossCap => (1, 0, Some(-1)),
            Family::S(k) => (k as u64 + 1, 0, (k % 2 == 1).then(|| -2 * k as i64 - 2)),
            Family::B(_) => (2, 0, None),
            Family::C(k) => (k as u64, 0, (k % 2 == 1).then(|| -2 * k as i64)),
            Family::F4 => (3, 0, None),
            Family::H(k) => (2, k as u64 - 1, Some(-3 * k as i64 - 1)),
            Family::Corank2 => (3, 1, None),
        };
        Expected {
            sigma_f: self.table_sigma(),
            c: Some(c),
            t: Some(t),
            vertical_index,
        }
    }

    pub fn germ(self) -> Germ {
        let map = self.map();
        let germ = Germ::new(
            &self.to_string(),
            self.field(),
            [map[0].as_str(), map[1].as_str(), map[2].as_str()],
        )
        .expect("corpus germs parse");
        match self {
            Family::Corank2 => germ.clone().with_overrides(corank2_overrides(&germ)),
            _ => germ,
        }
    }

    pub fn entry(self) -> CorpusEntry {
        CorpusEntry {
            family: self,
            germ: self.germ(),
            expected: self.expected(),
        }
    }
}

/// Components `(u+v^2)(u^2+v)(u+v)(u+rho v)(u+rho^2 v)`, all twisted, and
/// `T = 1`.
pub fn corank2_overrides(germ: &Germ) -> OverrideSet {
    let components = CORANK2_COMPONENTS
        .iter()
        .map(|s| germ.parse(s).expect("corpus components parse"))
        .collect();
    OverrideSet {
        components: Some(components),
        twist: Some((0..5).map(ImageComponent::Twisted).collect()),
        triple_points: Some(1),
        ..Default::default()
    }
}

pub const CORANK2_COMPONENTS: [&str; 5] = ["u + v^2", "u^2 + v", "u + v", "u + zeta3*v", "u + zeta3^2*v"];

/// Intersection matrix of the triple-point multigerm.
pub fn triple_point_form() -> Vec<Vec<i64>> {
    vec![vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]
}

/// Cross-cap; `S_k`, `B_k`, `H_k` for `k <= kmax`; `C_k` for `k <= kmax + 1`;
/// `F_4`; the corank-2 germ.
pub fn table_families(kmax: u32) -> Vec<Family> {
    let mut out = vec![Family::CrossCap];
    out.extend((1..=kmax).map(Family::S));
    out.extend((2..=kmax).map(Family::B));
    out.extend((3..=kmax + 1).map(Family::C));
    out.push(Family::F4);
    out.extend((2..=kmax).map(Family::H));
    out.push(Family::Corank2);
    out
}

pub fn table_corpus(kmax: u32) -> Vec<CorpusEntry> {
    table_families(kmax).into_iter().map(Family::entry).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_size() {
        assert_eq!(table_corpus(5).len(), 20);
        assert!(table_families(5).contains(&Family::C(6)));
    }

    #[test]
    fn table_columns() {
        assert_eq!(Family::S(1).table_sigma(), -3);
        assert_eq!(Family::S(2).table_sigma(), -3);
        assert_eq!(Family::B(3).table_sigma(), -3);
        assert_eq!(Family::C(6).table_sigma(), -6);
        assert_eq!(Family::H(4).table_sigma(), 4);
    }
}
