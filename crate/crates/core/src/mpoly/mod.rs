//! Exact coefficient arithmetic and sparse multivariate polynomials.

mod algebra;
mod factor;
mod field;
mod order;
mod parse;
mod poly;

pub use algebra::{divided_difference, gcd, pseudo_remainder, resultant, squarefree_part};
pub use factor::{canonical_cmp, factor_components};
pub use field::{FieldElem, NumberField, Rational};
pub use order::{Exponent, MonomialOrder};
pub use parse::parse_poly;
pub use poly::{Poly, PolyRing};

pub(crate) use order::{degree as exp_degree, divides as exp_divides, lcm as exp_lcm, sub as exp_sub};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MpolyError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown identifier `{name}` at position {pos}")]
    UnknownIdentifier { pos: usize, name: String },
    #[error("exponent at position {pos} is not a non-negative integer literal")]
    BadExponent { pos: usize },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("fresh symbol `{0}` is already in use")]
    FreshSymbolInUse(String),
    #[error("operands live in different polynomial rings")]
    RingMismatch,
    #[error("gcd(0, 0) is undefined")]
    GcdOfZeros,
    #[error("both operands are constant in the elimination variable")]
    ConstantInVariable,
    #[error("invalid coefficient field: {0}")]
    InvalidField(String),
    #[error("factorization incomplete: {0}")]
    FactorizationIncomplete(String),
    #[error("internal error: {0}")]
    Internal(&'static str),
}
