//! Exact arithmetic substrate: rationals, sparse commutative polynomials in
//! `y1..yn`, matrices over the polynomial ring and rational linear solving.

mod matrix;
mod poly;
mod ratmat;

pub use matrix::{PolyCol, PolyMatrix, PolyRow};
pub use poly::{Monomial, Polynomial};
pub use ratmat::{solve_linear, RatMatrix, SolveOutcome};

use thiserror::Error;

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rat = num_rational::BigRational;

/// Shorthand for a small integer rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

/// Shorthand for `n/d`; panics when `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgError {
    #[error("rank mismatch: {left} vs {right} variables")]
    RankMismatch { left: usize, right: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not invertible over the polynomial ring (determinant {0})")]
    NotInvertible(String),
    #[error("variable index {index} out of range for {nvars} variables")]
    VariableOutOfRange { index: usize, nvars: usize },
}
