//! Exact Laurent polynomials with rational exponents, their quotients,
//! one-parameter restrictions, limits at zero and exact division.

pub mod display;
pub mod division;
pub mod laurent;
pub mod ratfn;
pub mod rational;
pub mod weight;

use thiserror::Error;

pub use division::{lp_divides, DivisionError};
pub use laurent::LaurentPoly;
pub use ratfn::{LimitError, RationalFn};
pub use weight::{Monomial, Weight};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("zero denominator")]
    ZeroDenominator,
}
