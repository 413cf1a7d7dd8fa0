//! Truncated `q`-series for `θ` and `δ`, their exact identities, and
//! numeric checks of the `q → 0` limits.
//!
//! Two-variable coefficients live in rank-2 Laurent polynomials with the
//! first coordinate `x` and the second `y`; half-integer exponents use the
//! same rational-exponent machinery as torus weights.

pub mod delta;
pub mod numeric;
pub mod series;

use thiserror::Error;

pub use delta::{
    check_delta_identities, check_delta_theta_relation, delta_coefficient, delta_leading,
    delta_series, format_xy, DeltaIdentities, DeltaSeries,
};
pub use numeric::{
    delta_numeric_limit, elliptic_vs_mc_numeric, reduced_delta_value, LimitRow, LimitTable,
    NUMERIC_ORDER,
};
pub use series::{theta_at, theta_prime_at_one, theta_product_at, theta_series, QSeries};

/// Largest supported truncation order.
pub const MAX_ORDER: usize = 16;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EllipticError {
    #[error("truncation order {0} exceeds the supported maximum {MAX_ORDER}")]
    OrderTooLarge(usize),
    #[error("shift {0} is integral; the limit takes a different branch there")]
    IntegralShift(String),
    #[error("evaluation point {0} is not admissible")]
    BadPoint(f64),
    #[error("q values must be strictly decreasing")]
    QNotDecreasing,
    #[error("q = {0} is outside (0, 1)")]
    QOutOfRange(f64),
    #[error("empty list of q values")]
    EmptyQList,
    #[error("localized class: {0}")]
    Class(String),
}

pub fn check_order(order: usize) -> Result<(), EllipticError> {
    if order > MAX_ORDER {
        Err(EllipticError::OrderTooLarge(order))
    } else {
        Ok(())
    }
}
