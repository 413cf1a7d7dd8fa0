//! Stable-envelope axioms for localized twisted classes: normalization at
//! the center, Newton inclusion below it, support, and divisibility.
//!
//! Order convention: `e ≤ e₀` iff `(e, e₀)` lies in the reflexive transitive
//! closure of the input pairs.

pub mod checks;
pub mod order;
pub mod report;

use std::collections::BTreeMap;

use thiserror::Error;

use crate::kalgebra::Weight;
use crate::localization::{LocalizationError, ModelError};
use crate::polytope::PolytopeError;

pub use checks::{
    divides_with_witness, divisibility_check, divisor_from_slope, newton_inclusion_check,
    newton_inclusion_for_class, normalization_check, rho_rescale, slope_divisor_weights,
    stable_normalization_target, support_check, DivisibilityVerdict, NewtonVerdict,
    NormalizationVerdict, SupportVerdict,
};
pub use order::{split_tangent, Chamber, PartialOrder};
pub use report::{full_axiom_report, EnvelopeReport, PointReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnvelopeError {
    #[error("invalid model: {0}")]
    Model(#[from] ModelError),
    #[error("{0}")]
    Localization(#[from] LocalizationError),
    #[error("polytope: {0}")]
    Polytope(#[from] PolytopeError),
    #[error("chamber has length {found}, torus rank is {expected}")]
    ChamberRank { found: usize, expected: usize },
    #[error("chamber is not generic at {point:?}: σ·{weight} = 0")]
    NonGenericChamber { point: String, weight: String },
    #[error("order relation mentions unknown point {0:?}")]
    UnknownPoint(String),
    #[error("order has a cycle through {a:?} and {b:?}")]
    OrderCycle { a: String, b: String },
    #[error("divisor touches the center: component {component:?} passes through chart {chart:?}")]
    DivisorTouchesCenter { chart: String, component: String },
    #[error("slope gives divisor weight {slope_weight} at {point:?} but the divisor has {divisor_weight}")]
    SlopeMismatch {
        point: String,
        slope_weight: String,
        divisor_weight: String,
    },
    #[error("slope has no weight for point {0:?}")]
    SlopeMissingPoint(String),
    #[error("slope denominator must be positive")]
    ZeroSlopeDenominator,
    #[error("no divisor on the boundary components realizes the slope")]
    SlopeNotRealizable,
    #[error("neither a divisor nor a slope was given")]
    NoDivisor,
}

/// Fractional line bundle `L^{1/n}` given by the weights `w_e(L)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Slope {
    pub n: u64,
    pub weights: BTreeMap<String, Weight>,
}

impl Slope {
    pub fn new(n: u64, weights: BTreeMap<String, Weight>) -> Result<Self, EnvelopeError> {
        if n == 0 {
            return Err(EnvelopeError::ZeroSlopeDenominator);
        }
        Ok(Slope { n, weights })
    }
}
