//! Fixed-point chart models and localized twisted motivic Chern classes.
//!
//! The open-part class of a chart is taken without an Euler-class
//! prefactor: `∏_{boundary} (1+y)t^{-w} · ∏_{other} (1 + y t^{-w})`.

pub mod blowup;
pub mod chi;
pub mod classes;
pub mod model;
pub mod product;
pub mod serial;

use thiserror::Error;

pub use blowup::{blowup_model, pushforward_invariance_check, BlowUp, InvarianceReport};
pub use chi::{chi_via_localization, projective_space, FixedPointData};
pub use classes::{
    ceil_twist, divisor_weight, divisor_weight_at_point, euler_class, lambda_y_dual,
    localized_class, localized_class_unchecked, lrr_sum, mc_open_chart,
};
pub use model::{
    AmbientFixedPoint, BoundaryComponent, Chart, Divisor, ModelError, ResolutionModel,
};
pub use product::product_model;
pub use serial::{ModelDocument, SerialError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LocalizationError {
    #[error("invalid model: {0}")]
    Model(#[from] ModelError),
    #[error("weight {index} has rank {found}, expected {expected}")]
    WeightRank {
        index: usize,
        found: usize,
        expected: usize,
    },
    #[error("weight {index} is zero")]
    ZeroWeight { index: usize },
    #[error(
        "fixed-point sum at {point:?} is not a Laurent polynomial: ({numerator}) / ({denominator})"
    )]
    NonPolynomial {
        point: String,
        numerator: String,
        denominator: String,
    },
}
