//! Exact localization engine for twisted motivic Chern classes.
//!
//! Classes are restricted to torus-fixed points and represented as Laurent
//! polynomials in torus characters, `y` and `h`. On top of that the crate
//! checks stable-envelope axioms, blow-up invariance of the twisted
//! pushforward, and identities of the theta and delta q-series.

pub mod elliptic;
pub mod envelope;
pub mod kalgebra;
pub mod library;
pub mod localization;
pub mod polytope;
pub mod scalar;

/// Exact rational scalar used for exponents and coefficients.
pub type Rational = num_rational::BigRational;
/// Laurent polynomial with exact rational coefficients.
pub type Poly = kalgebra::LaurentPoly<Rational>;
/// Rational function with exact rational coefficients.
pub type RatFn = kalgebra::RationalFn<Rational>;

pub use kalgebra::{LaurentPoly, Monomial, RationalFn, Weight};
pub use scalar::{Field, OrderedField, Scalar};
