//! Coefficient scalar traits.
//!
//! The algebra layer (`LaurentPoly`, `RationalFn`, the simplex kernel) is
//! generic over its coefficient type. Exact computations use
//! [`Rational`](crate::Rational); `f64` and `f32` are accepted wherever only
//! ring operations are needed.

use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::Num;

/// A commutative ring usable as a polynomial coefficient.
pub trait Scalar:
    Num + Neg<Output = Self> + Clone + PartialEq + Debug + Display + Send + Sync + 'static
{
}

impl<T> Scalar for T where
    T: Num + Neg<Output = T> + Clone + PartialEq + Debug + Display + Send + Sync + 'static
{
}

/// Marker for scalars whose `/` is field division.
///
/// Integer types implement [`Scalar`] but not `Field`: their `/` truncates.
pub trait Field: Scalar {}

impl Field for Ratio<BigInt> {}
impl Field for Ratio<i64> {}
impl Field for f64 {}
impl Field for f32 {}

/// A field with a total order compatible with its arithmetic, as needed for
/// pivoting rules and sign tests.
pub trait OrderedField: Field + PartialOrd {}

impl<T: Field + PartialOrd> OrderedField for T {}
