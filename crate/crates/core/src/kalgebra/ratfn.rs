use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{Float, ToPrimitive};
use thiserror::Error;

use super::division::{lp_divides, DivisionError};
use super::laurent::LaurentPoly;
use super::weight::Weight;
use super::AlgebraError;
use crate::scalar::{Field, Scalar};

/// A quotient `num / den` of Laurent polynomials.
///
/// No gcd reduction is performed; equality is cross-multiplication.
#[derive(Clone, Debug)]
pub struct RationalFn<C> {
    num: LaurentPoly<C>,
    den: LaurentPoly<C>,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LimitError {
    #[error("limit at zero needs a rank-1 function, got rank {0}")]
    NotRankOne(usize),
    #[error("limit diverges: numerator order {num_order} below denominator order {den_order}")]
    Diverges {
        num_order: String,
        den_order: String,
    },
    #[error("leading coefficient ratio is not a polynomial in y, h")]
    NotPolynomial,
}

impl<C: Scalar> RationalFn<C> {
    pub fn new(num: LaurentPoly<C>, den: LaurentPoly<C>) -> Result<Self, AlgebraError> {
        if num.rank() != den.rank() {
            return Err(AlgebraError::RankMismatch {
                left: num.rank(),
                right: den.rank(),
            });
        }
        if den.is_zero() {
            return Err(AlgebraError::ZeroDenominator);
        }
        Ok(RationalFn { num, den })
    }

    pub fn from_poly(p: LaurentPoly<C>) -> Self {
        let rank = p.rank();
        RationalFn {
            num: p,
            den: LaurentPoly::one(rank),
        }
    }

    pub fn zero(rank: usize) -> Self {
        Self::from_poly(LaurentPoly::zero(rank))
    }

    pub fn num(&self) -> &LaurentPoly<C> {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly<C> {
        &self.den
    }

    pub fn rank(&self) -> usize {
        self.num.rank()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        let num = self
            .num
            .checked_mul(&other.den)?
            .checked_add(&other.num.checked_mul(&self.den)?)?;
        Ok(RationalFn {
            num,
            den: self.den.checked_mul(&other.den)?,
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        Ok(RationalFn {
            num: self.num.checked_mul(&other.num)?,
            den: self.den.checked_mul(&other.den)?,
        })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, AlgebraError> {
        if other.num.is_zero() {
            return Err(AlgebraError::ZeroDenominator);
        }
        Ok(RationalFn {
            num: self.num.checked_mul(&other.den)?,
            den: self.den.checked_mul(&other.num)?,
        })
    }

    /// Applies the same monomial substitution to numerator and denominator.
    pub fn map_polys<F>(&self, mut f: F) -> Result<Self, AlgebraError>
    where
        F: FnMut(&LaurentPoly<C>) -> LaurentPoly<C>,
    {
        RationalFn::new(f(&self.num), f(&self.den))
    }

    pub fn eval<Fl: Float>(&self, t: &[Fl], y: Fl, h: Fl) -> Fl
    where
        C: ToPrimitive,
    {
        self.num.eval(t, y, h) / self.den.eval(t, y, h)
    }
}

impl<C: Field> RationalFn<C> {
    /// The Laurent polynomial `q` with `q·den = num`, if it exists.
    pub fn to_polynomial(&self) -> Result<LaurentPoly<C>, DivisionError<C>> {
        lp_divides(&self.den, &self.num)
    }

    /// Limit as the single torus variable `s` tends to zero.
    ///
    /// The result is a polynomial in `y`, `h` (rank 0). Let `m_n`, `m_d` be
    /// the minimal `s`-exponents: the limit is 0 if `m_n > m_d`, the ratio of
    /// the lowest coefficients if they are equal and it divides exactly, and
    /// does not exist otherwise.
    pub fn limit_at_zero(&self) -> Result<LaurentPoly<C>, LimitError> {
        if self.rank() != 1 {
            return Err(LimitError::NotRankOne(self.rank()));
        }
        if self.num.is_zero() {
            return Ok(LaurentPoly::zero(0));
        }
        let min_exp = |p: &LaurentPoly<C>| -> Weight {
            p.terms()
                .map(|(m, _)| m.exponent.clone())
                .min()
                .expect("nonzero polynomial")
        };
        let mn = min_exp(&self.num);
        let md = min_exp(&self.den);
        if mn > md {
            return Ok(LaurentPoly::zero(0));
        }
        if mn < md {
            return Err(LimitError::Diverges {
                num_order: mn.to_string(),
                den_order: md.to_string(),
            });
        }
        let cn = self.num.torus_coefficient(&mn);
        let cd = self.den.torus_coefficient(&md);
        lp_divides(&cd, &cn).map_err(|_| LimitError::NotPolynomial)
    }
}

impl<C: Scalar> PartialEq for RationalFn<C> {
    fn eq(&self, other: &Self) -> bool {
        match (
            self.num.checked_mul(&other.den),
            other.num.checked_mul(&self.den),
        ) {
            (Ok(a), Ok(b)) => a == b,
            _ => false,
        }
    }
}

impl<C: Scalar> From<LaurentPoly<C>> for RationalFn<C> {
    fn from(p: LaurentPoly<C>) -> Self {
        RationalFn::from_poly(p)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl<C: Scalar> $trait<&RationalFn<C>> for &RationalFn<C> {
            type Output = RationalFn<C>;
            fn $method(self, rhs: &RationalFn<C>) -> RationalFn<C> {
                self.$checked(rhs).expect("rational function rank mismatch")
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl<C: Scalar> Neg for &RationalFn<C> {
    type Output = RationalFn<C>;
    fn neg(self) -> RationalFn<C> {
        RationalFn {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kalgebra::rational::int;
    use crate::{Poly, RatFn};

    fn t1(e: i64) -> Poly {
        Poly::t(Weight::from_ints(&[e]))
    }

    fn frac(num: Poly, den: Poly) -> RatFn {
        RatFn::new(num, den).unwrap()
    }

    #[test]
    fn localization_of_the_line() {
        let a = frac(Poly::one(1), Poly::one(1) - t1(1));
        let b = frac(Poly::one(1), Poly::one(1) - t1(-1));
        assert_eq!(&a + &b, RatFn::from_poly(Poly::one(1)));
        assert_eq!((&a + &b).to_polynomial().unwrap(), Poly::one(1));
    }

    #[test]
    fn identity_and_inverse() {
        let a = frac(Poly::y(1), Poly::one(1) + t1(3));
        assert_eq!(&a + &RatFn::zero(1), a);
        let inv = frac(Poly::one(1), Poly::one(1) - t1(1));
        let back = &inv * &RatFn::from_poly(Poly::one(1) - t1(1));
        assert_eq!(back.to_polynomial().unwrap(), Poly::one(1));
    }

    #[test]
    fn to_polynomial_examples() {
        let a = frac(Poly::one(1) - t1(-2), Poly::one(1) - t1(-1));
        assert_eq!(a.to_polynomial().unwrap(), Poly::one(1) + t1(-1));
        let b = frac(
            t1(2) - t1(1).scale(&int(2)) + Poly::one(1),
            Poly::one(1) - t1(1),
        );
        assert_eq!(b.to_polynomial().unwrap(), Poly::one(1) - t1(1));
        assert!(frac(Poly::one(1), Poly::one(1) - t1(1))
            .to_polynomial()
            .is_err());
    }

    #[test]
    fn limits() {
        let a = frac(Poly::one(1), Poly::one(1) - t1(-1));
        assert!(a.limit_at_zero().unwrap().is_zero());
        let b = frac(Poly::one(1) + &Poly::y(1) * &t1(1), Poly::one(1));
        assert_eq!(b.limit_at_zero().unwrap(), Poly::one(0));
        let c = frac(Poly::one(1) + &Poly::y(1) * &t1(-1), Poly::one(1) - t1(-1));
        assert_eq!(c.limit_at_zero().unwrap(), -Poly::y(0));
        let d = frac(t1(-2), Poly::one(1) - t1(-1));
        assert!(matches!(
            d.limit_at_zero(),
            Err(LimitError::Diverges { .. })
        ));
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(RatFn::new(Poly::one(1), Poly::zero(1)).is_err());
    }
}
