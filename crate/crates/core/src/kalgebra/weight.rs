use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::Zero;

use super::rational::{format_rational, int};
use crate::Rational;

/// A (possibly fractional) character of a rank-`r` torus.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Weight(Vec<Rational>);

impl Weight {
    pub fn new(coords: Vec<Rational>) -> Self {
        Weight(coords)
    }

    pub fn zero(rank: usize) -> Self {
        Weight(vec![Rational::zero(); rank])
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Weight(coords.iter().map(|&c| int(c)).collect())
    }

    /// The `i`-th standard basis character of a rank-`rank` torus.
    pub fn unit(rank: usize, i: usize) -> Self {
        let mut w = Weight::zero(rank);
        w.0[i] = int(1);
        w
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Pairing with an integer cocharacter.
    pub fn pair(&self, sigma: &[i64]) -> Rational {
        debug_assert_eq!(sigma.len(), self.rank());
        self.0
            .iter()
            .zip(sigma)
            .fold(Rational::zero(), |acc, (w, &s)| acc + w * BigInt::from(s))
    }

    pub fn dot(&self, other: &[Rational]) -> Rational {
        debug_assert_eq!(other.len(), self.rank());
        self.0
            .iter()
            .zip(other)
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn scale(&self, k: &Rational) -> Weight {
        Weight(self.0.iter().map(|c| c * k).collect())
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|c| c.is_integer())
    }
}

impl From<Vec<Rational>> for Weight {
    fn from(v: Vec<Rational>) -> Self {
        Weight(v)
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        assert_eq!(self.rank(), rhs.rank(), "weight rank mismatch");
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        assert_eq!(self.rank(), rhs.rank(), "weight rank mismatch");
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }
}

impl Mul<&Rational> for &Weight {
    type Output = Weight;
    fn mul(self, k: &Rational) -> Weight {
        self.scale(k)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rank() == 1 {
            return write!(f, "{}", format_rational(&self.0[0]));
        }
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", format_rational(c))?;
        }
        write!(f, ")")
    }
}

/// A torus character times powers of `y` and `h`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Monomial {
    pub exponent: Weight,
    pub ydeg: i32,
    pub hdeg: i32,
}

impl Monomial {
    pub fn new(exponent: Weight, ydeg: i32, hdeg: i32) -> Self {
        Monomial {
            exponent,
            ydeg,
            hdeg,
        }
    }

    pub fn one(rank: usize) -> Self {
        Monomial::new(Weight::zero(rank), 0, 0)
    }

    pub fn t(exponent: Weight) -> Self {
        Monomial::new(exponent, 0, 0)
    }

    pub fn rank(&self) -> usize {
        self.exponent.rank()
    }

    pub fn is_one(&self) -> bool {
        self.ydeg == 0 && self.hdeg == 0 && self.exponent.is_zero()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial::new(
            &self.exponent + &other.exponent,
            self.ydeg + other.ydeg,
            self.hdeg + other.hdeg,
        )
    }

    pub fn inverse(&self) -> Monomial {
        Monomial::new(-&self.exponent, -self.ydeg, -self.hdeg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kalgebra::rational::rat;

    #[test]
    fn pairing_and_arithmetic() {
        let w = Weight::new(vec![rat(1, 2), int(-1)]);
        assert_eq!(w.pair(&[2, 3]), int(-2));
        assert_eq!(
            &w + &Weight::from_ints(&[1, 1]),
            Weight::new(vec![rat(3, 2), int(0)])
        );
        assert!(!w.is_integral());
        assert_eq!(w.to_string(), "(1/2, -1)");
        assert_eq!(Weight::new(vec![rat(-1, 3)]).to_string(), "-1/3");
    }
}
