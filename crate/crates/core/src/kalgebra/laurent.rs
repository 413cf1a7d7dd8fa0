use std::collections::{BTreeMap, BTreeSet};
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{Float, ToPrimitive};

use super::weight::{Monomial, Weight};
use super::AlgebraError;
use crate::scalar::Scalar;
use crate::Rational;

/// A Laurent polynomial in torus characters `t^w` (rational `w`), `y` and `h`.
///
/// Zero coefficients are never stored, so structural equality is equality
/// of polynomials.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct LaurentPoly<C> {
    rank: usize,
    terms: BTreeMap<Monomial, C>,
}

impl<C: Scalar> LaurentPoly<C> {
    pub fn zero(rank: usize) -> Self {
        LaurentPoly {
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(rank: usize) -> Self {
        Self::constant(rank, C::one())
    }

    pub fn constant(rank: usize, c: C) -> Self {
        Self::term(Monomial::one(rank), c)
    }

    /// The single term `c·m`.
    pub fn term(m: Monomial, c: C) -> Self {
        let mut p = Self::zero(m.rank());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// `t^w` with coefficient one.
    pub fn t(w: Weight) -> Self {
        Self::term(Monomial::t(w), C::one())
    }

    pub fn y(rank: usize) -> Self {
        Self::term(Monomial::new(Weight::zero(rank), 1, 0), C::one())
    }

    pub fn h(rank: usize) -> Self {
        Self::term(Monomial::new(Weight::zero(rank), 0, 1), C::one())
    }

    /// Sums the given terms; colliding monomials are added and zeros dropped.
    pub fn from_terms<I>(rank: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, C)>,
    {
        let mut p = Self::zero(rank);
        for (m, c) in terms {
            assert_eq!(m.rank(), rank, "monomial rank mismatch");
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let sum = existing.clone() + c;
                if sum.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, C> {
        self.terms
    }

    pub fn coeff(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    /// The single term, if there is exactly one.
    pub fn as_term(&self) -> Option<(&Monomial, &C)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    fn check_rank(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.rank == other.rank {
            Ok(())
        } else {
            Err(AlgebraError::RankMismatch {
                left: self.rank,
                right: other.rank,
            })
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_rank(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_rank(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_rank(other)?;
        let mut out = Self::zero(self.rank);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca.clone() * cb.clone());
            }
        }
        Ok(out)
    }

    pub fn scale(&self, k: &C) -> Self {
        if k.is_zero() {
            return Self::zero(self.rank);
        }
        LaurentPoly {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.clone() * k.clone()))
                .collect(),
        }
    }

    /// Multiplication by the monomial `m` (coefficient one).
    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        assert_eq!(m.rank(), self.rank, "monomial rank mismatch");
        LaurentPoly {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.mul(m), c.clone()))
                .collect(),
        }
    }

    pub fn shift(&self, w: &Weight) -> Self {
        self.mul_monomial(&Monomial::t(w.clone()))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.rank);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn product<'a, I>(rank: usize, factors: I) -> Self
    where
        I: IntoIterator<Item = &'a Self>,
        C: 'a,
    {
        factors.into_iter().fold(Self::one(rank), |acc, f| &acc * f)
    }

    /// Rewrites every monomial; images that collide are summed.
    pub fn map_monomials<F>(&self, rank: usize, mut f: F) -> Self
    where
        F: FnMut(&Monomial, &C) -> (Monomial, C),
    {
        Self::from_terms(rank, self.terms.iter().map(|(m, c)| f(m, c)))
    }

    pub fn map_coeffs<D: Scalar, F: FnMut(&C) -> D>(&self, mut f: F) -> LaurentPoly<D> {
        LaurentPoly::from_terms(self.rank, self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    /// Restriction to the one-parameter subgroup `σ`: `t^w ↦ s^{σ·w}`.
    ///
    /// Panics if `sigma.len()` differs from the rank.
    pub fn restrict_sigma(&self, sigma: &[i64]) -> Self {
        assert_eq!(sigma.len(), self.rank, "cocharacter length mismatch");
        self.map_monomials(1, |m, c| {
            (
                Monomial::new(Weight::new(vec![m.exponent.pair(sigma)]), m.ydeg, m.hdeg),
                c.clone(),
            )
        })
    }

    /// Swaps coordinates according to `perm` (new coordinate `i` is old `perm[i]`).
    pub fn permute_coords(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.rank, "permutation length mismatch");
        self.map_monomials(self.rank, |m, c| {
            let coords = perm
                .iter()
                .map(|&j| m.exponent.coords()[j].clone())
                .collect();
            (
                Monomial::new(Weight::new(coords), m.ydeg, m.hdeg),
                c.clone(),
            )
        })
    }

    /// `t^w ↦ t^{-w}` on torus characters; `y`, `h` untouched.
    pub fn invert_torus(&self) -> Self {
        self.map_monomials(self.rank, |m, c| {
            (Monomial::new(-&m.exponent, m.ydeg, m.hdeg), c.clone())
        })
    }

    /// Distinct torus exponents, ignoring `y` and `h`.
    pub fn support(&self) -> BTreeSet<Weight> {
        self.terms.keys().map(|m| m.exponent.clone()).collect()
    }

    /// Coefficient of `t^w` as a polynomial in `y`, `h` (rank 0).
    pub fn torus_coefficient(&self, w: &Weight) -> LaurentPoly<C> {
        LaurentPoly::from_terms(
            0,
            self.terms
                .iter()
                .filter(|(m, _)| &m.exponent == w)
                .map(|(m, c)| (Monomial::new(Weight::zero(0), m.ydeg, m.hdeg), c.clone())),
        )
    }

    pub fn has_h(&self) -> bool {
        self.terms.keys().any(|m| m.hdeg != 0)
    }

    /// Numeric evaluation at positive real torus coordinates.
    pub fn eval<F: Float>(&self, t: &[F], y: F, h: F) -> F
    where
        C: ToPrimitive,
    {
        assert_eq!(t.len(), self.rank, "point dimension mismatch");
        let mut acc = F::zero();
        for (m, c) in &self.terms {
            let mut v = F::from(c.to_f64().unwrap_or(f64::NAN)).unwrap_or_else(F::nan);
            for (ti, e) in t.iter().zip(m.exponent.coords()) {
                let e = F::from(rational_to_f64(e)).unwrap_or_else(F::nan);
                v = v * ti.powf(e);
            }
            v = v * y.powi(m.ydeg) * h.powi(m.hdeg);
            acc = acc + v;
        }
        acc
    }
}

fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

impl<C: Scalar> LaurentPoly<C> {
    /// Sum of all coefficients, i.e. the value at `t = y = h = 1`.
    pub fn coefficient_sum(&self) -> C {
        self.terms
            .values()
            .fold(C::zero(), |acc, c| acc + c.clone())
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl<C: Scalar> $trait<&LaurentPoly<C>> for &LaurentPoly<C> {
            type Output = LaurentPoly<C>;
            fn $method(self, rhs: &LaurentPoly<C>) -> LaurentPoly<C> {
                self.$checked(rhs)
                    .expect("Laurent polynomial rank mismatch")
            }
        }

        impl<C: Scalar> $trait for LaurentPoly<C> {
            type Output = LaurentPoly<C>;
            fn $method(self, rhs: LaurentPoly<C>) -> LaurentPoly<C> {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl<C: Scalar> Neg for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn neg(self) -> LaurentPoly<C> {
        self.scale(&-C::one())
    }
}

impl<C: Scalar> Neg for LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn neg(self) -> LaurentPoly<C> {
        -&self
    }
}

impl<C: Scalar> LaurentPoly<C> {
    pub fn is_one(&self) -> bool {
        self.as_term()
            .map(|(m, c)| m.is_one() && c.is_one())
            .unwrap_or(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kalgebra::rational::{int, rat};
    use crate::Poly;

    fn t1(e: Rational) -> Poly {
        Poly::t(Weight::new(vec![e]))
    }

    #[test]
    fn cancellation_and_identity() {
        let a = Poly::one(1) - t1(int(-1));
        assert_eq!(&a + &t1(int(-1)), Poly::one(1));
        assert_eq!(&a + &Poly::zero(1), a);
        let b = Poly::one(1) + &Poly::y(1) * &t1(int(-1));
        assert_eq!(&b + &b, b.scale(&int(2)));
    }

    #[test]
    fn products() {
        let a = Poly::one(1) - t1(int(-1));
        let b = Poly::one(1) + t1(int(-1));
        assert_eq!(&a * &b, Poly::one(1) - t1(int(-2)));
        assert_eq!(&t1(rat(1, 2)) * &t1(rat(1, 2)), t1(int(1)));
        let one_plus_y = Poly::one(1) + Poly::y(1);
        let lhs = &(&one_plus_y * &t1(int(-1))) * &t1(int(1));
        assert_eq!(lhs, one_plus_y);
    }

    #[test]
    fn rank_mismatch_is_an_error() {
        assert!(Poly::one(1).checked_add(&Poly::one(2)).is_err());
        assert!(Poly::one(1).checked_mul(&Poly::one(2)).is_err());
    }

    #[test]
    fn restriction() {
        let a = Poly::t(Weight::from_ints(&[1, -1])) + Poly::t(Weight::from_ints(&[0, 2]));
        assert_eq!(a.restrict_sigma(&[1, 1]), Poly::one(1) + t1(int(2)));
        let b = Poly::t(Weight::from_ints(&[1, 0])) - Poly::t(Weight::from_ints(&[0, 1]));
        assert!(b.restrict_sigma(&[1, 1]).is_zero());
        let c = Poly::one(2) + &Poly::y(2) * &Poly::t(Weight::from_ints(&[-1, 0]));
        assert_eq!(
            c.restrict_sigma(&[2, 3]),
            Poly::one(1) + &Poly::y(1) * &t1(int(-2))
        );
    }

    #[test]
    fn numeric_evaluation() {
        let a = Poly::one(1) + &Poly::y(1) * &t1(rat(1, 2));
        let v: f64 = a.eval(&[4.0], 3.0, 1.0);
        assert!((v - 7.0).abs() < 1e-12);
    }
}
