use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use crate::kalgebra::{Monomial, Weight};
use crate::{Poly, Rational};

/// Power series in `q` truncated after `q^order`, with Laurent-polynomial
/// coefficients in the formal variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QSeries {
    order: usize,
    rank: usize,
    /// Always `order + 1` entries.
    coeffs: Vec<Poly>,
}

impl QSeries {
    pub fn zero(order: usize, rank: usize) -> Self {
        QSeries {
            order,
            rank,
            coeffs: vec![Poly::zero(rank); order + 1],
        }
    }

    /// Coefficients beyond `order` are dropped and missing ones are zero.
    pub fn from_coeffs(order: usize, rank: usize, coeffs: Vec<Poly>) -> Self {
        let mut s = QSeries::zero(order, rank);
        for (n, c) in coeffs.into_iter().enumerate().take(order + 1) {
            assert_eq!(c.rank(), rank, "coefficient rank mismatch");
            s.coeffs[n] = c;
        }
        s
    }

    /// `p` placed at `q^0`.
    pub fn constant(order: usize, p: Poly) -> Self {
        let rank = p.rank();
        QSeries::from_coeffs(order, rank, vec![p])
    }

    /// A pure `q`-series with scalar coefficients.
    pub fn from_scalars(order: usize, rank: usize, values: &[Rational]) -> Self {
        let coeffs = values
            .iter()
            .map(|v| Poly::constant(rank, v.clone()))
            .collect();
        QSeries::from_coeffs(order, rank, coeffs)
    }

    /// `c·q^n`; zero when `n > order`.
    pub fn monomial(order: usize, n: usize, c: Poly) -> Self {
        let rank = c.rank();
        let mut s = QSeries::zero(order, rank);
        if n <= order {
            s.coeffs[n] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Coefficient of `q^n`, `None` past the truncation order.
    pub fn coeff(&self, n: usize) -> Option<&Poly> {
        self.coeffs.get(n)
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn set_coeff(&mut self, n: usize, c: Poly) {
        assert!(n <= self.order, "degree {n} beyond order {}", self.order);
        assert_eq!(c.rank(), self.rank, "coefficient rank mismatch");
        self.coeffs[n] = c;
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order, "cannot extend a truncated series");
        QSeries::from_coeffs(order, self.rank, self.coeffs[..=order].to_vec())
    }

    pub fn map_coeffs<F: FnMut(&Poly) -> Poly>(&self, f: F) -> Self {
        let coeffs: Vec<Poly> = self.coeffs.iter().map(f).collect();
        let rank = coeffs.first().map_or(self.rank, Poly::rank);
        QSeries::from_coeffs(self.order, rank, coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Poly::is_zero)
    }

    /// `d/dt` at `t = 1` of a rank-1 series, coefficientwise.
    pub fn derivative_at_one(&self) -> Vec<Rational> {
        assert_eq!(self.rank, 1, "derivative needs a single variable");
        self.coeffs
            .iter()
            .map(|c| {
                c.terms().fold(Rational::zero(), |acc, (m, k)| {
                    acc + k * &m.exponent.coords()[0]
                })
            })
            .collect()
    }

    /// Numeric value at the given variables and `q`, with `y = h = 1`.
    pub fn eval(&self, vars: &[f64], q: f64) -> f64 {
        let mut acc = 0.0;
        let mut qn = 1.0;
        for c in &self.coeffs {
            acc += qn * c.eval(vars, 1.0, 1.0);
            qn *= q;
        }
        acc
    }
}

impl Add for &QSeries {
    type Output = QSeries;
    fn add(self, rhs: &QSeries) -> QSeries {
        assert_eq!(self.rank, rhs.rank, "series rank mismatch");
        let order = self.order.min(rhs.order);
        let coeffs = (0..=order)
            .map(|n| &self.coeffs[n] + &rhs.coeffs[n])
            .collect();
        QSeries::from_coeffs(order, self.rank, coeffs)
    }
}

impl Sub for &QSeries {
    type Output = QSeries;
    fn sub(self, rhs: &QSeries) -> QSeries {
        self + &(-rhs)
    }
}

impl Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        self.map_coeffs(|c| -c)
    }
}

impl Mul for &QSeries {
    type Output = QSeries;
    fn mul(self, rhs: &QSeries) -> QSeries {
        assert_eq!(self.rank, rhs.rank, "series rank mismatch");
        let order = self.order.min(rhs.order);
        let mut out = QSeries::zero(order, self.rank);
        for i in 0..=order {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=order - i {
                if rhs.coeffs[j].is_zero() {
                    continue;
                }
                out.coeffs[i + j] = &out.coeffs[i + j] + &(&self.coeffs[i] * &rhs.coeffs[j]);
            }
        }
        out
    }
}

/// `∏_{n=1}^{order} (1 - qⁿ t^w)(1 - qⁿ t^{-w})`.
pub fn theta_product_at(order: usize, w: &Weight) -> QSeries {
    let rank = w.rank();
    let one = Poly::one(rank);
    let mut acc = QSeries::constant(order, one.clone());
    for n in 1..=order {
        for e in [w.clone(), -w] {
            let factor =
                &QSeries::constant(order, one.clone()) - &QSeries::monomial(order, n, Poly::t(e));
            acc = &acc * &factor;
        }
    }
    acc
}

/// `θ(t^w) = (t^{w/2} - t^{-w/2}) · ∏_{n=1}^{order} (1 - qⁿ t^w)(1 - qⁿ t^{-w})`.
pub fn theta_at(order: usize, w: &Weight) -> QSeries {
    let half = w.scale(&Rational::new(1.into(), 2.into()));
    let pre = Poly::t(half.clone()) - Poly::t(-&half);
    &QSeries::constant(order, pre) * &theta_product_at(order, w)
}

/// `θ(x)` in a single variable.
pub fn theta_series(order: usize) -> QSeries {
    theta_at(order, &Weight::from_ints(&[1]))
}

/// `θ'(1)` as a pure `q`-series, from the truncated product.
pub fn theta_prime_at_one(order: usize) -> Vec<Rational> {
    theta_series(order).derivative_at_one()
}

/// `t^w` as a monomial polynomial, shorthand for coefficient assembly.
pub(crate) fn xpow(exponent: &[i64]) -> Poly {
    Poly::term(
        Monomial::t(Weight::from_ints(exponent)),
        Rational::from_integer(1.into()),
    )
}
