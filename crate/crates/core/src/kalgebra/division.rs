use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use thiserror::Error;

use super::laurent::LaurentPoly;
use super::rational::denominator_lcm;
use super::weight::{Monomial, Weight};
use crate::scalar::Field;
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DivisionError<C> {
    #[error("division by the zero polynomial")]
    ZeroDivisor,
    #[error("rank mismatch: divisor has rank {divisor}, dividend has rank {dividend}")]
    RankMismatch { divisor: usize, dividend: usize },
    #[error("exponent lattice coordinates exceed 64 bits")]
    LatticeOverflow,
    #[error("not divisible; first undividable leading term {leading:?}")]
    NotDivisible {
        /// Leading term of the running remainder that the divisor's leading
        /// term failed to divide, in the original coordinates.
        leading: Monomial,
        /// Full remainder of the division, in the original coordinates.
        remainder: LaurentPoly<C>,
    },
}

/// Exponent vector on the cleared-denominator lattice, ordered graded-lex.
#[derive(Clone, PartialEq, Eq, Debug)]
struct GradedKey(Vec<i64>);

impl GradedKey {
    fn degree(&self) -> i64 {
        self.0.iter().sum()
    }

    fn divides(&self, other: &GradedKey) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn sub(&self, other: &GradedKey) -> GradedKey {
        GradedKey(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    fn add(&self, other: &GradedKey) -> GradedKey {
        GradedKey(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for GradedKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for GradedKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

struct Lattice {
    rank: usize,
    scale: BigInt,
}

impl Lattice {
    fn encode(&self, m: &Monomial) -> Option<Vec<i64>> {
        let mut v = Vec::with_capacity(self.rank + 2);
        for c in m.exponent.coords() {
            let scaled = c * &self.scale;
            debug_assert!(scaled.is_integer());
            v.push(scaled.to_integer().to_i64()?);
        }
        v.push(i64::from(m.ydeg));
        v.push(i64::from(m.hdeg));
        Some(v)
    }

    fn decode(&self, v: &[i64]) -> Monomial {
        let coords = v[..self.rank]
            .iter()
            .map(|&c| Rational::new(BigInt::from(c), self.scale.clone()))
            .collect();
        Monomial::new(
            Weight::new(coords),
            v[self.rank] as i32,
            v[self.rank + 1] as i32,
        )
    }
}

type LatticePoly<C> = BTreeMap<GradedKey, C>;

fn coordinatewise_min(vs: &[(Vec<i64>, impl Sized)]) -> Vec<i64> {
    let n = vs[0].0.len();
    (0..n)
        .map(|i| vs.iter().map(|(v, _)| v[i]).min().unwrap_or(0))
        .collect()
}

fn add_into<C: Field>(p: &mut LatticePoly<C>, k: GradedKey, c: C) {
    if c.is_zero() {
        return;
    }
    match p.get_mut(&k) {
        Some(e) => {
            let s = e.clone() + c;
            if s.is_zero() {
                p.remove(&k);
            } else {
                *e = s;
            }
        }
        None => {
            p.insert(k, c);
        }
    }
}

/// Exact division `f / g` of Laurent polynomials.
///
/// Exponents are scaled by the lcm `L` of all exponent denominators, then
/// both operands are shifted by their coordinatewise minimal exponents so
/// that `g` becomes an ordinary polynomial with no monomial factor. A Laurent
/// quotient exists iff the ordinary division by `g` under the graded-lex
/// order on `(L·exponent, ydeg, hdeg)` leaves remainder zero.
pub fn lp_divides<C: Field>(
    g: &LaurentPoly<C>,
    f: &LaurentPoly<C>,
) -> Result<LaurentPoly<C>, DivisionError<C>> {
    if g.rank() != f.rank() {
        return Err(DivisionError::RankMismatch {
            divisor: g.rank(),
            dividend: f.rank(),
        });
    }
    if g.is_zero() {
        return Err(DivisionError::ZeroDivisor);
    }
    let rank = g.rank();
    if f.is_zero() {
        return Ok(LaurentPoly::zero(rank));
    }

    let lattice = Lattice {
        rank,
        scale: denominator_lcm(
            g.terms()
                .chain(f.terms())
                .flat_map(|(m, _)| m.exponent.coords().iter()),
        ),
    };
    let encode = |p: &LaurentPoly<C>| -> Result<Vec<(Vec<i64>, C)>, DivisionError<C>> {
        p.terms()
            .map(|(m, c)| {
                lattice
                    .encode(m)
                    .map(|v| (v, c.clone()))
                    .ok_or(DivisionError::LatticeOverflow)
            })
            .collect()
    };
    let g_terms = encode(g)?;
    let f_terms = encode(f)?;
    let a = GradedKey(coordinatewise_min(&g_terms));
    let b = GradedKey(coordinatewise_min(&f_terms));

    let divisor: LatticePoly<C> = g_terms
        .into_iter()
        .map(|(v, c)| (GradedKey(v).sub(&a), c))
        .collect();
    let mut rest: LatticePoly<C> = f_terms
        .into_iter()
        .map(|(v, c)| (GradedKey(v).sub(&b), c))
        .collect();
    let (lead_key, lead_coeff) = divisor
        .iter()
        .next_back()
        .map(|(k, c)| (k.clone(), c.clone()))
        .expect("nonzero divisor");

    let mut quotient: LatticePoly<C> = BTreeMap::new();
    let mut remainder: LatticePoly<C> = BTreeMap::new();
    let mut first_undividable: Option<GradedKey> = None;

    while let Some((k, c)) = rest.pop_last() {
        if lead_key.divides(&k) {
            let factor = k.sub(&lead_key);
            let coeff = c / lead_coeff.clone();
            for (dk, dc) in divisor.iter().rev().skip(1) {
                add_into(&mut rest, dk.add(&factor), -(coeff.clone() * dc.clone()));
            }
            add_into(&mut quotient, factor, coeff);
        } else {
            if first_undividable.is_none() {
                first_undividable = Some(k.clone());
            }
            remainder.insert(k, c);
        }
    }

    match first_undividable {
        None => {
            let shift = b.sub(&a);
            Ok(LaurentPoly::from_terms(
                rank,
                quotient
                    .into_iter()
                    .map(|(k, c)| (lattice.decode(&k.add(&shift).0), c)),
            ))
        }
        Some(lead) => Err(DivisionError::NotDivisible {
            leading: lattice.decode(&lead.add(&b).0),
            remainder: LaurentPoly::from_terms(
                rank,
                remainder
                    .into_iter()
                    .map(|(k, c)| (lattice.decode(&k.add(&b).0), c)),
            ),
        }),
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
    fn constructed_products_divide() {
        let g = Poly::one(1) + &Poly::y(1) * &t1(int(-1));
        let q = Poly::one(1) - t1(int(-2));
        let f = &g * &q;
        assert_eq!(lp_divides(&g, &f).unwrap(), q);
    }

    #[test]
    fn unit_divisor() {
        let f = Poly::one(1) + &Poly::y(1) * &t1(int(1));
        assert_eq!(lp_divides(&Poly::one(1), &f).unwrap(), f);
    }

    #[test]
    fn no_monomial_ratio() {
        let f = Poly::one(1) + &Poly::y(1) * &t1(int(1));
        let g = Poly::one(1) + &Poly::y(1) * &t1(int(-1));
        match lp_divides(&g, &f) {
            Err(DivisionError::NotDivisible { remainder, .. }) => assert!(!remainder.is_zero()),
            other => panic!("expected failure, got {other:?}"),
        }
    }

    #[test]
    fn fractional_exponents() {
        let g = Poly::one(1) - t1(rat(-1, 2));
        let q = t1(rat(1, 3)) + Poly::y(1);
        let f = &g * &q;
        assert_eq!(lp_divides(&g, &f).unwrap(), q);
    }

    #[test]
    fn long_division_by_hand() {
        let f = t1(int(2)) - t1(int(1)).scale(&int(2)) + Poly::one(1);
        let g = Poly::one(1) - t1(int(1));
        assert_eq!(lp_divides(&g, &f).unwrap(), Poly::one(1) - t1(int(1)));
        assert!(lp_divides(&g, &Poly::one(1)).is_err());
    }

    #[test]
    fn zero_divisor_rejected() {
        assert_eq!(
            lp_divides(&Poly::zero(1), &Poly::one(1)),
            Err(DivisionError::ZeroDivisor)
        );
    }
}
