use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use super::model::{Chart, Divisor, ModelError, ResolutionModel};
use super::LocalizationError;
use crate::kalgebra::display::format_poly;
use crate::kalgebra::{lp_divides, Monomial, Weight};
use crate::{Poly, Rational};

fn check_weights(rank: usize, weights: &[Weight]) -> Result<(), LocalizationError> {
    for (i, w) in weights.iter().enumerate() {
        if w.rank() != rank {
            return Err(LocalizationError::WeightRank {
                index: i,
                found: w.rank(),
                expected: rank,
            });
        }
        if w.is_zero() {
            return Err(LocalizationError::ZeroWeight { index: i });
        }
    }
    Ok(())
}

/// `∏ (1 - t^{-w})`.
pub fn euler_class(rank: usize, weights: &[Weight]) -> Result<Poly, LocalizationError> {
    check_weights(rank, weights)?;
    Ok(weights.iter().fold(Poly::one(rank), |acc, w| {
        &acc * &(Poly::one(rank) - Poly::t(-w))
    }))
}

/// `∏ (1 + y·t^{-w})`.
pub fn lambda_y_dual(rank: usize, weights: &[Weight]) -> Poly {
    weights.iter().fold(Poly::one(rank), |acc, w| {
        &acc * &(Poly::one(rank) + &Poly::y(rank) * &Poly::t(-w))
    })
}

/// `∏_{boundary} (1+y)·t^{-w} · ∏_{other} (1 + y·t^{-w})`.
pub fn mc_open_chart(rank: usize, chart: &Chart) -> Poly {
    let one_plus_y = Poly::one(rank) + Poly::y(rank);
    chart
        .tangent_weights
        .iter()
        .enumerate()
        .fold(Poly::one(rank), |acc, (k, w)| {
            let factor = if chart.is_boundary(k) {
                &one_plus_y * &Poly::t(-w)
            } else {
                Poly::one(rank) + &Poly::y(rank) * &Poly::t(-w)
            };
            &acc * &factor
        })
}

fn weighted_sum<F: Fn(&Rational) -> Rational>(
    rank: usize,
    chart: &Chart,
    d: &Divisor,
    f: F,
) -> Weight {
    chart
        .boundary_of
        .iter()
        .fold(Weight::zero(rank), |acc, (&k, comp)| {
            let c = f(&d.get(comp));
            if c.is_zero() {
                acc
            } else {
                &acc + &chart.tangent_weights[k].scale(&c)
            }
        })
}

/// Exponent of the round-up twist `Σ ⌈c_j⌉·w_{k(j)}` at a chart.
pub fn ceil_twist(rank: usize, chart: &Chart, d: &Divisor) -> Weight {
    weighted_sum(rank, chart, d, |c| c.ceil())
}

/// `Σ c_j·w_{k(j)}` at a chart (no rounding).
pub fn divisor_weight(rank: usize, chart: &Chart, d: &Divisor) -> Weight {
    weighted_sum(rank, chart, d, |c| c.clone())
}

/// The divisor weight shared by all charts over `point`; `None` if no chart
/// lies over it.
pub fn divisor_weight_at_point(
    model: &ResolutionModel,
    d: &Divisor,
    point: &str,
) -> Result<Option<Weight>, ModelError> {
    let mut found: Option<(&Chart, Weight)> = None;
    for c in model.charts_over(point) {
        let w = divisor_weight(model.torus_rank, c, d);
        match &found {
            None => found = Some((c, w)),
            Some((first, fw)) if *fw != w => {
                return Err(ModelError::InconsistentDivisorWeight {
                    point: point.to_string(),
                    first: first.id.clone(),
                    first_weight: fw.to_string(),
                    second: c.id.clone(),
                    second_weight: w.to_string(),
                })
            }
            Some(_) => {}
        }
    }
    Ok(found.map(|(_, w)| w))
}

/// `Σ_{charts q over e} t^{ceil twist}·mC(open)|_q / eu(T_q)`, times `eu(T_e M)`.
pub fn localized_class(
    model: &ResolutionModel,
    d: &Divisor,
    e: &str,
) -> Result<Poly, LocalizationError> {
    model.validate()?;
    model.validate_divisor(d)?;
    localized_class_unchecked(model, d, e)
}

/// [`localized_class`] without model validation, for transformed models
/// whose divisor is not pulled back from the base.
pub fn localized_class_unchecked(
    model: &ResolutionModel,
    d: &Divisor,
    e: &str,
) -> Result<Poly, LocalizationError> {
    let rank = model.torus_rank;
    let point = model
        .point(e)
        .ok_or_else(|| ModelError::UnknownPoint(e.to_string()))?;
    let terms: Vec<(Poly, Vec<Weight>)> = model
        .charts_over(e)
        .map(|c| {
            let twist = Poly::t(ceil_twist(rank, c, d));
            (&twist * &mc_open_chart(rank, c), c.tangent_weights.clone())
        })
        .collect();
    lrr_sum(rank, &point.tangent_weights, &terms).map_err(|w| LocalizationError::NonPolynomial {
        point: e.to_string(),
        numerator: w.numerator,
        denominator: w.denominator,
    })
}

/// Witness for a fixed-point sum that does not simplify to a polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonPolynomialSum {
    pub numerator: String,
    pub denominator: String,
}

/// Factorization of an Euler class as `sign·t^shift·∏ (1 - t^{-k})^{n_k}` over
/// canonical directions `k` (first nonzero coordinate positive).
struct BinomialProduct {
    negative: bool,
    shift: Weight,
    factors: BTreeMap<Weight, u32>,
}

fn canonical(w: &Weight) -> (Weight, bool) {
    let first = w.coords().iter().find(|c| !c.is_zero());
    match first {
        Some(c) if c.is_negative() => (-w, true),
        _ => (w.clone(), false),
    }
}

impl BinomialProduct {
    fn of(rank: usize, weights: &[Weight]) -> Self {
        let mut out = BinomialProduct {
            negative: false,
            shift: Weight::zero(rank),
            factors: BTreeMap::new(),
        };
        for w in weights {
            let (k, flipped) = canonical(w);
            if flipped {
                // 1 - t^{k} = -t^{k}·(1 - t^{-k})
                out.negative = !out.negative;
                out.shift = &out.shift + &k;
            }
            *out.factors.entry(k).or_insert(0) += 1;
        }
        out
    }
}

fn binomial_power_product(rank: usize, factors: &BTreeMap<Weight, u32>) -> Poly {
    let mut acc = Poly::one(rank);
    for (k, &n) in factors {
        let f = Poly::one(rank) - Poly::t(-k);
        for _ in 0..n {
            acc = &acc * &f;
        }
    }
    acc
}

/// `eu(prefactor) · Σ_i num_i / eu(den_i)` as an exact Laurent polynomial.
///
/// The terms are brought over the common multiple `∏ (1 - t^{-k})^{max n_k}`,
/// shared factors with the prefactor are cancelled, and the remaining
/// quotient is computed by exact division.
pub fn lrr_sum(
    rank: usize,
    prefactor: &[Weight],
    terms: &[(Poly, Vec<Weight>)],
) -> Result<Poly, NonPolynomialSum> {
    if terms.is_empty() {
        return Ok(Poly::zero(rank));
    }
    let dens: Vec<BinomialProduct> = terms
        .iter()
        .map(|(_, w)| BinomialProduct::of(rank, w))
        .collect();
    let mut common: BTreeMap<Weight, u32> = BTreeMap::new();
    for d in &dens {
        for (k, &n) in &d.factors {
            let e = common.entry(k.clone()).or_insert(0);
            *e = (*e).max(n);
        }
    }

    let mut numerator = Poly::zero(rank);
    for ((num, _), d) in terms.iter().zip(&dens) {
        let missing: BTreeMap<Weight, u32> = common
            .iter()
            .map(|(k, &n)| (k.clone(), n - d.factors.get(k).copied().unwrap_or(0)))
            .filter(|(_, n)| *n > 0)
            .collect();
        let mut part = &binomial_power_product(rank, &missing) * num;
        part = part.mul_monomial(&Monomial::t(-&d.shift));
        if d.negative {
            part = -part;
        }
        numerator = &numerator + &part;
    }
    if numerator.is_zero() {
        return Ok(numerator);
    }

    let pre = BinomialProduct::of(rank, prefactor);
    let mut pre_left = BTreeMap::new();
    let mut den_left = common;
    for (k, &n) in &pre.factors {
        let d = den_left.get(k).copied().unwrap_or(0);
        let c = n.min(d);
        if n > c {
            pre_left.insert(k.clone(), n - c);
        }
        if d > c {
            den_left.insert(k.clone(), d - c);
        } else {
            den_left.remove(k);
        }
    }
    let mut pre_poly =
        binomial_power_product(rank, &pre_left).mul_monomial(&Monomial::t(pre.shift.clone()));
    if pre.negative {
        pre_poly = -pre_poly;
    }
    let den_poly = binomial_power_product(rank, &den_left);

    if let Ok(q) = lp_divides(&den_poly, &numerator) {
        return Ok(&pre_poly * &q);
    }
    let full = &pre_poly * &numerator;
    lp_divides(&den_poly, &full).map_err(|_| NonPolynomialSum {
        numerator: format_poly(&full),
        denominator: format_poly(&den_poly),
    })
}

/// Sum of coefficients of a class without `y`, `h`: its value at `t = 1`.
pub fn value_at_one(p: &Poly) -> Rational {
    p.terms().fold(Rational::zero(), |acc, (_, c)| acc + c)
}

/// `(1+y)^k` as a polynomial of the given rank.
pub fn one_plus_y_pow(rank: usize, k: u32) -> Poly {
    let base = Poly::one(rank) + Poly::y(rank);
    let mut acc = Poly::one(rank);
    for _ in 0..k {
        acc = &acc * &base;
    }
    acc
}
