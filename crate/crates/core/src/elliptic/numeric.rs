//! Numeric evaluation of the `q → 0` limits. Convention: the elliptic `h`
//! is tied to the motivic `y` by `h = -1/y`.

use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use super::delta::{delta_series, DeltaSeries};
use super::EllipticError;
use crate::kalgebra::rational::{floor, to_f64};
use crate::library;
use crate::localization::{localized_class, Divisor};
use crate::Rational;

/// Truncation order used for the numeric protocols.
pub const NUMERIC_ORDER: usize = 12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LimitRow {
    pub q: f64,
    pub value: f64,
    pub error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LimitTable {
    pub label: String,
    pub target: f64,
    pub rows: Vec<LimitRow>,
}

impl LimitTable {
    pub fn errors(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.error).collect()
    }

    pub fn strictly_decreasing(&self) -> bool {
        self.rows.windows(2).all(|w| w[1].error < w[0].error)
    }

    pub fn final_error(&self) -> Option<f64> {
        self.rows.last().map(|r| r.error)
    }
}

fn check_qs(qs: &[f64]) -> Result<(), EllipticError> {
    if qs.is_empty() {
        return Err(EllipticError::EmptyQList);
    }
    for w in qs.windows(2) {
        if w[1] >= w[0] {
            return Err(EllipticError::QNotDecreasing);
        }
    }
    if let Some(&q) = qs.iter().find(|&&q| !(q > 0.0 && q < 1.0)) {
        return Err(EllipticError::QOutOfRange(q));
    }
    Ok(())
}

/// `δ(x, q^{-d}) = x^{⌊d⌋} δ(x, q^{-{d}})`, evaluated on the reduced side.
pub fn reduced_delta_value(delta: &DeltaSeries, x: f64, d: &Rational, q: f64) -> f64 {
    let whole = floor(d);
    let frac = to_f64(&(d - &whole));
    let k = whole.to_integer().to_i32().expect("small shift");
    x.powi(k) * delta.eval(x, q.powf(-frac), q)
}

/// Errors of `δ(x₀, q^{-d})` against `x₀^{⌊d⌋} / (1 - x₀^{-1})`.
pub fn delta_numeric_limit(
    d: &Rational,
    x0: f64,
    qs: &[f64],
    order: usize,
) -> Result<LimitTable, EllipticError> {
    if d.is_integer() {
        return Err(EllipticError::IntegralShift(d.to_string()));
    }
    if !x0.is_finite() || x0.abs() == 1.0 || x0 == 0.0 {
        return Err(EllipticError::BadPoint(x0));
    }
    check_qs(qs)?;
    let delta = delta_series(order);
    let k = floor(d).to_integer().to_i32().expect("small shift");
    let target = x0.powi(k) / (1.0 - 1.0 / x0);
    let rows = qs
        .iter()
        .map(|&q| {
            let value = reduced_delta_value(&delta, x0, d, q);
            LimitRow {
                q,
                value,
                error: (value - target).abs(),
            }
        })
        .collect();
    Ok(LimitTable {
        label: format!("d={d}, x={x0}"),
        target,
        rows,
    })
}

/// Elliptic restrictions on `ℙ¹` with `Δ = λ·{0}` against the localized
/// twisted classes at `(t₀, y₀)`:
/// at `0`, `(1+y)(1 - t^{-1})·δ(t, q^{-λ})`; at `∞`, `(1+y)(1 - t)·δ(t^{-1}, h)`
/// with `h = -1/y`.
pub fn elliptic_vs_mc_numeric(
    lambda: &Rational,
    t0: f64,
    y0: f64,
    qs: &[f64],
    order: usize,
) -> Result<Vec<LimitTable>, EllipticError> {
    if lambda.is_integer() {
        return Err(EllipticError::IntegralShift(lambda.to_string()));
    }
    if !t0.is_finite() || t0 <= 0.0 || t0 == 1.0 {
        return Err(EllipticError::BadPoint(t0));
    }
    if !y0.is_finite() || y0.is_zero() || y0 == -1.0 {
        return Err(EllipticError::BadPoint(y0));
    }
    check_qs(qs)?;
    let model = library::p1();
    let d = Divisor::single("D0", lambda.clone());
    let delta = delta_series(order);
    let h = -1.0 / y0;
    let mut tables = Vec::new();
    for point in ["0", "inf"] {
        let class =
            localized_class(&model, &d, point).map_err(|e| EllipticError::Class(e.to_string()))?;
        let target = class.eval(&[t0], y0, 1.0);
        let rows = qs
            .iter()
            .map(|&q| {
                let value = if point == "0" {
                    (1.0 + y0) * (1.0 - 1.0 / t0) * reduced_delta_value(&delta, t0, lambda, q)
                } else {
                    (1.0 + y0) * (1.0 - t0) * delta.eval(1.0 / t0, h, q)
                };
                LimitRow {
                    q,
                    value,
                    error: (value - target).abs(),
                }
            })
            .collect();
        tables.push(LimitTable {
            label: format!("λ={lambda}, point {point}"),
            target,
            rows,
        });
    }
    Ok(tables)
}
