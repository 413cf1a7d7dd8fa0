use std::collections::BTreeMap;

use num_traits::{One, Signed, ToPrimitive, Zero};

use super::series::{theta_at, theta_prime_at_one, theta_product_at, xpow, QSeries};
use crate::kalgebra::rational::format_rational;
use crate::kalgebra::{Monomial, Weight};
use crate::{Poly, RatFn, Rational};

/// `δ(x, y)` truncated after `q^order`: the exact rational function at `q^0`
/// and Laurent polynomials in `x, y` above it.
#[derive(Debug, Clone, PartialEq)]
pub struct DeltaSeries {
    order: usize,
    leading: RatFn,
    /// Zero at `q^0`.
    tail: QSeries,
}

/// `(1 - (xy)^{-1}) / ((1 - x^{-1})(1 - y^{-1}))`.
pub fn delta_leading() -> RatFn {
    let one = Poly::one(2);
    RatFn::new(
        &one - &xpow(&[-1, -1]),
        &(&one - &xpow(&[-1, 0])) * &(&one - &xpow(&[0, -1])),
    )
    .expect("nonzero denominator")
}

/// `Σ_{k | n} (x^{-k} y^{-n/k} - x^k y^{n/k})`.
pub fn delta_coefficient(n: usize) -> Poly {
    let mut p = Poly::zero(2);
    for k in 1..=n as i64 {
        if n as i64 % k == 0 {
            let m = n as i64 / k;
            p = &(&p + &xpow(&[-k, -m])) - &xpow(&[k, m]);
        }
    }
    p
}

pub fn delta_series(order: usize) -> DeltaSeries {
    let coeffs = (0..=order)
        .map(|n| {
            if n == 0 {
                Poly::zero(2)
            } else {
                delta_coefficient(n)
            }
        })
        .collect();
    DeltaSeries {
        order,
        leading: delta_leading(),
        tail: QSeries::from_coeffs(order, 2, coeffs),
    }
}

impl DeltaSeries {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn leading(&self) -> &RatFn {
        &self.leading
    }

    pub fn tail(&self) -> &QSeries {
        &self.tail
    }

    /// Coefficient of `q^n` for `1 ≤ n ≤ order`.
    pub fn coefficient(&self, n: usize) -> Option<&Poly> {
        if n == 0 {
            None
        } else {
            self.tail.coeff(n)
        }
    }

    /// Replaces the coefficient of `q^n`, `n ≥ 1`.
    pub fn set_coefficient(&mut self, n: usize, p: Poly) {
        assert!(n >= 1, "the q^0 term is the fixed rational function");
        self.tail.set_coeff(n, p);
    }

    pub fn truncate(&self, order: usize) -> Self {
        DeltaSeries {
            order,
            leading: self.leading.clone(),
            tail: self.tail.truncate(order),
        }
    }

    fn map_vars<F: Fn(&Poly) -> Poly>(&self, f: F) -> Self {
        DeltaSeries {
            order: self.order,
            leading: self
                .leading
                .map_polys(&f)
                .expect("substitution keeps ranks"),
            tail: self.tail.map_coeffs(&f),
        }
    }

    /// `δ(y, x)`.
    pub fn swapped(&self) -> Self {
        self.map_vars(|p| p.permute_coords(&[1, 0]))
    }

    /// `δ(x^{-1}, y^{-1})`.
    pub fn inverted(&self) -> Self {
        self.map_vars(Poly::invert_torus)
    }

    /// Numeric value of the truncated series.
    pub fn eval(&self, x: f64, y: f64, q: f64) -> f64 {
        self.leading.eval(&[x, y], 1.0, 1.0) + self.tail.eval(&[x, y], q)
    }
}

impl std::ops::Neg for &DeltaSeries {
    type Output = DeltaSeries;
    fn neg(self) -> DeltaSeries {
        DeltaSeries {
            order: self.order,
            leading: -&self.leading,
            tail: -&self.tail,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct DeltaIdentities {
    pub symmetry: bool,
    pub antisymmetry: bool,
    pub periodicity: bool,
    /// Number of `(q-degree, monomial)` pairs compared for periodicity.
    pub periodicity_terms: usize,
}

impl DeltaIdentities {
    pub fn pass(&self) -> bool {
        self.symmetry && self.antisymmetry && self.periodicity && self.periodicity_terms > 0
    }
}

fn add_at(map: &mut BTreeMap<i64, Poly>, d: i64, p: Poly) {
    let slot = map.entry(d).or_insert_with(|| Poly::zero(2));
    *slot = &*slot + &p;
}

fn ydeg(m: &Monomial) -> i64 {
    m.exponent.coords()[1]
        .to_integer()
        .to_i64()
        .expect("small exponent")
}

/// `δ(x, q^{-1}y) = x·δ(x, y)`, both sides multiplied by
/// `(1 - x^{-1})(1 - y^{-1})`.
///
/// After the substitution a term `qⁿ yᵐ` sits at degree `n - m`, and the
/// leading part becomes `(1 - y^{-1})(1 - q x^{-1}y^{-1}) Σ_j q^j y^{-j}`.
/// The coefficient of `q^d yᵐ` on the left involves original degrees
/// `d+m` and `d+m+1`, so only pairs with `d ≤ N` and `d+m+1 ≤ N` are
/// compared.
fn periodicity(delta: &DeltaSeries) -> (bool, usize) {
    let n_max = delta.order as i64;
    let one = Poly::one(2);
    let fx = &one - &xpow(&[-1, 0]);
    let fy = &one - &xpow(&[0, -1]);
    let f = &fx * &fy;
    let mut lhs: BTreeMap<i64, Poly> = BTreeMap::new();
    let mut rhs: BTreeMap<i64, Poly> = BTreeMap::new();
    for j in 0..=n_max + 1 {
        add_at(&mut lhs, j, &fy * &xpow(&[0, -j]));
        add_at(&mut lhs, j + 1, -&(&fy * &xpow(&[-1, -1 - j])));
    }
    add_at(&mut rhs, 0, &xpow(&[1, 0]) - &xpow(&[0, -1]));
    for n in 1..=delta.order {
        let c = delta.tail.coeff(n).expect("within order");
        for (m, k) in c.terms() {
            let term = Poly::term(m.clone(), k.clone());
            add_at(&mut lhs, n as i64 - ydeg(m), &f * &term);
        }
        add_at(&mut rhs, n as i64, &(&xpow(&[1, 0]) * &f) * c);
    }
    let mut compared = 0;
    for d in 0..=n_max {
        let zero = Poly::zero(2);
        let l = lhs.get(&d).unwrap_or(&zero);
        let r = rhs.get(&d).unwrap_or(&zero);
        let keys: std::collections::BTreeSet<&Monomial> =
            l.terms().chain(r.terms()).map(|(m, _)| m).collect();
        for m in keys {
            if d + ydeg(m) + 1 > n_max {
                continue;
            }
            compared += 1;
            if l.coeff(m) != r.coeff(m) {
                return (false, compared);
            }
        }
    }
    (true, compared)
}

/// Symmetry, antisymmetry under inversion, and quasi-periodicity in `y`.
pub fn check_delta_identities(delta: &DeltaSeries) -> DeltaIdentities {
    let (periodicity, periodicity_terms) = periodicity(delta);
    DeltaIdentities {
        symmetry: delta.swapped() == *delta,
        antisymmetry: delta.inverted() == -delta,
        periodicity,
        periodicity_terms,
    }
}

/// `δ(x,y)·θ(x)·θ(y) = θ'(1)·θ(xy)` to the order of `delta`. The `q^0` part
/// is cleared exactly: `δ₀·(x^{1/2} - x^{-1/2})(y^{1/2} - y^{-1/2})` is a
/// Laurent polynomial.
pub fn check_delta_theta_relation(delta: &DeltaSeries) -> bool {
    let n = delta.order;
    let half = Rational::new(1.into(), 2.into());
    let wx = Weight::from_ints(&[1, 0]);
    let wy = Weight::from_ints(&[0, 1]);
    let sx = Poly::t(wx.scale(&half)) - Poly::t(wx.scale(&-&half));
    let sy = Poly::t(wy.scale(&half)) - Poly::t(wy.scale(&-&half));
    let cleared = match (&delta.leading * &RatFn::from(&sx * &sy)).to_polynomial() {
        Ok(p) => p,
        Err(_) => return false,
    };
    let lhs = &(&(&QSeries::constant(n, cleared) * &theta_product_at(n, &wx))
        * &theta_product_at(n, &wy))
        + &(&(&delta.tail * &theta_at(n, &wx)) * &theta_at(n, &wy));
    let rhs = &QSeries::from_scalars(n, 2, &theta_prime_at_one(n))
        * &theta_at(n, &Weight::from_ints(&[1, 1]));
    lhs == rhs
}

fn power(name: &str, e: &Rational) -> Option<String> {
    if e.is_zero() {
        None
    } else if e.is_one() {
        Some(name.to_string())
    } else if e.is_integer() && e.is_positive() {
        Some(format!("{name}^{}", e.numer()))
    } else {
        Some(format!("{name}^{{{}}}", format_rational(e)))
    }
}

/// Coefficient text in `x, y`, e.g. `x^{-1}y^{-1} − x y`: terms in
/// increasing exponent order, a space between factors unless the previous
/// one closes a brace.
pub fn format_xy(p: &Poly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let names = ["x", "y"];
    let mut out = String::new();
    for (i, (m, c)) in p.terms().enumerate() {
        let mut body = String::new();
        for (name, e) in names.iter().zip(m.exponent.coords()) {
            if let Some(f) = power(name, e) {
                if !body.is_empty() && !body.ends_with('}') {
                    body.push(' ');
                }
                body.push_str(&f);
            }
        }
        let mag = c.abs();
        let text = match (mag.is_one(), body.is_empty()) {
            (true, false) => body,
            (_, true) => format_rational(&mag),
            (false, false) => format!("{} {body}", format_rational(&mag)),
        };
        let sep = match (i, c.is_negative()) {
            (0, false) => "",
            (0, true) => "−",
            (_, false) => " + ",
            (_, true) => " − ",
        };
        out.push_str(sep);
        out.push_str(&text);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kalgebra::rational::int;

    #[test]
    fn low_coefficients() {
        let d = delta_series(3);
        let q1 = &xpow(&[-1, -1]) - &xpow(&[1, 1]);
        assert_eq!(d.coefficient(1), Some(&q1));
        assert_eq!(format_xy(&q1), "x^{-1}y^{-1} − x y");
        let q2 = &(&(&xpow(&[-1, -2]) + &xpow(&[-2, -1])) - &xpow(&[1, 2])) - &xpow(&[2, 1]);
        assert_eq!(d.coefficient(2), Some(&q2));
        assert!(d.coefficient(0).is_none());
    }

    #[test]
    fn leading_identity() {
        let one = Poly::one(2);
        let f = &(&one - &xpow(&[-1, 0])) * &(&one - &xpow(&[0, -1]));
        let cleared = (&delta_leading() * &RatFn::from(f))
            .to_polynomial()
            .unwrap();
        assert_eq!(cleared, &one - &xpow(&[-1, -1]));
    }

    #[test]
    fn identities_hold() {
        for n in [1, 4, 8] {
            let r = check_delta_identities(&delta_series(n));
            assert!(r.pass(), "N={n}: {r:?}");
        }
        assert!(check_delta_theta_relation(&delta_series(1)));
        assert!(check_delta_theta_relation(&delta_series(4)));
    }

    #[test]
    fn corruption_is_detected() {
        let mut d = delta_series(8);
        let bumped = &d.coefficient(3).unwrap().clone() + &xpow(&[1, 1]);
        d.set_coefficient(3, bumped);
        assert!(!check_delta_identities(&d).pass());
        assert!(!check_delta_theta_relation(&d));
        // A symmetric, antisymmetric corruption is still caught by periodicity.
        let mut d = delta_series(8);
        let c = &d.coefficient(3).unwrap().clone()
            + &(&xpow(&[-2, -2]) - &xpow(&[2, 2])).scale(&int(1));
        d.set_coefficient(3, c);
        let r = check_delta_identities(&d);
        assert!(r.symmetry && r.antisymmetry && !r.periodicity);
    }

    #[test]
    fn truncation_coherence() {
        let big = delta_series(10);
        for k in 1..=10 {
            assert_eq!(big.truncate(k), delta_series(k));
        }
    }

    #[test]
    fn formatting() {
        assert_eq!(format_xy(&Poly::zero(2)), "0");
        assert_eq!(format_xy(&(&xpow(&[2, 1]) + &xpow(&[0, 0]))), "1 + x^2 y");
    }
}
