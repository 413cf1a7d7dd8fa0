//! Seeded generators shared by the property and acceptance suites.

#![allow(dead_code)]

use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use twistmc::kalgebra::rational::{int, rat};
use twistmc::kalgebra::{Monomial, Weight};
use twistmc::library;
use twistmc::localization::{blowup_model, product_model, Divisor, ResolutionModel};
use twistmc::{Poly, Rational};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `n/d` with `d ∈ {1, 2, 3}` and `|n/d| ≤ bound`.
pub fn small_rational(rng: &mut ChaCha8Rng, bound: i64) -> Rational {
    let d = rng.random_range(1..=3);
    rat(rng.random_range(-bound * d..=bound * d), d)
}

pub fn small_weight(rng: &mut ChaCha8Rng, rank: usize, bound: i64) -> Weight {
    Weight::new((0..rank).map(|_| small_rational(rng, bound)).collect())
}

pub fn integral_weight(rng: &mut ChaCha8Rng, rank: usize, bound: i64) -> Weight {
    Weight::from_ints(
        &(0..rank)
            .map(|_| rng.random_range(-bound..=bound))
            .collect::<Vec<_>>(),
    )
}

/// Random Laurent polynomial with up to `max_terms` terms, small rational
/// exponents, nonzero integer coefficients and optional `y` powers.
pub fn random_poly(rng: &mut ChaCha8Rng, rank: usize, max_terms: usize, with_y: bool) -> Poly {
    let n = rng.random_range(1..=max_terms);
    let terms = (0..n).map(|_| {
        let mut c = rng.random_range(-4i64..=4);
        if c == 0 {
            c = 1;
        }
        let ydeg = if with_y { rng.random_range(0..=2) } else { 0 };
        (Monomial::new(small_weight(rng, rank, 2), ydeg, 0), int(c))
    });
    Poly::from_terms(rank, terms)
}

pub fn nonzero_poly(rng: &mut ChaCha8Rng, rank: usize, max_terms: usize, with_y: bool) -> Poly {
    loop {
        let p = random_poly(rng, rank, max_terms, with_y);
        if !p.is_zero() {
            return p;
        }
    }
}

/// Integral torus-only polynomial: integer exponents in `[-2, 2]`.
pub fn integral_torus_poly(rng: &mut ChaCha8Rng, rank: usize, max_terms: usize) -> Poly {
    loop {
        let n = rng.random_range(1..=max_terms);
        let terms = (0..n).map(|_| {
            (
                Monomial::t(integral_weight(rng, rank, 2)),
                int(rng.random_range(1..=3)),
            )
        });
        let p = Poly::from_terms(rank, terms);
        if !p.is_zero() {
            return p;
        }
    }
}

pub fn random_sigma(rng: &mut ChaCha8Rng, rank: usize) -> Vec<i64> {
    (0..rank).map(|_| rng.random_range(-9..=9)).collect()
}

/// Fractional multiplicity in `(-2, 2)` with denominator up to 5.
pub fn fractional(rng: &mut ChaCha8Rng) -> Rational {
    let d = rng.random_range(1..=5);
    rat(rng.random_range(-2 * d + 1..2 * d), d)
}

/// A base model with one chart per fixed point, so every divisor on its
/// components has consistent weights.
pub fn base_model(rng: &mut ChaCha8Rng) -> ResolutionModel {
    match rng.random_range(0..6) {
        0 => library::p1(),
        1 => library::p2_lines().0,
        2 => library::p2_cell("e1", int(1)).unwrap().model,
        3 => library::p1xp1_cell("00", (int(1), int(1))).unwrap().model,
        4 => library::blowup_demo(2),
        _ => library::blowup_demo(3),
    }
}

pub fn random_divisor(rng: &mut ChaCha8Rng, model: &ResolutionModel) -> Divisor {
    let mut d = Divisor::zero();
    for c in &model.components {
        d.set(&c.id, fractional(rng));
    }
    d
}

pub fn random_integral_divisor(rng: &mut ChaCha8Rng, model: &ResolutionModel) -> Divisor {
    let mut d = Divisor::zero();
    for c in &model.components {
        d.set(&c.id, int(rng.random_range(-2..=2)));
    }
    d
}

pub fn random_effective_divisor(rng: &mut ChaCha8Rng, model: &ResolutionModel) -> Divisor {
    let mut d = Divisor::zero();
    for c in &model.components {
        d.set(&c.id, int(rng.random_range(0..=4)));
    }
    d
}

/// A random blow-up center in `chart`: at least two directions, at least
/// `min_boundary` of them boundary directions.
pub fn random_center(
    rng: &mut ChaCha8Rng,
    model: &ResolutionModel,
    chart: &str,
    min_boundary: usize,
) -> Option<Vec<usize>> {
    let c = model.chart(chart)?;
    let dim = c.dim();
    let boundary: Vec<usize> = c.boundary_of.keys().copied().collect();
    if dim < 2 || boundary.len() < min_boundary {
        return None;
    }
    let mut dirs: Vec<usize> = (0..dim).collect();
    for _ in 0..32 {
        dirs.shuffle(rng);
        let size = rng.random_range(2..=dim);
        let mut s: Vec<usize> = dirs[..size].to_vec();
        s.sort_unstable();
        if s.iter().filter(|k| boundary.contains(k)).count() >= min_boundary {
            return Some(s);
        }
    }
    None
}

/// A model derived from a base by an optional blow-up and an optional
/// product factor; divisors on the base are carried over by pullback.
#[derive(Debug, Clone)]
pub struct RandomModel {
    pub base: ResolutionModel,
    pub blowup: Option<(String, Vec<usize>)>,
    pub factor: Vec<Weight>,
    pub model: ResolutionModel,
}

impl RandomModel {
    pub fn pull(&self, d: &Divisor) -> Divisor {
        match &self.blowup {
            Some((chart, center)) => blowup_model(&self.base, d, chart, center).unwrap().divisor,
            None => d.clone(),
        }
    }
}

pub fn random_model(rng: &mut ChaCha8Rng) -> RandomModel {
    let base = base_model(rng);
    let mut blowup = None;
    let mut model = base.clone();
    if rng.random_bool(0.6) {
        let charts: Vec<String> = base.charts.iter().map(|c| c.id.clone()).collect();
        let chart = charts.choose(rng).unwrap().clone();
        if let Some(center) = random_center(rng, &base, &chart, 0) {
            model = blowup_model(&base, &Divisor::zero(), &chart, &center)
                .unwrap()
                .model;
            blowup = Some((chart, center));
        }
    }
    let mut factor = Vec::new();
    if rng.random_bool(0.3) {
        let w = loop {
            let w = integral_weight(rng, base.torus_rank, 2);
            if !w.is_zero() {
                break w;
            }
        };
        factor.push(w);
        model = product_model(&model, &factor);
    }
    RandomModel {
        base,
        blowup,
        factor,
        model,
    }
}

/// Slopes used for the envelope instances.
pub fn line_slopes() -> Vec<Rational> {
    vec![rat(1, 2), rat(1, 3), rat(-2, 5), rat(7, 4)]
}

pub fn plane_slopes() -> Vec<Rational> {
    vec![rat(1, 2), rat(1, 3), rat(-2, 5), rat(7, 4)]
}

pub fn quadric_slopes() -> Vec<(Rational, Rational)> {
    vec![
        (rat(1, 2), rat(1, 3)),
        (rat(2, 5), rat(-1, 4)),
        (rat(3, 7), rat(5, 3)),
    ]
}

/// Every built-in envelope instance exercised by the suites.
pub fn envelope_examples() -> Vec<library::Example> {
    let mut out = Vec::new();
    for l in line_slopes() {
        out.push(library::p1_example(l.clone()).unwrap());
        out.push(library::p1_mirror(l));
    }
    for l in plane_slopes() {
        for cell in ["e1", "e2", "e3"] {
            out.push(library::p2_cell(cell, l.clone()).unwrap());
        }
    }
    for ab in quadric_slopes() {
        for corner in ["00", "i0", "0i", "ii"] {
            out.push(library::p1xp1_cell(corner, ab.clone()).unwrap());
        }
    }
    out
}

/// `∏ (1 - qⁿx)(1 - qⁿ/x)` in floating point, to convergence.
pub fn theta_product_float(x: f64, q: f64) -> f64 {
    let mut v = 1.0;
    let mut qn = q;
    while qn * x.abs().max(1.0 / x.abs()) > 1e-18 {
        v *= (1.0 - qn * x) * (1.0 - qn / x);
        qn *= q;
    }
    v
}

/// `θ'(1) = ∏ (1 - qⁿ)²`.
pub fn theta_prime_float(q: f64) -> f64 {
    theta_product_float(1.0, q)
}

/// `θ'(1)·θ(xy) / (θ(x)·θ(y))` in floating point. The half-power prefactors
/// combine to `(xy - 1) / ((x - 1)(y - 1))`, valid for either sign of `x`.
pub fn delta_float(x: f64, y: f64, q: f64) -> f64 {
    theta_prime_float(q) * (x * y - 1.0) / ((x - 1.0) * (y - 1.0)) * theta_product_float(x * y, q)
        / (theta_product_float(x, q) * theta_product_float(y, q))
}
