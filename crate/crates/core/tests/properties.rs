mod common;

use proptest::prelude::*;
use rand::Rng;

use common::*;
use twistmc::elliptic::delta_series;
use twistmc::envelope::{
    newton_inclusion_check, normalization_check, rho_rescale, stable_normalization_target,
};
use twistmc::kalgebra::lp_divides;
use twistmc::kalgebra::rational::{ceil, int, rat};
use twistmc::localization::{
    blowup_model, divisor_weight_at_point, lambda_y_dual, localized_class, product_model,
    pushforward_invariance_check, Divisor, ModelDocument,
};
use twistmc::polytope::{contains_via_sigma_limits, NewtonPolytope};
use twistmc::{Poly, Rational};

/// Random cocharacters per containment case; thin violation cones near a
/// facet need a few thousand samples.
const ORACLE_TRIALS: usize = 4000;

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

proptest! {
    #![proptest_config(config(200))]

    #[test]
    fn restriction_is_a_ring_homomorphism(seed in any::<u64>()) {
        let mut r = rng(seed);
        let rank = r.random_range(1..=3);
        let a = random_poly(&mut r, rank, 4, true);
        let b = random_poly(&mut r, rank, 4, true);
        let s = random_sigma(&mut r, rank);
        prop_assert_eq!((&a * &b).restrict_sigma(&s), &a.restrict_sigma(&s) * &b.restrict_sigma(&s));
        prop_assert_eq!((&a + &b).restrict_sigma(&s), &a.restrict_sigma(&s) + &b.restrict_sigma(&s));
        prop_assert_eq!(Poly::one(rank).restrict_sigma(&s), Poly::one(1));
    }

    #[test]
    fn restriction_matches_numeric_substitution(seed in any::<u64>()) {
        let mut r = rng(seed);
        let rank = r.random_range(1..=3);
        let a = random_poly(&mut r, rank, 4, true);
        let s = random_sigma(&mut r, rank);
        let z: f64 = r.random_range(0.5..2.0);
        let y: f64 = r.random_range(-1.5..1.5);
        let point: Vec<f64> = s.iter().map(|&k| z.powi(k as i32)).collect();
        let direct = a.eval(&point, y, 1.0);
        let restricted = a.restrict_sigma(&s).eval(&[z], y, 1.0);
        prop_assert!((direct - restricted).abs() <= 1e-9 * (1.0 + direct.abs()));
    }

    #[test]
    fn division_round_trip(seed in any::<u64>()) {
        let mut r = rng(seed);
        let rank = r.random_range(1..=3);
        let g = nonzero_poly(&mut r, rank, 3, true);
        let f = random_poly(&mut r, rank, 4, true);
        let q = lp_divides(&g, &(&g * &f)).expect("a product is divisible by its factor");
        prop_assert_eq!(q, f);
    }

    #[test]
    fn containment_agrees_with_sigma_limits(seed in any::<u64>()) {
        let mut r = rng(seed);
        let rank = r.random_range(1..=3);
        let b = integral_torus_poly(&mut r, rank, 4);
        let a = random_poly(&mut r, rank, 3, true);
        let exact = NewtonPolytope::newton(&b).unwrap()
            .contains(&NewtonPolytope::newton(&a).unwrap()).unwrap().holds;
        let oracle = contains_via_sigma_limits(&a, &b, ORACLE_TRIALS, &mut r);
        prop_assert_eq!(exact, oracle);
    }
}

proptest! {
    #![proptest_config(config(50))]

    #[test]
    fn small_effective_deformation_keeps_the_class(seed in any::<u64>()) {
        let mut r = rng(seed);
        let rm = random_model(&mut r);
        let d = rm.pull(&random_divisor(&mut r, &rm.base));
        let d2 = rm.pull(&random_effective_divisor(&mut r, &rm.base));
        // 1/10007 is below every fractional gap of multiplicities with
        // denominators at most 5 and of coefficients at most 8.
        let eps = rat(1, 10007);
        for (comp, c) in &d2.multiplicities {
            let before = d.get(comp);
            prop_assert_eq!(ceil(&(&before - &eps * c)), ceil(&before));
        }
        let moved = d.add(&d2.scale(&-eps));
        for p in &rm.model.ambient_points {
            prop_assert_eq!(
                localized_class(&rm.model, &moved, &p.id).unwrap(),
                localized_class(&rm.model, &d, &p.id).unwrap()
            );
        }
    }

    #[test]
    fn integral_twist_is_a_monomial_shift(seed in any::<u64>()) {
        let mut r = rng(seed);
        let rm = random_model(&mut r);
        let d1 = rm.pull(&random_integral_divisor(&mut r, &rm.base));
        let d2 = rm.pull(&random_divisor(&mut r, &rm.base));
        for p in &rm.model.ambient_points {
            let lhs = localized_class(&rm.model, &d1.add(&d2), &p.id).unwrap();
            let base = localized_class(&rm.model, &d2, &p.id).unwrap();
            match divisor_weight_at_point(&rm.model, &d1, &p.id).unwrap() {
                Some(w) => prop_assert_eq!(lhs, base.shift(&w)),
                None => prop_assert!(lhs.is_zero() && base.is_zero()),
            }
        }
    }

    #[test]
    fn blowup_twists_below_the_boundary_count_are_invisible(seed in any::<u64>()) {
        let mut r = rng(seed);
        let rm = random_model(&mut r);
        let d = rm.pull(&random_divisor(&mut r, &rm.base));
        let charts: Vec<String> = rm.model.charts.iter().map(|c| c.id.clone()).collect();
        let chart = charts[r.random_range(0..charts.len())].clone();
        if let Some(center) = random_center(&mut r, &rm.model, &chart, 1) {
            let c = rm.model.chart(&chart).unwrap();
            let k = center.iter().filter(|j| c.is_boundary(**j)).count();
            prop_assume!(k <= 3);
            // Parallel weights in the center leave a non-isolated fixed locus.
            prop_assume!(blowup_model(&rm.model, &d, &chart, &center).is_ok());
            for s in 0..k as u32 {
                let rep = pushforward_invariance_check(&rm.model, &d, &chart, &center, s).unwrap();
                prop_assert!(rep.invariant, "chart {} center {:?} s={}", chart, center, s);
            }
        }
    }

    #[test]
    fn product_multiplies_by_lambda_y(seed in any::<u64>()) {
        let mut r = rng(seed);
        let base = base_model(&mut r);
        let d = random_divisor(&mut r, &base);
        let factor = vec![integral_weight(&mut r, base.torus_rank, 2)];
        prop_assume!(!factor[0].is_zero());
        let pm = product_model(&base, &factor);
        for p in &base.ambient_points {
            prop_assert_eq!(
                localized_class(&pm, &d, &p.id).unwrap(),
                &lambda_y_dual(base.torus_rank, &factor) * &localized_class(&base, &d, &p.id).unwrap()
            );
        }
    }

    #[test]
    fn newton_verdict_survives_integral_shifts(seed in any::<u64>()) {
        let mut r = rng(seed);
        let examples = envelope_examples();
        let ex = &examples[r.random_range(0..examples.len())];
        let shift = random_integral_divisor(&mut r, &ex.model);
        let shifted = ex.divisor.add(&shift);
        for p in &ex.model.ambient_points {
            if p.id == ex.model.center || !ex.order.leq(&p.id, &ex.model.center) {
                continue;
            }
            let a = newton_inclusion_check(&ex.model, &ex.divisor, None, &p.id, &ex.model.center).unwrap();
            let b = newton_inclusion_check(&ex.model, &shifted, None, &p.id, &ex.model.center).unwrap();
            prop_assert_eq!(a.pass, b.pass);
            prop_assert_eq!(a.strict, b.strict);
        }
    }

    #[test]
    fn normalization_forms_agree(seed in any::<u64>()) {
        let mut r = rng(seed);
        let examples = envelope_examples();
        let ex = &examples[r.random_range(0..examples.len())];
        let v = normalization_check(&ex.model, &ex.divisor, &ex.chamber).unwrap();
        prop_assert!(v.pass);
        prop_assert_eq!(
            rho_rescale(&v.class, v.dplus as i32),
            stable_normalization_target(&ex.model, &ex.model.center, &ex.chamber).unwrap()
        );
    }

    #[test]
    fn model_files_round_trip(seed in any::<u64>()) {
        let mut r = rng(seed);
        let rm = random_model(&mut r);
        let d = rm.pull(&random_divisor(&mut r, &rm.base));
        let doc = ModelDocument::new(rm.model.clone(), d);
        let text = doc.to_json();
        let back = ModelDocument::from_json(&text).unwrap();
        prop_assert_eq!(back.to_json(), text);
        prop_assert_eq!(back, doc);
    }

    #[test]
    fn delta_matches_the_theta_quotient(seed in any::<u64>()) {
        let mut r = rng(seed);
        let delta = delta_series(10);
        let x: f64 = r.random_range(1.2..3.0) * if r.random_bool(0.5) { 1.0 } else { -1.0 };
        let y: f64 = r.random_range(1.2..3.0);
        let q: f64 = r.random_range(1e-4..1e-2);
        let series = delta.eval(x, y, q);
        let exact = delta_float(x, y, q);
        prop_assert!(((series - exact) / exact).abs() < 1e-8, "x={} y={} q={}: {} vs {}", x, y, q, series, exact);
    }
}

#[test]
fn line_newton_strictness_tracks_integrality() {
    for l in [
        rat(1, 2),
        rat(1, 3),
        rat(-2, 5),
        rat(7, 4),
        int(0),
        int(2),
        int(-3),
    ] {
        let ex = twistmc::library::p1_mirror(l.clone());
        let v =
            newton_inclusion_check(&ex.model, &ex.divisor, ex.slope.as_ref(), "inf", "0").unwrap();
        assert!(v.pass);
        assert_eq!(v.strict, Some(!l.is_integer()), "λ={l}");
    }
}

#[test]
fn slope_map_depends_only_on_slope_data() {
    let ex = twistmc::library::p2_cell("e2", rat(2, 5)).unwrap();
    let s = ex.slope.clone().unwrap();
    let d1 = twistmc::envelope::divisor_from_slope(&ex.model, &s).unwrap();
    assert_eq!(d1, ex.divisor);
    let zero: Rational = int(0);
    assert_eq!(Divisor::zero().get("P"), zero);
}
