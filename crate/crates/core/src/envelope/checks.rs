use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::order::{split_tangent, Chamber, PartialOrder};
use super::{EnvelopeError, Slope};
use crate::kalgebra::{lp_divides, DivisionError, Monomial, Weight};
use crate::localization::{
    divisor_weight_at_point, euler_class, lambda_y_dual, localized_class, Divisor, ModelError,
    ResolutionModel,
};
use crate::polytope::simplex::{solve, LpOutcome};
use crate::polytope::{NewtonPolytope, Violation};
use crate::{Poly, Rational};

fn point<'a>(
    model: &'a ResolutionModel,
    e: &str,
) -> Result<&'a crate::localization::AmbientFixedPoint, EnvelopeError> {
    model
        .point(e)
        .ok_or_else(|| ModelError::UnknownPoint(e.to_string()).into())
}

/// `y ↦ -h`, then multiplication by `h^{-dplus}`.
pub fn rho_rescale(a: &Poly, dplus: i32) -> Poly {
    a.map_monomials(a.rank(), |m, c| {
        let c = if m.ydeg % 2 == 0 {
            c.clone()
        } else {
            -c.clone()
        };
        (
            Monomial::new(m.exponent.clone(), 0, m.hdeg + m.ydeg - dplus),
            c,
        )
    })
}

/// `(-1)^{dim T⁺} · eu(T⁻ ⊕ h⊗(T⁺)*) / det T⁺` at `e₀`.
pub fn stable_normalization_target(
    model: &ResolutionModel,
    e0: &str,
    chamber: &Chamber,
) -> Result<Poly, EnvelopeError> {
    let rank = model.torus_rank;
    let (plus, minus) = split_tangent(point(model, e0)?, chamber)?;
    let mut target = euler_class(rank, &minus)?;
    let mut det = Weight::zero(rank);
    for w in &plus {
        // eu(h·t^{-w}) = 1 - h^{-1} t^{w}
        let factor = Poly::one(rank)
            - Poly::term(
                Monomial::new(w.clone(), 0, -1),
                Rational::from_integer(1.into()),
            );
        target = &target * &factor;
        det = &det + w;
    }
    target = target.shift(&-&det);
    if plus.len() % 2 == 1 {
        target = -target;
    }
    Ok(target)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizationVerdict {
    pub pass: bool,
    pub class: Poly,
    /// `eu(T⁻)·λ_y(T⁺*)`.
    pub expected: Poly,
    pub dplus: usize,
    pub rescaled: Poly,
    pub target: Poly,
}

/// Class at the center against `eu(T⁻)·λ_y((T⁺)*)`, and its `ρ`-rescaling
/// against the stable normalization target.
pub fn normalization_check(
    model: &ResolutionModel,
    d: &Divisor,
    chamber: &Chamber,
) -> Result<NormalizationVerdict, EnvelopeError> {
    let rank = model.torus_rank;
    let e0 = &model.center;
    for c in model.charts_over(e0) {
        for comp in c.boundary_of.values() {
            if !d.get(comp).is_zero() {
                return Err(EnvelopeError::DivisorTouchesCenter {
                    chart: c.id.clone(),
                    component: comp.clone(),
                });
            }
        }
    }
    let (plus, minus) = split_tangent(point(model, e0)?, chamber)?;
    let class = localized_class(model, d, e0)?;
    let expected = &euler_class(rank, &minus)? * &lambda_y_dual(rank, &plus);
    let dplus = plus.len();
    let rescaled = rho_rescale(&class, dplus as i32);
    let target = stable_normalization_target(model, e0, chamber)?;
    Ok(NormalizationVerdict {
        pass: class == expected && rescaled == target,
        class,
        expected,
        dplus,
        rescaled,
        target,
    })
}

/// `w_e(Δ) = (w_e(L) - w_{e₀}(L)) / n` for every point with a slope weight.
pub fn slope_divisor_weights(
    slope: &Slope,
    e0: &str,
) -> Result<BTreeMap<String, Weight>, EnvelopeError> {
    let base = slope
        .weights
        .get(e0)
        .ok_or_else(|| EnvelopeError::SlopeMissingPoint(e0.to_string()))?;
    let inv_n = Rational::new(BigInt::from(1), BigInt::from(slope.n));
    Ok(slope
        .weights
        .iter()
        .map(|(k, w)| (k.clone(), (w - base).scale(&inv_n)))
        .collect())
}

/// A divisor on the boundary components whose chart weights match the slope,
/// found as a vertex of the exact feasibility LP. Components that the weight
/// equations do not see get multiplicity zero.
pub fn divisor_from_slope(
    model: &ResolutionModel,
    slope: &Slope,
) -> Result<Divisor, EnvelopeError> {
    let targets = slope_divisor_weights(slope, &model.center)?;
    let comps: Vec<&str> = model.components.iter().map(|c| c.id.as_str()).collect();
    let ncols = 2 * comps.len();
    let mut a: Vec<Vec<Rational>> = Vec::new();
    let mut b: Vec<Rational> = Vec::new();
    for c in &model.charts {
        let target = targets
            .get(&c.image_point)
            .ok_or_else(|| EnvelopeError::SlopeMissingPoint(c.image_point.clone()))?;
        for coord in 0..model.torus_rank {
            let mut row = vec![Rational::zero(); ncols];
            for (&k, comp) in &c.boundary_of {
                let j = comps
                    .iter()
                    .position(|x| x == comp)
                    .expect("validated component");
                let v = c.tangent_weights[k].coords()[coord].clone();
                row[2 * j] = row[2 * j].clone() + v.clone();
                row[2 * j + 1] = row[2 * j + 1].clone() - v;
            }
            a.push(row);
            b.push(target.coords()[coord].clone());
        }
    }
    if a.is_empty() {
        return Ok(Divisor::zero());
    }
    match solve(&a, &b, &vec![Rational::zero(); ncols]) {
        LpOutcome::Optimal { x, .. } => {
            let mut d = Divisor::zero();
            for (j, comp) in comps.iter().enumerate() {
                d.set(comp, x[2 * j].clone() - x[2 * j + 1].clone());
            }
            Ok(d)
        }
        _ => Err(EnvelopeError::SlopeNotRealizable),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonVerdict {
    pub pass: bool,
    /// Relative-interior containment; `None` for the zero class.
    pub strict: Option<bool>,
    /// `w_e(Δ)` subtracted from the class polytope.
    pub shift: Weight,
    pub witness: Option<Violation>,
    pub class: Poly,
}

/// `Ne(class|_e) - w_e(Δ) ⊆ Ne(eu(T_e M))`, with `w_e(Δ)` from the slope
/// cross-checked against the divisor's chart weights.
pub fn newton_inclusion_check(
    model: &ResolutionModel,
    d: &Divisor,
    slope: Option<&Slope>,
    e: &str,
    e0: &str,
) -> Result<NewtonVerdict, EnvelopeError> {
    let rank = model.torus_rank;
    let p = point(model, e)?;
    let class = localized_class(model, d, e)?;
    let from_divisor = divisor_weight_at_point(model, d, e)?;
    let from_slope = match slope {
        Some(s) => Some(
            slope_divisor_weights(s, e0)?
                .remove(e)
                .ok_or_else(|| EnvelopeError::SlopeMissingPoint(e.to_string()))?,
        ),
        None => None,
    };
    if let (Some(ws), Some(wd)) = (&from_slope, &from_divisor) {
        if ws != wd {
            return Err(EnvelopeError::SlopeMismatch {
                point: e.to_string(),
                slope_weight: ws.to_string(),
                divisor_weight: wd.to_string(),
            });
        }
    }
    let shift = from_slope
        .or(from_divisor)
        .unwrap_or_else(|| Weight::zero(rank));
    let eu = euler_class(rank, &p.tangent_weights)?;
    newton_inclusion_for_class(&eu, class, shift)
}

/// `Ne(class) - shift ⊆ Ne(eu)` for an explicitly given class.
pub fn newton_inclusion_for_class(
    eu: &Poly,
    class: Poly,
    shift: Weight,
) -> Result<NewtonVerdict, EnvelopeError> {
    if class.is_zero() {
        return Ok(NewtonVerdict {
            pass: true,
            strict: None,
            shift,
            witness: None,
            class,
        });
    }
    let hull = NewtonPolytope::newton(eu)?;
    let moved = NewtonPolytope::newton(&class)?.translate(&-&shift);
    let containment = hull.contains(&moved)?;
    let strict = hull.contains_strictly(&moved)?;
    Ok(NewtonVerdict {
        pass: containment.holds,
        strict: Some(strict),
        shift,
        witness: containment.violation,
        class,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportVerdict {
    pub pass: bool,
    pub checked: Vec<String>,
    pub violations: Vec<String>,
}

/// The class vanishes at every `e` with `e ≰ e₀`.
pub fn support_check(
    model: &ResolutionModel,
    d: &Divisor,
    order: &PartialOrder,
    e0: &str,
) -> Result<SupportVerdict, EnvelopeError> {
    let mut checked = Vec::new();
    let mut violations = Vec::new();
    for p in &model.ambient_points {
        if order.leq(&p.id, e0) {
            continue;
        }
        checked.push(p.id.clone());
        if !localized_class(model, d, &p.id)?.is_zero() {
            violations.push(p.id.clone());
        }
    }
    Ok(SupportVerdict {
        pass: violations.is_empty(),
        checked,
        violations,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisibilityVerdict {
    pub pass: bool,
    /// `λ_y((T⁺_e)*)`.
    pub divisor: Poly,
    pub quotient: Option<Poly>,
    pub remainder: Option<Poly>,
}

/// Divisibility of a class by a given polynomial, with the remainder kept
/// as a witness on failure.
pub fn divides_with_witness(divisor: Poly, class: &Poly) -> DivisibilityVerdict {
    match lp_divides(&divisor, class) {
        Ok(q) => DivisibilityVerdict {
            pass: true,
            divisor,
            quotient: Some(q),
            remainder: None,
        },
        Err(DivisionError::NotDivisible { remainder, .. }) => DivisibilityVerdict {
            pass: false,
            divisor,
            quotient: None,
            remainder: Some(remainder),
        },
        Err(_) => DivisibilityVerdict {
            pass: false,
            divisor,
            quotient: None,
            remainder: None,
        },
    }
}

/// `λ_y((T⁺_e)*)` divides the class at `e`.
pub fn divisibility_check(
    model: &ResolutionModel,
    d: &Divisor,
    chamber: &Chamber,
    e: &str,
) -> Result<DivisibilityVerdict, EnvelopeError> {
    let (plus, _) = split_tangent(point(model, e)?, chamber)?;
    let class = localized_class(model, d, e)?;
    Ok(divides_with_witness(
        lambda_y_dual(model.torus_rank, &plus),
        &class,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kalgebra::rational::{int, rat};
    use crate::library;

    fn t1(e: Rational) -> Poly {
        Poly::t(Weight::new(vec![e]))
    }

    #[test]
    fn rho_examples() {
        let a = Poly::one(1) + &Poly::y(1) * &t1(int(-1));
        let expected =
            Poly::h(1).mul_monomial(&Monomial::new(Weight::zero(1), 0, -2)) - t1(int(-1));
        assert_eq!(rho_rescale(&a, 1), expected);
        assert_eq!(rho_rescale(&Poly::one(1), 0), Poly::one(1));
        let sq = (Poly::one(1) + Poly::y(1)).pow(2);
        assert_eq!(rho_rescale(&sq, 0), (Poly::one(1) - Poly::h(1)).pow(2));
    }

    #[test]
    fn normalization_targets() {
        let ex = library::p1_mirror(rat(1, 2));
        let target = stable_normalization_target(&ex.model, "0", &ex.chamber).unwrap();
        let h_inv = Poly::term(Monomial::new(Weight::zero(1), 0, -1), int(1));
        assert_eq!(target, h_inv - t1(int(-1)));
        let t_inf = stable_normalization_target(&ex.model, "inf", &ex.chamber).unwrap();
        assert_eq!(t_inf, Poly::one(1) - t1(int(1)));
        let v = normalization_check(&ex.model, &ex.divisor, &ex.chamber).unwrap();
        assert!(v.pass);
        assert_eq!(v.class, Poly::one(1) + &Poly::y(1) * &t1(int(-1)));
    }

    #[test]
    fn divisor_touching_center_is_rejected() {
        let ex = library::p1_mirror(rat(1, 2));
        let mut m = ex.model.clone();
        m.charts.iter_mut().for_each(|c| {
            if c.image_point == "0" {
                c.boundary_of.insert(0, "Dinf".into());
            }
        });
        // Both charts now meet the component; weights disagree with nothing
        // since each point has one chart.
        let r = normalization_check(&m, &ex.divisor, &ex.chamber);
        assert!(matches!(r, Err(EnvelopeError::DivisorTouchesCenter { .. })));
    }

    #[test]
    fn slope_weights() {
        let ex = library::p1_mirror(rat(1, 2));
        let s = ex.slope.as_ref().unwrap();
        let w = slope_divisor_weights(s, "0").unwrap();
        assert_eq!(w["inf"], Weight::new(vec![rat(-1, 2)]));
        assert_eq!(w["0"], Weight::zero(1));
        let flat = Slope::new(
            3,
            [
                ("a".to_string(), Weight::from_ints(&[2])),
                ("b".to_string(), Weight::from_ints(&[2])),
            ]
            .into_iter()
            .collect(),
        )
        .unwrap();
        assert!(slope_divisor_weights(&flat, "a")
            .unwrap()
            .values()
            .all(|w| w.is_zero()));
        assert_eq!(divisor_from_slope(&ex.model, s).unwrap(), ex.divisor);
    }

    #[test]
    fn newton_on_the_mirror_line() {
        for l in [rat(1, 2), int(1), rat(-2, 5)] {
            let ex = library::p1_mirror(l.clone());
            let v = newton_inclusion_check(&ex.model, &ex.divisor, ex.slope.as_ref(), "inf", "0")
                .unwrap();
            assert!(v.pass);
            assert_eq!(v.strict, Some(!l.is_integer()));
        }
    }

    #[test]
    fn adversarial_newton_and_divisibility() {
        let eu = NewtonPolytope::newton(&(Poly::one(1) - t1(int(-1)))).unwrap();
        let bad = NewtonPolytope::newton(&t1(int(2))).unwrap();
        let c = eu.contains(&bad).unwrap();
        assert!(!c.holds && c.violation.is_some());
        let v = divides_with_witness(
            Poly::one(1) + &Poly::y(1) * &t1(int(-1)),
            &(Poly::one(1) + &Poly::y(1) * &t1(int(1))),
        );
        assert!(!v.pass && v.remainder.is_some());
        assert!(divides_with_witness(Poly::one(1), &t1(int(3))).pass);
    }

    #[test]
    fn support_examples() {
        let ex = library::p1_mirror(rat(1, 2));
        let v = support_check(&ex.model, &ex.divisor, &ex.order, "0").unwrap();
        assert!(v.pass && v.checked.is_empty());
        let ex = library::p1xp1_cell("i0", (rat(1, 2), rat(1, 3))).unwrap();
        let v = support_check(&ex.model, &ex.divisor, &ex.order, "i0").unwrap();
        assert!(v.pass);
        assert_eq!(v.checked, vec!["00".to_string(), "0i".to_string()]);
        let mut m = ex.model.clone();
        let mut extra = m.charts[0].clone();
        extra.id = "stray".into();
        extra.image_point = "0i".into();
        extra.tangent_weights = vec![Weight::from_ints(&[1, 0])];
        extra.boundary_of.clear();
        m.charts.push(extra);
        let v = support_check(&m, &ex.divisor, &ex.order, "i0").unwrap();
        assert!(!v.pass);
    }
}
