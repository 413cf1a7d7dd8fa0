use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use serde::Serialize;

use super::classes::{localized_class, localized_class_unchecked};
use super::model::{BoundaryComponent, Chart, Divisor, ModelError, ResolutionModel};
use super::LocalizationError;
use crate::kalgebra::Weight;
use crate::Rational;

/// Result of blowing up a coordinate subspace of one chart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlowUp {
    pub model: ResolutionModel,
    /// Pullback of the input divisor.
    pub divisor: Divisor,
    /// The exceptional component, present iff the center lies in the boundary.
    pub exceptional: Option<String>,
    pub exceptional_multiplicity: Rational,
    pub new_charts: Vec<String>,
}

fn validate_center(chart: &Chart, center: &[usize]) -> Result<BTreeSet<usize>, ModelError> {
    let invalid = |reason: String| ModelError::InvalidCenter {
        chart: chart.id.clone(),
        reason,
    };
    let set: BTreeSet<usize> = center.iter().copied().collect();
    if set.len() != center.len() {
        return Err(invalid("repeated direction".into()));
    }
    if set.len() < 2 {
        return Err(invalid(format!(
            "needs at least 2 directions, got {}",
            set.len()
        )));
    }
    if let Some(&d) = set.iter().find(|&&d| d >= chart.dim()) {
        return Err(invalid(format!("direction {d} out of range")));
    }
    Ok(set)
}

/// Blows up the coordinate subspace `{x_i = 0, i ∈ S}` of `chart_id`.
///
/// Chart `j ∈ S` has weight `w_j` in direction `j` (the exceptional
/// divisor), `w_i - w_j` for `i ∈ S∖{j}` and `w_i` elsewhere; the old
/// component in direction `j` does not meet it. The exceptional multiplicity
/// is `Σ_{k ∈ S boundary} c_k`.
pub fn blowup_model(
    model: &ResolutionModel,
    d: &Divisor,
    chart_id: &str,
    center: &[usize],
) -> Result<BlowUp, ModelError> {
    let pos = model
        .charts
        .iter()
        .position(|c| c.id == chart_id)
        .ok_or_else(|| ModelError::UnknownChart(chart_id.to_string()))?;
    let chart = &model.charts[pos];
    let s = validate_center(chart, center)?;

    let boundary_in_center: Vec<&String> =
        s.iter().filter_map(|k| chart.boundary_of.get(k)).collect();
    let exceptional = if boundary_in_center.is_empty() {
        None
    } else {
        Some(model.fresh_component_id("E"))
    };
    let multiplicity = boundary_in_center
        .iter()
        .fold(Rational::zero(), |acc, comp| acc + d.get(comp));

    let mut new_charts = Vec::new();
    for &j in &s {
        let wj = chart.tangent_weights[j].clone();
        let weights: Vec<Weight> = chart
            .tangent_weights
            .iter()
            .enumerate()
            .map(|(i, w)| {
                if i != j && s.contains(&i) {
                    w - &wj
                } else {
                    w.clone()
                }
            })
            .collect();
        let mut boundary_of: BTreeMap<usize, String> = chart
            .boundary_of
            .iter()
            .filter(|(&k, _)| k != j)
            .map(|(&k, c)| (k, c.clone()))
            .collect();
        if let Some(e) = &exceptional {
            boundary_of.insert(j, e.clone());
        }
        if let Some(i) = weights.iter().position(Weight::is_zero) {
            return Err(ModelError::InvalidCenter {
                chart: chart.id.clone(),
                reason: format!("directions {i} and {j} have equal weights; the fixed locus of the blow-up is not isolated"),
            });
        }
        new_charts.push(Chart {
            id: format!("{}.b{}", chart.id, j),
            tangent_weights: weights,
            boundary_of,
            image_point: chart.image_point.clone(),
        });
    }

    let mut out = model.clone();
    let ids: Vec<String> = new_charts.iter().map(|c| c.id.clone()).collect();
    out.charts.splice(pos..=pos, new_charts);
    let mut divisor = d.clone();
    if let Some(e) = &exceptional {
        out.components.push(BoundaryComponent { id: e.clone() });
        divisor.set(e, multiplicity.clone());
    }
    Ok(BlowUp {
        model: out,
        divisor,
        exceptional,
        exceptional_multiplicity: multiplicity,
        new_charts: ids,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvarianceReport {
    pub s: u32,
    pub invariant: bool,
    /// Per ambient point: whether the two pushforwards agree there.
    pub points: Vec<(String, bool)>,
}

/// Compares `localized_class(m, D)` with the pushforward from the blow-up of
/// `O(b^*⌈D⌉ - sE) ⊗ mC(open)`, at every ambient point.
pub fn pushforward_invariance_check(
    model: &ResolutionModel,
    d: &Divisor,
    chart_id: &str,
    center: &[usize],
    s: u32,
) -> Result<InvarianceReport, LocalizationError> {
    model.validate()?;
    model.validate_divisor(d)?;
    let bl = blowup_model(model, &d.ceil(), chart_id, center)?;
    let mut twisted = bl.divisor.clone();
    match &bl.exceptional {
        Some(e) => twisted.set(e, twisted.get(e) - Rational::from_integer(s.into())),
        None if s > 0 => {
            return Err(ModelError::InvalidCenter {
                chart: chart_id.to_string(),
                reason: "a twist by the exceptional divisor needs a center inside the boundary"
                    .into(),
            }
            .into())
        }
        None => {}
    }
    let mut points = Vec::new();
    for p in &model.ambient_points {
        let base = localized_class(model, d, &p.id)?;
        let up = localized_class_unchecked(&bl.model, &twisted, &p.id)?;
        points.push((p.id.clone(), base == up));
    }
    Ok(InvarianceReport {
        s,
        invariant: points.iter().all(|(_, ok)| *ok),
        points,
    })
}

/// Number of boundary directions of `chart_id` inside `center`.
pub fn boundary_count(model: &ResolutionModel, chart_id: &str, center: &[usize]) -> Option<usize> {
    let chart = model.chart(chart_id)?;
    Some(center.iter().filter(|k| chart.is_boundary(**k)).count())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kalgebra::rational::{int, rat};
    use crate::kalgebra::Weight;
    use crate::library;

    #[test]
    fn two_dimensional_blowup_charts() {
        let m = library::blowup_demo(2);
        let bl = blowup_model(&m, &Divisor::zero(), "U", &[0, 1]).unwrap();
        let w1 = Weight::from_ints(&[1, 0]);
        let w2 = Weight::from_ints(&[0, 1]);
        let c0 = bl.model.chart("U.b0").unwrap();
        let c1 = bl.model.chart("U.b1").unwrap();
        assert_eq!(c0.tangent_weights, vec![w1.clone(), &w2 - &w1]);
        assert_eq!(c1.tangent_weights, vec![&w1 - &w2, w2.clone()]);
        let e = bl.exceptional.unwrap();
        assert_eq!(c0.boundary_of.get(&0), Some(&e));
        assert_eq!(c1.boundary_of.get(&1), Some(&e));
    }

    #[test]
    fn exceptional_multiplicity() {
        let m = library::blowup_demo(2);
        let d = Divisor::single("D1", rat(2, 3));
        let bl = blowup_model(&m, &d, "U", &[0, 1]).unwrap();
        assert_eq!(bl.exceptional_multiplicity, rat(2, 3));
        let mut free = library::blowup_demo(3);
        free.charts[0].boundary_of.clear();
        let bl = blowup_model(&free, &Divisor::zero(), "U", &[0, 1]).unwrap();
        assert!(bl.exceptional.is_none());
        assert_eq!(bl.exceptional_multiplicity, int(0));
        assert!(blowup_model(&m, &d, "U", &[0]).is_err());
    }

    #[test]
    fn invariance_on_demo_models() {
        for r in 2..=3u32 {
            let m = library::blowup_demo(r as usize);
            let center: Vec<usize> = (0..r as usize).collect();
            for s in 0..r {
                let rep =
                    pushforward_invariance_check(&m, &Divisor::zero(), "U", &center, s).unwrap();
                assert!(rep.invariant, "r={r} s={s}");
            }
            let rep = pushforward_invariance_check(&m, &Divisor::zero(), "U", &center, r).unwrap();
            assert!(!rep.invariant, "r={r} s=r");
        }
    }

    #[test]
    fn two_lines_in_the_plane() {
        let (m, d) = library::p2_lines();
        let chart = m.charts_over("e3").next().unwrap().id.clone();
        for s in 0..=1 {
            let rep = pushforward_invariance_check(&m, &d, &chart, &[0, 1], s).unwrap();
            assert!(rep.invariant, "s={s}");
        }
    }
}
