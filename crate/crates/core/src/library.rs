//! Built-in models: the projective line, Schubert-type cells of the plane
//! and of `ℙ¹×ℙ¹`, and coordinate charts for blow-up experiments.
//!
//! All weights are tangent characters at the fixed points; a chart's
//! boundary direction `k` means the component is `{z_k = 0}`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::envelope::{Chamber, PartialOrder, Slope};
use crate::kalgebra::rational::rat;
use crate::kalgebra::Weight;
use crate::localization::{
    AmbientFixedPoint, BoundaryComponent, Chart, Divisor, ModelDocument, ResolutionModel,
};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LibraryError {
    #[error("unknown example {0:?}; known: p1, p2-cell, p1xp1-cell, blowup-demo")]
    UnknownExample(String),
    #[error("unknown cell {cell:?} for {example}; expected one of {expected}")]
    UnknownCell {
        example: &'static str,
        cell: String,
        expected: &'static str,
    },
    #[error("{example} takes {expected} slope value(s), got {found}")]
    SlopeArity {
        example: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("slope numerator or denominator does not fit in 64 bits")]
    SlopeOverflow,
    #[error("blowup-demo needs r ≥ 2, got {0}")]
    DemoRank(usize),
}

/// A model together with everything the envelope checks need.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Example {
    pub name: String,
    pub model: ResolutionModel,
    pub divisor: Divisor,
    pub chamber: Chamber,
    pub order: PartialOrder,
    pub slope: Option<Slope>,
    order_pairs: Vec<(String, String)>,
}

impl Example {
    /// Model file carrying the divisor, chamber, order and slope.
    pub fn document(&self) -> ModelDocument {
        let mut doc = ModelDocument::new(self.model.clone(), self.divisor.clone());
        doc.chamber = Some(self.chamber.sigma.clone());
        doc.order = Some(self.order_pairs.clone());
        doc.slope = self.slope.as_ref().map(|s| (s.n, s.weights.clone()));
        doc
    }
}

fn example(
    name: String,
    model: ResolutionModel,
    divisor: Divisor,
    sigma: Vec<i64>,
    order: &[(&str, &str)],
    slope: Option<Slope>,
) -> Example {
    let pairs: Vec<(String, String)> = order
        .iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect();
    let po = PartialOrder::new(&model.point_ids(), &pairs).expect("built-in order is acyclic");
    Example {
        name,
        model,
        divisor,
        chamber: Chamber::new(sigma),
        order: po,
        slope,
        order_pairs: pairs,
    }
}

fn point(id: &str, weights: Vec<Weight>) -> AmbientFixedPoint {
    AmbientFixedPoint {
        id: id.into(),
        tangent_weights: weights,
    }
}

fn chart(id: &str, over: &str, weights: Vec<Weight>, boundary: &[(usize, &str)]) -> Chart {
    Chart {
        id: id.into(),
        tangent_weights: weights,
        boundary_of: boundary.iter().map(|&(k, c)| (k, c.to_string())).collect(),
        image_point: over.into(),
    }
}

fn components(ids: &[&str]) -> Vec<BoundaryComponent> {
    ids.iter()
        .map(|&id| BoundaryComponent { id: id.into() })
        .collect()
}

fn w(v: &[i64]) -> Weight {
    Weight::from_ints(v)
}

/// `(numerator, denominator)` with positive denominator.
fn split(l: &Rational) -> Result<(i64, u64), LibraryError> {
    let p = l.numer().to_i64().ok_or(LibraryError::SlopeOverflow)?;
    let n = l.denom().to_u64().ok_or(LibraryError::SlopeOverflow)?;
    Ok((p, n))
}

/// `ℙ¹` with the divisor component at `0`; the center is `∞`.
pub fn p1() -> ResolutionModel {
    ResolutionModel {
        torus_rank: 1,
        ambient_points: vec![point("0", vec![w(&[1])]), point("inf", vec![w(&[-1])])],
        charts: vec![
            chart("U0", "0", vec![w(&[1])], &[(0, "D0")]),
            chart("Uinf", "inf", vec![w(&[-1])], &[]),
        ],
        components: components(&["D0"]),
        center: "inf".into(),
    }
}

/// `ℙ¹` with `Δ = λ·{0}`, chamber `σ = -1` so that `∞` attracts the line,
/// and the slope `L = O(p)` at denominator `n` for `λ = p/n`.
pub fn p1_example(lambda: Rational) -> Result<Example, LibraryError> {
    let (p, n) = split(&lambda)?;
    let weights = BTreeMap::from([("0".to_string(), w(&[p])), ("inf".to_string(), w(&[0]))]);
    Ok(example(
        format!("p1(λ={lambda})"),
        p1(),
        Divisor::single("D0", lambda),
        vec![-1],
        &[("0", "inf")],
        Some(Slope { n, weights }),
    ))
}

/// The mirror image: component `Dinf` at `∞`, center `0`, chamber `σ = 1`.
pub fn p1_mirror(lambda: Rational) -> Example {
    let (p, n) = split(&lambda).expect("small slope");
    let model = ResolutionModel {
        torus_rank: 1,
        ambient_points: vec![point("0", vec![w(&[1])]), point("inf", vec![w(&[-1])])],
        charts: vec![
            chart("U0", "0", vec![w(&[1])], &[]),
            chart("Uinf", "inf", vec![w(&[-1])], &[(0, "Dinf")]),
        ],
        components: components(&["Dinf"]),
        center: "0".into(),
    };
    let weights = BTreeMap::from([("0".to_string(), w(&[0])), ("inf".to_string(), w(&[-p]))]);
    example(
        format!("p1-mirror(λ={lambda})"),
        model,
        Divisor::single("Dinf", lambda),
        vec![1],
        &[("inf", "0")],
        Some(Slope { n, weights }),
    )
}

fn eps(rank: usize, i: usize) -> Weight {
    Weight::unit(rank, i)
}

/// Tangent weights `ε_j - ε_i`, `j ≠ i` increasing, at `e_{i+1}` of `ℙ²`.
fn p2_tangent(i: usize) -> Vec<Weight> {
    (0..3)
        .filter(|&j| j != i)
        .map(|j| &eps(3, j) - &eps(3, i))
        .collect()
}

/// Closure of a Schubert cell of `ℙ²` for chamber `σ = (1, 2, 3)`, with
/// `Δ = λ·(boundary)` and slope from `O(1)`: `w_{e_i}(L) = -p·ε_i`.
///
/// `e1` is the open cell with boundary the line through `e2, e3`; `e2` is
/// that line with boundary `e3`; `e3` is the point.
pub fn p2_cell(cell: &str, lambda: Rational) -> Result<Example, LibraryError> {
    let (p, n) = split(&lambda)?;
    let ambient_points: Vec<AmbientFixedPoint> = (0..3)
        .map(|i| point(&format!("e{}", i + 1), p2_tangent(i)))
        .collect();
    let (charts, comps, divisor) = match cell {
        "e1" => (
            vec![
                chart("C1", "e1", p2_tangent(0), &[]),
                chart("C2", "e2", p2_tangent(1), &[(0, "L")]),
                chart("C3", "e3", p2_tangent(2), &[(0, "L")]),
            ],
            vec!["L"],
            Divisor::single("L", lambda.clone()),
        ),
        "e2" => (
            vec![
                chart("C2", "e2", vec![&eps(3, 2) - &eps(3, 1)], &[]),
                chart("C3", "e3", vec![&eps(3, 1) - &eps(3, 2)], &[(0, "P")]),
            ],
            vec!["P"],
            Divisor::single("P", lambda.clone()),
        ),
        "e3" => (
            vec![chart("C3", "e3", vec![], &[])],
            vec![],
            Divisor::zero(),
        ),
        other => {
            return Err(LibraryError::UnknownCell {
                example: "p2-cell",
                cell: other.into(),
                expected: "e1, e2, e3",
            })
        }
    };
    let model = ResolutionModel {
        torus_rank: 3,
        ambient_points,
        charts,
        components: components(&comps),
        center: cell.into(),
    };
    let weights = (0..3)
        .map(|i| {
            (
                format!("e{}", i + 1),
                eps(3, i).scale(&Rational::from_integer(BigInt::from(-p))),
            )
        })
        .collect();
    Ok(example(
        format!("p2-cell({cell}, λ={lambda})"),
        model,
        divisor,
        vec![1, 2, 3],
        &[("e3", "e2"), ("e2", "e1")],
        Some(Slope { n, weights }),
    ))
}

/// Closure of a corner cell of `ℙ¹×ℙ¹` for chamber `σ = (1, 2)`. Corners
/// are `00, i0, 0i, ii` (`i` for `∞`), with `Δ = a·D1 + b·D2` restricted to
/// the boundary of the cell, and slope from `O(p, q)`, `(p, q) = n·(a, b)`.
pub fn p1xp1_cell(corner: &str, (a, b): (Rational, Rational)) -> Result<Example, LibraryError> {
    let n = a.denom().lcm(b.denom());
    let p = (&a * Rational::from_integer(n.clone())).to_integer();
    let q = (&b * Rational::from_integer(n.clone())).to_integer();
    let (p, q, n) = match (p.to_i64(), q.to_i64(), n.to_u64()) {
        (Some(p), Some(q), Some(n)) => (p, q, n),
        _ => return Err(LibraryError::SlopeOverflow),
    };
    let corners = [
        ("00", [1, 1]),
        ("i0", [-1, 1]),
        ("0i", [1, -1]),
        ("ii", [-1, -1]),
    ];
    let ambient_points = corners
        .iter()
        .map(|(id, s)| point(id, vec![w(&[s[0], 0]), w(&[0, s[1]])]))
        .collect();
    let (charts, comps, divisor) = match corner {
        "00" => {
            let mut d = Divisor::single("D1", a.clone());
            d.set("D2", b.clone());
            (
                vec![
                    chart("C00", "00", vec![w(&[1, 0]), w(&[0, 1])], &[]),
                    chart("Ci0", "i0", vec![w(&[-1, 0]), w(&[0, 1])], &[(0, "D1")]),
                    chart("C0i", "0i", vec![w(&[1, 0]), w(&[0, -1])], &[(1, "D2")]),
                    chart(
                        "Cii",
                        "ii",
                        vec![w(&[-1, 0]), w(&[0, -1])],
                        &[(0, "D1"), (1, "D2")],
                    ),
                ],
                vec!["D1", "D2"],
                d,
            )
        }
        "i0" => (
            vec![
                chart("Ci0", "i0", vec![w(&[0, 1])], &[]),
                chart("Cii", "ii", vec![w(&[0, -1])], &[(0, "Q")]),
            ],
            vec!["Q"],
            Divisor::single("Q", b.clone()),
        ),
        "0i" => (
            vec![
                chart("C0i", "0i", vec![w(&[1, 0])], &[]),
                chart("Cii", "ii", vec![w(&[-1, 0])], &[(0, "Q")]),
            ],
            vec!["Q"],
            Divisor::single("Q", a.clone()),
        ),
        "ii" => (
            vec![chart("Cii", "ii", vec![], &[])],
            vec![],
            Divisor::zero(),
        ),
        other => {
            return Err(LibraryError::UnknownCell {
                example: "p1xp1-cell",
                cell: other.into(),
                expected: "00, i0, 0i, ii",
            })
        }
    };
    let model = ResolutionModel {
        torus_rank: 2,
        ambient_points,
        charts,
        components: components(&comps),
        center: corner.into(),
    };
    let weights = corners
        .iter()
        .map(|(id, s)| {
            let x = if s[0] < 0 { -p } else { 0 };
            let y = if s[1] < 0 { -q } else { 0 };
            (id.to_string(), w(&[x, y]))
        })
        .collect();
    Ok(example(
        format!("p1xp1-cell({corner}, a={a}, b={b})"),
        model,
        divisor,
        vec![1, 2],
        &[("ii", "i0"), ("ii", "0i"), ("i0", "00"), ("0i", "00")],
        Some(Slope { n, weights }),
    ))
}

/// `ℂ^r` with weights `ε_1, …, ε_r` and the coordinate hyperplanes
/// `D1, …, Dr` as boundary.
pub fn blowup_demo(r: usize) -> ResolutionModel {
    let weights: Vec<Weight> = (0..r).map(|i| eps(r, i)).collect();
    let names: Vec<String> = (1..=r).map(|k| format!("D{k}")).collect();
    let boundary: Vec<(usize, &str)> = names
        .iter()
        .enumerate()
        .map(|(k, s)| (k, s.as_str()))
        .collect();
    ResolutionModel {
        torus_rank: r,
        ambient_points: vec![point("o", weights.clone())],
        charts: vec![chart("U", "o", weights, &boundary)],
        components: components(&names.iter().map(String::as_str).collect::<Vec<_>>()),
        center: "o".into(),
    }
}

/// `ℙ²` resolved by itself, with boundary the lines `A = {x₁ = 0}` and
/// `B = {x₂ = 0}` meeting at `e3`, and `Δ = A/3 + 3B/4`.
pub fn p2_lines() -> (ResolutionModel, Divisor) {
    let model = ResolutionModel {
        torus_rank: 3,
        ambient_points: (0..3)
            .map(|i| point(&format!("e{}", i + 1), p2_tangent(i)))
            .collect(),
        charts: vec![
            chart("C1", "e1", p2_tangent(0), &[(0, "B")]),
            chart("C2", "e2", p2_tangent(1), &[(0, "A")]),
            chart("C3", "e3", p2_tangent(2), &[(0, "A"), (1, "B")]),
        ],
        components: components(&["A", "B"]),
        center: "e1".into(),
    };
    let mut d = Divisor::single("A", rat(1, 3));
    d.set("B", rat(3, 4));
    (model, d)
}

/// Default non-lattice slopes used by `check --slope generic`.
pub fn generic_slope(name: &str) -> Result<Vec<Rational>, LibraryError> {
    match name {
        "p1" => Ok(vec![rat(1, 2)]),
        "p2-cell" => Ok(vec![rat(1, 3)]),
        "p1xp1-cell" => Ok(vec![rat(2, 5), rat(1, 3)]),
        "blowup-demo" => Ok(vec![]),
        other => Err(LibraryError::UnknownExample(other.into())),
    }
}

/// Example by name. `cell` selects the cell or corner, `slope` holds one
/// value for `p1` and `p2-cell`, two for `p1xp1-cell`, and none for
/// `blowup-demo`, whose rank is `r`.
pub fn named_example(
    name: &str,
    cell: Option<&str>,
    slope: &[Rational],
    r: usize,
) -> Result<Example, LibraryError> {
    let arity = |example: &'static str, expected: usize| {
        if slope.len() == expected {
            Ok(())
        } else {
            Err(LibraryError::SlopeArity {
                example,
                expected,
                found: slope.len(),
            })
        }
    };
    match name {
        "p1" => {
            arity("p1", 1)?;
            p1_example(slope[0].clone())
        }
        "p2-cell" => {
            arity("p2-cell", 1)?;
            p2_cell(cell.unwrap_or("e1"), slope[0].clone())
        }
        "p1xp1-cell" => {
            arity("p1xp1-cell", 2)?;
            p1xp1_cell(cell.unwrap_or("00"), (slope[0].clone(), slope[1].clone()))
        }
        "blowup-demo" => {
            arity("blowup-demo", 0)?;
            if r < 2 {
                return Err(LibraryError::DemoRank(r));
            }
            let model = blowup_demo(r);
            let sigma = vec![1; r];
            Ok(example(
                format!("blowup-demo(r={r})"),
                model,
                Divisor::zero(),
                sigma,
                &[],
                None,
            ))
        }
        other => Err(LibraryError::UnknownExample(other.into())),
    }
}

/// Whether a slope value leaves every divisor weight off the lattice.
pub fn is_generic(values: &[Rational]) -> bool {
    values.iter().all(|v| !v.is_integer() && !v.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::envelope::slope_divisor_weights;
    use crate::kalgebra::rational::int;
    use crate::localization::divisor_weight_at_point;

    fn all_examples() -> Vec<Example> {
        let mut v = vec![p1_example(rat(1, 2)).unwrap(), p1_mirror(rat(-2, 5))];
        for c in ["e1", "e2", "e3"] {
            v.push(p2_cell(c, rat(1, 3)).unwrap());
        }
        for c in ["00", "i0", "0i", "ii"] {
            v.push(p1xp1_cell(c, (rat(2, 5), rat(-1, 4))).unwrap());
        }
        v
    }

    #[test]
    fn built_ins_validate() {
        for ex in all_examples() {
            ex.model.validate().unwrap();
            ex.model.validate_divisor(&ex.divisor).unwrap();
            ex.chamber.validate_for(&ex.model).unwrap();
        }
        for r in 2..=5 {
            blowup_demo(r).validate().unwrap();
        }
        let (m, d) = p2_lines();
        m.validate().unwrap();
        m.validate_divisor(&d).unwrap();
    }

    #[test]
    fn slopes_match_divisor_weights() {
        for ex in all_examples() {
            let s = ex.slope.as_ref().unwrap();
            let from_slope = slope_divisor_weights(s, &ex.model.center).unwrap();
            for p in &ex.model.ambient_points {
                if let Some(wd) = divisor_weight_at_point(&ex.model, &ex.divisor, &p.id).unwrap() {
                    assert_eq!(from_slope[&p.id], wd, "{} at {}", ex.name, p.id);
                }
            }
        }
    }

    #[test]
    fn named_lookup() {
        assert!(named_example("p1", None, &[int(1)], 0).is_ok());
        assert!(named_example("p1", None, &[], 0).is_err());
        assert!(named_example("p2-cell", Some("e4"), &[int(1)], 0).is_err());
        assert!(named_example("nope", None, &[], 0).is_err());
        assert!(named_example("blowup-demo", None, &[], 1).is_err());
        assert!(is_generic(&generic_slope("p1xp1-cell").unwrap()));
    }
}
