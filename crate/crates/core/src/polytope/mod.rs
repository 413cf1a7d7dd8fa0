//! Newton polytopes and exact hull-containment tests.

pub mod sigma;
pub mod simplex;

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::kalgebra::rational::{format_rational, primitive_integer_direction};
use crate::kalgebra::Weight;
use crate::{Poly, Rational};
use simplex::{solve, LpOutcome};

pub use sigma::{contains_via_sigma_limits, generic_sigma};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolytopeError {
    #[error("the zero class has no Newton polytope")]
    ZeroClass,
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("empty support has no relative interior")]
    EmptyHull,
}

/// Convex hull of a finite set of exponent vectors, kept as its point set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonPolytope {
    rank: usize,
    support: BTreeSet<Weight>,
}

/// Closed halfspace `normal·x ≥ offset` that contains the violating point
/// and misses every point of the hull.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Separator {
    #[serde(serialize_with = "serialize_rationals")]
    pub normal: Vec<Rational>,
    #[serde(serialize_with = "serialize_rational")]
    pub offset: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    #[serde(serialize_with = "serialize_weight")]
    pub point: Weight,
    pub separator: Separator,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Containment {
    pub holds: bool,
    pub violation: Option<Violation>,
}

impl NewtonPolytope {
    pub fn newton(a: &Poly) -> Result<Self, PolytopeError> {
        if a.is_zero() {
            return Err(PolytopeError::ZeroClass);
        }
        Ok(NewtonPolytope {
            rank: a.rank(),
            support: a.support(),
        })
    }

    pub fn from_points<I: IntoIterator<Item = Weight>>(rank: usize, points: I) -> Self {
        let support: BTreeSet<Weight> = points.into_iter().collect();
        assert!(
            support.iter().all(|w| w.rank() == rank),
            "point rank mismatch"
        );
        NewtonPolytope { rank, support }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn support(&self) -> &BTreeSet<Weight> {
        &self.support
    }

    pub fn translate(&self, w: &Weight) -> Self {
        assert_eq!(w.rank(), self.rank, "translation rank mismatch");
        NewtonPolytope {
            rank: self.rank,
            support: self.support.iter().map(|p| p + w).collect(),
        }
    }

    fn check_rank(&self, other: &Self) -> Result<(), PolytopeError> {
        if self.rank == other.rank {
            Ok(())
        } else {
            Err(PolytopeError::RankMismatch {
                left: self.rank,
                right: other.rank,
            })
        }
    }

    /// Whether every point of `q` lies in the hull of `self`; on failure
    /// the first violating point comes with a separating halfspace.
    pub fn contains(&self, q: &NewtonPolytope) -> Result<Containment, PolytopeError> {
        self.check_rank(q)?;
        let pts: Vec<&Weight> = self.support.iter().collect();
        for p in &q.support {
            if let Err(farkas) = hull_lp(p, &pts) {
                return Ok(Containment {
                    holds: false,
                    violation: Some(Violation {
                        point: p.clone(),
                        separator: separator_from_farkas(p, &pts, &farkas),
                    }),
                });
            }
        }
        Ok(Containment {
            holds: true,
            violation: None,
        })
    }

    /// Whether every point of `q` lies in the relative interior of the hull.
    pub fn contains_strictly(&self, q: &NewtonPolytope) -> Result<bool, PolytopeError> {
        self.check_rank(q)?;
        if self.support.is_empty() {
            return Err(PolytopeError::EmptyHull);
        }
        let pts: Vec<&Weight> = self.support.iter().collect();
        Ok(q.support.iter().all(|p| in_relative_interior(p, &pts)))
    }
}

/// Barycentric LP: `Σ λ_i v_i = p`, `Σ λ_i = 1`, `λ ≥ 0`.
fn barycentric_system(p: &Weight, pts: &[&Weight]) -> (Vec<Vec<Rational>>, Vec<Rational>) {
    let r = p.rank();
    let mut a: Vec<Vec<Rational>> = (0..r)
        .map(|k| pts.iter().map(|v| v.coords()[k].clone()).collect())
        .collect();
    a.push(vec![Rational::one(); pts.len()]);
    let mut b: Vec<Rational> = p.coords().to_vec();
    b.push(Rational::one());
    (a, b)
}

fn hull_lp(p: &Weight, pts: &[&Weight]) -> Result<Vec<Rational>, Vec<Rational>> {
    if pts.is_empty() {
        // y = (0, …, 0, 1): yᵀA ≤ 0 vacuously, yᵀb = 1.
        let mut y = vec![Rational::zero(); p.rank()];
        y.push(Rational::one());
        return Err(y);
    }
    let (a, b) = barycentric_system(p, pts);
    let c = vec![Rational::zero(); pts.len()];
    match solve(&a, &b, &c) {
        LpOutcome::Optimal { x, .. } => Ok(x),
        LpOutcome::Infeasible { farkas } => Err(farkas),
        LpOutcome::Unbounded => unreachable!("zero objective is bounded"),
    }
}

fn separator_from_farkas(p: &Weight, pts: &[&Weight], farkas: &[Rational]) -> Separator {
    let r = p.rank();
    let normal = primitive_integer_direction(&farkas[..r]);
    let at_p = p.dot(&normal);
    let max_hull = pts
        .iter()
        .map(|v| v.dot(&normal))
        .max()
        .unwrap_or_else(|| at_p.clone() - Rational::one() - Rational::one());
    Separator {
        offset: (max_hull + at_p) / Rational::from_integer(2.into()),
        normal,
    }
}

fn in_relative_interior(p: &Weight, pts: &[&Weight]) -> bool {
    // λ_i = μ_i + s with μ ≥ 0; p is relatively interior iff max s > 0.
    let (mut a, b) = barycentric_system(p, pts);
    for row in a.iter_mut() {
        let total = row.iter().fold(Rational::zero(), |acc, v| acc + v);
        row.push(total);
    }
    let mut c = vec![Rational::zero(); pts.len()];
    c.push(Rational::one());
    match solve(&a, &b, &c) {
        LpOutcome::Optimal { value, .. } => value.is_positive(),
        _ => false,
    }
}

/// Exact test of `p ∈ conv(pts)`.
pub fn point_in_hull(p: &Weight, pts: &[Weight]) -> bool {
    let refs: Vec<&Weight> = pts.iter().collect();
    assert!(
        refs.iter().all(|v| v.rank() == p.rank()),
        "point rank mismatch"
    );
    hull_lp(p, &refs).is_ok()
}

impl fmt::Display for Separator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.normal.len();
        let mut first = true;
        for (i, c) in self.normal.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let var = if n == 1 {
                "x".to_string()
            } else {
                format!("x{}", i + 1)
            };
            let mag = c.abs();
            let body = if mag.is_one() {
                var
            } else {
                format!("{}·{var}", format_rational(&mag))
            };
            match (first, c.is_negative()) {
                (true, false) => write!(f, "{body}")?,
                (true, true) => write!(f, "-{body}")?,
                (false, false) => write!(f, " + {body}")?,
                (false, true) => write!(f, " - {body}")?,
            }
            first = false;
        }
        write!(f, " ≥ {}", format_rational(&self.offset))
    }
}

fn serialize_rational<S: serde::Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(r))
}

fn serialize_rationals<S: serde::Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(format_rational))
}

fn serialize_weight<S: serde::Serializer>(w: &Weight, s: S) -> Result<S::Ok, S::Error> {
    serialize_rationals(w.coords(), s)
}
