use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use thiserror::Error;

use crate::kalgebra::Weight;
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("duplicate {kind} id {id:?}")]
    DuplicateId { kind: &'static str, id: String },
    #[error("{owner}: weight {index} has rank {found}, expected {expected}")]
    WeightRank {
        owner: String,
        index: usize,
        found: usize,
        expected: usize,
    },
    #[error("{owner}: tangent weight {index} is zero")]
    ZeroWeight { owner: String, index: usize },
    #[error("chart {chart:?}: unknown image point {point:?}")]
    UnknownImagePoint { chart: String, point: String },
    #[error("chart {chart:?}: boundary direction {direction} out of range (dimension {dim})")]
    DirectionOutOfRange {
        chart: String,
        direction: usize,
        dim: usize,
    },
    #[error("chart {chart:?}: unknown boundary component {component:?}")]
    UnknownComponent { chart: String, component: String },
    #[error("chart {chart:?}: component {component:?} occupies more than one direction")]
    RepeatedComponent { chart: String, component: String },
    #[error("unknown center {0:?}")]
    UnknownCenter(String),
    #[error("unknown ambient point {0:?}")]
    UnknownPoint(String),
    #[error("unknown chart {0:?}")]
    UnknownChart(String),
    #[error("divisor names undeclared component {0:?}")]
    DivisorComponent(String),
    #[error(
        "divisor weight at {point:?} differs between charts {first:?} ({first_weight}) and {second:?} ({second_weight})"
    )]
    InconsistentDivisorWeight {
        point: String,
        first: String,
        first_weight: String,
        second: String,
        second_weight: String,
    },
    #[error("invalid blow-up center in chart {chart:?}: {reason}")]
    InvalidCenter { chart: String, reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryComponent {
    pub id: String,
}

/// Local model of a smooth chart at an isolated fixed point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chart {
    pub id: String,
    pub tangent_weights: Vec<Weight>,
    /// Direction index ↦ boundary component whose normal is that direction.
    pub boundary_of: BTreeMap<usize, String>,
    pub image_point: String,
}

impl Chart {
    pub fn dim(&self) -> usize {
        self.tangent_weights.len()
    }

    pub fn is_boundary(&self, direction: usize) -> bool {
        self.boundary_of.contains_key(&direction)
    }

    /// Local direction carrying `component`, if it passes through the chart.
    pub fn direction_of(&self, component: &str) -> Option<usize> {
        self.boundary_of
            .iter()
            .find(|(_, c)| c.as_str() == component)
            .map(|(&d, _)| d)
    }
}

/// A ℚ-divisor supported on boundary components.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Divisor {
    pub multiplicities: BTreeMap<String, Rational>,
}

impl Divisor {
    pub fn zero() -> Self {
        Divisor::default()
    }

    pub fn single(component: &str, c: Rational) -> Self {
        let mut d = Divisor::zero();
        d.set(component, c);
        d
    }

    pub fn get(&self, component: &str) -> Rational {
        self.multiplicities
            .get(component)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Sets a multiplicity; zero removes the entry.
    pub fn set(&mut self, component: &str, c: Rational) {
        if c.is_zero() {
            self.multiplicities.remove(component);
        } else {
            self.multiplicities.insert(component.to_string(), c);
        }
    }

    pub fn ceil(&self) -> Divisor {
        Divisor {
            multiplicities: self
                .multiplicities
                .iter()
                .map(|(k, v)| (k.clone(), v.ceil()))
                .filter(|(_, v)| !v.is_zero())
                .collect(),
        }
    }

    pub fn add(&self, other: &Divisor) -> Divisor {
        let mut out = self.clone();
        for (k, v) in &other.multiplicities {
            out.set(k, out.get(k) + v);
        }
        out
    }

    pub fn scale(&self, k: &Rational) -> Divisor {
        let mut out = Divisor::zero();
        for (c, v) in &self.multiplicities {
            out.set(c, v * k);
        }
        out
    }

    pub fn is_integral(&self) -> bool {
        self.multiplicities.values().all(|v| v.is_integer())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmbientFixedPoint {
    pub id: String,
    pub tangent_weights: Vec<Weight>,
}

/// Fixed-point data of an ambient space together with the charts of a
/// resolution of a subvariety and its boundary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolutionModel {
    pub torus_rank: usize,
    pub ambient_points: Vec<AmbientFixedPoint>,
    pub charts: Vec<Chart>,
    pub components: Vec<BoundaryComponent>,
    pub center: String,
}

fn check_weights(owner: &str, weights: &[Weight], rank: usize) -> Result<(), ModelError> {
    for (i, w) in weights.iter().enumerate() {
        if w.rank() != rank {
            return Err(ModelError::WeightRank {
                owner: owner.to_string(),
                index: i,
                found: w.rank(),
                expected: rank,
            });
        }
        if w.is_zero() {
            return Err(ModelError::ZeroWeight {
                owner: owner.to_string(),
                index: i,
            });
        }
    }
    Ok(())
}

fn check_unique<'a, I: Iterator<Item = &'a String>>(
    kind: &'static str,
    ids: I,
) -> Result<(), ModelError> {
    let mut seen = BTreeSet::new();
    for id in ids {
        if !seen.insert(id) {
            return Err(ModelError::DuplicateId {
                kind,
                id: id.clone(),
            });
        }
    }
    Ok(())
}

impl ResolutionModel {
    pub fn point(&self, id: &str) -> Option<&AmbientFixedPoint> {
        self.ambient_points.iter().find(|p| p.id == id)
    }

    pub fn chart(&self, id: &str) -> Option<&Chart> {
        self.charts.iter().find(|c| c.id == id)
    }

    pub fn charts_over<'a>(&'a self, point: &'a str) -> impl Iterator<Item = &'a Chart> + 'a {
        self.charts.iter().filter(move |c| c.image_point == point)
    }

    pub fn has_component(&self, id: &str) -> bool {
        self.components.iter().any(|c| c.id == id)
    }

    pub fn point_ids(&self) -> Vec<String> {
        self.ambient_points.iter().map(|p| p.id.clone()).collect()
    }

    /// Structural checks: unique ids, ranks, nonzero weights, chart images,
    /// boundary directions and the center.
    pub fn validate(&self) -> Result<(), ModelError> {
        check_unique("ambient point", self.ambient_points.iter().map(|p| &p.id))?;
        check_unique("chart", self.charts.iter().map(|c| &c.id))?;
        check_unique("component", self.components.iter().map(|c| &c.id))?;
        for p in &self.ambient_points {
            check_weights(
                &format!("ambient point {:?}", p.id),
                &p.tangent_weights,
                self.torus_rank,
            )?;
        }
        for c in &self.charts {
            check_weights(
                &format!("chart {:?}", c.id),
                &c.tangent_weights,
                self.torus_rank,
            )?;
            if self.point(&c.image_point).is_none() {
                return Err(ModelError::UnknownImagePoint {
                    chart: c.id.clone(),
                    point: c.image_point.clone(),
                });
            }
            let mut used = BTreeSet::new();
            for (&d, comp) in &c.boundary_of {
                if d >= c.dim() {
                    return Err(ModelError::DirectionOutOfRange {
                        chart: c.id.clone(),
                        direction: d,
                        dim: c.dim(),
                    });
                }
                if !self.has_component(comp) {
                    return Err(ModelError::UnknownComponent {
                        chart: c.id.clone(),
                        component: comp.clone(),
                    });
                }
                if !used.insert(comp) {
                    return Err(ModelError::RepeatedComponent {
                        chart: c.id.clone(),
                        component: comp.clone(),
                    });
                }
            }
        }
        if self.point(&self.center).is_none() {
            return Err(ModelError::UnknownCenter(self.center.clone()));
        }
        Ok(())
    }

    /// Support check plus agreement of divisor weights across the charts
    /// over each ambient point.
    pub fn validate_divisor(&self, d: &Divisor) -> Result<(), ModelError> {
        for comp in d.multiplicities.keys() {
            if !self.has_component(comp) {
                return Err(ModelError::DivisorComponent(comp.clone()));
            }
        }
        for p in &self.ambient_points {
            super::classes::divisor_weight_at_point(self, d, &p.id)?;
        }
        Ok(())
    }

    /// A component id not yet used, derived from `base`.
    pub fn fresh_component_id(&self, base: &str) -> String {
        let mut id = base.to_string();
        let mut k = 1;
        while self.has_component(&id) {
            id = format!("{base}{k}");
            k += 1;
        }
        id
    }
}
