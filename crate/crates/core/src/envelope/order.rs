use std::collections::BTreeSet;

use serde::Serialize;

use super::EnvelopeError;
use crate::kalgebra::Weight;
use crate::localization::{AmbientFixedPoint, ResolutionModel};

/// A cocharacter `σ` fixing the attracting directions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Chamber {
    pub sigma: Vec<i64>,
}

impl Chamber {
    pub fn new(sigma: Vec<i64>) -> Self {
        Chamber { sigma }
    }

    /// Checks `σ·w ≠ 0` for every tangent weight of every ambient point.
    pub fn validate_for(&self, model: &ResolutionModel) -> Result<(), EnvelopeError> {
        if self.sigma.len() != model.torus_rank {
            return Err(EnvelopeError::ChamberRank {
                found: self.sigma.len(),
                expected: model.torus_rank,
            });
        }
        for p in &model.ambient_points {
            split_tangent(p, self)?;
        }
        Ok(())
    }
}

/// Partition of the tangent weights at `e` by the sign of `σ·w`:
/// `(positive, negative)`.
pub fn split_tangent(
    e: &AmbientFixedPoint,
    chamber: &Chamber,
) -> Result<(Vec<Weight>, Vec<Weight>), EnvelopeError> {
    let mut plus = Vec::new();
    let mut minus = Vec::new();
    for w in &e.tangent_weights {
        if w.rank() != chamber.sigma.len() {
            return Err(EnvelopeError::ChamberRank {
                found: chamber.sigma.len(),
                expected: w.rank(),
            });
        }
        let v = w.pair(&chamber.sigma);
        if v > num_traits::Zero::zero() {
            plus.push(w.clone());
        } else if v < num_traits::Zero::zero() {
            minus.push(w.clone());
        } else {
            return Err(EnvelopeError::NonGenericChamber {
                point: e.id.clone(),
                weight: w.to_string(),
            });
        }
    }
    Ok((plus, minus))
}

/// Reflexive, transitive order on ambient point ids, given by generating
/// pairs `(a, b)` meaning `a ≤ b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialOrder {
    points: BTreeSet<String>,
    relation: BTreeSet<(String, String)>,
}

impl PartialOrder {
    pub fn new(points: &[String], pairs: &[(String, String)]) -> Result<Self, EnvelopeError> {
        let known: BTreeSet<String> = points.iter().cloned().collect();
        let mut relation: BTreeSet<(String, String)> = BTreeSet::new();
        for p in &known {
            relation.insert((p.clone(), p.clone()));
        }
        for (a, b) in pairs {
            for x in [a, b] {
                if !known.contains(x) {
                    return Err(EnvelopeError::UnknownPoint(x.clone()));
                }
            }
            relation.insert((a.clone(), b.clone()));
        }
        // Warshall closure.
        let ids: Vec<&String> = known.iter().collect();
        for k in &ids {
            for i in &ids {
                if !relation.contains(&((*i).clone(), (*k).clone())) {
                    continue;
                }
                for j in &ids {
                    if relation.contains(&((*k).clone(), (*j).clone())) {
                        relation.insert(((*i).clone(), (*j).clone()));
                    }
                }
            }
        }
        for (a, b) in &relation {
            if a != b && relation.contains(&(b.clone(), a.clone())) {
                return Err(EnvelopeError::OrderCycle {
                    a: a.clone(),
                    b: b.clone(),
                });
            }
        }
        Ok(PartialOrder {
            points: known,
            relation,
        })
    }

    pub fn leq(&self, a: &str, b: &str) -> bool {
        self.relation.contains(&(a.to_string(), b.to_string()))
    }

    /// Generating pairs of the closure without the diagonal.
    pub fn pairs(&self) -> Vec<(String, String)> {
        self.relation
            .iter()
            .filter(|(a, b)| a != b)
            .cloned()
            .collect()
    }

    pub fn points(&self) -> impl Iterator<Item = &String> {
        self.points.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ids(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn splitting() {
        let p0 = AmbientFixedPoint {
            id: "0".into(),
            tangent_weights: vec![Weight::from_ints(&[1])],
        };
        let (plus, minus) = split_tangent(&p0, &Chamber::new(vec![1])).unwrap();
        assert_eq!((plus.len(), minus.len()), (1, 0));
        let pinf = AmbientFixedPoint {
            id: "inf".into(),
            tangent_weights: vec![Weight::from_ints(&[-1])],
        };
        let (plus, minus) = split_tangent(&pinf, &Chamber::new(vec![1])).unwrap();
        assert_eq!((plus.len(), minus.len()), (0, 1));
        let q = AmbientFixedPoint {
            id: "q".into(),
            tangent_weights: vec![Weight::from_ints(&[1, 0]), Weight::from_ints(&[0, -1])],
        };
        let (plus, minus) = split_tangent(&q, &Chamber::new(vec![1, 1])).unwrap();
        assert_eq!(plus, vec![Weight::from_ints(&[1, 0])]);
        assert_eq!(minus, vec![Weight::from_ints(&[0, -1])]);
        assert!(split_tangent(&q, &Chamber::new(vec![0, 1])).is_err());
    }

    #[test]
    fn closure_and_cycles() {
        let pts = ids(&["a", "b", "c"]);
        let o =
            PartialOrder::new(&pts, &[("a".into(), "b".into()), ("b".into(), "c".into())]).unwrap();
        assert!(o.leq("a", "c"));
        assert!(o.leq("b", "b"));
        assert!(!o.leq("c", "a"));
        assert!(
            PartialOrder::new(&pts, &[("a".into(), "b".into()), ("b".into(), "a".into())]).is_err()
        );
        assert!(PartialOrder::new(&pts, &[("a".into(), "z".into())]).is_err());
    }
}
