//! JSON model documents. Every rational is an exact `"p"` or `"p/q"` string.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::model::{
    AmbientFixedPoint, BoundaryComponent, Chart, Divisor, ModelError, ResolutionModel,
};
use crate::kalgebra::rational::{format_rational, parse_rational};
use crate::kalgebra::Weight;
use crate::Rational;

#[derive(Debug, Error)]
pub enum SerialError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{field}: {source}")]
    Rational {
        field: String,
        source: crate::kalgebra::rational::ParseRationalError,
    },
    #[error("chart {chart:?}: boundary key {key:?} is not a direction index")]
    BoundaryKey { chart: String, key: String },
    #[error("invalid model: {0}")]
    Model(#[from] ModelError),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPoint {
    id: String,
    tangent_weights: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawChart {
    id: String,
    image_point: String,
    tangent_weights: Vec<Vec<String>>,
    #[serde(default)]
    boundary_of: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSlope {
    n: u64,
    weights: BTreeMap<String, Vec<String>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    torus_rank: usize,
    components: Vec<String>,
    ambient_points: Vec<RawPoint>,
    charts: Vec<RawChart>,
    center: String,
    #[serde(default)]
    divisor: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    chamber: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    order: Option<Vec<(String, String)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    slope: Option<RawSlope>,
}

/// A model file: the resolution model, its divisor, and optional chamber,
/// order and slope data for envelope checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelDocument {
    pub model: ResolutionModel,
    pub divisor: Divisor,
    pub chamber: Option<Vec<i64>>,
    pub order: Option<Vec<(String, String)>>,
    /// `(n, w_e(L))` per ambient point.
    pub slope: Option<(u64, BTreeMap<String, Weight>)>,
}

fn parse_weight(field: &str, raw: &[String]) -> Result<Weight, SerialError> {
    raw.iter()
        .map(|s| {
            parse_rational(s).map_err(|source| SerialError::Rational {
                field: field.to_string(),
                source,
            })
        })
        .collect::<Result<Vec<Rational>, _>>()
        .map(Weight::new)
}

fn parse_weights(field: &str, raw: &[Vec<String>]) -> Result<Vec<Weight>, SerialError> {
    raw.iter().map(|w| parse_weight(field, w)).collect()
}

fn format_weight(w: &Weight) -> Vec<String> {
    w.coords().iter().map(format_rational).collect()
}

impl ModelDocument {
    pub fn new(model: ResolutionModel, divisor: Divisor) -> Self {
        ModelDocument {
            model,
            divisor,
            chamber: None,
            order: None,
            slope: None,
        }
    }

    /// Parses and validates a document.
    pub fn from_json(text: &str) -> Result<Self, SerialError> {
        let raw: RawDocument = serde_json::from_str(text)?;
        let ambient_points = raw
            .ambient_points
            .iter()
            .map(|p| {
                Ok(AmbientFixedPoint {
                    id: p.id.clone(),
                    tangent_weights: parse_weights(
                        &format!("ambient point {:?}", p.id),
                        &p.tangent_weights,
                    )?,
                })
            })
            .collect::<Result<Vec<_>, SerialError>>()?;
        let charts = raw
            .charts
            .iter()
            .map(|c| {
                let boundary_of = c
                    .boundary_of
                    .iter()
                    .map(|(k, v)| {
                        k.parse::<usize>().map(|d| (d, v.clone())).map_err(|_| {
                            SerialError::BoundaryKey {
                                chart: c.id.clone(),
                                key: k.clone(),
                            }
                        })
                    })
                    .collect::<Result<BTreeMap<_, _>, _>>()?;
                Ok(Chart {
                    id: c.id.clone(),
                    tangent_weights: parse_weights(
                        &format!("chart {:?}", c.id),
                        &c.tangent_weights,
                    )?,
                    boundary_of,
                    image_point: c.image_point.clone(),
                })
            })
            .collect::<Result<Vec<_>, SerialError>>()?;
        let model = ResolutionModel {
            torus_rank: raw.torus_rank,
            ambient_points,
            charts,
            components: raw
                .components
                .iter()
                .map(|id| BoundaryComponent { id: id.clone() })
                .collect(),
            center: raw.center.clone(),
        };
        let mut divisor = Divisor::zero();
        for (k, v) in &raw.divisor {
            let c = parse_rational(v).map_err(|source| SerialError::Rational {
                field: format!("divisor {k:?}"),
                source,
            })?;
            divisor.set(k, c);
        }
        let slope = match &raw.slope {
            None => None,
            Some(s) => {
                let mut weights = BTreeMap::new();
                for (k, w) in &s.weights {
                    weights.insert(k.clone(), parse_weight(&format!("slope weight {k:?}"), w)?);
                }
                Some((s.n, weights))
            }
        };
        model.validate()?;
        model.validate_divisor(&divisor)?;
        Ok(ModelDocument {
            model,
            divisor,
            chamber: raw.chamber.clone(),
            order: raw.order.clone(),
            slope,
        })
    }

    fn to_raw(&self) -> RawDocument {
        let m = &self.model;
        RawDocument {
            torus_rank: m.torus_rank,
            components: m.components.iter().map(|c| c.id.clone()).collect(),
            ambient_points: m
                .ambient_points
                .iter()
                .map(|p| RawPoint {
                    id: p.id.clone(),
                    tangent_weights: p.tangent_weights.iter().map(format_weight).collect(),
                })
                .collect(),
            charts: m
                .charts
                .iter()
                .map(|c| RawChart {
                    id: c.id.clone(),
                    image_point: c.image_point.clone(),
                    tangent_weights: c.tangent_weights.iter().map(format_weight).collect(),
                    boundary_of: c
                        .boundary_of
                        .iter()
                        .map(|(k, v)| (k.to_string(), v.clone()))
                        .collect(),
                })
                .collect(),
            center: m.center.clone(),
            divisor: self
                .divisor
                .multiplicities
                .iter()
                .map(|(k, v)| (k.clone(), format_rational(v)))
                .collect(),
            chamber: self.chamber.clone(),
            order: self.order.clone(),
            slope: self.slope.as_ref().map(|(n, w)| RawSlope {
                n: *n,
                weights: w
                    .iter()
                    .map(|(k, v)| (k.clone(), format_weight(v)))
                    .collect(),
            }),
        }
    }

    /// Canonical text: pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_raw()).expect("plain data serializes");
        s.push('\n');
        s
    }

    /// JSON value of the document, for embedding in reports.
    pub fn to_value(&self) -> serde_json::Value {
        serde_json::to_value(self.to_raw()).expect("plain data serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kalgebra::rational::rat;
    use crate::library;

    #[test]
    fn round_trip_is_byte_identical() {
        let mut doc = ModelDocument::new(library::p1(), Divisor::single("D0", rat(1, 2)));
        doc.chamber = Some(vec![-1]);
        doc.order = Some(vec![("0".into(), "inf".into())]);
        let text = doc.to_json();
        let back = ModelDocument::from_json(&text).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.to_json(), text);
    }

    #[test]
    fn rejects_floats_and_bad_models() {
        let doc = ModelDocument::new(library::p1(), Divisor::single("D0", rat(1, 2)));
        let text = doc.to_json().replace("\"1/2\"", "0.5");
        assert!(ModelDocument::from_json(&text).is_err());
        let text = doc
            .to_json()
            .replace("\"image_point\": \"0\"", "\"image_point\": \"zz\"");
        assert!(matches!(
            ModelDocument::from_json(&text),
            Err(SerialError::Model(_))
        ));
    }
}
