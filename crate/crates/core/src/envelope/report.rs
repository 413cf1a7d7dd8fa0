use serde::Serialize;

use super::checks::{
    divisibility_check, divisor_from_slope, newton_inclusion_check, normalization_check,
    support_check,
};
use super::order::{Chamber, PartialOrder};
use super::{EnvelopeError, Slope};
use crate::kalgebra::display::{format_class, format_poly};
use crate::kalgebra::rational::format_rational;
use crate::kalgebra::Weight;
use crate::localization::{localized_class, Divisor, ModelDocument, ResolutionModel};
use crate::polytope::Violation;
use crate::Poly;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TermJson {
    pub coefficient: String,
    pub exponent: Vec<String>,
    pub y: i32,
    pub h: i32,
}

/// A Laurent polynomial as display text plus its exact term list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PolyJson {
    pub text: String,
    pub terms: Vec<TermJson>,
}

impl PolyJson {
    pub fn new(p: &Poly) -> Self {
        PolyJson {
            text: format_poly(p),
            terms: p
                .terms()
                .map(|(m, c)| TermJson {
                    coefficient: format_rational(c),
                    exponent: weight_strings(&m.exponent),
                    y: m.ydeg,
                    h: m.hdeg,
                })
                .collect(),
        }
    }
}

fn weight_strings(w: &Weight) -> Vec<String> {
    w.coords().iter().map(format_rational).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NormalizationJson {
    pub pass: bool,
    pub class: PolyJson,
    pub expected: PolyJson,
    pub dplus: usize,
    pub rescaled: PolyJson,
    pub target: PolyJson,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NewtonJson {
    pub pass: bool,
    pub strict: Option<bool>,
    pub shift: Vec<String>,
    pub witness: Option<Violation>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DivisibilityJson {
    pub pass: bool,
    pub divisor: PolyJson,
    pub quotient: Option<PolyJson>,
    pub remainder: Option<PolyJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SupportJson {
    pub pass: bool,
    pub checked: Vec<String>,
    pub violations: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    Center,
    Below,
    NotBelow,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PointReport {
    pub id: String,
    pub relation: Relation,
    pub class: PolyJson,
    /// `(1+y)^k·t^w` form when the class has it.
    pub class_text: String,
    pub newton: Option<NewtonJson>,
    pub divisibility: Option<DivisibilityJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EnvelopeReport {
    pub pass: bool,
    pub center: String,
    pub chamber: Chamber,
    pub normalization: NormalizationJson,
    pub support: SupportJson,
    pub points: Vec<PointReport>,
    pub input: serde_json::Value,
}

impl EnvelopeReport {
    /// Short human-readable verdict list.
    pub fn summary(&self) -> String {
        let mark = |b: bool| if b { "pass" } else { "FAIL" };
        let mut out = format!(
            "center {}: normalization {}, support {}\n",
            self.center,
            mark(self.normalization.pass),
            mark(self.support.pass)
        );
        for p in &self.points {
            out.push_str(&format!("  {} = {}", p.id, p.class_text));
            if let Some(n) = &p.newton {
                let strict = match n.strict {
                    Some(true) => " (interior)",
                    _ => "",
                };
                out.push_str(&format!("; newton {}{strict}", mark(n.pass)));
                if let Some(v) = &n.witness {
                    out.push_str(&format!(" [witness: {}]", v.separator));
                }
            }
            if let Some(d) = &p.divisibility {
                out.push_str(&format!("; divisibility {}", mark(d.pass)));
            }
            out.push('\n');
        }
        out.push_str(if self.pass {
            "overall: pass\n"
        } else {
            "overall: FAIL\n"
        });
        out
    }
}

/// Runs every axiom check for the model's center: normalization there,
/// Newton inclusion and divisibility at each point strictly below, and
/// support everywhere. The divisor is derived from the slope when absent.
pub fn full_axiom_report(
    model: &ResolutionModel,
    divisor: Option<&Divisor>,
    slope: Option<&Slope>,
    chamber: &Chamber,
    order: &PartialOrder,
) -> Result<EnvelopeReport, EnvelopeError> {
    model.validate()?;
    chamber.validate_for(model)?;
    let d = match (divisor, slope) {
        (Some(d), _) => d.clone(),
        (None, Some(s)) => divisor_from_slope(model, s)?,
        (None, None) => return Err(EnvelopeError::NoDivisor),
    };
    model.validate_divisor(&d)?;
    let e0 = model.center.clone();
    let norm = normalization_check(model, &d, chamber)?;
    let support = support_check(model, &d, order, &e0)?;
    let mut pass = norm.pass && support.pass;
    let mut points = Vec::new();
    for p in &model.ambient_points {
        let class = localized_class(model, &d, &p.id)?;
        let relation = if p.id == e0 {
            Relation::Center
        } else if order.leq(&p.id, &e0) {
            Relation::Below
        } else {
            Relation::NotBelow
        };
        let (newton, divisibility) = if relation == Relation::Below {
            let n = newton_inclusion_check(model, &d, slope, &p.id, &e0)?;
            let v = divisibility_check(model, &d, chamber, &p.id)?;
            pass &= n.pass && v.pass;
            (
                Some(NewtonJson {
                    pass: n.pass,
                    strict: n.strict,
                    shift: weight_strings(&n.shift),
                    witness: n.witness,
                }),
                Some(DivisibilityJson {
                    pass: v.pass,
                    divisor: PolyJson::new(&v.divisor),
                    quotient: v.quotient.as_ref().map(PolyJson::new),
                    remainder: v.remainder.as_ref().map(PolyJson::new),
                }),
            )
        } else {
            (None, None)
        };
        points.push(PointReport {
            id: p.id.clone(),
            relation,
            class_text: format_class(&class),
            class: PolyJson::new(&class),
            newton,
            divisibility,
        });
    }
    let mut doc = ModelDocument::new(model.clone(), d);
    doc.chamber = Some(chamber.sigma.clone());
    doc.order = Some(order.pairs());
    doc.slope = slope.map(|s| (s.n, s.weights.clone()));
    Ok(EnvelopeReport {
        pass,
        center: e0,
        chamber: chamber.clone(),
        normalization: NormalizationJson {
            pass: norm.pass,
            class: PolyJson::new(&norm.class),
            expected: PolyJson::new(&norm.expected),
            dplus: norm.dplus,
            rescaled: PolyJson::new(&norm.rescaled),
            target: PolyJson::new(&norm.target),
        },
        support: SupportJson {
            pass: support.pass,
            checked: support.checked,
            violations: support.violations,
        },
        points,
        input: doc.to_value(),
    })
}
