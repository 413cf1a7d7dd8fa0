use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use twistmc::elliptic::{
    check_delta_identities, check_delta_theta_relation, check_order, delta_numeric_limit,
    delta_series, elliptic_vs_mc_numeric, format_xy, EllipticError, LimitTable, NUMERIC_ORDER,
};
use twistmc::envelope::{
    divisor_from_slope, full_axiom_report, Chamber, EnvelopeError, PartialOrder, Slope,
};
use twistmc::kalgebra::display::{format_class, format_poly};
use twistmc::kalgebra::rational::parse_rational;
use twistmc::library::{self, LibraryError};
use twistmc::localization::{
    chi_via_localization, projective_space, pushforward_invariance_check, Divisor,
    LocalizationError, ModelDocument, ResolutionModel, SerialError,
};
use twistmc::Rational;

use crate::{SlopeMode, Source};

pub const PASS: u8 = 0;
pub const FAIL: u8 = 1;
pub const INVALID: u8 = 2;
pub const NON_POLYNOMIAL: u8 = 3;

pub struct CliError {
    pub code: u8,
    pub message: String,
}

fn invalid(message: impl Into<String>) -> CliError {
    CliError {
        code: INVALID,
        message: message.into(),
    }
}

impl From<LocalizationError> for CliError {
    fn from(e: LocalizationError) -> Self {
        let code = match e {
            LocalizationError::NonPolynomial { .. } => NON_POLYNOMIAL,
            _ => INVALID,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

impl From<EnvelopeError> for CliError {
    fn from(e: EnvelopeError) -> Self {
        match e {
            EnvelopeError::Localization(l) => l.into(),
            other => invalid(other.to_string()),
        }
    }
}

impl From<LibraryError> for CliError {
    fn from(e: LibraryError) -> Self {
        invalid(e.to_string())
    }
}

impl From<SerialError> for CliError {
    fn from(e: SerialError) -> Self {
        invalid(e.to_string())
    }
}

impl From<EllipticError> for CliError {
    fn from(e: EllipticError) -> Self {
        invalid(e.to_string())
    }
}

type CliResult = Result<u8, CliError>;

/// Everything a command may need from an example or a model file.
struct Loaded {
    model: ResolutionModel,
    divisor: Option<Divisor>,
    slope: Option<Slope>,
    chamber: Option<Chamber>,
    order: Option<PartialOrder>,
}

fn parse_slope_values(text: &str) -> Result<Vec<Rational>, CliError> {
    text.split(',')
        .map(|s| parse_rational(s.trim()).map_err(|e| invalid(format!("--lambda: {e}"))))
        .collect()
}

fn read_document(path: &Path) -> Result<ModelDocument, CliError> {
    let text = fs::read_to_string(path).map_err(|e| invalid(format!("{}: {e}", path.display())))?;
    Ok(ModelDocument::from_json(&text)?)
}

fn from_document(doc: ModelDocument) -> Result<Loaded, CliError> {
    let slope = match doc.slope {
        Some((n, weights)) => Some(Slope::new(n, weights)?),
        None => None,
    };
    let order = match &doc.order {
        Some(pairs) => Some(PartialOrder::new(&doc.model.point_ids(), pairs)?),
        None => None,
    };
    // An empty divisor with a slope means "derive the divisor".
    let divisor = if doc.divisor == Divisor::zero() && slope.is_some() {
        None
    } else {
        Some(doc.divisor)
    };
    Ok(Loaded {
        model: doc.model,
        divisor,
        slope,
        chamber: doc.chamber.map(Chamber::new),
        order,
    })
}

fn load(source: &Source, mode: Option<SlopeMode>) -> Result<Loaded, CliError> {
    match (&source.example, &source.model) {
        (Some(name), None) => {
            let values = match (mode, &source.lambda) {
                (Some(SlopeMode::Generic), Some(_)) => {
                    return Err(invalid("--slope generic conflicts with --lambda"))
                }
                (Some(SlopeMode::Rational), None) => {
                    return Err(invalid("--slope rational needs --lambda"))
                }
                (_, Some(text)) => parse_slope_values(text)?,
                (_, None) => library::generic_slope(name)?,
            };
            let ex = library::named_example(name, source.cell.as_deref(), &values, source.r)?;
            Ok(Loaded {
                model: ex.model,
                divisor: Some(ex.divisor),
                slope: ex.slope,
                chamber: Some(ex.chamber),
                order: Some(ex.order),
            })
        }
        (None, Some(path)) => {
            if source.lambda.is_some() || source.cell.is_some() {
                return Err(invalid(
                    "--lambda and --cell apply to built-in examples only",
                ));
            }
            if mode == Some(SlopeMode::Generic) {
                return Err(invalid("--slope generic applies to built-in examples only"));
            }
            from_document(read_document(path)?)
        }
        _ => Err(invalid("give exactly one of --example or --model")),
    }
}

fn resolve_divisor(loaded: &Loaded) -> Result<Divisor, CliError> {
    match (&loaded.divisor, &loaded.slope) {
        (Some(d), _) => Ok(d.clone()),
        (None, Some(s)) => Ok(divisor_from_slope(&loaded.model, s)?),
        (None, None) => Ok(Divisor::zero()),
    }
}

pub fn compute(source: &Source, point: Option<&str>) -> CliResult {
    let loaded = load(source, None)?;
    let d = resolve_divisor(&loaded)?;
    let model = &loaded.model;
    model.validate().map_err(|e| invalid(e.to_string()))?;
    model
        .validate_divisor(&d)
        .map_err(|e| invalid(e.to_string()))?;
    match point {
        Some(p) => {
            if model.point(p).is_none() {
                return Err(invalid(format!("unknown ambient point {p:?}")));
            }
            let class = twistmc::localization::localized_class(model, &d, p)?;
            println!("{}", format_class(&class));
        }
        None => {
            for p in &model.ambient_points {
                let class = twistmc::localization::localized_class(model, &d, &p.id)?;
                println!("{}: {}", p.id, format_class(&class));
            }
        }
    }
    Ok(PASS)
}

fn parse_chamber(text: &str) -> Result<Chamber, CliError> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<i64>()
                .map_err(|e| invalid(format!("--chamber: {e}")))
        })
        .collect::<Result<Vec<_>, _>>()
        .map(Chamber::new)
}

pub fn check(
    source: &Source,
    mode: Option<SlopeMode>,
    chamber: Option<&str>,
    out: Option<&Path>,
) -> CliResult {
    if source.example.as_deref() == Some("blowup-demo") {
        return Err(invalid(
            "blowup-demo is a single affine chart with boundary through its only fixed point; \
             it has no stable-envelope axioms to check (use blowup-test)",
        ));
    }
    let loaded = load(source, mode)?;
    let chamber = match chamber {
        Some(text) => parse_chamber(text)?,
        None => loaded
            .chamber
            .clone()
            .ok_or_else(|| invalid("no chamber: give --chamber or a \"chamber\" field"))?,
    };
    let order = match &loaded.order {
        Some(o) => o.clone(),
        None => PartialOrder::new(&loaded.model.point_ids(), &[])?,
    };
    let report = full_axiom_report(
        &loaded.model,
        loaded.divisor.as_ref(),
        loaded.slope.as_ref(),
        &chamber,
        &order,
    )?;
    let mut json = serde_json::to_string_pretty(&report).expect("report serializes");
    json.push('\n');
    match out {
        Some(path) => {
            fs::write(path, &json).map_err(|e| invalid(format!("{}: {e}", path.display())))?
        }
        None => print!("{json}"),
    }
    eprint!("{}", report.summary());
    Ok(if report.pass { PASS } else { FAIL })
}

fn parse_range(text: &str) -> Result<(u32, u32), CliError> {
    let bad = || invalid(format!("--s: expected a..b, got {text:?}"));
    let (a, b) = text.split_once("..").ok_or_else(bad)?;
    let a: u32 = a.trim().parse().map_err(|_| bad())?;
    let b: u32 = b.trim().parse().map_err(|_| bad())?;
    if a > b {
        return Err(bad());
    }
    Ok((a, b))
}

pub fn blowup_test(r: usize, s: Option<&str>) -> CliResult {
    if r < 2 {
        return Err(invalid(format!("--r must be at least 2, got {r}")));
    }
    let (lo, hi) = match s {
        Some(text) => parse_range(text)?,
        None => (0, r as u32),
    };
    let model = library::blowup_demo(r);
    let center: Vec<usize> = (0..r).collect();
    let mut code = PASS;
    for s in lo..=hi {
        let rep = pushforward_invariance_check(&model, &Divisor::zero(), "U", &center, s)?;
        let expected = (s as usize) < r;
        let verdict = if rep.invariant {
            "invariant"
        } else {
            "not invariant"
        };
        let note = if expected {
            ""
        } else {
            " (twist beyond the codimension)"
        };
        println!("r={r} s={s}: {verdict}{note}");
        if expected && !rep.invariant {
            code = FAIL;
        }
    }
    Ok(code)
}

pub fn chi(r: usize, m: i64) -> CliResult {
    if r == 0 {
        return Err(invalid("--r must be positive"));
    }
    let poly = chi_via_localization(r, &projective_space(r, m))?;
    println!("{}", format_poly(&poly));
    Ok(PASS)
}

fn parse_assignments(items: &[String]) -> Result<BTreeMap<String, String>, CliError> {
    items
        .iter()
        .map(|s| {
            s.split_once('=')
                .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
                .ok_or_else(|| invalid(format!("expected key=value, got {s:?}")))
        })
        .collect()
}

fn float_arg(map: &BTreeMap<String, String>, key: &str, default: f64) -> Result<f64, CliError> {
    match map.get(key) {
        Some(v) => v
            .parse()
            .map_err(|_| invalid(format!("{key}={v} is not a number"))),
        None => Ok(default),
    }
}

fn rational_arg(map: &BTreeMap<String, String>, key: &str) -> Result<Rational, CliError> {
    let v = map
        .get(key)
        .ok_or_else(|| invalid(format!("missing {key}=...")))?;
    parse_rational(v).map_err(|e| invalid(format!("{key}: {e}")))
}

fn print_table(t: &LimitTable) {
    println!("{} (target {})", t.label, t.target);
    println!("  {:>10}  {:>22}  {:>12}", "q", "value", "error");
    for row in &t.rows {
        println!(
            "  {:>10.3e}  {:>22.15}  {:>12.3e}",
            row.q, row.value, row.error
        );
    }
}

pub fn elliptic(
    order: Option<usize>,
    identities: bool,
    limit: Option<&[String]>,
    mc: Option<&[String]>,
    qs: &[f64],
    show: Option<&str>,
) -> CliResult {
    if let Some(n) = order {
        check_order(n)?;
    }
    let run_identities = identities || (limit.is_none() && mc.is_none() && show.is_none());
    let mut code = PASS;
    if let Some(which) = show {
        let n: usize = which
            .strip_prefix('q')
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| invalid(format!("--show expects q0, q1, ..., got {which:?}")))?;
        check_order(n)?;
        let delta = delta_series(n.max(1));
        if n == 0 {
            let lead = delta.leading();
            println!("({}) / ({})", format_xy(lead.num()), format_xy(lead.den()));
        } else {
            println!("{}", format_xy(delta.coefficient(n).expect("within order")));
        }
    }
    if run_identities {
        let n = order.unwrap_or(8);
        let delta = delta_series(n);
        let ids = check_delta_identities(&delta);
        let relation = check_delta_theta_relation(&delta);
        let mark = |b: bool| if b { "pass" } else { "FAIL" };
        println!("order {n}");
        println!("symmetry: {}", mark(ids.symmetry));
        println!("antisymmetry: {}", mark(ids.antisymmetry));
        println!(
            "periodicity: {} ({} terms compared)",
            mark(ids.periodicity && ids.periodicity_terms > 0),
            ids.periodicity_terms
        );
        println!("theta relation: {}", mark(relation));
        if !(ids.pass() && relation) {
            code = FAIL;
        }
    }
    let numeric_order = order.unwrap_or(NUMERIC_ORDER);
    if let Some(items) = limit {
        let args = parse_assignments(items)?;
        let d = rational_arg(&args, "d")?;
        let x = float_arg(&args, "x", 2.0)?;
        let table = delta_numeric_limit(&d, x, qs, numeric_order)?;
        print_table(&table);
        let decreasing = table.strictly_decreasing();
        let small = table.final_error().is_some_and(|e| e < 1e-6);
        println!(
            "strictly decreasing: {}",
            if decreasing { "yes" } else { "no" }
        );
        println!(
            "final error below 1e-6: {}",
            if small { "yes" } else { "no" }
        );
        if !(decreasing && small) {
            code = FAIL;
        }
    }
    if let Some(items) = mc {
        let args = parse_assignments(items)?;
        let lambda = rational_arg(&args, "lambda")?;
        let t = float_arg(&args, "t", 2.0)?;
        let y = float_arg(&args, "y", 0.3)?;
        for table in elliptic_vs_mc_numeric(&lambda, t, y, qs, numeric_order)? {
            print_table(&table);
            let decreasing = table.strictly_decreasing();
            println!(
                "strictly decreasing: {}",
                if decreasing { "yes" } else { "no" }
            );
            if !decreasing {
                code = FAIL;
            }
        }
    }
    Ok(code)
}

pub fn validate(path: &Path, canonical: bool) -> CliResult {
    let doc = read_document(path)?;
    if let Some(sigma) = &doc.chamber {
        Chamber::new(sigma.clone()).validate_for(&doc.model)?;
    }
    if let Some(pairs) = &doc.order {
        PartialOrder::new(&doc.model.point_ids(), pairs)?;
    }
    if let Some((n, weights)) = &doc.slope {
        Slope::new(*n, weights.clone())?;
    }
    if canonical {
        print!("{}", doc.to_json());
    } else {
        println!(
            "valid: {} fixed points, {} charts, {} boundary components",
            doc.model.ambient_points.len(),
            doc.model.charts.len(),
            doc.model.components.len()
        );
    }
    Ok(PASS)
}
