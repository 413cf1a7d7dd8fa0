use std::cmp::Ordering;

use num_traits::{One, Signed, Zero};

use super::division::lp_divides;
use super::laurent::LaurentPoly;
use super::rational::format_rational;
use super::weight::{Monomial, Weight};
use crate::{Poly, Rational};

/// `^n` for nonnegative integers, `^{...}` otherwise.
pub fn format_exponent(e: &Rational) -> String {
    if e.is_integer() && !e.is_negative() {
        format!("^{}", e.numer())
    } else {
        format!("^{{{}}}", format_rational(e))
    }
}

fn torus_factors(w: &Weight) -> Vec<String> {
    if w.rank() == 1 {
        return vec![format!("t{}", format_exponent(&w.coords()[0]))];
    }
    w.coords()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| format!("t{}{}", i + 1, format_exponent(c)))
        .collect()
}

fn power(var: &str, k: i32) -> Option<String> {
    match k {
        0 => None,
        1 => Some(var.to_string()),
        k if k > 0 => Some(format!("{var}^{k}")),
        k => Some(format!("{var}^{{{k}}}")),
    }
}

fn term_body(m: &Monomial) -> Vec<String> {
    let mut parts = Vec::new();
    parts.extend(power("y", m.ydeg));
    parts.extend(power("h", m.hdeg));
    if !m.exponent.is_zero() {
        parts.extend(torus_factors(&m.exponent));
    }
    parts
}

fn display_order(a: &Monomial, b: &Monomial) -> Ordering {
    (a.ydeg, a.hdeg, &a.exponent).cmp(&(b.ydeg, b.hdeg, &b.exponent))
}

/// Term list sorted by `(ydeg, hdeg, exponent)`, e.g. `1 + y·t^1`.
pub fn format_poly(p: &Poly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut terms: Vec<(&Monomial, &Rational)> = p.terms().collect();
    terms.sort_by(|a, b| display_order(a.0, b.0));
    let mut out = String::new();
    for (i, (m, c)) in terms.into_iter().enumerate() {
        let body = term_body(m);
        let mag = c.abs();
        let mut factors = Vec::new();
        if !mag.is_one() || body.is_empty() {
            factors.push(format_rational(&mag));
        }
        factors.extend(body);
        let text = factors.join("·");
        match (i, c.is_negative()) {
            (0, false) => out.push_str(&text),
            (0, true) => {
                out.push('-');
                out.push_str(&text);
            }
            (_, false) => {
                out.push_str(" + ");
                out.push_str(&text);
            }
            (_, true) => {
                out.push_str(" - ");
                out.push_str(&text);
            }
        }
    }
    out
}

/// Writes `p` as `(1+y)^k·t^w` when it has that shape with `k ≥ 1`,
/// otherwise as a term list.
pub fn format_class(p: &Poly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let rank = p.rank();
    let one_plus_y = Poly::one(rank) + Poly::y(rank);
    let mut k = 0u32;
    let mut rest = p.clone();
    while let Ok(q) = lp_divides(&one_plus_y, &rest) {
        k += 1;
        rest = q;
    }
    if k > 0 {
        if let Some((m, c)) = rest.as_term() {
            if c.is_one() && m.ydeg == 0 && m.hdeg == 0 {
                let prefix = if k == 1 {
                    "(1+y)".to_string()
                } else {
                    format!("(1+y)^{k}")
                };
                if rank == 1 {
                    return format!("{prefix}·{}", torus_factors(&m.exponent).join("·"));
                }
                if m.exponent.is_zero() {
                    return prefix;
                }
                return format!("{prefix}·{}", torus_factors(&m.exponent).join("·"));
            }
        }
    }
    format_poly(p)
}

/// Term list for an arbitrary-rank polynomial with caller-chosen variable names.
pub fn format_with_names(p: &LaurentPoly<Rational>, names: &[&str]) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (m, c)) in p.terms().enumerate() {
        let mut factors: Vec<String> = Vec::new();
        let mag = c.abs();
        let mut body: Vec<String> = Vec::new();
        body.extend(power("y", m.ydeg));
        body.extend(power("h", m.hdeg));
        for (name, e) in names.iter().zip(m.exponent.coords()) {
            if !e.is_zero() {
                body.push(format!("{name}{}", format_exponent(e)));
            }
        }
        if !mag.is_one() || body.is_empty() {
            factors.push(format_rational(&mag));
        }
        factors.extend(body);
        let sep = match (i, c.is_negative()) {
            (0, false) => "",
            (0, true) => "-",
            (_, false) => " + ",
            (_, true) => " - ",
        };
        out.push_str(sep);
        out.push_str(&factors.join("·"));
    }
    out
}
