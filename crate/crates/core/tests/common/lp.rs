//! Minimal reader for the LP text the exporter writes, enough to substitute a
//! 0/1 assignment and check every row exactly.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

/// Coefficients in 1e-9 units.
pub type Terms = Vec<(i128, String)>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Sense {
    Le,
    Eq,
    Ge,
}

#[derive(Debug, Clone)]
pub struct Row {
    pub name: String,
    pub terms: Terms,
    pub sense: Sense,
    pub rhs: i128,
}

#[derive(Debug, Default)]
pub struct Lp {
    pub objective: Terms,
    pub rows: Vec<Row>,
    pub fixed: BTreeMap<String, i128>,
    pub binaries: BTreeSet<String>,
}

const UNIT: i128 = 1_000_000_000;

fn decimal(text: &str) -> i128 {
    let (int, frac) = text.split_once('.').unwrap_or((text, ""));
    assert!(frac.len() <= 9, "coefficient {text} has more than 9 digits");
    let mut units: i128 = int.parse::<i128>().unwrap() * UNIT;
    let padded = format!("{frac:0<9}");
    units += padded.parse::<i128>().unwrap();
    units
}

fn parse_terms(body: &str) -> Terms {
    let mut terms = Vec::new();
    let mut sign = 1;
    let mut coef: Option<i128> = None;
    for tok in body.split_whitespace() {
        match tok {
            "+" => sign = 1,
            "-" => sign = -1,
            t if t.starts_with(|c: char| c.is_ascii_digit()) => coef = Some(decimal(t)),
            var => {
                terms.push((sign * coef.take().unwrap_or(UNIT), var.to_string()));
                sign = 1;
            }
        }
    }
    terms
}

/// Joins indented continuation lines onto their row.
fn logical_lines(text: &str) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for line in text.lines() {
        if line.starts_with('\\') || line.trim().is_empty() {
            continue;
        }
        if line.starts_with("   ") && !out.is_empty() {
            let last = out.last_mut().unwrap();
            last.push(' ');
            last.push_str(line.trim());
        } else {
            out.push(line.to_string());
        }
    }
    out
}

pub fn parse(text: &str) -> Lp {
    let mut lp = Lp::default();
    let mut section = String::new();
    for line in logical_lines(text) {
        let line = line.trim();
        if let s @ ("Minimize" | "Subject To" | "Bounds" | "Binary" | "End") = line {
            section = s.to_string();
            continue;
        }
        match section.as_str() {
            "Minimize" => {
                let (_, body) = line.split_once(':').expect("named objective");
                lp.objective = parse_terms(body);
            }
            "Subject To" => {
                let (name, body) = line.split_once(':').expect("named row");
                let (lhs, sense, rhs) = ["<=", ">=", "="]
                    .iter()
                    .find_map(|op| body.split_once(op).map(|(l, r)| (l, *op, r)))
                    .expect("row has a sense");
                lp.rows.push(Row {
                    name: name.trim().to_string(),
                    terms: parse_terms(lhs),
                    sense: match sense {
                        "<=" => Sense::Le,
                        ">=" => Sense::Ge,
                        _ => Sense::Eq,
                    },
                    rhs: decimal(rhs.trim()),
                });
            }
            "Bounds" => {
                let (var, value) = line.split_once('=').expect("fixed bound");
                lp.fixed.insert(var.trim().to_string(), decimal(value.trim()));
            }
            "Binary" => lp.binaries.extend(line.split_whitespace().map(str::to_string)),
            other => panic!("unexpected line in section {other:?}: {line}"),
        }
    }
    lp
}

impl Lp {
    /// Checks every row and bound at the 0/1 point where `ones` are 1.
    /// Returns the objective value (in whole units) or the first violation.
    pub fn check(&self, ones: &BTreeSet<String>) -> Result<i128, String> {
        for v in ones {
            if !self.binaries.contains(v) {
                return Err(format!("{v} is not a declared variable"));
            }
        }
        let value =
            |terms: &Terms| -> i128 { terms.iter().filter(|(_, v)| ones.contains(v)).map(|(c, _)| *c).sum() };
        for row in &self.rows {
            let lhs = value(&row.terms);
            let ok = match row.sense {
                Sense::Le => lhs <= row.rhs,
                Sense::Ge => lhs >= row.rhs,
                Sense::Eq => lhs == row.rhs,
            };
            if !ok {
                return Err(format!("row {} violated: {lhs} vs {}", row.name, row.rhs));
            }
        }
        for (v, fixed) in &self.fixed {
            let x = if ones.contains(v) { UNIT } else { 0 };
            if x != *fixed {
                return Err(format!("bound on {v} violated"));
            }
        }
        Ok(value(&self.objective) / UNIT)
    }
}
