//! Boolean linear program for two-bar instances, written in LP text format.
//!
//! `x_i_j = 1` when chart `i` starts in cell `j`, `y_j = 1` when cell `j` is
//! used. The horizon is `J = 2n` cells: laying all charts end to end already
//! fits, so some optimum does too. Starts in cell `J` would push a second bar
//! out of the horizon, so those variables are fixed to 0 in `Bounds`.

use std::fmt::Write;

use crate::error::Result;
use crate::height::Height;
use crate::model::Instance;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlpModel {
    first: Vec<Height>,
    second: Vec<Height>,
}

impl BlpModel {
    pub fn new(instance: &Instance) -> Result<Self> {
        instance.require_two_bar()?;
        Ok(BlpModel {
            first: instance.charts().iter().map(|c| c.a()).collect(),
            second: instance.charts().iter().map(|c| c.b()).collect(),
        })
    }

    pub fn charts(&self) -> usize {
        self.first.len()
    }

    pub fn horizon(&self) -> usize {
        2 * self.charts()
    }

    pub fn x_variables(&self) -> usize {
        self.charts() * self.horizon()
    }

    pub fn y_variables(&self) -> usize {
        self.horizon()
    }

    pub fn assignment_rows(&self) -> usize {
        self.charts()
    }

    pub fn capacity_rows(&self) -> usize {
        self.horizon()
    }

    pub fn x_name(chart: usize, cell: usize) -> String {
        format!("x_{chart}_{cell}")
    }

    pub fn y_name(cell: usize) -> String {
        format!("y_{cell}")
    }

    pub fn to_lp(&self) -> String {
        let n = self.charts();
        let horizon = self.horizon();
        let mut out = String::new();
        let _ = writeln!(out, "\\ Two-bar chart packing: {n} charts, {horizon} cells");
        out.push_str("Minimize\n");
        let obj: Vec<String> = (1..=horizon).map(Self::y_name).collect();
        write_row(&mut out, "obj", &join_plus(&obj), "");

        out.push_str("Subject To\n");
        for i in 0..n {
            let terms: Vec<String> = (1..=horizon).map(|j| Self::x_name(i, j)).collect();
            write_row(&mut out, &format!("assign_{i}"), &join_plus(&terms), " = 1");
        }
        for j in 1..=horizon {
            let mut terms: Vec<String> =
                (0..n).map(|i| format!("{} {}", self.first[i], Self::x_name(i, j))).collect();
            if j > 1 {
                terms.extend((0..n).map(|k| format!("{} {}", self.second[k], Self::x_name(k, j - 1))));
            }
            let mut row = join_plus(&terms);
            row.push(format!("- {}", Self::y_name(j)));
            write_row(&mut out, &format!("cap_{j}"), &row, " <= 0");
        }

        out.push_str("Bounds\n");
        for i in 0..n {
            let _ = writeln!(out, " {} = 0", Self::x_name(i, horizon));
        }

        out.push_str("Binary\n");
        let mut vars: Vec<String> = Vec::with_capacity(self.x_variables() + horizon);
        for i in 0..n {
            vars.extend((1..=horizon).map(|j| Self::x_name(i, j)));
        }
        vars.extend((1..=horizon).map(Self::y_name));
        for line in vars.chunks(10) {
            let _ = writeln!(out, " {}", line.join(" "));
        }
        out.push_str("End\n");
        out
    }
}

pub fn export_blp(instance: &Instance) -> Result<String> {
    Ok(BlpModel::new(instance)?.to_lp())
}

fn join_plus(terms: &[String]) -> Vec<String> {
    terms.iter().enumerate().map(|(k, t)| if k == 0 { t.clone() } else { format!("+ {t}") }).collect()
}

/// Writes `name: t1 t2 ...` wrapping every 8 terms; continuation lines are
/// indented, which LP readers treat as part of the same row.
fn write_row(out: &mut String, name: &str, terms: &[String], tail: &str) {
    let _ = write!(out, " {name}:");
    for (k, chunk) in terms.chunks(8).enumerate() {
        if k > 0 {
            out.push_str("\n   ");
        }
        let _ = write!(out, " {}", chunk.join(" "));
    }
    let _ = writeln!(out, "{tail}");
}
