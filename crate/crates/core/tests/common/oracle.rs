//! Brute-force reference solvers over raw fixed-point rows (units of 1e-9).
//! Independent of the library: plain recursion over start cells with only a
//! capacity check.

#![allow(dead_code)]

const CAP: u64 = 1_000_000_000;

fn occupied(loads: &[u64]) -> u32 {
    loads.iter().filter(|&&l| l > 0).count() as u32
}

/// Minimum number of occupied cells over every feasible assignment of start
/// cells in `1..=total_width`, with one optimal assignment.
pub fn optimum(rows: &[Vec<u64>]) -> (u32, Vec<u32>) {
    search(rows, false)
}

/// Minimum length over feasible packings whose starts are non-decreasing in
/// row order.
pub fn order_preserving_optimum(rows: &[Vec<u64>]) -> u32 {
    search(rows, true).0
}

fn search(rows: &[Vec<u64>], monotone: bool) -> (u32, Vec<u32>) {
    let horizon: usize = rows.iter().map(Vec::len).sum();
    let mut state = State {
        rows,
        monotone,
        horizon,
        loads: vec![0; horizon + 2],
        starts: vec![0; rows.len()],
        best: (u32::MAX, Vec::new()),
    };
    state.go(0, 1);
    state.best
}

struct State<'a> {
    rows: &'a [Vec<u64>],
    monotone: bool,
    horizon: usize,
    loads: Vec<u64>,
    starts: Vec<u32>,
    best: (u32, Vec<u32>),
}

impl State<'_> {
    fn go(&mut self, k: usize, min_start: u32) {
        if k == self.rows.len() {
            let len = occupied(&self.loads);
            if len < self.best.0 {
                self.best = (len, self.starts.clone());
            }
            return;
        }
        let row = &self.rows[k];
        let last = (self.horizon - row.len() + 1) as u32;
        let first = if self.monotone { min_start } else { 1 };
        for s in first..=last {
            let base = s as usize;
            if row.iter().enumerate().all(|(j, &h)| self.loads[base + j] + h <= CAP) {
                for (j, &h) in row.iter().enumerate() {
                    self.loads[base + j] += h;
                }
                self.starts[k] = s;
                self.go(k + 1, s);
                for (j, &h) in row.iter().enumerate() {
                    self.loads[base + j] -= h;
                }
            }
        }
    }
}
