//! Ground truth for small instances: lower bounds and a depth-first
//! branch-and-bound over start cells.

use std::time::{Duration, Instant};

use crate::error::Result;
use crate::greedy::{pack_g, OrderedList};
use crate::height::Height;
use crate::model::{evaluate, left_justify, Instance, Packing};
use crate::twobar::{self, LexKey, PipelineOptions};

const CAP: u64 = Height::FULL.units();

/// `max(ceil(total height), #bars above 1/2)`.
///
/// Two bars taller than 1/2 never share a cell, so every such bar needs a cell
/// of its own.
pub fn lower_bound(instance: &Instance) -> u32 {
    let area = instance.total_height().ceil_cells();
    let big = instance.charts().iter().flat_map(|c| c.heights()).filter(|h| h.is_big()).count() as u32;
    area.max(big)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExactOptions {
    pub time_limit: Duration,
    /// Force identical charts to take non-decreasing start cells.
    pub symmetry_breaking: bool,
}

impl Default for ExactOptions {
    fn default() -> Self {
        ExactOptions { time_limit: Duration::from_secs(10), symmetry_breaking: true }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactOutcome {
    /// Best packing found, left-justified.
    pub packing: Packing,
    pub length: u32,
    /// False when the time limit cut the search short.
    pub proven_optimal: bool,
    pub nodes: u64,
}

pub fn solve_exact(instance: &Instance, time_limit: Duration) -> Result<ExactOutcome> {
    solve_exact_with(instance, ExactOptions { time_limit, ..ExactOptions::default() })
}

pub fn solve_exact_with(instance: &Instance, opts: ExactOptions) -> Result<ExactOutcome> {
    let (mut best_packing, mut best_len) = incumbent(instance)?;
    let root_bound = lower_bound(instance).max(instance.max_width() as u32).max(rigid_pair_bound(instance));
    if best_len <= root_bound {
        return Ok(ExactOutcome { packing: best_packing, length: best_len, proven_optimal: true, nodes: 0 });
    }

    // Branch on tall-first charts; identical charts end up adjacent.
    let mut order: Vec<usize> = (0..instance.len()).collect();
    order.sort_by(|&x, &y| instance.chart(y).heights().cmp(instance.chart(x).heights()).then(x.cmp(&y)));
    let rows: Vec<Vec<u64>> =
        order.iter().map(|&id| instance.chart(id).heights().iter().map(|h| h.units()).collect()).collect();
    let same_as_prev: Vec<bool> =
        (0..rows.len()).map(|k| opts.symmetry_breaking && k > 0 && rows[k] == rows[k - 1]).collect();
    let mut big_suffix = vec![0u32; rows.len() + 1];
    let mut min_bar_suffix = vec![u64::MAX; rows.len() + 1];
    for k in (0..rows.len()).rev() {
        big_suffix[k] = big_suffix[k + 1] + rows[k].iter().filter(|&&h| h > CAP / 2).count() as u32;
        min_bar_suffix[k] = min_bar_suffix[k + 1].min(rows[k].iter().copied().min().unwrap_or(u64::MAX));
    }

    let horizon = instance.total_width();
    let mut search = Search {
        rows: &rows,
        same_as_prev: &same_as_prev,
        big_suffix: &big_suffix,
        min_bar_suffix: &min_bar_suffix,
        total_area: instance.total_height().units(),
        loads: vec![0; horizon + 2],
        starts: vec![0; rows.len()],
        best_len,
        best_starts: None,
        nodes: 0,
        deadline: Instant::now() + opts.time_limit,
        timed_out: false,
        root_bound,
    };
    search.dfs(0, 0);

    if let Some(by_pos) = search.best_starts.take() {
        let mut starts = vec![0u32; instance.len()];
        for (pos, &id) in order.iter().enumerate() {
            starts[id] = by_pos[pos];
        }
        best_packing = left_justify(instance, &Packing::from_starts(starts))?;
        best_len = search.best_len;
    }
    Ok(ExactOutcome {
        packing: best_packing,
        length: best_len,
        proven_optimal: !search.timed_out,
        nodes: search.nodes,
    })
}

/// `2 |T|` for the largest threshold family `T` of two-bar charts whose first
/// bars pairwise exceed the capacity and whose second bars exceed it together
/// with any first bar of `T` (or the mirror image).
///
/// Starts in `T` are then distinct, start + 1 cells are distinct, and no
/// start + 1 cell is a start, so `T` alone covers `2 |T|` cells.
pub(crate) fn rigid_pair_bound(instance: &Instance) -> u32 {
    let pairs: Vec<(u64, u64)> =
        instance.charts().iter().filter(|c| c.width() == 2).map(|c| (c.a().units(), c.b().units())).collect();
    let family = |lead: &dyn Fn(&(u64, u64)) -> u64, tail: &dyn Fn(&(u64, u64)) -> u64| {
        pairs
            .iter()
            .map(lead)
            .filter(|&t| t > CAP / 2)
            .map(|t| pairs.iter().filter(|p| lead(p) >= t && tail(p) > CAP - t).count())
            .max()
            .unwrap_or(0)
    };
    let size = family(&|p| p.0, &|p| p.1).max(family(&|p| p.1, &|p| p.0));
    2 * size as u32
}

/// Best heuristic packing, used as the initial upper bound.
fn incumbent(instance: &Instance) -> Result<(Packing, u32)> {
    let mut candidates = Vec::new();
    if instance.is_two_bar() {
        let n = instance.len();
        candidates.push(twobar::pack_ga(instance, &twobar::lex_order(instance)?)?);
        candidates.push(twobar::pack_ga(instance, &OrderedList::identity(n))?);
        candidates.push(twobar::pack_ga(instance, &twobar::lex_order_by(instance, LexKey::MaxBar)?)?);
        for merge in [true, false] {
            for lex in [None, Some(LexKey::FirstBar)] {
                candidates.push(twobar::run_pipeline(instance, PipelineOptions { merge, lex })?);
            }
        }
    } else {
        let mut tall_first: Vec<usize> = (0..instance.len()).collect();
        tall_first.sort_by(|&x, &y| instance.chart(y).heights().cmp(instance.chart(x).heights()));
        candidates.push(pack_g(instance, &OrderedList::from_permutation(tall_first))?);
    }
    candidates.push(pack_g(instance, &OrderedList::identity(instance.len()))?);

    let mut best: Option<(Packing, u32)> = None;
    for p in candidates {
        let p = left_justify(instance, &p)?;
        let len = evaluate(instance, &p)?.length;
        if best.as_ref().is_none_or(|(_, l)| len < *l) {
            best = Some((p, len));
        }
    }
    Ok(best.expect("at least one candidate"))
}

struct Search<'a> {
    rows: &'a [Vec<u64>],
    same_as_prev: &'a [bool],
    big_suffix: &'a [u32],
    min_bar_suffix: &'a [u64],
    total_area: u64,
    loads: Vec<u64>,
    starts: Vec<u32>,
    best_len: u32,
    best_starts: Option<Vec<u32>>,
    nodes: u64,
    deadline: Instant,
    timed_out: bool,
    root_bound: u32,
}

impl Search<'_> {
    /// Objective is the last occupied cell; some optimal packing is gap-free,
    /// so its minimum equals the minimum number of occupied cells.
    fn dfs(&mut self, k: usize, max_end: u32) {
        if self.timed_out || self.best_len <= self.root_bound {
            return;
        }
        self.nodes += 1;
        if self.nodes.is_multiple_of(4096) && Instant::now() >= self.deadline {
            self.timed_out = true;
            return;
        }
        if k == self.rows.len() {
            if max_end < self.best_len {
                self.best_len = max_end;
                self.best_starts = Some(self.starts.clone());
            }
            return;
        }
        if self.bound(k, max_end) >= self.best_len {
            return;
        }

        let w = self.rows[k].len() as u32;
        let first = if self.same_as_prev[k] { self.starts[k - 1] } else { 1 };
        let mut s = first;
        // only starts that end strictly before the incumbent's length
        while s + w - 1 < self.best_len {
            if self.fits(k, s) {
                self.apply(k, s, true);
                self.starts[k] = s;
                self.dfs(k + 1, max_end.max(s + w - 1));
                self.apply(k, s, false);
                if self.timed_out {
                    return;
                }
            }
            s += 1;
        }
    }

    fn fits(&self, k: usize, s: u32) -> bool {
        let base = s as usize;
        self.rows[k].iter().enumerate().all(|(j, &h)| self.loads[base + j] + h <= CAP)
    }

    fn apply(&mut self, k: usize, s: u32, add: bool) {
        let base = s as usize;
        for (j, &h) in self.rows[k].iter().enumerate() {
            if add {
                self.loads[base + j] += h;
            } else {
                self.loads[base + j] -= h;
            }
        }
    }

    /// Lower bound on the final length below this node.
    fn bound(&self, k: usize, max_end: u32) -> u32 {
        let mut lb = max_end;

        // cells already above 1/2 cannot take any remaining tall bar
        let half_full = self.loads.iter().filter(|&&l| l > CAP / 2).count() as u32;
        lb = lb.max(half_full + self.big_suffix[k]);

        // capacity that no remaining bar can ever use is lost
        let min_bar = self.min_bar_suffix[k];
        let wasted: u64 =
            self.loads[1..=max_end as usize].iter().map(|&l| CAP - l).filter(|&free| free < min_bar).sum();
        lb = lb.max((self.total_area + wasted).div_ceil(CAP) as u32);

        // each remaining chart ends no earlier than its earliest feasible slot
        for (j, row) in self.rows.iter().enumerate().skip(k) {
            let mut s = 1u32;
            while !self.fits(j, s) {
                s += 1;
            }
            lb = lb.max(s + row.len() as u32 - 1);
            if lb >= self.best_len {
                break;
            }
        }
        lb
    }
}
