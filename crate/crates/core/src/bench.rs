//! Random instances and the benchmark harness.
//!
//! Instances come from SplitMix64 so any implementation can reproduce them:
//!
//! ```text
//! next():   state += 0x9E3779B97F4A7C15; return mix(state)
//! mix(z):   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//!           z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//!           return z ^ (z >> 31)
//! height:   u = ((next() >> 11) + 1) * 2^-53            in (0, 1]
//!           units = floor(u * 1e9 + 0.5), at least 1   (f64 arithmetic)
//! ```
//!
//! Chart `i` takes draws `2i` (first bar) and `2i + 1` (second bar). The seed of
//! instance `i` of size `n` in a sweep is
//! `mix(mix(seed ^ mix(n)) ^ mix(i + 0x9E3779B97F4A7C15))`.

use std::collections::BTreeMap;
use std::fmt::Write;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algorithm::Algorithm;
use crate::error::{Error, Result};
use crate::exact::{lower_bound, solve_exact};
use crate::height::{Height, SCALE};
use crate::model::{evaluate, Instance};
use crate::twobar::LexKey;

const GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GAMMA);
        mix64(self.state)
    }

    /// Uniform on `(0, 1]` with 53 bits of resolution.
    pub fn next_unit(&mut self) -> f64 {
        ((self.next_u64() >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}

pub fn mix64(z: u64) -> u64 {
    let z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    let z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of the `index`-th instance of size `n` in a sweep.
pub fn instance_seed(seed: u64, n: usize, index: usize) -> u64 {
    mix64(mix64(seed ^ mix64(n as u64)) ^ mix64((index as u64).wrapping_add(GAMMA)))
}

/// `n` two-bar charts with heights uniform on `(0, 1]`, on the fixed-point grid.
pub fn generate(n: usize, seed: u64) -> Instance {
    assert!(n >= 1, "instance needs at least one chart");
    let mut rng = SplitMix64::new(seed);
    let mut draw = || {
        let units = (rng.next_unit() * SCALE as f64 + 0.5).floor() as u64;
        Height::from_units(units.clamp(1, SCALE))
    };
    let charts = (0..n).map(|_| vec![draw(), draw()]).collect();
    Instance::new(charts).expect("generated heights are in (0, 1]")
}

/// Ratio of an algorithm's length to the reference length.
pub fn compute_r(alg_length: u32, denominator: u32) -> Result<f64> {
    if denominator < 1 {
        return Err(Error::InvalidDenominator(denominator));
    }
    Ok(alg_length as f64 / denominator as f64)
}

/// How the reference length of each instance is obtained.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DenominatorPolicy {
    /// Run the exact solver; fall back to the lower bound on timeout.
    Exact,
    /// Never run the exact solver.
    LowerBound,
    /// Exact up to `auto_exact_max_n` charts, lower bound above.
    #[default]
    Auto,
}

/// What a single instance's denominator turned out to be.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DenominatorKind {
    Optimal,
    LowerBound,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BenchConfig {
    pub sizes: Vec<usize>,
    pub instances_per_size: usize,
    pub seed: u64,
    pub algorithms: Vec<Algorithm>,
    pub denominator: DenominatorPolicy,
    /// Seconds per exact solve.
    pub exact_time_limit: f64,
    /// Largest `n` solved exactly under [`DenominatorPolicy::Auto`].
    pub auto_exact_max_n: usize,
    pub lex_key: LexKeyName,
}

/// Serde-friendly wrapper for [`LexKey`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LexKeyName {
    #[default]
    FirstBar,
    MaxBar,
}

impl From<LexKeyName> for LexKey {
    fn from(k: LexKeyName) -> Self {
        match k {
            LexKeyName::FirstBar => LexKey::FirstBar,
            LexKeyName::MaxBar => LexKey::MaxBar,
        }
    }
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            sizes: vec![2, 5, 10, 12],
            instances_per_size: 100,
            seed: 2021,
            algorithms: Algorithm::TABLE.to_vec(),
            denominator: DenominatorPolicy::Auto,
            exact_time_limit: 20.0,
            auto_exact_max_n: 12,
            lex_key: LexKeyName::FirstBar,
        }
    }
}

impl BenchConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: BenchConfig = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.sizes.contains(&0) {
            return Err(Error::InvalidConfig("sizes must be positive".into()));
        }
        if self.instances_per_size == 0 {
            return Err(Error::InvalidConfig("instances_per_size must be >= 1".into()));
        }
        if !(self.exact_time_limit >= 0.0 && self.exact_time_limit.is_finite()) {
            return Err(Error::InvalidConfig("exact_time_limit must be a non-negative number".into()));
        }
        Ok(())
    }

    fn uses_exact(&self, n: usize) -> bool {
        match self.denominator {
            DenominatorPolicy::Exact => true,
            DenominatorPolicy::LowerBound => false,
            DenominatorPolicy::Auto => n <= self.auto_exact_max_n,
        }
    }
}

/// Aggregate over the instances of one size for one algorithm.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchRecord {
    pub algorithm: Algorithm,
    pub n: usize,
    pub r_av: f64,
    pub r_sd: f64,
    pub mean_runtime_ms: f64,
    /// Per-instance ratios in instance order.
    pub ratios: Vec<f64>,
    /// Per-instance denominator kinds in instance order.
    pub denominator_kinds: Vec<DenominatorKind>,
}

impl BenchRecord {
    /// `optimal`, `lower_bound`, or `mixed(k/m optimal)`.
    pub fn denominator_summary(&self) -> String {
        let optimal = self.denominator_kinds.iter().filter(|&&k| k == DenominatorKind::Optimal).count();
        match optimal {
            k if k == self.denominator_kinds.len() => "optimal".into(),
            0 => "lower_bound".into(),
            k => format!("mixed({k}/{} optimal)", self.denominator_kinds.len()),
        }
    }
}

/// One instance's outcome.
struct InstanceRun {
    denominator: u32,
    kind: DenominatorKind,
    lengths: Vec<(u32, Duration)>,
}

fn run_instance(cfg: &BenchConfig, n: usize, index: usize) -> Result<InstanceRun> {
    let instance = generate(n, instance_seed(cfg.seed, n, index));
    let (denominator, kind) = if cfg.uses_exact(n) {
        let out = solve_exact(&instance, Duration::from_secs_f64(cfg.exact_time_limit))?;
        if out.proven_optimal {
            (out.length, DenominatorKind::Optimal)
        } else {
            (lower_bound(&instance), DenominatorKind::LowerBound)
        }
    } else {
        (lower_bound(&instance), DenominatorKind::LowerBound)
    };
    let key = LexKey::from(cfg.lex_key);
    let lengths = cfg
        .algorithms
        .iter()
        .map(|alg| {
            let started = Instant::now();
            let packing = alg.solve_with(&instance, key)?;
            let elapsed = started.elapsed();
            Ok((evaluate(&instance, &packing)?.length, elapsed))
        })
        .collect::<Result<_>>()?;
    Ok(InstanceRun { denominator, kind, lengths })
}

/// Runs every configured algorithm on every generated instance.
///
/// Instances are processed in parallel on the current rayon pool; the
/// aggregation folds results in instance order so the ratios are identical
/// regardless of scheduling. Records are sorted by `(n, algorithm)`.
pub fn run_bench(cfg: &BenchConfig) -> Result<Vec<BenchRecord>> {
    cfg.validate()?;
    if cfg.algorithms.is_empty() {
        return Ok(Vec::new());
    }
    let mut sizes = cfg.sizes.clone();
    sizes.sort_unstable();
    sizes.dedup();
    let mut algorithms = cfg.algorithms.clone();
    algorithms.sort_unstable();
    algorithms.dedup();
    let cfg = BenchConfig { algorithms, ..cfg.clone() };

    let mut records = Vec::new();
    for &n in &sizes {
        let runs: Vec<InstanceRun> = (0..cfg.instances_per_size)
            .into_par_iter()
            .map(|i| run_instance(&cfg, n, i))
            .collect::<Result<_>>()?;
        for (k, &alg) in cfg.algorithms.iter().enumerate() {
            let ratios = runs
                .iter()
                .map(|r| compute_r(r.lengths[k].0, r.denominator))
                .collect::<Result<Vec<f64>>>()?;
            let runtime: Duration = runs.iter().map(|r| r.lengths[k].1).sum();
            let (r_av, r_sd) = mean_and_sample_sd(&ratios);
            records.push(BenchRecord {
                algorithm: alg,
                n,
                r_av,
                r_sd,
                mean_runtime_ms: runtime.as_secs_f64() * 1e3 / runs.len() as f64,
                ratios,
                denominator_kinds: runs.iter().map(|r| r.kind).collect(),
            });
        }
    }
    Ok(records)
}

/// Mean and (n - 1) standard deviation; the deviation of a single value is 0.
pub fn mean_and_sample_sd(values: &[f64]) -> (f64, f64) {
    let n = values.len();
    if n == 0 {
        return (f64::NAN, f64::NAN);
    }
    let mean = values.iter().sum::<f64>() / n as f64;
    if n == 1 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
    (mean, var.sqrt())
}

pub fn to_csv(records: &[BenchRecord]) -> String {
    let mut out = String::from("algorithm,n,R_av,R_sd,mean_runtime_ms,denominator_kind\n");
    for r in records {
        let _ = writeln!(
            out,
            "{},{},{:.4},{:.4},{:.4},{}",
            r.algorithm,
            r.n,
            r.r_av,
            r.r_sd,
            r.mean_runtime_ms,
            r.denominator_summary()
        );
    }
    out
}

/// One row per `n`, an `R_av | R_sd` column pair per algorithm.
pub fn to_markdown(records: &[BenchRecord]) -> String {
    let mut algorithms: Vec<Algorithm> = records.iter().map(|r| r.algorithm).collect();
    algorithms.sort_unstable();
    algorithms.dedup();
    let mut rows: BTreeMap<usize, BTreeMap<Algorithm, &BenchRecord>> = BTreeMap::new();
    for r in records {
        rows.entry(r.n).or_default().insert(r.algorithm, r);
    }

    let mut out = String::from("| n |");
    for a in &algorithms {
        let _ = write!(out, " {0} R_av | {0} R_sd |", a.label());
    }
    out.push_str(" denominator |\n|---|");
    for _ in &algorithms {
        out.push_str("---|---|");
    }
    out.push_str("---|\n");
    for (n, by_alg) in &rows {
        let _ = write!(out, "| {n} |");
        for a in &algorithms {
            match by_alg.get(a) {
                Some(r) => {
                    let _ = write!(out, " {:.2} | {:.2} |", r.r_av, r.r_sd);
                }
                None => out.push_str(" - | - |"),
            }
        }
        let kind = by_alg.values().next().map(|r| r.denominator_summary()).unwrap_or_default();
        let _ = writeln!(out, " {kind} |");
    }
    out
}
