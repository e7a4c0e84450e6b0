//! Monte Carlo batches, α×β sweeps and their CSV/JSON output.
//!
//! Run `k` of any batch uses target stream `k` of the master seed, so the
//! same `k` sees the same target trajectory across algorithms and sweep
//! cells. Results are collected in run order and reduced sequentially,
//! which makes parallel and sequential execution bit-identical.

use std::io::{Read, Write};

#[cfg(feature = "parallel")]
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cost::RunMetrics;
use crate::engine::{run, WorldConfig};
use crate::error::ConfigError;
use crate::ratio::Ratio;
use crate::tracker::Algorithm;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    /// Rayon's global pool; sequential when built without `parallel`.
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

impl Execution {
    fn map<T, F>(self, jobs: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Execution::Parallel => (0..jobs).into_par_iter().map(f).collect(),
            _ => (0..jobs).map(f).collect(),
        }
    }
}

/// Config for run `index` of a batch seeded with `master_seed`.
pub fn paired_config(cfg: &WorldConfig, master_seed: u64, index: u64) -> WorldConfig {
    let mut c = *cfg;
    c.target.seed = master_seed;
    c.target.stream = index;
    c
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Stat {
    pub mean: f64,
    /// Sample standard deviation; 0 for a single sample.
    pub std_dev: f64,
    pub min: f64,
    pub max: f64,
}

impl Stat {
    pub fn from_samples(samples: &[f64]) -> Self {
        if samples.is_empty() {
            return Stat::default();
        }
        let n = samples.len() as f64;
        let mean = samples.iter().sum::<f64>() / n;
        let std_dev = if samples.len() > 1 {
            (samples.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
        } else {
            0.0
        };
        let min = samples.iter().copied().fold(f64::INFINITY, f64::min);
        let max = samples.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        // Summation rounding can put the mean an ulp outside the sample range.
        Stat { mean: mean.clamp(min, max), std_dev, min, max }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BatchSummary {
    pub algorithm: Algorithm,
    pub alpha: Ratio,
    pub beta: Ratio,
    pub tau: u32,
    pub runs: u64,
    pub master_seed: u64,
    pub caught: u64,
    pub time_to_catch: Stat,
    pub hop_count: Stat,
    pub active_node_steps: Stat,
    pub transfers_to_sink: Stat,
}

impl BatchSummary {
    pub fn from_runs(cfg: &WorldConfig, master_seed: u64, runs: &[RunMetrics]) -> Self {
        let stat = |f: fn(&RunMetrics) -> u64| {
            Stat::from_samples(&runs.iter().map(|m| f(m) as f64).collect::<Vec<_>>())
        };
        BatchSummary {
            algorithm: cfg.tracker.algorithm,
            alpha: cfg.tracker.alpha,
            beta: cfg.tracker.beta,
            tau: cfg.tracker.tau,
            runs: runs.len() as u64,
            master_seed,
            caught: runs.iter().filter(|m| m.caught).count() as u64,
            time_to_catch: stat(|m| m.time_to_catch),
            hop_count: stat(|m| m.hop_count),
            active_node_steps: stat(|m| m.active_node_steps),
            transfers_to_sink: stat(|m| m.transfers_to_sink),
        }
    }
}

/// Per-run metrics of a paired batch, in run order.
pub fn batch_metrics(
    cfg: &WorldConfig,
    runs: u64,
    master_seed: u64,
    exec: Execution,
) -> Result<Vec<RunMetrics>, ConfigError> {
    if runs == 0 {
        return Err(ConfigError::ZeroRuns);
    }
    cfg.validate()?;
    exec.map(runs as usize, |k| {
        run(&paired_config(cfg, master_seed, k as u64), false).map(|o| o.metrics)
    })
    .into_iter()
    .collect()
}

pub fn run_batch(cfg: &WorldConfig, runs: u64, master_seed: u64) -> Result<BatchSummary, ConfigError> {
    run_batch_with(cfg, runs, master_seed, Execution::default())
}

pub fn run_batch_with(
    cfg: &WorldConfig,
    runs: u64,
    master_seed: u64,
    exec: Execution,
) -> Result<BatchSummary, ConfigError> {
    let metrics = batch_metrics(cfg, runs, master_seed, exec)?;
    Ok(BatchSummary::from_runs(cfg, master_seed, &metrics))
}

/// One batch per algorithm, on the same paired seeds.
pub fn compare_algorithms(
    cfg: &WorldConfig,
    runs: u64,
    master_seed: u64,
    exec: Execution,
) -> Result<Vec<BatchSummary>, ConfigError> {
    Algorithm::ALL
        .into_iter()
        .map(|alg| {
            let c = WorldConfig { tracker: cfg.tracker.with_algorithm(alg), ..*cfg };
            run_batch_with(&c, runs, master_seed, exec)
        })
        .collect()
}

/// `0.05, 0.10, ..., 0.50`.
pub fn default_sweep_values() -> Vec<Ratio> {
    (1..=10).map(|i| Ratio::new(5 * i, 100)).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sweep {
    pub alphas: Vec<Ratio>,
    pub betas: Vec<Ratio>,
    /// Row-major: `cells[i * betas.len() + j]` is `(alphas[i], betas[j])`.
    pub cells: Vec<BatchSummary>,
}

impl Sweep {
    pub fn cell(&self, alpha_idx: usize, beta_idx: usize) -> &BatchSummary {
        &self.cells[alpha_idx * self.betas.len() + beta_idx]
    }

    pub fn find(&self, alpha: Ratio, beta: Ratio) -> Option<&BatchSummary> {
        self.cells.iter().find(|c| c.alpha == alpha && c.beta == beta)
    }
}

/// Heuristic-tracker batches over every `(alpha, beta)` pair.
pub fn sweep(
    base: &WorldConfig,
    alphas: &[Ratio],
    betas: &[Ratio],
    runs: u64,
    master_seed: u64,
    exec: Execution,
) -> Result<Sweep, ConfigError> {
    if alphas.is_empty() || betas.is_empty() {
        return Err(ConfigError::EmptySweep);
    }
    if runs == 0 {
        return Err(ConfigError::ZeroRuns);
    }
    base.validate()?;
    let configs: Vec<WorldConfig> = alphas
        .iter()
        .flat_map(|&alpha| betas.iter().map(move |&beta| (alpha, beta)))
        .map(|(alpha, beta)| {
            let mut c = *base;
            c.tracker.algorithm = Algorithm::Heuristic;
            c.tracker.alpha = alpha;
            c.tracker.beta = beta;
            c
        })
        .collect();
    let per_cell = runs as usize;
    let flat = exec.map(configs.len() * per_cell, |job| {
        let (cell, k) = (job / per_cell, job % per_cell);
        run(&paired_config(&configs[cell], master_seed, k as u64), false).map(|o| o.metrics)
    });
    let flat: Vec<RunMetrics> = flat.into_iter().collect::<Result<_, _>>()?;
    let cells = configs
        .iter()
        .zip(flat.chunks(per_cell))
        .map(|(c, m)| BatchSummary::from_runs(c, master_seed, m))
        .collect();
    Ok(Sweep { alphas: alphas.to_vec(), betas: betas.to_vec(), cells })
}

/// Flat CSV form of a [`BatchSummary`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub algorithm: u8,
    pub alpha: Ratio,
    pub beta: Ratio,
    pub tau: u32,
    pub runs: u64,
    pub master_seed: u64,
    pub caught: u64,
    pub time_to_catch_mean: f64,
    pub time_to_catch_std: f64,
    pub time_to_catch_min: f64,
    pub time_to_catch_max: f64,
    pub hop_count_mean: f64,
    pub hop_count_std: f64,
    pub hop_count_min: f64,
    pub hop_count_max: f64,
    pub active_node_steps_mean: f64,
    pub active_node_steps_std: f64,
    pub active_node_steps_min: f64,
    pub active_node_steps_max: f64,
    pub transfers_to_sink_mean: f64,
    pub transfers_to_sink_std: f64,
    pub transfers_to_sink_min: f64,
    pub transfers_to_sink_max: f64,
}

impl From<&BatchSummary> for SummaryRow {
    fn from(s: &BatchSummary) -> Self {
        SummaryRow {
            algorithm: s.algorithm.number(),
            alpha: s.alpha,
            beta: s.beta,
            tau: s.tau,
            runs: s.runs,
            master_seed: s.master_seed,
            caught: s.caught,
            time_to_catch_mean: s.time_to_catch.mean,
            time_to_catch_std: s.time_to_catch.std_dev,
            time_to_catch_min: s.time_to_catch.min,
            time_to_catch_max: s.time_to_catch.max,
            hop_count_mean: s.hop_count.mean,
            hop_count_std: s.hop_count.std_dev,
            hop_count_min: s.hop_count.min,
            hop_count_max: s.hop_count.max,
            active_node_steps_mean: s.active_node_steps.mean,
            active_node_steps_std: s.active_node_steps.std_dev,
            active_node_steps_min: s.active_node_steps.min,
            active_node_steps_max: s.active_node_steps.max,
            transfers_to_sink_mean: s.transfers_to_sink.mean,
            transfers_to_sink_std: s.transfers_to_sink.std_dev,
            transfers_to_sink_min: s.transfers_to_sink.min,
            transfers_to_sink_max: s.transfers_to_sink.max,
        }
    }
}

impl TryFrom<SummaryRow> for BatchSummary {
    type Error = ConfigError;

    fn try_from(r: SummaryRow) -> Result<Self, Self::Error> {
        let stat = |mean, std_dev, min, max| Stat { mean, std_dev, min, max };
        Ok(BatchSummary {
            algorithm: r.algorithm.to_string().parse()?,
            alpha: r.alpha,
            beta: r.beta,
            tau: r.tau,
            runs: r.runs,
            master_seed: r.master_seed,
            caught: r.caught,
            time_to_catch: stat(r.time_to_catch_mean, r.time_to_catch_std, r.time_to_catch_min, r.time_to_catch_max),
            hop_count: stat(r.hop_count_mean, r.hop_count_std, r.hop_count_min, r.hop_count_max),
            active_node_steps: stat(
                r.active_node_steps_mean,
                r.active_node_steps_std,
                r.active_node_steps_min,
                r.active_node_steps_max,
            ),
            transfers_to_sink: stat(
                r.transfers_to_sink_mean,
                r.transfers_to_sink_std,
                r.transfers_to_sink_min,
                r.transfers_to_sink_max,
            ),
        })
    }
}

#[derive(Debug, thiserror::Error)]
pub enum OutputError {
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Config(#[from] ConfigError),
}

/// One row per summary; sweep cells come out in row-major `(alpha, beta)`
/// order, ready to pivot into a heat map.
pub fn write_summaries_csv<W: Write>(summaries: &[BatchSummary], out: W) -> Result<(), OutputError> {
    let mut w = csv::Writer::from_writer(out);
    for s in summaries {
        w.serialize(SummaryRow::from(s))?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_summaries_csv<R: Read>(input: R) -> Result<Vec<BatchSummary>, OutputError> {
    let mut r = csv::Reader::from_reader(input);
    let mut out = Vec::new();
    for row in r.deserialize::<SummaryRow>() {
        out.push(BatchSummary::try_from(row?)?);
    }
    Ok(out)
}

pub fn write_summaries_json<W: Write>(summaries: &[BatchSummary], out: W) -> Result<(), OutputError> {
    serde_json::to_writer_pretty(out, summaries)?;
    Ok(())
}

/// Pivoted `hop_count` / `time_to_catch` means: one row per alpha, one
/// column per beta.
pub fn write_sweep_matrix_csv<W: Write>(
    sweep: &Sweep,
    value: fn(&BatchSummary) -> f64,
    out: W,
) -> Result<(), OutputError> {
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["alpha\\beta".to_string()];
    header.extend(sweep.betas.iter().map(|b| b.to_string()));
    w.write_record(&header)?;
    for (i, a) in sweep.alphas.iter().enumerate() {
        let mut row = vec![a.to_string()];
        row.extend((0..sweep.betas.len()).map(|j| value(sweep.cell(i, j)).to_string()));
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}
