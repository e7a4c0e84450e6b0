use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, ValueEnum};
use serde_json::json;
use sinkchase::engine::write_jsonl;
use sinkchase::experiment::{
    compare_algorithms, default_sweep_values, paired_config, run_batch_with, sweep,
    write_summaries_csv, write_summaries_json, write_sweep_matrix_csv,
};
use sinkchase::{
    run, Algorithm, BatchSummary, CollectionModel, Execution, GridConfig, Ratio, SegmentCoord,
    TargetMotionConfig, TrackerParams, WorldConfig,
};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

/// Mobile-sink target chasing in a grid sensor network.
///
/// Without sweep options, runs a paired-seed batch for one algorithm (or all
/// three when --algorithm is omitted). With --sweep-alpha/--sweep-beta, runs
/// the heuristic tracker over every (alpha, beta) pair.
#[derive(Debug, Parser)]
#[command(name = "sinkchase", version)]
struct Args {
    /// Tracking algorithm: 1 prediction, 2 intermediate node, 3 heuristic.
    #[arg(long, value_parser = parse_algorithm)]
    algorithm: Option<Algorithm>,
    #[arg(long, default_value = "200x200", value_parser = parse_grid)]
    grid: GridConfig,
    /// Target velocity (segments per step); also the prediction radius.
    #[arg(long, default_value_t = 3)]
    vt: u32,
    /// Sink velocity (segments per step).
    #[arg(long, default_value_t = 4)]
    vs: u32,
    #[arg(long, default_value = "0.20")]
    alpha: Ratio,
    #[arg(long, default_value = "0.25")]
    beta: Ratio,
    #[arg(long, default_value_t = 6)]
    tau: u32,
    #[arg(long, default_value_t = 100)]
    runs: u64,
    /// Master seed; run k uses stream k of this seed.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Step cap per run [default: 10 * (width + height)].
    #[arg(long)]
    max_steps: Option<u64>,
    #[arg(long, default_value = "66,66", value_parser = parse_coord)]
    target_start: (u32, u32),
    #[arg(long, default_value = "160,160", value_parser = parse_coord)]
    sink_start: (u32, u32),
    /// Probability of the target keeping its heading on each unit move.
    #[arg(long, default_value_t = 0.9)]
    persistence: f64,
    /// Which activated nodes report to the collector: detections | all-nodes.
    #[arg(long, default_value = "detections")]
    collection: CollectionModel,
    /// Write the step-by-step trace of run 0 as JSON lines.
    #[arg(long)]
    trace: Option<PathBuf>,
    /// Write summaries here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Comma-separated alpha values, or `default` for 0.05..0.50.
    #[arg(long, value_parser = parse_list)]
    sweep_alpha: Option<RatioList>,
    /// Comma-separated beta values, or `default` for 0.05..0.50.
    #[arg(long, value_parser = parse_list)]
    sweep_beta: Option<RatioList>,
    /// Also write the sweep's mean hop count as an alpha-by-beta matrix.
    #[arg(long)]
    matrix: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Run batches on one thread.
    #[arg(long)]
    sequential: bool,
}

fn parse_algorithm(s: &str) -> Result<Algorithm, String> {
    s.parse().map_err(|e: sinkchase::ConfigError| e.to_string())
}

fn parse_grid(s: &str) -> Result<GridConfig, String> {
    let (w, h) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("expected WxH, got {s:?}"))?;
    let w = w.trim().parse().map_err(|_| format!("bad grid width in {s:?}"))?;
    let h = h.trim().parse().map_err(|_| format!("bad grid height in {s:?}"))?;
    GridConfig::new(w, h).map_err(|e| e.to_string())
}

fn parse_coord(s: &str) -> Result<(u32, u32), String> {
    let (x, y) = s.split_once(',').ok_or_else(|| format!("expected X,Y, got {s:?}"))?;
    let x = x.trim().parse().map_err(|_| format!("bad x in {s:?}"))?;
    let y = y.trim().parse().map_err(|_| format!("bad y in {s:?}"))?;
    Ok((x, y))
}

#[derive(Debug, Clone)]
struct RatioList(Vec<Ratio>);

fn parse_list(s: &str) -> Result<RatioList, String> {
    if s.trim() == "default" {
        return Ok(RatioList(default_sweep_values()));
    }
    s.split(',')
        .map(|v| v.parse::<Ratio>().map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()
        .map(RatioList)
}

impl Args {
    fn world(&self) -> Result<WorldConfig> {
        let coord = |(x, y): (u32, u32)| SegmentCoord::new(x, y);
        let cfg = WorldConfig {
            grid: self.grid,
            target: TargetMotionConfig {
                velocity: self.vt,
                persistence: self.persistence,
                seed: self.seed,
                stream: 0,
            },
            sink_velocity: self.vs,
            sink_start: coord(self.sink_start),
            target_start: coord(self.target_start),
            tracker: TrackerParams {
                algorithm: self.algorithm.unwrap_or(Algorithm::Heuristic),
                prediction_radius: self.vt,
                tau: self.tau,
                alpha: self.alpha,
                beta: self.beta,
                collection: self.collection,
            },
            max_steps: self.max_steps.unwrap_or_else(|| WorldConfig::default_max_steps(self.grid)),
        };
        cfg.validate().context("invalid configuration")?;
        if self.runs == 0 {
            bail!("--runs must be at least 1");
        }
        Ok(cfg)
    }

    fn algorithms(&self) -> Vec<Algorithm> {
        self.algorithm.map_or_else(|| Algorithm::ALL.to_vec(), |a| vec![a])
    }
}

fn create(path: &PathBuf) -> Result<BufWriter<File>> {
    let f = File::create(path).with_context(|| format!("cannot create {}", path.display()))?;
    Ok(BufWriter::new(f))
}

fn write_trace(args: &Args, cfg: &WorldConfig, path: &PathBuf) -> Result<()> {
    let mut lines = Vec::new();
    for alg in args.algorithms() {
        let mut c = paired_config(cfg, args.seed, 0);
        c.tracker.algorithm = alg;
        let trace = run(&c, true)?.trace.unwrap_or_default();
        for r in trace {
            let mut v = serde_json::to_value(r)?;
            v["algorithm"] = json!(alg.number());
            lines.push(v);
        }
    }
    write_jsonl(&lines, create(path)?)?;
    Ok(())
}

fn print_table(summaries: &[BatchSummary]) {
    println!(
        "{:>4} {:>6} {:>6} {:>4} {:>7} {:>12} {:>12} {:>14} {:>11}",
        "alg", "alpha", "beta", "tau", "caught", "ttc", "hops", "active", "transfers"
    );
    for s in summaries {
        println!(
            "{:>4} {:>6} {:>6} {:>4} {:>3}/{:<3} {:>6.2}±{:<5.2} {:>7.1}±{:<6.1} {:>8.1}±{:<6.1} {:>5.1}±{:<5.1}",
            s.algorithm.number(),
            s.alpha.to_string(),
            s.beta.to_string(),
            s.tau,
            s.caught,
            s.runs,
            s.time_to_catch.mean,
            s.time_to_catch.std_dev,
            s.hop_count.mean,
            s.hop_count.std_dev,
            s.active_node_steps.mean,
            s.active_node_steps.std_dev,
            s.transfers_to_sink.mean,
            s.transfers_to_sink.std_dev,
        );
    }
}

fn main() -> ExitCode {
    match try_main(Args::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn try_main(args: Args) -> Result<()> {
    let cfg = args.world()?;
    let exec = if args.sequential { Execution::Sequential } else { Execution::default() };

    let sweeping = args.sweep_alpha.is_some() || args.sweep_beta.is_some();
    let summaries = if sweeping {
        let alphas = args.sweep_alpha.clone().map(|l| l.0).unwrap_or_else(|| vec![args.alpha]);
        let betas = args.sweep_beta.clone().map(|l| l.0).unwrap_or_else(|| vec![args.beta]);
        let sw = sweep(&cfg, &alphas, &betas, args.runs, args.seed, exec)?;
        if let Some(path) = &args.matrix {
            write_sweep_matrix_csv(&sw, |s| s.hop_count.mean, create(path)?)?;
        }
        sw.cells
    } else {
        if args.matrix.is_some() {
            bail!("--matrix requires --sweep-alpha or --sweep-beta");
        }
        match args.algorithm {
            Some(_) => vec![run_batch_with(&cfg, args.runs, args.seed, exec)?],
            None => compare_algorithms(&cfg, args.runs, args.seed, exec)?,
        }
    };

    if let Some(path) = &args.trace {
        write_trace(&args, &cfg, path)?;
    }

    let emit = |out: &mut dyn Write| -> Result<()> {
        match args.format {
            Format::Csv => write_summaries_csv(&summaries, out)?,
            Format::Json => {
                write_summaries_json(&summaries, &mut *out)?;
                writeln!(out)?;
            }
        }
        Ok(())
    };
    match &args.out {
        Some(path) => {
            let mut w = create(path)?;
            emit(&mut w)?;
            w.flush()?;
            print_table(&summaries);
        }
        None => emit(&mut io::stdout().lock())?,
    }
    Ok(())
}
