//! One simulation run.
//!
//! Per time step: the target moves, the tracker senses and communicates using
//! the target's new position and the sink's current one, costs accumulate,
//! the sink moves toward the tracker's guidance, and the run stops if the sink
//! now shares the target's segment.

use std::io::{self, Write};

use serde::{Deserialize, Serialize};

use crate::cost::RunMetrics;
use crate::error::ConfigError;
use crate::grid::{GridConfig, SegmentCoord};
use crate::sink::{sink_step, SinkState};
use crate::target::{target_step, TargetMotionConfig, TargetState};
use crate::tracker::{EventSummary, Tracker, TrackerParams};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WorldConfig {
    pub grid: GridConfig,
    pub target: TargetMotionConfig,
    pub sink_velocity: u32,
    pub sink_start: SegmentCoord,
    pub target_start: SegmentCoord,
    pub tracker: TrackerParams,
    pub max_steps: u64,
}

impl WorldConfig {
    /// `10 * (width + height)`.
    pub fn default_max_steps(grid: GridConfig) -> u64 {
        10 * (u64::from(grid.width) + u64::from(grid.height))
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        GridConfig::new(self.grid.width, self.grid.height)?;
        for c in [self.sink_start, self.target_start] {
            self.grid.coord(c.x, c.y)?;
        }
        if self.sink_velocity == 0 {
            return Err(ConfigError::ZeroSinkVelocity);
        }
        if self.max_steps == 0 {
            return Err(ConfigError::ZeroMaxSteps);
        }
        self.target.validate()?;
        self.tracker.validate()
    }
}

impl Default for WorldConfig {
    fn default() -> Self {
        let grid = GridConfig::default();
        Self {
            grid,
            target: TargetMotionConfig::default(),
            sink_velocity: 4,
            sink_start: SegmentCoord::new(160, 160),
            target_start: SegmentCoord::new(66, 66),
            tracker: TrackerParams::default(),
            max_steps: Self::default_max_steps(grid),
        }
    }
}

/// State after step `step`, with that step's events.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub step: u64,
    pub target: SegmentCoord,
    pub sink: SegmentCoord,
    pub anchor: SegmentCoord,
    pub events: EventSummary,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOutcome {
    pub metrics: RunMetrics,
    pub trace: Option<Vec<TraceRecord>>,
}

pub fn run(cfg: &WorldConfig, record_trace: bool) -> Result<RunOutcome, ConfigError> {
    cfg.validate()?;
    let grid = cfg.grid;
    let mut target = TargetState::new(cfg.target_start, &cfg.target);
    let mut sink = SinkState { position: cfg.sink_start, velocity: cfg.sink_velocity };
    let mut tracker = Tracker::new(cfg.tracker, grid, cfg.sink_velocity);
    let mut metrics = RunMetrics::default();
    let mut trace = record_trace.then(Vec::new);

    if sink.position == target.position {
        metrics.caught = true;
        return Ok(RunOutcome { metrics, trace });
    }

    for step in 1..=cfg.max_steps {
        target = target_step(target, &cfg.target, grid);
        let events = tracker.step(sink.position, target.position).summary();
        metrics.accumulate(&events);
        sink.position = sink_step(sink, events.guidance);
        metrics.time_to_catch = step;
        if let Some(t) = trace.as_mut() {
            t.push(TraceRecord {
                step,
                target: target.position,
                sink: sink.position,
                anchor: tracker.state().anchor,
                events,
            });
        }
        if sink.position == target.position {
            metrics.caught = true;
            break;
        }
    }
    Ok(RunOutcome { metrics, trace })
}

/// Re-derives run metrics from a trace.
pub fn replay(trace: &[TraceRecord], start_caught: bool) -> RunMetrics {
    let mut m = RunMetrics { caught: start_caught, ..RunMetrics::default() };
    for r in trace {
        m.accumulate(&r.events);
        m.time_to_catch = r.step;
        m.caught = r.sink == r.target;
    }
    m
}

/// Writes one JSON object per line.
pub fn write_jsonl<T: Serialize, W: Write>(records: &[T], mut out: W) -> io::Result<()> {
    for r in records {
        serde_json::to_writer(&mut out, r)?;
        out.write_all(b"\n")?;
    }
    out.flush()
}
