//! Grid wireless-sensor-network simulator for chasing a moving target with
//! a mobile sink.
//!
//! Three tracking protocols decide which sensor nodes to wake and when to
//! tell the sink where the target is. Every run accounts for hop count,
//! active node-steps and transfers to the sink alongside time-to-catch, and
//! the [`experiment`] module batches runs on paired seeds for comparison.

pub mod cost;
pub mod engine;
pub mod error;
pub mod experiment;
pub mod grid;
pub mod ratio;
pub mod sink;
pub mod target;
pub mod tracker;

pub use cost::RunMetrics;
pub use engine::{replay, run, RunOutcome, TraceRecord, WorldConfig};
pub use error::ConfigError;
pub use experiment::{
    compare_algorithms, run_batch, run_batch_with, sweep, BatchSummary, Execution, Stat, Sweep,
};
pub use grid::{distance, GridConfig, SegmentCoord};
pub use ratio::Ratio;
pub use sink::{sink_step, SinkState};
pub use target::{target_step, Heading, TargetMotionConfig, TargetState};
pub use tracker::{
    heuristic_update, Algorithm, CollectionModel, EventSummary, StepEvents, Tracker, TrackerParams,
    TrackerState,
};
