use thiserror::Error;

use crate::grid::{GridConfig, SegmentCoord};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConfigError {
    #[error("grid must be at least 1x1, got {width}x{height}")]
    EmptyGrid { width: u32, height: u32 },
    #[error("segment {coord} lies outside the {grid} grid")]
    OutOfBounds { coord: SegmentCoord, grid: GridConfig },
    #[error("persistence must lie in [0, 1], got {0}")]
    Persistence(f64),
    #[error("sink velocity must be at least 1")]
    ZeroSinkVelocity,
    #[error("tau must be at least 1")]
    ZeroTau,
    #[error("max_steps must be at least 1")]
    ZeroMaxSteps,
    #[error("run count must be at least 1")]
    ZeroRuns,
    #[error("sweep needs at least one alpha and one beta value")]
    EmptySweep,
    #[error("invalid ratio {0:?}: expected a non-negative decimal, `a/b` or `inf`")]
    Ratio(String),
    #[error("unknown algorithm {0:?}: expected 1, 2 or 3")]
    Algorithm(String),
}
