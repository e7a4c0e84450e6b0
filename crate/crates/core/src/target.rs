//! Random target trajectory.
//!
//! Each time step is split into `velocity` unit moves. A unit move keeps the
//! current heading with probability `persistence` and otherwise turns to one
//! of the other three headings uniformly. A move that would leave the grid
//! re-draws the heading uniformly among the in-bounds ones. Per-step
//! displacement therefore never exceeds `velocity` in city-block distance.
//!
//! Randomness comes from ChaCha8 seeded with `seed`, with `stream` selecting
//! an independent keystream. Batches use one stream per run index, which
//! gives every run of a batch its own replayable trajectory.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::ConfigError;
use crate::grid::{GridConfig, SegmentCoord};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Heading {
    North,
    West,
    South,
    East,
}

impl Heading {
    pub const ALL: [Heading; 4] = [Heading::North, Heading::West, Heading::South, Heading::East];

    /// Unit offset; north is increasing `y`.
    pub fn delta(self) -> (i64, i64) {
        match self {
            Heading::North => (0, 1),
            Heading::West => (-1, 0),
            Heading::South => (0, -1),
            Heading::East => (1, 0),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TargetMotionConfig {
    /// Unit moves per time step.
    pub velocity: u32,
    /// Probability of keeping the current heading on each unit move.
    pub persistence: f64,
    pub seed: u64,
    pub stream: u64,
}

impl TargetMotionConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if !(0.0..=1.0).contains(&self.persistence) {
            return Err(ConfigError::Persistence(self.persistence));
        }
        Ok(())
    }
}

impl Default for TargetMotionConfig {
    fn default() -> Self {
        Self { velocity: 3, persistence: 0.9, seed: 0, stream: 0 }
    }
}

#[derive(Debug, Clone)]
pub struct TargetState {
    pub position: SegmentCoord,
    pub heading: Heading,
    rng: ChaCha8Rng,
}

impl TargetState {
    /// Seeds the generator from `cfg` and draws the initial heading.
    pub fn new(position: SegmentCoord, cfg: &TargetMotionConfig) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(cfg.stream);
        let heading = Heading::ALL[rng.random_range(0..4)];
        Self { position, heading, rng }
    }
}

impl PartialEq for TargetState {
    fn eq(&self, other: &Self) -> bool {
        self.position == other.position && self.heading == other.heading && self.rng == other.rng
    }
}

/// Advances the target by one time step.
pub fn target_step(mut state: TargetState, cfg: &TargetMotionConfig, grid: GridConfig) -> TargetState {
    for _ in 0..cfg.velocity {
        if !state.rng.random_bool(cfg.persistence) {
            let others: Vec<Heading> =
                Heading::ALL.into_iter().filter(|&h| h != state.heading).collect();
            state.heading = others[state.rng.random_range(0..others.len())];
        }
        let next = |h: Heading, p: SegmentCoord| {
            let (dx, dy) = h.delta();
            p.offset(dx, dy, grid)
        };
        let pos = match next(state.heading, state.position) {
            Some(p) => p,
            None => {
                let open: Vec<Heading> = Heading::ALL
                    .into_iter()
                    .filter(|&h| next(h, state.position).is_some())
                    .collect();
                if open.is_empty() {
                    // 1x1 grid: nowhere to go.
                    continue;
                }
                state.heading = open[state.rng.random_range(0..open.len())];
                next(state.heading, state.position).expect("heading drawn from open set")
            }
        };
        state.position = pos;
    }
    state
}
