//! Tracking protocols.
//!
//! All three protocols share the same sensing step: nodes in the prediction
//! set (the city-block ball of radius `prediction_radius` around the last
//! detection) are woken, report to a collector node, and the target is
//! located. They differ in when the sink is told about it:
//!
//! * [`Algorithm::Prediction`] reports every change of target location and
//!   moves the collector role along with the target.
//! * [`Algorithm::Intermediate`] keeps a fixed intermediate node as the
//!   sink's guidance point and replaces it every `tau` steps of target
//!   movement, or when the sink reaches it.
//! * [`Algorithm::Heuristic`] replaces the intermediate node only when the
//!   target has drifted far relative to the sink's distance, or when too much
//!   time has passed relative to the sink's remaining travel time.
//!
//! Before the first detection the collector is the central segment and the
//! target is found by expanding-ring discovery: balls of radius
//! `k * prediction_radius` around the collector, for `k = 1, 2, ...`, all
//! within the same time step.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::ConfigError;
use crate::grid::{distance, GridConfig, SegmentCoord};
use crate::ratio::Ratio;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Algorithm {
    /// Report every target move to the sink.
    Prediction,
    /// Intermediate node refreshed on a fixed period.
    Intermediate,
    /// Intermediate node refreshed by distance and time heuristics.
    Heuristic,
}

impl Algorithm {
    pub const ALL: [Algorithm; 3] = [Algorithm::Prediction, Algorithm::Intermediate, Algorithm::Heuristic];

    pub fn number(self) -> u8 {
        match self {
            Algorithm::Prediction => 1,
            Algorithm::Intermediate => 2,
            Algorithm::Heuristic => 3,
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.number())
    }
}

impl FromStr for Algorithm {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "1" => Ok(Algorithm::Prediction),
            "2" => Ok(Algorithm::Intermediate),
            "3" => Ok(Algorithm::Heuristic),
            other => Err(ConfigError::Algorithm(other.to_string())),
        }
    }
}

/// Which woken nodes send a reading to the collector each step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CollectionModel {
    /// Only the node that detects the target reports.
    #[default]
    Detections,
    /// Every activated node reports, detection or not.
    AllNodes,
}

impl FromStr for CollectionModel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "detections" => Ok(CollectionModel::Detections),
            "all-nodes" => Ok(CollectionModel::AllNodes),
            other => Err(format!("unknown collection model {other:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrackerParams {
    pub algorithm: Algorithm,
    /// Assumed maximum target velocity; radius of the prediction set.
    pub prediction_radius: u32,
    pub tau: u32,
    pub alpha: Ratio,
    pub beta: Ratio,
    pub collection: CollectionModel,
}

impl TrackerParams {
    pub fn with_algorithm(self, algorithm: Algorithm) -> Self {
        Self { algorithm, ..self }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.tau == 0 {
            return Err(ConfigError::ZeroTau);
        }
        Ok(())
    }
}

impl Default for TrackerParams {
    fn default() -> Self {
        Self {
            algorithm: Algorithm::Heuristic,
            prediction_radius: 3,
            tau: 6,
            alpha: Ratio::new(20, 100),
            beta: Ratio::new(25, 100),
            collection: CollectionModel::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrackerState {
    /// Most recent detected target location.
    pub last_detected: SegmentCoord,
    /// Collector node: the target node or the intermediate node.
    pub anchor: SegmentCoord,
    /// Steps of target movement since the last intermediate update.
    pub delta_t: u32,
    pub acquired: bool,
}

impl TrackerState {
    pub fn init(grid: GridConfig) -> Self {
        let c = grid.center();
        Self { last_detected: c, anchor: c, delta_t: 0, acquired: false }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transfer {
    pub from: SegmentCoord,
    pub to_sink_at: SegmentCoord,
    pub hops: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Handoff {
    pub from: SegmentCoord,
    pub to: SegmentCoord,
    pub hops: u64,
}

/// Communication produced by one protocol step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepEvents {
    pub activated: Vec<SegmentCoord>,
    pub collection_hops: u64,
    pub transfer: Option<Transfer>,
    pub handoff: Option<Handoff>,
    pub guidance: SegmentCoord,
}

/// [`StepEvents`] with the activated set reduced to its size.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EventSummary {
    pub activated: u64,
    pub collection_hops: u64,
    pub transfer: Option<Transfer>,
    pub handoff: Option<Handoff>,
    pub guidance: SegmentCoord,
}

impl StepEvents {
    pub fn summary(&self) -> EventSummary {
        EventSummary {
            activated: self.activated.len() as u64,
            collection_hops: self.collection_hops,
            transfer: self.transfer,
            handoff: self.handoff,
            guidance: self.guidance,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sensing {
    pub detected: SegmentCoord,
    pub activated: Vec<SegmentCoord>,
}

/// Wakes the prediction set and locates the target.
///
/// After acquisition the target is always inside the prediction set when its
/// true velocity does not exceed `prediction_radius`. If it is not,
/// discovery restarts from the last detection.
pub fn sense(
    state: &mut TrackerState,
    true_target: SegmentCoord,
    params: &TrackerParams,
    grid: GridConfig,
) -> Sensing {
    let radius = params.prediction_radius;
    if state.acquired && distance(state.last_detected, true_target) <= radius {
        return Sensing { detected: true_target, activated: grid.ball(state.last_detected, radius) };
    }
    let center = if state.acquired { state.last_detected } else { state.anchor };
    let ring = radius.max(1);
    let rings = distance(center, true_target).div_ceil(ring).max(1);
    state.acquired = true;
    Sensing { detected: true_target, activated: grid.ball(center, rings * ring) }
}

fn collection_hops(model: CollectionModel, sensing: &Sensing, collector: SegmentCoord) -> u64 {
    match model {
        CollectionModel::Detections => u64::from(distance(sensing.detected, collector)),
        CollectionModel::AllNodes => {
            sensing.activated.iter().map(|&n| u64::from(distance(n, collector))).sum()
        }
    }
}

fn handoff(from: SegmentCoord, to: SegmentCoord) -> Option<Handoff> {
    (from != to).then(|| Handoff { from, to, hops: u64::from(distance(from, to)) })
}

/// The heuristic update condition, evaluated exactly.
///
/// Fires when the target has drifted from the intermediate node by more than
/// `alpha` times the sink's distance to that node, or when the time since the
/// last update exceeds `beta` times the sink's travel time to the target
/// (`d_st / sink_velocity`). Zero distances are resolved as: sink on the
/// intermediate node fires if the target has moved off it; sink on the target
/// always fires.
pub fn heuristic_update(
    d_it: u32,
    d_si: u32,
    d_st: u32,
    delta_t: u32,
    sink_velocity: u32,
    alpha: Ratio,
    beta: Ratio,
) -> bool {
    let drift = if d_si > 0 { alpha.is_exceeded_by(u64::from(d_it), u64::from(d_si)) } else { d_it > 0 };
    let stale = if d_st > 0 {
        beta.is_exceeded_by(u64::from(delta_t) * u64::from(sink_velocity), u64::from(d_st))
    } else {
        true
    };
    drift || stale
}

/// One protocol instance for one run.
#[derive(Debug, Clone)]
pub struct Tracker {
    params: TrackerParams,
    grid: GridConfig,
    sink_velocity: u32,
    state: TrackerState,
}

impl Tracker {
    pub fn new(params: TrackerParams, grid: GridConfig, sink_velocity: u32) -> Self {
        Self { params, grid, sink_velocity, state: TrackerState::init(grid) }
    }

    pub fn params(&self) -> &TrackerParams {
        &self.params
    }

    pub fn state(&self) -> &TrackerState {
        &self.state
    }

    /// Where the sink should currently head.
    pub fn guidance(&self) -> SegmentCoord {
        self.state.anchor
    }

    pub fn step(&mut self, sink_pos: SegmentCoord, true_target: SegmentCoord) -> StepEvents {
        match self.params.algorithm {
            Algorithm::Prediction => self.step_prediction(sink_pos, true_target),
            Algorithm::Intermediate | Algorithm::Heuristic => {
                self.step_intermediate(sink_pos, true_target)
            }
        }
    }

    fn step_prediction(&mut self, sink_pos: SegmentCoord, true_target: SegmentCoord) -> StepEvents {
        let first = !self.state.acquired;
        let sensing = sense(&mut self.state, true_target, &self.params, self.grid);
        let collector = self.state.anchor;
        let collection_hops = collection_hops(self.params.collection, &sensing, collector);
        let detected = sensing.detected;
        let (transfer, handoff) = if first || detected != self.state.last_detected {
            self.state.anchor = detected;
            self.state.last_detected = detected;
            let t = Transfer { from: detected, to_sink_at: sink_pos, hops: u64::from(distance(detected, sink_pos)) };
            (Some(t), handoff(collector, detected))
        } else {
            (None, None)
        };
        StepEvents { activated: sensing.activated, collection_hops, transfer, handoff, guidance: self.state.anchor }
    }

    fn step_intermediate(&mut self, sink_pos: SegmentCoord, true_target: SegmentCoord) -> StepEvents {
        let sensing = sense(&mut self.state, true_target, &self.params, self.grid);
        let anchor = self.state.anchor;
        let collection_hops = collection_hops(self.params.collection, &sensing, anchor);
        let detected = sensing.detected;
        self.state.last_detected = detected;

        let mut transfer = None;
        let mut moved = None;
        if detected != anchor {
            self.state.delta_t += 1;
            if self.update_due(sink_pos, detected) {
                self.state.delta_t = 0;
                self.state.anchor = detected;
                moved = handoff(anchor, detected);
                transfer = Some(Transfer {
                    from: detected,
                    to_sink_at: sink_pos,
                    hops: u64::from(distance(detected, sink_pos)),
                });
            }
        }
        StepEvents { activated: sensing.activated, collection_hops, transfer, handoff: moved, guidance: self.state.anchor }
    }

    fn update_due(&self, sink_pos: SegmentCoord, detected: SegmentCoord) -> bool {
        let anchor = self.state.anchor;
        match self.params.algorithm {
            Algorithm::Intermediate => self.state.delta_t >= self.params.tau || sink_pos == anchor,
            Algorithm::Heuristic => heuristic_update(
                distance(anchor, detected),
                distance(sink_pos, anchor),
                distance(sink_pos, detected),
                self.state.delta_t,
                self.sink_velocity,
                self.params.alpha,
                self.params.beta,
            ),
            Algorithm::Prediction => unreachable!("prediction tracking has no intermediate node"),
        }
    }
}
