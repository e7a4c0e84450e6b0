//! Data-collection cost and tracking-performance counters for one run.
//!
//! Hop lengths are city-block distances: each node reaches exactly its four
//! axis neighbours, so the shortest multihop path between two nodes has one
//! hop per unit of city-block distance.

use serde::{Deserialize, Serialize};

use crate::tracker::EventSummary;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct RunMetrics {
    /// Completed time steps when the run stopped.
    pub time_to_catch: u64,
    pub hop_count: u64,
    /// Sum over steps of awake nodes, the collector included.
    pub active_node_steps: u64,
    pub transfers_to_sink: u64,
    pub caught: bool,
}

impl RunMetrics {
    pub fn accumulate(&mut self, events: &EventSummary) {
        self.hop_count += events.collection_hops;
        if let Some(t) = events.transfer {
            self.hop_count += t.hops;
            self.transfers_to_sink += 1;
        }
        if let Some(h) = events.handoff {
            self.hop_count += h.hops;
        }
        self.active_node_steps += events.activated + 1;
    }
}
