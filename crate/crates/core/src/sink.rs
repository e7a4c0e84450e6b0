//! Greedy single-axis sink movement toward a guidance point.

use serde::{Deserialize, Serialize};

use crate::grid::SegmentCoord;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SinkState {
    pub position: SegmentCoord,
    pub velocity: u32,
}

/// Moves the sink one time step toward `guidance`.
///
/// Of the four segments `velocity` away along an axis, the one closest to
/// `guidance` lies along the axis with the larger remaining gap (x on ties).
/// The move is clamped to that gap so the sink lands exactly on the guidance
/// coordinate instead of overshooting it.
pub fn sink_step(sink: SinkState, guidance: SegmentCoord) -> SegmentCoord {
    let SegmentCoord { x, y } = sink.position;
    let gx = guidance.x.abs_diff(x);
    let gy = guidance.y.abs_diff(y);
    if gx == 0 && gy == 0 {
        return sink.position;
    }
    let toward = |from: u32, to: u32, gap: u32| {
        let len = sink.velocity.min(gap);
        if to > from {
            from + len
        } else {
            from - len
        }
    };
    if gx >= gy {
        SegmentCoord::new(toward(x, guidance.x, gx), y)
    } else {
        SegmentCoord::new(x, toward(y, guidance.y, gy))
    }
}
