//! World geometry: segment coordinates, the city-block metric and the
//! neighbourhoods built on it.
//!
//! Coordinates are zero-based. The monitored area is `width x height`
//! segments and every segment hosts exactly one sensor node, so a
//! coordinate doubles as a node identifier.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::ConfigError;

/// A grid cell, identified by its column `x` and row `y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SegmentCoord {
    pub x: u32,
    pub y: u32,
}

impl SegmentCoord {
    pub const fn new(x: u32, y: u32) -> Self {
        Self { x, y }
    }

    /// City-block distance to `other`.
    pub fn distance(self, other: SegmentCoord) -> u32 {
        distance(self, other)
    }

    /// Offsets this coordinate by `(dx, dy)`, returning `None` if the result
    /// would fall outside `grid`.
    pub fn offset(self, dx: i64, dy: i64, grid: GridConfig) -> Option<SegmentCoord> {
        let x = i64::from(self.x) + dx;
        let y = i64::from(self.y) + dy;
        if x < 0 || y < 0 || x >= i64::from(grid.width) || y >= i64::from(grid.height) {
            return None;
        }
        Some(SegmentCoord::new(x as u32, y as u32))
    }
}

impl fmt::Display for SegmentCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// Dimensions of the monitored area in segments.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GridConfig {
    pub width: u32,
    pub height: u32,
}

impl GridConfig {
    pub fn new(width: u32, height: u32) -> Result<Self, ConfigError> {
        if width == 0 || height == 0 {
            return Err(ConfigError::EmptyGrid { width, height });
        }
        Ok(Self { width, height })
    }

    pub fn contains(&self, c: SegmentCoord) -> bool {
        c.x < self.width && c.y < self.height
    }

    /// Checked coordinate construction.
    pub fn coord(&self, x: u32, y: u32) -> Result<SegmentCoord, ConfigError> {
        let c = SegmentCoord::new(x, y);
        if self.contains(c) {
            Ok(c)
        } else {
            Err(ConfigError::OutOfBounds { coord: c, grid: *self })
        }
    }

    /// The central segment `(width / 2, height / 2)`, rounded down.
    pub fn center(&self) -> SegmentCoord {
        SegmentCoord::new(self.width / 2, self.height / 2)
    }

    pub fn node_count(&self) -> u64 {
        u64::from(self.width) * u64::from(self.height)
    }

    /// All segments within city-block distance `radius` of `center`, clipped
    /// to the grid. Ordered by `x`, then `y`.
    pub fn ball(&self, center: SegmentCoord, radius: u32) -> Vec<SegmentCoord> {
        let r = i64::from(radius);
        let cx = i64::from(center.x);
        let cy = i64::from(center.y);
        let x_lo = (cx - r).max(0);
        let x_hi = (cx + r).min(i64::from(self.width) - 1);
        let mut out = Vec::with_capacity(ball_volume(radius).min(self.node_count()) as usize);
        for x in x_lo..=x_hi {
            let rem = r - (x - cx).abs();
            let y_lo = (cy - rem).max(0);
            let y_hi = (cy + rem).min(i64::from(self.height) - 1);
            out.extend((y_lo..=y_hi).map(|y| SegmentCoord::new(x as u32, y as u32)));
        }
        out
    }

    /// The in-bounds segments exactly `step` away from `c` along one axis.
    pub fn axis_neighbors(&self, c: SegmentCoord, step: u32) -> Vec<SegmentCoord> {
        let s = i64::from(step);
        [(s, 0), (-s, 0), (0, s), (0, -s)]
            .into_iter()
            .filter_map(|(dx, dy)| c.offset(dx, dy, *self))
            .collect()
    }
}

impl Default for GridConfig {
    fn default() -> Self {
        Self { width: 200, height: 200 }
    }
}

impl fmt::Display for GridConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.width, self.height)
    }
}

/// City-block distance `|a.x - b.x| + |a.y - b.y|`.
pub fn distance(a: SegmentCoord, b: SegmentCoord) -> u32 {
    a.x.abs_diff(b.x) + a.y.abs_diff(b.y)
}

/// Number of cells in an unclipped city-block ball: `2r^2 + 2r + 1`.
pub fn ball_volume(radius: u32) -> u64 {
    let r = u64::from(radius);
    2 * r * r + 2 * r + 1
}
