use serde::{Deserialize, Serialize};

use super::blobs::Blob;
use crate::config::{ensure, ConfigError};
use crate::pct::Axis;

/// Inclusive rectangle in cropped coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Zone {
    pub top: usize,
    pub bottom: usize,
    pub left: usize,
    pub right: usize,
}

impl Zone {
    pub fn intersects(&self, b: &Blob) -> bool {
        b.min_row <= self.bottom
            && b.max_row >= self.top
            && b.min_col <= self.right
            && b.max_col >= self.left
    }
}

/// Where the controlled paddle lives and what a ball looks like.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GameLayout {
    pub control_axis: Axis,
    pub paddle_zone: Zone,
    pub ball_area_min: usize,
    pub ball_area_max: usize,
    /// Largest accepted long-side/short-side ratio of a ball's bounding box.
    pub ball_max_aspect: f64,
    /// Ticks a missing ball keeps its last position before it is dropped.
    pub ball_hold_ticks: u32,
    /// Paddle motion below this many pixels counts as stationary.
    pub direction_dead_band: f64,
}

impl Default for GameLayout {
    fn default() -> Self {
        Self::breakout()
    }
}

impl GameLayout {
    /// Layout for the built-in Breakout field under the default crop.
    pub fn breakout() -> Self {
        Self {
            control_axis: Axis::Horizontal,
            paddle_zone: Zone {
                top: 86,
                bottom: 99,
                left: 0,
                right: 131,
            },
            ball_area_min: 1,
            ball_area_max: 12,
            ball_max_aspect: 2.5,
            ball_hold_ticks: 4,
            direction_dead_band: 0.25,
        }
    }

    /// Layout for the built-in Pong field (agent paddle on the right).
    pub fn pong() -> Self {
        Self {
            control_axis: Axis::Vertical,
            paddle_zone: Zone {
                top: 0,
                bottom: 99,
                left: 124,
                right: 131,
            },
            ..Self::breakout()
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let z = &self.paddle_zone;
        ensure(
            z.top <= z.bottom && z.left <= z.right,
            "layout.paddle_zone",
            "zone is empty",
        )?;
        ensure(
            self.ball_area_min >= 1 && self.ball_area_min <= self.ball_area_max,
            "layout.ball_area_min",
            "need 1 <= ball_area_min <= ball_area_max",
        )?;
        ensure(
            self.ball_max_aspect >= 1.0,
            "layout.ball_max_aspect",
            "must be at least 1",
        )?;
        ensure(
            self.direction_dead_band.is_finite() && self.direction_dead_band >= 0.0,
            "layout.direction_dead_band",
            "must be finite and non-negative",
        )?;
        Ok(())
    }

    fn looks_like_ball(&self, b: &Blob) -> bool {
        !self.paddle_zone.intersects(b)
            && (self.ball_area_min..=self.ball_area_max).contains(&b.area)
            && b.aspect() <= self.ball_max_aspect
    }
}

/// Tracked ball and paddle estimates in cropped coordinates.
#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct PerceptState {
    pub ball_x: f64,
    pub ball_y: f64,
    pub ball_valid: bool,
    /// `(vx, vy)` in px/tick; only set after two consecutive detections.
    pub ball_velocity: Option<(f64, f64)>,
    /// Paddle centroid projected on the control axis.
    pub paddle_axis: f64,
    pub paddle_valid: bool,
    /// Paddle motion along the control axis since the previous tick.
    pub paddle_delta: f64,
    /// Sign of `paddle_delta` outside the dead band: -1, 0 or +1.
    pub direction: i8,
    /// Consecutive ticks without a ball detection.
    pub stale_ticks: u32,
}

impl PerceptState {
    pub fn ball_axis(&self, axis: Axis) -> f64 {
        axis.project(self.ball_x, self.ball_y)
    }
}

/// Picks the paddle and the ball out of a blob list sorted largest first.
///
/// The paddle is the largest blob touching the paddle zone. The ball is the
/// largest blob outside it whose size and shape fit the ball bounds.
pub fn classify(blobs: &[Blob], layout: &GameLayout) -> (Option<Blob>, Option<Blob>) {
    let paddle = blobs
        .iter()
        .find(|b| layout.paddle_zone.intersects(b))
        .cloned();
    let ball = blobs.iter().find(|b| layout.looks_like_ball(b)).cloned();
    (ball, paddle)
}

/// Folds one frame's detections into the tracked state.
pub fn track(
    prev: &PerceptState,
    ball: Option<&Blob>,
    paddle: Option<&Blob>,
    layout: &GameLayout,
) -> PerceptState {
    let mut next = prev.clone();

    match ball {
        Some(b) => {
            let consecutive = prev.ball_valid && prev.stale_ticks == 0;
            next.ball_velocity =
                consecutive.then_some((b.centroid_x - prev.ball_x, b.centroid_y - prev.ball_y));
            next.ball_x = b.centroid_x;
            next.ball_y = b.centroid_y;
            next.ball_valid = true;
            next.stale_ticks = 0;
        }
        None => {
            next.stale_ticks = prev.stale_ticks.saturating_add(1);
            next.ball_velocity = None;
            next.ball_valid = prev.ball_valid && next.stale_ticks <= layout.ball_hold_ticks;
        }
    }

    match paddle {
        Some(p) => {
            let axis = layout.control_axis.project(p.centroid_x, p.centroid_y);
            next.paddle_delta = if prev.paddle_valid {
                axis - prev.paddle_axis
            } else {
                0.0
            };
            next.direction = if next.paddle_delta > layout.direction_dead_band {
                1
            } else if next.paddle_delta < -layout.direction_dead_band {
                -1
            } else {
                0
            };
            next.paddle_axis = axis;
            next.paddle_valid = true;
        }
        None => {
            next.paddle_valid = false;
            next.paddle_delta = 0.0;
            next.direction = 0;
        }
    }
    next
}
