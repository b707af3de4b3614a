//! Deterministic headless Breakout- and Pong-like environments.
//!
//! Positions are in frame pixel coordinates where pixel `i` covers
//! `[i - 0.5, i + 0.5)`, so an object of size `n` centred at `x` is drawn on
//! pixels `round(x - (n - 1) / 2) ..` and its pixel mean lands within half a
//! pixel of `x`. Frames are 210×160 like the Atari screen.
//!
//! One call to [`SimState::step`] repeats the action for `frameskip` physics
//! ticks and sums the rewards. Breakout gives each destroyed brick's value
//! and -1 per life lost; Pong gives +1/-1 per point.

mod physics;
mod render;

pub use physics::{
    brick_rect, opponent_line, paddle_line, paddle_range, reset, Ball, Event, SimError, SimState,
    StepOutcome,
};
pub use render::render;

use serde::{Deserialize, Serialize};

use crate::config::{ensure, ConfigError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Game {
    Breakout,
    Pong,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimConfig {
    pub game: Game,
    pub field_left: usize,
    pub field_top: usize,
    pub field_width: usize,
    pub field_height: usize,
    /// Paddle extent along its direction of travel.
    pub paddle_length: usize,
    pub paddle_thickness: usize,
    /// Distance from the paddle centre to the field edge behind it.
    pub paddle_inset: f64,
    /// Paddle travel per physics tick while a button is held.
    pub paddle_speed: f64,
    pub ball_size: usize,
    /// Ball travel per physics tick.
    pub ball_speed: f64,
    /// Serve angle range, measured from the paddle's normal.
    pub serve_angle_min_deg: f64,
    pub serve_angle_max_deg: f64,
    /// Outgoing angle range after a paddle hit, measured from the normal.
    pub bounce_angle_min_deg: f64,
    pub bounce_angle_max_deg: f64,
    pub brick_rows: usize,
    pub brick_cols: usize,
    /// Offset of the first brick row below the field top.
    pub brick_top: usize,
    pub brick_height: usize,
    /// Points per brick row, top row first.
    pub brick_values: Vec<i64>,
    pub lives: u32,
    /// Opponent paddle travel cap per physics tick (Pong).
    pub opponent_speed: f64,
    pub points_to_win: u32,
    /// Physics ticks before an automatic serve (Pong).
    pub serve_delay: u32,
    pub frameskip: u32,
    pub seed: u64,
}

impl Default for SimConfig {
    fn default() -> Self {
        Self::breakout()
    }
}

impl SimConfig {
    pub fn breakout() -> Self {
        Self {
            game: Game::Breakout,
            field_left: 14,
            field_top: 96,
            field_width: 132,
            field_height: 100,
            paddle_length: 16,
            paddle_thickness: 3,
            paddle_inset: 9.0,
            paddle_speed: 1.5,
            ball_size: 2,
            ball_speed: 0.75,
            serve_angle_min_deg: 15.0,
            serve_angle_max_deg: 45.0,
            bounce_angle_min_deg: 15.0,
            bounce_angle_max_deg: 60.0,
            brick_rows: 6,
            brick_cols: 12,
            brick_top: 12,
            brick_height: 4,
            brick_values: vec![7, 7, 4, 4, 1, 1],
            lives: 5,
            opponent_speed: 0.0,
            points_to_win: 21,
            serve_delay: 0,
            frameskip: 4,
            seed: 0,
        }
    }

    pub fn pong() -> Self {
        Self {
            game: Game::Pong,
            field_top: 86,
            paddle_thickness: 4,
            paddle_inset: 3.5,
            serve_angle_min_deg: 10.0,
            serve_angle_max_deg: 40.0,
            bounce_angle_min_deg: 10.0,
            bounce_angle_max_deg: 55.0,
            brick_rows: 0,
            brick_cols: 0,
            brick_values: Vec::new(),
            lives: 0,
            opponent_speed: 0.375,
            serve_delay: 16,
            ..Self::breakout()
        }
    }

    pub fn preset(game: Game) -> Self {
        match game {
            Game::Breakout => Self::breakout(),
            Game::Pong => Self::pong(),
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        ensure(self.field_width > 0, "sim.field_width", "must be positive")?;
        ensure(
            self.field_height > 0,
            "sim.field_height",
            "must be positive",
        )?;
        ensure(
            self.field_left + self.field_width <= render::FRAME_WIDTH,
            "sim.field_width",
            "field must fit the 160-pixel frame width",
        )?;
        ensure(
            self.field_top + self.field_height <= render::FRAME_HEIGHT,
            "sim.field_height",
            "field must fit the 210-pixel frame height",
        )?;
        ensure(
            self.paddle_length > 0,
            "sim.paddle_length",
            "must be positive",
        )?;
        ensure(
            self.paddle_thickness > 0,
            "sim.paddle_thickness",
            "must be positive",
        )?;
        ensure(self.ball_size > 0, "sim.ball_size", "must be positive")?;
        ensure(
            positive(self.paddle_speed),
            "sim.paddle_speed",
            "must be finite and positive",
        )?;
        ensure(
            positive(self.ball_speed),
            "sim.ball_speed",
            "must be finite and positive",
        )?;
        let along = match self.game {
            Game::Breakout => self.field_width,
            Game::Pong => self.field_height,
        };
        ensure(
            self.paddle_length < along,
            "sim.paddle_length",
            "paddle must be shorter than the field",
        )?;
        ensure(
            self.paddle_inset.is_finite() && self.paddle_inset > 0.0,
            "sim.paddle_inset",
            "must be finite and positive",
        )?;
        ensure(
            angle_range(self.serve_angle_min_deg, self.serve_angle_max_deg),
            "sim.serve_angle_min_deg",
            "need 0 <= min <= max < 90",
        )?;
        ensure(
            angle_range(self.bounce_angle_min_deg, self.bounce_angle_max_deg),
            "sim.bounce_angle_min_deg",
            "need 0 <= min <= max < 90",
        )?;
        ensure(self.frameskip >= 1, "sim.frameskip", "must be at least 1")?;
        match self.game {
            Game::Breakout => {
                ensure(self.lives >= 1, "sim.lives", "must be at least 1")?;
                ensure(self.brick_rows >= 1, "sim.brick_rows", "must be positive")?;
                ensure(self.brick_cols >= 1, "sim.brick_cols", "must be positive")?;
                ensure(
                    self.brick_height >= 1,
                    "sim.brick_height",
                    "must be positive",
                )?;
                ensure(
                    self.brick_values.len() == self.brick_rows,
                    "sim.brick_values",
                    "need one value per brick row",
                )?;
                ensure(
                    self.field_width.is_multiple_of(self.brick_cols),
                    "sim.brick_cols",
                    "must divide the field width",
                )?;
                ensure(
                    self.brick_bottom() + 2.0 * (self.ball_size as f64)
                        < (self.field_height as f64)
                            - self.paddle_inset
                            - (self.paddle_thickness as f64),
                    "sim.brick_rows",
                    "bricks leave no room above the paddle",
                )?;
            }
            Game::Pong => {
                ensure(
                    self.points_to_win >= 1,
                    "sim.points_to_win",
                    "must be at least 1",
                )?;
                ensure(
                    self.opponent_speed.is_finite()
                        && self.opponent_speed >= 0.0
                        && self.opponent_speed < self.ball_speed,
                    "sim.opponent_speed",
                    "must be non-negative and below the ball speed",
                )?;
            }
        }
        Ok(())
    }

    /// Field edges in continuous coordinates, where pixel `i` spans
    /// `[i - 0.5, i + 0.5)`.
    pub fn field_right(&self) -> f64 {
        (self.field_left + self.field_width) as f64 - 0.5
    }

    pub fn field_bottom(&self) -> f64 {
        (self.field_top + self.field_height) as f64 - 0.5
    }

    pub fn field_left_edge(&self) -> f64 {
        self.field_left as f64 - 0.5
    }

    pub fn field_top_edge(&self) -> f64 {
        self.field_top as f64 - 0.5
    }

    fn brick_bottom(&self) -> f64 {
        (self.brick_top + self.brick_rows * self.brick_height) as f64
    }

    pub fn brick_width(&self) -> usize {
        self.field_width / self.brick_cols.max(1)
    }

    /// Sum of all brick values.
    pub fn max_breakout_score(&self) -> i64 {
        self.brick_values.iter().sum::<i64>() * self.brick_cols as i64
    }
}

fn positive(v: f64) -> bool {
    v.is_finite() && v > 0.0
}

fn angle_range(min: f64, max: f64) -> bool {
    min.is_finite() && max.is_finite() && 0.0 <= min && min <= max && max < 90.0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_are_valid() {
        SimConfig::breakout().validate().unwrap();
        SimConfig::pong().validate().unwrap();
    }

    #[test]
    fn invalid_fields_are_named() {
        let cfg = SimConfig {
            frameskip: 0,
            ..SimConfig::breakout()
        };
        assert_eq!(cfg.validate().unwrap_err().field, "sim.frameskip");
        let cfg = SimConfig {
            brick_values: vec![1],
            ..SimConfig::breakout()
        };
        assert_eq!(cfg.validate().unwrap_err().field, "sim.brick_values");
        let cfg = SimConfig {
            ball_speed: f64::NAN,
            ..SimConfig::pong()
        };
        assert_eq!(cfg.validate().unwrap_err().field, "sim.ball_speed");
        let cfg = SimConfig {
            field_width: 200,
            ..SimConfig::pong()
        };
        assert_eq!(cfg.validate().unwrap_err().field, "sim.field_width");
    }

    #[test]
    fn breakout_wall_value() {
        assert_eq!(SimConfig::breakout().max_breakout_score(), 12 * 24);
    }
}
