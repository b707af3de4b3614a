use serde::{Deserialize, Serialize};

use crate::Action;

/// Press decision of the lowest level before the integrator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Press {
    Left,
    Right,
    #[default]
    Idle,
}

impl Press {
    pub fn opposite(self) -> Press {
        match self {
            Press::Left => Press::Right,
            Press::Right => Press::Left,
            Press::Idle => Press::Idle,
        }
    }

    pub fn action(self) -> Action {
        match self {
            Press::Left => Action::Left,
            Press::Right => Action::Right,
            Press::Idle => Action::Noop,
        }
    }

    /// Effect of the press on the ball-paddle distance: LEFT raises it,
    /// RIGHT lowers it.
    pub fn distance_sign(self) -> f64 {
        match self {
            Press::Left => 1.0,
            Press::Right => -1.0,
            Press::Idle => 0.0,
        }
    }
}

/// Turns an error signal into a press frequency.
///
/// `|error| * scale` is added to a duty level every tick and a press is
/// emitted each time the level reaches one, so small errors still produce
/// occasional presses and errors with `|error| * scale >= 1` press on every
/// tick. A positive error asks for a larger ball-paddle distance and so
/// presses LEFT. The level is dropped when the error changes sign or
/// vanishes.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DutyAccumulator {
    level: f64,
    sign: f64,
}

impl DutyAccumulator {
    pub fn level(&self) -> f64 {
        self.level
    }

    pub fn next(&mut self, error: f64, scale: f64) -> Press {
        let drive = error * scale;
        if drive == 0.0 || !drive.is_finite() {
            self.level = 0.0;
            self.sign = 0.0;
            return Press::Idle;
        }
        let sign = drive.signum();
        if sign != self.sign {
            self.level = 0.0;
            self.sign = sign;
        }
        self.level += drive.abs();
        if self.level >= 1.0 {
            // one press per tick at most; whole presses beyond that are dropped
            self.level = self.level.fract();
            if sign > 0.0 {
                Press::Left
            } else {
                Press::Right
            }
        } else {
            Press::Idle
        }
    }

    pub fn reset(&mut self) {
        *self = Self::default();
    }
}

/// Counts consecutive same-direction presses.
///
/// When the count reaches the limit the count is cleared and the press for
/// that tick is replaced by a single press in the opposite direction, which
/// arrests the paddle instead of letting it run away.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct PressIntegrator {
    pub count: u32,
    pub direction: Press,
}

impl PressIntegrator {
    pub fn update(&mut self, press: Press, limit: u32) -> Action {
        if press == Press::Idle {
            self.count = 0;
            self.direction = Press::Idle;
            return Action::Noop;
        }
        if press == self.direction {
            self.count += 1;
        } else {
            self.direction = press;
            self.count = 1;
        }
        if self.count >= limit {
            self.count = 0;
            self.direction = Press::Idle;
            press.opposite().action()
        } else {
            press.action()
        }
    }

    pub fn reset(&mut self) {
        *self = Self::default();
    }
}
