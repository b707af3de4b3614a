use serde::{Deserialize, Serialize};

use super::press::{DutyAccumulator, Press, PressIntegrator};
use super::unit::{ControlUnit, SignalError};
use crate::config::{ensure, ConfigError};
use crate::perception::PerceptState;
use crate::Action;

pub const LEVELS: usize = 4;

/// The coordinate along which the paddle moves.
///
/// `Vertical` is measured upward (negated row), so RIGHT always moves the
/// paddle toward larger axis values. For vertical games RIGHT means UP.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    #[default]
    Horizontal,
    Vertical,
}

impl Axis {
    pub fn project(self, x: f64, y: f64) -> f64 {
        match self {
            Axis::Horizontal => x,
            Axis::Vertical => -y,
        }
    }
}

/// Constants of the hierarchy.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct HierarchySpec {
    /// Gain of each level, top (distance) first.
    pub gains: [f64; LEVELS],
    /// Distance goal for the top level.
    pub top_reference: f64,
    /// Consecutive same-direction presses allowed before the integrator resets.
    pub integrator_limit: u32,
    /// Press duty per unit of button-press error.
    pub press_rate_scale: f64,
    pub control_axis: Axis,
    /// Ticks the ball may be missing before FIRE is requested.
    pub fire_hold_ticks: u32,
}

impl Default for HierarchySpec {
    fn default() -> Self {
        Self {
            gains: [1.0; LEVELS],
            top_reference: 0.0,
            integrator_limit: 3,
            press_rate_scale: DEFAULT_PRESS_RATE_SCALE,
            control_axis: Axis::Horizontal,
            fire_hold_ticks: 8,
        }
    }
}

/// An error of this many pixels presses on every tick.
const SATURATING_ERROR_PX: f64 = 8.0;
const DEFAULT_PRESS_RATE_SCALE: f64 = 1.0 / SATURATING_ERROR_PX;

impl HierarchySpec {
    pub fn vertical() -> Self {
        Self {
            control_axis: Axis::Vertical,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        ensure(
            self.gains.iter().all(|g| g.is_finite() && *g > 0.0),
            "hierarchy.gains",
            "every gain must be finite and positive",
        )?;
        ensure(
            self.top_reference.is_finite(),
            "hierarchy.top_reference",
            "must be finite",
        )?;
        ensure(
            self.integrator_limit >= 1,
            "hierarchy.integrator_limit",
            "must be at least 1",
        )?;
        ensure(
            self.press_rate_scale.is_finite() && self.press_rate_scale > 0.0,
            "hierarchy.press_rate_scale",
            "must be finite and positive",
        )?;
        Ok(())
    }
}

/// Mutable state of the four levels plus the press machinery.
#[derive(Debug, Clone, PartialEq)]
pub struct HierarchyState {
    /// Distance, direction, displacement and button-press units, top first.
    pub units: [ControlUnit; LEVELS],
    pub integrator: PressIntegrator,
    pub duty: DutyAccumulator,
    /// Press emitted on the previous tick; perceived by the bottom level.
    pub last_press: Press,
}

impl HierarchyState {
    pub fn new(spec: &HierarchySpec) -> Self {
        Self {
            units: spec.gains.map(ControlUnit::new),
            integrator: PressIntegrator::default(),
            duty: DutyAccumulator::default(),
            last_press: Press::Idle,
        }
    }

    /// Runs one tick of the cascade and returns the action for this tick.
    pub fn step(
        &mut self,
        spec: &HierarchySpec,
        percept: &PerceptState,
    ) -> Result<Action, SignalError> {
        let tracking = percept.ball_valid && percept.paddle_valid;
        let distance = if tracking {
            percept.ball_axis(spec.control_axis) - percept.paddle_axis
        } else {
            0.0
        };
        let (direction, displacement) = if percept.paddle_valid {
            (-f64::from(percept.direction), -percept.paddle_delta)
        } else {
            (0.0, 0.0)
        };

        let [distance_unit, direction_unit, position_unit, press_unit] = &mut self.units;
        let (_, r2) = distance_unit.step(distance, spec.top_reference)?;
        let (_, r3) = direction_unit.step(direction, r2.get())?;
        let (_, r4) = position_unit.step(displacement, r3.get())?;
        let (e4, _) = press_unit.step(self.last_press.distance_sign(), r4.get())?;

        if !percept.ball_valid && percept.stale_ticks > spec.fire_hold_ticks {
            self.duty.reset();
            self.integrator.reset();
            self.last_press = Press::Idle;
            return Ok(Action::Fire);
        }

        let press = self.duty.next(e4.get(), spec.press_rate_scale);
        let action = self.integrator.update(press, spec.integrator_limit);
        self.last_press = match action {
            Action::Left => Press::Left,
            Action::Right => Press::Right,
            _ => Press::Idle,
        };
        Ok(action)
    }

    pub fn errors(&self) -> [f64; LEVELS] {
        self.units.each_ref().map(|u| u.last_error.get())
    }

    pub fn references(&self) -> [f64; LEVELS] {
        self.units.each_ref().map(|u| u.reference.get())
    }
}

/// A hierarchy bundled with its constants.
#[derive(Debug, Clone)]
pub struct Hierarchy {
    spec: HierarchySpec,
    state: HierarchyState,
}

impl Hierarchy {
    pub fn new(spec: HierarchySpec) -> Result<Self, ConfigError> {
        spec.validate()?;
        let state = HierarchyState::new(&spec);
        Ok(Self { spec, state })
    }

    pub fn spec(&self) -> &HierarchySpec {
        &self.spec
    }

    pub fn state(&self) -> &HierarchyState {
        &self.state
    }

    pub fn step(&mut self, percept: &PerceptState) -> Result<Action, SignalError> {
        self.state.step(&self.spec, percept)
    }

    pub fn reset(&mut self) {
        self.state = HierarchyState::new(&self.spec);
    }
}
