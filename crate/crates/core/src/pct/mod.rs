//! Perceptual control units and the four-level paddle hierarchy.
//!
//! Every level is the same comparator: `error = gain * (reference - perception)`,
//! and its output (identical to its error) becomes the reference of the level
//! below. From top to bottom the levels control:
//!
//! 1. the ball-paddle distance `D` along the control axis (reference 0),
//! 2. the paddle's direction of motion,
//! 3. the paddle's displacement since the previous tick,
//! 4. the button press, whose error is turned into a press frequency and
//!    passed through a press integrator that caps consecutive presses.
//!
//! All perceptions below level 1 are expressed in the orientation of `D`:
//! paddle motion toward the positive axis shrinks `D`, so it enters those
//! levels with a negative sign. That keeps every loop a negative feedback loop
//! with positive gains.

mod hierarchy;
mod press;
mod unit;

pub use hierarchy::{Axis, Hierarchy, HierarchySpec, HierarchyState, LEVELS};
pub use press::{DutyAccumulator, Press, PressIntegrator};
pub use unit::{ControlUnit, Signal, SignalError};
