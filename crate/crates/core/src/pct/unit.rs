use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SignalError {
    #[error("non-finite {what} signal: {value}")]
    NonFinite { what: &'static str, value: f64 },
}

/// A finite real-valued signal.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Signal(f64);

impl Signal {
    pub const ZERO: Signal = Signal(0.0);

    pub fn new(value: f64) -> Result<Signal, SignalError> {
        Self::named("input", value)
    }

    pub(crate) fn named(what: &'static str, value: f64) -> Result<Signal, SignalError> {
        if value.is_finite() {
            Ok(Signal(value))
        } else {
            Err(SignalError::NonFinite { what, value })
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for Signal {
    type Error = SignalError;

    fn try_from(value: f64) -> Result<Self, Self::Error> {
        Signal::new(value)
    }
}

impl From<Signal> for f64 {
    fn from(s: Signal) -> f64 {
        s.0
    }
}

/// A single comparator with a proportional (identity) output function.
#[derive(Debug, Clone, PartialEq)]
pub struct ControlUnit {
    pub gain: f64,
    pub reference: Signal,
    pub last_perception: Signal,
    pub last_error: Signal,
    pub last_output: Signal,
}

impl ControlUnit {
    pub fn new(gain: f64) -> Self {
        Self {
            gain,
            reference: Signal::ZERO,
            last_perception: Signal::ZERO,
            last_error: Signal::ZERO,
            last_output: Signal::ZERO,
        }
    }

    /// Compares `perception` against `reference` and returns `(error, output)`.
    ///
    /// Non-finite inputs are rejected and leave the unit untouched.
    pub fn step(
        &mut self,
        perception: f64,
        reference: f64,
    ) -> Result<(Signal, Signal), SignalError> {
        let perception = Signal::named("perception", perception)?;
        let reference = Signal::named("reference", reference)?;
        let error = Signal::named("error", self.gain * (reference.0 - perception.0))?;

        self.reference = reference;
        self.last_perception = perception;
        self.last_error = error;
        self.last_output = error;
        Ok((error, error))
    }

    /// Clears the remembered signals but keeps the gain.
    pub fn reset(&mut self) {
        *self = Self::new(self.gain);
    }
}

impl Default for ControlUnit {
    fn default() -> Self {
        Self::new(1.0)
    }
}
