//! A training-free agent for Atari-style paddle games built from a
//! four-level perceptual control hierarchy.
//!
//! The crate is organised as a pipeline:
//!
//! - [`perception`] turns raw luminance frames into tracked ball and paddle
//!   estimates (binarize, crop, connected components, temporal tracking).
//! - [`pct`] holds the control units and the distance → direction →
//!   position → button-press cascade that maps those estimates to one
//!   discrete action per tick.
//! - [`sim`] is a deterministic headless Breakout/Pong environment that
//!   renders frames so the whole loop can run without an emulator.
//! - [`harness`] runs episodes and batches, computes score statistics and
//!   writes CSV/JSON reports. It can drive the built-in simulator or a
//!   remote environment speaking the [`protocol`] wire format.
//!
//! See the `examples/` directory for one runnable program per capability.

pub mod action;
mod config;
pub mod harness;
pub mod pct;
pub mod perception;
pub mod protocol;
pub mod sim;

pub use action::Action;
pub use config::ConfigError;
