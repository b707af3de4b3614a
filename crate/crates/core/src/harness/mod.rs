//! Episode runner, batch statistics and reports.

mod config;
mod env;
mod policy;
mod report;
mod runner;
mod serve;
mod stats;

pub use config::{ale_preset, sim_preset, EnvKind, PolicyKind, RunConfig, RunOverrides};
pub use env::{Environment, Observation, RemoteEnv, SimEnv};
pub use policy::{PctPolicy, Policy, RandomPolicy};
pub use report::{text_histogram, write_reports, Report, ReportPaths};
pub use runner::{
    episode_seed, run_batch, run_batch_with, run_episode, EpisodeResult, FrameDump, ScoreTable,
    Termination,
};
pub use serve::serve;
pub use stats::{Histogram, Summary};

use thiserror::Error;

use crate::pct::SignalError;
use crate::perception::FrameError;
use crate::protocol::ProtocolError;
use crate::sim::SimError;
use crate::ConfigError;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("config file: {0}")]
    ConfigFile(String),
    #[error(transparent)]
    Signal(#[from] SignalError),
    #[error(transparent)]
    Frame(#[from] FrameError),
    #[error(transparent)]
    Sim(#[from] SimError),
    #[error(transparent)]
    Protocol(#[from] ProtocolError),
    #[error("remote environment closed the stream")]
    Disconnected,
    #[error("{aborted} of {episodes} episodes aborted (limit is 10%)")]
    TooManyAborted { aborted: usize, episodes: usize },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl HarnessError {
    /// Errors that end a remote episode early rather than the whole run.
    pub fn is_environment_failure(&self) -> bool {
        matches!(
            self,
            HarnessError::Protocol(_)
                | HarnessError::Disconnected
                | HarnessError::Io(_)
                | HarnessError::Frame(_)
        )
    }
}
