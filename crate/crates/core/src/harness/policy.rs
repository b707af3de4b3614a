use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{HarnessError, RunConfig};
use crate::pct::{Hierarchy, HierarchySpec};
use crate::perception::{CropConfig, GameLayout, Perceiver, PerceptState, RawFrame};
use crate::{Action, ConfigError};

pub trait Policy: Send {
    /// Forgets everything from the previous episode.
    fn reset(&mut self);

    fn act(&mut self, frame: &RawFrame) -> Result<Action, HarnessError>;
}

/// Perception pipeline feeding the control hierarchy.
#[derive(Debug, Clone)]
pub struct PctPolicy {
    perceiver: Perceiver,
    hierarchy: Hierarchy,
}

impl PctPolicy {
    pub fn new(
        crop: CropConfig,
        layout: GameLayout,
        spec: HierarchySpec,
    ) -> Result<Self, ConfigError> {
        Ok(Self {
            perceiver: Perceiver::new(crop, layout)?,
            hierarchy: Hierarchy::new(spec)?,
        })
    }

    pub fn from_config(cfg: &RunConfig) -> Result<Self, ConfigError> {
        Self::new(cfg.crop.clone(), cfg.layout.clone(), cfg.hierarchy.clone())
    }

    pub fn percept(&self) -> &PerceptState {
        self.perceiver.state()
    }

    pub fn hierarchy(&self) -> &Hierarchy {
        &self.hierarchy
    }
}

impl Policy for PctPolicy {
    fn reset(&mut self) {
        self.perceiver.reset();
        self.hierarchy.reset();
    }

    fn act(&mut self, frame: &RawFrame) -> Result<Action, HarnessError> {
        let percept = self.perceiver.perceive(frame)?;
        Ok(self.hierarchy.step(percept)?)
    }
}

/// Uniform choice over the four actions.
#[derive(Debug, Clone)]
pub struct RandomPolicy {
    seed: u64,
    rng: ChaCha8Rng,
}

impl RandomPolicy {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }
}

impl Policy for RandomPolicy {
    fn reset(&mut self) {
        self.rng = ChaCha8Rng::seed_from_u64(self.seed);
    }

    fn act(&mut self, _frame: &RawFrame) -> Result<Action, HarnessError> {
        Ok(Action::ALL[self.rng.gen_range(0..Action::ALL.len())])
    }
}
