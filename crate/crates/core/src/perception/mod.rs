//! Frame preprocessing, blob detection and ball/paddle tracking.
//!
//! ```text
//! RawFrame --preprocess--> BinaryFrame --detect_blobs--> [Blob]
//!     --classify--> (ball?, paddle?) --track--> PerceptState
//! ```
//!
//! [`Perceiver`] bundles the stages with their configuration.

mod blobs;
mod frame;
mod track;

pub use blobs::{detect_blobs, Blob};
pub use frame::{preprocess, BinaryFrame, CropConfig, FrameError, RawFrame};
pub use track::{classify, track, GameLayout, PerceptState, Zone};

use crate::ConfigError;

/// Runs the full perception pipeline on successive frames.
#[derive(Debug, Clone)]
pub struct Perceiver {
    crop: CropConfig,
    layout: GameLayout,
    state: PerceptState,
}

impl Perceiver {
    pub fn new(crop: CropConfig, layout: GameLayout) -> Result<Self, ConfigError> {
        crop.validate()?;
        layout.validate()?;
        Ok(Self {
            crop,
            layout,
            state: PerceptState::default(),
        })
    }

    pub fn crop(&self) -> &CropConfig {
        &self.crop
    }

    pub fn layout(&self) -> &GameLayout {
        &self.layout
    }

    pub fn state(&self) -> &PerceptState {
        &self.state
    }

    pub fn perceive(&mut self, frame: &RawFrame) -> Result<&PerceptState, FrameError> {
        let binary = preprocess(frame, &self.crop)?;
        let blobs = detect_blobs(&binary);
        let (ball, paddle) = classify(&blobs, &self.layout);
        self.state = track(&self.state, ball.as_ref(), paddle.as_ref(), &self.layout);
        Ok(&self.state)
    }

    pub fn reset(&mut self) {
        self.state = PerceptState::default();
    }
}
