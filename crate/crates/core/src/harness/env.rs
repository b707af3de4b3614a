use std::io::{Read, Write};

use super::HarnessError;
use crate::perception::RawFrame;
use crate::protocol::{read_frame, write_action};
use crate::sim::{self, render, Event, SimConfig, SimState};
use crate::Action;

/// What the agent sees after a reset or a step.
#[derive(Debug, Clone, PartialEq)]
pub struct Observation {
    pub frame: RawFrame,
    pub reward: f64,
    pub terminal: bool,
    /// Lives lost or points conceded during the step.
    pub penalties: u32,
}

pub trait Environment {
    fn reset(&mut self) -> Result<Observation, HarnessError>;

    fn step(&mut self, action: Action) -> Result<Observation, HarnessError>;

    /// Game score so far, when the environment keeps one apart from rewards.
    fn score(&self) -> Option<f64> {
        None
    }

    /// Called when the agent stops an episode before it is terminal.
    fn abandon(&mut self) -> Result<(), HarnessError> {
        Ok(())
    }
}

/// The built-in simulator.
/// The built-in simulator as an [`Environment`].
///
/// The n-th reset starts a game seeded with `seed + n`, so a long-lived
/// instance plays a different game each episode.
#[derive(Debug, Clone)]
pub struct SimEnv {
    cfg: SimConfig,
    state: SimState,
    resets: u64,
}

impl SimEnv {
    pub fn new(cfg: SimConfig) -> Result<Self, HarnessError> {
        let state = sim::reset(&cfg)?;
        Ok(Self {
            cfg,
            state,
            resets: 0,
        })
    }

    pub fn config(&self) -> &SimConfig {
        &self.cfg
    }

    pub fn state(&self) -> &SimState {
        &self.state
    }

    pub fn state_mut(&mut self) -> &mut SimState {
        &mut self.state
    }

    pub fn render(&self) -> RawFrame {
        render(&self.state, &self.cfg)
    }
}

impl Environment for SimEnv {
    fn reset(&mut self) -> Result<Observation, HarnessError> {
        let cfg = SimConfig {
            seed: self.cfg.seed.wrapping_add(self.resets),
            ..self.cfg.clone()
        };
        self.state = sim::reset(&cfg)?;
        self.resets += 1;
        Ok(Observation {
            frame: self.render(),
            reward: 0.0,
            terminal: false,
            penalties: 0,
        })
    }

    fn step(&mut self, action: Action) -> Result<Observation, HarnessError> {
        let out = self.state.step(action, &self.cfg)?;
        let penalties = out.count(|e| matches!(e, Event::LifeLost | Event::PointAgainst)) as u32;
        Ok(Observation {
            frame: self.render(),
            reward: out.reward,
            terminal: out.terminal,
            penalties,
        })
    }

    fn score(&self) -> Option<f64> {
        Some(self.state.score as f64)
    }
}

/// An environment on the other end of a frame/action stream.
///
/// Every frame is answered with exactly one action byte. Terminal frames are
/// answered with NOOP straight away; the remote side then starts the next
/// episode and sends its first frame.
#[derive(Debug)]
pub struct RemoteEnv<R, W> {
    reader: R,
    writer: W,
    in_episode: bool,
}

impl<R: Read, W: Write> RemoteEnv<R, W> {
    pub fn new(reader: R, writer: W) -> Self {
        Self {
            reader,
            writer,
            in_episode: false,
        }
    }

    pub fn into_inner(self) -> (R, W) {
        (self.reader, self.writer)
    }

    fn receive(&mut self) -> Result<Observation, HarnessError> {
        let msg = read_frame(&mut self.reader)?.ok_or(HarnessError::Disconnected)?;
        let reward = msg.reward().unwrap_or(0.0);
        let terminal = msg.terminal;
        if terminal {
            write_action(&mut self.writer, Action::Noop)?;
        }
        self.in_episode = !terminal;
        Ok(Observation {
            frame: msg.into_frame()?,
            reward,
            terminal,
            penalties: u32::from(reward < 0.0),
        })
    }
}

impl<R: Read, W: Write> Environment for RemoteEnv<R, W> {
    fn reset(&mut self) -> Result<Observation, HarnessError> {
        if self.in_episode {
            self.abandon()?;
        }
        self.receive()
    }

    fn step(&mut self, action: Action) -> Result<Observation, HarnessError> {
        write_action(&mut self.writer, action)?;
        self.receive()
    }

    /// Plays FIRE until the remote episode ends, so the next reset lines up
    /// with a fresh episode.
    fn abandon(&mut self) -> Result<(), HarnessError> {
        while self.in_episode {
            self.step(Action::Fire)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::protocol::{encode_frame, read_action};

    fn frame_bytes(terminal: bool, reward: Option<f64>) -> Vec<u8> {
        encode_frame(&RawFrame::black(4, 3), terminal, reward).unwrap()
    }

    #[test]
    fn remote_alternates_frames_and_actions() {
        let stream = [
            frame_bytes(false, None),
            frame_bytes(false, Some(4.0)),
            frame_bytes(true, Some(-1.0)),
        ]
        .concat();
        let mut env = RemoteEnv::new(stream.as_slice(), Vec::new());
        let first = env.reset().unwrap();
        assert_eq!((first.frame.width(), first.frame.height()), (4, 3));
        let o = env.step(Action::Right).unwrap();
        assert_eq!(o.reward, 4.0);
        let o = env.step(Action::Left).unwrap();
        assert!(o.terminal);
        assert_eq!(o.penalties, 1);
        let (_, sent) = env.into_inner();
        // RIGHT, LEFT, then the NOOP acknowledging the terminal frame
        assert_eq!(sent, vec![2, 3, 0]);
        let mut r = sent.as_slice();
        assert_eq!(read_action(&mut r).unwrap(), Some(Action::Right));
    }

    #[test]
    fn closed_stream_is_a_disconnect() {
        let stream = frame_bytes(false, None);
        let mut env = RemoteEnv::new(stream.as_slice(), Vec::new());
        env.reset().unwrap();
        assert!(matches!(
            env.step(Action::Noop),
            Err(HarnessError::Disconnected)
        ));
    }

    #[test]
    fn reset_mid_episode_drains_to_terminal() {
        let stream = [
            frame_bytes(false, None),
            frame_bytes(false, None),
            frame_bytes(true, None),
            frame_bytes(false, Some(1.0)),
        ]
        .concat();
        let mut env = RemoteEnv::new(stream.as_slice(), Vec::new());
        env.reset().unwrap();
        let next = env.reset().unwrap();
        assert_eq!(next.reward, 1.0);
        assert!(!next.terminal);
        let (_, sent) = env.into_inner();
        assert_eq!(sent, vec![1, 1, 0]);
    }

    #[test]
    fn sim_env_reports_penalties() {
        let cfg = SimConfig::breakout();
        let mut env = SimEnv::new(cfg.clone()).unwrap();
        env.reset().unwrap();
        env.state_mut().place_ball(
            cfg.field_left as f64 + 3.0,
            cfg.field_bottom() - 1.0,
            0.0,
            1.5,
        );
        let o = env.step(Action::Noop).unwrap();
        assert_eq!(o.penalties, 1);
        assert_eq!(o.reward, -1.0);
        assert_eq!(env.score(), Some(0.0));
    }
}
