use std::fs;
use std::io::{self, BufReader, BufWriter};
use std::net::TcpListener;
use std::path::PathBuf;

use rayon::prelude::*;
use serde::Serialize;

use super::config::{EnvKind, PolicyKind, RunConfig};
use super::env::{Environment, RemoteEnv, SimEnv};
use super::policy::{PctPolicy, Policy, RandomPolicy};
use super::stats::{Histogram, Summary};
use super::HarnessError;
use crate::perception::RawFrame;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Termination {
    Terminal,
    StepCap,
    /// The environment failed mid-episode; excluded from statistics.
    Aborted,
}

impl Termination {
    pub fn as_str(self) -> &'static str {
        match self {
            Termination::Terminal => "terminal",
            Termination::StepCap => "step_cap",
            Termination::Aborted => "aborted",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EpisodeResult {
    pub episode: usize,
    pub score: f64,
    pub total_reward: f64,
    pub steps: u64,
    /// Lives lost (Breakout) or points conceded (Pong).
    pub penalties: u32,
    pub termination: Termination,
}

/// Writes observed frames of one episode as PGM files.
#[derive(Debug, Clone)]
pub struct FrameDump {
    dir: PathBuf,
}

impl FrameDump {
    pub fn new(dir: impl Into<PathBuf>) -> io::Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(Self { dir })
    }

    pub fn write(&self, episode: usize, step: u64, frame: &RawFrame) -> io::Result<()> {
        let path = self.dir.join(format!("ep{episode:04}_step{step:06}.pgm"));
        frame.write_pgm(BufWriter::new(fs::File::create(path)?))
    }
}

/// Seed of the simulator for one episode of a run.
pub fn episode_seed(run_seed: u64, episode: usize) -> u64 {
    run_seed.wrapping_add(episode as u64)
}

fn policy_seed(run_seed: u64, episode: usize) -> u64 {
    episode_seed(run_seed, episode) ^ 0x9e37_79b9_7f4a_7c15
}

/// Plays one episode until the environment reports a terminal frame or the
/// step cap is reached.
pub fn run_episode(
    episode: usize,
    max_steps: u64,
    env: &mut dyn Environment,
    policy: &mut dyn Policy,
    dump: Option<&FrameDump>,
) -> Result<EpisodeResult, HarnessError> {
    policy.reset();
    let mut result = EpisodeResult {
        episode,
        score: 0.0,
        total_reward: 0.0,
        steps: 0,
        penalties: 0,
        termination: Termination::Aborted,
    };

    let mut obs = match env.reset() {
        Ok(o) => o,
        Err(e) if e.is_environment_failure() => {
            log::warn!("episode {episode}: environment failed at reset: {e}");
            return Ok(result);
        }
        Err(e) => return Err(e),
    };
    result.total_reward += obs.reward;
    result.penalties += obs.penalties;

    loop {
        if let Some(d) = dump {
            d.write(episode, result.steps, &obs.frame)?;
        }
        if obs.terminal {
            result.termination = Termination::Terminal;
            break;
        }
        if result.steps >= max_steps {
            result.termination = Termination::StepCap;
            if let Err(e) = env.abandon() {
                log::warn!("episode {episode}: could not finish remote episode: {e}");
            }
            break;
        }
        let action = policy.act(&obs.frame)?;
        obs = match env.step(action) {
            Ok(o) => o,
            Err(e) if e.is_environment_failure() => {
                log::warn!(
                    "episode {episode}: aborted after {} steps: {e}",
                    result.steps
                );
                result.score = env.score().unwrap_or(result.total_reward);
                return Ok(result);
            }
            Err(e) => return Err(e),
        };
        result.steps += 1;
        result.total_reward += obs.reward;
        result.penalties += obs.penalties;
        log::trace!(
            "episode {episode} step {} action {action} reward {} terminal {}",
            result.steps,
            obs.reward,
            obs.terminal
        );
    }
    result.score = env.score().unwrap_or(result.total_reward);
    Ok(result)
}

/// Per-episode results plus statistics over the completed ones.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreTable {
    pub episodes: Vec<EpisodeResult>,
    pub summary: Option<Summary>,
    pub histogram: Histogram,
    pub aborted: usize,
    pub step_capped: usize,
}

impl ScoreTable {
    pub fn from_results(episodes: Vec<EpisodeResult>, bin_width: f64) -> Self {
        let scores: Vec<f64> = episodes
            .iter()
            .filter(|e| e.termination != Termination::Aborted)
            .map(|e| e.score)
            .collect();
        let count = |t| episodes.iter().filter(|e| e.termination == t).count();
        Self {
            summary: Summary::from_scores(&scores),
            histogram: Histogram::build(&scores, bin_width),
            aborted: count(Termination::Aborted),
            step_capped: count(Termination::StepCap),
            episodes,
        }
    }

    pub fn completed_scores(&self) -> Vec<f64> {
        self.episodes
            .iter()
            .filter(|e| e.termination != Termination::Aborted)
            .map(|e| e.score)
            .collect()
    }

    /// Fails when more than 10% of the episodes were aborted.
    pub fn check_abort_budget(&self) -> Result<(), HarnessError> {
        if self.aborted * 10 > self.episodes.len() {
            return Err(HarnessError::TooManyAborted {
                aborted: self.aborted,
                episodes: self.episodes.len(),
            });
        }
        Ok(())
    }
}

fn make_policy(cfg: &RunConfig, episode: usize) -> Result<Box<dyn Policy>, HarnessError> {
    Ok(match cfg.policy {
        PolicyKind::Pct => Box::new(PctPolicy::from_config(cfg)?),
        PolicyKind::Random => Box::new(RandomPolicy::new(policy_seed(cfg.seed, episode))),
    })
}

fn dump_for(cfg: &RunConfig, episode: usize) -> Result<Option<FrameDump>, HarnessError> {
    // only the first episode is dumped
    match (&cfg.dump_frames, episode) {
        (Some(dir), 0) => Ok(Some(FrameDump::new(dir)?)),
        _ => Ok(None),
    }
}

fn run_sim_episode(cfg: &RunConfig, episode: usize) -> Result<EpisodeResult, HarnessError> {
    let mut env = SimEnv::new(cfg.sim_for_episode(episode))?;
    let mut policy = make_policy(cfg, episode)?;
    let dump = dump_for(cfg, episode)?;
    run_episode(
        episode,
        cfg.max_steps,
        &mut env,
        policy.as_mut(),
        dump.as_ref(),
    )
}

/// Runs `cfg.episodes` episodes and collects their statistics.
///
/// Simulator episodes run in parallel, each with its own environment and
/// policy; results are ordered by episode index. Remote runs accept a single
/// connection on `cfg.listen` (or use stdin/stdout for `-`) and play
/// episodes back to back.
pub fn run_batch(cfg: &RunConfig) -> Result<ScoreTable, HarnessError> {
    cfg.validate()?;
    match cfg.env {
        EnvKind::SimBreakout | EnvKind::SimPong => {
            let work = || {
                (0..cfg.episodes)
                    .into_par_iter()
                    .map(|i| run_sim_episode(cfg, i))
                    .collect::<Result<Vec<_>, _>>()
            };
            let results = if cfg.workers == 0 {
                work()?
            } else {
                rayon::ThreadPoolBuilder::new()
                    .num_threads(cfg.workers)
                    .build()
                    .map_err(|e| HarnessError::Io(io::Error::other(e)))?
                    .install(work)?
            };
            Ok(ScoreTable::from_results(results, cfg.histogram_bin))
        }
        EnvKind::Remote => {
            let addr = cfg.listen.as_deref().unwrap_or("-");
            if addr == "-" {
                let mut env = RemoteEnv::new(io::stdin().lock(), io::stdout().lock());
                run_batch_with(cfg, &mut env)
            } else {
                let listener = TcpListener::bind(addr)?;
                log::info!(
                    "waiting for a remote environment on {}",
                    listener.local_addr()?
                );
                let (stream, peer) = listener.accept()?;
                log::info!("remote environment connected from {peer}");
                stream.set_nodelay(true)?;
                let mut env =
                    RemoteEnv::new(BufReader::new(stream.try_clone()?), BufWriter::new(stream));
                run_batch_with(cfg, &mut env)
            }
        }
    }
}

/// Runs the batch sequentially against one environment.
pub fn run_batch_with(
    cfg: &RunConfig,
    env: &mut dyn Environment,
) -> Result<ScoreTable, HarnessError> {
    let mut results = Vec::with_capacity(cfg.episodes);
    for i in 0..cfg.episodes {
        let mut policy = make_policy(cfg, i)?;
        let dump = dump_for(cfg, i)?;
        results.push(run_episode(
            i,
            cfg.max_steps,
            env,
            policy.as_mut(),
            dump.as_ref(),
        )?);
    }
    Ok(ScoreTable::from_results(results, cfg.histogram_bin))
}
