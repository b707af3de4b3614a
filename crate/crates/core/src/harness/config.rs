use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use super::HarnessError;
use crate::config::{ensure, ConfigError};
use crate::pct::HierarchySpec;
use crate::perception::{CropConfig, GameLayout, Zone};
use crate::sim::{Game, SimConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EnvKind {
    SimBreakout,
    SimPong,
    Remote,
}

impl FromStr for EnvKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "sim_breakout" => Ok(EnvKind::SimBreakout),
            "sim_pong" => Ok(EnvKind::SimPong),
            "remote" => Ok(EnvKind::Remote),
            other => Err(format!(
                "unknown environment `{other}` (sim_breakout, sim_pong, remote)"
            )),
        }
    }
}

impl fmt::Display for EnvKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EnvKind::SimBreakout => "sim_breakout",
            EnvKind::SimPong => "sim_pong",
            EnvKind::Remote => "remote",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PolicyKind {
    Pct,
    Random,
}

impl FromStr for PolicyKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "pct" => Ok(PolicyKind::Pct),
            "random" => Ok(PolicyKind::Random),
            other => Err(format!("unknown policy `{other}` (pct, random)")),
        }
    }
}

impl fmt::Display for PolicyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PolicyKind::Pct => "pct",
            PolicyKind::Random => "random",
        })
    }
}

/// Everything a batch run needs.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub env: EnvKind,
    /// Game being played; fixed by `env` for the simulator, chosen for remote runs.
    pub game: Game,
    pub episodes: usize,
    /// Agent steps (observed frames) before an episode is cut off.
    pub max_steps: u64,
    pub policy: PolicyKind,
    pub seed: u64,
    pub frameskip: u32,
    pub deterministic: bool,
    /// `host:port` to accept a remote environment on, or `-` for stdin/stdout.
    pub listen: Option<String>,
    pub out_dir: Option<PathBuf>,
    pub dump_frames: Option<PathBuf>,
    pub histogram_bin: f64,
    /// Parallel episode workers; 0 uses every core.
    pub workers: usize,
    pub hierarchy: HierarchySpec,
    pub crop: CropConfig,
    pub layout: GameLayout,
    pub sim: SimConfig,
}

/// Crop, layout and hierarchy matching the built-in simulator's field.
pub fn sim_preset(game: Game) -> (SimConfig, CropConfig, GameLayout, HierarchySpec) {
    let sim = SimConfig::preset(game);
    let crop = CropConfig {
        top_row: sim.field_top,
        left_col: sim.field_left,
        crop_height: sim.field_height,
        crop_width: sim.field_width,
        threshold: 40,
    };
    let (layout, hierarchy) = match game {
        Game::Breakout => (GameLayout::breakout(), HierarchySpec::default()),
        Game::Pong => (GameLayout::pong(), HierarchySpec::vertical()),
    };
    (sim, crop, layout, hierarchy)
}

/// Best-effort crop and layout for real Atari frames (210×160).
///
/// Breakout keeps the 100×132 window above the paddle; the brick wall is
/// outside it. Pong's playfield is taller than 100 rows and its background
/// is brown, so it uses a taller window and a threshold above the
/// background's brightest channel.
pub fn ale_preset(game: Game) -> (CropConfig, GameLayout, HierarchySpec) {
    match game {
        Game::Breakout => (
            CropConfig {
                top_row: 93,
                left_col: 14,
                crop_height: 100,
                crop_width: 132,
                threshold: 40,
            },
            GameLayout {
                paddle_zone: Zone {
                    top: 94,
                    bottom: 99,
                    left: 0,
                    right: 131,
                },
                ..GameLayout::breakout()
            },
            HierarchySpec::default(),
        ),
        Game::Pong => (
            CropConfig {
                top_row: 34,
                left_col: 14,
                crop_height: 160,
                crop_width: 132,
                threshold: 150,
            },
            GameLayout {
                paddle_zone: Zone {
                    top: 0,
                    bottom: 159,
                    left: 124,
                    right: 131,
                },
                ..GameLayout::pong()
            },
            HierarchySpec::vertical(),
        ),
    }
}

fn default_histogram_bin(game: Game) -> f64 {
    match game {
        Game::Breakout => 25.0,
        Game::Pong => 1.0,
    }
}

impl RunConfig {
    pub fn new(env: EnvKind, game: Game) -> Self {
        let game = match env {
            EnvKind::SimBreakout => Game::Breakout,
            EnvKind::SimPong => Game::Pong,
            EnvKind::Remote => game,
        };
        let (sim, mut crop, mut layout, mut hierarchy) = sim_preset(game);
        if env == EnvKind::Remote {
            (crop, layout, hierarchy) = ale_preset(game);
        }
        Self {
            env,
            game,
            episodes: 500,
            max_steps: 10_000,
            policy: PolicyKind::Pct,
            seed: 0,
            frameskip: sim.frameskip,
            deterministic: true,
            listen: None,
            out_dir: None,
            dump_frames: None,
            histogram_bin: default_histogram_bin(game),
            workers: 0,
            hierarchy,
            crop,
            layout,
            sim,
        }
    }

    pub fn sim_breakout() -> Self {
        Self::new(EnvKind::SimBreakout, Game::Breakout)
    }

    pub fn sim_pong() -> Self {
        Self::new(EnvKind::SimPong, Game::Pong)
    }

    pub fn remote(game: Game, listen: impl Into<String>) -> Self {
        Self {
            listen: Some(listen.into()),
            ..Self::new(EnvKind::Remote, game)
        }
    }

    /// Simulator config for one episode, with the run's mode flags applied.
    pub fn sim_for_episode(&self, episode: usize) -> SimConfig {
        SimConfig {
            frameskip: self.frameskip,
            seed: super::episode_seed(self.seed, episode),
            ..self.sim.clone()
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        ensure(self.episodes >= 1, "run.episodes", "must be at least 1")?;
        ensure(self.frameskip >= 1, "run.frameskip", "must be at least 1")?;
        ensure(
            self.histogram_bin.is_finite() && self.histogram_bin > 0.0,
            "run.histogram_bin",
            "must be finite and positive",
        )?;
        if self.env == EnvKind::Remote {
            ensure(
                self.listen.is_some(),
                "run.listen",
                "remote environment needs an endpoint",
            )?;
        } else {
            self.sim.validate()?;
            ensure(
                self.sim.game == self.game,
                "sim.game",
                "does not match the environment",
            )?;
        }
        self.hierarchy.validate()?;
        self.crop.validate()?;
        self.layout.validate()?;
        Ok(())
    }

    /// Reads an optional TOML config file, then applies command-line overrides.
    ///
    /// Sections are `[run]`, `[hierarchy]`, `[crop]`, `[layout]` and `[sim]`;
    /// each key overrides the preset for the chosen environment.
    pub fn load(path: Option<&Path>, overrides: &RunOverrides) -> Result<Self, HarnessError> {
        let text = match path {
            Some(p) => std::fs::read_to_string(p)
                .map_err(|e| HarnessError::ConfigFile(format!("{}: {e}", p.display())))?,
            None => String::new(),
        };
        Self::from_toml(&text, overrides)
    }

    pub fn from_toml(text: &str, overrides: &RunOverrides) -> Result<Self, HarnessError> {
        let file: FileConfig =
            toml::from_str(text).map_err(|e| HarnessError::ConfigFile(e.to_string()))?;
        let run = file.run.unwrap_or_default();

        let env = overrides.env.or(run.env).unwrap_or(EnvKind::SimBreakout);
        let mut cfg = RunConfig::new(env, run.game.unwrap_or(Game::Breakout));

        if let Some(v) = run.episodes {
            cfg.episodes = v;
        }
        if let Some(v) = run.max_steps {
            cfg.max_steps = v;
        }
        if let Some(v) = run.policy {
            cfg.policy = v;
        }
        if let Some(v) = run.seed {
            cfg.seed = v;
        }
        if let Some(v) = run.frameskip {
            cfg.frameskip = v;
        }
        if let Some(v) = run.deterministic {
            cfg.deterministic = v;
        }
        if let Some(v) = run.histogram_bin {
            cfg.histogram_bin = v;
        }
        if let Some(v) = run.workers {
            cfg.workers = v;
        }
        cfg.listen = run.listen;
        cfg.out_dir = run.out;
        cfg.dump_frames = run.dump_frames;

        cfg.hierarchy = overlay(&cfg.hierarchy, file.hierarchy.as_ref())?;
        cfg.crop = overlay(&cfg.crop, file.crop.as_ref())?;
        cfg.layout = overlay(&cfg.layout, file.layout.as_ref())?;
        cfg.sim = overlay(&cfg.sim, file.sim.as_ref())?;
        if run.frameskip.is_none()
            && file
                .sim
                .as_ref()
                .is_some_and(|s| s.contains_key("frameskip"))
        {
            cfg.frameskip = cfg.sim.frameskip;
        }

        overrides.apply(&mut cfg);
        cfg.validate()?;
        Ok(cfg)
    }
}

/// Command-line flags that take precedence over the config file.
#[derive(Debug, Clone, Default)]
pub struct RunOverrides {
    pub env: Option<EnvKind>,
    pub episodes: Option<usize>,
    pub seed: Option<u64>,
    pub policy: Option<PolicyKind>,
    pub listen: Option<String>,
    pub out_dir: Option<PathBuf>,
    pub dump_frames: Option<PathBuf>,
}

impl RunOverrides {
    fn apply(&self, cfg: &mut RunConfig) {
        if let Some(v) = self.episodes {
            cfg.episodes = v;
        }
        if let Some(v) = self.seed {
            cfg.seed = v;
        }
        if let Some(v) = self.policy {
            cfg.policy = v;
        }
        if let Some(v) = &self.listen {
            cfg.listen = Some(v.clone());
        }
        if let Some(v) = &self.out_dir {
            cfg.out_dir = Some(v.clone());
        }
        if let Some(v) = &self.dump_frames {
            cfg.dump_frames = Some(v.clone());
        }
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RunSection {
    env: Option<EnvKind>,
    game: Option<Game>,
    episodes: Option<usize>,
    max_steps: Option<u64>,
    policy: Option<PolicyKind>,
    seed: Option<u64>,
    frameskip: Option<u32>,
    deterministic: Option<bool>,
    histogram_bin: Option<f64>,
    workers: Option<usize>,
    listen: Option<String>,
    out: Option<PathBuf>,
    dump_frames: Option<PathBuf>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    run: Option<RunSection>,
    hierarchy: Option<toml::Table>,
    crop: Option<toml::Table>,
    layout: Option<toml::Table>,
    sim: Option<toml::Table>,
}

fn merge(base: &mut toml::Table, patch: &toml::Table) {
    for (k, v) in patch {
        match (base.get_mut(k), v) {
            (Some(toml::Value::Table(b)), toml::Value::Table(p)) => merge(b, p),
            _ => {
                base.insert(k.clone(), v.clone());
            }
        }
    }
}

fn overlay<T: Serialize + DeserializeOwned + Clone>(
    base: &T,
    patch: Option<&toml::Table>,
) -> Result<T, HarnessError> {
    let Some(patch) = patch else {
        return Ok(base.clone());
    };
    let mut table =
        toml::Table::try_from(base).map_err(|e| HarnessError::ConfigFile(e.to_string()))?;
    merge(&mut table, patch);
    table
        .try_into()
        .map_err(|e: toml::de::Error| HarnessError::ConfigFile(e.to_string()))
}
