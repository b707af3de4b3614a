use std::fmt::Write as _;
use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;

use super::config::RunConfig;
use super::runner::ScoreTable;
use super::stats::{Histogram, Summary};
use crate::sim::Game;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Mode {
    pub frameskip: u32,
    pub deterministic: bool,
}

/// Contents of `summary.json`. Contains nothing run-specific beyond the
/// configuration, so identical runs produce identical files.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub env: String,
    pub game: Game,
    pub policy: String,
    pub mode: Mode,
    pub seed: u64,
    pub episodes_requested: usize,
    pub episodes_completed: usize,
    pub aborted: usize,
    pub step_capped: usize,
    pub max_steps: u64,
    pub summary: Option<Summary>,
    pub histogram_bin_width: f64,
}

impl Report {
    pub fn new(cfg: &RunConfig, table: &ScoreTable) -> Self {
        Report {
            env: cfg.env.to_string(),
            game: cfg.game,
            policy: cfg.policy.to_string(),
            mode: Mode {
                frameskip: cfg.frameskip,
                deterministic: cfg.deterministic,
            },
            seed: cfg.seed,
            episodes_requested: cfg.episodes,
            episodes_completed: table.episodes.len() - table.aborted,
            aborted: table.aborted,
            step_capped: table.step_capped,
            max_steps: cfg.max_steps,
            summary: table.summary.clone(),
            histogram_bin_width: table.histogram.bin_width,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportPaths {
    pub episodes: PathBuf,
    pub summary: PathBuf,
    pub histogram: PathBuf,
}

impl ReportPaths {
    pub fn in_dir(dir: &Path) -> Self {
        ReportPaths {
            episodes: dir.join("episodes.csv"),
            summary: dir.join("summary.json"),
            histogram: dir.join("histogram.csv"),
        }
    }
}

/// Writes `episodes.csv`, `summary.json` and `histogram.csv` into `dir`.
pub fn write_reports(cfg: &RunConfig, table: &ScoreTable, dir: &Path) -> io::Result<ReportPaths> {
    fs::create_dir_all(dir)?;
    let paths = ReportPaths::in_dir(dir);

    let mut w = BufWriter::new(fs::File::create(&paths.episodes)?);
    writeln!(w, "episode,score,total_reward,steps,penalties,termination")?;
    for e in &table.episodes {
        writeln!(
            w,
            "{},{},{},{},{},{}",
            e.episode,
            e.score,
            e.total_reward,
            e.steps,
            e.penalties,
            e.termination.as_str()
        )?;
    }
    w.flush()?;

    let json = serde_json::to_string_pretty(&Report::new(cfg, table)).map_err(io::Error::other)?;
    fs::write(&paths.summary, json + "\n")?;

    let mut w = BufWriter::new(fs::File::create(&paths.histogram)?);
    writeln!(w, "bin_start,bin_end,count")?;
    for (lo, hi, c) in table.histogram.bins() {
        writeln!(w, "{lo},{hi},{c}")?;
    }
    w.flush()?;
    Ok(paths)
}

/// Horizontal bar chart of a histogram, scaled to `width` columns.
pub fn text_histogram(h: &Histogram, width: usize) -> String {
    let peak = h.counts.iter().copied().max().unwrap_or(0).max(1);
    let label = |v: f64| format!("{v}");
    let pad = h
        .bins()
        .map(|(lo, hi, _)| label(lo).len() + label(hi).len())
        .max()
        .unwrap_or(0)
        + 3;
    let mut out = String::new();
    for (lo, hi, c) in h.bins() {
        let bar = (c * width).div_ceil(peak);
        let range = format!("[{}, {})", label(lo), label(hi));
        let _ = writeln!(
            out,
            "{range:>pad$} {:<width$} {c}",
            "#".repeat(bar),
            pad = pad + 1
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::{EpisodeResult, Termination};

    fn table() -> ScoreTable {
        let eps = [
            (10.0, Termination::Terminal),
            (30.0, Termination::StepCap),
            (0.0, Termination::Aborted),
        ]
        .iter()
        .enumerate()
        .map(|(i, &(score, termination))| EpisodeResult {
            episode: i,
            score,
            total_reward: score,
            steps: 5,
            penalties: 1,
            termination,
        })
        .collect();
        ScoreTable::from_results(eps, 25.0)
    }

    #[test]
    fn writes_three_files() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = RunConfig::sim_breakout();
        let paths = write_reports(&cfg, &table(), dir.path()).unwrap();
        let csv = fs::read_to_string(&paths.episodes).unwrap();
        assert_eq!(csv.lines().count(), 4);
        assert!(csv.lines().nth(3).unwrap().ends_with(",aborted"));
        let json: serde_json::Value =
            serde_json::from_str(&fs::read_to_string(&paths.summary).unwrap()).unwrap();
        assert_eq!(json["episodes_completed"], 2);
        assert_eq!(json["aborted"], 1);
        assert_eq!(json["summary"]["mean"], 20.0);
        let hist = fs::read_to_string(&paths.histogram).unwrap();
        assert_eq!(
            hist.lines().collect::<Vec<_>>(),
            ["bin_start,bin_end,count", "0,25,1", "25,50,1"]
        );
    }

    #[test]
    fn text_bars() {
        let h = Histogram::build(&[1.0, 2.0, 30.0], 25.0);
        let s = text_histogram(&h, 10);
        assert!(s.lines().next().unwrap().contains("##########"));
        assert_eq!(s.lines().count(), 2);
    }
}
