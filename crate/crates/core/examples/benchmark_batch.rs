//! Runs a seeded batch for both policies, prints the summaries and text
//! histograms, and writes the CSV/JSON reports to a temporary directory.
//!
//!     cargo run --release --example benchmark_batch -- [episodes] [breakout|pong]

use pct_agent::harness::{run_batch, text_histogram, write_reports, PolicyKind, RunConfig};

fn main() -> anyhow::Result<()> {
    let mut args = std::env::args().skip(1);
    let episodes: usize = args.next().map(|s| s.parse()).transpose()?.unwrap_or(50);
    let base = match args.next().as_deref() {
        Some("pong") => RunConfig::sim_pong(),
        _ => RunConfig::sim_breakout(),
    };
    let out = std::env::temp_dir().join("pctagent-benchmark");

    for policy in [PolicyKind::Pct, PolicyKind::Random] {
        let cfg = RunConfig {
            episodes,
            policy,
            ..base.clone()
        };
        let table = run_batch(&cfg)?;
        let s = table.summary.as_ref().expect("no completed episodes");
        println!(
            "{policy}: mean {:.2}  median {:.2}  best {}  worst {}  std {:.2}",
            s.mean, s.median, s.best, s.worst, s.std
        );
        print!("{}", text_histogram(&table.histogram, 30));
        let paths = write_reports(&cfg, &table, &out.join(policy.to_string()))?;
        println!("reports: {}\n", paths.summary.display());
    }
    Ok(())
}
