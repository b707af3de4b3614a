use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use pct_agent::harness::{
    run_batch, text_histogram, write_reports, EnvKind, HarnessError, PolicyKind, RunConfig,
    RunOverrides,
};

#[derive(Parser)]
#[command(
    name = "pctagent",
    version,
    about = "Perceptual control agent for paddle games"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a batch of episodes and write score reports.
    Run {
        /// TOML run configuration; built-in defaults are used when omitted.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        episodes: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// pct | random
        #[arg(long)]
        policy: Option<PolicyKind>,
        /// sim_breakout | sim_pong | remote
        #[arg(long)]
        env: Option<EnvKind>,
        /// Address for the remote bridge, or `-` for stdin/stdout.
        #[arg(long)]
        listen: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the first episode's frames as PGM images.
        #[arg(long)]
        dump_frames: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> Result<(), HarnessError> {
    let Command::Run {
        config,
        episodes,
        seed,
        policy,
        env,
        listen,
        out,
        dump_frames,
    } = cli.command;
    let overrides = RunOverrides {
        env,
        episodes,
        seed,
        policy,
        listen,
        out_dir: out,
        dump_frames,
    };
    let cfg = RunConfig::load(config.as_deref(), &overrides)?;
    log::info!(
        "{} episodes of {} with {} policy, seed {}",
        cfg.episodes,
        cfg.env,
        cfg.policy,
        cfg.seed
    );
    let table = run_batch(&cfg)?;

    match &table.summary {
        Some(s) => {
            println!(
                "episodes {}  mean {:.2}  median {:.2}  best {}  worst {}  std {:.2}",
                s.count, s.mean, s.median, s.best, s.worst, s.std
            );
            print!("{}", text_histogram(&table.histogram, 40));
        }
        None => println!("no completed episodes"),
    }
    if table.aborted > 0 {
        println!("aborted episodes: {}", table.aborted);
    }
    if let Some(dir) = &cfg.out_dir {
        let paths = write_reports(&cfg, &table, dir)?;
        println!(
            "reports written to {}",
            paths.summary.parent().unwrap_or(dir).display()
        );
    }
    table.check_abort_budget()
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
