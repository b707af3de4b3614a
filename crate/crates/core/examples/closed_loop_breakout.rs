//! One full Breakout game played by the perceptual-control agent. Prints a
//! line per lost life and the final score.

use pct_agent::harness::{Environment, PctPolicy, Policy, RunConfig, SimEnv};

fn main() -> anyhow::Result<()> {
    let seed = std::env::args()
        .nth(1)
        .map(|s| s.parse())
        .transpose()?
        .unwrap_or(1);
    let cfg = RunConfig {
        seed,
        ..RunConfig::sim_breakout()
    };
    let mut env = SimEnv::new(cfg.sim_for_episode(0))?;
    let mut agent = PctPolicy::from_config(&cfg)?;

    let mut obs = env.reset()?;
    let mut steps = 0u64;
    while !obs.terminal && steps < cfg.max_steps {
        obs = env.step(agent.act(&obs.frame)?)?;
        steps += 1;
        if obs.penalties > 0 {
            println!("step {steps:5}: life lost, score {}", env.state().score);
        }
    }
    let s = env.state();
    println!(
        "score {} of {} after {steps} steps, {} bricks left, {} lives left",
        s.score,
        cfg.sim.max_breakout_score(),
        s.bricks_alive(),
        s.lives
    );
    Ok(())
}
