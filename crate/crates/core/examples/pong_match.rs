//! The agent plays Pong against the speed-capped opponent. The agent's
//! paddle is on the right and moves vertically, so RIGHT means up.

use pct_agent::harness::{Environment, PctPolicy, Policy, RunConfig, SimEnv};

fn main() -> anyhow::Result<()> {
    let cfg = RunConfig::sim_pong();
    let mut env = SimEnv::new(cfg.sim_for_episode(0))?;
    let mut agent = PctPolicy::from_config(&cfg)?;

    let mut obs = env.reset()?;
    let mut steps = 0u64;
    let mut last = (0, 0);
    while !obs.terminal && steps < cfg.max_steps {
        obs = env.step(agent.act(&obs.frame)?)?;
        steps += 1;
        let s = env.state();
        if (s.points_for, s.points_against) != last {
            last = (s.points_for, s.points_against);
            println!("step {steps:5}: agent {} - {} opponent", last.0, last.1);
        }
    }
    let s = env.state();
    println!(
        "{} after {steps} steps: agent {} - {} opponent, margin {:+}",
        if obs.terminal {
            "game over"
        } else {
            "step cap"
        },
        s.points_for,
        s.points_against,
        s.score
    );
    Ok(())
}
