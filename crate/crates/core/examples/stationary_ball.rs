//! Convergence diagnostic: the ball hangs still and the paddle starts far
//! away. Prints the distance per step next to the bound the integrator
//! limit implies.

use pct_agent::harness::{Environment, PctPolicy, Policy, RunConfig, SimEnv};
use pct_agent::Action;

fn main() -> anyhow::Result<()> {
    let cfg = RunConfig::sim_breakout();
    let (ball_x, paddle_x) = (110.0, 30.0);

    let half = cfg.sim.paddle_length as f64 / 2.0;
    let per_press = cfg.sim.paddle_speed * cfg.frameskip as f64;
    let limit = cfg.hierarchy.integrator_limit as f64;
    // Saturated, each cycle of L presses gains L - 2 presses of ground.
    let d0: f64 = ball_x - paddle_x;
    let bound = 2.0 * limit + limit * ((d0 - half).max(0.0) / ((limit - 2.0) * per_press)).ceil();

    let mut env = SimEnv::new(cfg.sim_for_episode(0))?;
    env.reset()?;
    env.step(Action::Fire)?;
    env.state_mut().place_ball(ball_x, 150.0, 0.0, 0.0);
    env.state_mut().paddle = paddle_x;
    let mut agent = PctPolicy::from_config(&cfg)?;

    let mut frame = env.render();
    let mut reached = None;
    for t in 0..(bound as usize + 10) {
        let d = env.state().paddle - ball_x;
        if reached.is_none() && d.abs() <= half {
            reached = Some(t);
        }
        let action = agent.act(&frame)?;
        println!("{t:3}  D {d:7.2}  {action}");
        frame = env.step(action)?.frame;
    }
    match reached {
        Some(t) => println!("within half a paddle ({half} px) after {t} steps; bound {bound}"),
        None => println!("did not converge within {bound} steps"),
    }
    Ok(())
}
