//! Steps the four-level hierarchy on hand-made percepts and prints every
//! level's error next to the button it ends up pressing.

use pct_agent::pct::{Hierarchy, HierarchySpec};
use pct_agent::perception::PerceptState;

fn percept(ball_x: f64, paddle_x: f64, paddle_delta: f64) -> PerceptState {
    PerceptState {
        ball_x,
        ball_y: 40.0,
        ball_valid: true,
        paddle_axis: paddle_x,
        paddle_valid: true,
        paddle_delta,
        direction: paddle_delta.signum() as i8 * i8::from(paddle_delta.abs() > 0.25),
        ..PerceptState::default()
    }
}

fn main() -> anyhow::Result<()> {
    let mut h = Hierarchy::new(HierarchySpec::default())?;

    println!("ball   paddle  delta | e1      e2      e3      e4     | action");
    let cases = [
        (60.0, 60.0, 0.0),
        (80.0, 60.0, 0.0),
        (80.0, 66.0, 6.0),
        (80.0, 72.0, 6.0),
        (80.0, 78.0, 6.0),
        (40.0, 78.0, 0.0),
        (61.0, 60.0, 0.0),
        (61.0, 60.0, 0.0),
    ];
    for (ball, paddle, delta) in cases {
        let action = h.step(&percept(ball, paddle, delta))?;
        let e = h.state().errors();
        println!(
            "{ball:5.1}  {paddle:5.1}  {delta:5.1} | {:6.1}  {:6.1}  {:6.1}  {:6.1} | {action}",
            e[0], e[1], e[2], e[3]
        );
    }

    // Three presses in a row trip the integrator, which answers with one
    // press the other way.
    h.reset();
    let far = percept(120.0, 20.0, 0.0);
    let presses: Vec<String> = (0..7)
        .map(|_| h.step(&far).map(|a| a.to_string()))
        .collect::<Result<_, _>>()?;
    println!("\nsaturated error, 7 ticks: {}", presses.join(" "));
    Ok(())
}
