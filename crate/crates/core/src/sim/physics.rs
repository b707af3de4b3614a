use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use super::{Game, SimConfig};
use crate::{Action, ConfigError};

#[derive(Debug, Error)]
pub enum SimError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("step called on a terminal state (tick {tick})")]
    Terminal { tick: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Event {
    BrickHit { row: usize, col: usize, points: i64 },
    LifeLost,
    PointFor,
    PointAgainst,
    WallBounce,
    PaddleBounce,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct StepOutcome {
    pub reward: f64,
    pub terminal: bool,
    pub events: Vec<Event>,
}

impl StepOutcome {
    pub fn count(&self, pred: impl Fn(&Event) -> bool) -> usize {
        self.events.iter().filter(|e| pred(e)).count()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Ball {
    pub x: f64,
    pub y: f64,
    pub vx: f64,
    pub vy: f64,
}

impl Ball {
    pub fn speed(&self) -> f64 {
        self.vx.hypot(self.vy)
    }
}

/// Complete game state. Cloning it forks the game, including its RNG.
#[derive(Debug, Clone, PartialEq)]
pub struct SimState {
    pub game: Game,
    pub ball: Ball,
    pub ball_in_play: bool,
    /// Agent paddle centre along its direction of travel.
    pub paddle: f64,
    /// Opponent paddle centre (Pong).
    pub opponent: f64,
    /// Alive mask, row-major, top row first.
    pub bricks: Vec<bool>,
    pub lives: u32,
    pub lives_lost: u32,
    /// Sum of destroyed brick values (Breakout) or points for minus points
    /// against (Pong).
    pub score: i64,
    pub points_for: u32,
    pub points_against: u32,
    /// Physics ticks elapsed.
    pub tick: u64,
    pub serve_countdown: u32,
    pub serve_toward_agent: bool,
    pub terminal: bool,
    rng: ChaCha8Rng,
}

/// Starts a fresh game. The ball is out of play until served.
pub fn reset(cfg: &SimConfig) -> Result<SimState, SimError> {
    cfg.validate()?;
    let (lo, hi) = paddle_range(cfg);
    let mid = 0.5 * (lo + hi);
    Ok(SimState {
        game: cfg.game,
        ball: Ball::default(),
        ball_in_play: false,
        paddle: mid,
        opponent: mid,
        bricks: vec![true; cfg.brick_rows * cfg.brick_cols],
        lives: cfg.lives,
        lives_lost: 0,
        score: 0,
        points_for: 0,
        points_against: 0,
        tick: 0,
        serve_countdown: cfg.serve_delay,
        serve_toward_agent: true,
        terminal: false,
        rng: ChaCha8Rng::seed_from_u64(cfg.seed),
    })
}

/// Limits of a paddle centre along its direction of travel.
pub fn paddle_range(cfg: &SimConfig) -> (f64, f64) {
    let half = cfg.paddle_length as f64 / 2.0;
    match cfg.game {
        Game::Breakout => (cfg.field_left_edge() + half, cfg.field_right() - half),
        Game::Pong => (cfg.field_top_edge() + half, cfg.field_bottom() - half),
    }
}

/// Fixed coordinate of the agent paddle centre (row for Breakout, column for Pong).
pub fn paddle_line(cfg: &SimConfig) -> f64 {
    match cfg.game {
        Game::Breakout => cfg.field_bottom() - 0.5 - cfg.paddle_inset,
        Game::Pong => cfg.field_right() - 0.5 - cfg.paddle_inset,
    }
}

/// Fixed column of the Pong opponent paddle centre.
pub fn opponent_line(cfg: &SimConfig) -> f64 {
    cfg.field_left_edge() + 0.5 + cfg.paddle_inset
}

/// Brick rectangle `(x0, y0, x1, y1)` in continuous coordinates.
pub fn brick_rect(cfg: &SimConfig, row: usize, col: usize) -> (f64, f64, f64, f64) {
    let w = cfg.brick_width() as f64;
    let h = cfg.brick_height as f64;
    let x0 = cfg.field_left_edge() + col as f64 * w;
    let y0 = cfg.field_top_edge() + (cfg.brick_top + row * cfg.brick_height) as f64;
    (x0, y0, x0 + w, y0 + h)
}

fn reflect_low(pos: &mut f64, vel: &mut f64, edge: f64) -> bool {
    if *pos < edge {
        *pos = 2.0 * edge - *pos;
        *vel = vel.abs();
        true
    } else {
        false
    }
}

fn reflect_high(pos: &mut f64, vel: &mut f64, edge: f64) -> bool {
    if *pos > edge {
        *pos = 2.0 * edge - *pos;
        *vel = -vel.abs();
        true
    } else {
        false
    }
}

/// Outgoing angle (degrees from the paddle normal) for a contact at
/// `offset` in [-1, 1] from the paddle centre.
fn bounce_angle(cfg: &SimConfig, offset: f64, incoming_tangent: f64) -> f64 {
    let offset = offset.clamp(-1.0, 1.0);
    let angle = offset * cfg.bounce_angle_max_deg;
    if angle.abs() >= cfg.bounce_angle_min_deg {
        return angle;
    }
    let side = if offset != 0.0 {
        offset.signum()
    } else if incoming_tangent != 0.0 {
        incoming_tangent.signum()
    } else {
        1.0
    };
    side * cfg.bounce_angle_min_deg
}

impl SimState {
    pub fn is_terminal(&self) -> bool {
        self.terminal
    }

    pub fn bricks_alive(&self) -> usize {
        self.bricks.iter().filter(|b| **b).count()
    }

    pub fn brick_alive(&self, cfg: &SimConfig, row: usize, col: usize) -> bool {
        self.bricks[row * cfg.brick_cols + col]
    }

    /// Puts the ball in play at a given position and velocity.
    pub fn place_ball(&mut self, x: f64, y: f64, vx: f64, vy: f64) {
        self.ball = Ball { x, y, vx, vy };
        self.ball_in_play = true;
    }

    /// Applies `action` for `cfg.frameskip` physics ticks.
    pub fn step(&mut self, action: Action, cfg: &SimConfig) -> Result<StepOutcome, SimError> {
        if self.terminal {
            return Err(SimError::Terminal { tick: self.tick });
        }
        let mut out = StepOutcome::default();
        for _ in 0..cfg.frameskip {
            self.physics_tick(action, cfg, &mut out);
            if self.terminal {
                break;
            }
        }
        out.terminal = self.terminal;
        Ok(out)
    }

    fn physics_tick(&mut self, action: Action, cfg: &SimConfig, out: &mut StepOutcome) {
        self.tick += 1;
        self.move_paddle(action, cfg);
        match self.game {
            Game::Breakout => {
                if action == Action::Fire && !self.ball_in_play {
                    self.serve(cfg);
                }
                if self.ball_in_play {
                    self.advance_breakout(cfg, out);
                }
            }
            Game::Pong => {
                if !self.ball_in_play {
                    if self.serve_countdown == 0 {
                        self.serve(cfg);
                    } else {
                        self.serve_countdown -= 1;
                    }
                }
                if self.ball_in_play {
                    self.advance_pong(cfg, out);
                }
                self.move_opponent(cfg);
            }
        }
    }

    fn move_paddle(&mut self, action: Action, cfg: &SimConfig) {
        let sign = f64::from(action.axis_sign());
        if sign == 0.0 {
            return;
        }
        // RIGHT moves up in Pong, where rows grow downward
        let delta = match self.game {
            Game::Breakout => sign * cfg.paddle_speed,
            Game::Pong => -sign * cfg.paddle_speed,
        };
        let (lo, hi) = paddle_range(cfg);
        self.paddle = (self.paddle + delta).clamp(lo, hi);
    }

    fn move_opponent(&mut self, cfg: &SimConfig) {
        let (lo, hi) = paddle_range(cfg);
        let target = if self.ball_in_play {
            self.ball.y
        } else {
            0.5 * (lo + hi)
        };
        let step = (target - self.opponent).clamp(-cfg.opponent_speed, cfg.opponent_speed);
        self.opponent = (self.opponent + step).clamp(lo, hi);
    }

    fn serve(&mut self, cfg: &SimConfig) {
        let angle = self
            .rng
            .gen_range(cfg.serve_angle_min_deg..=cfg.serve_angle_max_deg)
            .to_radians();
        let side = if self.rng.gen::<bool>() { 1.0 } else { -1.0 };
        let (sin, cos) = angle.sin_cos();
        let speed = cfg.ball_speed;
        match self.game {
            Game::Breakout => {
                let mid = 0.5 * (cfg.field_left_edge() + cfg.field_right());
                let x = mid + self.rng.gen_range(-16.0..=16.0);
                let y = cfg.field_top_edge()
                    + (cfg.brick_top + cfg.brick_rows * cfg.brick_height) as f64
                    + 4.0 * cfg.ball_size as f64;
                self.place_ball(x, y, side * speed * sin, speed * cos);
            }
            Game::Pong => {
                let mid_x = 0.5 * (cfg.field_left_edge() + cfg.field_right());
                let mid_y = 0.5 * (cfg.field_top_edge() + cfg.field_bottom());
                let y = mid_y + self.rng.gen_range(-20.0..=20.0);
                let toward = if self.serve_toward_agent { 1.0 } else { -1.0 };
                self.place_ball(mid_x, y, toward * speed * cos, side * speed * sin);
            }
        }
    }

    fn advance_breakout(&mut self, cfg: &SimConfig, out: &mut StepOutcome) {
        let r = cfg.ball_size as f64 / 2.0;
        let b = &mut self.ball;
        b.x += b.vx;
        b.y += b.vy;

        let mut wall = reflect_low(&mut b.x, &mut b.vx, cfg.field_left_edge() + r);
        wall |= reflect_high(&mut b.x, &mut b.vx, cfg.field_right() - r);
        wall |= reflect_low(&mut b.y, &mut b.vy, cfg.field_top_edge() + r);
        if wall {
            out.events.push(Event::WallBounce);
        }

        if let Some((row, col)) = self.brick_contact(cfg) {
            let idx = row * cfg.brick_cols + col;
            self.bricks[idx] = false;
            let points = cfg.brick_values[row];
            self.score += points;
            out.reward += points as f64;
            out.events.push(Event::BrickHit { row, col, points });
            let (_, y0, _, y1) = brick_rect(cfg, row, col);
            // send the ball away from the brick it hit
            self.ball.vy = if self.ball.y < 0.5 * (y0 + y1) {
                -self.ball.vy.abs()
            } else {
                self.ball.vy.abs()
            };
            if self.bricks_alive() == 0 {
                self.terminal = true;
            }
        }

        let half_len = cfg.paddle_length as f64 / 2.0;
        let half_thick = cfg.paddle_thickness as f64 / 2.0;
        let py = paddle_line(cfg);
        let b = &mut self.ball;
        if b.vy > 0.0
            && (b.x - self.paddle).abs() < half_len + r
            && (b.y - py).abs() < half_thick + r
        {
            let offset = (b.x - self.paddle) / (half_len + r);
            let angle = bounce_angle(cfg, offset, b.vx).to_radians();
            b.vx = cfg.ball_speed * angle.sin();
            b.vy = -cfg.ball_speed * angle.cos();
            out.events.push(Event::PaddleBounce);
        }

        if self.ball.y + r > cfg.field_bottom() {
            self.ball_in_play = false;
            self.lives -= 1;
            self.lives_lost += 1;
            out.reward -= 1.0;
            out.events.push(Event::LifeLost);
            if self.lives == 0 {
                self.terminal = true;
            }
        }
    }

    /// Nearest live brick overlapping the ball, if any.
    fn brick_contact(&self, cfg: &SimConfig) -> Option<(usize, usize)> {
        let r = cfg.ball_size as f64 / 2.0;
        let b = &self.ball;
        let mut best: Option<((usize, usize), f64)> = None;
        for row in 0..cfg.brick_rows {
            for col in 0..cfg.brick_cols {
                if !self.bricks[row * cfg.brick_cols + col] {
                    continue;
                }
                let (x0, y0, x1, y1) = brick_rect(cfg, row, col);
                if b.x + r > x0 && b.x - r < x1 && b.y + r > y0 && b.y - r < y1 {
                    let (cx, cy) = (0.5 * (x0 + x1), 0.5 * (y0 + y1));
                    let d = (b.x - cx).powi(2) + (b.y - cy).powi(2);
                    if best.is_none_or(|(_, bd)| d < bd) {
                        best = Some(((row, col), d));
                    }
                }
            }
        }
        best.map(|(rc, _)| rc)
    }

    fn advance_pong(&mut self, cfg: &SimConfig, out: &mut StepOutcome) {
        let r = cfg.ball_size as f64 / 2.0;
        let b = &mut self.ball;
        b.x += b.vx;
        b.y += b.vy;

        let mut wall = reflect_low(&mut b.y, &mut b.vy, cfg.field_top_edge() + r);
        wall |= reflect_high(&mut b.y, &mut b.vy, cfg.field_bottom() - r);
        if wall {
            out.events.push(Event::WallBounce);
        }

        let half_len = cfg.paddle_length as f64 / 2.0;
        let half_thick = cfg.paddle_thickness as f64 / 2.0;
        let contact = |paddle_x: f64, paddle_y: f64, b: &Ball| {
            (b.x - paddle_x).abs() < half_thick + r && (b.y - paddle_y).abs() < half_len + r
        };
        let (agent_x, opp_x) = (paddle_line(cfg), opponent_line(cfg));
        let hit = if b.vx > 0.0 && contact(agent_x, self.paddle, b) {
            Some((self.paddle, -1.0))
        } else if b.vx < 0.0 && contact(opp_x, self.opponent, b) {
            Some((self.opponent, 1.0))
        } else {
            None
        };
        if let Some((paddle_y, out_dir)) = hit {
            let offset = (b.y - paddle_y) / (half_len + r);
            let angle = bounce_angle(cfg, offset, b.vy).to_radians();
            b.vx = out_dir * cfg.ball_speed * angle.cos();
            b.vy = cfg.ball_speed * angle.sin();
            out.events.push(Event::PaddleBounce);
        }

        let scored = if b.x + r > cfg.field_right() {
            Some(false)
        } else if b.x - r < cfg.field_left_edge() {
            Some(true)
        } else {
            None
        };
        if let Some(agent_scored) = scored {
            self.ball_in_play = false;
            self.serve_countdown = cfg.serve_delay;
            if agent_scored {
                self.points_for += 1;
                self.score += 1;
                out.reward += 1.0;
                out.events.push(Event::PointFor);
            } else {
                self.points_against += 1;
                self.score -= 1;
                out.reward -= 1.0;
                out.events.push(Event::PointAgainst);
            }
            // the side that conceded receives the next serve
            self.serve_toward_agent = !agent_scored;
            if self.points_for >= cfg.points_to_win || self.points_against >= cfg.points_to_win {
                self.terminal = true;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn breakout() -> (SimConfig, SimState) {
        let cfg = SimConfig::breakout();
        let s = reset(&cfg).unwrap();
        (cfg, s)
    }

    #[test]
    fn breakout_reset() {
        let (cfg, s) = breakout();
        assert_eq!(s.lives, 5);
        assert_eq!(s.score, 0);
        assert_eq!(s.bricks_alive(), cfg.brick_rows * cfg.brick_cols);
        assert!(!s.ball_in_play);
    }

    #[test]
    fn same_seed_same_state() {
        let cfg = SimConfig::breakout();
        assert_eq!(reset(&cfg).unwrap(), reset(&cfg).unwrap());
        let mut a = reset(&cfg).unwrap();
        let mut b = reset(&cfg).unwrap();
        a.step(Action::Fire, &cfg).unwrap();
        b.step(Action::Fire, &cfg).unwrap();
        assert_eq!(a, b);
        let other = SimConfig {
            seed: 9,
            ..cfg.clone()
        };
        let mut c = reset(&other).unwrap();
        c.step(Action::Fire, &other).unwrap();
        assert_ne!(a.ball, c.ball);
    }

    #[test]
    fn pong_reset_centres_paddles() {
        let cfg = SimConfig::pong();
        let s = reset(&cfg).unwrap();
        let (lo, hi) = paddle_range(&cfg);
        assert_eq!(s.paddle, 0.5 * (lo + hi));
        assert_eq!(s.opponent, s.paddle);
        assert_eq!((s.points_for, s.points_against, s.score), (0, 0, 0));
    }

    #[test]
    fn invalid_config_is_rejected() {
        let cfg = SimConfig {
            lives: 0,
            ..SimConfig::breakout()
        };
        match reset(&cfg) {
            Err(SimError::Config(e)) => assert_eq!(e.field, "sim.lives"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn fire_serves_downward() {
        let (cfg, mut s) = breakout();
        s.step(Action::Noop, &cfg).unwrap();
        assert!(!s.ball_in_play);
        s.step(Action::Fire, &cfg).unwrap();
        assert!(s.ball_in_play);
        assert!(s.ball.vy > 0.0);
        assert!((s.ball.speed() - cfg.ball_speed).abs() < 1e-12);
    }

    #[test]
    fn side_wall_reflection_preserves_speed() {
        let (cfg, mut s) = breakout();
        let v = cfg.ball_speed / 2f64.sqrt();
        let x = cfg.field_left_edge() + 1.0 + 0.5;
        s.place_ball(x, 150.0, -v, v);
        let out = s
            .step(
                Action::Noop,
                &SimConfig {
                    frameskip: 1,
                    ..cfg.clone()
                },
            )
            .unwrap();
        assert!(out.events.contains(&Event::WallBounce));
        assert!(s.ball.vx > 0.0);
        assert!((s.ball.speed() - cfg.ball_speed).abs() < 1e-12);
        assert!(s.ball.x - 1.0 >= cfg.field_left_edge());
    }

    #[test]
    fn missed_ball_costs_a_life() {
        let (cfg, mut s) = breakout();
        // far from the centred paddle, about to leave the field
        s.place_ball(
            cfg.field_left_edge() + 4.0,
            cfg.field_bottom() - 1.0,
            0.0,
            cfg.ball_speed,
        );
        let out = s.step(Action::Noop, &cfg).unwrap();
        assert_eq!(out.events, vec![Event::LifeLost]);
        assert_eq!(out.reward, -1.0);
        assert_eq!(s.lives, 4);
        assert!(!s.ball_in_play);
    }

    #[test]
    fn last_life_ends_the_game() {
        let (cfg, mut s) = breakout();
        s.lives = 1;
        s.place_ball(
            cfg.field_left_edge() + 4.0,
            cfg.field_bottom() - 1.0,
            0.0,
            cfg.ball_speed,
        );
        let out = s.step(Action::Noop, &cfg).unwrap();
        assert!(out.terminal);
        assert!(matches!(
            s.step(Action::Noop, &cfg),
            Err(SimError::Terminal { .. })
        ));
    }

    #[test]
    fn brick_hit_scores_and_reflects() {
        let (cfg, mut s) = breakout();
        let (x0, _, x1, y1) = brick_rect(&cfg, 5, 3);
        s.place_ball(0.5 * (x0 + x1), y1 + 1.5, 0.0, -cfg.ball_speed);
        let out = s.step(Action::Noop, &cfg).unwrap();
        assert_eq!(out.count(|e| matches!(e, Event::BrickHit { .. })), 1);
        assert!(out.events.contains(&Event::BrickHit {
            row: 5,
            col: 3,
            points: 1
        }));
        assert!(!s.brick_alive(&cfg, 5, 3));
        assert_eq!(s.score, 1);
        assert_eq!(out.reward, 1.0);
        assert!(s.ball.vy > 0.0);
    }

    #[test]
    fn paddle_centre_hit_keeps_minimum_angle() {
        let (cfg, mut s) = breakout();
        let one = SimConfig {
            frameskip: 1,
            ..cfg.clone()
        };
        let py = paddle_line(&cfg);
        s.place_ball(s.paddle, py - 3.0, 0.0, cfg.ball_speed);
        let out = s.step(Action::Noop, &one).unwrap();
        assert!(out.events.contains(&Event::PaddleBounce));
        let angle = s.ball.vx.atan2(-s.ball.vy).to_degrees();
        assert!((angle - cfg.bounce_angle_min_deg).abs() < 1e-9);
        assert!((s.ball.speed() - cfg.ball_speed).abs() < 1e-12);
    }

    #[test]
    fn paddle_edge_hit_uses_steep_angle() {
        let (cfg, mut s) = breakout();
        let one = SimConfig {
            frameskip: 1,
            ..cfg.clone()
        };
        let py = paddle_line(&cfg);
        s.place_ball(s.paddle - 8.5, py - 3.0, 0.0, cfg.ball_speed);
        s.step(Action::Noop, &one).unwrap();
        assert!(s.ball.vx < 0.0 && s.ball.vy < 0.0);
        let angle = s.ball.vx.atan2(-s.ball.vy).to_degrees();
        assert!(angle < -cfg.bounce_angle_min_deg);
    }

    #[test]
    fn paddle_is_clamped_to_the_field() {
        let (cfg, mut s) = breakout();
        for _ in 0..200 {
            s.step(Action::Left, &cfg).unwrap();
        }
        assert_eq!(s.paddle, paddle_range(&cfg).0);
    }

    /// Hand-traced: ball served from the centre toward the opponent at
    /// 40 degrees off horizontal, opponent capped at 0.05 px/tick, cannot
    /// cover the vertical distance and the agent scores.
    #[test]
    fn slow_opponent_concedes() {
        let cfg = SimConfig {
            opponent_speed: 0.05,
            ..SimConfig::pong()
        };
        let mut s = reset(&cfg).unwrap();
        let angle = 40f64.to_radians();
        let mid_x = 0.5 * (cfg.field_left_edge() + cfg.field_right());
        s.place_ball(
            mid_x,
            s.opponent,
            -cfg.ball_speed * angle.cos(),
            cfg.ball_speed * angle.sin(),
        );
        // horizontal run to the opponent is ~60 px at 1.15 px/tick, about 53
        // ticks, during which the ball drops ~51 px (with one wall bounce)
        // and the opponent follows by under 3 px.
        let mut total = StepOutcome::default();
        for _ in 0..40 {
            let out = s.step(Action::Noop, &cfg).unwrap();
            total.events.extend(out.events);
            total.reward += out.reward;
            if total.events.contains(&Event::PointFor) {
                break;
            }
        }
        assert!(total.events.contains(&Event::PointFor));
        assert_eq!(total.reward, 1.0);
        assert_eq!((s.points_for, s.score), (1, 1));
        assert!(!s.serve_toward_agent);
    }

    #[test]
    fn pong_ends_at_points_to_win() {
        let cfg = SimConfig {
            points_to_win: 2,
            ..SimConfig::pong()
        };
        let mut s = reset(&cfg).unwrap();
        let mut steps = 0;
        while !s.is_terminal() {
            // a paddle parked at the bottom misses most serves
            s.step(Action::Left, &cfg).unwrap();
            steps += 1;
            assert!(steps < 10_000);
        }
        assert!(s.points_for == 2 || s.points_against == 2);
        assert_eq!(s.score, s.points_for as i64 - s.points_against as i64);
    }
}
