use super::physics::{brick_rect, opponent_line, paddle_line, SimState};
use super::{Game, SimConfig};
use crate::perception::RawFrame;

pub(crate) const FRAME_HEIGHT: usize = RawFrame::ATARI_HEIGHT;
pub(crate) const FRAME_WIDTH: usize = RawFrame::ATARI_WIDTH;

const WALL: u8 = 142;
const PADDLE: u8 = 200;
const OPPONENT: u8 = 150;
const BALL: u8 = 236;
const BRICK_SHADES: [u8; 6] = [200, 184, 168, 152, 136, 120];
const WALL_THICKNESS: i64 = 8;

/// First pixel of an `n`-pixel object centred at `centre`.
fn first_pixel(centre: f64, n: usize) -> i64 {
    (centre - (n as f64 - 1.0) / 2.0).round() as i64
}

fn fill_centred(frame: &mut RawFrame, cx: f64, cy: f64, w: usize, h: usize, value: u8) {
    frame.fill_rect(
        first_pixel(cy, h),
        first_pixel(cx, w),
        h as i64,
        w as i64,
        value,
    );
}

/// Draws the state as a 210×160 luminance frame: bright solid rectangles on
/// black, with walls outside the playing field.
pub fn render(state: &SimState, cfg: &SimConfig) -> RawFrame {
    let mut frame = RawFrame::black(FRAME_WIDTH, FRAME_HEIGHT);
    let (left, top) = (cfg.field_left as i64, cfg.field_top as i64);
    let (width, height) = (cfg.field_width as i64, cfg.field_height as i64);
    let t = WALL_THICKNESS;

    match cfg.game {
        Game::Breakout => {
            frame.fill_rect(top - t, left - t, t, width + 2 * t, WALL);
            frame.fill_rect(top, left - t, height, t, WALL);
            frame.fill_rect(top, left + width, height, t, WALL);

            let bw = cfg.brick_width() as i64;
            for row in 0..cfg.brick_rows {
                let shade = BRICK_SHADES[row % BRICK_SHADES.len()];
                for col in 0..cfg.brick_cols {
                    if !state.brick_alive(cfg, row, col) {
                        continue;
                    }
                    let (x0, y0, _, _) = brick_rect(cfg, row, col);
                    let (c0, r0) = ((x0 + 0.5) as i64, (y0 + 0.5) as i64);
                    frame.fill_rect(r0, c0, cfg.brick_height as i64, bw, shade);
                }
            }

            fill_centred(
                &mut frame,
                state.paddle,
                paddle_line(cfg),
                cfg.paddle_length,
                cfg.paddle_thickness,
                PADDLE,
            );
        }
        Game::Pong => {
            frame.fill_rect(top - t, left, t, width, WALL);
            frame.fill_rect(top + height, left, t, width, WALL);

            fill_centred(
                &mut frame,
                paddle_line(cfg),
                state.paddle,
                cfg.paddle_thickness,
                cfg.paddle_length,
                PADDLE,
            );
            fill_centred(
                &mut frame,
                opponent_line(cfg),
                state.opponent,
                cfg.paddle_thickness,
                cfg.paddle_length,
                OPPONENT,
            );
        }
    }

    if state.ball_in_play {
        fill_centred(
            &mut frame,
            state.ball.x,
            state.ball.y,
            cfg.ball_size,
            cfg.ball_size,
            BALL,
        );
    }
    frame
}
