use std::io::{Read, Write};

use super::env::Environment;
use super::HarnessError;
use crate::protocol::{read_action, write_frame, FrameMessage};

/// Plays the environment side of the wire protocol for `episodes` episodes.
///
/// This is what an external bridge does: send a frame, wait for an action,
/// step, repeat. A terminal frame is followed by one acknowledging action
/// before the next episode starts. Returns the number of episodes served;
/// fewer than requested means the peer hung up.
pub fn serve<R: Read, W: Write>(
    env: &mut dyn Environment,
    episodes: usize,
    mut reader: R,
    mut writer: W,
) -> Result<usize, HarnessError> {
    for served in 0..episodes {
        let obs = env.reset()?;
        write_frame(
            &mut writer,
            &FrameMessage::from_frame(&obs.frame, false, None)?,
        )?;
        loop {
            let Some(action) = read_action(&mut reader)? else {
                return Ok(served);
            };
            let obs = env.step(action)?;
            let msg = FrameMessage::from_frame(&obs.frame, obs.terminal, Some(obs.reward))?;
            write_frame(&mut writer, &msg)?;
            if obs.terminal {
                if read_action(&mut reader)?.is_none() {
                    return Ok(served + 1);
                }
                break;
            }
        }
    }
    Ok(episodes)
}
