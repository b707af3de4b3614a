//! Binary frame/action protocol for remote environments.
//!
//! The environment sends one frame message per step and the agent answers
//! each one with a single action byte:
//!
//! ```text
//! frame:  0x50 | width u16 BE | height u16 BE | flags u8 | [reward i16 BE] | width*height luminance bytes
//! flags:  bit 0 terminal, bit 1 reward present; other bits must be zero
//! reward: fixed point, value * 100
//! action: 0 NOOP, 1 FIRE, 2 RIGHT, 3 LEFT
//! ```

use std::io::{self, Read, Write};

use thiserror::Error;

use crate::perception::{FrameError, RawFrame};
use crate::Action;

pub const FRAME_MAGIC: u8 = 0x50;
pub const FLAG_TERMINAL: u8 = 0b01;
pub const FLAG_REWARD: u8 = 0b10;
const HEADER_LEN: usize = 6;

#[derive(Debug, Error)]
pub enum ProtocolError {
    #[error("framing error at byte {offset}: {reason}")]
    Framing {
        offset: usize,
        reason: FramingReason,
    },
    #[error("cannot encode: {0}")]
    Encode(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FramingReason {
    #[error("bad magic byte {0:#04x}")]
    BadMagic(u8),
    #[error("reserved flag bits set in {0:#04x}")]
    ReservedFlags(u8),
    #[error("stream ended, {needed} more bytes expected")]
    Truncated { needed: usize },
    #[error("{0} unexpected trailing bytes")]
    Trailing(usize),
    #[error("action byte {0} is not 0..=3")]
    BadAction(u8),
}

impl ProtocolError {
    fn framing(offset: usize, reason: FramingReason) -> Self {
        ProtocolError::Framing { offset, reason }
    }

    /// Byte offset of a framing error, if this is one.
    pub fn offset(&self) -> Option<usize> {
        match self {
            ProtocolError::Framing { offset, .. } => Some(*offset),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrameMessage {
    pub width: u16,
    pub height: u16,
    pub terminal: bool,
    /// Reward times 100, when present.
    pub reward_centi: Option<i16>,
    pub pixels: Vec<u8>,
}

impl FrameMessage {
    /// Builds a message from a frame; `reward` is rounded to hundredths.
    pub fn from_frame(
        frame: &RawFrame,
        terminal: bool,
        reward: Option<f64>,
    ) -> Result<Self, ProtocolError> {
        let dim = |v: usize, what: &str| {
            u16::try_from(v)
                .map_err(|_| ProtocolError::Encode(format!("{what} {v} does not fit u16")))
        };
        let width = dim(frame.width(), "width")?;
        let height = dim(frame.height(), "height")?;
        let reward_centi = reward
            .map(|r| {
                let centi = (r * 100.0).round();
                if centi.is_finite() && (i16::MIN as f64..=i16::MAX as f64).contains(&centi) {
                    Ok(centi as i16)
                } else {
                    Err(ProtocolError::Encode(format!(
                        "reward {r} outside the i16/100 range"
                    )))
                }
            })
            .transpose()?;
        Ok(Self {
            width,
            height,
            terminal,
            reward_centi,
            pixels: frame.pixels().to_vec(),
        })
    }

    pub fn reward(&self) -> Option<f64> {
        self.reward_centi.map(|c| f64::from(c) / 100.0)
    }

    pub fn flags(&self) -> u8 {
        let mut flags = 0;
        if self.terminal {
            flags |= FLAG_TERMINAL;
        }
        if self.reward_centi.is_some() {
            flags |= FLAG_REWARD;
        }
        flags
    }

    pub fn encoded_len(&self) -> usize {
        HEADER_LEN + if self.reward_centi.is_some() { 2 } else { 0 } + self.pixels.len()
    }

    pub fn encode(&self) -> Vec<u8> {
        debug_assert_eq!(
            self.pixels.len(),
            self.width as usize * self.height as usize
        );
        let mut out = Vec::with_capacity(self.encoded_len());
        out.push(FRAME_MAGIC);
        out.extend_from_slice(&self.width.to_be_bytes());
        out.extend_from_slice(&self.height.to_be_bytes());
        out.push(self.flags());
        if let Some(r) = self.reward_centi {
            out.extend_from_slice(&r.to_be_bytes());
        }
        out.extend_from_slice(&self.pixels);
        out
    }

    /// Decodes one message from the front of `bytes`, returning it with the
    /// number of bytes consumed.
    pub fn decode_prefix(bytes: &[u8]) -> Result<(Self, usize), ProtocolError> {
        let need = |upto: usize| {
            if bytes.len() < upto {
                Err(ProtocolError::framing(
                    bytes.len(),
                    FramingReason::Truncated {
                        needed: upto - bytes.len(),
                    },
                ))
            } else {
                Ok(())
            }
        };
        need(1)?;
        if bytes[0] != FRAME_MAGIC {
            return Err(ProtocolError::framing(0, FramingReason::BadMagic(bytes[0])));
        }
        need(HEADER_LEN)?;
        let width = u16::from_be_bytes([bytes[1], bytes[2]]);
        let height = u16::from_be_bytes([bytes[3], bytes[4]]);
        let flags = bytes[5];
        if flags & !(FLAG_TERMINAL | FLAG_REWARD) != 0 {
            return Err(ProtocolError::framing(
                5,
                FramingReason::ReservedFlags(flags),
            ));
        }
        let mut pos = HEADER_LEN;
        let reward_centi = if flags & FLAG_REWARD != 0 {
            need(pos + 2)?;
            let r = i16::from_be_bytes([bytes[pos], bytes[pos + 1]]);
            pos += 2;
            Some(r)
        } else {
            None
        };
        let n = width as usize * height as usize;
        need(pos + n)?;
        let pixels = bytes[pos..pos + n].to_vec();
        Ok((
            Self {
                width,
                height,
                terminal: flags & FLAG_TERMINAL != 0,
                reward_centi,
                pixels,
            },
            pos + n,
        ))
    }

    /// Decodes exactly one message; trailing bytes are an error.
    pub fn decode(bytes: &[u8]) -> Result<Self, ProtocolError> {
        let (msg, used) = Self::decode_prefix(bytes)?;
        if used != bytes.len() {
            return Err(ProtocolError::framing(
                used,
                FramingReason::Trailing(bytes.len() - used),
            ));
        }
        Ok(msg)
    }

    pub fn to_frame(&self) -> Result<RawFrame, FrameError> {
        RawFrame::new(
            self.width as usize,
            self.height as usize,
            self.pixels.clone(),
        )
    }

    pub fn into_frame(self) -> Result<RawFrame, FrameError> {
        RawFrame::new(self.width as usize, self.height as usize, self.pixels)
    }
}

pub fn encode_frame(
    frame: &RawFrame,
    terminal: bool,
    reward: Option<f64>,
) -> Result<Vec<u8>, ProtocolError> {
    Ok(FrameMessage::from_frame(frame, terminal, reward)?.encode())
}

pub fn decode_frame(bytes: &[u8]) -> Result<FrameMessage, ProtocolError> {
    FrameMessage::decode(bytes)
}

/// Reads `buf.len()` bytes starting at message offset `offset`.
fn read_at<R: Read>(r: &mut R, buf: &mut [u8], offset: usize) -> Result<(), ProtocolError> {
    let mut filled = 0;
    while filled < buf.len() {
        match r.read(&mut buf[filled..]) {
            Ok(0) => {
                return Err(ProtocolError::framing(
                    offset + filled,
                    FramingReason::Truncated {
                        needed: buf.len() - filled,
                    },
                ))
            }
            Ok(n) => filled += n,
            Err(e) if e.kind() == io::ErrorKind::Interrupted => {}
            Err(e) => return Err(e.into()),
        }
    }
    Ok(())
}

/// Reads one frame message from a stream. Returns `Ok(None)` on a clean end
/// of stream before the first byte of a message.
pub fn read_frame<R: Read>(r: &mut R) -> Result<Option<FrameMessage>, ProtocolError> {
    let mut magic = [0u8; 1];
    loop {
        match r.read(&mut magic) {
            Ok(0) => return Ok(None),
            Ok(_) => break,
            Err(e) if e.kind() == io::ErrorKind::Interrupted => {}
            Err(e) => return Err(e.into()),
        }
    }
    if magic[0] != FRAME_MAGIC {
        return Err(ProtocolError::framing(0, FramingReason::BadMagic(magic[0])));
    }
    let mut header = [0u8; HEADER_LEN - 1];
    read_at(r, &mut header, 1)?;
    let width = u16::from_be_bytes([header[0], header[1]]);
    let height = u16::from_be_bytes([header[2], header[3]]);
    let flags = header[4];
    if flags & !(FLAG_TERMINAL | FLAG_REWARD) != 0 {
        return Err(ProtocolError::framing(
            5,
            FramingReason::ReservedFlags(flags),
        ));
    }
    let mut pos = HEADER_LEN;
    let reward_centi = if flags & FLAG_REWARD != 0 {
        let mut rb = [0u8; 2];
        read_at(r, &mut rb, pos)?;
        pos += 2;
        Some(i16::from_be_bytes(rb))
    } else {
        None
    };
    let n = width as usize * height as usize;
    // grow as bytes arrive rather than trusting the header with one allocation
    let mut pixels = Vec::new();
    r.by_ref().take(n as u64).read_to_end(&mut pixels)?;
    if pixels.len() < n {
        return Err(ProtocolError::framing(
            pos + pixels.len(),
            FramingReason::Truncated {
                needed: n - pixels.len(),
            },
        ));
    }
    Ok(Some(FrameMessage {
        width,
        height,
        terminal: flags & FLAG_TERMINAL != 0,
        reward_centi,
        pixels,
    }))
}

pub fn write_frame<W: Write>(w: &mut W, msg: &FrameMessage) -> Result<(), ProtocolError> {
    w.write_all(&msg.encode())?;
    w.flush()?;
    Ok(())
}

pub fn encode_action(action: Action) -> u8 {
    action.as_byte()
}

pub fn decode_action(byte: u8) -> Result<Action, ProtocolError> {
    Action::from_byte(byte).ok_or(ProtocolError::framing(0, FramingReason::BadAction(byte)))
}

/// Reads one action byte; `Ok(None)` on a clean end of stream.
pub fn read_action<R: Read>(r: &mut R) -> Result<Option<Action>, ProtocolError> {
    let mut b = [0u8; 1];
    loop {
        match r.read(&mut b) {
            Ok(0) => return Ok(None),
            Ok(_) => return decode_action(b[0]).map(Some),
            Err(e) if e.kind() == io::ErrorKind::Interrupted => {}
            Err(e) => return Err(e.into()),
        }
    }
}

pub fn write_action<W: Write>(w: &mut W, action: Action) -> Result<(), ProtocolError> {
    w.write_all(&[encode_action(action)])?;
    w.flush()?;
    Ok(())
}
