use serde::{Deserialize, Serialize};

/// One discrete button command per tick.
///
/// The discriminants follow the minimal action set ordering that the
/// Atari Breakout and Pong environments expose, so they double as the
/// action byte on the wire.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
#[repr(u8)]
pub enum Action {
    Noop = 0,
    Fire = 1,
    Right = 2,
    Left = 3,
}

impl Action {
    pub const ALL: [Action; 4] = [Action::Noop, Action::Fire, Action::Right, Action::Left];

    pub fn as_byte(self) -> u8 {
        self as u8
    }

    pub fn from_byte(byte: u8) -> Option<Action> {
        match byte {
            0 => Some(Action::Noop),
            1 => Some(Action::Fire),
            2 => Some(Action::Right),
            3 => Some(Action::Left),
            _ => None,
        }
    }

    /// Swaps LEFT and RIGHT; NOOP and FIRE are unchanged.
    pub fn mirrored(self) -> Action {
        match self {
            Action::Right => Action::Left,
            Action::Left => Action::Right,
            other => other,
        }
    }

    /// Displacement sign along the control axis: +1 for RIGHT, -1 for LEFT.
    pub fn axis_sign(self) -> i8 {
        match self {
            Action::Right => 1,
            Action::Left => -1,
            _ => 0,
        }
    }
}

impl std::fmt::Display for Action {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            Action::Noop => "NOOP",
            Action::Fire => "FIRE",
            Action::Right => "RIGHT",
            Action::Left => "LEFT",
        };
        f.write_str(name)
    }
}
