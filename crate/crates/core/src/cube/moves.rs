use core::fmt;
use core::str::FromStr;

#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

use super::CubeError;

/// One of the six outer faces. Declaration order is the canonical move
/// order used for successor generation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Face {
    U = 0,
    D = 1,
    L = 2,
    R = 3,
    F = 4,
    B = 5,
}

impl Face {
    pub const ALL: [Face; 6] = [Face::U, Face::D, Face::L, Face::R, Face::F, Face::B];

    pub const fn index(self) -> usize {
        self as usize
    }

    pub const fn from_index(i: usize) -> Face {
        Face::ALL[i]
    }

    pub const fn opposite(self) -> Face {
        match self {
            Face::U => Face::D,
            Face::D => Face::U,
            Face::L => Face::R,
            Face::R => Face::L,
            Face::F => Face::B,
            Face::B => Face::F,
        }
    }

    pub const fn letter(self) -> char {
        match self {
            Face::U => 'U',
            Face::D => 'D',
            Face::L => 'L',
            Face::R => 'R',
            Face::F => 'F',
            Face::B => 'B',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Turn {
    /// 90 degrees clockwise, seen from outside the face.
    Cw = 0,
    /// 90 degrees counter-clockwise (`rev` suffix).
    Ccw = 1,
    /// 180 degrees (`2` suffix).
    Half = 2,
}

impl Turn {
    /// Number of clockwise quarter turns this turn amounts to.
    pub const fn quarters(self) -> u8 {
        match self {
            Turn::Cw => 1,
            Turn::Half => 2,
            Turn::Ccw => 3,
        }
    }

    const fn from_quarters(q: u8) -> Option<Turn> {
        match q % 4 {
            1 => Some(Turn::Cw),
            2 => Some(Turn::Half),
            3 => Some(Turn::Ccw),
            _ => None,
        }
    }
}

/// A face turn. The 18 moves are indexed `face * 3 + turn`, giving the
/// order U, Urev, U2, D, Drev, D2, L, ... B2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Move {
    pub face: Face,
    pub turn: Turn,
}

impl Move {
    pub const COUNT: usize = 18;

    pub const ALL: [Move; 18] = {
        let mut out = [Move { face: Face::U, turn: Turn::Cw }; 18];
        let mut i = 0;
        while i < 18 {
            out[i] = Move::from_index(i);
            i += 1;
        }
        out
    };

    pub const fn new(face: Face, turn: Turn) -> Move {
        Move { face, turn }
    }

    pub const fn index(self) -> usize {
        self.face as usize * 3 + self.turn as usize
    }

    pub const fn from_index(i: usize) -> Move {
        let turn = match i % 3 {
            0 => Turn::Cw,
            1 => Turn::Ccw,
            _ => Turn::Half,
        };
        Move { face: Face::from_index(i / 3), turn }
    }

    pub const fn inverse(self) -> Move {
        let turn = match self.turn {
            Turn::Cw => Turn::Ccw,
            Turn::Ccw => Turn::Cw,
            Turn::Half => Turn::Half,
        };
        Move { face: self.face, turn }
    }

    pub const fn is_quarter(self) -> bool {
        !matches!(self.turn, Turn::Half)
    }

    /// Combines two turns of the same face; `None` when they cancel.
    pub fn merge(self, other: Move) -> Option<Option<Move>> {
        if self.face != other.face {
            return None;
        }
        Some(
            Turn::from_quarters(self.turn.quarters() + other.turn.quarters())
                .map(|turn| Move::new(self.face, turn)),
        )
    }

    /// Notation as used in plans and PDDL action names: `L`, `Lrev`, `L2`.
    pub const fn notation(self) -> &'static str {
        NOTATION[self.index()]
    }
}

const NOTATION: [&str; 18] = [
    "U", "Urev", "U2", "D", "Drev", "D2", "L", "Lrev", "L2", "R", "Rrev", "R2", "F", "Frev", "F2",
    "B", "Brev", "B2",
];

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.notation())
    }
}

impl FromStr for Move {
    type Err = CubeError;

    /// Case-insensitive, so planner output such as `urev` parses.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        NOTATION
            .iter()
            .position(|n| n.eq_ignore_ascii_case(s))
            .map(Move::from_index)
            .ok_or_else(|| CubeError::UnknownMove(s.into()))
    }
}

#[cfg(feature = "serde")]
impl Serialize for Move {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.notation())
    }
}

#[cfg(feature = "serde")]
impl<'de> Deserialize<'de> for Move {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = <alloc::string::String as Deserialize>::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Which moves a model or dataset admits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub enum ActionSet {
    /// The 12 quarter turns (model m1, dataset d1).
    #[cfg_attr(feature = "serde", serde(rename = "QUARTER_12"))]
    Quarter12,
    /// Quarter turns plus the 6 half turns (model m2, dataset d2).
    #[cfg_attr(feature = "serde", serde(rename = "FULL_18"))]
    Full18,
}

const QUARTER_MOVES: [Move; 12] = {
    let mut out = [Move { face: Face::U, turn: Turn::Cw }; 12];
    let mut i = 0;
    while i < 6 {
        out[2 * i] = Move::new(Face::from_index(i), Turn::Cw);
        out[2 * i + 1] = Move::new(Face::from_index(i), Turn::Ccw);
        i += 1;
    }
    out
};

impl ActionSet {
    /// Moves in canonical successor order.
    pub fn moves(self) -> &'static [Move] {
        match self {
            ActionSet::Quarter12 => &QUARTER_MOVES,
            ActionSet::Full18 => &Move::ALL,
        }
    }

    pub fn contains(self, m: Move) -> bool {
        match self {
            ActionSet::Quarter12 => m.is_quarter(),
            ActionSet::Full18 => true,
        }
    }

    pub fn len(self) -> usize {
        self.moves().len()
    }

    pub fn is_empty(self) -> bool {
        false
    }

    /// Action count, which is also how the CLI names the set.
    pub fn size(self) -> u8 {
        match self {
            ActionSet::Quarter12 => 12,
            ActionSet::Full18 => 18,
        }
    }

    pub fn from_size(n: u32) -> Option<ActionSet> {
        match n {
            12 => Some(ActionSet::Quarter12),
            18 => Some(ActionSet::Full18),
            _ => None,
        }
    }
}

impl fmt::Display for ActionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ActionSet::Quarter12 => "QUARTER_12",
            ActionSet::Full18 => "FULL_18",
        })
    }
}
