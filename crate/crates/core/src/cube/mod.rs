//! Cubelet-level state model, the 18-move engine, and conversions between
//! the cubelet, sticker and factored representations.

mod factored;
pub mod geometry;
mod moves;
mod state;
mod stickers;

use alloc::string::String;

pub use factored::{from_factored, to_factored, CubieVar, FactoredState, InvalidFactored};
pub use moves::{ActionSet, Face, Move, Turn};
pub use state::{invert_plan, CubeState};
pub use stickers::{from_stickers, to_stickers, Color, FaceletLayout, InvalidArray, StickerArray};

pub(crate) use stickers::{identify_corner, identify_edge};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CubeError {
    #[error("unknown move {0:?}")]
    UnknownMove(String),
    #[error("slot occupancy is not a permutation")]
    NotAPermutation,
    #[error("orientation value out of range")]
    OrientationOutOfRange,
}

/// Convenience for parsing whitespace-separated move notation.
pub fn parse_moves(text: &str) -> Result<alloc::vec::Vec<Move>, CubeError> {
    text.split_whitespace().map(str::parse).collect()
}

/// Space-separated notation of a move sequence.
pub fn format_moves(plan: &[Move]) -> String {
    let mut out = String::new();
    for (i, m) in plan.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        out.push_str(m.notation());
    }
    out
}
