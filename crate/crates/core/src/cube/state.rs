use core::fmt;

#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

use super::geometry::{CubieTable, MOVE_TABLES};
use super::moves::Move;
use super::CubeError;

/// Cubelet-level cube state.
///
/// `corner_perm[slot]` is the corner cubie occupying `slot`, `corner_ori[slot]`
/// its clockwise twist (0..3) measured by where its U/D-coloured sticker sits;
/// likewise for edges with a flip bit. Slot and cubie numbering is described in
/// [`super::geometry`].
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(try_from = "RawCubeState"))]
pub struct CubeState {
    corner_perm: [u8; 8],
    corner_ori: [u8; 8],
    edge_perm: [u8; 12],
    edge_ori: [u8; 12],
}

#[cfg(feature = "serde")]
#[derive(Deserialize)]
struct RawCubeState {
    corner_perm: [u8; 8],
    corner_ori: [u8; 8],
    edge_perm: [u8; 12],
    edge_ori: [u8; 12],
}

#[cfg(feature = "serde")]
impl TryFrom<RawCubeState> for CubeState {
    type Error = CubeError;

    fn try_from(r: RawCubeState) -> Result<Self, Self::Error> {
        CubeState::new(r.corner_perm, r.corner_ori, r.edge_perm, r.edge_ori)
    }
}

fn is_permutation<const N: usize>(p: &[u8; N]) -> bool {
    let mut seen = [false; N];
    for &x in p {
        let x = x as usize;
        if x >= N || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}

/// Parity of a permutation: `true` when odd.
fn is_odd<const N: usize>(p: &[u8; N]) -> bool {
    let mut odd = false;
    for i in 0..N {
        for j in i + 1..N {
            if p[i] > p[j] {
                odd = !odd;
            }
        }
    }
    odd
}

impl CubeState {
    pub const SOLVED: CubeState = CubeState {
        corner_perm: [0, 1, 2, 3, 4, 5, 6, 7],
        corner_ori: [0; 8],
        edge_perm: [0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11],
        edge_ori: [0; 12],
    };

    /// Builds a state, checking the permutation and range invariants only.
    /// Whether the state is reachable is [`CubeState::is_solvable`]'s job.
    pub fn new(
        corner_perm: [u8; 8],
        corner_ori: [u8; 8],
        edge_perm: [u8; 12],
        edge_ori: [u8; 12],
    ) -> Result<Self, CubeError> {
        if !is_permutation(&corner_perm) || !is_permutation(&edge_perm) {
            return Err(CubeError::NotAPermutation);
        }
        if corner_ori.iter().any(|&o| o > 2) || edge_ori.iter().any(|&o| o > 1) {
            return Err(CubeError::OrientationOutOfRange);
        }
        Ok(CubeState { corner_perm, corner_ori, edge_perm, edge_ori })
    }

    pub fn corner_perm(&self) -> &[u8; 8] {
        &self.corner_perm
    }

    pub fn corner_ori(&self) -> &[u8; 8] {
        &self.corner_ori
    }

    pub fn edge_perm(&self) -> &[u8; 12] {
        &self.edge_perm
    }

    pub fn edge_ori(&self) -> &[u8; 12] {
        &self.edge_ori
    }

    pub fn is_solved(&self) -> bool {
        *self == Self::SOLVED
    }

    /// Applies `other` after `self`.
    fn compose(&self, t: &CubieTable) -> CubeState {
        let mut out = CubeState::SOLVED;
        for i in 0..8 {
            let from = t.cp[i] as usize;
            out.corner_perm[i] = self.corner_perm[from];
            out.corner_ori[i] = (self.corner_ori[from] + t.co[i]) % 3;
        }
        for i in 0..12 {
            let from = t.ep[i] as usize;
            out.edge_perm[i] = self.edge_perm[from];
            out.edge_ori[i] = (self.edge_ori[from] + t.eo[i]) & 1;
        }
        out
    }

    pub fn apply_move(&self, m: Move) -> CubeState {
        self.compose(&MOVE_TABLES[m.index()])
    }

    pub fn apply_plan<'a, I>(&self, plan: I) -> CubeState
    where
        I: IntoIterator<Item = &'a Move>,
    {
        plan.into_iter().fold(*self, |s, &m| s.apply_move(m))
    }

    /// Twist sums vanish and both permutations share a parity: exactly the
    /// states reachable from solved by face turns.
    pub fn is_solvable(&self) -> bool {
        let twist: u32 = self.corner_ori.iter().map(|&o| o as u32).sum();
        let flip: u32 = self.edge_ori.iter().map(|&o| o as u32).sum();
        twist % 3 == 0 && flip % 2 == 0 && is_odd(&self.corner_perm) == is_odd(&self.edge_perm)
    }

    /// Number of cubelets not in their solved slot with solved orientation.
    pub fn misplaced_cubelets(&self) -> u32 {
        let corners = (0..8)
            .filter(|&i| self.corner_perm[i] != i as u8 || self.corner_ori[i] != 0)
            .count();
        let edges = (0..12)
            .filter(|&i| self.edge_perm[i] != i as u8 || self.edge_ori[i] != 0)
            .count();
        (corners + edges) as u32
    }

    /// 100-bit canonical encoding, used as the duplicate-detection key.
    pub fn pack(&self) -> u128 {
        let mut k: u128 = 0;
        for i in 0..8 {
            k = (k << 5) | ((self.corner_perm[i] as u128) << 2) | self.corner_ori[i] as u128;
        }
        for i in 0..12 {
            k = (k << 5) | ((self.edge_perm[i] as u128) << 1) | self.edge_ori[i] as u128;
        }
        k
    }

    pub fn unpack(mut k: u128) -> CubeState {
        let mut s = CubeState::SOLVED;
        for i in (0..12).rev() {
            s.edge_ori[i] = (k & 1) as u8;
            s.edge_perm[i] = ((k >> 1) & 0xf) as u8;
            k >>= 5;
        }
        for i in (0..8).rev() {
            s.corner_ori[i] = (k & 3) as u8;
            s.corner_perm[i] = ((k >> 2) & 0x7) as u8;
            k >>= 5;
        }
        s
    }

    /// Crate-internal constructor that skips validation.
    pub(crate) fn from_parts_unchecked(
        corner_perm: [u8; 8],
        corner_ori: [u8; 8],
        edge_perm: [u8; 12],
        edge_ori: [u8; 12],
    ) -> CubeState {
        CubeState { corner_perm, corner_ori, edge_perm, edge_ori }
    }
}

impl Default for CubeState {
    fn default() -> Self {
        Self::SOLVED
    }
}

impl fmt::Debug for CubeState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "CubeState {{ cp: {:?}, co: {:?}, ep: {:?}, eo: {:?} }}",
            self.corner_perm, self.corner_ori, self.edge_perm, self.edge_ori
        )
    }
}

/// Inverse of a move sequence: reversed, each move inverted.
pub fn invert_plan(plan: &[Move]) -> alloc::vec::Vec<Move> {
    plan.iter().rev().map(|m| m.inverse()).collect()
}
