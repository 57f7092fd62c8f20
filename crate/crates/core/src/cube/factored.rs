#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

use super::state::CubeState;

/// One variable of the factored encoding: which cubie occupies the slot and
/// with what orientation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct CubieVar {
    pub occupant: u8,
    pub orientation: u8,
}

/// Factored encoding with 20 variables: the 8 corner slots followed by the
/// 12 edge slots.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct FactoredState {
    pub cubies: alloc::vec::Vec<CubieVar>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InvalidFactored {
    #[error("expected 20 variables, found {0}")]
    VariableCount(usize),
    #[error("slot {slot}: occupant {occupant} out of range or already placed")]
    Occupancy { slot: usize, occupant: u8 },
    #[error("slot {slot}: orientation {orientation} out of range")]
    Orientation { slot: usize, orientation: u8 },
}

pub fn to_factored(state: &CubeState) -> FactoredState {
    let corners = (0..8).map(|i| CubieVar {
        occupant: state.corner_perm()[i],
        orientation: state.corner_ori()[i],
    });
    let edges = (0..12).map(|i| CubieVar {
        occupant: state.edge_perm()[i],
        orientation: state.edge_ori()[i],
    });
    FactoredState { cubies: corners.chain(edges).collect() }
}

fn read_group<const N: usize>(
    vars: &[CubieVar],
    offset: usize,
    orientations: u8,
) -> Result<([u8; N], [u8; N]), InvalidFactored> {
    let mut perm = [0u8; N];
    let mut ori = [0u8; N];
    let mut seen = [false; N];
    for (i, v) in vars.iter().enumerate() {
        let slot = offset + i;
        let occ = v.occupant as usize;
        if occ >= N || seen[occ] {
            return Err(InvalidFactored::Occupancy { slot, occupant: v.occupant });
        }
        if v.orientation >= orientations {
            return Err(InvalidFactored::Orientation { slot, orientation: v.orientation });
        }
        seen[occ] = true;
        perm[i] = v.occupant;
        ori[i] = v.orientation;
    }
    Ok((perm, ori))
}

pub fn from_factored(f: &FactoredState) -> Result<CubeState, InvalidFactored> {
    if f.cubies.len() != 20 {
        return Err(InvalidFactored::VariableCount(f.cubies.len()));
    }
    let (cp, co) = read_group::<8>(&f.cubies[..8], 0, 3)?;
    let (ep, eo) = read_group::<12>(&f.cubies[8..], 8, 2)?;
    Ok(CubeState::from_parts_unchecked(cp, co, ep, eo))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solved_is_identity_occupants() {
        let f = to_factored(&CubeState::SOLVED);
        assert_eq!(f.cubies.len(), 20);
        for (i, v) in f.cubies.iter().enumerate() {
            let expected = if i < 8 { i } else { i - 8 };
            assert_eq!(v.occupant as usize, expected);
            assert_eq!(v.orientation, 0);
        }
        assert_eq!(from_factored(&f).unwrap(), CubeState::SOLVED);
    }

    #[test]
    fn two_cubies_in_one_slot_rejected() {
        let mut f = to_factored(&CubeState::SOLVED);
        f.cubies[9].occupant = 0;
        assert_eq!(
            from_factored(&f),
            Err(InvalidFactored::Occupancy { slot: 9, occupant: 0 })
        );
    }

    #[test]
    fn bad_orientation_and_length_rejected() {
        let mut f = to_factored(&CubeState::SOLVED);
        f.cubies[3].orientation = 3;
        assert_eq!(from_factored(&f), Err(InvalidFactored::Orientation { slot: 3, orientation: 3 }));
        let mut f = to_factored(&CubeState::SOLVED);
        f.cubies[12].orientation = 2;
        assert!(from_factored(&f).is_err());
        f.cubies.pop();
        assert_eq!(from_factored(&f), Err(InvalidFactored::VariableCount(19)));
    }
}
