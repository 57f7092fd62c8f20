//! Conversions between state representations for the `convert` command.
//!
//! * `sticker`: 54 colour codes in internal facelet order (U, L, F, R, B, D,
//!   each row-major on the net); whitespace is ignored on input, output puts
//!   one face per group.
//! * `factored`: JSON of the 20 `(occupant, orientation)` variables.
//! * `pddl`: a PDDL problem file.
//! * `cubie`: JSON of the permutation and orientation arrays.
//! * `scramble`: move notation applied to the solved cube (input only).

use std::str::FromStr;

use rcplan_core::cube::{
    from_factored, from_stickers, parse_moves, to_factored, to_stickers, Color, CubeState, FactoredState, StickerArray,
};
use rcplan_core::pddl::{emit_problem, parse_problem};

use crate::error::{Error, Result};
use crate::io::to_json;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Sticker,
    Factored,
    Pddl,
    Cubie,
    Scramble,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        <Format as clap::ValueEnum>::from_str(s, true).map_err(|_| Error::Usage(format!("unknown format {s:?}")))
    }
}

pub fn parse_stickers(text: &str) -> Result<StickerArray> {
    let codes: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
    if codes.len() != 54 {
        return Err(Error::Usage(format!("expected 54 colour codes, found {}", codes.len())));
    }
    let mut facelets = [Color::White; 54];
    for (slot, &c) in facelets.iter_mut().zip(&codes) {
        *slot = Color::from_code(c).ok_or_else(|| Error::Usage(format!("bad colour code {c:?}")))?;
    }
    Ok(StickerArray { facelets })
}

pub fn format_stickers(arr: &StickerArray) -> String {
    let groups: Vec<String> =
        arr.facelets.chunks(9).map(|face| face.iter().map(|c| c.code()).collect()).collect();
    groups.join(" ") + "\n"
}

pub fn parse_state(format: Format, text: &str) -> Result<CubeState> {
    Ok(match format {
        Format::Sticker => from_stickers(&parse_stickers(text)?)?,
        Format::Factored => {
            let f: FactoredState = serde_json::from_str(text)
                .map_err(|e| Error::Usage(format!("factored state: {e}")))?;
            from_factored(&f)?
        }
        Format::Pddl => parse_problem(text).map_err(|source| Error::Pddl { path: "<input>".into(), source })?.state,
        Format::Cubie => serde_json::from_str(text).map_err(|e| Error::Usage(format!("cubie state: {e}")))?,
        Format::Scramble => CubeState::SOLVED.apply_plan(&parse_moves(text)?),
    })
}

pub fn format_state(format: Format, state: &CubeState, name: &str) -> Result<String> {
    Ok(match format {
        Format::Sticker => format_stickers(&to_stickers(state)),
        Format::Factored => to_json(&to_factored(state)),
        Format::Pddl => emit_problem(state, name).map_err(|source| Error::Pddl { path: "<output>".into(), source })?,
        Format::Cubie => to_json(state),
        Format::Scramble => return Err(Error::Usage("scramble is an input-only format".into())),
    })
}
