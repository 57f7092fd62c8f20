//! ASCII rendering of the unfolded cube and of plan traces.

use std::fmt::Write;

use rcplan_core::cube::{to_stickers, ActionSet, CubeState, Face, Move, StickerArray};
use rcplan_core::oracle::{validate_plan, Validation};

use crate::error::{Error, Result};

fn row(arr: &StickerArray, face: Face, r: usize) -> String {
    let f = arr.face(face);
    (0..3).map(|c| f[3 * r + c].code().to_string()).collect::<Vec<_>>().join(" ")
}

/// Unfolded net with single-letter colour codes:
///
/// ```text
///       U
///     L F R B
///       D
/// ```
pub fn render_state(state: &CubeState) -> String {
    let arr = to_stickers(state);
    let pad = " ".repeat(6);
    let mut out = String::new();
    for r in 0..3 {
        writeln!(out, "{pad}{}", row(&arr, Face::U, r)).unwrap();
    }
    for r in 0..3 {
        let line: Vec<String> = [Face::L, Face::F, Face::R, Face::B].iter().map(|&f| row(&arr, f, r)).collect();
        writeln!(out, "{}", line.join(" ")).unwrap();
    }
    for r in 0..3 {
        writeln!(out, "{pad}{}", row(&arr, Face::D, r)).unwrap();
    }
    out
}

/// One frame for the start state and one after each move. The plan must be
/// valid for `action_set`.
pub fn render_trace(state: &CubeState, plan: &[Move], action_set: ActionSet) -> Result<Vec<String>> {
    if let Validation::Invalid(reason) = validate_plan(state, plan, action_set) {
        return Err(Error::InvalidPlan(reason));
    }
    let mut frames = vec![format!("step 0: start\n{}", render_state(state))];
    let mut s = *state;
    for (i, &m) in plan.iter().enumerate() {
        s = s.apply_move(m);
        frames.push(format!("step {}: {m}\n{}", i + 1, render_state(&s)));
    }
    Ok(frames)
}
