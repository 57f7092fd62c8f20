//! Seeded generation of problem instances and benchmark datasets.
//!
//! Scrambles are drawn with ChaCha8 seeded through `seed_from_u64`, which is
//! specified bit-for-bit by `rand_core`, so a given seed yields the same
//! scramble on every platform. Move choices use `gen_range` over `u32`.
//!
//! A scramble starts from the solved cube and applies `n` moves from the
//! action set, never turning the same face twice in a row.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

use crate::cube::{ActionSet, CubeState, Move};

pub const MAX_DEPTH: usize = 20;
pub const PER_DEPTH: usize = 10;
/// Redraws allowed per dataset slot before giving up.
pub const MAX_REDRAWS: usize = 1000;

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct ProblemInstance {
    pub id: String,
    pub depth_n: usize,
    pub action_set: ActionSet,
    pub scramble: Vec<Move>,
    pub state: CubeState,
    pub seed: u64,
}

impl ProblemInstance {
    /// Checks the stored state against the scramble and the action set.
    pub fn is_consistent(&self) -> bool {
        self.scramble.len() == self.depth_n
            && self.scramble.iter().all(|&m| self.action_set.contains(m))
            && CubeState::SOLVED.apply_plan(&self.scramble) == self.state
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct Dataset {
    pub name: String,
    pub master_seed: u64,
    pub action_set: ActionSet,
    pub instances: Vec<ProblemInstance>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScrambleError {
    #[error("scramble depth {0} outside 1..=20")]
    InvalidDepth(usize),
    #[error("could not find a fresh state for depth {depth} after {attempts} draws")]
    GenerationExhausted { depth: usize, attempts: usize },
    #[error("unknown move {token:?} at position {position}")]
    Parse { token: String, position: usize },
    #[error("move {0} is not in action set {1}")]
    ActionSetMismatch(Move, ActionSet),
}

/// Non-fatal observations about an imported scramble.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScrambleWarning {
    /// Moves at `position` and `position + 1` turn the same face, which the
    /// generator never produces.
    SameFacePair { position: usize, first: Move, second: Move },
}

fn draw_scramble(n: usize, action_set: ActionSet, seed: u64) -> Vec<Move> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<Move> = Vec::with_capacity(n);
    let mut candidates: Vec<Move> = Vec::with_capacity(18);
    for _ in 0..n {
        let last_face = out.last().map(|m| m.face);
        candidates.clear();
        candidates.extend(
            action_set.moves().iter().copied().filter(|m| Some(m.face) != last_face),
        );
        let pick = rng.gen_range(0..candidates.len() as u32) as usize;
        out.push(candidates[pick]);
    }
    out
}

fn default_id(n: usize, action_set: ActionSet, seed: u64) -> String {
    format!("q{}-n{:02}-{:016x}", action_set.size(), n, seed)
}

/// Random scramble of exactly `n` moves, deterministic in `(n, action_set, seed)`.
pub fn generate_instance(
    n: usize,
    action_set: ActionSet,
    seed: u64,
) -> Result<ProblemInstance, ScrambleError> {
    if !(1..=MAX_DEPTH).contains(&n) {
        return Err(ScrambleError::InvalidDepth(n));
    }
    Ok(generate_instance_any_depth(n, action_set, seed))
}

/// Like [`generate_instance`] without the 1..=20 depth guard.
pub fn generate_instance_any_depth(n: usize, action_set: ActionSet, seed: u64) -> ProblemInstance {
    let scramble = draw_scramble(n, action_set, seed);
    let state = CubeState::SOLVED.apply_plan(&scramble);
    ProblemInstance { id: default_id(n, action_set, seed), depth_n: n, action_set, scramble, state, seed }
}

/// Conventional dataset name for an action set.
pub fn dataset_name(action_set: ActionSet) -> &'static str {
    match action_set {
        ActionSet::Quarter12 => "d1",
        ActionSet::Full18 => "d2",
    }
}

/// Ten instances for every depth 1..=20, all resulting states distinct.
///
/// Per-slot seeds are drawn in order from a ChaCha8 stream keyed by
/// `master_seed`; a slot whose state collides with an earlier one draws the
/// next seed from the stream and regenerates its whole scramble.
pub fn generate_dataset(action_set: ActionSet, master_seed: u64) -> Result<Dataset, ScrambleError> {
    generate_dataset_sized(action_set, master_seed, MAX_DEPTH, PER_DEPTH)
}

/// [`generate_dataset`] for depths `1..=max_depth` with `per_depth` instances each.
pub fn generate_dataset_sized(
    action_set: ActionSet,
    master_seed: u64,
    max_depth: usize,
    per_depth: usize,
) -> Result<Dataset, ScrambleError> {
    if !(1..=MAX_DEPTH).contains(&max_depth) {
        return Err(ScrambleError::InvalidDepth(max_depth));
    }
    let name = dataset_name(action_set);
    let mut seeds = ChaCha8Rng::seed_from_u64(master_seed);
    let mut seen: BTreeSet<u128> = BTreeSet::new();
    let mut instances = Vec::with_capacity(max_depth * per_depth);
    for n in 1..=max_depth {
        for k in 0..per_depth {
            let mut attempts = 0;
            let mut inst = loop {
                if attempts == MAX_REDRAWS {
                    return Err(ScrambleError::GenerationExhausted { depth: n, attempts });
                }
                attempts += 1;
                let inst = generate_instance_any_depth(n, action_set, seeds.next_u64());
                if seen.insert(inst.state.pack()) {
                    break inst;
                }
            };
            inst.id = format!("{name}-n{n:02}-{k:02}");
            instances.push(inst);
        }
    }
    Ok(Dataset { name: name.into(), master_seed, action_set, instances })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImportedScramble {
    pub instance: ProblemInstance,
    pub warnings: Vec<ScrambleWarning>,
}

/// Parses whitespace-separated move notation and applies it from solved.
pub fn import_scramble(text: &str, action_set: ActionSet) -> Result<ImportedScramble, ScrambleError> {
    let mut scramble = Vec::new();
    for (position, token) in text.split_whitespace().enumerate() {
        let m: Move = token
            .parse()
            .map_err(|_| ScrambleError::Parse { token: token.into(), position })?;
        if !action_set.contains(m) {
            return Err(ScrambleError::ActionSetMismatch(m, action_set));
        }
        scramble.push(m);
    }
    let warnings = scramble
        .windows(2)
        .enumerate()
        .filter(|(_, w)| w[0].face == w[1].face)
        .map(|(position, w)| ScrambleWarning::SameFacePair { position, first: w[0], second: w[1] })
        .collect();
    let state = CubeState::SOLVED.apply_plan(&scramble);
    let instance = ProblemInstance {
        id: format!("imported-n{:02}", scramble.len()),
        depth_n: scramble.len(),
        action_set,
        scramble,
        state,
        seed: 0,
    };
    Ok(ImportedScramble { instance, warnings })
}

/// Imports a scramble file: one instance per non-empty line, ids `line-NNN`.
pub fn import_scramble_lines(
    text: &str,
    action_set: ActionSet,
) -> Result<Vec<ImportedScramble>, (usize, ScrambleError)> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, line)| {
            let mut imp = import_scramble(line, action_set).map_err(|e| (i + 1, e))?;
            imp.instance.id = format!("line-{:03}", i + 1);
            Ok(imp)
        })
        .collect()
}
