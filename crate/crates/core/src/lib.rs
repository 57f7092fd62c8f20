//! Rubik's Cube planning core.
//!
//! Everything here is pure computation over `alloc`: the cubelet state model
//! and move engine, seeded scramble generation, the PDDL codec, the grounded
//! delete-relaxation machinery, the heuristic suite, A*/IDA* search and the
//! optimality oracles. File IO, timing and the command line live in the
//! `rcplan` crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod cube;
pub mod grounded;
pub mod heuristics;
pub mod oracle;
pub mod pddl;
pub mod scramble;
pub mod search;

pub use cube::{ActionSet, Color, CubeState, Face, Move, StickerArray, Turn};
