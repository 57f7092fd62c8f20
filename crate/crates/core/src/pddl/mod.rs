//! PDDL encoding of the cube: domain emission for both models, problem files,
//! plan files, and a symbolic executor for cross-checking emitted actions
//! against the move engine.
//!
//! Each cubelet slot is a predicate whose parameters are the colours it shows
//! along the U/D, F/B and L/R axes (in that order). Actions have no
//! preconditions; every effect is a universally quantified conditional
//! effect moving the colours of one slot to another. Because PDDL effects are
//! sets, each action also deletes the atoms of the slots it overwrites.

mod domain;
mod plan;
mod problem;
pub mod sexpr;
mod symbolic;

use alloc::string::String;

pub use domain::{
    build_action, build_domain, emit_domain, emit_model, parse_action, parse_domain,
    ConditionalEffect, PddlAction, PddlDomainModel, Variant, DOMAIN_NAME,
};
pub use plan::{format_plan, parse_plan};
pub use problem::{emit_problem, parse_problem, PddlProblem};
pub use symbolic::{
    decode, encode, encode_stickers, symbolic_apply, Atom, Axis, Cubelet, DecodeError,
    SymbolicState, ATOM_COUNT,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PddlError {
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("unknown action {0:?}")]
    UnknownAction(String),
    #[error("unknown predicate {0:?}")]
    UnknownPredicate(String),
    #[error("unsupported construct: {0}")]
    Unsupported(String),
    #[error("state violates the cube's reachability laws")]
    UnsolvableState,
    #[error("init does not describe a cube: {0}")]
    InconsistentInit(DecodeError),
    #[error("only the solved-cube goal is supported")]
    UnsupportedGoal,
}

impl From<sexpr::SyntaxError> for PddlError {
    fn from(e: sexpr::SyntaxError) -> Self {
        PddlError::Parse { line: e.line, message: e.message }
    }
}
