use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use crate::cube::{Color, CubeState};

use super::domain::DOMAIN_NAME;
use super::sexpr::{self, Sexpr};
use super::symbolic::{decode, encode, Atom, Cubelet, SymbolicState};
use super::PddlError;

/// A problem file as understood by this codec: a name and the initial state.
/// The goal is always the solved cube.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PddlProblem {
    pub name: String,
    pub state: CubeState,
}

fn write_atoms(out: &mut String, s: &SymbolicState) {
    let lines: Vec<String> = s.atoms.iter().map(|a| alloc::format!("    {a}")).collect();
    out.push_str(&lines.join("\n"));
}

pub fn emit_problem(state: &CubeState, name: &str) -> Result<String, PddlError> {
    if !state.is_solvable() {
        return Err(PddlError::UnsolvableState);
    }
    let mut out = String::new();
    let _ = writeln!(out, "(define (problem {name})");
    let _ = writeln!(out, "  (:domain {DOMAIN_NAME})");
    out.push_str("  (:objects");
    for c in Color::ALL {
        out.push(' ');
        out.push_str(c.name());
    }
    out.push_str(")\n  (:init\n");
    write_atoms(&mut out, &encode(state));
    out.push_str(")\n  (:goal (and\n");
    write_atoms(&mut out, &encode(&CubeState::SOLVED));
    out.push_str(")))\n");
    Ok(out)
}

fn ground_atom(e: &Sexpr) -> Result<Atom, PddlError> {
    let l = e.as_list().filter(|l| !l.is_empty()).ok_or_else(|| syntax("expected a ground atom"))?;
    let name = l[0].as_atom().ok_or_else(|| syntax("expected a predicate name"))?;
    let c = Cubelet::from_name(name).ok_or_else(|| PddlError::UnknownPredicate(name.into()))?;
    if l.len() - 1 != c.arity() {
        return Err(syntax(alloc::format!("{name} expects {} arguments", c.arity())));
    }
    let mut colors = [Color::White; 3];
    for (slot, arg) in colors.iter_mut().zip(&l[1..]) {
        let a = arg.as_atom().unwrap_or("");
        *slot = Color::from_name(a).ok_or_else(|| syntax(alloc::format!("unknown colour {a:?}")))?;
    }
    Ok(Atom { cubelet: c, colors })
}

fn syntax(msg: impl Into<String>) -> PddlError {
    PddlError::Parse { line: 0, message: msg.into() }
}

fn atom_set(items: &[Sexpr]) -> Result<SymbolicState, PddlError> {
    let mut s = SymbolicState::default();
    for e in items {
        s.atoms.insert(ground_atom(e)?);
    }
    Ok(s)
}

pub fn parse_problem(text: &str) -> Result<PddlProblem, PddlError> {
    let e = sexpr::parse_one(text)?;
    let l = e
        .as_list()
        .filter(|_| e.head().as_deref() == Some("define"))
        .ok_or_else(|| syntax("expected (define (problem ...) ...)"))?;
    let mut name = None;
    let mut init = None;
    let mut goal = None;
    for item in &l[1..] {
        let parts = item.as_list().unwrap_or(&[]);
        match item.head().as_deref() {
            Some("problem") => name = parts.get(1).and_then(Sexpr::as_atom).map(String::from),
            Some(":domain") | Some(":objects") | Some(":requirements") => {}
            Some(":init") => init = Some(atom_set(&parts[1..])?),
            Some(":goal") => {
                let g = parts.get(1).ok_or_else(|| syntax("empty goal"))?;
                goal = Some(match g.head().as_deref() {
                    Some("and") => atom_set(&g.as_list().unwrap()[1..])?,
                    _ => atom_set(core::slice::from_ref(g))?,
                });
            }
            other => return Err(PddlError::Unsupported(alloc::format!("section {other:?}"))),
        }
    }
    let name = name.ok_or_else(|| syntax("missing problem name"))?;
    let init = init.ok_or_else(|| syntax("missing :init"))?;
    let goal = goal.ok_or_else(|| syntax("missing :goal"))?;
    if goal != encode(&CubeState::SOLVED) {
        return Err(PddlError::UnsupportedGoal);
    }
    let state = decode(&init).map_err(PddlError::InconsistentInit)?;
    Ok(PddlProblem { name, state })
}
