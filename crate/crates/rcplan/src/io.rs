//! JSON, plan and problem file helpers.

use std::fs;
use std::path::Path;

use rcplan_core::cube::{parse_moves, CubeState, Move};
use rcplan_core::pddl::{parse_plan, parse_problem};
use rcplan_core::scramble::{Dataset, ProblemInstance};
use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::error::{read_to_string, Error, Result};

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

/// Pretty JSON with a trailing newline. Output is a pure function of the
/// value, so equal values give byte-identical files.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("in-memory values serialize");
    s.push('\n');
    s
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    write_text(path, &to_json(value))
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = read_to_string(path)?;
    serde_json::from_str(&text).map_err(|source| Error::Json { path: path.into(), source })
}

/// Loads a dataset and checks every instance against its scramble.
pub fn load_dataset(path: &Path) -> Result<Dataset> {
    let ds: Dataset = read_json(path)?;
    if let Some(bad) = ds.instances.iter().find(|i| !i.is_consistent() || i.action_set != ds.action_set) {
        return Err(Error::Config(format!(
            "{}: instance {} does not match its scramble or the dataset action set",
            path.display(),
            bad.id
        )));
    }
    Ok(ds)
}

/// A plan file: either planner output (one parenthesised action per line)
/// or whitespace-separated move notation.
pub fn parse_plan_text(text: &str) -> std::result::Result<Vec<Move>, String> {
    if text.contains('(') {
        parse_plan(text).map_err(|e| e.to_string())
    } else {
        parse_moves(text).map_err(|e| e.to_string())
    }
}

pub fn read_plan(path: &Path) -> Result<Vec<Move>> {
    parse_plan_text(&read_to_string(path)?).map_err(|m| Error::Usage(format!("{}: {m}", path.display())))
}

/// Loads a start state from a PDDL problem (`.pddl`) or an instance JSON.
pub fn read_problem(path: &Path) -> Result<CubeState> {
    let is_pddl = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("pddl"));
    if is_pddl {
        let text = read_to_string(path)?;
        let p = parse_problem(&text).map_err(|source| Error::Pddl { path: path.into(), source })?;
        Ok(p.state)
    } else {
        let inst: ProblemInstance = read_json(path)?;
        Ok(inst.state)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plan_text_formats() {
        let a = parse_plan_text("(lrev)\n(u2)\n; cost = 2 (unit cost)\n").unwrap();
        let b = parse_plan_text("Lrev U2").unwrap();
        assert_eq!(a, b);
        assert!(parse_plan_text("(x)").is_err());
    }
}
