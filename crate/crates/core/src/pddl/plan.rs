use alloc::string::String;
use alloc::vec::Vec;

use crate::cube::Move;

use super::PddlError;

/// Reads planner output: one `(action)` per line, `;` comments, blank lines
/// ignored, action names case-insensitive.
pub fn parse_plan(text: &str) -> Result<Vec<Move>, PddlError> {
    let mut plan = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with(';') {
            continue;
        }
        let inner = line
            .strip_prefix('(')
            .and_then(|l| l.strip_suffix(')'))
            .map(str::trim)
            .filter(|n| !n.is_empty() && !n.contains(char::is_whitespace))
            .ok_or_else(|| PddlError::Parse {
                line: i + 1,
                message: alloc::format!("expected (<action>), found {line:?}"),
            })?;
        let m = inner.parse().map_err(|_| PddlError::UnknownAction(inner.into()))?;
        plan.push(m);
    }
    Ok(plan)
}

/// Writes a plan in the same format, lower-case as planners print it.
pub fn format_plan(plan: &[Move]) -> String {
    let mut out = String::new();
    for m in plan {
        out.push('(');
        out.push_str(&m.notation().to_ascii_lowercase());
        out.push_str(")\n");
    }
    out.push_str(&alloc::format!("; cost = {} (unit cost)\n", plan.len()));
    out
}
