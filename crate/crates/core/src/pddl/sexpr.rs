//! Minimal s-expression reader for the PDDL subset this crate emits.

use alloc::string::String;
use alloc::vec::Vec;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Sexpr {
    Atom(String),
    List(Vec<Sexpr>),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct SyntaxError {
    pub line: usize,
    pub message: String,
}

impl Sexpr {
    pub fn as_atom(&self) -> Option<&str> {
        match self {
            Sexpr::Atom(a) => Some(a),
            Sexpr::List(_) => None,
        }
    }

    pub fn as_list(&self) -> Option<&[Sexpr]> {
        match self {
            Sexpr::List(l) => Some(l),
            Sexpr::Atom(_) => None,
        }
    }

    /// Head atom of a list, lower-cased.
    pub fn head(&self) -> Option<String> {
        self.as_list()?.first()?.as_atom().map(|a| a.to_ascii_lowercase())
    }
}

fn err(line: usize, message: &str) -> SyntaxError {
    SyntaxError { line, message: message.into() }
}

/// Parses all top-level expressions. `;` starts a comment running to the end
/// of the line.
pub fn parse_all(text: &str) -> Result<Vec<Sexpr>, SyntaxError> {
    let mut stack: Vec<(usize, Vec<Sexpr>)> = Vec::new();
    let mut top = Vec::new();
    let mut line = 1;
    let mut chars = text.chars().peekable();
    while let Some(c) = chars.next() {
        match c {
            '\n' => line += 1,
            ';' => {
                while let Some(&n) = chars.peek() {
                    if n == '\n' {
                        break;
                    }
                    chars.next();
                }
            }
            '(' => stack.push((line, Vec::new())),
            ')' => {
                let (_, items) = stack.pop().ok_or_else(|| err(line, "unbalanced ')'"))?;
                let list = Sexpr::List(items);
                match stack.last_mut() {
                    Some((_, parent)) => parent.push(list),
                    None => top.push(list),
                }
            }
            c if c.is_whitespace() => {}
            c => {
                let mut atom = String::new();
                atom.push(c);
                while let Some(&n) = chars.peek() {
                    if n.is_whitespace() || n == '(' || n == ')' || n == ';' {
                        break;
                    }
                    atom.push(n);
                    chars.next();
                }
                match stack.last_mut() {
                    Some((_, parent)) => parent.push(Sexpr::Atom(atom)),
                    None => top.push(Sexpr::Atom(atom)),
                }
            }
        }
    }
    if let Some((open_line, _)) = stack.last() {
        return Err(err(*open_line, "unclosed '('"));
    }
    Ok(top)
}

/// Parses exactly one top-level expression.
pub fn parse_one(text: &str) -> Result<Sexpr, SyntaxError> {
    let mut all = parse_all(text)?;
    match all.len() {
        1 => Ok(all.pop().unwrap()),
        0 => Err(err(1, "empty input")),
        _ => Err(err(1, "more than one top-level expression")),
    }
}
