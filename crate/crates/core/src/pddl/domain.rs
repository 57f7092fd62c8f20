use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt::Write;

use crate::cube::geometry::FACELET_MOVES;
use crate::cube::{ActionSet, Move};

use super::sexpr::{self, Sexpr};
use super::symbolic::{Atom, Cubelet};
use super::PddlError;

pub const DOMAIN_NAME: &str = "rubiks-cube";

/// The two PDDL models: 12 quarter-turn actions, or all 18 face turns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    M1,
    M2,
}

impl Variant {
    pub fn action_set(self) -> ActionSet {
        match self {
            Variant::M1 => ActionSet::Quarter12,
            Variant::M2 => ActionSet::Full18,
        }
    }

    pub fn for_action_set(set: ActionSet) -> Variant {
        match set {
            ActionSet::Quarter12 => Variant::M1,
            ActionSet::Full18 => Variant::M2,
        }
    }
}

/// `(forall (vars) (when (source vars) (and (target permuted-vars))))`:
/// the colours on `source` move to `target`, with target parameter `j`
/// taking source parameter `perm[j]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConditionalEffect {
    pub source: Cubelet,
    pub target: Cubelet,
    pub perm: [u8; 3],
}

impl ConditionalEffect {
    pub fn apply(&self, atom: &Atom) -> Atom {
        debug_assert_eq!(atom.cubelet, self.source);
        let n = self.target.arity();
        let mut args = [atom.colors[0]; 3];
        for (j, a) in args.iter_mut().enumerate().take(n) {
            *a = atom.colors[self.perm[j] as usize];
        }
        Atom::new(self.target, &args[..n])
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PddlAction {
    pub name: Move,
    pub corner_effects: Vec<ConditionalEffect>,
    pub edge_effects: Vec<ConditionalEffect>,
    /// Predicates whose current atom is deleted, i.e. every effect target.
    pub clears: Vec<Cubelet>,
}

impl PddlAction {
    pub fn effects(&self) -> impl Iterator<Item = &ConditionalEffect> {
        self.corner_effects.iter().chain(&self.edge_effects)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PddlDomainModel {
    pub variant: Variant,
    pub actions: Vec<PddlAction>,
}

impl PddlDomainModel {
    /// Predicate names with their arities: 8 corners of arity 3, 12 edges of
    /// arity 2.
    pub fn predicates(&self) -> impl Iterator<Item = (&'static str, usize)> {
        Cubelet::all().map(|c| (c.name(), c.arity()))
    }

    pub fn action(&self, m: Move) -> Option<&PddlAction> {
        self.actions.iter().find(|a| a.name == m)
    }
}

/// Order effects cycle by cycle: start at the lowest source, then repeatedly
/// take the effect feeding the previous one's source.
fn order_cycles(mut effects: Vec<ConditionalEffect>) -> Vec<ConditionalEffect> {
    let mut out = Vec::with_capacity(effects.len());
    while !effects.is_empty() {
        let start = (0..effects.len()).min_by_key(|&i| effects[i].source).unwrap();
        let mut cur = effects.remove(start);
        loop {
            let prev = effects.iter().position(|e| e.target == cur.source);
            out.push(cur);
            match prev {
                Some(i) => cur = effects.remove(i),
                None => break,
            }
        }
    }
    out
}

/// Derives the action of a move from the facelet geometry.
pub fn build_action(m: Move) -> PddlAction {
    let perm = &FACELET_MOVES[m.face.index()][m.turn.quarters() as usize - 1];
    let mut owner = [(Cubelet(0), 0u8); 54];
    for c in Cubelet::all() {
        for p in 0..c.arity() {
            owner[c.param_facelet(p) as usize] = (c, p as u8);
        }
    }
    let mut corners = Vec::new();
    let mut edges = Vec::new();
    for target in Cubelet::all() {
        let (source, _) = owner[perm[target.param_facelet(0) as usize] as usize];
        if source == target {
            continue;
        }
        let mut pp = [0u8; 3];
        for (j, slot) in pp.iter_mut().enumerate().take(target.arity()) {
            let (s, p) = owner[perm[target.param_facelet(j) as usize] as usize];
            debug_assert_eq!(s, source);
            *slot = p;
        }
        let e = ConditionalEffect { source, target, perm: pp };
        if target.is_corner() {
            corners.push(e);
        } else {
            edges.push(e);
        }
    }
    let corner_effects = order_cycles(corners);
    let edge_effects = order_cycles(edges);
    let clears = corner_effects.iter().chain(&edge_effects).map(|e| e.target).collect();
    PddlAction { name: m, corner_effects, edge_effects, clears }
}

pub fn build_domain(variant: Variant) -> PddlDomainModel {
    let actions = variant.action_set().moves().iter().map(|&m| build_action(m)).collect();
    PddlDomainModel { variant, actions }
}

fn vars(c: Cubelet) -> String {
    let mut s = String::new();
    for (i, a) in c.axes().iter().take(c.arity()).enumerate() {
        if i > 0 {
            s.push(' ');
        }
        s.push_str(a.variable());
    }
    s
}

fn target_args(e: &ConditionalEffect) -> String {
    let axes = e.source.axes();
    let mut s = String::new();
    for j in 0..e.target.arity() {
        if j > 0 {
            s.push(' ');
        }
        s.push_str(axes[e.perm[j] as usize].variable());
    }
    s
}

fn emit_action(out: &mut String, a: &PddlAction) {
    let _ = writeln!(out, "  (:action {}", a.name.notation());
    out.push_str("    :parameters ()\n");
    out.push_str("    :effect (and\n");
    for (comment, list) in [("corner", &a.corner_effects), ("edge", &a.edge_effects)] {
        let _ = writeln!(out, "      ;for {comment} cubelets");
        for e in list.iter() {
            let v = vars(e.source);
            let _ = writeln!(out, "      (forall ({v}) (when ({} {v})", e.source.name());
            let _ = writeln!(out, "        (and ({} {}))))", e.target.name(), target_args(e));
        }
    }
    out.push_str("      ;vacated cubelets\n");
    for (i, c) in a.clears.iter().enumerate() {
        let v = vars(*c);
        let _ = writeln!(out, "      (forall ({v}) (when ({} {v})", c.name());
        let close = if i + 1 == a.clears.len() { "))" } else { "" };
        let _ = writeln!(out, "        (not ({} {v})))){close}", c.name());
    }
}

pub fn emit_model(model: &PddlDomainModel) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "(define (domain {DOMAIN_NAME})");
    out.push_str("  (:requirements :adl)\n");
    out.push_str("  (:predicates\n");
    let preds: Vec<String> =
        Cubelet::all().map(|c| alloc::format!("    ({} {})", c.name(), vars(c))).collect();
    out.push_str(&preds.join("\n"));
    out.push_str(")\n");
    for a in &model.actions {
        emit_action(&mut out, a);
    }
    out.push_str(")\n");
    out
}

/// PDDL domain text for a model variant.
pub fn emit_domain(variant: Variant) -> String {
    emit_model(&build_domain(variant))
}

fn bad(msg: impl ToString) -> PddlError {
    PddlError::Parse { line: 0, message: msg.to_string() }
}

fn pred_call(e: &Sexpr) -> Result<(Cubelet, Vec<&str>), PddlError> {
    let l = e.as_list().ok_or_else(|| bad("expected a predicate"))?;
    let name = l.first().and_then(Sexpr::as_atom).ok_or_else(|| bad("empty predicate"))?;
    let c = Cubelet::from_name(name).ok_or_else(|| PddlError::UnknownPredicate(name.into()))?;
    let args = l[1..]
        .iter()
        .map(|a| a.as_atom().ok_or_else(|| bad("nested predicate argument")))
        .collect::<Result<Vec<_>, _>>()?;
    if args.len() != c.arity() {
        return Err(bad(alloc::format!("{} expects {} arguments", c.name(), c.arity())));
    }
    Ok((c, args))
}

enum Parsed {
    Add(ConditionalEffect),
    Clear(Cubelet),
}

fn parse_effect(e: &Sexpr, out: &mut Vec<Parsed>) -> Result<(), PddlError> {
    let l = e.as_list().ok_or_else(|| bad("expected an effect"))?;
    if e.head().as_deref() != Some("forall") || l.len() != 3 {
        return Err(PddlError::Unsupported("only (forall (vars) (when ...)) effects".into()));
    }
    let when = l[2].as_list().ok_or_else(|| bad("expected (when ...)"))?;
    if l[2].head().as_deref() != Some("when") || when.len() != 3 {
        return Err(PddlError::Unsupported("forall body must be a single when".into()));
    }
    let (source, cond_args) = pred_call(&when[1])?;
    let mut body = Vec::new();
    match when[2].head().as_deref() {
        Some("and") => body.extend(when[2].as_list().unwrap()[1..].iter()),
        _ => body.push(&when[2]),
    }
    for b in body {
        if b.head().as_deref() == Some("not") {
            let inner = &b.as_list().unwrap()[1..];
            let (c, args) = pred_call(inner.first().ok_or_else(|| bad("empty not"))?)?;
            if c != source || args != cond_args {
                return Err(PddlError::Unsupported("delete must negate the condition".into()));
            }
            out.push(Parsed::Clear(c));
        } else {
            let (target, args) = pred_call(b)?;
            let mut perm = [0u8; 3];
            for (j, a) in args.iter().enumerate() {
                let p = cond_args
                    .iter()
                    .position(|v| v.eq_ignore_ascii_case(a))
                    .ok_or_else(|| bad(alloc::format!("unbound variable {a}")))?;
                perm[j] = p as u8;
            }
            if source.is_corner() != target.is_corner() {
                return Err(bad("effect moves colours between a corner and an edge"));
            }
            out.push(Parsed::Add(ConditionalEffect { source, target, perm }));
        }
    }
    Ok(())
}

fn parse_action_expr(l: &[Sexpr]) -> Result<PddlAction, PddlError> {
    let name = l.get(1).and_then(Sexpr::as_atom).ok_or_else(|| bad("action without a name"))?;
    let m: Move = name.parse().map_err(|_| PddlError::UnknownAction(name.into()))?;
    let mut parsed = Vec::new();
    let mut i = 2;
    while i < l.len() {
        let key = l[i].as_atom().map(str::to_ascii_lowercase);
        let value = l.get(i + 1).ok_or_else(|| bad("dangling action key"))?;
        match key.as_deref() {
            Some(":parameters") => {
                if !value.as_list().is_some_and(|p| p.is_empty()) {
                    return Err(PddlError::Unsupported("actions take no parameters".into()));
                }
            }
            Some(":precondition") => {
                return Err(PddlError::Unsupported("actions have no preconditions".into()));
            }
            Some(":effect") => {
                let items: &[Sexpr] = match value.head().as_deref() {
                    Some("and") => &value.as_list().unwrap()[1..],
                    _ => core::slice::from_ref(value),
                };
                for e in items {
                    parse_effect(e, &mut parsed)?;
                }
            }
            _ => return Err(bad(alloc::format!("unexpected action key {:?}", key))),
        }
        i += 2;
    }
    let mut action =
        PddlAction { name: m, corner_effects: Vec::new(), edge_effects: Vec::new(), clears: Vec::new() };
    for p in parsed {
        match p {
            Parsed::Add(e) if e.source.is_corner() => action.corner_effects.push(e),
            Parsed::Add(e) => action.edge_effects.push(e),
            Parsed::Clear(c) => action.clears.push(c),
        }
    }
    Ok(action)
}

/// Parses a single `(:action ...)` block.
pub fn parse_action(text: &str) -> Result<PddlAction, PddlError> {
    let e = sexpr::parse_one(text)?;
    match (e.head().as_deref(), e.as_list()) {
        (Some(":action"), Some(l)) => parse_action_expr(l),
        _ => Err(bad("expected (:action ...)")),
    }
}

/// Parses a domain in the grammar [`emit_domain`] produces.
pub fn parse_domain(text: &str) -> Result<PddlDomainModel, PddlError> {
    let e = sexpr::parse_one(text)?;
    let l = e.as_list().filter(|_| e.head().as_deref() == Some("define"));
    let l = l.ok_or_else(|| bad("expected (define ...)"))?;
    let mut actions = Vec::new();
    for item in &l[1..] {
        match item.head().as_deref() {
            Some("domain") | Some(":requirements") | Some(":predicates") => {}
            Some(":action") => actions.push(parse_action_expr(item.as_list().unwrap())?),
            other => return Err(PddlError::Unsupported(alloc::format!("section {other:?}"))),
        }
    }
    let variant = match actions.len() {
        12 if actions.iter().all(|a| a.name.is_quarter()) => Variant::M1,
        18 => Variant::M2,
        n => return Err(PddlError::Unsupported(alloc::format!("{n} actions"))),
    };
    Ok(PddlDomainModel { variant, actions })
}
