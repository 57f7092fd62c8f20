//! Heuristic suite: blind, goal count, FF and max-combined pattern databases.
//!
//! Every heuristic counts moves of the action set it was built for. Pattern
//! databases store exact distances of a projection that tracks a subset of
//! cubies (their slots and orientations) and forgets the rest; taking the
//! maximum over several of them stays admissible and consistent.

use alloc::boxed::Box;
use alloc::collections::VecDeque;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

use crate::cube::geometry::MOVE_TABLES;
use crate::cube::{ActionSet, CubeState};
use crate::grounded::{self, GroundedTask};
use crate::pddl::Variant;

/// Returned for states from which the goal is unreachable.
pub const DEAD_END: u32 = u32::MAX;

/// Default cap on a single table, in entries (one byte each).
pub const DEFAULT_PDB_CAP: u64 = 100_000_000;

/// Marks abstract states never reached by the construction search. Only
/// patterns tracking all 8 corners or all 12 edges leave such entries.
pub const UNREACHABLE: u8 = u8::MAX;

pub trait Heuristic: Send + Sync {
    fn evaluate(&self, state: &CubeState) -> u32;
    fn name(&self) -> &str;
    /// Whether the estimate never exceeds the true distance.
    fn is_admissible(&self) -> bool;
}

impl<H: Heuristic + ?Sized> Heuristic for Box<H> {
    fn evaluate(&self, state: &CubeState) -> u32 {
        (**self).evaluate(state)
    }
    fn name(&self) -> &str {
        (**self).name()
    }
    fn is_admissible(&self) -> bool {
        (**self).is_admissible()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HeuristicError {
    #[error("pattern tracks no cubies")]
    EmptyPattern,
    #[error("cubie id {0} out of range")]
    InvalidCubie(u8),
    #[error("cubie id {0} listed twice")]
    DuplicateCubie(u8),
    #[error("pattern database needs {entries} entries, cap is {cap}")]
    MemoryCapExceeded { entries: u64, cap: u64 },
    #[error("table has {found} entries, pattern needs {expected}")]
    TableSize { expected: u64, found: u64 },
    #[error("table does not map the solved state to 0")]
    BadGoalEntry,
    #[error("systematic pattern size must be 1..=3, got {0}")]
    InvalidPatternSize(u8),
    #[error("unknown heuristic {0:?}")]
    UnknownKind(String),
}

/// Always 0 on solved and 1 elsewhere.
#[derive(Debug, Clone, Copy, Default)]
pub struct Blind;

impl Heuristic for Blind {
    fn evaluate(&self, state: &CubeState) -> u32 {
        u32::from(!state.is_solved())
    }
    fn name(&self) -> &str {
        "blind"
    }
    fn is_admissible(&self) -> bool {
        true
    }
}

/// Number of unsatisfied goal atoms, i.e. cubelets out of their solved slot
/// or orientation. Computed straight from the cubie arrays; it coincides
/// with [`GroundedTask::goal_count`] on the grounded encoding.
#[derive(Debug, Clone, Copy, Default)]
pub struct GoalCount;

impl Heuristic for GoalCount {
    fn evaluate(&self, state: &CubeState) -> u32 {
        state.misplaced_cubelets()
    }
    fn name(&self) -> &str {
        "gc"
    }
    fn is_admissible(&self) -> bool {
        false
    }
}

/// Relaxed-plan length over the grounded PDDL model. Not admissible.
#[derive(Debug, Clone)]
pub struct Ff {
    task: GroundedTask,
}

impl Ff {
    pub fn new(action_set: ActionSet) -> Ff {
        Ff { task: grounded::ground(Variant::for_action_set(action_set)) }
    }

    pub fn task(&self) -> &GroundedTask {
        &self.task
    }
}

impl Heuristic for Ff {
    fn evaluate(&self, state: &CubeState) -> u32 {
        self.task.h_ff(state).unwrap_or(DEAD_END)
    }
    fn name(&self) -> &str {
        "ff"
    }
    fn is_admissible(&self) -> bool {
        false
    }
}

/// Cubies tracked by a projection, as 0-based ids in canonical slot order
/// (corner `i` is solved in corner slot `i`, likewise for edges).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct Pattern {
    pub corners: Vec<u8>,
    pub edges: Vec<u8>,
}

/// Falling factorial `n * (n-1) * ... * (n-k+1)`.
fn falling(n: u64, k: usize) -> u64 {
    (0..k as u64).map(|i| n - i).product()
}

fn rank_partial(slots: &[u8], n: usize) -> usize {
    let mut r = 0;
    for (i, &s) in slots.iter().enumerate() {
        let smaller = slots[..i].iter().filter(|&&p| p < s).count();
        r = r * (n - i) + (s as usize - smaller);
    }
    r
}

fn unrank_partial(mut r: usize, n: usize, out: &mut [u8]) {
    let k = out.len();
    let mut digits = [0usize; 12];
    for i in (0..k).rev() {
        digits[i] = r % (n - i);
        r /= n - i;
    }
    let mut used = [false; 12];
    for i in 0..k {
        let mut d = digits[i];
        let mut s = 0;
        loop {
            if !used[s] {
                if d == 0 {
                    break;
                }
                d -= 1;
            }
            s += 1;
        }
        used[s] = true;
        out[i] = s as u8;
    }
}

fn rank_digits(digits: &[u8], base: usize) -> usize {
    digits.iter().fold(0, |r, &d| r * base + d as usize)
}

fn unrank_digits(mut r: usize, base: usize, out: &mut [u8]) {
    for d in out.iter_mut().rev() {
        *d = (r % base) as u8;
        r /= base;
    }
}

/// Slot and orientation of every cubie, indexed by cubie id.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Located {
    pub corners: [(u8, u8); 8],
    pub edges: [(u8, u8); 12],
}

impl Located {
    pub fn of(state: &CubeState) -> Located {
        let mut corners = [(0, 0); 8];
        let mut edges = [(0, 0); 12];
        for (slot, (&c, &o)) in state.corner_perm().iter().zip(state.corner_ori()).enumerate() {
            corners[c as usize] = (slot as u8, o);
        }
        for (slot, (&e, &o)) in state.edge_perm().iter().zip(state.edge_ori()).enumerate() {
            edges[e as usize] = (slot as u8, o);
        }
        Located { corners, edges }
    }
}

/// Tracked cubies' slots and orientations, in pattern order.
#[derive(Debug, Clone, Copy, Default)]
struct Abstract {
    cs: [u8; 8],
    co: [u8; 8],
    es: [u8; 12],
    eo: [u8; 12],
}

impl Pattern {
    pub fn new(mut corners: Vec<u8>, mut edges: Vec<u8>) -> Result<Pattern, HeuristicError> {
        if corners.is_empty() && edges.is_empty() {
            return Err(HeuristicError::EmptyPattern);
        }
        for (ids, n) in [(&mut corners, 8), (&mut edges, 12)] {
            ids.sort_unstable();
            if let Some(&bad) = ids.iter().find(|&&c| c >= n) {
                return Err(HeuristicError::InvalidCubie(bad));
            }
            if let Some(w) = ids.windows(2).find(|w| w[0] == w[1]) {
                return Err(HeuristicError::DuplicateCubie(w[0]));
            }
        }
        Ok(Pattern { corners, edges })
    }

    /// Pattern over cubelet indices `0..20` (corners first, then edges).
    pub fn from_cubelets(cubelets: &[u8]) -> Result<Pattern, HeuristicError> {
        let corners = cubelets.iter().copied().filter(|&c| c < 8).collect();
        let edges = cubelets.iter().filter(|&&c| c >= 8).map(|&c| c - 8).collect();
        Pattern::new(corners, edges)
    }

    fn corner_space(&self) -> u64 {
        falling(8, self.corners.len()) * 3u64.pow(self.corners.len() as u32)
    }

    fn edge_space(&self) -> u64 {
        falling(12, self.edges.len()) * 2u64.pow(self.edges.len() as u32)
    }

    /// Number of abstract states.
    pub fn table_size(&self) -> u64 {
        self.corner_space() * self.edge_space()
    }

    fn encode(&self, a: &Abstract) -> usize {
        let (kc, ke) = (self.corners.len(), self.edges.len());
        let c = rank_partial(&a.cs[..kc], 8) * 3usize.pow(kc as u32) + rank_digits(&a.co[..kc], 3);
        let e = rank_partial(&a.es[..ke], 12) * 2usize.pow(ke as u32) + rank_digits(&a.eo[..ke], 2);
        c * self.edge_space() as usize + e
    }

    fn decode(&self, index: usize) -> Abstract {
        let (kc, ke) = (self.corners.len(), self.edges.len());
        let mut a = Abstract::default();
        let es = self.edge_space() as usize;
        let (c, e) = (index / es, index % es);
        let oc = 3usize.pow(kc as u32);
        unrank_partial(c / oc, 8, &mut a.cs[..kc]);
        unrank_digits(c % oc, 3, &mut a.co[..kc]);
        let oe = 2usize.pow(ke as u32);
        unrank_partial(e / oe, 12, &mut a.es[..ke]);
        unrank_digits(e % oe, 2, &mut a.eo[..ke]);
        a
    }

    fn project(&self, loc: &Located) -> Abstract {
        let mut a = Abstract::default();
        for (i, &c) in self.corners.iter().enumerate() {
            (a.cs[i], a.co[i]) = loc.corners[c as usize];
        }
        for (i, &e) in self.edges.iter().enumerate() {
            (a.es[i], a.eo[i]) = loc.edges[e as usize];
        }
        a
    }

    /// Abstract index of a concrete state.
    pub fn index_of(&self, loc: &Located) -> usize {
        self.encode(&self.project(loc))
    }

    fn goal(&self) -> Abstract {
        let mut a = Abstract::default();
        a.cs[..self.corners.len()].copy_from_slice(&self.corners);
        a.es[..self.edges.len()].copy_from_slice(&self.edges);
        a
    }

    pub fn goal_index(&self) -> usize {
        self.encode(&self.goal())
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |ids: &[u8]| ids.iter().map(|i| format!("{i}")).collect::<Vec<_>>().join(".");
        write!(f, "c[{}]e[{}]", list(&self.corners), list(&self.edges))
    }
}

/// Where each cubie goes under a move: `(destination slot, orientation delta)`.
struct ForwardMaps {
    corner: [[(u8, u8); 8]; 18],
    edge: [[(u8, u8); 12]; 18],
}

fn forward_maps() -> ForwardMaps {
    let mut maps = ForwardMaps { corner: [[(0, 0); 8]; 18], edge: [[(0, 0); 12]; 18] };
    for (m, t) in MOVE_TABLES.iter().enumerate() {
        for i in 0..8 {
            maps.corner[m][t.cp[i] as usize] = (i as u8, t.co[i]);
        }
        for i in 0..12 {
            maps.edge[m][t.ep[i] as usize] = (i as u8, t.eo[i]);
        }
    }
    maps
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternDb {
    pattern: Pattern,
    action_set: ActionSet,
    table: Vec<u8>,
}

impl PatternDb {
    /// Breadth-first search over the projected space from the abstract goal.
    /// Every move has its inverse in the action set, so forward distances
    /// from the goal equal distances to it.
    pub fn build(pattern: Pattern, action_set: ActionSet, cap: u64) -> Result<PatternDb, HeuristicError> {
        let entries = pattern.table_size();
        if entries > cap {
            return Err(HeuristicError::MemoryCapExceeded { entries, cap });
        }
        let maps = forward_maps();
        let moves: Vec<usize> = action_set.moves().iter().map(|m| m.index()).collect();
        let (kc, ke) = (pattern.corners.len(), pattern.edges.len());
        let mut table = vec![UNREACHABLE; entries as usize];
        let goal = pattern.goal_index();
        table[goal] = 0;
        let mut queue = VecDeque::from([goal as u32]);
        while let Some(idx) = queue.pop_front() {
            let d = table[idx as usize];
            let a = pattern.decode(idx as usize);
            for &m in &moves {
                let mut b = a;
                for i in 0..kc {
                    let (slot, twist) = maps.corner[m][a.cs[i] as usize];
                    b.cs[i] = slot;
                    b.co[i] = (a.co[i] + twist) % 3;
                }
                for i in 0..ke {
                    let (slot, flip) = maps.edge[m][a.es[i] as usize];
                    b.es[i] = slot;
                    b.eo[i] = a.eo[i] ^ flip;
                }
                let j = pattern.encode(&b);
                if table[j] == UNREACHABLE {
                    table[j] = d + 1;
                    queue.push_back(j as u32);
                }
            }
        }
        Ok(PatternDb { pattern, action_set, table })
    }

    /// Wraps a previously built table, checking its shape.
    pub fn from_table(pattern: Pattern, action_set: ActionSet, table: Vec<u8>) -> Result<PatternDb, HeuristicError> {
        let expected = pattern.table_size();
        if table.len() as u64 != expected {
            return Err(HeuristicError::TableSize { expected, found: table.len() as u64 });
        }
        if table[pattern.goal_index()] != 0 {
            return Err(HeuristicError::BadGoalEntry);
        }
        Ok(PatternDb { pattern, action_set, table })
    }

    pub fn pattern(&self) -> &Pattern {
        &self.pattern
    }

    pub fn action_set(&self) -> ActionSet {
        self.action_set
    }

    pub fn table(&self) -> &[u8] {
        &self.table
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    /// Largest finite entry.
    pub fn max_distance(&self) -> u8 {
        self.table.iter().copied().filter(|&d| d != UNREACHABLE).max().unwrap_or(0)
    }

    pub fn lookup_located(&self, loc: &Located) -> u32 {
        match self.table[self.pattern.index_of(loc)] {
            UNREACHABLE => DEAD_END,
            d => d as u32,
        }
    }

    pub fn lookup(&self, state: &CubeState) -> u32 {
        self.lookup_located(&Located::of(state))
    }
}

/// Maximum over a collection of pattern databases.
#[derive(Debug, Clone)]
pub struct MaxPdb {
    name: String,
    action_set: ActionSet,
    pdbs: Vec<PatternDb>,
}

impl MaxPdb {
    pub fn new(name: impl Into<String>, action_set: ActionSet, pdbs: Vec<PatternDb>) -> MaxPdb {
        assert!(pdbs.iter().all(|p| p.action_set == action_set), "mixed action sets");
        MaxPdb { name: name.into(), action_set, pdbs }
    }

    pub fn build(
        name: impl Into<String>,
        patterns: Vec<Pattern>,
        action_set: ActionSet,
        cap: u64,
    ) -> Result<MaxPdb, HeuristicError> {
        let pdbs = patterns
            .into_iter()
            .map(|p| PatternDb::build(p, action_set, cap))
            .collect::<Result<_, _>>()?;
        Ok(MaxPdb::new(name, action_set, pdbs))
    }

    pub fn pdbs(&self) -> &[PatternDb] {
        &self.pdbs
    }

    pub fn action_set(&self) -> ActionSet {
        self.action_set
    }
}

impl Heuristic for MaxPdb {
    fn evaluate(&self, state: &CubeState) -> u32 {
        let loc = Located::of(state);
        self.pdbs.iter().map(|p| p.lookup_located(&loc)).max().unwrap_or(0)
    }
    fn name(&self) -> &str {
        &self.name
    }
    fn is_admissible(&self) -> bool {
        true
    }
}

/// Two corner patterns and three edge patterns of four cubies each,
/// partitioning the corners and the edges in canonical order.
pub fn manual_patterns() -> Vec<Pattern> {
    let chunk = |start: u8| (start..start + 4).collect::<Vec<u8>>();
    vec![
        Pattern { corners: chunk(0), edges: vec![] },
        Pattern { corners: chunk(4), edges: vec![] },
        Pattern { corners: vec![], edges: chunk(0) },
        Pattern { corners: vec![], edges: chunk(4) },
        Pattern { corners: vec![], edges: chunk(8) },
    ]
}

/// Every set of at most `max_size` cubelets, smallest sets first and
/// lexicographic within a size.
pub fn systematic_patterns(max_size: u8) -> Result<Vec<Pattern>, HeuristicError> {
    if !(1..=3).contains(&max_size) {
        return Err(HeuristicError::InvalidPatternSize(max_size));
    }
    let mut out = Vec::new();
    for a in 0..20u8 {
        out.push(Pattern::from_cubelets(&[a])?);
    }
    if max_size >= 2 {
        for a in 0..20u8 {
            for b in a + 1..20 {
                out.push(Pattern::from_cubelets(&[a, b])?);
            }
        }
    }
    if max_size >= 3 {
        for a in 0..20u8 {
            for b in a + 1..20 {
                for c in b + 1..20 {
                    out.push(Pattern::from_cubelets(&[a, b, c])?);
                }
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(try_from = "String", into = "String"))]
pub enum HeuristicKind {
    Blind,
    GoalCount,
    Ff,
    PdbManual,
    PdbSystematic(u8),
}

impl HeuristicKind {
    pub fn label(self) -> String {
        match self {
            HeuristicKind::Blind => "blind".into(),
            HeuristicKind::GoalCount => "gc".into(),
            HeuristicKind::Ff => "ff".into(),
            HeuristicKind::PdbManual => "pdb-man".into(),
            HeuristicKind::PdbSystematic(k) => format!("pdb-sys{k}"),
        }
    }

    /// Pattern collection for PDB kinds.
    pub fn patterns(self) -> Option<Result<Vec<Pattern>, HeuristicError>> {
        match self {
            HeuristicKind::PdbManual => Some(Ok(manual_patterns())),
            HeuristicKind::PdbSystematic(k) => Some(systematic_patterns(k)),
            _ => None,
        }
    }
}

impl fmt::Display for HeuristicKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl FromStr for HeuristicKind {
    type Err = HeuristicError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let kind = match s.to_ascii_lowercase().as_str() {
            "blind" => HeuristicKind::Blind,
            "gc" | "goal-count" | "goalcount" => HeuristicKind::GoalCount,
            "ff" => HeuristicKind::Ff,
            "pdb-man" | "pdb-manual" => HeuristicKind::PdbManual,
            other => {
                let k = other
                    .strip_prefix("pdb-sys")
                    .and_then(|k| k.parse::<u8>().ok())
                    .ok_or_else(|| HeuristicError::UnknownKind(s.into()))?;
                if !(1..=3).contains(&k) {
                    return Err(HeuristicError::InvalidPatternSize(k));
                }
                HeuristicKind::PdbSystematic(k)
            }
        };
        Ok(kind)
    }
}

impl TryFrom<String> for HeuristicKind {
    type Error = HeuristicError;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<HeuristicKind> for String {
    fn from(k: HeuristicKind) -> String {
        k.label()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct HeuristicConfig {
    pub kind: HeuristicKind,
    pub action_set: ActionSet,
}

impl HeuristicConfig {
    pub fn new(kind: HeuristicKind, action_set: ActionSet) -> HeuristicConfig {
        HeuristicConfig { kind, action_set }
    }

    /// Builds the heuristic, constructing any pattern databases in memory.
    pub fn build(&self, pdb_cap: u64) -> Result<Box<dyn Heuristic>, HeuristicError> {
        Ok(match self.kind {
            HeuristicKind::Blind => Box::new(Blind),
            HeuristicKind::GoalCount => Box::new(GoalCount),
            HeuristicKind::Ff => Box::new(Ff::new(self.action_set)),
            kind => {
                let patterns = kind.patterns().expect("pdb kind")?;
                Box::new(MaxPdb::build(kind.label(), patterns, self.action_set, pdb_cap)?)
            }
        })
    }
}
