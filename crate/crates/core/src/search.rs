//! A* and IDA* over the move engine.
//!
//! Both searches test for the goal when a node is selected for expansion, so
//! a solved start reports zero expansions. Successors are generated in the
//! canonical move order (U, Urev, U2, D, ...) restricted to the action set.
//!
//! The memory limit is a cap on stored search nodes. An A* node costs about
//! 32 bytes in the arena plus roughly 24 bytes in the duplicate table and 24
//! in the open list, so 10^7 nodes stay below 1 GB.

use alloc::collections::BinaryHeap;
use alloc::vec::Vec;
use core::cmp::Reverse;
use core::time::Duration;

use hashbrown::hash_map::Entry;
use hashbrown::HashMap;
#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

use crate::cube::{ActionSet, CubeState, Move};
use crate::heuristics::{Heuristic, DEAD_END};

/// Source of elapsed time. The core crate has no clock of its own.
pub trait Clock {
    fn elapsed(&self) -> Duration;
}

/// A clock that never advances; time limits are then never hit.
#[derive(Debug, Clone, Copy, Default)]
pub struct NoClock;

impl Clock for NoClock {
    fn elapsed(&self) -> Duration {
        Duration::ZERO
    }
}

/// How often, in expansions, the clock is consulted.
const CLOCK_INTERVAL: u64 = 1024;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct SearchLimits {
    pub wall_time: Duration,
    pub max_stored_nodes: u64,
    pub max_expansions: Option<u64>,
}

impl SearchLimits {
    /// 60 s and 10^7 stored nodes.
    pub const DESK: SearchLimits = SearchLimits {
        wall_time: Duration::from_secs(60),
        max_stored_nodes: 10_000_000,
        max_expansions: None,
    };

    /// 30 minutes; 4.5 * 10^7 nodes approximates a 3.5 GB budget.
    pub const EXTENDED: SearchLimits = SearchLimits {
        wall_time: Duration::from_secs(1800),
        max_stored_nodes: 45_000_000,
        max_expansions: None,
    };
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits::DESK
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "SCREAMING_SNAKE_CASE"))]
pub enum SearchStatus {
    Solved,
    Timeout,
    Memout,
    /// The reachable space was exhausted without reaching the goal.
    Exhausted,
}

impl SearchStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            SearchStatus::Solved => "SOLVED",
            SearchStatus::Timeout => "TIMEOUT",
            SearchStatus::Memout => "MEMOUT",
            SearchStatus::Exhausted => "EXHAUSTED",
        }
    }

    pub fn from_str_opt(s: &str) -> Option<SearchStatus> {
        [SearchStatus::Solved, SearchStatus::Timeout, SearchStatus::Memout, SearchStatus::Exhausted]
            .into_iter()
            .find(|st| st.as_str().eq_ignore_ascii_case(s))
    }
}

impl core::fmt::Display for SearchStatus {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct PlanResult {
    pub status: SearchStatus,
    pub plan: Vec<Move>,
    pub expansions: u64,
    pub generated: u64,
    pub peak_stored: u64,
    pub wall_time: Duration,
    pub heuristic_initial: u32,
}

impl PlanResult {
    pub fn is_solved(&self) -> bool {
        self.status == SearchStatus::Solved
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum SearchKind {
    Astar,
    Idastar,
}

impl SearchKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SearchKind::Astar => "astar",
            SearchKind::Idastar => "idastar",
        }
    }

    pub fn from_str_opt(s: &str) -> Option<SearchKind> {
        match s.to_ascii_lowercase().as_str() {
            "astar" | "a*" => Some(SearchKind::Astar),
            "idastar" | "ida*" => Some(SearchKind::Idastar),
            _ => None,
        }
    }
}

/// Runs the chosen search.
pub fn solve<H: Heuristic + ?Sized, C: Clock>(
    kind: SearchKind,
    state: &CubeState,
    heuristic: &H,
    action_set: ActionSet,
    limits: &SearchLimits,
    clock: &C,
) -> PlanResult {
    match kind {
        SearchKind::Astar => astar(state, heuristic, action_set, limits, clock),
        SearchKind::Idastar => idastar(state, heuristic, action_set, limits, clock),
    }
}

struct Node {
    key: u128,
    parent: u32,
    mv: u8,
}

const ROOT: u32 = u32::MAX;

fn extract_plan(nodes: &[Node], mut i: u32) -> Vec<Move> {
    let mut plan = Vec::new();
    while nodes[i as usize].parent != ROOT {
        plan.push(Move::from_index(nodes[i as usize].mv as usize));
        i = nodes[i as usize].parent;
    }
    plan.reverse();
    plan
}

/// Best-first search on `f = g + h`. Ties go to the lower `g`, then to the
/// earlier generated node. A state is re-opened when reached again with a
/// strictly smaller `g`, which only happens under inconsistent heuristics.
pub fn astar<H: Heuristic + ?Sized, C: Clock>(
    state: &CubeState,
    heuristic: &H,
    action_set: ActionSet,
    limits: &SearchLimits,
    clock: &C,
) -> PlanResult {
    let h0 = heuristic.evaluate(state);
    let mut result = PlanResult {
        status: SearchStatus::Exhausted,
        plan: Vec::new(),
        expansions: 0,
        generated: 0,
        peak_stored: 1,
        wall_time: Duration::ZERO,
        heuristic_initial: h0,
    };
    if h0 == DEAD_END {
        result.wall_time = clock.elapsed();
        return result;
    }
    let mut nodes: Vec<Node> = Vec::new();
    let mut best_g: HashMap<u128, u32> = HashMap::new();
    let mut open: BinaryHeap<Reverse<(u32, u32, u32)>> = BinaryHeap::new();
    let root = state.pack();
    nodes.push(Node { key: root, parent: ROOT, mv: 0 });
    best_g.insert(root, 0);
    open.push(Reverse((h0, 0, 0)));
    let moves = action_set.moves();
    let mut last_f = 0;

    let status = 'search: loop {
        let Some(Reverse((f, g, id))) = open.pop() else {
            break SearchStatus::Exhausted;
        };
        let key = nodes[id as usize].key;
        if best_g[&key] < g {
            continue;
        }
        debug_assert!(!heuristic.is_admissible() || f >= last_f, "f decreased under an admissible heuristic");
        last_f = f;
        let s = CubeState::unpack(key);
        if s.is_solved() {
            result.plan = extract_plan(&nodes, id);
            break SearchStatus::Solved;
        }
        if limits.max_expansions.is_some_and(|m| result.expansions >= m) {
            break SearchStatus::Timeout;
        }
        if result.expansions % CLOCK_INTERVAL == 0 && result.expansions > 0 && clock.elapsed() >= limits.wall_time {
            break SearchStatus::Timeout;
        }
        result.expansions += 1;
        for &m in moves {
            let t = s.apply_move(m);
            result.generated += 1;
            let tk = t.pack();
            let tg = g + 1;
            match best_g.entry(tk) {
                Entry::Occupied(mut e) => {
                    if *e.get() <= tg {
                        continue;
                    }
                    e.insert(tg);
                }
                Entry::Vacant(e) => {
                    e.insert(tg);
                }
            }
            let h = heuristic.evaluate(&t);
            if h == DEAD_END {
                continue;
            }
            if nodes.len() as u64 >= limits.max_stored_nodes {
                break 'search SearchStatus::Memout;
            }
            let tid = nodes.len() as u32;
            nodes.push(Node { key: tk, parent: id, mv: m.index() as u8 });
            open.push(Reverse((tg + h, tg, tid)));
        }
    };
    result.status = status;
    result.peak_stored = nodes.len() as u64;
    result.wall_time = clock.elapsed();
    result
}

/// Whether `m` may follow `prev` (and `prev2` before it) in IDA*.
///
/// Same-face repeats are dropped except a second clockwise quarter turn in
/// the quarter-turn set (the only way to express a half turn there), and of
/// two commuting opposite faces only the lower-indexed face may come first.
fn allowed(m: Move, prev: Option<Move>, prev2: Option<Move>, action_set: ActionSet) -> bool {
    let Some(p) = prev else { return true };
    if m.face == p.face {
        return action_set == ActionSet::Quarter12
            && m == p
            && m.turn == crate::cube::Turn::Cw
            && prev2.is_none_or(|q| q.face != m.face);
    }
    !(m.face == p.face.opposite() && m.face.index() < p.face.index())
}

struct Ida<'a, H: ?Sized, C> {
    heuristic: &'a H,
    moves: &'a [Move],
    action_set: ActionSet,
    limits: &'a SearchLimits,
    clock: &'a C,
    path: Vec<Move>,
    expansions: u64,
    generated: u64,
    peak: u64,
    stop: Option<SearchStatus>,
}

enum Probe {
    Found,
    Next(u32),
}

impl<H: Heuristic + ?Sized, C: Clock> Ida<'_, H, C> {
    fn dfs(&mut self, s: &CubeState, g: u32, h: u32, bound: u32) -> Probe {
        let f = g + h;
        if f > bound {
            return Probe::Next(f);
        }
        if s.is_solved() {
            return Probe::Found;
        }
        if self.limits.max_expansions.is_some_and(|m| self.expansions >= m)
            || (self.expansions % CLOCK_INTERVAL == 0
                && self.expansions > 0
                && self.clock.elapsed() >= self.limits.wall_time)
        {
            self.stop = Some(SearchStatus::Timeout);
            return Probe::Next(DEAD_END);
        }
        self.expansions += 1;
        let mut next = DEAD_END;
        let n = self.path.len();
        let prev = self.path.last().copied();
        let prev2 = if n >= 2 { Some(self.path[n - 2]) } else { None };
        for &m in self.moves {
            if !allowed(m, prev, prev2, self.action_set) {
                continue;
            }
            let t = s.apply_move(m);
            self.generated += 1;
            let th = self.heuristic.evaluate(&t);
            if th == DEAD_END {
                continue;
            }
            self.path.push(m);
            self.peak = self.peak.max(self.path.len() as u64 + 1);
            match self.dfs(&t, g + 1, th, bound) {
                Probe::Found => return Probe::Found,
                Probe::Next(b) => next = next.min(b),
            }
            self.path.pop();
            if self.stop.is_some() {
                return Probe::Next(DEAD_END);
            }
        }
        Probe::Next(next)
    }
}

/// Iterative-deepening A*. Stores only the current path. Move sequences
/// that are redundant by the rules of [`allowed`] are never generated, so
/// the first plan found is optimal under an admissible heuristic.
pub fn idastar<H: Heuristic + ?Sized, C: Clock>(
    state: &CubeState,
    heuristic: &H,
    action_set: ActionSet,
    limits: &SearchLimits,
    clock: &C,
) -> PlanResult {
    let h0 = heuristic.evaluate(state);
    let mut ida = Ida {
        heuristic,
        moves: action_set.moves(),
        action_set,
        limits,
        clock,
        path: Vec::new(),
        expansions: 0,
        generated: 0,
        peak: 1,
        stop: None,
    };
    let mut status = SearchStatus::Exhausted;
    let mut bound = h0;
    while bound != DEAD_END {
        match ida.dfs(state, 0, h0, bound) {
            Probe::Found => {
                status = SearchStatus::Solved;
                break;
            }
            Probe::Next(b) => {
                if let Some(s) = ida.stop {
                    status = s;
                    break;
                }
                bound = b;
            }
        }
    }
    PlanResult {
        status,
        plan: if status == SearchStatus::Solved { ida.path } else { Vec::new() },
        expansions: ida.expansions,
        generated: ida.generated,
        peak_stored: ida.peak,
        wall_time: clock.elapsed(),
        heuristic_initial: h0,
    }
}
