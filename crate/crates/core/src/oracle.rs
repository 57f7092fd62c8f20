//! Ground truth: brute-force BFS, the IDA*/PDB optimal-length oracle, plan
//! validation, metric conversion and optimality classification.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashSet;
#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

use crate::cube::{ActionSet, CubeState, Move, Turn};
use crate::heuristics::MaxPdb;
use crate::search::{idastar, Clock, SearchLimits, SearchStatus};

/// Default depth caps for [`bfs_optimal`]. Depth 7 in the quarter-turn
/// metric and depth 6 in the face-turn metric each hold about 8-9 million
/// states; one more layer multiplies that by roughly 9 or 13.
pub fn default_bfs_cap(action_set: ActionSet) -> u32 {
    match action_set {
        ActionSet::Quarter12 => 7,
        ActionSet::Full18 => 6,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("BFS depth {requested} exceeds the cap {cap} for this action set")]
    DepthCap { requested: u32, cap: u32 },
}

fn check_cap(action_set: ActionSet, max_depth: u32) -> Result<(), OracleError> {
    let cap = default_bfs_cap(action_set);
    if max_depth > cap {
        return Err(OracleError::DepthCap { requested: max_depth, cap });
    }
    Ok(())
}

/// Exact distance to solved if it is at most `max_depth`, else `None`.
/// Forward breadth-first search with a visited set and the goal test on
/// generation.
pub fn bfs_optimal(state: &CubeState, action_set: ActionSet, max_depth: u32) -> Result<Option<u32>, OracleError> {
    check_cap(action_set, max_depth)?;
    if state.is_solved() {
        return Ok(Some(0));
    }
    let mut seen: HashSet<u128> = HashSet::new();
    seen.insert(state.pack());
    let mut frontier = vec![*state];
    for depth in 1..=max_depth {
        let mut next = Vec::new();
        for s in &frontier {
            for &m in action_set.moves() {
                let t = s.apply_move(m);
                if t.is_solved() {
                    return Ok(Some(depth));
                }
                if depth < max_depth && seen.insert(t.pack()) {
                    next.push(t);
                }
            }
        }
        frontier = next;
    }
    Ok(None)
}

/// Number of states at exact distance `d` from solved, for `d = 0..=max_depth`.
pub fn bfs_layer_counts(action_set: ActionSet, max_depth: u32) -> Result<Vec<u64>, OracleError> {
    check_cap(action_set, max_depth)?;
    let mut seen: HashSet<u128> = HashSet::new();
    seen.insert(CubeState::SOLVED.pack());
    let mut frontier = vec![CubeState::SOLVED];
    let mut counts = vec![1];
    for _ in 0..max_depth {
        let mut next = Vec::new();
        for s in &frontier {
            for &m in action_set.moves() {
                let t = s.apply_move(m);
                if seen.insert(t.pack()) {
                    next.push(t);
                }
            }
        }
        counts.push(next.len() as u64);
        frontier = next;
    }
    Ok(counts)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "SCREAMING_SNAKE_CASE"))]
pub enum OptimalLength {
    Known(u32),
    /// The oracle ran out of budget.
    Unknown,
}

impl OptimalLength {
    pub fn known(self) -> Option<u32> {
        match self {
            OptimalLength::Known(d) => Some(d),
            OptimalLength::Unknown => None,
        }
    }
}

/// Optimal plan length in the metric of `pdb`'s action set, via IDA* with
/// the admissible max-PDB heuristic.
pub fn optimal_length<C: Clock>(state: &CubeState, pdb: &MaxPdb, budget: &SearchLimits, clock: &C) -> OptimalLength {
    let r = idastar(state, pdb, pdb.action_set(), budget, clock);
    match r.status {
        SearchStatus::Solved => OptimalLength::Known(r.plan.len() as u32),
        _ => OptimalLength::Unknown,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "SCREAMING_SNAKE_CASE"))]
pub enum InvalidReason {
    MoveNotInActionSet { position: usize, mv: Move },
    NotSolvedAtEnd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "SCREAMING_SNAKE_CASE"))]
pub enum Validation {
    Valid,
    Invalid(InvalidReason),
}

impl Validation {
    pub fn is_valid(self) -> bool {
        self == Validation::Valid
    }
}

pub fn validate_plan(state: &CubeState, plan: &[Move], action_set: ActionSet) -> Validation {
    if let Some((position, &mv)) = plan.iter().enumerate().find(|(_, &m)| !action_set.contains(m)) {
        return Validation::Invalid(InvalidReason::MoveNotInActionSet { position, mv });
    }
    if state.apply_plan(plan).is_solved() {
        Validation::Valid
    } else {
        Validation::Invalid(InvalidReason::NotSolvedAtEnd)
    }
}

fn merge_pass(plan: &[Move]) -> Vec<Move> {
    let mut out = Vec::with_capacity(plan.len());
    let mut i = 0;
    while i < plan.len() {
        if let Some(merged) = plan.get(i + 1).and_then(|&n| plan[i].merge(n)) {
            out.extend(merged);
            i += 2;
        } else {
            out.push(plan[i]);
            i += 1;
        }
    }
    out
}

/// Rewrites a plan for the target metric. Towards the face-turn set,
/// adjacent same-face moves are merged (or cancelled) in left-to-right
/// passes until nothing changes; towards the quarter-turn set each half
/// turn becomes two clockwise quarter turns.
pub fn metric_convert(plan: &[Move], target: ActionSet) -> Vec<Move> {
    match target {
        ActionSet::Full18 => {
            let mut cur = plan.to_vec();
            loop {
                let next = merge_pass(&cur);
                if next == cur {
                    return cur;
                }
                cur = next;
            }
        }
        ActionSet::Quarter12 => plan
            .iter()
            .flat_map(|&m| match m.turn {
                Turn::Half => vec![Move::new(m.face, Turn::Cw); 2],
                _ => vec![m],
            })
            .collect(),
    }
}

/// Length of a plan counted in a metric: half turns cost 2 quarter turns.
pub fn plan_cost(plan: &[Move], metric: ActionSet) -> u32 {
    plan.iter()
        .map(|m| match (metric, m.turn) {
            (ActionSet::Quarter12, Turn::Half) => 2,
            _ => 1,
        })
        .sum()
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct OptimalityReport {
    pub id: String,
    pub plan_length: u32,
    pub optimal_length: Option<u32>,
    /// `None` when the optimal length is unknown.
    pub is_optimal: Option<bool>,
    pub metric: ActionSet,
}

/// A solved instance to classify.
#[derive(Debug, Clone)]
pub struct SolvedInstance<'a> {
    pub id: &'a str,
    pub state: CubeState,
    pub plan: &'a [Move],
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct OptimalityAggregate {
    /// Instances attempted, solved or not.
    pub attempted: usize,
    pub solved: usize,
    pub classified: usize,
    pub unknown: usize,
    pub optimal: usize,
    /// `optimal / classified`, `None` (N/A) when nothing was classified.
    pub percent_of_classified: Option<f64>,
    /// `optimal / attempted`: unsolved and unknown count against the ratio.
    pub percent_of_attempted: Option<f64>,
}

fn percent(num: usize, den: usize) -> Option<f64> {
    (den > 0).then(|| 100.0 * num as f64 / den as f64)
}

/// Compares each plan's cost in `metric` with the oracle's optimum.
/// `attempted` is the number of instances run, including unsolved ones.
pub fn classify_optimality<F>(
    solved: &[SolvedInstance<'_>],
    attempted: usize,
    metric: ActionSet,
    mut oracle: F,
) -> (Vec<OptimalityReport>, OptimalityAggregate)
where
    F: FnMut(&CubeState) -> OptimalLength,
{
    let reports: Vec<OptimalityReport> = solved
        .iter()
        .map(|inst| {
            let plan_length = plan_cost(inst.plan, metric);
            let optimal_length = oracle(&inst.state).known();
            OptimalityReport {
                id: inst.id.into(),
                plan_length,
                optimal_length,
                is_optimal: optimal_length.map(|d| d == plan_length),
                metric,
            }
        })
        .collect();
    (reports.clone(), aggregate(&reports, attempted))
}

pub fn aggregate(reports: &[OptimalityReport], attempted: usize) -> OptimalityAggregate {
    let classified = reports.iter().filter(|r| r.is_optimal.is_some()).count();
    let optimal = reports.iter().filter(|r| r.is_optimal == Some(true)).count();
    OptimalityAggregate {
        attempted,
        solved: reports.len(),
        classified,
        unknown: reports.len() - classified,
        optimal,
        percent_of_classified: percent(optimal, classified),
        percent_of_attempted: percent(optimal, attempted),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cube::parse_moves;
    use crate::heuristics::{manual_patterns, DEFAULT_PDB_CAP};
    use crate::search::NoClock;

    fn plan(s: &str) -> Vec<Move> {
        parse_moves(s).unwrap()
    }

    #[test]
    fn bfs_basics() {
        let q = ActionSet::Quarter12;
        assert_eq!(bfs_optimal(&CubeState::SOLVED, q, 7), Ok(Some(0)));
        assert_eq!(bfs_optimal(&CubeState::SOLVED.apply_plan(&plan("L")), q, 7), Ok(Some(1)));
        assert_eq!(bfs_optimal(&CubeState::SOLVED.apply_plan(&plan("F2")), q, 7), Ok(Some(2)));
        assert_eq!(bfs_optimal(&CubeState::SOLVED.apply_plan(&plan("R U F")), q, 2), Ok(None));
        assert_eq!(bfs_optimal(&CubeState::SOLVED, ActionSet::Full18, 7), Err(OracleError::DepthCap { requested: 7, cap: 6 }));
    }

    #[test]
    fn small_layer_counts() {
        assert_eq!(bfs_layer_counts(ActionSet::Quarter12, 3).unwrap(), vec![1, 12, 114, 1068]);
        assert_eq!(bfs_layer_counts(ActionSet::Full18, 3).unwrap(), vec![1, 18, 243, 3240]);
    }

    #[test]
    fn f2_under_both_metrics() {
        let s = CubeState::SOLVED.apply_plan(&plan("F2"));
        for (set, d) in [(ActionSet::Full18, 1), (ActionSet::Quarter12, 2)] {
            let pdb = MaxPdb::build("pdb-man", manual_patterns(), set, DEFAULT_PDB_CAP).unwrap();
            assert_eq!(optimal_length(&s, &pdb, &SearchLimits::DESK, &NoClock), OptimalLength::Known(d));
        }
    }

    #[test]
    fn validation() {
        let s = CubeState::SOLVED.apply_plan(&plan("L"));
        assert_eq!(validate_plan(&CubeState::SOLVED, &[], ActionSet::Quarter12), Validation::Valid);
        assert_eq!(validate_plan(&s, &plan("Lrev"), ActionSet::Quarter12), Validation::Valid);
        assert_eq!(
            validate_plan(&s, &plan("L"), ActionSet::Quarter12),
            Validation::Invalid(InvalidReason::NotSolvedAtEnd)
        );
        assert_eq!(
            validate_plan(&CubeState::SOLVED, &plan("F2"), ActionSet::Quarter12),
            Validation::Invalid(InvalidReason::MoveNotInActionSet { position: 0, mv: plan("F2")[0] })
        );
    }

    #[test]
    fn conversions() {
        assert_eq!(metric_convert(&plan("F F"), ActionSet::Full18), plan("F2"));
        assert_eq!(metric_convert(&plan("F2"), ActionSet::Quarter12), plan("F F"));
        assert_eq!(metric_convert(&plan("L Lrev"), ActionSet::Full18), vec![]);
        assert_eq!(metric_convert(&plan("R L Lrev Rrev U"), ActionSet::Full18), plan("U"));
        assert_eq!(metric_convert(&plan("F F F"), ActionSet::Full18), plan("Frev"));
    }

    #[test]
    fn classification() {
        let s = CubeState::SOLVED.apply_plan(&plan("F2"));
        let ff = plan("F F");
        let items = [SolvedInstance { id: "f2", state: s, plan: &ff }];
        let (reports, agg) = classify_optimality(&items, 1, ActionSet::Full18, |_| OptimalLength::Known(1));
        assert_eq!(reports[0].plan_length, 2);
        assert_eq!(reports[0].is_optimal, Some(false));
        assert_eq!(agg.percent_of_classified, Some(0.0));
        let (_, agg) = classify_optimality(&items, 1, ActionSet::Quarter12, |_| OptimalLength::Known(2));
        assert_eq!(agg.percent_of_classified, Some(100.0));
        let (_, agg) = classify_optimality(&items, 2, ActionSet::Full18, |_| OptimalLength::Unknown);
        assert_eq!((agg.unknown, agg.percent_of_classified, agg.percent_of_attempted), (1, None, Some(0.0)));
        let (r, agg) = classify_optimality(&[], 0, ActionSet::Full18, |_| OptimalLength::Unknown);
        assert!(r.is_empty());
        assert_eq!(agg.percent_of_classified, None);
    }
}
