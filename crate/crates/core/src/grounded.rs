//! Propositional grounding of the PDDL model and the delete-relaxation
//! machinery behind the FF heuristic.
//!
//! Every schema effect `(forall (vars) (when (src vars) (dst perm(vars))))`
//! is instantiated for all colour tuples, giving ground conditional effects
//! with a single condition atom and a single add atom. Since actions have no
//! preconditions, every action is applicable in every relaxed layer.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::cube::{to_stickers, Color, CubeState, Move};
use crate::pddl::{self, Atom, Cubelet, PddlDomainModel, Variant, ATOM_COUNT};

pub type AtomId = u16;

const UNREACHED: u32 = u32::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct GroundEffect {
    pub condition: AtomId,
    pub add: AtomId,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundAction {
    pub name: Move,
    pub effects: Vec<GroundEffect>,
    /// Atoms deleted when true (the vacated slots' current atoms).
    pub deletes: Vec<AtomId>,
}

#[derive(Debug, Clone)]
pub struct GroundedTask {
    pub variant: Variant,
    pub goal_atoms: Vec<AtomId>,
    pub actions: Vec<GroundAction>,
    /// Effects indexed by condition atom: `by_condition[offsets[c]..offsets[c+1]]`
    /// holds `(action index, add atom)`, sorted by action index.
    offsets: Vec<u32>,
    by_condition: Vec<(u8, AtomId)>,
}

fn tuples(arity: usize) -> impl Iterator<Item = [Color; 3]> {
    let n = 6usize.pow(arity as u32);
    (0..n).map(move |i| {
        let mut c = [Color::White; 3];
        let mut r = i;
        for k in (0..arity).rev() {
            c[k] = Color::ALL[r % 6];
            r /= 6;
        }
        c
    })
}

fn ground_model(model: &PddlDomainModel) -> Vec<GroundAction> {
    model
        .actions
        .iter()
        .map(|a| {
            let mut effects = Vec::new();
            for e in a.effects() {
                for colors in tuples(e.source.arity()) {
                    let cond = Atom { cubelet: e.source, colors };
                    effects.push(GroundEffect {
                        condition: cond.index() as AtomId,
                        add: e.apply(&cond).index() as AtomId,
                    });
                }
            }
            let deletes = a
                .clears
                .iter()
                .flat_map(|&c| tuples(c.arity()).map(move |colors| Atom { cubelet: c, colors }))
                .map(|atom| atom.index() as AtomId)
                .collect();
            GroundAction { name: a.name, effects, deletes }
        })
        .collect()
}

pub fn ground(variant: Variant) -> GroundedTask {
    let actions = ground_model(&pddl::build_domain(variant));
    let mut buckets: Vec<Vec<(u8, AtomId)>> = vec![Vec::new(); ATOM_COUNT];
    for (ai, a) in actions.iter().enumerate() {
        for e in &a.effects {
            buckets[e.condition as usize].push((ai as u8, e.add));
        }
    }
    let mut offsets = Vec::with_capacity(ATOM_COUNT + 1);
    let mut by_condition = Vec::new();
    offsets.push(0);
    for b in buckets {
        by_condition.extend(b);
        offsets.push(by_condition.len() as u32);
    }
    let goal_atoms = encode_atoms(&CubeState::SOLVED).to_vec();
    GroundedTask { variant, goal_atoms, actions, offsets, by_condition }
}

/// The 20 true atoms of a state, in cubelet order.
pub fn encode_atoms(state: &CubeState) -> [AtomId; 20] {
    let stickers = to_stickers(state);
    let mut out = [0; 20];
    for (slot, c) in out.iter_mut().zip(Cubelet::all()) {
        let mut colors = [Color::White; 3];
        for (p, col) in colors.iter_mut().enumerate().take(c.arity()) {
            *col = stickers.facelets[c.param_facelet(p) as usize];
        }
        *slot = Atom { cubelet: c, colors }.index() as AtomId;
    }
    out
}

impl GroundedTask {
    pub fn atom_count(&self) -> usize {
        ATOM_COUNT
    }

    fn effects_of(&self, condition: AtomId) -> &[(u8, AtomId)] {
        let c = condition as usize;
        &self.by_condition[self.offsets[c] as usize..self.offsets[c + 1] as usize]
    }

    /// Number of goal atoms not true in `atoms`.
    pub fn goal_count(&self, atoms: &[AtomId]) -> u32 {
        self.goal_atoms.iter().filter(|g| !atoms.contains(g)).count() as u32
    }

    /// Ordinary (non-relaxed) application: conditions read before any write,
    /// then deletes, then adds.
    pub fn apply(&self, action: usize, atoms: &BTreeSet<AtomId>) -> BTreeSet<AtomId> {
        let a = &self.actions[action];
        let adds: Vec<AtomId> =
            a.effects.iter().filter(|e| atoms.contains(&e.condition)).map(|e| e.add).collect();
        let mut out: BTreeSet<AtomId> =
            atoms.iter().copied().filter(|x| !a.deletes.contains(x)).collect();
        out.extend(adds);
        out
    }

    pub fn build_rpg(&self, start: &[AtomId]) -> RelaxedPlanningGraph {
        assert!(!start.is_empty(), "relaxed planning graph needs a start state");
        let mut first_layer = vec![UNREACHED; ATOM_COUNT];
        let mut supporter = vec![None; ATOM_COUNT];
        let mut frontier: Vec<AtomId> = Vec::new();
        for &a in start {
            if first_layer[a as usize] == UNREACHED {
                first_layer[a as usize] = 0;
                frontier.push(a);
            }
        }
        let mut missing =
            self.goal_atoms.iter().filter(|&&g| first_layer[g as usize] == UNREACHED).count();
        let mut layer = 0u32;
        while missing > 0 && !frontier.is_empty() {
            frontier.sort_unstable();
            let mut next = Vec::new();
            for &c in &frontier {
                for &(a, add) in self.effects_of(c) {
                    let slot = &mut first_layer[add as usize];
                    let candidate = Supporter { action: a, condition: c };
                    if *slot == UNREACHED {
                        *slot = layer + 1;
                        supporter[add as usize] = Some(candidate);
                        next.push(add);
                    } else if *slot == layer + 1 {
                        let best = supporter[add as usize].as_mut().unwrap();
                        if (candidate.action, candidate.condition) < (best.action, best.condition) {
                            *best = candidate;
                        }
                    }
                }
            }
            layer += 1;
            missing = self.goal_atoms.iter().filter(|&&g| first_layer[g as usize] == UNREACHED).count();
            frontier = next;
        }
        RelaxedPlanningGraph { first_layer, supporter, depth: layer, goal_reached: missing == 0 }
    }

    /// Relaxed plan extracted from the graph as a set of `(action, layer)`
    /// pairs, or `None` if the goal is relaxed-unreachable.
    pub fn relaxed_plan(&self, rpg: &RelaxedPlanningGraph) -> Option<BTreeSet<(u8, u32)>> {
        if !rpg.goal_reached {
            return None;
        }
        let mut plan = BTreeSet::new();
        let mut visited = BTreeSet::new();
        let mut stack: Vec<AtomId> = self.goal_atoms.clone();
        while let Some(g) = stack.pop() {
            let layer = rpg.first_layer[g as usize];
            if layer == 0 || !visited.insert(g) {
                continue;
            }
            let s = rpg.supporter[g as usize].expect("reached atoms beyond layer 0 have supporters");
            plan.insert((s.action, layer - 1));
            stack.push(s.condition);
        }
        Some(plan)
    }

    /// FF estimate: size of the extracted relaxed plan. `None` marks a
    /// relaxed dead end, which cannot happen for cube states.
    pub fn h_ff(&self, state: &CubeState) -> Option<u32> {
        let rpg = self.build_rpg(&encode_atoms(state));
        self.relaxed_plan(&rpg).map(|p| p.len() as u32)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Supporter {
    pub action: u8,
    pub condition: AtomId,
}

/// Layered relaxed reachability. Layer `i` holds every atom whose
/// `first_layer` is at most `i`; construction stops once the goal is
/// contained or nothing new appears.
#[derive(Debug, Clone)]
pub struct RelaxedPlanningGraph {
    pub first_layer: Vec<u32>,
    pub supporter: Vec<Option<Supporter>>,
    /// Index of the last layer built.
    pub depth: u32,
    pub goal_reached: bool,
}

impl RelaxedPlanningGraph {
    pub fn layer(&self, i: u32) -> impl Iterator<Item = AtomId> + '_ {
        self.first_layer
            .iter()
            .enumerate()
            .filter(move |(_, &l)| l <= i)
            .map(|(a, _)| a as AtomId)
    }

    pub fn first_layer_of(&self, atom: AtomId) -> Option<u32> {
        Some(self.first_layer[atom as usize]).filter(|&l| l != UNREACHED)
    }
}
