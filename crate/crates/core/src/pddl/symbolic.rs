use alloc::collections::BTreeSet;
use core::fmt;

use crate::cube::geometry::{self, CORNER_FACELETS, CORNER_NAMES, EDGE_FACELETS, EDGE_NAMES};
use crate::cube::{
    identify_corner, identify_edge, to_stickers, Color, CubeState, Face, StickerArray,
};

use super::domain::PddlAction;

/// Spatial axes carrying the predicate parameters, in parameter order.
/// Corner predicates take `(?x ?y ?z)`; edge predicates take the two axes
/// their faces lie on, in this same order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Axis {
    /// U/D faces, variable `?x`.
    UpDown = 0,
    /// F/B faces, variable `?y`.
    FrontBack = 1,
    /// L/R faces, variable `?z`. Left-face turns keep this colour in place.
    LeftRight = 2,
}

impl Axis {
    pub const fn of(face: Face) -> Axis {
        match face {
            Face::U | Face::D => Axis::UpDown,
            Face::F | Face::B => Axis::FrontBack,
            Face::L | Face::R => Axis::LeftRight,
        }
    }

    pub const fn variable(self) -> &'static str {
        match self {
            Axis::UpDown => "?x",
            Axis::FrontBack => "?y",
            Axis::LeftRight => "?z",
        }
    }
}

/// One of the 20 cubelet predicates: `0..8` are `cube1..cube8`, `8..20` the
/// edges in internal edge order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cubelet(pub u8);

impl Cubelet {
    pub const COUNT: usize = 20;

    pub fn all() -> impl Iterator<Item = Cubelet> {
        (0..20).map(Cubelet)
    }

    pub fn corner(i: usize) -> Cubelet {
        Cubelet(i as u8)
    }

    pub fn edge(i: usize) -> Cubelet {
        Cubelet(8 + i as u8)
    }

    pub fn is_corner(self) -> bool {
        self.0 < 8
    }

    pub fn arity(self) -> usize {
        if self.is_corner() {
            3
        } else {
            2
        }
    }

    pub fn name(self) -> &'static str {
        if self.is_corner() {
            CORNER_NAMES[self.0 as usize]
        } else {
            EDGE_NAMES[self.0 as usize - 8]
        }
    }

    pub fn from_name(name: &str) -> Option<Cubelet> {
        Cubelet::all().find(|c| c.name().eq_ignore_ascii_case(name))
    }

    /// Facelets of the slot, in the slot's orientation reference order.
    pub fn facelets(self) -> &'static [u8] {
        if self.is_corner() {
            &CORNER_FACELETS[self.0 as usize]
        } else {
            &EDGE_FACELETS[self.0 as usize - 8]
        }
    }

    /// Facelet carrying parameter `p`.
    pub fn param_facelet(self, p: usize) -> u8 {
        let mut fs: [u8; 3] = [0; 3];
        let n = self.arity();
        fs[..n].copy_from_slice(self.facelets());
        let fs = &mut fs[..n];
        fs.sort_by_key(|&f| Axis::of(geometry::facelet_face(f as usize)));
        fs[p]
    }

    pub fn axes(self) -> [Axis; 3] {
        let mut out = [Axis::UpDown; 3];
        for (p, slot) in out.iter_mut().enumerate().take(self.arity()) {
            *slot = Axis::of(geometry::facelet_face(self.param_facelet(p) as usize));
        }
        out
    }
}

/// A ground atom such as `(cube1 red white blue)`. Unused trailing colour
/// slots of edge atoms are kept at `White`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom {
    pub cubelet: Cubelet,
    pub colors: [Color; 3],
}

impl Atom {
    pub fn new(cubelet: Cubelet, args: &[Color]) -> Atom {
        let mut colors = [Color::White; 3];
        colors[..args.len()].copy_from_slice(args);
        Atom { cubelet, colors }
    }

    pub fn args(&self) -> &[Color] {
        &self.colors[..self.cubelet.arity()]
    }

    /// Dense index over the full grounding: corners `p*216 + a*36 + b*6 + c`,
    /// then edges `1728 + q*36 + a*6 + b`.
    pub fn index(&self) -> usize {
        let c = self.colors.map(|c| c.index());
        let k = self.cubelet.0 as usize;
        if self.cubelet.is_corner() {
            k * 216 + c[0] * 36 + c[1] * 6 + c[2]
        } else {
            1728 + (k - 8) * 36 + c[0] * 6 + c[1]
        }
    }

    pub fn from_index(i: usize) -> Atom {
        let col = |x: usize| Color::ALL[x];
        if i < 1728 {
            let (k, r) = (i / 216, i % 216);
            Atom::new(Cubelet(k as u8), &[col(r / 36), col(r / 6 % 6), col(r % 6)])
        } else {
            let i = i - 1728;
            let (k, r) = (i / 36, i % 36);
            Atom::new(Cubelet(8 + k as u8), &[col(r / 6), col(r % 6)])
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}", self.cubelet.name())?;
        for c in self.args() {
            write!(f, " {}", c.name())?;
        }
        f.write_str(")")
    }
}

/// Number of atoms in the full grounding over six colours.
pub const ATOM_COUNT: usize = 8 * 216 + 12 * 36;

/// A set of ground atoms. States of the cube hold exactly one atom per
/// cubelet predicate; [`SymbolicState::is_well_formed`] checks that.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SymbolicState {
    pub atoms: BTreeSet<Atom>,
}

impl SymbolicState {
    pub fn is_well_formed(&self) -> bool {
        self.atoms.len() == 20 && Cubelet::all().all(|c| self.atom_of(c).is_some())
    }

    pub fn atom_of(&self, c: Cubelet) -> Option<&Atom> {
        self.atoms.iter().find(|a| a.cubelet == c)
    }
}

pub fn encode_stickers(arr: &StickerArray) -> SymbolicState {
    let atoms = Cubelet::all()
        .map(|c| {
            let mut colors = [Color::White; 3];
            for (p, slot) in colors.iter_mut().enumerate().take(c.arity()) {
                *slot = arr.facelets[c.param_facelet(p) as usize];
            }
            Atom { cubelet: c, colors }
        })
        .collect();
    SymbolicState { atoms }
}

/// The 20 atoms describing the colours of each cubelet along its axes.
pub fn encode(state: &CubeState) -> SymbolicState {
    encode_stickers(&to_stickers(state))
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DecodeError {
    #[error("no atom for {0}")]
    Missing(&'static str),
    #[error("more than one atom for {0}")]
    Duplicate(&'static str),
    #[error("{0} shows colours no cubie has")]
    Impossible(&'static str),
    #[error("cubie placed twice ({0})")]
    DuplicateCubie(&'static str),
}

/// Reconstructs the cube from exactly one atom per cubelet predicate.
pub fn decode(s: &SymbolicState) -> Result<CubeState, DecodeError> {
    let mut stickers = StickerArray::solved();
    let mut cp = [0u8; 8];
    let mut co = [0u8; 8];
    let mut ep = [0u8; 12];
    let mut eo = [0u8; 12];
    let mut seen_c = [false; 8];
    let mut seen_e = [false; 12];
    for c in Cubelet::all() {
        let mut matching = s.atoms.iter().filter(|a| a.cubelet == c);
        let atom = matching.next().ok_or(DecodeError::Missing(c.name()))?;
        if matching.next().is_some() {
            return Err(DecodeError::Duplicate(c.name()));
        }
        for (p, &col) in atom.args().iter().enumerate() {
            stickers.facelets[c.param_facelet(p) as usize] = col;
        }
        let fs = c.facelets();
        if c.is_corner() {
            let colors = [0, 1, 2].map(|k| stickers.facelets[fs[k] as usize]);
            let (cubie, o) = identify_corner(colors).ok_or(DecodeError::Impossible(c.name()))?;
            if core::mem::replace(&mut seen_c[cubie as usize], true) {
                return Err(DecodeError::DuplicateCubie(c.name()));
            }
            cp[c.0 as usize] = cubie;
            co[c.0 as usize] = o;
        } else {
            let colors = [0, 1].map(|k| stickers.facelets[fs[k] as usize]);
            let (cubie, o) = identify_edge(colors).ok_or(DecodeError::Impossible(c.name()))?;
            if core::mem::replace(&mut seen_e[cubie as usize], true) {
                return Err(DecodeError::DuplicateCubie(c.name()));
            }
            ep[c.0 as usize - 8] = cubie;
            eo[c.0 as usize - 8] = o;
        }
    }
    CubeState::new(cp, co, ep, eo).map_err(|_| DecodeError::DuplicateCubie("state"))
}

/// Applies an action with PDDL semantics: every condition is evaluated
/// against `s`, then all deletes and all adds are applied at once.
pub fn symbolic_apply(action: &PddlAction, s: &SymbolicState) -> SymbolicState {
    let mut deletes = BTreeSet::new();
    let mut adds = BTreeSet::new();
    for atom in &s.atoms {
        for e in action.effects() {
            if e.source == atom.cubelet {
                adds.insert(e.apply(atom));
            }
        }
        if action.clears.contains(&atom.cubelet) {
            deletes.insert(*atom);
        }
    }
    let mut atoms: BTreeSet<Atom> = s.atoms.difference(&deletes).copied().collect();
    atoms.extend(adds);
    SymbolicState { atoms }
}
