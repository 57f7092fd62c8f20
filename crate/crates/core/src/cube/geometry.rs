//! Face geometry of the cube and everything derived from it at compile time.
//!
//! Coordinates: `x` points right, `y` up, `z` towards the viewer (front).
//! Every facelet is identified by the position of its cubie and the outward
//! normal of the face it sits on; a face turn rotates both. The 54-facelet
//! move permutations and the cubie-level move tables are computed from this
//! model by `const fn`, so there is exactly one source of truth for what a
//! move does.
//!
//! Facelets are numbered face by face in the order U, L, F, R, B, D, each
//! face row-major as seen on the unfolded net:
//!
//! ```text
//!           U0 U1 U2
//!           U3 U4 U5
//!           U6 U7 U8
//! L0 L1 L2  F0 F1 F2  R0 R1 R2  B0 B1 B2
//! L3 L4 L5  F3 F4 F5  R3 R4 R5  B3 B4 B5
//! L6 L7 L8  F6 F7 F8  R6 R7 R8  B6 B7 B8
//!           D0 D1 D2
//!           D3 D4 D5
//!           D6 D7 D8
//! ```
//!
//! Cubelet slots follow the PDDL naming. Corners `cube1..cube4` sit on the
//! left face, `cube5..cube8` are their mirror images on the right face:
//!
//! ```text
//! cube1 UFL   cube2 DFL   cube3 UBL   cube4 DBL
//! cube5 UFR   cube6 DFR   cube7 UBR   cube8 DBR
//! ```
//!
//! An edge `edgePQ` lies between corners `cubeP` and `cubeQ`. Edges are
//! indexed ring by ring (left face, middle slice, right face), each ring in
//! the cyclic order of its clockwise turn:
//!
//! ```text
//!  0 edge13 UL    4 edge15 UF    8 edge57 UR
//!  1 edge12 FL    5 edge26 DF    9 edge56 FR
//!  2 edge24 DL    6 edge48 DB   10 edge68 DR
//!  3 edge34 BL    7 edge37 UB   11 edge78 BR
//! ```

use super::moves::Face;

pub type Vec3 = [i8; 3];

/// Net order of faces in the 54-facelet serialization.
pub const NET_ORDER: [Face; 6] = [Face::U, Face::L, Face::F, Face::R, Face::B, Face::D];

pub const fn normal(face: Face) -> Vec3 {
    match face {
        Face::U => [0, 1, 0],
        Face::D => [0, -1, 0],
        Face::L => [-1, 0, 0],
        Face::R => [1, 0, 0],
        Face::F => [0, 0, 1],
        Face::B => [0, 0, -1],
    }
}

/// Direction of increasing column / row for a face drawn on the net.
const fn right_down(face: Face) -> (Vec3, Vec3) {
    match face {
        Face::U => ([1, 0, 0], [0, 0, 1]),
        Face::L => ([0, 0, 1], [0, -1, 0]),
        Face::F => ([1, 0, 0], [0, -1, 0]),
        Face::R => ([0, 0, -1], [0, -1, 0]),
        Face::B => ([-1, 0, 0], [0, -1, 0]),
        Face::D => ([1, 0, 0], [0, 0, -1]),
    }
}

const fn face_of_normal(n: Vec3) -> Face {
    let mut i = 0;
    while i < 6 {
        let f = Face::ALL[i];
        if eq(normal(f), n) {
            return f;
        }
        i += 1;
    }
    panic!("not a face normal")
}

const fn eq(a: Vec3, b: Vec3) -> bool {
    a[0] == b[0] && a[1] == b[1] && a[2] == b[2]
}

const fn dot(a: Vec3, b: Vec3) -> i8 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

const fn cross(a: Vec3, b: Vec3) -> Vec3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// Quarter turn clockwise as seen from outside the face with normal `n`.
const fn rotate(v: Vec3, n: Vec3) -> Vec3 {
    let c = cross(n, v);
    let d = dot(n, v);
    [n[0] * d - c[0], n[1] * d - c[1], n[2] * d - c[2]]
}

/// Face a facelet index belongs to.
pub const fn facelet_face(i: usize) -> Face {
    NET_ORDER[i / 9]
}

/// (cubie position, outward normal) of a facelet.
pub const fn facelet_geometry(i: usize) -> (Vec3, Vec3) {
    let face = facelet_face(i);
    let n = normal(face);
    let (right, down) = right_down(face);
    let r = (i % 9 / 3) as i8 - 1;
    let c = (i % 3) as i8 - 1;
    let p = [
        n[0] + c * right[0] + r * down[0],
        n[1] + c * right[1] + r * down[1],
        n[2] + c * right[2] + r * down[2],
    ];
    (p, n)
}

pub const fn find_facelet(pos: Vec3, n: Vec3) -> usize {
    let mut i = 0;
    while i < 54 {
        let (p, m) = facelet_geometry(i);
        if eq(p, pos) && eq(m, n) {
            return i;
        }
        i += 1;
    }
    panic!("no facelet at this position")
}

/// Index of the centre facelet of a face.
pub const fn center(face: Face) -> usize {
    find_facelet(normal(face), normal(face))
}

pub const CORNER_POSITIONS: [Vec3; 8] = [
    [-1, 1, 1],
    [-1, -1, 1],
    [-1, 1, -1],
    [-1, -1, -1],
    [1, 1, 1],
    [1, -1, 1],
    [1, 1, -1],
    [1, -1, -1],
];

pub const EDGE_POSITIONS: [Vec3; 12] = [
    [-1, 1, 0],
    [-1, 0, 1],
    [-1, -1, 0],
    [-1, 0, -1],
    [0, 1, 1],
    [0, -1, 1],
    [0, -1, -1],
    [0, 1, -1],
    [1, 1, 0],
    [1, 0, 1],
    [1, -1, 0],
    [1, 0, -1],
];

pub const CORNER_NAMES: [&str; 8] = [
    "cube1", "cube2", "cube3", "cube4", "cube5", "cube6", "cube7", "cube8",
];

pub const EDGE_NAMES: [&str; 12] = [
    "edge13", "edge12", "edge24", "edge34", "edge15", "edge26", "edge48", "edge37", "edge57",
    "edge56", "edge68", "edge78",
];

/// Facelets of each corner slot, starting with the U/D facelet and going
/// clockwise around the corner as seen from outside. Orientation `o` means
/// the cubie's U/D-coloured sticker sits at position `o` of this list.
pub const CORNER_FACELETS: [[u8; 3]; 8] = {
    let mut out = [[0u8; 3]; 8];
    let mut i = 0;
    while i < 8 {
        let p = CORNER_POSITIONS[i];
        let ud: Vec3 = [0, p[1], 0];
        let a: Vec3 = [p[0], 0, 0];
        let b: Vec3 = [0, 0, p[2]];
        // A clockwise triple of outward normals is left-handed.
        let (n1, n2) = if dot(ud, cross(a, b)) == -1 { (a, b) } else { (b, a) };
        out[i] = [
            find_facelet(p, ud) as u8,
            find_facelet(p, n1) as u8,
            find_facelet(p, n2) as u8,
        ];
        i += 1;
    }
    out
};

/// Facelets of each edge slot: the reference facelet (U/D if the slot has
/// one, otherwise F/B) first. Orientation 1 means the cubie's reference
/// sticker is off the slot's reference facelet.
pub const EDGE_FACELETS: [[u8; 2]; 12] = {
    let mut out = [[0u8; 2]; 12];
    let mut i = 0;
    while i < 12 {
        let p = EDGE_POSITIONS[i];
        let (r, o): (Vec3, Vec3) = if p[1] != 0 {
            if p[0] != 0 {
                ([0, p[1], 0], [p[0], 0, 0])
            } else {
                ([0, p[1], 0], [0, 0, p[2]])
            }
        } else {
            ([0, 0, p[2]], [p[0], 0, 0])
        };
        out[i] = [find_facelet(p, r) as u8, find_facelet(p, o) as u8];
        i += 1;
    }
    out
};

/// Facelet permutations for `q` clockwise quarter turns of every face:
/// `FACELET_MOVES[face][q - 1][dest] = src`, i.e. after the move the
/// facelet `dest` shows what facelet `src` showed before.
pub const FACELET_MOVES: [[[u8; 54]; 3]; 6] = {
    let mut out = [[[0u8; 54]; 3]; 6];
    let mut f = 0;
    while f < 6 {
        let n = normal(Face::ALL[f]);
        let mut q = 0;
        while q < 3 {
            let mut src = 0;
            while src < 54 {
                let (mut p, mut d) = facelet_geometry(src);
                if dot(p, n) == 1 {
                    let mut k = 0;
                    while k <= q {
                        p = rotate(p, n);
                        d = rotate(d, n);
                        k += 1;
                    }
                }
                out[f][q][find_facelet(p, d)] = src as u8;
                src += 1;
            }
            q += 1;
        }
        f += 1;
    }
    out
};

/// Raw cubie-level description of a permutation: which cubie sits in each
/// slot and with what orientation.
#[derive(Clone, Copy)]
pub struct CubieTable {
    pub cp: [u8; 8],
    pub co: [u8; 8],
    pub ep: [u8; 12],
    pub eo: [u8; 12],
}

const fn solved_face(facelet: u8) -> Face {
    facelet_face(facelet as usize)
}

/// Reads the cubies off a facelet permutation applied to the solved cube.
const fn cubies_of(perm: &[u8; 54]) -> CubieTable {
    let mut t = CubieTable { cp: [0; 8], co: [0; 8], ep: [0; 12], eo: [0; 12] };
    let mut slot = 0;
    while slot < 8 {
        let f = CORNER_FACELETS[slot];
        let mut found = false;
        let mut cubie = 0;
        while cubie < 8 && !found {
            let h = CORNER_FACELETS[cubie];
            let mut o = 0;
            while o < 3 && !found {
                let mut k = 0;
                let mut ok = true;
                while k < 3 {
                    let shown = solved_face(perm[f[(k + o) % 3] as usize]);
                    if shown as u8 != solved_face(h[k]) as u8 {
                        ok = false;
                    }
                    k += 1;
                }
                if ok {
                    t.cp[slot] = cubie as u8;
                    t.co[slot] = o as u8;
                    found = true;
                }
                o += 1;
            }
            cubie += 1;
        }
        assert!(found);
        slot += 1;
    }
    let mut slot = 0;
    while slot < 12 {
        let f = EDGE_FACELETS[slot];
        let mut found = false;
        let mut cubie = 0;
        while cubie < 12 && !found {
            let h = EDGE_FACELETS[cubie];
            let mut o = 0;
            while o < 2 && !found {
                let a = solved_face(perm[f[o] as usize]) as u8;
                let b = solved_face(perm[f[(1 + o) % 2] as usize]) as u8;
                if a == solved_face(h[0]) as u8 && b == solved_face(h[1]) as u8 {
                    t.ep[slot] = cubie as u8;
                    t.eo[slot] = o as u8;
                    found = true;
                }
                o += 1;
            }
            cubie += 1;
        }
        assert!(found);
        slot += 1;
    }
    t
}

/// Cubie tables of the 18 moves, in move index order.
pub const MOVE_TABLES: [CubieTable; 18] = {
    let empty = CubieTable { cp: [0; 8], co: [0; 8], ep: [0; 12], eo: [0; 12] };
    let mut out = [empty; 18];
    let mut f = 0;
    while f < 6 {
        // Turn order within a face is Cw, Ccw, Half = 1, 3, 2 quarters.
        out[f * 3] = cubies_of(&FACELET_MOVES[f][0]);
        out[f * 3 + 1] = cubies_of(&FACELET_MOVES[f][2]);
        out[f * 3 + 2] = cubies_of(&FACELET_MOVES[f][1]);
        f += 1;
    }
    out
};

/// Face whose outward normal is the given vector.
pub const fn face_at(n: Vec3) -> Face {
    face_of_normal(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn centers_are_fixed_by_every_move() {
        for f in 0..6 {
            for q in 0..3 {
                for face in Face::ALL {
                    let c = center(face);
                    assert_eq!(FACELET_MOVES[f][q][c] as usize, c);
                }
            }
        }
        assert_eq!(center(Face::U), 4);
        assert_eq!(center(Face::F), 22);
        assert_eq!(center(Face::D), 49);
    }

    #[test]
    fn facelet_moves_are_permutations() {
        for f in 0..6 {
            for q in 0..3 {
                let mut seen = [false; 54];
                for &s in &FACELET_MOVES[f][q] {
                    assert!(!seen[s as usize]);
                    seen[s as usize] = true;
                }
            }
        }
    }

    #[test]
    fn u_turn_moves_front_row_to_left() {
        // U clockwise: the front face's top row goes to the left face.
        let u = &FACELET_MOVES[Face::U.index()][0];
        let f0 = find_facelet([-1, 1, 1], normal(Face::F));
        let l_dest = find_facelet([-1, 1, -1], normal(Face::L));
        assert_eq!(u[l_dest] as usize, f0);
    }

    #[test]
    fn l_turn_cycles_left_corners_as_in_pddl() {
        // L carries cube1 -> cube2 -> cube4 -> cube3 -> cube1, so the cubie in
        // slot cube2 afterwards came from cube1.
        let l = &MOVE_TABLES[Face::L.index() * 3];
        assert_eq!(l.cp[1], 0);
        assert_eq!(l.cp[3], 1);
        assert_eq!(l.cp[2], 3);
        assert_eq!(l.cp[0], 2);
        // edge13 -> edge12 -> edge24 -> edge34 -> edge13
        assert_eq!(l.ep[1], 0);
        assert_eq!(l.ep[2], 1);
        assert_eq!(l.ep[3], 2);
        assert_eq!(l.ep[0], 3);
    }

    #[test]
    fn slot_facelets_cover_all_non_centers_once() {
        let mut seen = [0u8; 54];
        for c in CORNER_FACELETS {
            for f in c {
                seen[f as usize] += 1;
            }
        }
        for e in EDGE_FACELETS {
            for f in e {
                seen[f as usize] += 1;
            }
        }
        for (i, &n) in seen.iter().enumerate() {
            let expected = if i % 9 == 4 { 0 } else { 1 };
            assert_eq!(n, expected, "facelet {i}");
        }
    }

    #[test]
    fn only_front_and_back_quarter_turns_flip_edges() {
        for (i, t) in MOVE_TABLES.iter().enumerate() {
            let face = Face::from_index(i / 3);
            let flips = t.eo.iter().filter(|&&o| o == 1).count();
            let quarter = i % 3 != 2;
            if quarter && matches!(face, Face::F | Face::B) {
                assert_eq!(flips, 4);
            } else {
                assert_eq!(flips, 0);
            }
        }
    }
}
