//! Handle thickening: a ball per vertex, a drum per edge, a plate per face.
//!
//! The boundary of the thickening is described dually. Its 0-cells are the
//! four regions around each vertex (region `l` is the triangle opposite slot
//! `l`), its 1-cells are the three regions between consecutive wings of an
//! edge, and its 2-cells are the two sides of each face.

use super::ograph::{other_index, FaceSet, ParityUnionFind, SpecialPolyhedron, Step, UnionFind, GERMS, OTHERS, PERMS};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SurfaceType {
    Sphere,
    Torus,
    Klein,
    ProjectivePlane,
    Other { euler: i64, orientable: bool },
}

impl SurfaceType {
    pub fn classify(euler: i64, orientable: bool) -> Self {
        match (euler, orientable) {
            (2, true) => SurfaceType::Sphere,
            (0, true) => SurfaceType::Torus,
            (0, false) => SurfaceType::Klein,
            (1, false) => SurfaceType::ProjectivePlane,
            _ => SurfaceType::Other { euler, orientable },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryComponent {
    pub euler: i64,
    pub orientable: bool,
    pub kind: SurfaceType,
    pub cells0: usize,
    pub cells1: usize,
    pub cells2: usize,
}

#[derive(Clone, Debug)]
pub struct Thickening {
    pub components: Vec<BoundaryComponent>,
    /// Component index of every 0-cell, indexed as `4 * vertex + region`
    /// and then `4 * nv + 3 * circle + region` for circles.
    pub cell0_component: Vec<usize>,
    /// Component index of each face side; side 0 starts on the smaller
    /// region label of the face's first corner.
    pub side_component: Vec<[usize; 2]>,
    /// Whether the thickened 3-manifold is orientable.
    pub orientable: bool,
}

impl Thickening {
    pub fn surface_types(&self) -> Vec<SurfaceType> {
        let mut v: Vec<_> = self.components.iter().map(|c| c.kind).collect();
        v.sort();
        v
    }

    pub fn component_of_region(&self, vertex: usize, region: u8) -> usize {
        self.cell0_component[4 * vertex + region as usize]
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ThickenError {
    #[error("plate over face {face} is attached along a Moebius band")]
    NotThickenable { face: usize },
    #[error("polyhedron is not standard: {0}")]
    NotStandard(String),
}

/// Side labels along one traversal of a face, starting from `side`.
/// Returns, per step, the 1-cell index with its direction, the 0-cell
/// touched before the step, and the final label.
pub struct SideWalk {
    pub cells1: Vec<(usize, i8)>,
    pub cells0: Vec<usize>,
    pub returns_to: u8,
}

pub fn walk_side(poly: &SpecialPolyhedron, faces: &FaceSet, face: usize, side: u8) -> SideWalk {
    let f = &faces.faces[face];
    let nv = poly.num_vertices();
    let ne = poly.edges().len();
    let mut cells1 = Vec::with_capacity(f.steps.len());
    let mut cells0 = Vec::with_capacity(f.steps.len());
    let mut s = side;
    for (idx, step) in f.steps.iter().enumerate() {
        match *step {
            Step::Edge { edge, from } => {
                let c = f.corners[idx];
                cells0.push(4 * c.vertex as usize + s as usize);
                let e = &poly.edges()[edge as usize];
                let (region0, dir) = if from == 0 { (s, 1) } else { (e.transport(1, s), -1) };
                cells1.push((3 * edge as usize + other_index(e.ends[0].slot, region0) as usize, dir));
                s = e.transport(from as usize, s);
            }
            Step::Circle { circle, wing: _ } => {
                cells0.push(4 * nv + 3 * circle as usize + s as usize);
                cells1.push((3 * ne + 3 * circle as usize + s as usize, 1));
                s = PERMS[poly.circles()[circle as usize].perm as usize][s as usize];
            }
        }
    }
    SideWalk { cells1, cells0, returns_to: s }
}

/// The two side labels available at the start of a face.
pub fn face_sides(faces: &FaceSet, face: usize) -> [u8; 2] {
    let f = &faces.faces[face];
    match f.steps[0] {
        Step::Edge { .. } => {
            let c = f.corners[0];
            let mut rest = (0..4u8).filter(|&x| x != c.from && x != c.to);
            let a = rest.next().unwrap();
            let b = rest.next().unwrap();
            [a, b]
        }
        Step::Circle { wing, .. } => {
            let mut rest = (0..3u8).filter(|&x| x != wing);
            [rest.next().unwrap(), rest.next().unwrap()]
        }
    }
}

/// Builds the thickening, failing when some plate would be twisted.
pub fn thicken(poly: &SpecialPolyhedron) -> Result<Thickening, ThickenError> {
    let faces = poly.trace_faces().map_err(|e| ThickenError::NotStandard(e.to_string()))?;
    thicken_with(poly, &faces)
}

pub fn thicken_with(poly: &SpecialPolyhedron, faces: &FaceSet) -> Result<Thickening, ThickenError> {
    if let Some(i) = faces.faces.iter().position(|f| !f.disc) {
        return Err(ThickenError::NotStandard(format!("face {i} is not a disc")));
    }
    let nv = poly.num_vertices();
    let ne = poly.edges().len();
    let nc = poly.circles().len();
    let n0 = 4 * nv + 3 * nc;
    let n1 = 3 * ne + 3 * nc;
    let nf = faces.faces.len();

    let mut walks = Vec::with_capacity(nf);
    for fi in 0..nf {
        let sides = face_sides(faces, fi);
        let w0 = walk_side(poly, faces, fi, sides[0]);
        if w0.returns_to != sides[0] {
            return Err(ThickenError::NotThickenable { face: fi });
        }
        let w1 = walk_side(poly, faces, fi, sides[1]);
        walks.push([w0, w1]);
    }

    // 0-cells glued by 1-cells
    let mut uf = UnionFind::new(n0);
    let mut used0 = vec![false; n0];
    for edge in poly.edges() {
        let a = edge.ends[0];
        let b = edge.ends[1];
        for &z in &OTHERS[a.slot as usize] {
            let zz = edge.transport(0, z);
            let c0 = 4 * a.vertex as usize + z as usize;
            let c1 = 4 * b.vertex as usize + zz as usize;
            uf.union(c0, c1);
            used0[c0] = true;
            used0[c1] = true;
        }
    }
    for (c, circle) in poly.circles().iter().enumerate() {
        for r in 0..3u8 {
            let rr = PERMS[circle.perm as usize][r as usize];
            let c0 = 4 * nv + 3 * c + r as usize;
            let c1 = 4 * nv + 3 * c + rr as usize;
            uf.union(c0, c1);
            used0[c0] = true;
            used0[c1] = true;
        }
    }

    // orientation parity over face sides
    let mut inc: Vec<Vec<(usize, i8)>> = vec![Vec::new(); n1];
    for (fi, pair) in walks.iter().enumerate() {
        for (side, w) in pair.iter().enumerate() {
            for &(c1, d) in &w.cells1 {
                inc[c1].push((2 * fi + side, d));
            }
        }
    }
    let mut puf = ParityUnionFind::new(2 * nf);
    let mut bad_roots = Vec::new();
    for (c1, list) in inc.iter().enumerate() {
        if list.len() != 2 {
            return Err(ThickenError::NotStandard(format!("boundary 1-cell {c1} has {} incidences", list.len())));
        }
        let (a, da) = list[0];
        let (b, db) = list[1];
        let rel = if da == db { 1 } else { 0 };
        if !puf.relate(a, b, rel) {
            bad_roots.push(c1);
        }
    }

    // component bookkeeping
    let mut root_index = std::collections::HashMap::new();
    let mut cell0_component = vec![usize::MAX; n0];
    let mut comps: Vec<BoundaryComponent> = Vec::new();
    for c in 0..n0 {
        if !used0[c] {
            continue;
        }
        let r = uf.find(c);
        let idx = *root_index.entry(r).or_insert_with(|| {
            comps.push(BoundaryComponent {
                euler: 0,
                orientable: true,
                kind: SurfaceType::Sphere,
                cells0: 0,
                cells1: 0,
                cells2: 0,
            });
            comps.len() - 1
        });
        cell0_component[c] = idx;
        comps[idx].cells0 += 1;
    }
    let cell1_first0 = |c1: usize| -> usize {
        if c1 < 3 * ne {
            let e = &poly.edges()[c1 / 3];
            let z = OTHERS[e.ends[0].slot as usize][c1 % 3];
            4 * e.ends[0].vertex as usize + z as usize
        } else {
            let k = c1 - 3 * ne;
            4 * nv + k
        }
    };
    for c1 in 0..n1 {
        comps[cell0_component[cell1_first0(c1)]].cells1 += 1;
    }
    let mut side_component = vec![[0usize; 2]; nf];
    for (fi, pair) in walks.iter().enumerate() {
        for (side, w) in pair.iter().enumerate() {
            let comp = cell0_component[w.cells0[0]];
            side_component[fi][side] = comp;
            comps[comp].cells2 += 1;
        }
    }
    for c1 in bad_roots {
        let comp = cell0_component[cell1_first0(c1)];
        comps[comp].orientable = false;
    }
    for c in comps.iter_mut() {
        c.euler = c.cells0 as i64 - c.cells1 as i64 + c.cells2 as i64;
        c.kind = SurfaceType::classify(c.euler, c.orientable);
    }

    Ok(Thickening { components: comps, cell0_component, side_component, orientable: manifold_orientable(poly) })
}

/// Orientability of the thickened manifold.
///
/// Each vertex ball carries the orientation for which the cyclic order of
/// slots `(a, b, c)` seen from slot `i` is positive when `(i, a, b, c)` is an
/// even permutation. An edge preserves orientation when its wing map sends
/// that cyclic order at one end to the reversed cyclic order at the other.
pub fn manifold_orientable(poly: &SpecialPolyhedron) -> bool {
    let nv = poly.num_vertices();
    let nc = poly.circles().len();
    let mut puf = ParityUnionFind::new(nv + nc);
    for e in poly.edges() {
        let a = e.ends[0];
        let [x, y, z] = positive_cycle(a.slot);
        let images = [e.transport(0, x), e.transport(0, y), e.transport(0, z)];
        let b = e.ends[1];
        let same = cyclic_sign(b.slot, images);
        // an orientation-compatible gluing reverses the cyclic order
        let rel = if same { 1 } else { 0 };
        if !puf.relate(a.vertex as usize, b.vertex as usize, rel) {
            return false;
        }
    }
    // a circle keeps the triod cyclic order iff its permutation is even
    poly.circles().iter().all(|c| matches!(c.perm, 0 | 3 | 4))
}

fn positive_cycle(i: u8) -> [u8; 3] {
    let o = OTHERS[i as usize];
    if is_even(&[i, o[0], o[1], o[2]]) {
        o
    } else {
        [o[0], o[2], o[1]]
    }
}

fn cyclic_sign(i: u8, seq: [u8; 3]) -> bool {
    is_even(&[i, seq[0], seq[1], seq[2]])
}

fn is_even(p: &[u8; 4]) -> bool {
    let mut inv = 0;
    for a in 0..4 {
        for b in a + 1..4 {
            if p[a] > p[b] {
                inv += 1;
            }
        }
    }
    inv % 2 == 0
}

/// Germ labels of the four regions of a vertex: region `l` is bounded by the
/// germs that avoid slot `l`.
pub fn region_germs(l: u8) -> [u8; 3] {
    let mut out = [0u8; 3];
    let mut k = 0;
    for (g, &(a, b)) in GERMS.iter().enumerate() {
        if a != l && b != l {
            out[k] = g as u8;
            k += 1;
        }
    }
    out
}
