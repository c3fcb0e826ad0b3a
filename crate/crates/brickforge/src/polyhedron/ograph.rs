//! O-graph encoding of a closed simple polyhedron.
//!
//! Every vertex is a cone over the 1-skeleton of a tetrahedron: four slots
//! (half-edge directions) numbered 0..3 and six germs, one per unordered pair
//! of slots. An edge joins two slots and carries three wings. At each end the
//! wings are matched with the three germs containing that slot through a
//! permutation index into [`PERMS`], read against the other slots of the end
//! in ascending order.
//!
//! Vertex-free singular circles are stored separately with the permutation
//! their wings undergo after one turn.

use std::fmt;

use thiserror::Error;

/// The six permutations of three wings, in lexicographic order.
pub const PERMS: [[u8; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

/// Slot pairs indexed by germ number.
pub const GERMS: [(u8, u8); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// The three slots different from `s`, ascending.
pub const OTHERS: [[u8; 3]; 4] = [[1, 2, 3], [0, 2, 3], [0, 1, 3], [0, 1, 2]];

pub fn germ_index(a: u8, b: u8) -> u8 {
    let (i, j) = if a < b { (a, b) } else { (b, a) };
    match (i, j) {
        (0, 1) => 0,
        (0, 2) => 1,
        (0, 3) => 2,
        (1, 2) => 3,
        (1, 3) => 4,
        (2, 3) => 5,
        _ => panic!("not a slot pair: {a},{b}"),
    }
}

/// Position of slot `t` among the other slots of `s`.
pub fn other_index(s: u8, t: u8) -> u8 {
    debug_assert_ne!(s, t);
    if t < s {
        t
    } else {
        t - 1
    }
}

/// The slot complementary to `a`, `b`, `c`.
pub fn fourth(a: u8, b: u8, c: u8) -> u8 {
    6 - a - b - c
}

pub fn perm_index(p: [u8; 3]) -> u8 {
    PERMS.iter().position(|q| *q == p).expect("not a permutation") as u8
}

pub fn perm_inverse(p: u8) -> u8 {
    let q = PERMS[p as usize];
    let mut r = [0u8; 3];
    for (i, &x) in q.iter().enumerate() {
        r[x as usize] = i as u8;
    }
    perm_index(r)
}

/// `compose(a, b)` applies `b` first, then `a`.
pub fn perm_compose(a: u8, b: u8) -> u8 {
    let pa = PERMS[a as usize];
    let pb = PERMS[b as usize];
    perm_index([pa[pb[0] as usize], pa[pb[1] as usize], pa[pb[2] as usize]])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct End {
    pub vertex: u32,
    pub slot: u8,
    pub perm: u8,
}

impl End {
    pub fn new(vertex: usize, slot: u8, perm: u8) -> Self {
        End { vertex: vertex as u32, slot, perm }
    }

    /// Slot reached by wing `w` at this end.
    pub fn wing_slot(&self, w: u8) -> u8 {
        OTHERS[self.slot as usize][PERMS[self.perm as usize][w as usize] as usize]
    }

    /// Wing ending on the germ `{slot, t}`.
    pub fn slot_wing(&self, t: u8) -> u8 {
        let k = other_index(self.slot, t);
        PERMS[perm_inverse(self.perm) as usize][k as usize]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub ends: [End; 2],
}

impl Edge {
    pub fn new(a: End, b: End) -> Self {
        Edge { ends: [a, b] }
    }

    /// Map from the other slots at end `from` to the other slots at the
    /// opposite end, following the wings.
    pub fn transport(&self, from: usize, t: u8) -> u8 {
        let w = self.ends[from].slot_wing(t);
        self.ends[1 - from].wing_slot(w)
    }
}

/// A singular circle with no vertices; wing `w` comes back as `PERMS[perm][w]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Circle {
    pub perm: u8,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SurfaceKind {
    Torus,
    Klein,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SpineKind {
    Theta,
    Sigma,
}

impl fmt::Display for SurfaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SurfaceKind::Torus => "T",
            SurfaceKind::Klein => "K",
        })
    }
}

impl fmt::Display for SpineKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SpineKind::Theta => "theta",
            SpineKind::Sigma => "sigma",
        })
    }
}

/// A marked boundary face, anchored at one of its germs so that the mark
/// survives renumbering of faces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Mark {
    pub vertex: u32,
    pub germ: u8,
    pub surface: SurfaceKind,
    pub spine: SpineKind,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("edge {edge} refers to vertex {vertex} but there are {nv} vertices")]
    VertexOutOfRange { edge: usize, vertex: u32, nv: usize },
    #[error("slot or permutation out of range on edge {0}")]
    BadEnd(usize),
    #[error("slot {slot} of vertex {vertex} is used twice")]
    SlotReused { vertex: u32, slot: u8 },
    #[error("open wing trace at vertex {vertex} slot {slot}")]
    OpenTrace { vertex: u32, slot: u8 },
    #[error("mark refers to a germ outside the polyhedron")]
    BadMark,
    #[error("face data does not describe a special polyhedron: {0}")]
    BadFaces(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialPolyhedron {
    nv: usize,
    edges: Vec<Edge>,
    circles: Vec<Circle>,
    marks: Vec<Mark>,
    slots: Vec<[Option<(u32, u8)>; 4]>,
}

/// One corner of a face: the germ at `vertex` traversed from slot `from` to
/// slot `to`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Corner {
    pub vertex: u32,
    pub from: u8,
    pub to: u8,
}

/// One side of a face boundary.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Step {
    /// Runs along `edge`, leaving through end `from`.
    Edge { edge: u32, from: u8 },
    /// Runs once around a circle on wing `wing`.
    Circle { circle: u32, wing: u8 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub corners: Vec<Corner>,
    pub steps: Vec<Step>,
    /// False when the trace runs through some germ in both directions.
    pub disc: bool,
}

impl Face {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

/// Faces plus the germ-to-face lookup.
#[derive(Clone, Debug)]
pub struct FaceSet {
    pub faces: Vec<Face>,
    pub germ_face: Vec<[u32; 6]>,
    pub circle_face: Vec<[u32; 3]>,
}

impl SpecialPolyhedron {
    pub fn new(nv: usize, edges: Vec<Edge>, circles: Vec<Circle>, marks: Vec<Mark>) -> Result<Self, PolyError> {
        let mut slots = vec![[None; 4]; nv];
        for (i, e) in edges.iter().enumerate() {
            for (k, end) in e.ends.iter().enumerate() {
                if end.vertex as usize >= nv {
                    return Err(PolyError::VertexOutOfRange { edge: i, vertex: end.vertex, nv });
                }
                if end.slot > 3 || end.perm > 5 {
                    return Err(PolyError::BadEnd(i));
                }
                let cell = &mut slots[end.vertex as usize][end.slot as usize];
                if cell.is_some() {
                    return Err(PolyError::SlotReused { vertex: end.vertex, slot: end.slot });
                }
                *cell = Some((i as u32, k as u8));
            }
        }
        if circles.iter().any(|c| c.perm > 5) {
            return Err(PolyError::BadEnd(edges.len()));
        }
        for m in &marks {
            if m.vertex as usize >= nv || m.germ > 5 {
                return Err(PolyError::BadMark);
            }
        }
        Ok(SpecialPolyhedron { nv, edges, circles, marks, slots })
    }

    pub fn num_vertices(&self) -> usize {
        self.nv
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn circles(&self) -> &[Circle] {
        &self.circles
    }

    pub fn marks(&self) -> &[Mark] {
        &self.marks
    }

    pub fn with_marks(&self, marks: Vec<Mark>) -> Result<Self, PolyError> {
        SpecialPolyhedron::new(self.nv, self.edges.clone(), self.circles.clone(), marks)
    }

    /// Edge and end index attached at a slot.
    pub fn slot(&self, v: usize, s: u8) -> Option<(usize, usize)> {
        self.slots[v][s as usize].map(|(e, k)| (e as usize, k as usize))
    }

    pub fn is_complete(&self) -> bool {
        self.slots.iter().all(|s| s.iter().all(Option::is_some))
    }

    /// Neighbour across slot `s`: (vertex, slot, map from the other slots of
    /// `s` to the other slots of the far end).
    pub fn cross(&self, v: usize, s: u8, t: u8) -> Option<(usize, u8, u8)> {
        let (e, k) = self.slot(v, s)?;
        let edge = &self.edges[e];
        let far = edge.ends[1 - k];
        Some((far.vertex as usize, far.slot, edge.transport(k, t)))
    }

    /// Traces every face. Fails on an unattached slot.
    pub fn trace_faces(&self) -> Result<FaceSet, PolyError> {
        let mut germ_face = vec![[u32::MAX; 6]; self.nv];
        let mut faces = Vec::new();
        for v in 0..self.nv {
            for g in 0..6u8 {
                if germ_face[v][g as usize] != u32::MAX {
                    continue;
                }
                let id = faces.len() as u32;
                let (i, j) = GERMS[g as usize];
                let start = Corner { vertex: v as u32, from: i, to: j };
                let mut cur = start;
                let mut corners = Vec::new();
                let mut steps = Vec::new();
                let mut disc = true;
                loop {
                    let cg = germ_index(cur.from, cur.to) as usize;
                    let slot = &mut germ_face[cur.vertex as usize][cg];
                    if *slot == id {
                        disc = false;
                    }
                    *slot = id;
                    corners.push(cur);
                    let (e, k) = self
                        .slot(cur.vertex as usize, cur.to)
                        .ok_or(PolyError::OpenTrace { vertex: cur.vertex, slot: cur.to })?;
                    let edge = &self.edges[e];
                    steps.push(Step::Edge { edge: e as u32, from: k as u8 });
                    let far = edge.ends[1 - k];
                    let t = edge.transport(k, cur.from);
                    cur = Corner { vertex: far.vertex, from: far.slot, to: t };
                    if cur == start {
                        break;
                    }
                }
                faces.push(Face { corners, steps, disc });
            }
        }
        let mut circle_face = vec![[u32::MAX; 3]; self.circles.len()];
        for (c, circle) in self.circles.iter().enumerate() {
            for w in 0..3u8 {
                if circle_face[c][w as usize] != u32::MAX {
                    continue;
                }
                let id = faces.len() as u32;
                let mut steps = Vec::new();
                let mut cur = w;
                loop {
                    circle_face[c][cur as usize] = id;
                    steps.push(Step::Circle { circle: c as u32, wing: cur });
                    cur = PERMS[circle.perm as usize][cur as usize];
                    if cur == w {
                        break;
                    }
                }
                faces.push(Face { corners: Vec::new(), steps, disc: true });
            }
        }
        Ok(FaceSet { faces, germ_face, circle_face })
    }

    /// Traces the single face through a directed germ; works on incomplete
    /// structures as long as the orbit avoids open slots.
    pub fn trace_orbit(&self, start: Corner) -> Result<(Vec<Corner>, Vec<Step>), PolyError> {
        let mut corners = Vec::new();
        let mut steps = Vec::new();
        let mut cur = start;
        loop {
            corners.push(cur);
            let (e, k) = self
                .slot(cur.vertex as usize, cur.to)
                .ok_or(PolyError::OpenTrace { vertex: cur.vertex, slot: cur.to })?;
            let edge = &self.edges[e];
            steps.push(Step::Edge { edge: e as u32, from: k as u8 });
            let far = edge.ends[1 - k];
            cur = Corner { vertex: far.vertex, from: far.slot, to: edge.transport(k, cur.from) };
            if cur == start {
                return Ok((corners, steps));
            }
        }
    }

    /// Number of vertex-to-vertex connected components of the singular
    /// graph, counting each circle as its own component.
    pub fn singular_components(&self) -> usize {
        let mut uf = UnionFind::new(self.nv);
        for e in &self.edges {
            uf.union(e.ends[0].vertex as usize, e.ends[1].vertex as usize);
        }
        uf.count() + self.circles.len()
    }

    pub fn euler_characteristic(&self) -> Result<i64, PolyError> {
        let f = self.trace_faces()?.faces.len() as i64;
        Ok(self.nv as i64 - self.edges.len() as i64 + f)
    }

    /// Renumbers vertices by `order` (new index of old vertex `v` is
    /// `order[v]`) and relabels slots by `slot_maps[v]` (old slot to new).
    /// Wing permutations are rewritten so the structure is unchanged.
    pub fn relabel(&self, order: &[usize], slot_maps: &[[u8; 4]]) -> SpecialPolyhedron {
        let map_end = |end: &End| -> End {
            let v = end.vertex as usize;
            let sm = slot_maps[v];
            let ns = sm[end.slot as usize];
            // wing w reaches old slot t; in new labels it reaches sm[t]
            let mut p = [0u8; 3];
            for w in 0..3u8 {
                let t = end.wing_slot(w);
                p[w as usize] = other_index(ns, sm[t as usize]);
            }
            End { vertex: order[v] as u32, slot: ns, perm: perm_index(p) }
        };
        let edges = self.edges.iter().map(|e| Edge::new(map_end(&e.ends[0]), map_end(&e.ends[1]))).collect();
        let marks = self
            .marks
            .iter()
            .map(|m| {
                let (a, b) = GERMS[m.germ as usize];
                let sm = slot_maps[m.vertex as usize];
                Mark { vertex: order[m.vertex as usize] as u32, germ: germ_index(sm[a as usize], sm[b as usize]), ..*m }
            })
            .collect();
        SpecialPolyhedron::new(self.nv, edges, self.circles.clone(), marks)
            .expect("relabelling preserves well-formedness")
    }

    /// Same structure with every edge stored as (identity, composite).
    pub fn normalized_perms(&self) -> SpecialPolyhedron {
        let edges = self
            .edges
            .iter()
            .map(|e| {
                let comp = perm_compose(e.ends[1].perm, perm_inverse(e.ends[0].perm));
                Edge::new(End { perm: 0, ..e.ends[0] }, End { perm: comp, ..e.ends[1] })
            })
            .collect();
        SpecialPolyhedron::new(self.nv, edges, self.circles.clone(), self.marks.clone()).expect("same incidences")
    }
}

/// Plain union-find with path halving.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
    comps: usize,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), comps: n }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        self.comps -= 1;
        true
    }

    pub fn count(&self) -> usize {
        self.comps
    }
}

/// Union-find that also tracks a parity bit relative to the root.
#[derive(Clone, Debug)]
pub struct ParityUnionFind {
    parent: Vec<usize>,
    parity: Vec<u8>,
}

impl ParityUnionFind {
    pub fn new(n: usize) -> Self {
        ParityUnionFind { parent: (0..n).collect(), parity: vec![0; n] }
    }

    pub fn find(&mut self, x: usize) -> (usize, u8) {
        let mut path = Vec::new();
        let mut cur = x;
        while self.parent[cur] != cur {
            path.push(cur);
            cur = self.parent[cur];
        }
        let root = cur;
        // recompute parities from the top of the path down
        for &node in path.iter().rev() {
            let p = self.parent[node];
            if p != root {
                self.parity[node] ^= self.parity[p];
            }
            self.parent[node] = root;
        }
        (root, if x == root { 0 } else { self.parity[x] })
    }

    /// Requires parity(a) xor parity(b) == rel. Returns false on conflict.
    pub fn relate(&mut self, a: usize, b: usize, rel: u8) -> bool {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        if ra == rb {
            return pa ^ pb == rel;
        }
        self.parent[ra] = rb;
        self.parity[ra] = pa ^ pb ^ rel;
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perm_tables_are_consistent() {
        for p in 0..6u8 {
            assert_eq!(perm_compose(p, perm_inverse(p)), 0);
            assert_eq!(perm_compose(perm_inverse(p), p), 0);
        }
        for s in 0..4u8 {
            for (k, &t) in OTHERS[s as usize].iter().enumerate() {
                assert_eq!(other_index(s, t) as usize, k);
            }
        }
        for (g, &(a, b)) in GERMS.iter().enumerate() {
            assert_eq!(germ_index(a, b) as usize, g);
            assert_eq!(germ_index(b, a) as usize, g);
        }
    }

    #[test]
    fn end_wing_maps_invert() {
        for slot in 0..4u8 {
            for perm in 0..6u8 {
                let e = End::new(0, slot, perm);
                for w in 0..3u8 {
                    assert_eq!(e.slot_wing(e.wing_slot(w)), w);
                }
            }
        }
    }

    #[test]
    fn parity_union_find_detects_odd_cycles() {
        let mut uf = ParityUnionFind::new(3);
        assert!(uf.relate(0, 1, 1));
        assert!(uf.relate(1, 2, 1));
        assert!(uf.relate(0, 2, 0));
        assert!(!uf.relate(0, 2, 1));
    }

    #[test]
    fn single_unglued_vertex_has_open_trace() {
        let p = SpecialPolyhedron::new(1, vec![], vec![], vec![]).unwrap();
        assert!(matches!(p.trace_faces(), Err(PolyError::OpenTrace { .. })));
    }
}
