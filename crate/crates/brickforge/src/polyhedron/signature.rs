//! Canonical signatures.
//!
//! A root is a vertex together with a relabelling of its four slots. From a
//! root, labels are transported across edges breadth first: the far end of
//! an edge receives the label of the near slot, and each far germ receives
//! the label of the near germ it is glued to. Only the root carries a free
//! choice, so there are `24 * v` codes per component and the signature is
//! the least of them.

use std::cmp::Ordering;
use std::fmt;

use super::ograph::{
    germ_index, other_index, perm_index, Circle, Edge, End, Mark, SpecialPolyhedron, SpineKind, SurfaceKind, UnionFind,
    GERMS, OTHERS,
};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalSignature(pub Vec<u8>);

impl CanonicalSignature {
    pub fn to_hex(&self) -> String {
        hex::encode(&self.0)
    }

    pub fn from_hex(s: &str) -> Result<Self, hex::FromHexError> {
        hex::decode(s).map(CanonicalSignature)
    }
}

impl fmt::Display for CanonicalSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

/// All 24 slot relabellings.
pub(crate) fn all_slot_perms() -> Vec<[u8; 4]> {
    let mut out = Vec::with_capacity(24);
    for a in 0..4u8 {
        for b in 0..4u8 {
            for c in 0..4u8 {
                for d in 0..4u8 {
                    let p = [a, b, c, d];
                    let mut seen = [false; 4];
                    if p.iter().all(|&x| !std::mem::replace(&mut seen[x as usize], true)) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

pub(crate) fn mark_code(surface: SurfaceKind, spine: SpineKind) -> u8 {
    match (surface, spine) {
        (SurfaceKind::Torus, SpineKind::Theta) => 1,
        (SurfaceKind::Klein, SpineKind::Theta) => 2,
        (SurfaceKind::Klein, SpineKind::Sigma) => 3,
        (SurfaceKind::Torus, SpineKind::Sigma) => 4,
    }
}

pub(crate) fn mark_from_code(code: u8) -> Option<(SurfaceKind, SpineKind)> {
    Some(match code {
        1 => (SurfaceKind::Torus, SpineKind::Theta),
        2 => (SurfaceKind::Klein, SpineKind::Theta),
        3 => (SurfaceKind::Klein, SpineKind::Sigma),
        4 => (SurfaceKind::Torus, SpineKind::Sigma),
        _ => return None,
    })
}

/// Per-vertex, per-germ mark tags.
fn germ_tags(poly: &SpecialPolyhedron) -> Vec<[u8; 6]> {
    let mut tags = vec![[0u8; 6]; poly.num_vertices()];
    if poly.marks().is_empty() {
        return tags;
    }
    let faces = match poly.trace_faces() {
        Ok(f) => f,
        Err(_) => return tags,
    };
    for m in poly.marks() {
        let fid = faces.germ_face[m.vertex as usize][m.germ as usize];
        let code = mark_code(m.surface, m.spine);
        for c in &faces.faces[fid as usize].corners {
            tags[c.vertex as usize][germ_index(c.from, c.to) as usize] = code;
        }
    }
    tags
}

struct Coder<'a> {
    poly: &'a SpecialPolyhedron,
    tags: &'a [[u8; 6]],
    label: Vec<[u8; 4]>,
    inv: Vec<[u8; 4]>,
    index: Vec<u32>,
    order: Vec<usize>,
}

impl<'a> Coder<'a> {
    fn new(poly: &'a SpecialPolyhedron, tags: &'a [[u8; 6]]) -> Self {
        let n = poly.num_vertices();
        Coder {
            poly,
            tags,
            label: vec![[0; 4]; n],
            inv: vec![[0; 4]; n],
            index: vec![u32::MAX; n],
            order: Vec::with_capacity(n),
        }
    }

    fn reset(&mut self) {
        for &v in &self.order {
            self.index[v] = u32::MAX;
        }
        self.order.clear();
    }

    fn discover(&mut self, v: usize, label: [u8; 4]) {
        let mut inv = [0u8; 4];
        for s in 0..4 {
            inv[label[s] as usize] = s as u8;
        }
        self.label[v] = label;
        self.inv[v] = inv;
        self.index[v] = self.order.len() as u32;
        self.order.push(v);
    }

    /// Emits the code for one root, stopping as soon as it exceeds `best`.
    /// Returns the ordering relative to `best` (Less means `out` is a new best).
    fn run(&mut self, root: usize, sigma: [u8; 4], best: Option<&[u8]>, out: &mut Vec<u8>) -> Ordering {
        self.reset();
        out.clear();
        self.discover(root, sigma);
        let mut state = Ordering::Equal;
        let mut head = 0;
        let push = |out: &mut Vec<u8>, byte: u8, state: &mut Ordering| -> bool {
            let pos = out.len();
            out.push(byte);
            if *state == Ordering::Equal {
                if let Some(b) = best {
                    if pos < b.len() {
                        *state = byte.cmp(&b[pos]);
                    } else {
                        *state = Ordering::Greater;
                    }
                }
            }
            *state != Ordering::Greater
        };
        while head < self.order.len() {
            let x = self.order[head];
            head += 1;
            for a in 0..4u8 {
                let s = self.inv[x][a as usize];
                let (e, k) = match self.poly.slot(x, s) {
                    Some(p) => p,
                    None => {
                        if !push(out, 0xff, &mut state) {
                            return Ordering::Greater;
                        }
                        continue;
                    }
                };
                let edge = &self.poly.edges()[e];
                let far = edge.ends[1 - k];
                let w = far.vertex as usize;
                if self.index[w] == u32::MAX {
                    let mut lab = [0u8; 4];
                    lab[far.slot as usize] = a;
                    for &t in &OTHERS[s as usize] {
                        lab[edge.transport(k, t) as usize] = self.label[x][t as usize];
                    }
                    self.discover(w, lab);
                }
                let b = self.label[w][far.slot as usize];
                let mut p = [0u8; 3];
                for &nb in &OTHERS[a as usize] {
                    let t = self.inv[x][nb as usize];
                    let t2 = edge.transport(k, t);
                    let b2 = self.label[w][t2 as usize];
                    p[other_index(a, nb) as usize] = other_index(b, b2);
                }
                let idx = self.index[w];
                for byte in [(idx >> 8) as u8, idx as u8, b, perm_index(p)] {
                    if !push(out, byte, &mut state) {
                        return Ordering::Greater;
                    }
                }
            }
        }
        for &x in &self.order.clone() {
            for g in 0..6 {
                let (a, b) = GERMS[g];
                let og = germ_index(self.inv[x][a as usize], self.inv[x][b as usize]);
                if !push(out, self.tags[x][og as usize], &mut state) {
                    return Ordering::Greater;
                }
            }
        }
        if state == Ordering::Equal {
            if let Some(b) = best {
                if out.len() < b.len() {
                    state = Ordering::Less;
                }
            }
        }
        if best.is_none() {
            Ordering::Less
        } else {
            state
        }
    }
}

/// Least code of a connected component containing `vertices`.
fn component_code(poly: &SpecialPolyhedron, tags: &[[u8; 6]], vertices: &[usize]) -> Vec<u8> {
    let sigmas = all_slot_perms();
    let mut coder = Coder::new(poly, tags);
    let mut best: Option<Vec<u8>> = None;
    let mut buf = Vec::new();
    for &v in vertices {
        for sigma in &sigmas {
            let ord = coder.run(v, *sigma, best.as_deref(), &mut buf);
            if ord == Ordering::Less {
                best = Some(buf.clone());
            }
        }
    }
    best.unwrap_or_default()
}

/// Canonical class of a circle's wing permutation: 0 identity, 1 a
/// transposition, 2 a three-cycle.
fn circle_class(c: &Circle) -> u8 {
    match c.perm {
        0 => 0,
        3 | 4 => 2,
        _ => 1,
    }
}

pub fn canonical_signature(poly: &SpecialPolyhedron) -> CanonicalSignature {
    let tags = germ_tags(poly);
    let n = poly.num_vertices();
    let mut uf = UnionFind::new(n);
    for e in poly.edges() {
        uf.union(e.ends[0].vertex as usize, e.ends[1].vertex as usize);
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for v in 0..n {
        groups.entry(uf.find(v)).or_default().push(v);
    }
    let mut codes: Vec<Vec<u8>> = groups.values().map(|vs| component_code(poly, &tags, vs)).collect();
    codes.sort();
    let mut out = Vec::new();
    out.extend_from_slice(&(n as u16).to_be_bytes());
    out.extend_from_slice(&(poly.edges().len() as u16).to_be_bytes());
    out.push(codes.len() as u8);
    let mut circles: Vec<u8> = poly.circles().iter().map(circle_class).collect();
    circles.sort();
    out.push(circles.len() as u8);
    out.extend_from_slice(&circles);
    for c in codes {
        out.extend_from_slice(&(c.len() as u16).to_be_bytes());
        out.extend_from_slice(&c);
    }
    CanonicalSignature(out)
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
#[error("malformed signature")]
pub struct SignatureDecodeError;

/// Rebuilds a polyhedron (in canonical labelling) from its signature.
pub fn decode_signature(sig: &CanonicalSignature) -> Result<SpecialPolyhedron, SignatureDecodeError> {
    let b = &sig.0;
    let mut pos = 0usize;
    let mut take = |k: usize| -> Result<&[u8], SignatureDecodeError> {
        if pos + k > b.len() {
            return Err(SignatureDecodeError);
        }
        let s = &b[pos..pos + k];
        pos += k;
        Ok(s)
    };
    let h = take(4)?;
    let n = u16::from_be_bytes([h[0], h[1]]) as usize;
    let _ne = u16::from_be_bytes([h[2], h[3]]) as usize;
    let ncomp = take(1)?[0] as usize;
    let ncirc = take(1)?[0] as usize;
    let circles: Vec<Circle> = take(ncirc)?.iter().map(|&c| Circle { perm: [0u8, 1, 3][c.min(2) as usize] }).collect();
    let mut edges = Vec::new();
    let mut tags_all: Vec<(usize, [u8; 6])> = Vec::new();
    let mut offset = 0usize;
    for _ in 0..ncomp {
        let lb = take(2)?;
        let len = u16::from_be_bytes([lb[0], lb[1]]) as usize;
        let code = take(len)?.to_vec();
        if len % 22 != 0 {
            return Err(SignatureDecodeError);
        }
        let k = len / 22;
        let mut seen = std::collections::HashSet::new();
        for x in 0..k {
            for a in 0..4u8 {
                let base = x * 16 + a as usize * 4;
                let idx = u16::from_be_bytes([code[base], code[base + 1]]) as usize;
                let bl = code[base + 2];
                let p = code[base + 3];
                if idx >= k || bl > 3 || p > 5 {
                    return Err(SignatureDecodeError);
                }
                let key_a = (x, a);
                let key_b = (idx, bl);
                if seen.contains(&key_b) {
                    continue;
                }
                seen.insert(key_a);
                seen.insert(key_b);
                // composite is encoded as a perm from sorted others(a) to sorted others(b)
                edges.push(Edge::new(End::new(offset + x, a, 0), End::new(offset + idx, bl, p)));
            }
        }
        for x in 0..k {
            let base = k * 16 + x * 6;
            let mut t = [0u8; 6];
            t.copy_from_slice(&code[base..base + 6]);
            tags_all.push((offset + x, t));
        }
        offset += k;
    }
    if offset != n {
        return Err(SignatureDecodeError);
    }
    let plain = SpecialPolyhedron::new(n, edges.clone(), circles.clone(), vec![]).map_err(|_| SignatureDecodeError)?;
    let faces = plain.trace_faces().map_err(|_| SignatureDecodeError)?;
    let mut marks = Vec::new();
    let mut done = std::collections::HashSet::new();
    for (v, t) in tags_all {
        for g in 0..6 {
            if t[g] != 0 {
                let f = faces.germ_face[v][g];
                if done.insert(f) {
                    let (surface, spine) = mark_from_code(t[g]).ok_or(SignatureDecodeError)?;
                    marks.push(Mark { vertex: v as u32, germ: g as u8, surface, spine });
                }
            }
        }
    }
    SpecialPolyhedron::new(n, edges, circles, marks).map_err(|_| SignatureDecodeError)
}
