//! Closures of boundary gadgets and free vertices into complete o-graphs.
//!
//! A candidate has `n` interior vertices with four free slots each and one
//! gadget per boundary component with its two `P`-slots free. Free slots are
//! paired up into edges (first as a multigraph on interior vertices and
//! gadget ports, reduced by the obvious symmetries), then every edge gets
//! one of six wing bijections. The search runs on the dual triangulation:
//! each vertex is a tetrahedron whose corner `l` is region `l`, and each
//! edge glues two of its triangles. Tetrahedron edges are faces of the
//! polyhedron, tetrahedron corners are regions of the thickening.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::polyhedron::{
    boundary_matches_marks, canonical_signature, germ_index, marked_hexagons, thicken_with, CanonicalSignature, Edge,
    End, SpecialPolyhedron, SpineKind, SurfaceKind, OTHERS,
};
use crate::surfaces::{gadget_mark, Gadget, PSLOT};

/// The boundary kinds that admit a spine.
pub const BOUNDARY_KINDS: [(SurfaceKind, SpineKind); 3] = [
    (SurfaceKind::Torus, SpineKind::Theta),
    (SurfaceKind::Klein, SpineKind::Theta),
    (SurfaceKind::Klein, SpineKind::Sigma),
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClosureOptions {
    /// Forbid edges joining two boundary spines.
    pub kernel: bool,
    /// Keep only closures that thicken to a sphere plus the marked surfaces.
    pub skeleta_only: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum Point {
    Port(u8),
    Node(u8),
}

type Multigraph = Vec<(Point, Point)>;

/// Small union-find with parity, cheap to clone at every search level.
#[derive(Clone)]
struct Dsu {
    parent: Vec<u16>,
    parity: Vec<u8>,
    classes: usize,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu { parent: (0..n as u16).collect(), parity: vec![0; n], classes: n }
    }

    fn find(&self, mut x: usize) -> (usize, u8) {
        let mut p = 0;
        while self.parent[x] as usize != x {
            p ^= self.parity[x];
            x = self.parent[x] as usize;
        }
        (x, p)
    }

    /// False on a parity contradiction.
    fn relate(&mut self, a: usize, b: usize, rel: u8) -> bool {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        if ra == rb {
            return pa ^ pb == rel;
        }
        self.parent[ra] = rb as u16;
        self.parity[ra] = pa ^ pb ^ rel;
        self.classes -= 1;
        true
    }
}

struct Frame {
    nv: usize,
    fixed: Vec<Edge>,
    open: Vec<[(usize, u8); 2]>,
    marks: Vec<crate::polyhedron::Mark>,
    faces_needed: usize,
    regions_needed: usize,
}

/// Applies an edge to the dual-triangulation bookkeeping.
fn glue(e: &Edge, tet: &mut Dsu, reg: &mut Dsu, check_parity: bool) -> bool {
    let [x, y] = e.ends;
    let xv = x.vertex as usize;
    let yv = y.vertex as usize;
    let o = OTHERS[x.slot as usize];
    for i in 0..3 {
        reg.relate(4 * xv + o[i] as usize, 4 * yv + e.transport(0, o[i]) as usize, 0);
        for j in i + 1..3 {
            let (a, b) = (o[i], o[j]);
            let (ta, tb) = (e.transport(0, a), e.transport(0, b));
            let rel = u8::from(ta > tb) & u8::from(check_parity);
            let ok = tet.relate(6 * xv + germ_index(a, b) as usize, 6 * yv + germ_index(ta, tb) as usize, rel);
            if !ok && check_parity {
                return false;
            }
        }
    }
    true
}

fn gadget_of(kind: (SurfaceKind, SpineKind)) -> Gadget {
    Gadget::standard(kind.0, kind.1).expect("allowed boundary kind")
}

fn port_swappable(g: &Gadget) -> bool {
    g.automorphisms().iter().any(|m| m.swap)
}

fn multigraphs(n: usize, kinds: &[(SurfaceKind, SpineKind)], kernel: bool) -> Vec<Multigraph> {
    let k = kinds.len();
    let mut out = Vec::new();
    let mut port_used = vec![false; 2 * k];
    let mut cap = vec![4u8; n];
    let mut cur = Vec::new();
    fn rec(
        n: usize,
        kernel: bool,
        port_used: &mut Vec<bool>,
        cap: &mut Vec<u8>,
        cur: &mut Multigraph,
        out: &mut Vec<Multigraph>,
    ) {
        let first = if let Some(p) = port_used.iter().position(|u| !u) {
            Point::Port(p as u8)
        } else if let Some(v) = cap.iter().position(|&c| c > 0) {
            Point::Node(v as u8)
        } else {
            out.push(cur.clone());
            return;
        };
        match first {
            Point::Port(p) => {
                port_used[p as usize] = true;
                if !kernel || n == 0 {
                    for q in p as usize + 1..port_used.len() {
                        if !port_used[q] {
                            port_used[q] = true;
                            cur.push((first, Point::Port(q as u8)));
                            rec(n, kernel, port_used, cap, cur, out);
                            cur.pop();
                            port_used[q] = false;
                        }
                    }
                }
                for v in 0..n {
                    if cap[v] > 0 {
                        cap[v] -= 1;
                        cur.push((first, Point::Node(v as u8)));
                        rec(n, kernel, port_used, cap, cur, out);
                        cur.pop();
                        cap[v] += 1;
                    }
                }
                port_used[p as usize] = false;
            }
            Point::Node(v) => {
                let v = v as usize;
                cap[v] -= 1;
                for w in v..n {
                    if cap[w] > 0 {
                        cap[w] -= 1;
                        cur.push((first, Point::Node(w as u8)));
                        rec(n, kernel, port_used, cap, cur, out);
                        cur.pop();
                        cap[w] += 1;
                    }
                }
                cap[v] += 1;
            }
        }
    }
    rec(n, kernel, &mut port_used, &mut cap, &mut cur, &mut out);
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Least relabelled edge list over interior-vertex permutations, gadget
/// permutations within a kind, and port swaps of symmetric gadgets.
fn canonical_multigraph(
    g: &Multigraph,
    n: usize,
    kinds: &[(SurfaceKind, SpineKind)],
    swappable: &[bool],
) -> Multigraph {
    let k = kinds.len();
    let node_perms = permutations(n);
    let gadget_perms: Vec<Vec<usize>> =
        permutations(k).into_iter().filter(|p| (0..k).all(|i| kinds[p[i]] == kinds[i])).collect();
    let swap_sets: Vec<Vec<bool>> = (0..1u32 << k)
        .filter(|m| (0..k).all(|i| m >> i & 1 == 0 || swappable[i]))
        .map(|m| (0..k).map(|i| m >> i & 1 == 1).collect())
        .collect();
    let mut best: Option<Multigraph> = None;
    for np in &node_perms {
        for gp in &gadget_perms {
            for sw in &swap_sets {
                let map = |p: Point| match p {
                    Point::Node(v) => Point::Node(np[v as usize] as u8),
                    Point::Port(q) => {
                        let gi = q as usize / 2;
                        let side = (q as usize % 2) ^ usize::from(sw[gi]);
                        Point::Port((2 * gp[gi] + side) as u8)
                    }
                };
                let mut h: Multigraph = g
                    .iter()
                    .map(|&(a, b)| {
                        let (a, b) = (map(a), map(b));
                        if a <= b {
                            (a, b)
                        } else {
                            (b, a)
                        }
                    })
                    .collect();
                h.sort();
                if best.as_ref().is_none_or(|b| h < *b) {
                    best = Some(h);
                }
            }
        }
    }
    best.unwrap_or_default()
}

fn frame_for(g: &Multigraph, n: usize, kinds: &[(SurfaceKind, SpineKind)], gadgets: &[Gadget]) -> Frame {
    let k = kinds.len();
    let nv = n + 2 * k;
    let mut fixed = Vec::new();
    let mut marks = Vec::new();
    for (i, gd) in gadgets.iter().enumerate() {
        let (u, v) = (n + 2 * i, n + 2 * i + 1);
        fixed.extend(gd.placed(u, v));
        marks.push(gadget_mark(gd, u, v));
    }
    let mut next_slot = vec![0u8; n];
    let mut resolve = |p: Point| -> (usize, u8) {
        match p {
            Point::Port(q) => (n + q as usize, PSLOT),
            Point::Node(v) => {
                let s = next_slot[v as usize];
                next_slot[v as usize] += 1;
                (v as usize, s)
            }
        }
    };
    let open = g.iter().map(|&(a, b)| [resolve(a), resolve(b)]).collect();
    Frame { nv, fixed, open, marks, faces_needed: nv + 1, regions_needed: 1 + k }
}

/// Every closure of `n` free vertices and the given boundary gadgets,
/// deduplicated by signature and sorted by it.
pub fn closures(n: usize, kinds: &[(SurfaceKind, SpineKind)], opts: ClosureOptions) -> Vec<SpecialPolyhedron> {
    let gadgets: Vec<Gadget> = kinds.iter().map(|&k| gadget_of(k)).collect();
    let swappable: Vec<bool> = gadgets.iter().map(port_swappable).collect();
    let mut graphs: Vec<Multigraph> =
        multigraphs(n, kinds, opts.kernel).iter().map(|g| canonical_multigraph(g, n, kinds, &swappable)).collect();
    graphs.sort();
    graphs.dedup();
    let found: Vec<BTreeMap<CanonicalSignature, SpecialPolyhedron>> = graphs
        .par_iter()
        .map(|g| {
            let frame = frame_for(g, n, kinds, &gadgets);
            search(&frame, opts.skeleta_only)
        })
        .collect();
    let mut all = BTreeMap::new();
    for m in found {
        all.extend(m);
    }
    all.into_values().collect()
}

fn search(frame: &Frame, skeleta_only: bool) -> BTreeMap<CanonicalSignature, SpecialPolyhedron> {
    let mut tet = Dsu::new(6 * frame.nv);
    let mut reg = Dsu::new(4 * frame.nv);
    let mut out = BTreeMap::new();
    for e in &frame.fixed {
        if !glue(e, &mut tet, &mut reg, skeleta_only) {
            return out;
        }
    }
    let mut chosen = Vec::with_capacity(frame.open.len());
    dfs(frame, skeleta_only, &tet, &reg, &mut chosen, &mut out);
    out
}

fn dfs(
    frame: &Frame,
    skeleta_only: bool,
    tet: &Dsu,
    reg: &Dsu,
    chosen: &mut Vec<Edge>,
    out: &mut BTreeMap<CanonicalSignature, SpecialPolyhedron>,
) {
    let depth = chosen.len();
    if depth == frame.open.len() {
        let mut edges = frame.fixed.clone();
        edges.extend_from_slice(chosen);
        let Ok(poly) = SpecialPolyhedron::new(frame.nv, edges, vec![], frame.marks.clone()) else {
            return;
        };
        if skeleta_only && !is_skeleton(&poly) {
            return;
        }
        out.entry(canonical_signature(&poly)).or_insert(poly);
        return;
    }
    let [(a, s), (b, t)] = frame.open[depth];
    for c in 0..6u8 {
        let e = Edge::new(End::new(a, s, 0), End::new(b, t, c));
        let mut tet2 = tet.clone();
        let mut reg2 = reg.clone();
        if !glue(&e, &mut tet2, &mut reg2, skeleta_only) {
            continue;
        }
        if skeleta_only && (tet2.classes < frame.faces_needed || reg2.classes < frame.regions_needed) {
            continue;
        }
        chosen.push(e);
        dfs(frame, skeleta_only, &tet2, &reg2, chosen, out);
        chosen.pop();
    }
}

/// Standard, thickenable, with boundary one sphere plus exactly the marked
/// surfaces.
pub fn is_skeleton(poly: &SpecialPolyhedron) -> bool {
    if poly.num_vertices() == 0 || !poly.circles().is_empty() || poly.singular_components() > 1 {
        return false;
    }
    let Ok(faces) = poly.trace_faces() else { return false };
    if faces.faces.iter().any(|f| !f.disc) {
        return false;
    }
    let Ok(hexes) = marked_hexagons(poly, &faces) else { return false };
    let Ok(th) = thicken_with(poly, &faces) else { return false };
    boundary_matches_marks(&th, &hexes).is_ok()
}

/// Kinds multisets of size `k`, non-decreasing in [`BOUNDARY_KINDS`] order.
pub fn kind_multisets(k: usize) -> Vec<Vec<(SurfaceKind, SpineKind)>> {
    fn rec(k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..BOUNDARY_KINDS.len() {
            cur.push(i);
            rec(k, i, cur, out);
            cur.pop();
        }
    }
    let mut idx = Vec::new();
    rec(k, 0, &mut Vec::new(), &mut idx);
    idx.into_iter().map(|v| v.into_iter().map(|i| BOUNDARY_KINDS[i]).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multigraph_counts_small_cases() {
        // one gadget, no vertices: its two ports joined
        let t = [(SurfaceKind::Torus, SpineKind::Theta)];
        assert_eq!(multigraphs(0, &t, false).len(), 1);
        // one vertex alone: two loops
        assert_eq!(multigraphs(1, &[], true).len(), 1);
    }

    #[test]
    fn dsu_parity() {
        let mut d = Dsu::new(3);
        assert!(d.relate(0, 1, 1));
        assert!(d.relate(1, 2, 1));
        assert!(!d.relate(0, 2, 1));
        assert_eq!(d.classes, 1);
    }

    #[test]
    fn kind_multiset_counts() {
        assert_eq!(kind_multisets(0).len(), 1);
        assert_eq!(kind_multisets(2).len(), 6);
        assert_eq!(kind_multisets(4).len(), 15);
    }
}
