//! Gluing two boundary components of one polyhedron so that the two spines
//! meet transversally in two points.
//!
//! The surface `C` carrying `τ` is cut along `τ` into a hexagon. The image
//! `τ''` of the other spine has both vertices inside the hexagon, one edge
//! inside it and two edges leaving through a side and coming back through
//! the paired side, which accounts for the two crossings. A labelling of
//! `τ''` by the vertices and slots of `τ'` is a genuine homeomorphism when
//! the single face of `C - τ''` runs through the same corners as the
//! hexagon of `τ'`.

use std::collections::BTreeSet;

use super::gluing::{boundary_of, Boundary, GluingError};
use crate::polyhedron::{canonical_signature, from_faces, germ_index, Corner, PolyError, SpecialPolyhedron, SpineKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Point {
    /// Hexagon corner `k`.
    Hex(usize),
    /// Copy of crossing `x` lying on hexagon side `side`.
    Leaf { x: usize, side: usize },
    /// Vertex of `τ''`.
    Y(usize),
}

/// Half-edges at a vertex of `τ''`: toward a leaf, or the inner edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Half {
    Arc(usize),
    Inner,
}

/// A drawing of `τ''` in the hexagon of `τ`.
#[derive(Clone, Debug)]
struct Drawing {
    /// τ-edge (index in the polyhedron) and position along it, 1 or 2.
    crossings: [(usize, u8); 2],
    /// Leaves in hexagon order.
    leaves: Vec<Point>,
    /// `owner[m]`: vertex of `τ''` holding leaf `m`.
    owner: [usize; 4],
    /// Side of each hexagon side's edge traversal: `(edge, from end)`.
    sides: Vec<(usize, usize)>,
    /// Boundary points in hexagon order.
    ring: Vec<Point>,
}

/// One admissible identification, with the resulting polyhedron.
#[derive(Clone, Debug)]
pub struct DoublePointMap {
    /// Which vertex of `τ'` each vertex of `τ''` is.
    pub vertex_of: [u32; 2],
    /// Slot of `τ'` carried by the halves `[arc a, arc b, inner]` at each
    /// vertex of `τ''`.
    pub labels: [[u8; 3]; 2],
    pub result: SpecialPolyhedron,
}

fn sides_of(poly: &SpecialPolyhedron, b: &Boundary) -> Vec<(usize, usize)> {
    b.corners.iter().map(|c| poly.slot(c.vertex as usize, c.to).expect("spine edge")).collect()
}

fn drawings(poly: &SpecialPolyhedron, b: &Boundary, spine: SpineKind) -> Vec<Drawing> {
    let sides = sides_of(poly, b);
    let tau: BTreeSet<usize> = sides.iter().map(|s| s.0).collect();
    let tau: Vec<usize> = tau.into_iter().collect();
    let mut out = Vec::new();
    for (i, &e0) in tau.iter().enumerate() {
        for &e1 in &tau[i..] {
            let crossings = if e0 == e1 { [(e0, 1), (e0, 2)] } else { [(e0, 1), (e1, 1)] };
            // ring of boundary points
            let mut ring = Vec::new();
            for (k, &(e, from)) in sides.iter().enumerate() {
                ring.push(Point::Hex(k));
                let mut on: Vec<(u8, usize)> =
                    (0..2).filter(|&x| crossings[x].0 == e).map(|x| (crossings[x].1, x)).collect();
                on.sort();
                if from == 1 {
                    on.reverse();
                }
                ring.extend(on.into_iter().map(|(_, x)| Point::Leaf { x, side: k }));
            }
            let leaves: Vec<Point> = ring.iter().copied().filter(|p| matches!(p, Point::Leaf { .. })).collect();
            for shift in 0..2 {
                let mut owner = [0usize; 4];
                for m in 0..4 {
                    owner[(m + shift) % 4] = m / 2;
                }
                let x_of = |m: usize| match leaves[m] {
                    Point::Leaf { x, .. } => x,
                    _ => unreachable!(),
                };
                let split = (0..4).all(|m| {
                    (0..4).filter(|&n| n != m && x_of(n) == x_of(m)).all(|n| {
                        let same = owner[n] == owner[m];
                        match spine {
                            SpineKind::Theta => !same,
                            SpineKind::Sigma => same,
                        }
                    })
                });
                if split {
                    out.push(Drawing {
                        crossings,
                        leaves: leaves.clone(),
                        owner,
                        sides: sides.clone(),
                        ring: ring.clone(),
                    });
                }
            }
        }
    }
    out
}

impl Drawing {
    fn leaf_index(&self, p: Point) -> usize {
        self.leaves.iter().position(|&q| q == p).expect("leaf")
    }

    /// The two leaves of vertex `y`, in hexagon order.
    fn leaves_of(&self, y: usize) -> [usize; 2] {
        let v: Vec<usize> = (0..4).filter(|&m| self.owner[m] == y).collect();
        [v[0], v[1]]
    }

    fn half_index(&self, y: usize, h: Half) -> usize {
        match h {
            Half::Inner => 2,
            Half::Arc(m) => self.leaves_of(y).iter().position(|&n| n == m).expect("own leaf"),
        }
    }

    /// Regions of the hexagon cut by `τ''`, as cyclic point lists.
    fn regions(&self) -> Vec<Vec<Point>> {
        let pos = |p: Point| self.ring.iter().position(|&q| q == p).expect("on ring");
        (0..4)
            .map(|m| {
                let n = (m + 1) % 4;
                let (a, b) = (pos(self.leaves[m]), pos(self.leaves[n]));
                let mut r = Vec::new();
                let mut i = a;
                loop {
                    r.push(self.ring[i]);
                    if i == b {
                        break;
                    }
                    i = (i + 1) % self.ring.len();
                }
                let (ym, yn) = (self.owner[m], self.owner[n]);
                r.push(Point::Y(yn));
                if ym != yn {
                    r.push(Point::Y(ym));
                }
                r
            })
            .collect()
    }

    /// Half at `y` leading to neighbour `p` within a region.
    fn half_toward(&self, p: Point) -> Half {
        match p {
            Point::Y(_) => Half::Inner,
            leaf @ Point::Leaf { .. } => Half::Arc(self.leaf_index(leaf)),
            Point::Hex(_) => unreachable!("vertices of τ'' do not touch the hexagon"),
        }
    }

    /// Position of a boundary point along its τ-edge, from end 0.
    fn position(&self, p: Point, side: usize) -> u8 {
        let (e, from) = self.sides[side];
        let top = 1 + self.crossings.iter().filter(|c| c.0 == e).count() as u8;
        match p {
            Point::Hex(k) if k == side => {
                if from == 0 {
                    0
                } else {
                    top
                }
            }
            Point::Hex(_) => {
                if from == 0 {
                    top
                } else {
                    0
                }
            }
            Point::Leaf { x, .. } => self.crossings[x].1,
            Point::Y(_) => unreachable!(),
        }
    }

    /// Side holding the ring segment from `p` to the next ring point.
    fn side_after(&self, p: Point) -> usize {
        match p {
            Point::Hex(k) | Point::Leaf { side: k, .. } => k,
            Point::Y(_) => unreachable!(),
        }
    }

    /// Corners of the single face of `C - τ''` at the two vertices, as
    /// `(y, half in, half out)`; `None` if the complement is not one disc.
    fn complement_walk(&self) -> Option<Vec<(usize, Half, Half)>> {
        let regions = self.regions();
        // ring segments: (region, index of first point) keyed by edge span
        let seg_key = |r: &[Point], i: usize| -> Option<(usize, u8, u8, usize)> {
            let p = r[i];
            let q = r[(i + 1) % r.len()];
            if matches!(p, Point::Y(_)) || matches!(q, Point::Y(_)) {
                return None;
            }
            let side = self.side_after(p);
            let (a, b) = (self.position(p, side), self.position(q, side));
            Some((self.sides[side].0, a.min(b), a.max(b), side))
        };
        let mut out = Vec::new();
        // start on the first corner at vertex 0 in region 0 or wherever it is
        let (r0, i0) =
            regions.iter().enumerate().find_map(|(ri, r)| r.iter().position(|&p| p == Point::Y(0)).map(|i| (ri, i)))?;
        let (mut r, mut i, mut d) = (r0, i0, 1isize);
        for _ in 0..7 {
            let reg = &regions[r];
            let n = reg.len() as isize;
            let at = |k: isize| reg[k.rem_euclid(n) as usize];
            let Point::Y(y) = at(i as isize) else { return None };
            let prev = at(i as isize - d);
            let next = at(i as isize + d);
            out.push((y, self.half_toward(prev), self.half_toward(next)));
            match next {
                Point::Y(_) => {
                    i = (i as isize + d).rem_euclid(n) as usize;
                }
                Point::Leaf { x, side } => {
                    // the ring segment beyond the leaf, then its other copy
                    let li = (i as isize + d).rem_euclid(n);
                    let si = if d == 1 { li } else { (li - 1).rem_euclid(n) };
                    let key = seg_key(reg, si as usize)?;
                    let (r2, s2) = regions.iter().enumerate().find_map(|(rj, rr)| {
                        (0..rr.len()).find_map(|k| {
                            let kk = seg_key(rr, k)?;
                            (kk.0 == key.0 && kk.1 == key.1 && kk.2 == key.2 && kk.3 != key.3).then_some((rj, k))
                        })
                    })?;
                    let rr = &regions[r2];
                    let m = rr.len() as isize;
                    // the other copy of the crossing is one end of segment s2
                    let other = |p: Point| matches!(p, Point::Leaf { x: x2, side: sd } if x2 == x && sd != side);
                    let (leaf_at, d2) = if other(rr[s2]) {
                        (s2 as isize, -1)
                    } else if other(rr[((s2 as isize + 1).rem_euclid(m)) as usize]) {
                        ((s2 as isize + 1).rem_euclid(m), 1)
                    } else {
                        return None;
                    };
                    let yi = (leaf_at + d2).rem_euclid(m);
                    if !matches!(rr[yi as usize], Point::Y(_)) {
                        return None;
                    }
                    r = r2;
                    i = yi as usize;
                    d = d2;
                }
                Point::Hex(_) => return None,
            }
            if (r, i, d) == (r0, i0, 1) {
                break;
            }
        }
        (out.len() == 6 && (r, i, d) == (r0, i0, 1)).then_some(out)
    }
}

fn cyclic_eq(a: &[Corner], b: &[Corner]) -> bool {
    let n = a.len();
    n == b.len() && (0..n).any(|r| (0..n).all(|i| a[i] == b[(i + r) % n]))
}

fn reversed(cs: &[Corner]) -> Vec<Corner> {
    cs.iter().rev().map(|c| Corner { vertex: c.vertex, from: c.to, to: c.from }).collect()
}

fn bijections3() -> Vec<[usize; 3]> {
    crate::polyhedron::PERMS.iter().map(|p| p.map(|x| x as usize)).collect()
}

/// Every identification of boundary `i` with boundary `j` crossing in two
/// points, one per resulting polyhedron, in a fixed order.
pub fn enumerate_double_point_maps(
    poly: &SpecialPolyhedron,
    i: usize,
    j: usize,
) -> Result<Vec<DoublePointMap>, GluingError> {
    if i == j {
        return Err(GluingError::SameComponent);
    }
    let bt = boundary_of(poly, i)?;
    let bs = boundary_of(poly, j)?;
    if (bt.surface, bt.spine) != (bs.surface, bs.spine) {
        return Err(GluingError::KindMismatch(bt.marked_surface().to_string(), bs.marked_surface().to_string()));
    }
    let target = bs.corners.clone();
    let target_rev = reversed(&target);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for dr in drawings(poly, &bt, bt.spine) {
        let Some(walk) = dr.complement_walk() else { continue };
        for swap in [false, true] {
            let vertex_of = if swap { [bs.vertices[1], bs.vertices[0]] } else { bs.vertices };
            let free_slots = |v: u32| -> [u8; 3] {
                let k = bs.vertices.iter().position(|&w| w == v).expect("spine vertex");
                let s: Vec<u8> = (0..4).filter(|&s| s != bs.pslots[k]).collect();
                [s[0], s[1], s[2]]
            };
            for p0 in bijections3() {
                for p1 in bijections3() {
                    let f0 = free_slots(vertex_of[0]);
                    let f1 = free_slots(vertex_of[1]);
                    let labels = [p0.map(|k| f0[k]), p1.map(|k| f1[k])];
                    let label = |y: usize, h: Half| labels[y][dr.half_index(y, h)];
                    let mapped: Vec<Corner> = walk
                        .iter()
                        .map(|&(y, a, b)| Corner { vertex: vertex_of[y], from: label(y, a), to: label(y, b) })
                        .collect();
                    if !cyclic_eq(&mapped, &target) && !cyclic_eq(&mapped, &target_rev) {
                        continue;
                    }
                    let Ok(result) = build(poly, &bt, &bs, &dr, vertex_of, labels, i, j) else { continue };
                    if seen.insert(canonical_signature(&result)) {
                        out.push(DoublePointMap { vertex_of, labels, result });
                    }
                }
            }
        }
    }
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn build(
    poly: &SpecialPolyhedron,
    bt: &Boundary,
    bs: &Boundary,
    dr: &Drawing,
    vertex_of: [u32; 2],
    labels: [[u8; 3]; 2],
    i: usize,
    j: usize,
) -> Result<SpecialPolyhedron, PolyError> {
    let nv = poly.num_vertices();
    let xv = |x: usize| nv + x;
    let label = |y: usize, h: Half| labels[y][dr.half_index(y, h)];
    // copies of each crossing: copy 0 is on the lower side
    let copies = |x: usize| -> [usize; 2] {
        let v: Vec<usize> = (0..4).filter(|&m| matches!(dr.leaves[m], Point::Leaf { x: x2, .. } if x2 == x)).collect();
        [v[0], v[1]]
    };
    let copy_of = |m: usize| -> usize {
        let Point::Leaf { x, .. } = dr.leaves[m] else { unreachable!() };
        copies(x).iter().position(|&n| n == m).expect("copy")
    };
    let tau_edges: BTreeSet<usize> = dr.sides.iter().map(|s| s.0).collect();
    let prime_edges: BTreeSet<usize> = sides_of(poly, bs).iter().map(|s| s.0).collect();

    // edges
    let mut ends: Vec<[(usize, u8); 2]> = Vec::new();
    for (ei, e) in poly.edges().iter().enumerate() {
        if tau_edges.contains(&ei) || prime_edges.contains(&ei) {
            continue;
        }
        ends.push(e.ends.map(|x| (x.vertex as usize, x.slot)));
    }
    for &e in &tau_edges {
        let edge = poly.edges()[e];
        let mut on: Vec<(u8, usize)> =
            (0..2).filter(|&x| dr.crossings[x].0 == e).map(|x| (dr.crossings[x].1, x)).collect();
        on.sort();
        let mut prev = (edge.ends[0].vertex as usize, edge.ends[0].slot);
        for (_, x) in on {
            ends.push([prev, (xv(x), 0)]);
            prev = (xv(x), 1);
        }
        ends.push([prev, (edge.ends[1].vertex as usize, edge.ends[1].slot)]);
    }
    ends.push([(vertex_of[0] as usize, label(0, Half::Inner)), (vertex_of[1] as usize, label(1, Half::Inner))]);
    for m in 0..4 {
        let Point::Leaf { x, .. } = dr.leaves[m] else { unreachable!() };
        let y = dr.owner[m];
        ends.push([(vertex_of[y] as usize, label(y, Half::Arc(m))), (xv(x), 2 + copy_of(m) as u8)]);
    }

    // τ'' edge through a crossing, seen from the labelled end (v, s)
    let through = |v: usize, s: u8| -> Option<(usize, u8, u8)> {
        (0..4).find_map(|m| {
            let y = dr.owner[m];
            let Point::Leaf { x, .. } = dr.leaves[m] else { unreachable!() };
            (vertex_of[y] as usize == v && label(y, Half::Arc(m)) == s).then(|| {
                let c = copy_of(m) as u8;
                (xv(x), 2 + c, 3 - c)
            })
        })
    };

    let faces_p = poly.trace_faces()?;
    let hex = |b: &Boundary| {
        faces_p.germ_face[b.vertices[0] as usize][germ_index(b.corners[0].from, b.corners[0].to) as usize] as usize
    };
    let (ht, hs) = (hex(bt), hex(bs));
    let mut faces: Vec<Vec<Corner>> = Vec::new();
    for (fi, f) in faces_p.faces.iter().enumerate() {
        if fi == ht || fi == hs {
            continue;
        }
        let mut cs = Vec::new();
        for (ci, c) in f.corners.iter().enumerate() {
            cs.push(*c);
            let crate::polyhedron::Step::Edge { edge, from } = f.steps[ci] else { unreachable!() };
            let e = edge as usize;
            if tau_edges.contains(&e) {
                let mut on: Vec<(u8, usize)> =
                    (0..2).filter(|&x| dr.crossings[x].0 == e).map(|x| (dr.crossings[x].1, x)).collect();
                on.sort();
                if from == 1 {
                    on.reverse();
                }
                for (_, x) in on {
                    let (a, b) = if from == 0 { (0, 1) } else { (1, 0) };
                    cs.push(Corner { vertex: xv(x) as u32, from: a, to: b });
                }
            } else if prime_edges.contains(&e) {
                if let Some((x, a, b)) = through(c.vertex as usize, c.to) {
                    cs.push(Corner { vertex: x as u32, from: a, to: b });
                }
            }
        }
        faces.push(cs);
    }
    // regions of the surface
    for r in dr.regions() {
        let n = r.len();
        let mut cs = Vec::new();
        for k in 0..n {
            let prev = r[(k + n - 1) % n];
            let next = r[(k + 1) % n];
            let c = match r[k] {
                Point::Hex(h) => bt.corners[h],
                Point::Y(y) => Corner {
                    vertex: vertex_of[y],
                    from: label(y, dr.half_toward(prev)),
                    to: label(y, dr.half_toward(next)),
                },
                Point::Leaf { x, side } => {
                    let m = dr.leaf_index(r[k]);
                    let arc = 2 + copy_of(m) as u8;
                    let back = dr.sides[side].1 as u8;
                    if matches!(prev, Point::Y(_)) {
                        Corner { vertex: xv(x) as u32, from: arc, to: 1 - back }
                    } else {
                        Corner { vertex: xv(x) as u32, from: back, to: arc }
                    }
                }
            };
            cs.push(c);
        }
        faces.push(cs);
    }
    let marks = poly.marks().iter().enumerate().filter(|(k, _)| *k != i && *k != j).map(|(_, m)| *m).collect();
    from_faces(nv + 2, &ends, &faces, marks)
}
