//! Removing pairs of identified boundary vertices.
//!
//! When two boundary surfaces are glued, each spine vertex `x` meets its
//! partner `x'` and the point becomes an ordinary edge point: the edge
//! leaving `x` through its `P`-slot continues as the edge leaving `x'`
//! through its `P`-slot. The spine edges disappear into the interior.

use super::ograph::{other_index, perm_index, Circle, Edge, End, Mark, PolyError, SpecialPolyhedron};

/// One identified vertex pair: `slots` carries slots of `a` to slots of `b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VertexPair {
    pub a: u32,
    pub b: u32,
    pub pslot_a: u8,
    pub pslot_b: u8,
    pub slots: [u8; 4],
}

#[derive(Clone, Copy)]
struct Partner {
    other: u32,
    pslot: u8,
    other_pslot: u8,
    map: [u8; 4],
}

/// Disjoint union; vertices of `b` come after those of `a`.
pub fn disjoint_union(a: &SpecialPolyhedron, b: &SpecialPolyhedron) -> SpecialPolyhedron {
    let off = a.num_vertices() as u32;
    let mut edges = a.edges().to_vec();
    edges.extend(b.edges().iter().map(|e| {
        let mut e = *e;
        e.ends[0].vertex += off;
        e.ends[1].vertex += off;
        e
    }));
    let mut circles = a.circles().to_vec();
    circles.extend_from_slice(b.circles());
    let mut marks = a.marks().to_vec();
    marks.extend(b.marks().iter().map(|m| Mark { vertex: m.vertex + off, ..*m }));
    SpecialPolyhedron::new(a.num_vertices() + b.num_vertices(), edges, circles, marks)
        .expect("union of valid structures")
}

/// Glues the listed vertex pairs, drops every edge between two glued
/// vertices that is not on a `P`-slot, and splices the rest. Marks whose
/// anchor vertex disappears are dropped.
pub fn splice(poly: &SpecialPolyhedron, pairs: &[VertexPair]) -> Result<SpecialPolyhedron, PolyError> {
    let nv = poly.num_vertices();
    let mut partner: Vec<Option<Partner>> = vec![None; nv];
    for p in pairs {
        let mut inv = [0u8; 4];
        for s in 0..4 {
            inv[p.slots[s] as usize] = s as u8;
        }
        partner[p.a as usize] = Some(Partner { other: p.b, pslot: p.pslot_a, other_pslot: p.pslot_b, map: p.slots });
        partner[p.b as usize] = Some(Partner { other: p.a, pslot: p.pslot_b, other_pslot: p.pslot_a, map: inv });
    }
    let glued = |v: u32| partner[v as usize].is_some();
    let mut new_index = vec![u32::MAX; nv];
    let mut count = 0u32;
    for v in 0..nv {
        if !glued(v as u32) {
            new_index[v] = count;
            count += 1;
        }
    }
    let ne = poly.edges().len();
    let mut used = vec![false; ne];
    let mut edges = Vec::new();
    let mut circles = poly.circles().to_vec();

    // follows the chain leaving end `k` of edge `e`; returns the far end
    // reached at an unglued vertex with the wing-to-slot map there, or the
    // wing permutation if the chain closes up on `e`
    let follow = |e0: usize, k0: usize, used: &mut Vec<bool>| -> Result<Result<(End, [u8; 3]), u8>, PolyError> {
        let mut e = e0;
        let mut k = k0;
        let mut wing = [0u8, 1, 2];
        loop {
            used[e] = true;
            let edge = &poly.edges()[e];
            let arrive = edge.ends[1 - k];
            let slots = wing.map(|w| arrive.wing_slot(w));
            let Some(pt) = partner[arrive.vertex as usize] else {
                return Ok(Ok((arrive, slots)));
            };
            if arrive.slot != pt.pslot {
                return Err(PolyError::BadMark);
            }
            let y = pt.other as usize;
            let (e2, k2) =
                poly.slot(y, pt.other_pslot).ok_or(PolyError::OpenTrace { vertex: y as u32, slot: pt.other_pslot })?;
            let start = poly.edges()[e2].ends[k2];
            wing = slots.map(|s| start.slot_wing(pt.map[s as usize]));
            if e2 == e0 && k2 == k0 {
                return Ok(Err(perm_index(wing)));
            }
            e = e2;
            k = k2;
        }
    };

    for (ei, edge) in poly.edges().iter().enumerate() {
        if used[ei] {
            continue;
        }
        let [a, b] = edge.ends;
        match (glued(a.vertex), glued(b.vertex)) {
            (false, false) => {
                used[ei] = true;
                edges.push(remap(edge, &new_index));
            }
            (false, true) | (true, false) => {
                let k = if glued(a.vertex) { 1 } else { 0 };
                let near = edge.ends[k];
                match follow(ei, k, &mut used)? {
                    Ok((far, slots)) => {
                        let p = slots.map(|s| other_index(far.slot, s));
                        edges.push(Edge::new(
                            End { vertex: new_index[near.vertex as usize], ..near },
                            End { vertex: new_index[far.vertex as usize], slot: far.slot, perm: perm_index(p) },
                        ));
                    }
                    Err(_) => unreachable!("chain started at an unglued vertex"),
                }
            }
            (true, true) => {}
        }
    }
    // chains made only of glued vertices
    for (ei, edge) in poly.edges().iter().enumerate() {
        if used[ei] {
            continue;
        }
        let [a, b] = edge.ends;
        let pa = partner[a.vertex as usize].expect("glued");
        let pb = partner[b.vertex as usize].expect("glued");
        if a.slot != pa.pslot && b.slot != pb.pslot {
            // a spine edge of a glued boundary
            used[ei] = true;
            continue;
        }
        if a.slot != pa.pslot || b.slot != pb.pslot {
            return Err(PolyError::BadMark);
        }
        match follow(ei, 0, &mut used)? {
            Err(perm) => circles.push(Circle { perm }),
            Ok(_) => unreachable!("no unglued vertex on the chain"),
        }
    }
    let marks = poly
        .marks()
        .iter()
        .filter(|m| !glued(m.vertex))
        .map(|m| Mark { vertex: new_index[m.vertex as usize], ..*m })
        .collect();
    SpecialPolyhedron::new(count as usize, edges, circles, marks)
}

fn remap(e: &Edge, idx: &[u32]) -> Edge {
    let mut e = *e;
    e.ends[0].vertex = idx[e.ends[0].vertex as usize];
    e.ends[1].vertex = idx[e.ends[1].vertex as usize];
    e
}
