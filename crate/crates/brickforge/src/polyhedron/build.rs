//! Assembling an o-graph from a cell description.

use super::ograph::{other_index, perm_index, Corner, Edge, End, Mark, PolyError, SpecialPolyhedron};

/// Builds the polyhedron whose edges join the given `(vertex, slot)` ends
/// and whose faces run through the given closed corner sequences. Each
/// edge must be passed exactly three times, once per wing, consistently.
pub fn from_faces(
    nv: usize,
    ends: &[[(usize, u8); 2]],
    faces: &[Vec<Corner>],
    marks: Vec<Mark>,
) -> Result<SpecialPolyhedron, PolyError> {
    let bad = |m: String| PolyError::BadFaces(m);
    let mut at = vec![[None::<(usize, usize)>; 4]; nv];
    for (i, e) in ends.iter().enumerate() {
        for (k, &(v, s)) in e.iter().enumerate() {
            if v >= nv || s > 3 {
                return Err(PolyError::BadEnd(i));
            }
            if at[v][s as usize].replace((i, k)).is_some() {
                return Err(PolyError::SlotReused { vertex: v as u32, slot: s });
            }
        }
    }
    // map[i][x]: slot at end 1 reached from other-slot index x at end 0
    let mut map = vec![[u8::MAX; 3]; ends.len()];
    for (fi, f) in faces.iter().enumerate() {
        for (ci, c) in f.iter().enumerate() {
            let n = &f[(ci + 1) % f.len()];
            let (i, k) = at[c.vertex as usize][c.to as usize]
                .ok_or_else(|| bad(format!("face {fi} leaves through an empty slot")))?;
            let far = ends[i][1 - k];
            if far != (n.vertex as usize, n.from) {
                return Err(bad(format!("face {fi} jumps at corner {ci}")));
            }
            let (near_other, far_other) = if k == 0 { (c.from, n.to) } else { (n.to, c.from) };
            let x = other_index(ends[i][0].1, near_other) as usize;
            if map[i][x] != u8::MAX && map[i][x] != far_other {
                return Err(bad(format!("edge {i} passed inconsistently")));
            }
            map[i][x] = far_other;
        }
    }
    let mut edges = Vec::with_capacity(ends.len());
    for (i, e) in ends.iter().enumerate() {
        if map[i].contains(&u8::MAX) {
            return Err(bad(format!("edge {i} has a missing wing")));
        }
        let p = map[i].map(|t| other_index(e[1].1, t));
        let mut seen = [false; 3];
        for &q in &p {
            seen[q as usize] = true;
        }
        if seen.contains(&false) {
            return Err(bad(format!("edge {i} wings collide")));
        }
        edges.push(Edge::new(End::new(e[0].0, e[0].1, 0), End::new(e[1].0, e[1].1, perm_index(p))));
    }
    SpecialPolyhedron::new(nv, edges, vec![], marks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyhedron::canonical_signature;

    #[test]
    fn rebuilds_from_own_faces() {
        let g = crate::surfaces::Gadget::standard(
            crate::polyhedron::SurfaceKind::Torus,
            crate::polyhedron::SpineKind::Theta,
        )
        .unwrap();
        let mut edges = g.placed(0, 1).to_vec();
        edges.push(Edge::new(End::new(0, 3, 0), End::new(1, 3, 0)));
        for c in 0..6 {
            edges[3] = Edge::new(End::new(0, 3, 0), End::new(1, 3, c));
            let p = SpecialPolyhedron::new(2, edges.clone(), vec![], vec![]).unwrap();
            let faces: Vec<Vec<Corner>> = p.trace_faces().unwrap().faces.into_iter().map(|f| f.corners).collect();
            let ends: Vec<_> = p.edges().iter().map(|e| e.ends.map(|x| (x.vertex as usize, x.slot))).collect();
            let q = from_faces(2, &ends, &faces, vec![]).unwrap();
            assert_eq!(canonical_signature(&p), canonical_signature(&q));
        }
    }
}
