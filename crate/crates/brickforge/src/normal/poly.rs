//! Normal surfaces in the handle decomposition of an o-graph: one ball per
//! vertex, one beam per edge or circle, one plate per face.

use std::collections::BTreeSet;

use super::vector::VertexDiscs;
use super::{boundary_vertex_ok, NormalError};
use crate::polyhedron::{
    germ_index, marked_hexagons, FaceSet, SpecialPolyhedron, Step, UnionFind, GERMS, OTHERS, PERMS,
};

pub(crate) struct PolyModel {
    poly: SpecialPolyhedron,
    faces: FaceSet,
    /// Boundary hexagon faces.
    hexagons: BTreeSet<u32>,
    /// `(vertex, slot leaving the boundary)` for every spine vertex.
    spine: Vec<(usize, u8)>,
}

/// Local order of sheets across a germ runs from the side facing the
/// lower of the two remaining slots.
fn low_high(s: u8, t: u8) -> (u8, u8) {
    let o: Vec<u8> = (0..4).filter(|&x| x != s && x != t).collect();
    (o[0], o[1])
}

/// Multiplicities of normal discs with germ colors `c`, if any.
pub fn decompose(c: [u32; 6]) -> Option<VertexDiscs> {
    let sums = [0usize, 1, 2].map(|k| c[k] + c[5 - k]);
    let mut quad = None;
    if !(sums[0] == sums[1] && sums[1] == sums[2]) {
        let k = (0..3).find(|&k| sums[(k + 1) % 3] == sums[(k + 2) % 3] && sums[k] < sums[(k + 1) % 3])?;
        let diff = sums[(k + 1) % 3] - sums[k];
        if diff % 2 == 1 {
            return None;
        }
        quad = Some((k as u8, diff / 2));
    }
    let mut rest = c;
    if let Some((k, q)) = quad {
        for (g, r) in rest.iter_mut().enumerate() {
            if g != k as usize && g != 5 - k as usize {
                *r = r.checked_sub(q)?;
            }
        }
    }
    let col = |a: u8, b: u8| rest[germ_index(a, b) as usize];
    let mut triangles = [0u32; 4];
    for l in 0..4u8 {
        let [i, j, k] = OTHERS[l as usize];
        let t2 = (col(i, j) + col(i, k)) as i64 - col(i, l) as i64;
        if t2 < 0 || t2 % 2 == 1 {
            return None;
        }
        triangles[l as usize] = (t2 / 2) as u32;
    }
    for (g, &(a, b)) in GERMS.iter().enumerate() {
        let (x, y) = low_high(a, b);
        if triangles[x as usize] + triangles[y as usize] != rest[g] {
            return None;
        }
    }
    Some(VertexDiscs { triangles, quad })
}

/// Triangle inequality and parity on the three wings of a beam.
fn triod_ok(a: u32, b: u32, c: u32) -> bool {
    (a + b + c) % 2 == 0 && a <= b + c && b <= a + c && c <= a + b
}

impl PolyModel {
    pub(crate) fn new(poly: &SpecialPolyhedron) -> Result<Self, NormalError> {
        let faces = poly.trace_faces().map_err(|e| NormalError::Structure(e.to_string()))?;
        let hexes = marked_hexagons(poly, &faces).map_err(NormalError::Structure)?;
        let hexagons = hexes.iter().map(|h| h.face as u32).collect();
        let spine = hexes.iter().flat_map(|h| [0, 1].map(|k| (h.vertices[k] as usize, h.pslots[k]))).collect();
        Ok(PolyModel { poly: poly.clone(), faces, hexagons, spine })
    }

    pub(crate) fn num_colors(&self) -> usize {
        self.faces.faces.len()
    }

    pub(crate) fn num_vertices(&self) -> usize {
        self.poly.num_vertices()
    }

    pub(crate) fn is_boundary_face(&self, f: usize) -> bool {
        self.hexagons.contains(&(f as u32))
    }

    fn germ_colors(&self, colors: &[u32], v: usize) -> [u32; 6] {
        self.faces.germ_face[v].map(|f| colors[f as usize])
    }

    /// Colors `(n, n, n, p, q, r)` at a spine vertex meet the boundary rule.
    fn spine_vertex_ok(&self, colors: &[u32], v: usize, pslot: u8) -> bool {
        let c = self.germ_colors(colors, v);
        let n = c[germ_index(OTHERS[pslot as usize][0], OTHERS[pslot as usize][1]) as usize];
        boundary_vertex_ok(n, OTHERS[pslot as usize].map(|s| c[germ_index(s, pslot) as usize]))
    }

    /// Disc decompositions when every edge, vertex and spine condition
    /// holds.
    pub(crate) fn check(&self, colors: &[u32]) -> Option<Vec<VertexDiscs>> {
        for e in self.poly.edges() {
            let s = e.ends[0].slot;
            let v = e.ends[0].vertex as usize;
            let c = self.germ_colors(colors, v);
            let [a, b, d] = OTHERS[s as usize].map(|t| c[germ_index(s, t) as usize]);
            if !triod_ok(a, b, d) {
                return None;
            }
        }
        for cf in &self.faces.circle_face {
            let [a, b, d] = cf.map(|f| colors[f as usize]);
            if !triod_ok(a, b, d) {
                return None;
            }
        }
        for &(v, p) in &self.spine {
            if !self.spine_vertex_ok(colors, v, p) {
                return None;
            }
        }
        (0..self.poly.num_vertices()).map(|v| decompose(self.germ_colors(colors, v))).collect()
    }

    pub(crate) fn obvious(&self) -> Vec<u32> {
        (0..self.num_colors()).map(|f| if self.is_boundary_face(f) { 1 } else { 2 }).collect()
    }

    /// Side of each face corner, as the slot it faces, carried along the
    /// face from its first corner.
    fn corner_sides(&self) -> Vec<Vec<u8>> {
        self.faces
            .faces
            .iter()
            .map(|f| {
                let mut sides = Vec::with_capacity(f.corners.len());
                let Some(first) = f.corners.first() else { return sides };
                let mut side = low_high(first.from, first.to).0;
                for step in &f.steps {
                    sides.push(side);
                    if let Step::Edge { edge, from } = *step {
                        side = self.poly.edges()[edge as usize].transport(from as usize, side);
                    }
                }
                sides
            })
            .collect()
    }

    /// Euler characteristic and components of the surface, twice: once by
    /// handles and once by the cells cut out by the handle boundaries.
    pub(crate) fn surface(&self, colors: &[u32], discs: &[VertexDiscs]) -> Result<Surface, NormalError> {
        for (f, face) in self.faces.faces.iter().enumerate() {
            if colors[f] > 0 && !face.disc {
                return Err(NormalError::Unsupported(format!("sheets over the non-disc face {f}")));
            }
        }
        let mut total = 0usize;
        let sheet_base: Vec<usize> = colors
            .iter()
            .map(|&c| {
                total += c as usize;
                total - c as usize
            })
            .collect();
        let disc_base: Vec<usize> = discs
            .iter()
            .map(|d| {
                total += d.count() as usize;
                total - d.count() as usize
            })
            .collect();
        let sides = self.corner_sides();
        let mut corner_of = vec![[(0usize, 0usize); 6]; self.poly.num_vertices()];
        for (f, face) in self.faces.faces.iter().enumerate() {
            for (i, c) in face.corners.iter().enumerate() {
                corner_of[c.vertex as usize][germ_index(c.from, c.to) as usize] = (f, i);
            }
        }
        // sheet on germ {s, t} at `v`, `k` places in from the side facing `x`
        let sheet_at = |v: usize, s: u8, t: u8, x: u8, k: usize| {
            let (f, i) = corner_of[v][germ_index(s, t) as usize];
            let c = colors[f] as usize;
            sheet_base[f] + if sides[f][i] == x { k } else { c - 1 - k }
        };
        let mut uf = UnionFind::new(total);
        let mut runs = 0i64;
        for (v, d) in discs.iter().enumerate() {
            let tri = |t: u8, j: usize| disc_base[v] + d.triangles[..t as usize].iter().sum::<u32>() as usize + j;
            let quad = disc_base[v] + d.triangles.iter().sum::<u32>() as usize;
            for (g, &(s, t)) in GERMS.iter().enumerate() {
                let (u, w) = low_high(s, t);
                // facing u: triangles around the chamber opposite w, then quads
                let tw = d.triangles[w as usize] as usize;
                for j in 0..tw {
                    uf.union(tri(w, j), sheet_at(v, s, t, u, j));
                }
                let mut filled = tw;
                if let Some((k, q)) = d.quad {
                    if g != k as usize && g != 5 - k as usize {
                        let far = GERMS[5 - k as usize];
                        let first = w == far.0 || w == far.1;
                        for j in 0..q as usize {
                            let copy = if first { j } else { q as usize - 1 - j };
                            uf.union(quad + copy, sheet_at(v, s, t, u, tw + j));
                        }
                        filled += q as usize;
                    }
                }
                let tu = d.triangles[u as usize] as usize;
                for j in 0..tu {
                    uf.union(tri(u, j), sheet_at(v, s, t, w, j));
                }
                filled += tu;
                runs += filled as i64;
                if filled != colors[corner_of[v][g].0] as usize {
                    return Err(NormalError::Incompatible(format!("discs at vertex {v} do not fill germ {g}")));
                }
            }
        }
        // arcs around circles, read at the base of each circle
        for (ci, cf) in self.faces.circle_face.iter().enumerate() {
            let cols = cf.map(|f| colors[f as usize] as usize);
            for (a, b) in [(0u8, 1u8), (0, 2), (1, 2)] {
                let o = 3 - a - b;
                let x = (cols[a as usize] + cols[b as usize] - cols[o as usize]) / 2;
                for k in 0..x {
                    let sa = self.circle_sheet(&sheet_base, colors, ci, a, b, k);
                    let sb = self.circle_sheet(&sheet_base, colors, ci, b, a, k);
                    uf.union(sa, sb);
                }
            }
        }
        let mut roots: Vec<usize> = (0..total).map(|x| uf.find(x)).collect();
        roots.sort_unstable();
        roots.dedup();
        let mut comp = vec![0i64; roots.len()];
        for x in 0..total {
            comp[roots.binary_search(&uf.find(x)).expect("root")] += 1;
        }
        // each band lies with the sheets its arcs end on
        let mut bands = 0i64;
        for e in self.poly.edges() {
            let (s, v) = (e.ends[0].slot, e.ends[0].vertex as usize);
            let c = self.germ_colors(colors, v);
            let col = |t: u8| c[germ_index(s, t) as usize] as usize;
            let [a, b, d] = OTHERS[s as usize];
            for (t, u, w) in [(a, b, d), (a, d, b), (b, d, a)] {
                let x = (col(t) + col(u) - col(w)) / 2;
                for k in 0..x {
                    comp[roots.binary_search(&uf.find(sheet_at(v, s, t, u, k))).expect("root")] -= 1;
                }
                bands += x as i64;
            }
        }
        let sheets: i64 = colors.iter().map(|&c| c as i64).sum();
        let disc_count: i64 = discs.iter().map(|d| d.count() as i64).sum();
        let chi = disc_count - bands + sheets;
        // cells: four corners and four sides per band, the disc runs on plates
        let chi_cells = 4 * bands - (4 * bands + runs) + (disc_count + bands + sheets);
        Ok(Surface { chi, chi_cells, components: comp })
    }

    /// Global sheet on wing `a` of circle `ci`, `k` places in from the side
    /// facing wing `b`.
    fn circle_sheet(&self, base: &[usize], colors: &[u32], ci: usize, a: u8, b: u8, k: usize) -> usize {
        let f = self.faces.circle_face[ci][a as usize] as usize;
        let face = &self.faces.faces[f];
        let step = face
            .steps
            .iter()
            .position(|s| matches!(*s, Step::Circle { circle, wing } if circle as usize == ci && wing == a))
            .expect("wing on its face");
        let perm = PERMS[self.poly.circles()[ci].perm as usize];
        let Step::Circle { wing: w0, .. } = face.steps[0] else { unreachable!("circle face") };
        let mut side = (0..3u8).find(|&x| x != w0).expect("other wing");
        for _ in 0..step {
            side = perm[side as usize];
        }
        let c = colors[f] as usize;
        base[f] + if side == b { k } else { c - 1 - k }
    }
}

/// Euler characteristic by two tallies, and the Euler characteristic of
/// each component.
pub(crate) struct Surface {
    pub chi: i64,
    pub chi_cells: i64,
    pub components: Vec<i64>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decomposes_obvious_vertex() {
        let d = decompose([2; 6]).unwrap();
        assert_eq!(d.triangles, [1; 4]);
        assert_eq!(d.quad, None);
    }

    #[test]
    fn decomposes_a_quad() {
        // one quad missing (0,1) and (2,3)
        let d = decompose([0, 1, 1, 1, 1, 0]).unwrap();
        assert_eq!(d.quad, Some((0, 1)));
        assert_eq!(d.triangles, [0; 4]);
        assert!(decompose([1, 0, 0, 0, 0, 0]).is_none());
    }
}
