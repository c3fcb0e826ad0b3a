//! First homology of 2-complexes via Smith normal form.

use std::fmt;

use super::ograph::{SpecialPolyhedron, Step, UnionFind};

/// A 2-complex: 1-cells between 0-cells, 2-cells attached along closed
/// words of oriented 1-cells.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CellComplex {
    pub vertices: usize,
    pub edges: Vec<[usize; 2]>,
    /// `(edge, forward)` sequences.
    pub faces: Vec<Vec<(usize, bool)>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct H1 {
    pub betti: usize,
    /// Invariant factors greater than one, ascending.
    pub torsion: Vec<u64>,
}

impl H1 {
    pub fn is_trivial(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }

    /// Order of the group, `None` when infinite.
    pub fn order(&self) -> Option<u64> {
        (self.betti == 0).then(|| self.torsion.iter().product())
    }
}

impl fmt::Display for H1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.betti {
            0 => {}
            1 => parts.push("Z".into()),
            b => parts.push(format!("Z^{b}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join("+"))
        }
    }
}

impl CellComplex {
    /// Cells of `P ∪ ∂M`: vertices and edges of the o-graph, one 0-cell and
    /// one loop per circle, and every face.
    pub fn from_poly(poly: &SpecialPolyhedron) -> Result<Self, super::PolyError> {
        let nv = poly.num_vertices();
        let mut edges: Vec<[usize; 2]> =
            poly.edges().iter().map(|e| [e.ends[0].vertex as usize, e.ends[1].vertex as usize]).collect();
        let ne = edges.len();
        for c in 0..poly.circles().len() {
            edges.push([nv + c, nv + c]);
        }
        let faces = poly
            .trace_faces()?
            .faces
            .iter()
            .map(|f| {
                f.steps
                    .iter()
                    .map(|s| match *s {
                        Step::Edge { edge, from } => (edge as usize, from == 0),
                        Step::Circle { circle, .. } => (ne + circle as usize, true),
                    })
                    .collect()
            })
            .collect();
        Ok(CellComplex { vertices: nv + poly.circles().len(), edges, faces })
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertices as i64 - self.edges.len() as i64 + self.faces.len() as i64
    }

    pub fn h1(&self) -> H1 {
        let ne = self.edges.len();
        let mut uf = UnionFind::new(self.vertices);
        for e in &self.edges {
            uf.union(e[0], e[1]);
        }
        let rank_d1 = self.vertices - uf.count();
        let mut m: Vec<Vec<i64>> = self
            .faces
            .iter()
            .map(|w| {
                let mut row = vec![0i64; ne];
                for &(e, fwd) in w {
                    row[e] += if fwd { 1 } else { -1 };
                }
                row
            })
            .collect();
        let diag = smith_diagonal(&mut m);
        let rank_d2 = diag.len();
        let mut torsion: Vec<u64> = diag.into_iter().map(|d| d.unsigned_abs()).filter(|&d| d > 1).collect();
        torsion.sort();
        H1 { betti: ne - rank_d1 - rank_d2, torsion }
    }
}

/// Nonzero diagonal entries of the Smith normal form; destroys `m`.
fn smith_diagonal(m: &mut [Vec<i64>]) -> Vec<i64> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // pivot: least nonzero absolute value in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for (i, row) in m.iter().enumerate().skip(t) {
            for (j, &x) in row.iter().enumerate().skip(t) {
                if x != 0 && best.is_none_or(|(bi, bj)| x.abs() < m[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let p = m[t][t];
            let mut dirty = false;
            for i in t + 1..rows {
                let q = m[i][t] / p;
                if q != 0 {
                    for j in t..cols {
                        m[i][j] -= q * m[t][j];
                    }
                }
                if m[i][t] != 0 {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                let q = m[t][j] / p;
                if q != 0 {
                    for row in m.iter_mut().skip(t) {
                        row[j] -= q * row[t];
                    }
                }
                if m[t][j] != 0 {
                    dirty = true;
                }
            }
            if !dirty {
                // divisibility of the rest by the pivot
                let bad =
                    (t + 1..rows).flat_map(|i| (t + 1..cols).map(move |j| (i, j))).find(|&(i, j)| m[i][j] % p != 0);
                match bad {
                    None => break,
                    Some((i, _)) => {
                        for j in t..cols {
                            m[t][j] += m[i][j];
                        }
                        continue;
                    }
                }
            }
            // move the smallest entry of row t / column t to the pivot
            let mut best = (t, t);
            for i in t..rows {
                if m[i][t] != 0 && m[i][t].abs() < m[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t..cols {
                if m[t][j] != 0 && m[t][j].abs() < m[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            m.swap(t, best.0);
            for row in m.iter_mut() {
                row.swap(t, best.1);
            }
        }
        out.push(m[t][t]);
        t += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_vertex(loops: usize, faces: Vec<Vec<(usize, bool)>>) -> CellComplex {
        CellComplex { vertices: 1, edges: vec![[0, 0]; loops], faces }
    }

    #[test]
    fn projective_plane() {
        let c = one_vertex(1, vec![vec![(0, true), (0, true)]]);
        assert_eq!(c.h1(), H1 { betti: 0, torsion: vec![2] });
        assert_eq!(c.euler_characteristic(), 1);
    }

    #[test]
    fn torus_and_klein() {
        let t = one_vertex(2, vec![vec![(0, true), (1, true), (0, false), (1, false)]]);
        assert_eq!(t.h1().to_string(), "Z^2");
        let k = one_vertex(2, vec![vec![(0, true), (1, true), (0, false), (1, true)]]);
        assert_eq!(k.h1().to_string(), "Z+Z/2");
    }

    #[test]
    fn triple_wrap() {
        let c = one_vertex(1, vec![vec![(0, true); 3]]);
        assert_eq!(c.h1().to_string(), "Z/3");
    }

    #[test]
    fn needs_divisibility_fix() {
        // diag(2, 3) is Z/6
        let c = one_vertex(2, vec![vec![(0, true); 2], vec![(1, true); 3]]);
        assert_eq!(c.h1().to_string(), "Z/6");
    }
}
