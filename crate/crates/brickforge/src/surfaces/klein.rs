//! Loops and mapping classes on the Klein bottle.
//!
//! `K` is the unit square with `(s, 0) ~ (s, 1)` (edge `X`) and
//! `(0, t) ~ (1, 1 - t)` (edge `Y`), cut by the diagonal `D` from `(0, 0)` to
//! `(1, 1)` into a lower triangle `T1 = (0,0) (1,0) (1,1)` and an upper
//! triangle `T2 = (0,0) (1,1) (0,1)`. All four corners are one vertex.
//!
//! Crossing `X` upwards is the loop `a` and crossing `Y` rightwards is `b`,
//! so `H_1(K) = <a, b | 2a = 0>` and a loop reverses orientation iff it
//! crosses `Y` an odd number of times.

use std::collections::BTreeMap;
use std::fmt;

/// Normal coordinates `(n, m, p, n', m', p')`.
///
/// In `T1`, `n`, `m`, `p` count arcs around the corners `(1,0)`, `(0,0)` and
/// `(1,1)`; in `T2`, `n'`, `m'`, `p'` count arcs around `(0,1)`, `(1,1)` and
/// `(0,0)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalCurve {
    pub n: u32,
    pub m: u32,
    pub p: u32,
    pub n2: u32,
    pub m2: u32,
    pub p2: u32,
}

impl NormalCurve {
    pub fn new(c: [u32; 6]) -> Self {
        NormalCurve { n: c[0], m: c[1], p: c[2], n2: c[3], m2: c[4], p2: c[5] }
    }

    pub fn coords(&self) -> [u32; 6] {
        [self.n, self.m, self.p, self.n2, self.m2, self.p2]
    }

    /// Number of intersections with the edges.
    pub fn weight(&self) -> u32 {
        self.coords().iter().sum()
    }

    /// Edge intersection counts seen from `T1` and from `T2`, per edge
    /// `X`, `Y`, `D`.
    fn edge_counts(&self) -> ([u32; 3], [u32; 3]) {
        let (a1, b1, c1) = (self.m, self.n, self.p);
        let (a2, c2, e2) = (self.p2, self.m2, self.n2);
        ([a1 + b1, b1 + c1, a1 + c1], [c2 + e2, a2 + e2, a2 + c2])
    }

    pub fn satisfies_matching(&self) -> bool {
        let (s, t) = self.edge_counts();
        s == t
    }

    /// Traces the curve. Returns `None` when the matching equations fail.
    pub fn components(&self) -> Option<Vec<LoopData>> {
        if !self.satisfies_matching() {
            return None;
        }
        let ([cx, cy, cd], _) = self.edge_counts();
        let (cx, cy, cd) = (cx as usize, cy as usize, cd as usize);
        // points: X_i (i from the left), Y_i (on the right side, from the
        // bottom), D_i (from (0,0))
        let xp = |i: usize| i;
        let yp = |i: usize| cx + i;
        let dp = |i: usize| cx + cy + i;
        let np = cx + cy + cd;
        // each point gets its T1 arc and its T2 arc
        let mut t1 = vec![usize::MAX; np];
        let mut t2 = vec![usize::MAX; np];
        let link = |side: &mut Vec<usize>, a: usize, b: usize| {
            side[a] = b;
            side[b] = a;
        };
        for k in 0..self.m as usize {
            link(&mut t1, xp(k), dp(k));
        }
        for k in 0..self.n as usize {
            link(&mut t1, xp(cx - 1 - k), yp(k));
        }
        for k in 0..self.p as usize {
            link(&mut t1, yp(cy - 1 - k), dp(cd - 1 - k));
        }
        // in T2 the left side point at height index j is Y_{cy-1-j}
        let left = |j: usize| yp(cy - 1 - j);
        for k in 0..self.p2 as usize {
            link(&mut t2, dp(k), left(k));
        }
        for k in 0..self.m2 as usize {
            link(&mut t2, dp(cd - 1 - k), xp(cx - 1 - k));
        }
        for k in 0..self.n2 as usize {
            link(&mut t2, xp(k), left(cy - 1 - k));
        }
        let mut seen = vec![false; np];
        let mut out = Vec::new();
        for start in 0..np {
            if seen[start] {
                continue;
            }
            // walk leaving `start` into T1 first
            let mut data = LoopData::default();
            let mut at = start;
            let mut in_t1 = true;
            loop {
                seen[at] = true;
                let next = if in_t1 { t1[at] } else { t2[at] };
                // arriving at `next` from the current triangle, then crossing
                let sign: i64 = if in_t1 { -1 } else { 1 };
                if next < cx {
                    // T1 lies above the bottom copy of X
                    data.a += sign;
                } else if next < cx + cy {
                    data.y_crossings += 1;
                    data.b -= sign;
                }
                data.length += 1;
                at = next;
                in_t1 = !in_t1;
                if at == start && in_t1 {
                    break;
                }
            }
            out.push(data);
        }
        Some(out)
    }
}

/// Homological data of one traced loop.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LoopData {
    a: i64,
    b: i64,
    y_crossings: u32,
    length: u32,
}

impl LoopData {
    pub fn class(&self) -> H1Class {
        H1Class::new(self.a, self.b).unsigned()
    }

    pub fn orientation_preserving(&self) -> bool {
        self.y_crossings % 2 == 0
    }
}

/// An element `ea + kb` of `H_1(K) = Z/2 + Z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct H1Class {
    pub a: u8,
    pub b: i64,
}

impl H1Class {
    pub fn new(a: i64, b: i64) -> Self {
        H1Class { a: a.rem_euclid(2) as u8, b }
    }

    pub fn add(self, o: H1Class) -> H1Class {
        H1Class::new((self.a + o.a) as i64, self.b + o.b)
    }

    pub fn neg(self) -> H1Class {
        H1Class::new(self.a as i64, -self.b)
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    /// Representative of `{x, -x}`, for unoriented loops.
    pub fn unsigned(self) -> H1Class {
        H1Class { a: self.a, b: self.b.abs() }
    }
}

impl fmt::Display for H1Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b = match self.b.abs() {
            0 => String::new(),
            1 => "b".to_string(),
            k => format!("{k}b"),
        };
        match (self.a, b.is_empty()) {
            (0, true) => write!(f, "0"),
            (1, true) => write!(f, "a"),
            (0, false) => write!(f, "±{b}"),
            _ => write!(f, "a±{b}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoopClass {
    pub h1: H1Class,
    pub orientation_preserving: bool,
    /// Lightest normal representative.
    pub representative: NormalCurve,
}

/// All normal curves of weight at most `max_weight` satisfying the matching
/// equations.
pub fn matching_solutions(max_weight: u32) -> Vec<NormalCurve> {
    let mut out = Vec::new();
    let w = max_weight;
    for n in 0..=w {
        for m in 0..=w - n {
            for p in 0..=w - n - m {
                let used = n + m + p;
                for n2 in 0..=w - used {
                    for m2 in 0..=w - used - n2 {
                        for p2 in 0..=w - used - n2 - m2 {
                            let c = NormalCurve::new([n, m, p, n2, m2, p2]);
                            if c.satisfies_matching() {
                                out.push(c);
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// Isotopy classes of simple closed curves met by connected normal curves
/// of weight at most `max_weight`, keyed by unsigned homology class. The
/// trivial class is included when present.
pub fn classify_loops_klein(max_weight: u32) -> Vec<LoopClass> {
    let mut classes: BTreeMap<H1Class, LoopClass> = BTreeMap::new();
    let mut sols = matching_solutions(max_weight);
    sols.sort_by_key(|c| (c.weight(), c.coords()));
    for c in sols {
        let comps = c.components().expect("solutions satisfy matching");
        if comps.len() != 1 {
            continue;
        }
        let d = comps[0];
        classes.entry(d.class()).or_insert(LoopClass {
            h1: d.class(),
            orientation_preserving: d.orientation_preserving(),
            representative: c,
        });
    }
    if !classes.contains_key(&H1Class::new(0, 0)) {
        classes.insert(
            H1Class::new(0, 0),
            LoopClass {
                h1: H1Class::new(0, 0),
                orientation_preserving: true,
                representative: NormalCurve::new([0; 6]),
            },
        );
    }
    classes.into_values().collect()
}

/// Non-trivial classes only.
pub fn nontrivial_loops_klein(max_weight: u32) -> Vec<LoopClass> {
    classify_loops_klein(max_weight).into_iter().filter(|c| !c.h1.is_zero()).collect()
}

/// Automorphism of `H_1(K)` fixing `a` and sending `b` to `delta a + eps b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MappingClass {
    pub delta: u8,
    pub eps: i8,
}

impl MappingClass {
    pub const ID: MappingClass = MappingClass { delta: 0, eps: 1 };
    pub const PHI: MappingClass = MappingClass { delta: 0, eps: -1 };
    pub const PSI: MappingClass = MappingClass { delta: 1, eps: 1 };

    pub fn apply(&self, x: H1Class) -> H1Class {
        let image_b = H1Class::new(self.delta as i64, self.eps as i64);
        let mut out = H1Class::new(x.a as i64, 0);
        for _ in 0..x.b.abs() {
            out = if x.b > 0 { out.add(image_b) } else { out.add(image_b.neg()) };
        }
        out
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &MappingClass) -> MappingClass {
        let b = self.apply(other.apply(H1Class::new(0, 1)));
        MappingClass { delta: b.a, eps: b.b as i8 }
    }

    pub fn name(&self) -> &'static str {
        match (self.delta, self.eps) {
            (0, 1) => "id",
            (0, -1) => "phi",
            (1, 1) => "psi",
            _ => "phipsi",
        }
    }

    /// Matrix on the basis `(a, b)`, columns are images; the `a` row is
    /// read mod 2.
    pub fn matrix(&self) -> [[i64; 2]; 2] {
        [[1, self.delta as i64], [0, self.eps as i64]]
    }
}

impl fmt::Display for MappingClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.matrix();
        write!(f, "{} [[{},{}],[{},{}]]", self.name(), m[0][0], m[0][1], m[1][0], m[1][1])
    }
}

#[derive(Clone, Debug)]
pub struct McgTable {
    pub elements: Vec<MappingClass>,
    /// `table[i][j]` is the index of `elements[i] ∘ elements[j]`.
    pub table: Vec<Vec<usize>>,
}

impl McgTable {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|i| (0..n).all(|j| self.table[i][j] == self.table[j][i]))
    }

    pub fn all_involutions(&self) -> bool {
        let id = self.elements.iter().position(|e| *e == MappingClass::ID);
        (0..self.order()).all(|i| Some(self.table[i][i]) == id)
    }

    /// Distinct elements act differently on `H_1`.
    pub fn faithful(&self) -> bool {
        let probes = [H1Class::new(1, 0), H1Class::new(0, 1)];
        let mut acts: Vec<_> = self.elements.iter().map(|e| probes.map(|p| e.apply(p))).collect();
        acts.sort();
        acts.dedup();
        acts.len() == self.order()
    }
}

/// Automorphisms of `H_1(K)` that preserve the orientation character and
/// permute the loop classes. The torsion element `a` is forced to be fixed.
pub fn mcg_klein() -> McgTable {
    let loops = nontrivial_loops_klein(4);
    let mut elements = Vec::new();
    for delta in 0..2u8 {
        for eps in [1i8, -1] {
            let f = MappingClass { delta, eps };
            let ok = loops.iter().all(|l| {
                let img = f.apply(l.h1).unsigned();
                loops.iter().any(|m| m.h1 == img && m.orientation_preserving == l.orientation_preserving)
            });
            if ok {
                elements.push(f);
            }
        }
    }
    elements.sort_by_key(|e| e.name());
    let idx = |m: MappingClass| elements.iter().position(|e| *e == m).expect("closed");
    let table = elements.iter().map(|x| elements.iter().map(|y| idx(x.compose(y))).collect()).collect();
    McgTable { elements, table }
}

/// `klein-v1` text.
pub fn write_klein_table(loops: &[LoopClass], mcg: &McgTable) -> String {
    let mut out = String::new();
    for l in loops {
        let c = l.representative.coords();
        out.push_str(&format!(
            "LOOP {} {} {},{},{},{},{},{}\n",
            l.h1,
            u8::from(l.orientation_preserving),
            c[0],
            c[1],
            c[2],
            c[3],
            c[4],
            c[5]
        ));
    }
    for e in &mcg.elements {
        let m = e.matrix();
        out.push_str(&format!("MCG {} {},{};{},{}\n", e.name(), m[0][0], m[0][1], m[1][0], m[1][1]));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vertex_link_is_trivial() {
        let c = NormalCurve::new([1; 6]);
        let comps = c.components().unwrap();
        assert_eq!(comps.len(), 1);
        assert!(comps[0].class().is_zero());
        assert!(comps[0].orientation_preserving());
    }

    #[test]
    fn weight_zero_only_trivial() {
        let l = classify_loops_klein(0);
        assert_eq!(l.len(), 1);
        assert!(l[0].h1.is_zero());
    }

    #[test]
    fn psi_moves_b_to_a_plus_b() {
        assert_eq!(MappingClass::PSI.apply(H1Class::new(0, 1)), H1Class::new(1, 1));
        assert_eq!(MappingClass::PHI.compose(&MappingClass::PHI), MappingClass::ID);
    }
}
