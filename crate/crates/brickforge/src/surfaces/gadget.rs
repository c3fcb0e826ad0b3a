//! A boundary component `(C, τ)` inside `P ∪ ∂M`: two vertices joined by
//! the three edges of `τ`, whose germs away from slot 3 form the hexagon
//! `C ∖ τ`. Slot 3 at each vertex leaves `C` into `P`.

use std::collections::BTreeSet;
use std::fmt;

use crate::polyhedron::{
    perm_compose, perm_index, perm_inverse, Corner, Edge, End, SpecialPolyhedron, SpineKind, Step, SurfaceKind, PERMS,
};

/// The slot leaving the boundary surface.
pub const PSLOT: u8 = 3;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MarkedSurface {
    pub surface: SurfaceKind,
    pub spine: SpineKind,
    /// Cyclic boundary word of the hexagon: `±(k+1)` for τ-edge `k`, sign
    /// by direction of travel.
    pub hexagon_word: Vec<i8>,
}

impl MarkedSurface {
    pub fn euler(&self) -> i64 {
        // two vertices, three edges, one hexagon
        2 - 3 + 1
    }

    pub fn is_allowed(&self) -> bool {
        !(self.surface == SurfaceKind::Torus && self.spine == SpineKind::Sigma)
    }
}

impl fmt::Display for MarkedSurface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.surface, self.spine)
    }
}

/// Local τ-graph on vertices 0 and 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Gadget {
    pub spine: SpineKind,
    pub edges: [Edge; 3],
}

/// Ends of the three τ-edges before wing choices.
fn frame(spine: SpineKind) -> [[(usize, u8); 2]; 3] {
    match spine {
        SpineKind::Theta => [[(0, 0), (1, 0)], [(0, 1), (1, 1)], [(0, 2), (1, 2)]],
        SpineKind::Sigma => [[(0, 0), (0, 1)], [(1, 0), (1, 1)], [(0, 2), (1, 2)]],
    }
}

/// Wing permutations at a far end that keep the slot-3 germs together.
/// Wing 2 is the `P` wing at a near end with identity permutation.
const HEX_PERMS: [u8; 2] = [0, 2];

impl Gadget {
    fn from_choice(spine: SpineKind, choice: [u8; 3]) -> Gadget {
        let f = frame(spine);
        let mk = |k: usize| {
            let [(a, s), (b, t)] = f[k];
            Edge::new(End::new(a, s, 0), End::new(b, t, choice[k]))
        };
        Gadget { spine, edges: [mk(0), mk(1), mk(2)] }
    }

    fn as_poly(&self) -> SpecialPolyhedron {
        SpecialPolyhedron::new(2, self.edges.to_vec(), vec![], vec![]).expect("well formed")
    }

    /// Hexagon orbit from corner `(0, 0 -> 1)`, if it covers all six
    /// boundary germs.
    pub fn hexagon(&self) -> Option<(Vec<Corner>, Vec<Step>)> {
        let (corners, steps) = self.as_poly().trace_orbit(Corner { vertex: 0, from: 0, to: 1 }).ok()?;
        if corners.len() == 6 && corners.iter().all(|c| c.from != PSLOT && c.to != PSLOT) {
            Some((corners, steps))
        } else {
            None
        }
    }

    pub fn surface(&self) -> Option<SurfaceKind> {
        let (_, steps) = self.hexagon()?;
        let mut dirs = [[0u8; 2]; 3];
        for s in steps {
            if let Step::Edge { edge, from } = s {
                dirs[edge as usize][from as usize] += 1;
            }
        }
        if dirs.iter().all(|d| d == &[1, 1]) {
            Some(SurfaceKind::Torus)
        } else {
            Some(SurfaceKind::Klein)
        }
    }

    pub fn marked_surface(&self) -> Option<MarkedSurface> {
        let (_, steps) = self.hexagon()?;
        let hexagon_word = steps
            .iter()
            .map(|s| match *s {
                Step::Edge { edge, from } => {
                    let k = edge as i8 + 1;
                    if from == 0 {
                        k
                    } else {
                        -k
                    }
                }
                Step::Circle { .. } => 0,
            })
            .collect();
        Some(MarkedSurface { surface: self.surface()?, spine: self.spine, hexagon_word })
    }

    /// Every wing choice whose boundary germs close into one hexagon.
    pub fn all(spine: SpineKind) -> Vec<Gadget> {
        let mut out = Vec::new();
        for a in HEX_PERMS {
            for b in HEX_PERMS {
                for c in HEX_PERMS {
                    let g = Gadget::from_choice(spine, [a, b, c]);
                    if g.hexagon().is_some() {
                        out.push(g);
                    }
                }
            }
        }
        out
    }

    /// The gadget realising `(surface, spine)`, least in enumeration order.
    pub fn standard(surface: SurfaceKind, spine: SpineKind) -> Option<Gadget> {
        Gadget::all(spine).into_iter().find(|g| g.surface() == Some(surface))
    }

    /// Isomorphism-invariant key.
    pub fn canonical_key(&self) -> Vec<(usize, u8, usize, u8, u8)> {
        GadgetMap::all_frames().map(|m| edge_key(&map_edges(&self.edges, &m))).min().expect("nonempty")
    }

    /// Relabellings of the two vertices and their boundary slots that carry
    /// the gadget onto itself, hexagon included.
    pub fn automorphisms(&self) -> Vec<GadgetMap> {
        let key = edge_key(&self.edges);
        GadgetMap::all_frames().filter(|m| edge_key(&map_edges(&self.edges, m)) == key).collect()
    }

    /// Edges moved to vertices `u` and `v` of a larger structure.
    pub fn placed(&self, u: usize, v: usize) -> [Edge; 3] {
        let at = |x: u32| if x == 0 { u } else { v };
        self.edges.map(|e| {
            Edge::new(
                End::new(at(e.ends[0].vertex), e.ends[0].slot, e.ends[0].perm),
                End::new(at(e.ends[1].vertex), e.ends[1].slot, e.ends[1].perm),
            )
        })
    }
}

/// A vertex bijection of `{0, 1}` plus permutations of slots `0..3` at
/// each vertex; slot 3 is fixed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GadgetMap {
    pub swap: bool,
    /// `slots[x]` maps slots of source vertex `x` to slots of its image.
    pub slots: [[u8; 4]; 2],
}

impl GadgetMap {
    pub fn vertex(&self, x: usize) -> usize {
        if self.swap {
            1 - x
        } else {
            x
        }
    }

    pub fn all_frames() -> impl Iterator<Item = GadgetMap> {
        let s3: Vec<[u8; 4]> = PERMS.iter().map(|p| [p[0], p[1], p[2], PSLOT]).collect();
        let mut out = Vec::with_capacity(72);
        for swap in [false, true] {
            for a in &s3 {
                for b in &s3 {
                    out.push(GadgetMap { swap, slots: [*a, *b] });
                }
            }
        }
        out.into_iter()
    }
}

fn map_end(e: &End, m: &GadgetMap) -> End {
    let x = e.vertex as usize;
    let sm = m.slots[x];
    let ns = sm[e.slot as usize];
    let mut p = [0u8; 3];
    for w in 0..3u8 {
        let t = e.wing_slot(w);
        p[w as usize] = crate::polyhedron::other_index(ns, sm[t as usize]);
    }
    End::new(m.vertex(x), ns, perm_index(p))
}

fn map_edges(edges: &[Edge; 3], m: &GadgetMap) -> [Edge; 3] {
    edges.map(|e| Edge::new(map_end(&e.ends[0], m), map_end(&e.ends[1], m)))
}

/// Edges as a sorted list of `(v0, s0, v1, s1, composite)` with the smaller
/// end first.
fn edge_key(edges: &[Edge; 3]) -> Vec<(usize, u8, usize, u8, u8)> {
    let mut out: Vec<_> = edges
        .iter()
        .map(|e| {
            let [a, b] = e.ends;
            let (a, b) = if (a.vertex, a.slot) <= (b.vertex, b.slot) { (a, b) } else { (b, a) };
            let comp = perm_compose(b.perm, perm_inverse(a.perm));
            (a.vertex as usize, a.slot, b.vertex as usize, b.slot, comp)
        })
        .collect();
    out.sort();
    out
}

/// Gadgets up to isomorphism, one per class, with their surface.
pub fn gadget_classes(spine: SpineKind) -> Vec<(SurfaceKind, Gadget)> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for g in Gadget::all(spine) {
        if seen.insert(g.canonical_key()) {
            out.push((g.surface().expect("hexagonal"), g));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eight_choices_per_spine() {
        for spine in [SpineKind::Theta, SpineKind::Sigma] {
            let n = HEX_PERMS.len().pow(3);
            assert_eq!(n, 8);
            assert!(Gadget::all(spine).len() <= n);
        }
    }

    #[test]
    fn theta_and_sigma_kinds() {
        let th: Vec<_> = gadget_classes(SpineKind::Theta).into_iter().map(|c| c.0).collect();
        let si: Vec<_> = gadget_classes(SpineKind::Sigma).into_iter().map(|c| c.0).collect();
        assert_eq!(th.iter().filter(|s| **s == SurfaceKind::Torus).count(), 1);
        assert_eq!(th.iter().filter(|s| **s == SurfaceKind::Klein).count(), 1);
        assert_eq!(si, vec![SurfaceKind::Klein]);
    }
}
