//! Skeleta of pairs: standard polyhedra, a few named non-standard atoms,
//! and connected sums of those joined by arcs.

use std::fmt;

use thiserror::Error;

use super::ograph::{germ_index, Circle, PolyError, SpecialPolyhedron, SpineKind, SurfaceKind};
use super::signature::canonical_signature;
use super::validate::marked_hexagons;

/// Minimal skeleta that are not standard.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AtomSkeleton {
    /// Skeleton of `S^3`.
    Point,
    /// One circle with a face wrapping three times: `L(3,1)`.
    TripleHat,
    /// `P^2` inside `P^3`.
    ProjectivePlane,
    /// `S^2` with an arc joining its two sides; the arc reverses
    /// orientation when `twisted`.
    S2JoinS1 { twisted: bool },
    /// Torus `θ` plus a meridian disc (solid torus).
    P1,
    /// Klein bottle `θ` plus a meridian disc (solid Klein bottle).
    P1prime,
}

impl AtomSkeleton {
    pub fn name(&self) -> &'static str {
        match self {
            AtomSkeleton::Point => "Point",
            AtomSkeleton::TripleHat => "TripleHat",
            AtomSkeleton::ProjectivePlane => "ProjectivePlane",
            AtomSkeleton::S2JoinS1 { twisted: false } => "S2JoinS1",
            AtomSkeleton::S2JoinS1 { twisted: true } => "S2JoinS1~",
            AtomSkeleton::P1 => "P1",
            AtomSkeleton::P1prime => "P1prime",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        [
            AtomSkeleton::Point,
            AtomSkeleton::TripleHat,
            AtomSkeleton::ProjectivePlane,
            AtomSkeleton::S2JoinS1 { twisted: false },
            AtomSkeleton::S2JoinS1 { twisted: true },
            AtomSkeleton::P1,
            AtomSkeleton::P1prime,
        ]
        .into_iter()
        .find(|a| a.name() == name)
    }

    pub fn boundaries(&self) -> Vec<(SurfaceKind, SpineKind)> {
        match self {
            AtomSkeleton::P1 => vec![(SurfaceKind::Torus, SpineKind::Theta)],
            AtomSkeleton::P1prime => vec![(SurfaceKind::Klein, SpineKind::Theta)],
            _ => Vec::new(),
        }
    }
}

/// The triple hat as an o-graph: a single circle whose wings cycle.
pub fn triple_hat() -> SpecialPolyhedron {
    SpecialPolyhedron::new(0, vec![], vec![Circle { perm: 3 }], vec![]).expect("well formed")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Skeleton {
    Standard(SpecialPolyhedron),
    Atom(AtomSkeleton),
    /// Parts joined in a chain by arcs avoiding vertices.
    Sum(Vec<Skeleton>),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SkeletonError {
    #[error("boundary component {0} not found")]
    NoSuchBoundary(usize),
    #[error("marked faces are not hexagonal: {0}")]
    BadMarks(String),
    #[error(transparent)]
    Structure(#[from] PolyError),
}

impl Skeleton {
    /// Marked boundary components, parts in order.
    pub fn boundaries(&self) -> Result<Vec<(SurfaceKind, SpineKind)>, SkeletonError> {
        match self {
            Skeleton::Standard(p) => {
                let faces = p.trace_faces()?;
                let hexes = marked_hexagons(p, &faces).map_err(SkeletonError::BadMarks)?;
                Ok(hexes.iter().map(|h| (h.surface, h.spine)).collect())
            }
            Skeleton::Atom(a) => Ok(a.boundaries()),
            Skeleton::Sum(parts) => {
                let mut out = Vec::new();
                for p in parts {
                    out.extend(p.boundaries()?);
                }
                Ok(out)
            }
        }
    }

    pub fn num_boundaries(&self) -> usize {
        match self {
            Skeleton::Standard(p) => p.marks().len(),
            Skeleton::Atom(a) => a.boundaries().len(),
            Skeleton::Sum(parts) => parts.iter().map(Skeleton::num_boundaries).sum(),
        }
    }

    /// Vertices of `P` off the boundary.
    pub fn interior_vertices(&self) -> usize {
        match self {
            Skeleton::Standard(p) => p.num_vertices() - 2 * p.marks().len(),
            Skeleton::Atom(_) => 0,
            Skeleton::Sum(parts) => parts.iter().map(Skeleton::interior_vertices).sum(),
        }
    }

    /// Part of a sum holding boundary `index`, with the index inside it.
    pub fn locate_boundary(&self, index: usize) -> Result<(usize, usize), SkeletonError> {
        match self {
            Skeleton::Sum(parts) => {
                let mut k = index;
                for (i, p) in parts.iter().enumerate() {
                    let n = p.num_boundaries();
                    if k < n {
                        return Ok((i, k));
                    }
                    k -= n;
                }
                Err(SkeletonError::NoSuchBoundary(index))
            }
            other if index < other.num_boundaries() => Ok((0, index)),
            _ => Err(SkeletonError::NoSuchBoundary(index)),
        }
    }

    /// Isomorphism-invariant key; equal keys mean equal skeleta up to
    /// relabelling and reordering of summands.
    pub fn key(&self) -> String {
        match self {
            Skeleton::Standard(p) => format!("S:{}", canonical_signature(p).to_hex()),
            Skeleton::Atom(a) => format!("A:{}", a.name()),
            Skeleton::Sum(parts) => {
                let mut keys: Vec<String> = parts.iter().map(Skeleton::key).collect();
                keys.sort();
                format!("#({})", keys.join(","))
            }
        }
    }

    pub fn is_standard(&self) -> bool {
        matches!(self, Skeleton::Standard(p) if p.circles().is_empty())
    }
}

impl fmt::Display for Skeleton {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Skeleton::Standard(p) => {
                write!(f, "standard(v={}, #X={})", p.num_vertices() - 2 * p.marks().len(), p.marks().len())
            }
            Skeleton::Atom(a) => f.write_str(a.name()),
            Skeleton::Sum(parts) => {
                let s: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
                write!(f, "{}", s.join(" # "))
            }
        }
    }
}

/// Collapses free parts away: a point summand together with the arc that
/// reaches it, nested sums, and an o-graph that is exactly the triple hat.
/// Standard polyhedra have no free faces and are returned unchanged.
pub fn nuclear_collapse(skel: &Skeleton) -> Skeleton {
    match skel {
        Skeleton::Standard(p) => {
            if p.num_vertices() == 0 && p.marks().is_empty() && p.circles().len() == 1 {
                let perm = p.circles()[0].perm;
                if perm == 3 || perm == 4 {
                    return Skeleton::Atom(AtomSkeleton::TripleHat);
                }
            }
            skel.clone()
        }
        Skeleton::Atom(_) => skel.clone(),
        Skeleton::Sum(parts) => {
            let mut flat = Vec::new();
            for p in parts {
                match nuclear_collapse(p) {
                    Skeleton::Sum(inner) => flat.extend(inner),
                    Skeleton::Atom(AtomSkeleton::Point) => {}
                    other => flat.push(other),
                }
            }
            match flat.len() {
                0 => Skeleton::Atom(AtomSkeleton::Point),
                1 => flat.pop().expect("one part"),
                _ => Skeleton::Sum(flat),
            }
        }
    }
}

/// Whether the three `P`-germs along the spine of mark `index` lie on three
/// different faces. Distinct faces are counted, so a face reaching τ twice
/// makes the answer false.
pub fn three_distinct_faces(poly: &SpecialPolyhedron, index: usize) -> Result<bool, SkeletonError> {
    let faces = poly.trace_faces()?;
    let hexes = marked_hexagons(poly, &faces).map_err(SkeletonError::BadMarks)?;
    let h = hexes.get(index).ok_or(SkeletonError::NoSuchBoundary(index))?;
    // one germ inside P along each edge of the spine
    let mut ids: Vec<u32> = h
        .tau_edges
        .iter()
        .map(|&e| {
            let end = poly.edges()[e as usize].ends[0];
            let k = if h.vertices[0] == end.vertex { 0 } else { 1 };
            faces.germ_face[end.vertex as usize][germ_index(end.slot, h.pslots[k]) as usize]
        })
        .collect();
    ids.sort();
    ids.dedup();
    Ok(ids.len() == 3)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triple_hat_is_one_face() {
        let t = triple_hat();
        assert_eq!(t.trace_faces().unwrap().faces.len(), 1);
        assert_eq!(t.euler_characteristic().unwrap(), 1);
    }

    #[test]
    fn collapse_drops_point_summands() {
        let s = Skeleton::Sum(vec![
            Skeleton::Atom(AtomSkeleton::Point),
            Skeleton::Sum(vec![Skeleton::Atom(AtomSkeleton::ProjectivePlane), Skeleton::Atom(AtomSkeleton::Point)]),
        ]);
        assert_eq!(nuclear_collapse(&s), Skeleton::Atom(AtomSkeleton::ProjectivePlane));
        let again = nuclear_collapse(&nuclear_collapse(&s));
        assert_eq!(again, nuclear_collapse(&s));
    }

    #[test]
    fn circle_graph_becomes_triple_hat() {
        assert_eq!(nuclear_collapse(&Skeleton::Standard(triple_hat())), Skeleton::Atom(AtomSkeleton::TripleHat));
    }

    #[test]
    fn sum_keys_ignore_order() {
        let a =
            Skeleton::Sum(vec![Skeleton::Atom(AtomSkeleton::TripleHat), Skeleton::Atom(AtomSkeleton::ProjectivePlane)]);
        let b =
            Skeleton::Sum(vec![Skeleton::Atom(AtomSkeleton::ProjectivePlane), Skeleton::Atom(AtomSkeleton::TripleHat)]);
        assert_eq!(a.key(), b.key());
    }
}
