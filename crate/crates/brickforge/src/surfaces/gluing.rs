//! Identifications of boundary components.

use thiserror::Error;

use super::gadget::{Gadget, MarkedSurface};
use crate::polyhedron::{
    analyze_hexagon, disjoint_union, germ_index, splice, Corner, Mark, PolyError, SpecialPolyhedron, SpineKind,
    SurfaceKind, VertexPair,
};

/// A marked boundary component located inside a polyhedron.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Boundary {
    pub surface: SurfaceKind,
    pub spine: SpineKind,
    pub vertices: [u32; 2],
    pub pslots: [u8; 2],
    /// The hexagon as a cyclic sequence of corners.
    pub corners: Vec<Corner>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GluingError {
    #[error("boundary {0} does not exist")]
    NoSuchBoundary(usize),
    #[error("boundary {0} is not a marked hexagon")]
    NotHexagon(usize),
    #[error("spine kinds differ: {0} against {1}")]
    KindMismatch(String, String),
    #[error("a boundary cannot be glued to itself")]
    SameComponent,
    #[error("gluing index {0} out of range")]
    BadIndex(usize),
    #[error(transparent)]
    Structure(#[from] PolyError),
}

impl Boundary {
    pub fn marked_surface(&self) -> MarkedSurface {
        MarkedSurface { surface: self.surface, spine: self.spine, hexagon_word: Vec::new() }
    }

    fn local(&self, v: u32) -> usize {
        if self.vertices[0] == v {
            0
        } else {
            1
        }
    }
}

/// The boundary recorded by mark `index`.
pub fn boundary_of(poly: &SpecialPolyhedron, index: usize) -> Result<Boundary, GluingError> {
    let m = poly.marks().get(index).ok_or(GluingError::NoSuchBoundary(index))?;
    let faces = poly.trace_faces()?;
    let fid = faces.germ_face[m.vertex as usize][m.germ as usize] as usize;
    let h = analyze_hexagon(poly, &faces, fid).ok_or(GluingError::NotHexagon(index))?;
    Ok(Boundary {
        surface: h.surface,
        spine: h.spine,
        vertices: h.vertices,
        pslots: h.pslots,
        corners: faces.faces[fid].corners.clone(),
    })
}

/// The boundary of a free-standing gadget on vertices 0 and 1.
pub fn gadget_boundary(g: &Gadget) -> Boundary {
    let (corners, _) = g.hexagon().expect("gadget is hexagonal");
    Boundary {
        surface: g.surface().expect("hexagonal"),
        spine: g.spine,
        vertices: [0, 1],
        pslots: [super::PSLOT; 2],
        corners,
    }
}

/// A homeomorphism between two marked boundaries, as a map of spine
/// vertices and their slots (the `P`-slot goes to the `P`-slot).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GluingMap {
    /// `image[x]` is the target-local index of source vertex `x`.
    pub image: [u8; 2],
    pub slots: [[u8; 4]; 2],
    /// Whether the hexagon is carried with reversed boundary direction.
    pub reversing: bool,
}

impl GluingMap {
    fn corner(&self, src: &Boundary, dst: &Boundary, c: &Corner) -> Corner {
        let x = src.local(c.vertex);
        let sm = self.slots[x];
        Corner { vertex: dst.vertices[self.image[x] as usize], from: sm[c.from as usize], to: sm[c.to as usize] }
    }
}

fn bijections_fixing(p: u8, q: u8) -> Vec<[u8; 4]> {
    let mut out = Vec::new();
    let rest_p: Vec<u8> = (0..4).filter(|&s| s != p).collect();
    let rest_q: Vec<u8> = (0..4).filter(|&s| s != q).collect();
    for perm in crate::polyhedron::PERMS {
        let mut m = [0u8; 4];
        m[p as usize] = q;
        for k in 0..3 {
            m[rest_p[k] as usize] = rest_q[perm[k] as usize];
        }
        out.push(m);
    }
    out
}

fn cyclic_match(a: &[Corner], b: &[Corner]) -> bool {
    let n = a.len();
    n == b.len() && (0..n).any(|r| (0..n).all(|i| a[i] == b[(i + r) % n]))
}

fn reversed(cs: &[Corner]) -> Vec<Corner> {
    cs.iter().rev().map(|c| Corner { vertex: c.vertex, from: c.to, to: c.from }).collect()
}

/// Every homeomorphism of `src` onto `dst` preserving spines.
pub fn boundary_isomorphisms(src: &Boundary, dst: &Boundary) -> Vec<GluingMap> {
    if src.spine != dst.spine || src.surface != dst.surface {
        return Vec::new();
    }
    let rev = reversed(&dst.corners);
    let mut out = Vec::new();
    for image in [[0u8, 1], [1, 0]] {
        for s0 in bijections_fixing(src.pslots[0], dst.pslots[image[0] as usize]) {
            for s1 in bijections_fixing(src.pslots[1], dst.pslots[image[1] as usize]) {
                for reversing in [false, true] {
                    let g = GluingMap { image, slots: [s0, s1], reversing };
                    let mapped: Vec<Corner> = src.corners.iter().map(|c| g.corner(src, dst, c)).collect();
                    let target = if reversing { &rev } else { &dst.corners };
                    if cyclic_match(&mapped, target) {
                        out.push(g);
                    }
                }
            }
        }
    }
    out
}

/// Gluing maps between two abstract marked surfaces, one per orbit of the
/// boundary automorphism group acting on the source.
pub fn enumerate_gluings(src: &MarkedSurface, dst: &MarkedSurface) -> Result<Vec<GluingMap>, GluingError> {
    if src.spine != dst.spine || src.surface != dst.surface {
        return Err(GluingError::KindMismatch(src.to_string(), dst.to_string()));
    }
    let g = Gadget::standard(src.surface, src.spine)
        .ok_or_else(|| GluingError::KindMismatch(src.to_string(), dst.to_string()))?;
    let b = gadget_boundary(&g);
    let raw = boundary_isomorphisms(&b, &b);
    let auts = raw.clone();
    let mut orbits: Vec<Vec<GluingMap>> = Vec::new();
    for m in raw {
        if orbits.iter().any(|o| o.contains(&m)) {
            continue;
        }
        let orbit: Vec<GluingMap> = auts.iter().map(|a| compose(&m, a)).collect();
        orbits.push(orbit);
    }
    Ok(orbits.into_iter().map(|o| o[0]).collect())
}

/// `outer ∘ inner`.
pub fn compose(outer: &GluingMap, inner: &GluingMap) -> GluingMap {
    let mut image = [0u8; 2];
    let mut slots = [[0u8; 4]; 2];
    for x in 0..2 {
        let y = inner.image[x] as usize;
        image[x] = outer.image[y];
        for s in 0..4 {
            slots[x][s] = outer.slots[y][inner.slots[x][s] as usize];
        }
    }
    GluingMap { image, slots, reversing: outer.reversing ^ inner.reversing }
}

fn pairs_for(src: &Boundary, dst: &Boundary, g: &GluingMap, off: u32) -> Vec<VertexPair> {
    (0..2)
        .map(|x| {
            let y = g.image[x] as usize;
            VertexPair {
                a: src.vertices[x],
                b: dst.vertices[y] + off,
                pslot_a: src.pslots[x],
                pslot_b: dst.pslots[y],
                slots: g.slots[x],
            }
        })
        .collect()
}

/// All gluings of boundary `ia` of `a` to boundary `ib` of `b`.
pub fn gluings_between(
    a: &SpecialPolyhedron,
    ia: usize,
    b: &SpecialPolyhedron,
    ib: usize,
) -> Result<Vec<GluingMap>, GluingError> {
    let ba = boundary_of(a, ia)?;
    let bb = boundary_of(b, ib)?;
    if ba.spine != bb.spine || ba.surface != bb.surface {
        return Err(GluingError::KindMismatch(ba.marked_surface().to_string(), bb.marked_surface().to_string()));
    }
    Ok(boundary_isomorphisms(&ba, &bb))
}

/// `P ∪_ψ P'`: glues boundary `ia` of `a` to boundary `ib` of `b`.
pub fn assemble_polyhedra(
    a: &SpecialPolyhedron,
    ia: usize,
    b: &SpecialPolyhedron,
    ib: usize,
    g: &GluingMap,
) -> Result<SpecialPolyhedron, GluingError> {
    let ba = boundary_of(a, ia)?;
    let bb = boundary_of(b, ib)?;
    let off = a.num_vertices() as u32;
    let u = disjoint_union(a, b);
    let pairs = pairs_for(&ba, &bb, g, off);
    Ok(splice(&u, &pairs)?)
}

/// Mark for a gadget placed at vertices `u`, `v`.
pub fn gadget_mark(g: &Gadget, u: usize, v: usize) -> Mark {
    let (corners, _) = g.hexagon().expect("hexagonal");
    let c = corners[0];
    let at = if c.vertex == 0 { u } else { v };
    Mark { vertex: at as u32, germ: germ_index(c.from, c.to), surface: g.surface().expect("hexagonal"), spine: g.spine }
}
