//! Pairs as expressions with a realized skeleton.

use std::fmt;

use thiserror::Error;

use super::atoms::{atom_skeleton, AtomLabel};
use crate::polyhedron::{
    canonical_signature, manifold_orientable, nuclear_collapse, AtomSkeleton, CellComplex, Skeleton, SkeletonError,
    SpecialPolyhedron, SpineKind, Step, SurfaceKind,
};
use crate::surfaces::{
    assemble_polyhedra, boundary_isomorphisms, boundary_of, enumerate_double_point_maps, gadget_boundary, Boundary,
    Gadget, GluingError, GluingMap,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Atom(AtomLabel),
    /// A standard skeleton given directly, named by its signature.
    Leaf(String),
    Sum(Box<Expr>, Box<Expr>),
    Assemble {
        a: Box<Expr>,
        b: Box<Expr>,
        gluing: usize,
        ia: usize,
        ib: usize,
    },
    SelfAssemble {
        a: Box<Expr>,
        ident: usize,
        i: usize,
        j: usize,
    },
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Atom(l) => write!(f, "{l}"),
            Expr::Leaf(sig) => write!(f, "sig:{sig}"),
            Expr::Sum(a, b) => write!(f, "sum({a},{b})"),
            Expr::Assemble { a, b, gluing, ia: 0, ib: 0 } => write!(f, "asm({a},{b},{gluing})"),
            Expr::Assemble { a, b, gluing, ia, ib } => write!(f, "asm({a},{b},{gluing},{ia},{ib})"),
            Expr::SelfAssemble { a, ident, i: 0, j: 1 } => write!(f, "self({a},{ident})"),
            Expr::SelfAssemble { a, ident, i, j } => write!(f, "self({a},{ident},{i},{j})"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CalcError {
    #[error("pair has no boundary component {0}")]
    NoSuchBoundary(usize),
    #[error("boundary components do not match: {0}")]
    Mismatch(String),
    #[error("gluing index {index} out of range ({count} gluings)")]
    BadGluing { index: usize, count: usize },
    #[error("self-assembling needs two distinct boundary components")]
    SameComponent,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Gluing(#[from] GluingError),
    #[error(transparent)]
    Skeleton(#[from] SkeletonError),
}

/// A pair with the expression that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedPair {
    pub expr: Expr,
    pub skeleton: Skeleton,
    /// Position in `skeleton.boundaries()` of each boundary, in expression
    /// order.
    order: Vec<usize>,
    /// Atom each boundary was inherited from, in expression order.
    origin: Vec<Option<AtomLabel>>,
    pub lower: Option<usize>,
    pub upper: usize,
}

/// Which operand and which of its boundaries a boundary came from.
type Tag = (u8, usize);

impl MarkedPair {
    pub fn atom(label: AtomLabel) -> MarkedPair {
        let skeleton = atom_skeleton(label);
        let n = skeleton.num_boundaries();
        MarkedPair {
            expr: Expr::Atom(label.normalized()),
            skeleton,
            order: (0..n).collect(),
            origin: vec![Some(label.normalized()); n],
            lower: Some(0),
            upper: 0,
        }
    }

    /// A standard skeleton; its vertex count bounds the complexity above.
    pub fn from_poly(poly: SpecialPolyhedron) -> MarkedPair {
        let sig = canonical_signature(&poly).to_hex();
        let skeleton = nuclear_collapse(&Skeleton::Standard(poly));
        let n = skeleton.num_boundaries();
        let upper = skeleton.interior_vertices();
        MarkedPair {
            expr: Expr::Leaf(sig),
            skeleton,
            order: (0..n).collect(),
            origin: vec![None; n],
            lower: None,
            upper,
        }
    }

    pub fn num_boundaries(&self) -> usize {
        self.order.len()
    }

    /// Boundary kinds in expression order.
    pub fn boundaries(&self) -> Result<Vec<(SurfaceKind, SpineKind)>, CalcError> {
        let phys = self.skeleton.boundaries()?;
        Ok(self.order.iter().map(|&i| phys[i]).collect())
    }

    /// Index into `skeleton.boundaries()` of boundary `i`.
    pub fn physical(&self, i: usize) -> Result<usize, CalcError> {
        self.order.get(i).copied().ok_or(CalcError::NoSuchBoundary(i))
    }

    pub fn key(&self) -> String {
        self.skeleton.key()
    }

    pub fn exact(&self) -> Option<usize> {
        self.lower.filter(|&l| l == self.upper)
    }

    /// Atom that boundary `i` came from, if any.
    pub fn origin(&self, i: usize) -> Option<AtomLabel> {
        self.origin.get(i).copied().flatten()
    }

    pub fn with_lower(mut self, lower: usize) -> MarkedPair {
        self.lower = Some(lower);
        self
    }
}

fn parts_of(s: &Skeleton) -> Vec<Skeleton> {
    match s {
        Skeleton::Sum(p) => p.clone(),
        other => vec![other.clone()],
    }
}

/// Collapses the sum of tagged parts and orders boundaries as `logical`.
fn finish(
    expr: Expr,
    parts: Vec<(Skeleton, Vec<Tag>)>,
    logical: &[Tag],
    origin: Vec<Option<AtomLabel>>,
    lower: Option<usize>,
    upper: usize,
) -> MarkedPair {
    let tags: Vec<Tag> = parts.iter().flat_map(|(_, t)| t.iter().copied()).collect();
    let skeleton = nuclear_collapse(&Skeleton::Sum(parts.into_iter().map(|(s, _)| s).collect()));
    let order = logical.iter().map(|t| tags.iter().position(|x| x == t).expect("every boundary is tagged")).collect();
    MarkedPair { expr, skeleton, order, origin, lower, upper }
}

fn origins_without(p: &MarkedPair, skip: &[usize]) -> Vec<Option<AtomLabel>> {
    p.origin.iter().enumerate().filter(|(i, _)| !skip.contains(i)).map(|(_, o)| *o).collect()
}

fn tagged_parts(p: &MarkedPair, side: u8) -> Vec<(Skeleton, Vec<Tag>)> {
    let mut next = 0;
    parts_of(&p.skeleton)
        .into_iter()
        .map(|s| {
            let n = s.num_boundaries();
            let t = (next..next + n).map(|i| (side, i)).collect();
            next += n;
            (s, t)
        })
        .collect()
}

fn logical_tags(p: &MarkedPair, side: u8, skip: Option<usize>) -> Vec<Tag> {
    (0..p.num_boundaries()).filter(|&i| Some(i) != skip).map(|i| (side, p.order[i])).collect()
}

/// `a # b`.
pub fn connected_sum(a: &MarkedPair, b: &MarkedPair) -> MarkedPair {
    let mut parts = tagged_parts(a, 0);
    parts.extend(tagged_parts(b, 1));
    let mut logical = logical_tags(a, 0, None);
    logical.extend(logical_tags(b, 1, None));
    let lower = a.lower.zip(b.lower).map(|(x, y)| x + y);
    let expr = Expr::Sum(Box::new(a.expr.clone()), Box::new(b.expr.clone()));
    let mut origin = a.origin.clone();
    origin.extend(b.origin.iter().copied());
    finish(expr, parts, &logical, origin, lower, a.upper + b.upper)
}

/// The part holding a physical boundary, its index in the part list and
/// the boundary index inside it.
fn part_for(s: &Skeleton, phys: usize) -> Result<(usize, usize), CalcError> {
    Ok(s.locate_boundary(phys)?)
}

fn solid_gadget(atom: AtomSkeleton) -> Option<Gadget> {
    match atom {
        AtomSkeleton::P1 => Gadget::standard(SurfaceKind::Torus, SpineKind::Theta),
        AtomSkeleton::P1prime => Gadget::standard(SurfaceKind::Klein, SpineKind::Theta),
        _ => None,
    }
}

fn boundary_in(part: &Skeleton, local: usize) -> Result<Boundary, CalcError> {
    match part {
        Skeleton::Standard(p) => Ok(boundary_of(p, local)?),
        Skeleton::Atom(a) => solid_gadget(*a).map(|g| gadget_boundary(&g)).ok_or(CalcError::NoSuchBoundary(local)),
        Skeleton::Sum(_) => Err(CalcError::Unsupported("nested sum".into())),
    }
}

/// Every gluing of boundary `ia` of `a` onto boundary `ib` of `b`, in a
/// fixed order.
pub fn gluing_maps(a: &MarkedPair, ia: usize, b: &MarkedPair, ib: usize) -> Result<Vec<GluingMap>, CalcError> {
    let (ba, bb) = (endpoint(a, ia)?.2, endpoint(b, ib)?.2);
    if (ba.surface, ba.spine) != (bb.surface, bb.spine) {
        return Err(CalcError::Mismatch(format!("{} against {}", ba.marked_surface(), bb.marked_surface())));
    }
    Ok(boundary_isomorphisms(&ba, &bb))
}

fn endpoint(p: &MarkedPair, i: usize) -> Result<(usize, usize, Boundary), CalcError> {
    let phys = p.physical(i)?;
    let (part, local) = part_for(&p.skeleton, phys)?;
    let parts = parts_of(&p.skeleton);
    let b = boundary_in(&parts[part], local)?;
    Ok((part, local, b))
}

/// `a ⊕ b` along gluing number `gluing` of boundary `ia` onto `ib`.
pub fn assemble(a: &MarkedPair, b: &MarkedPair, gluing: usize, ia: usize, ib: usize) -> Result<MarkedPair, CalcError> {
    let maps = gluing_maps(a, ia, b, ib)?;
    let g = *maps.get(gluing).ok_or(CalcError::BadGluing { index: gluing, count: maps.len() })?;
    let (pa, la, ba) = endpoint(a, ia)?;
    let (pb, lb, bb) = endpoint(b, ib)?;
    let a_parts = tagged_parts(a, 0);
    let b_parts = tagged_parts(b, 1);
    let (sa, ta) = &a_parts[pa];
    let (sb, tb) = &b_parts[pb];
    let merged = glue_parts(sa, la, &ba, sb, lb, &bb, &g)?;
    let mut rest_tags: Vec<Tag> = ta.iter().enumerate().filter(|(i, _)| *i != la).map(|(_, t)| *t).collect();
    rest_tags.extend(tb.iter().enumerate().filter(|(i, _)| *i != lb).map(|(_, t)| *t));
    if merged.num_boundaries() != rest_tags.len() {
        return Err(CalcError::Unsupported("filling changed the boundary count".into()));
    }
    let mut parts = Vec::new();
    for (i, p) in a_parts.iter().enumerate() {
        if i == pa {
            parts.push((merged.clone(), rest_tags.clone()));
        } else {
            parts.push(p.clone());
        }
    }
    parts.extend(b_parts.iter().enumerate().filter(|(i, _)| *i != pb).map(|(_, p)| p.clone()));
    let mut logical = logical_tags(a, 0, Some(ia));
    logical.extend(logical_tags(b, 1, Some(ib)));
    let expr = Expr::Assemble { a: Box::new(a.expr.clone()), b: Box::new(b.expr.clone()), gluing, ia, ib };
    let mut origin = origins_without(a, &[ia]);
    origin.extend(origins_without(b, &[ib]));
    Ok(finish(expr, parts, &logical, origin, None, a.upper + b.upper))
}

/// The standard part holding logical boundaries `i` and `j`, with their
/// indices inside it.
fn self_host(a: &MarkedPair, i: usize, j: usize) -> Result<(usize, SpecialPolyhedron, usize, usize), CalcError> {
    if i == j {
        return Err(CalcError::SameComponent);
    }
    let (pi, li) = part_for(&a.skeleton, a.physical(i)?)?;
    let (pj, lj) = part_for(&a.skeleton, a.physical(j)?)?;
    if pi != pj {
        return Err(CalcError::Unsupported("self-assembling across a connected sum".into()));
    }
    match &parts_of(&a.skeleton)[pi] {
        Skeleton::Standard(p) => Ok((pi, p.clone(), li, lj)),
        other => Err(CalcError::Unsupported(format!("self-assembling {other}"))),
    }
}

/// Every skeleton obtained by gluing boundary `i` of `a` to boundary `j`
/// with spines crossing in two points, one per isomorphism class.
pub fn self_assemblings(a: &MarkedPair, i: usize, j: usize) -> Result<Vec<SpecialPolyhedron>, CalcError> {
    let (_, p, li, lj) = self_host(a, i, j)?;
    Ok(enumerate_double_point_maps(&p, li, lj)?.into_iter().map(|m| m.result).collect())
}

/// `⊙a` along identification number `ident` of boundaries `i` and `j`.
pub fn self_assemble(a: &MarkedPair, ident: usize, i: usize, j: usize) -> Result<MarkedPair, CalcError> {
    let (pi, _, li, lj) = self_host(a, i, j)?;
    let all = self_assemblings(a, i, j)?;
    let count = all.len();
    let q = all.into_iter().nth(ident).ok_or(CalcError::BadGluing { index: ident, count })?;
    if q.euler_characteristic().map_err(SkeletonError::from)? != 1 {
        return Err(CalcError::Unsupported("self-assembling leaves a face that is not a disc".into()));
    }
    let mut parts = tagged_parts(a, 0);
    let tags: Vec<Tag> =
        parts[pi].1.iter().enumerate().filter(|(k, _)| *k != li && *k != lj).map(|(_, t)| *t).collect();
    parts[pi] = (nuclear_collapse(&Skeleton::Standard(q)), tags);
    let logical: Vec<Tag> =
        logical_tags(a, 0, None).into_iter().enumerate().filter(|(k, _)| *k != i && *k != j).map(|(_, t)| t).collect();
    let expr = Expr::SelfAssemble { a: Box::new(a.expr.clone()), ident, i, j };
    Ok(finish(expr, parts, &logical, origins_without(a, &[i, j]), None, a.upper + 6))
}

/// Inverse of a boundary homeomorphism.
pub fn invert(g: &GluingMap) -> GluingMap {
    let mut image = [0u8; 2];
    let mut slots = [[0u8; 4]; 2];
    for x in 0..2 {
        let y = g.image[x] as usize;
        image[y] = x as u8;
        for s in 0..4 {
            slots[y][g.slots[x][s] as usize] = s as u8;
        }
    }
    GluingMap { image, slots, reversing: g.reversing }
}

fn product_key(s: &Skeleton) -> bool {
    let k = s.key();
    [AtomLabel::B0, AtomLabel::B0p, AtomLabel::B0pp].iter().any(|&l| atom_skeleton(l).key() == k)
}

fn glue_parts(
    sa: &Skeleton,
    la: usize,
    ba: &Boundary,
    sb: &Skeleton,
    lb: usize,
    bb: &Boundary,
    g: &GluingMap,
) -> Result<Skeleton, CalcError> {
    match (sa, sb) {
        (Skeleton::Standard(p), Skeleton::Standard(q)) => {
            let r = assemble_polyhedra(p, la, q, lb, g)?;
            if r.euler_characteristic().map_err(SkeletonError::from)? == 1 {
                return Ok(nuclear_collapse(&Skeleton::Standard(r)));
            }
            // some face is no longer a disc and the o-graph cannot say so
            if !r.marks().is_empty() {
                return Err(CalcError::Unsupported("assembling leaves a face that is not a disc".into()));
            }
            let c = glued_complex(p, ba, q, bb, g)?;
            name_closed(&c, manifold_orientable(p) && manifold_orientable(q))
        }
        (Skeleton::Atom(x), _) if solid_gadget(*x).is_some() => fill(*x, ba, sb, lb, bb, g),
        (_, Skeleton::Atom(y)) if solid_gadget(*y).is_some() => fill(*y, bb, sa, la, ba, &invert(g)),
        _ => Err(CalcError::Unsupported(format!("assembling {sa} with {sb}"))),
    }
}

/// Meridian of a solid torus or Klein bottle atom as two gadget edges, run
/// from vertex 0 to vertex 1 and back. On the Klein bottle it is the
/// orientation-preserving cycle, made of the two edges the hexagon runs
/// along twice in the same direction.
fn meridian(g: &Gadget) -> [usize; 2] {
    let (_, steps) = g.hexagon().expect("hexagonal");
    let mut dirs = [[0u8; 2]; 3];
    for s in steps {
        if let Step::Edge { edge, from } = s {
            dirs[edge as usize][from as usize] += 1;
        }
    }
    let twice: Vec<usize> = (0..3).filter(|&e| dirs[e].contains(&2)).collect();
    if twice.len() == 2 {
        [twice[0], twice[1]]
    } else {
        [0, 1]
    }
}

/// `(vertex, slot)` pairs where the meridian leaves each vertex.
fn meridian_starts(g: &Gadget) -> [(usize, u8); 2] {
    let [x, y] = meridian(g);
    let ex = g.edges[x];
    let ey = g.edges[y];
    [(0, ex.ends[0].slot), (1, ey.ends[1].slot)]
}

/// A cell complex holding a boundary, with a slot lookup for its spine.
struct Host {
    complex: CellComplex,
    ends: Vec<[(usize, u8); 2]>,
    orientable: bool,
}

impl Host {
    fn edge_from(&self, v: usize, s: u8) -> Option<(usize, bool)> {
        self.ends.iter().enumerate().find_map(|(i, e)| {
            if e[0] == (v, s) {
                Some((i, true))
            } else if e[1] == (v, s) {
                Some((i, false))
            } else {
                None
            }
        })
    }
}

fn host_of(part: &Skeleton, local: usize) -> Result<Host, CalcError> {
    match part {
        Skeleton::Standard(q) if q.marks().len() == 1 => {
            let _ = local;
            Ok(Host {
                complex: CellComplex::from_poly(q).map_err(SkeletonError::from)?,
                ends: q.edges().iter().map(|e| e.ends.map(|x| (x.vertex as usize, x.slot))).collect(),
                orientable: manifold_orientable(q),
            })
        }
        Skeleton::Atom(a) => {
            let g = solid_gadget(*a).ok_or_else(|| CalcError::Unsupported(format!("filling {a:?}")))?;
            let (_, steps) = g.hexagon().expect("hexagonal");
            let hex = steps
                .iter()
                .filter_map(|s| match *s {
                    Step::Edge { edge, from } => Some((edge as usize, from == 0)),
                    Step::Circle { .. } => None,
                })
                .collect();
            let [x, y] = meridian(&g);
            let own = vec![(x, true), (y, false)];
            Ok(Host {
                complex: CellComplex {
                    vertices: 2,
                    edges: g.edges.iter().map(|e| [e.ends[0].vertex as usize, e.ends[1].vertex as usize]).collect(),
                    faces: vec![hex, own],
                },
                ends: g.edges.iter().map(|e| e.ends.map(|x| (x.vertex as usize, x.slot))).collect(),
                orientable: *a == AtomSkeleton::P1,
            })
        }
        _ => Err(CalcError::Unsupported(format!("filling {part}"))),
    }
}

/// Glues a solid torus or Klein bottle atom to `other`. The result is a
/// closed atom named by its first homology, or the atom itself when
/// `other` is a product.
fn fill(
    atom: AtomSkeleton,
    own: &Boundary,
    other: &Skeleton,
    local: usize,
    dst: &Boundary,
    g: &GluingMap,
) -> Result<Skeleton, CalcError> {
    if product_key(other) {
        return Ok(Skeleton::Atom(atom));
    }
    let solid = |s: &Skeleton| match s {
        Skeleton::Atom(a) => solid_gadget(*a).is_some(),
        s => s.key() == atom_skeleton(AtomLabel::B2).key(),
    };
    if !solid(other) {
        return Err(CalcError::Unsupported(format!("Dehn filling of {other}")));
    }
    let gadget = solid_gadget(atom).expect("solid atom");
    let mut host = host_of(other, local)?;
    let mut word = Vec::new();
    for (x, s) in meridian_starts(&gadget) {
        let lx = own.vertices.iter().position(|&v| v as usize == x).expect("gadget vertex");
        let y = g.image[lx] as usize;
        let v = dst.vertices[y] as usize;
        let t = g.slots[lx][s as usize];
        let step = host.edge_from(v, t).ok_or_else(|| CalcError::Mismatch("meridian leaves the spine".into()))?;
        word.push(step);
    }
    host.complex.faces.push(word);
    name_closed(&host.complex, host.orientable && atom == AtomSkeleton::P1)
}

/// Closed atom with the first homology of `c`. Only used where the result
/// is known to be a union of two solid tori or Klein bottles, or a
/// manifold of that size, so homology decides.
fn name_closed(c: &CellComplex, orientable: bool) -> Result<Skeleton, CalcError> {
    let h = c.h1();
    let named = match (orientable, h.betti, h.torsion.as_slice()) {
        (true, 0, []) => AtomSkeleton::Point,
        (true, 0, [2]) => AtomSkeleton::ProjectivePlane,
        (true, 0, [3]) => AtomSkeleton::TripleHat,
        (o, 1, []) => AtomSkeleton::S2JoinS1 { twisted: !o },
        _ => return Err(CalcError::Unsupported(format!("closed result with first homology {h}"))),
    };
    Ok(Skeleton::Atom(named))
}

/// `P ∪ P'` with the two copies of the boundary surface identified, as a
/// cell complex; both boundary hexagons collapse to one face.
fn glued_complex(
    p: &SpecialPolyhedron,
    ba: &Boundary,
    q: &SpecialPolyhedron,
    bb: &Boundary,
    g: &GluingMap,
) -> Result<CellComplex, CalcError> {
    let ca = CellComplex::from_poly(p).map_err(SkeletonError::from)?;
    let cb = CellComplex::from_poly(q).map_err(SkeletonError::from)?;
    let nva = ca.vertices;
    let mut vmap: Vec<usize> = (0..cb.vertices).map(|v| nva + v).collect();
    for x in 0..2 {
        vmap[bb.vertices[g.image[x] as usize] as usize] = ba.vertices[x] as usize;
    }
    // B spine edges become A spine edges, possibly reversed
    let mut emap: Vec<Option<(usize, bool)>> = vec![None; cb.edges.len()];
    for (i, e) in p.edges().iter().enumerate() {
        let [x, y] = e.ends;
        let on_spine = |v: u32, s: u8| ba.vertices.iter().position(|&w| w == v).filter(|&k| s != ba.pslots[k]);
        let (Some(kx), Some(ky)) = (on_spine(x.vertex, x.slot), on_spine(y.vertex, y.slot)) else { continue };
        let vx = bb.vertices[g.image[kx] as usize] as usize;
        let sx = g.slots[kx][x.slot as usize];
        let vy = bb.vertices[g.image[ky] as usize] as usize;
        let sy = g.slots[ky][y.slot as usize];
        let (j, k) = q.slot(vx, sx).ok_or_else(|| CalcError::Mismatch("spine edge missing".into()))?;
        let far = q.edges()[j].ends[1 - k];
        if (far.vertex as usize, far.slot) != (vy, sy) {
            return Err(CalcError::Mismatch("spine edges do not correspond".into()));
        }
        emap[j] = Some((i, k == 0));
    }
    let mut edges = ca.edges.clone();
    let mut own = vec![usize::MAX; cb.edges.len()];
    for (j, e) in cb.edges.iter().enumerate() {
        if emap[j].is_none() {
            own[j] = edges.len();
            edges.push([vmap[e[0]], vmap[e[1]]]);
        }
    }
    let faces_b = q.trace_faces().map_err(SkeletonError::from)?;
    let hex_b = faces_b.germ_face[bb.vertices[0] as usize]
        [crate::polyhedron::germ_index(bb.corners[0].from, bb.corners[0].to) as usize] as usize;
    let mut faces = ca.faces.clone();
    for (fi, f) in cb.faces.iter().enumerate() {
        if fi == hex_b {
            continue;
        }
        faces.push(
            f.iter()
                .map(|&(e, fwd)| match emap[e] {
                    Some((i, same)) => (i, fwd == same),
                    None => (own[e], fwd),
                })
                .collect(),
        );
    }
    // vertices of B that were merged leave gaps; H1 only needs connectivity
    Ok(CellComplex { vertices: nva + cb.vertices, edges, faces })
}
