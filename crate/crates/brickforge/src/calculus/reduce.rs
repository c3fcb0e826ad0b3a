//! Trivial assemblings and splitting off copies of `B''_2`.

use std::fmt;

use super::atoms::{atom_skeleton, AtomLabel};
use super::pair::{assemble, gluing_maps, CalcError, MarkedPair};
use crate::polyhedron::{
    canonical_signature, marked_hexagons, AtomSkeleton, Edge, End, Hexagon, Skeleton, SpecialPolyhedron, SpineKind,
    SurfaceKind,
};
use crate::surfaces::{assemble_polyhedra, gadget_mark, gluings_between, Gadget, PSLOT};

/// Which discard rule makes an assembling trivial.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TrivialRule {
    /// The partner is a product `B_0^*`.
    Product,
    /// `B_j` glued back onto a `# B_i` summand with `B_i ⊕ B_j = S^3`.
    Cancel,
    /// `B'_2` glued onto a free end of a `B''_2` factor.
    Cap,
}

impl fmt::Display for TrivialRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = match self {
            TrivialRule::Product => 1,
            TrivialRule::Cancel => 2,
            TrivialRule::Cap => 3,
        };
        write!(f, "rule {n}")
    }
}

fn part_key(p: &MarkedPair, i: usize) -> Result<(String, usize), CalcError> {
    let phys = p.physical(i)?;
    let (part, _) = p.skeleton.locate_boundary(phys)?;
    let parts = match &p.skeleton {
        Skeleton::Sum(ps) => ps.clone(),
        other => vec![other.clone()],
    };
    Ok((parts[part].key(), parts.len()))
}

fn key_of(l: AtomLabel) -> String {
    atom_skeleton(l).key()
}

fn is_solid(key: &str) -> bool {
    key == key_of(AtomLabel::B1) || key == key_of(AtomLabel::B2)
}

fn is_b2pp_origin(l: Option<AtomLabel>) -> bool {
    matches!(l, Some(AtomLabel::Z(k)) if k >= 3)
}

/// The discard rule making `a ⊕ b` trivial, if any.
pub fn is_trivial_assembling(
    a: &MarkedPair,
    b: &MarkedPair,
    gluing: usize,
    ia: usize,
    ib: usize,
) -> Result<Option<TrivialRule>, CalcError> {
    let (ka, na) = part_key(a, ia)?;
    let (kb, nb) = part_key(b, ib)?;
    let products = [AtomLabel::B0, AtomLabel::B0p, AtomLabel::B0pp].map(key_of);
    if products.contains(&ka) || products.contains(&kb) {
        return Ok(Some(TrivialRule::Product));
    }
    let b2p = key_of(AtomLabel::B2p);
    if (is_b2pp_origin(a.origin(ia)) && b.key() == b2p) || (is_b2pp_origin(b.origin(ib)) && a.key() == b2p) {
        return Ok(Some(TrivialRule::Cap));
    }
    if is_solid(&ka) && is_solid(&kb) && (na > 1 || nb > 1) {
        // the two solid summands alone
        let lone = |k: &str| if k == key_of(AtomLabel::B1) { AtomLabel::B1 } else { AtomLabel::B2 };
        let x = MarkedPair::atom(lone(&ka));
        let y = MarkedPair::atom(lone(&kb));
        let sa = a.skeleton.locate_boundary(a.physical(ia)?)?.1;
        let sb = b.skeleton.locate_boundary(b.physical(ib)?)?.1;
        let alone = assemble(&x, &y, gluing, sa, sb)?;
        let whole = assemble(a, b, gluing, ia, ib)?;
        let point = Skeleton::Atom(AtomSkeleton::Point).key();
        if alone.key() == point && whole.key() != point {
            return Ok(Some(TrivialRule::Cancel));
        }
    }
    Ok(None)
}

/// Gluing indices between the solid tori `x` and `y` (each `B1` or `B2`)
/// whose assembling is `S^3`.
pub fn s3_gluings(x: AtomLabel, y: AtomLabel) -> Result<Vec<usize>, CalcError> {
    let a = MarkedPair::atom(x);
    let b = MarkedPair::atom(y);
    let point = Skeleton::Atom(AtomSkeleton::Point).key();
    let n = gluing_maps(&a, 0, &b, 0)?.len();
    let mut out = Vec::new();
    for g in 0..n {
        if assemble(&a, &b, g, 0, 0)?.key() == point {
            out.push(g);
        }
    }
    Ok(out)
}

fn b2pp() -> SpecialPolyhedron {
    match atom_skeleton(AtomLabel::B2PP) {
        Skeleton::Standard(p) => p,
        _ => unreachable!("B2pp is standard"),
    }
}

fn is_ksigma(h: &Hexagon) -> bool {
    (h.surface, h.spine) == (SurfaceKind::Klein, SpineKind::Sigma)
}

/// Candidates `Q` with `P = Q ⊕ B''_2`, built around an edge joining the
/// spines of boundaries `i` and `j` directly.
fn candidates(p: &SpecialPolyhedron, hexes: &[Hexagon], i: usize, j: usize) -> Vec<SpecialPolyhedron> {
    let (hi, hj) = (&hexes[i], &hexes[j]);
    let gone: Vec<usize> = hi.vertices.iter().chain(&hj.vertices).map(|&v| v as usize).collect();
    let mut out = Vec::new();
    for x in 0..2 {
        let (vx, sx) = (hi.vertices[x] as usize, hi.pslots[x]);
        let Some((e, k)) = p.slot(vx, sx) else { continue };
        let far = p.edges()[e].ends[1 - k];
        let Some(y) = (0..2).find(|&y| hj.vertices[y] == far.vertex && hj.pslots[y] == far.slot) else { continue };
        // the other two ports lead into the rest of P
        let leads: Vec<End> = [(hi, 1 - x), (hj, 1 - y)]
            .iter()
            .filter_map(|(h, z)| {
                let (e, k) = p.slot(h.vertices[*z] as usize, h.pslots[*z])?;
                Some(p.edges()[e].ends[1 - k])
            })
            .collect();
        if leads.len() != 2 || leads.iter().any(|l| gone.contains(&(l.vertex as usize))) {
            continue;
        }
        let keep: Vec<usize> = (0..p.num_vertices()).filter(|v| !gone.contains(v)).collect();
        let index = |v: u32| keep.iter().position(|&w| w == v as usize).expect("kept vertex") as u32;
        let n = keep.len();
        let base: Vec<Edge> = p
            .edges()
            .iter()
            .filter(|e| e.ends.iter().all(|x| !gone.contains(&(x.vertex as usize))))
            .map(|e| {
                Edge::new(
                    End::new(index(e.ends[0].vertex) as usize, e.ends[0].slot, e.ends[0].perm),
                    End::new(index(e.ends[1].vertex) as usize, e.ends[1].slot, e.ends[1].perm),
                )
            })
            .collect();
        let marks: Vec<_> = p
            .marks()
            .iter()
            .enumerate()
            .filter(|(m, _)| *m != i && *m != j)
            .map(|(_, m)| crate::polyhedron::Mark { vertex: index(m.vertex), ..*m })
            .collect();
        let g = Gadget::standard(SurfaceKind::Klein, SpineKind::Sigma).expect("Klein sigma gadget");
        for swap in [false, true] {
            let (l0, l1) = if swap { (leads[1], leads[0]) } else { (leads[0], leads[1]) };
            for a in 0..6u8 {
                for b in 0..6u8 {
                    let mut edges = base.clone();
                    edges.extend(g.placed(n, n + 1));
                    edges.push(Edge::new(End::new(n, PSLOT, a), End::new(index(l0.vertex) as usize, l0.slot, l0.perm)));
                    edges.push(Edge::new(
                        End::new(n + 1, PSLOT, b),
                        End::new(index(l1.vertex) as usize, l1.slot, l1.perm),
                    ));
                    let mut m = marks.clone();
                    m.push(gadget_mark(&g, n, n + 1));
                    if let Ok(q) = SpecialPolyhedron::new(n + 2, edges, p.circles().to_vec(), m) {
                        out.push(q);
                    }
                }
            }
        }
    }
    out
}

/// One splitting `P = Q ⊕ B''_2`, if `P` has one.
fn split_once(p: &SpecialPolyhedron) -> Option<SpecialPolyhedron> {
    let faces = p.trace_faces().ok()?;
    let hexes = marked_hexagons(p, &faces).ok()?;
    let target = canonical_signature(p);
    let z3 = b2pp();
    for i in 0..hexes.len() {
        for j in 0..hexes.len() {
            if i == j || !is_ksigma(&hexes[i]) || !is_ksigma(&hexes[j]) {
                continue;
            }
            for q in candidates(p, &hexes, i, j) {
                if !crate::census::is_skeleton(&q) {
                    continue;
                }
                let last = q.marks().len() - 1;
                let Ok(gs) = gluings_between(&q, last, &z3, 0) else { continue };
                let hit = gs
                    .iter()
                    .any(|g| assemble_polyhedra(&q, last, &z3, 0, g).is_ok_and(|r| canonical_signature(&r) == target));
                if hit {
                    return Some(q);
                }
            }
        }
    }
    None
}

/// Splits off copies of `B''_2` until none is left; returns the kernel
/// and the number of copies.
pub fn strip_b2pp_poly(p: &SpecialPolyhedron) -> (SpecialPolyhedron, usize) {
    let mut cur = p.clone();
    let mut count = 0;
    while let Some(q) = split_once(&cur) {
        cur = q;
        count += 1;
    }
    (cur, count)
}

/// `strip_b2pp_poly` on the skeleton of a pair; non-standard skeleta are
/// returned unchanged.
pub fn strip_b2pp(a: &MarkedPair) -> (MarkedPair, usize) {
    match &a.skeleton {
        Skeleton::Standard(p) => {
            let (q, count) = strip_b2pp_poly(p);
            if count == 0 {
                return (a.clone(), 0);
            }
            let mut k = MarkedPair::from_poly(q);
            k.upper = a.upper;
            if let Some(l) = a.lower {
                k = k.with_lower(l);
            }
            (k, count)
        }
        _ => (a.clone(), 0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z5_strips_to_the_klein_product() {
        let (k, n) = strip_b2pp(&MarkedPair::atom(AtomLabel::Z(5)));
        assert_eq!(n, 3);
        assert_eq!(k.key(), MarkedPair::atom(AtomLabel::B0pp).key());
        let (_, again) = strip_b2pp(&k);
        assert_eq!(again, 0);
    }

    #[test]
    fn kernels_do_not_strip() {
        for l in [AtomLabel::B0pp, AtomLabel::B2p, AtomLabel::B2, AtomLabel::B0, AtomLabel::L31] {
            assert_eq!(strip_b2pp(&MarkedPair::atom(l)).1, 0, "{l}");
        }
    }

    #[test]
    fn product_partner_is_trivial() {
        let a = MarkedPair::atom(AtomLabel::B2);
        let b = MarkedPair::atom(AtomLabel::B0);
        assert_eq!(is_trivial_assembling(&a, &b, 0, 0, 0).unwrap(), Some(TrivialRule::Product));
    }
}
