//! Complexity read off a census table.

use std::fmt;

use super::atoms::{atom_skeleton, AtomLabel};
use super::pair::{assemble, MarkedPair};
use super::reduce::{is_trivial_assembling, strip_b2pp_poly};
use crate::census::{skeleton_signature, CensusTable};
use crate::polyhedron::Skeleton;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Complexity {
    Exact(usize),
    /// Not in the table; the best known upper bound.
    Unknown {
        upper: usize,
    },
}

impl fmt::Display for Complexity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Complexity::Exact(c) => write!(f, "{c}"),
            Complexity::Unknown { upper } => write!(f, "unknown (at most {upper})"),
        }
    }
}

fn part_level(part: &Skeleton, table: &CensusTable) -> Option<usize> {
    match part {
        Skeleton::Atom(_) => Some(0),
        Skeleton::Standard(p) => {
            let (kernel, _) = strip_b2pp_poly(p);
            let sig = skeleton_signature(&Skeleton::Standard(kernel));
            table.records().find(|r| r.signature == sig).map(|r| r.level)
        }
        Skeleton::Sum(ps) => ps.iter().map(|q| part_level(q, table)).sum(),
    }
}

/// The level of the census record carrying the skeleton of `a`, once every
/// `B''_2` is split off; summands are looked up one by one.
pub fn complexity_exact_within(a: &MarkedPair, table: &CensusTable) -> Complexity {
    match part_level(&a.skeleton, table) {
        Some(c) => Complexity::Exact(c),
        None => Complexity::Unknown { upper: a.upper },
    }
}

fn is_b2pp(p: &MarkedPair, i: usize) -> bool {
    matches!(p.origin(i), Some(AtomLabel::Z(k)) if k >= 3) || p.key() == atom_skeleton(AtomLabel::B2PP).key()
}

/// Whether `a ⊕ b` is sharp, when the table decides it.
pub fn is_sharp(
    a: &MarkedPair,
    b: &MarkedPair,
    gluing: usize,
    ia: usize,
    ib: usize,
    table: &CensusTable,
) -> Option<bool> {
    match is_trivial_assembling(a, b, gluing, ia, ib) {
        Ok(Some(_)) => return Some(false),
        Ok(None) => {}
        Err(_) => return None,
    }
    if is_b2pp(a, ia) || is_b2pp(b, ib) {
        return Some(true);
    }
    let r = assemble(a, b, gluing, ia, ib).ok()?;
    match [a, b, &r].map(|p| complexity_exact_within(p, table)) {
        [Complexity::Exact(x), Complexity::Exact(y), Complexity::Exact(z)] => Some(x + y == z),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census::build_table;

    #[test]
    fn atoms_have_complexity_zero() {
        let t = build_table(0);
        for l in [AtomLabel::L31, AtomLabel::Z(3), AtomLabel::Z(5), AtomLabel::B1p] {
            assert_eq!(complexity_exact_within(&MarkedPair::atom(l), &t), Complexity::Exact(0), "{l}");
        }
    }

    #[test]
    fn sharpness() {
        let t = build_table(0);
        let z = MarkedPair::atom(AtomLabel::B2PP);
        let b0 = MarkedPair::atom(AtomLabel::B0);
        let b2 = MarkedPair::atom(AtomLabel::B2);
        assert_eq!(is_sharp(&z, &z, 0, 0, 0, &t), Some(true));
        assert_eq!(is_sharp(&b2, &b0, 0, 0, 0, &t), Some(false));
        assert_eq!(is_sharp(&b2, &b2, 0, 0, 0, &t), Some(true));
    }

    #[test]
    fn outside_the_table_is_unknown() {
        let t = build_table(0);
        let p = crate::census::generate_candidates(1).remove(0);
        assert_eq!(complexity_exact_within(&MarkedPair::from_poly(p), &t), Complexity::Unknown { upper: 1 });
    }
}
