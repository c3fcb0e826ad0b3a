//! Pairs of complexity zero.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use crate::census::{closures, ClosureOptions};
use crate::polyhedron::{AtomSkeleton, Skeleton, SpecialPolyhedron, SpineKind, SurfaceKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AtomLabel {
    S3,
    L31,
    P3,
    S2xS1,
    S2twS1,
    B0,
    B0p,
    B0pp,
    B1,
    B1p,
    B2,
    B2p,
    /// `Z_k`; `Z_3` is `B''_2`.
    Z(u32),
}

impl AtomLabel {
    /// `Z_1` is `B'_2` and `Z_2` is `B''_0`.
    pub fn normalized(self) -> AtomLabel {
        match self {
            AtomLabel::Z(1) => AtomLabel::B2p,
            AtomLabel::Z(2) => AtomLabel::B0pp,
            other => other,
        }
    }

    pub const B2PP: AtomLabel = AtomLabel::Z(3);

    /// Every label of complexity zero except the `Z_k` with `k > 3`.
    pub fn basic() -> [AtomLabel; 13] {
        use AtomLabel::*;
        [S3, L31, P3, S2xS1, S2twS1, B0, B0p, B0pp, B1, B1p, B2, B2p, Z(3)]
    }

    pub fn boundary(self) -> Vec<(SurfaceKind, SpineKind)> {
        const T: (SurfaceKind, SpineKind) = (SurfaceKind::Torus, SpineKind::Theta);
        const KT: (SurfaceKind, SpineKind) = (SurfaceKind::Klein, SpineKind::Theta);
        const KS: (SurfaceKind, SpineKind) = (SurfaceKind::Klein, SpineKind::Sigma);
        match self.normalized() {
            AtomLabel::B0 => vec![T, T],
            AtomLabel::B0p => vec![KT, KT],
            AtomLabel::B0pp => vec![KS, KS],
            AtomLabel::B1 | AtomLabel::B2 => vec![T],
            AtomLabel::B1p => vec![KT],
            AtomLabel::B2p => vec![KS],
            AtomLabel::Z(k) => vec![KS; k as usize],
            _ => Vec::new(),
        }
    }

    /// Whether the pair is one of the products `B_0^*`.
    pub fn is_product(self) -> bool {
        matches!(self.normalized(), AtomLabel::B0 | AtomLabel::B0p | AtomLabel::B0pp)
    }
}

impl fmt::Display for AtomLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.normalized() {
            AtomLabel::Z(3) => f.write_str("B2pp"),
            AtomLabel::Z(k) => write!(f, "Z{k}"),
            other => write!(f, "{other:?}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown atom label `{0}`")]
pub struct UnknownAtom(pub String);

impl FromStr for AtomLabel {
    type Err = UnknownAtom;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        use AtomLabel::*;
        let z = |k: &str| k.parse::<u32>().ok().filter(|&k| k >= 1).map(|k| Z(k).normalized());
        let label = match s {
            "S3" => Some(S3),
            "L31" => Some(L31),
            "P3" => Some(P3),
            "S2xS1" => Some(S2xS1),
            "S2twS1" => Some(S2twS1),
            "B0" => Some(B0),
            "B0p" => Some(B0p),
            "B0pp" => Some(B0pp),
            "B1" => Some(B1),
            "B1p" => Some(B1p),
            "B2" => Some(B2),
            "B2p" => Some(B2p),
            "B2pp" => Some(Z(3)),
            _ => s.strip_prefix("Zk(").and_then(|r| r.strip_suffix(')')).or_else(|| s.strip_prefix('Z')).and_then(z),
        };
        label.ok_or_else(|| UnknownAtom(s.to_string()))
    }
}

/// The only standard skeleton with no interior vertex and the given
/// boundary.
fn unique_closure(kinds: &[(SurfaceKind, SpineKind)]) -> SpecialPolyhedron {
    let mut found = closures(0, kinds, ClosureOptions { kernel: false, skeleta_only: true });
    assert_eq!(found.len(), 1, "complexity-zero closure of {kinds:?} is not unique");
    found.pop().expect("one closure")
}

struct Standard {
    b0: SpecialPolyhedron,
    b0p: SpecialPolyhedron,
    b0pp: SpecialPolyhedron,
    b2: SpecialPolyhedron,
    b2p: SpecialPolyhedron,
    b2pp: SpecialPolyhedron,
}

fn standard() -> &'static Standard {
    static CELL: OnceLock<Standard> = OnceLock::new();
    CELL.get_or_init(|| {
        let t = (SurfaceKind::Torus, SpineKind::Theta);
        let kt = (SurfaceKind::Klein, SpineKind::Theta);
        let ks = (SurfaceKind::Klein, SpineKind::Sigma);
        Standard {
            b0: unique_closure(&[t, t]),
            b0p: unique_closure(&[kt, kt]),
            b0pp: unique_closure(&[ks, ks]),
            b2: unique_closure(&[t]),
            b2p: unique_closure(&[ks]),
            b2pp: unique_closure(&[ks, ks, ks]),
        }
    })
}

/// Skeleton of an atom; `Z_k` for `k > 3` is built by assembling copies of
/// `B''_2` with the first gluing.
pub fn atom_skeleton(label: AtomLabel) -> Skeleton {
    let s = standard();
    match label.normalized() {
        AtomLabel::S3 => Skeleton::Atom(AtomSkeleton::Point),
        AtomLabel::L31 => Skeleton::Atom(AtomSkeleton::TripleHat),
        AtomLabel::P3 => Skeleton::Atom(AtomSkeleton::ProjectivePlane),
        AtomLabel::S2xS1 => Skeleton::Atom(AtomSkeleton::S2JoinS1 { twisted: false }),
        AtomLabel::S2twS1 => Skeleton::Atom(AtomSkeleton::S2JoinS1 { twisted: true }),
        AtomLabel::B1 => Skeleton::Atom(AtomSkeleton::P1),
        AtomLabel::B1p => Skeleton::Atom(AtomSkeleton::P1prime),
        AtomLabel::B0 => Skeleton::Standard(s.b0.clone()),
        AtomLabel::B0p => Skeleton::Standard(s.b0p.clone()),
        AtomLabel::B0pp => Skeleton::Standard(s.b0pp.clone()),
        AtomLabel::B2 => Skeleton::Standard(s.b2.clone()),
        AtomLabel::B2p => Skeleton::Standard(s.b2p.clone()),
        AtomLabel::Z(3) => Skeleton::Standard(s.b2pp.clone()),
        AtomLabel::Z(k) => {
            let mut p = s.b2pp.clone();
            for _ in 3..k {
                let last = p.marks().len() - 1;
                p = crate::surfaces::gluings_between(&p, last, &s.b2pp, 0)
                    .ok()
                    .and_then(|g| g.first().copied())
                    .and_then(|g| crate::surfaces::assemble_polyhedra(&p, last, &s.b2pp, 0, &g).ok())
                    .expect("B2pp chains assemble");
            }
            Skeleton::Standard(p)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels_round_trip() {
        for l in AtomLabel::basic() {
            assert_eq!(l.to_string().parse::<AtomLabel>().unwrap(), l);
        }
        assert_eq!("Z1".parse::<AtomLabel>().unwrap(), AtomLabel::B2p);
        assert_eq!("Zk(2)".parse::<AtomLabel>().unwrap(), AtomLabel::B0pp);
        assert_eq!("Z5".parse::<AtomLabel>().unwrap(), AtomLabel::Z(5));
        assert!("Z0".parse::<AtomLabel>().is_err());
    }

    #[test]
    fn boundaries_match_skeleta() {
        for l in AtomLabel::basic().into_iter().chain([AtomLabel::Z(4), AtomLabel::Z(6)]) {
            assert_eq!(atom_skeleton(l).boundaries().unwrap(), l.boundary(), "{l}");
        }
    }

    #[test]
    fn zk_has_no_interior_vertices() {
        for k in 3..=6 {
            let s = atom_skeleton(AtomLabel::Z(k));
            assert_eq!(s.interior_vertices(), 0);
            if let Skeleton::Standard(p) = s {
                assert!(crate::census::is_skeleton(&p));
            }
        }
    }
}
