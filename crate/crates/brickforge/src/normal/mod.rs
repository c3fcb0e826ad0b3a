//! Normal surfaces in the handle decomposition of a skeleton: matching
//! conditions, Euler characteristic, spheres, cutting and the search for
//! essential spheres.

mod poly;
mod vector;

use rayon::prelude::*;
use thiserror::Error;

use crate::calculus::{complexity_exact_within, connected_sum, AtomLabel, Complexity, MarkedPair};
use crate::census::CensusTable;
use crate::polyhedron::{nuclear_collapse, triple_hat, AtomSkeleton, Skeleton};
use poly::PolyModel;

pub use poly::decompose;
pub use vector::{NormalVector, VertexDiscs};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NormalError {
    #[error("normal vector: {0}")]
    Parse(String),
    #[error("skeleton: {0}")]
    Structure(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("incompatible vector: {0}")]
    Incompatible(String),
    #[error("vector has {got} {what}, skeleton needs {want}")]
    Shape { what: &'static str, got: usize, want: usize },
}

/// Colors `(n, n, n)` on the germs along the boundary and `(p, q, r)` on
/// the germs leaving it, at a vertex of the boundary spine.
pub fn boundary_vertex_ok(n: u32, pqr: [u32; 3]) -> bool {
    let mut w = pqr;
    w.sort_unstable_by(|a, b| b.cmp(a));
    let [p, q, r] = w;
    r % 2 == 0 && p == q && (p != r || 2 * n >= p)
}

enum Piece {
    Poly(Box<PolyModel>),
    /// Concentric spheres around the point.
    Point,
    /// Sheets parallel to `P^2`.
    Projective,
    /// Coordinates `(sphere sheets, arc crossings)`.
    Join {
        twisted: bool,
    },
    /// Coordinates `(meridian disc sheets, boundary sheets)`.
    Solid,
}

impl Piece {
    fn new(s: &Skeleton) -> Result<Piece, NormalError> {
        Ok(match s {
            Skeleton::Standard(p) => Piece::Poly(Box::new(PolyModel::new(p)?)),
            Skeleton::Atom(AtomSkeleton::TripleHat) => Piece::Poly(Box::new(PolyModel::new(&triple_hat())?)),
            Skeleton::Atom(AtomSkeleton::Point) => Piece::Point,
            Skeleton::Atom(AtomSkeleton::ProjectivePlane) => Piece::Projective,
            Skeleton::Atom(AtomSkeleton::S2JoinS1 { twisted }) => Piece::Join { twisted: *twisted },
            Skeleton::Atom(AtomSkeleton::P1) => Piece::Solid,
            Skeleton::Atom(AtomSkeleton::P1prime) => Piece::Solid,
            Skeleton::Sum(_) => unreachable!("sums are flattened"),
        })
    }

    fn num_colors(&self) -> usize {
        match self {
            Piece::Poly(m) => m.num_colors(),
            Piece::Point | Piece::Projective => 1,
            Piece::Join { .. } | Piece::Solid => 2,
        }
    }

    fn num_vertices(&self) -> usize {
        match self {
            Piece::Poly(m) => m.num_vertices(),
            _ => 0,
        }
    }

    fn obvious(&self) -> Vec<u32> {
        match self {
            Piece::Poly(m) => m.obvious(),
            Piece::Point => vec![1],
            Piece::Projective => vec![2],
            Piece::Join { .. } | Piece::Solid => vec![2, 1],
        }
    }

    fn check(&self, c: &[u32]) -> Option<Vec<VertexDiscs>> {
        match self {
            Piece::Poly(m) => m.check(c),
            Piece::Point | Piece::Projective => Some(Vec::new()),
            Piece::Join { .. } => (c[0] >= 2 * c[1]).then(Vec::new),
            Piece::Solid => (c[0] % 2 == 0 && c[1] >= c[0] / 2).then(Vec::new),
        }
    }

    /// Euler characteristic of each component, by handles and by cells.
    fn surface(&self, c: &[u32], d: &[VertexDiscs]) -> Result<(Vec<i64>, i64), NormalError> {
        let spheres = |k: u32| vec![2; k as usize];
        Ok(match self {
            Piece::Poly(m) => {
                let s = m.surface(c, d)?;
                debug_assert_eq!(s.components.iter().sum::<i64>(), s.chi);
                (s.components, s.chi_cells)
            }
            Piece::Point => (spheres(c[0]), 2 * c[0] as i64),
            Piece::Projective => {
                let mut comps = spheres(c[0] / 2);
                if c[0] % 2 == 1 {
                    comps.insert(0, 1);
                }
                (comps, c[0] as i64)
            }
            Piece::Join { .. } => {
                // ℓ tubes each use two sphere sheets
                (spheres(c[0] - c[1]), 2 * (c[0] - c[1]) as i64)
            }
            Piece::Solid => {
                let mut comps = spheres(c[0] / 2);
                comps.extend(std::iter::repeat(0).take((c[1] - c[0] / 2) as usize));
                (comps, c[0] as i64)
            }
        })
    }
}

fn flatten(s: &Skeleton, out: &mut Vec<Skeleton>) {
    match s {
        Skeleton::Sum(ps) => ps.iter().for_each(|p| flatten(p, out)),
        other => out.push(other.clone()),
    }
}

/// Where each part's coordinates sit in a vector: part colors in chain
/// order, then one crossing count per arc of the chain.
struct Layout {
    parts: Vec<Skeleton>,
    pieces: Vec<Piece>,
    color_at: Vec<usize>,
    disc_at: Vec<usize>,
    arcs_at: usize,
    num_colors: usize,
    num_discs: usize,
}

impl Layout {
    fn new(skel: &Skeleton) -> Result<Layout, NormalError> {
        let mut parts = Vec::new();
        flatten(skel, &mut parts);
        let pieces = parts.iter().map(Piece::new).collect::<Result<Vec<_>, _>>()?;
        let (mut c, mut d) = (0, 0);
        let mut color_at = Vec::new();
        let mut disc_at = Vec::new();
        for p in &pieces {
            color_at.push(c);
            disc_at.push(d);
            c += p.num_colors();
            d += p.num_vertices();
        }
        let arcs_at = c;
        let num_colors = c + pieces.len() - 1;
        Ok(Layout { parts, pieces, color_at, disc_at, arcs_at, num_colors, num_discs: d })
    }

    fn colors<'a>(&self, i: usize, v: &'a [u32]) -> &'a [u32] {
        &v[self.color_at[i]..self.color_at[i] + self.pieces[i].num_colors()]
    }

    fn discs<'a>(&self, i: usize, v: &'a [VertexDiscs]) -> &'a [VertexDiscs] {
        &v[self.disc_at[i]..self.disc_at[i] + self.pieces[i].num_vertices()]
    }

    fn arcs<'a>(&self, v: &'a [u32]) -> &'a [u32] {
        &v[self.arcs_at..]
    }

    fn shape(&self, v: &NormalVector) -> Result<(), NormalError> {
        if v.colors.len() != self.num_colors {
            return Err(NormalError::Shape { what: "colors", got: v.colors.len(), want: self.num_colors });
        }
        if v.discs.len() != self.num_discs {
            return Err(NormalError::Shape { what: "vertices", got: v.discs.len(), want: self.num_discs });
        }
        Ok(())
    }

    /// The disc decompositions forced by `colors`, if they are compatible.
    fn complete(&self, colors: &[u32]) -> Option<NormalVector> {
        let mut discs = Vec::with_capacity(self.num_discs);
        for (i, p) in self.pieces.iter().enumerate() {
            discs.extend(p.check(self.colors(i, colors))?);
        }
        Some(NormalVector { colors: colors.to_vec(), discs })
    }

    fn compatible(&self, v: &NormalVector) -> bool {
        self.complete(&v.colors).is_some_and(|w| w.discs == v.discs)
    }

    fn obvious(&self) -> Option<Vec<u32>> {
        (self.pieces.len() == 1).then(|| self.pieces[0].obvious())
    }
}

/// Vector with the given colors and the disc decompositions they force.
pub fn complete_vector(skel: &Skeleton, colors: &[u32]) -> Result<Option<NormalVector>, NormalError> {
    let l = Layout::new(skel)?;
    if colors.len() != l.num_colors {
        return Err(NormalError::Shape { what: "colors", got: colors.len(), want: l.num_colors });
    }
    Ok(l.complete(colors))
}

/// Number of color coordinates of vectors on `skel`.
pub fn num_coordinates(skel: &Skeleton) -> Result<usize, NormalError> {
    Ok(Layout::new(skel)?.num_colors)
}

/// The obvious sphere, boundary of a regular neighbourhood of the
/// skeleton and the boundary; sums have none in these coordinates.
pub fn obvious_vector(skel: &Skeleton) -> Result<Option<NormalVector>, NormalError> {
    let l = Layout::new(skel)?;
    Ok(l.obvious().and_then(|c| l.complete(&c)))
}

pub fn compatible(skel: &Skeleton, v: &NormalVector) -> Result<bool, NormalError> {
    let l = Layout::new(skel)?;
    l.shape(v)?;
    Ok(l.compatible(v))
}

/// Every vector of `len` coordinates with sum at most `w`, by weight and
/// then lexicographically.
fn compositions(len: usize, w: u32) -> Vec<Vec<u32>> {
    fn rec(len: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == len {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let top = if cur.len() + 1 == len { left } else { 0 };
        for x in (top..=left).rev() {
            cur.push(x);
            rec(len, left - x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for t in 0..=w {
        let mut exact = Vec::new();
        rec(len, t, &mut Vec::new(), &mut exact);
        exact.reverse();
        out.extend(exact);
    }
    out
}

fn enumerate_layout(l: &Layout, w: u32) -> Vec<NormalVector> {
    if l.num_colors == 0 {
        return l.complete(&[]).into_iter().collect();
    }
    // split the search on the first coordinate
    let rest = l.num_colors - 1;
    let mut out: Vec<NormalVector> = (0..=w)
        .into_par_iter()
        .flat_map_iter(|head| {
            compositions(rest, w - head).into_iter().filter_map(move |mut tail| {
                tail.insert(0, head);
                l.complete(&tail)
            })
        })
        .collect();
    out.sort_by(|a, b| a.weight().cmp(&b.weight()).then_with(|| a.colors.cmp(&b.colors)));
    out
}

/// All compatible vectors of total color at most `max_weight`, by weight.
pub fn enumerate_compatible(skel: &Skeleton, max_weight: u32) -> Result<Vec<NormalVector>, NormalError> {
    Ok(enumerate_layout(&Layout::new(skel)?, max_weight))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceStats {
    pub chi: i64,
    /// The same characteristic counted from the cells of the surface.
    pub chi_cells: i64,
    /// Euler characteristic of each component.
    pub components: Vec<i64>,
    pub is_sphere: bool,
    pub is_obvious: bool,
}

fn stats_in(l: &Layout, v: &NormalVector) -> Result<SurfaceStats, NormalError> {
    l.shape(v)?;
    if !l.compatible(v) {
        return Err(NormalError::Incompatible(v.to_string()));
    }
    let mut components = Vec::new();
    let mut chi_cells = 0;
    for (i, p) in l.pieces.iter().enumerate() {
        let (c, cells) = p.surface(l.colors(i, &v.colors), l.discs(i, &v.discs))?;
        components.extend(c);
        chi_cells += cells;
    }
    let arcs: u32 = l.arcs(&v.colors).iter().sum();
    components.extend(std::iter::repeat(2).take(arcs as usize));
    chi_cells += 2 * arcs as i64;
    let chi = components.iter().sum();
    Ok(SurfaceStats {
        chi,
        chi_cells,
        is_sphere: components == [2],
        is_obvious: l.obvious().is_some_and(|o| o == v.colors),
        components,
    })
}

pub fn surface_stats(skel: &Skeleton, v: &NormalVector) -> Result<SurfaceStats, NormalError> {
    stats_in(&Layout::new(skel)?, v)
}

/// The skeleton left after cutting along a sphere and collapsing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutResult {
    /// Skeleta of the pieces; a ball shows up as `Point`.
    pub pieces: Vec<Skeleton>,
    pub separating: bool,
    /// `S^2 x S^1` or its twisted version, split off by a non-separating
    /// sphere.
    pub split_off: Option<AtomSkeleton>,
    /// Interior vertices over all pieces.
    pub vertices: usize,
}

impl CutResult {
    fn new(pieces: Vec<Skeleton>, split_off: Option<AtomSkeleton>) -> CutResult {
        let pieces: Vec<Skeleton> = pieces.iter().map(nuclear_collapse).collect();
        let vertices = pieces.iter().map(Skeleton::interior_vertices).sum();
        CutResult { pieces, separating: split_off.is_none(), split_off, vertices }
    }

    /// Neither side of a separating sphere is a ball, or the sphere does
    /// not separate.
    pub fn is_essential(&self) -> bool {
        let point = Skeleton::Atom(AtomSkeleton::Point);
        !self.separating || self.pieces.iter().all(|p| *p != point)
    }
}

fn chain(parts: &[Skeleton]) -> Skeleton {
    match parts {
        [] => Skeleton::Atom(AtomSkeleton::Point),
        [one] => one.clone(),
        many => Skeleton::Sum(many.to_vec()),
    }
}

fn cut_in(l: &Layout, v: &NormalVector) -> Result<CutResult, NormalError> {
    let stats = stats_in(l, v)?;
    if !stats.is_sphere {
        return Err(NormalError::Unsupported(format!(
            "cutting along a surface with components {:?}",
            stats.components
        )));
    }
    if let Some(i) = l.arcs(&v.colors).iter().position(|&a| a > 0) {
        return Ok(CutResult::new(vec![chain(&l.parts[..=i]), chain(&l.parts[i + 1..])], None));
    }
    let i = (0..l.pieces.len())
        .find(|&i| l.colors(i, &v.colors).iter().any(|&c| c > 0))
        .expect("a sphere has a nonzero color");
    let c = l.colors(i, &v.colors);
    let whole = chain(&l.parts);
    let ball = Skeleton::Atom(AtomSkeleton::Point);
    if c == l.pieces[i].obvious() {
        return Ok(CutResult::new(vec![whole, ball], None));
    }
    match &l.pieces[i] {
        Piece::Join { twisted } => {
            let mut rest = l.parts.clone();
            rest[i] = ball;
            Ok(CutResult::new(vec![chain(&rest)], Some(AtomSkeleton::S2JoinS1 { twisted: *twisted })))
        }
        _ => {
            Err(NormalError::Unsupported(format!("cutting {} along a sphere that is not the obvious one", l.parts[i])))
        }
    }
}

/// Cuts along a normal sphere.
pub fn cut_along(skel: &Skeleton, v: &NormalVector) -> Result<CutResult, NormalError> {
    cut_in(&Layout::new(skel)?, v)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FactorStatus {
    /// No essential sphere of weight at most this.
    PrimeUpTo(u32),
    /// The search met a sphere it could not cut along.
    Unresolved(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    pub pair: MarkedPair,
    pub complexity: Complexity,
    pub status: FactorStatus,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub factors: Vec<Factor>,
    pub complexity: Complexity,
    /// Whether the factor complexities add up to that of the input, when
    /// all are known.
    pub additive: Option<bool>,
}

fn embed(l: &Layout, i: usize, v: &NormalVector) -> NormalVector {
    let mut colors = vec![0; l.num_colors];
    colors[l.color_at[i]..l.color_at[i] + v.colors.len()].copy_from_slice(&v.colors);
    let mut discs = vec![VertexDiscs::default(); l.num_discs];
    discs[l.disc_at[i]..l.disc_at[i] + v.discs.len()].copy_from_slice(&v.discs);
    NormalVector { colors, discs }
}

/// Connected normal spheres of weight at most `w`: the arc spheres first,
/// then those inside each part by weight.
fn spheres(l: &Layout, w: u32) -> Result<Vec<NormalVector>, NormalError> {
    let mut out = Vec::new();
    if w >= 1 {
        for a in l.arcs_at..l.num_colors {
            let mut colors = vec![0; l.num_colors];
            colors[a] = 1;
            out.extend(l.complete(&colors));
        }
    }
    for (i, part) in l.parts.iter().enumerate() {
        let single = Layout::new(part)?;
        for v in enumerate_layout(&single, w) {
            if !v.is_zero() && stats_in(&single, &v)?.is_sphere {
                out.push(embed(l, i, &v));
            }
        }
    }
    Ok(out)
}

/// First essential sphere of weight at most `w`.
fn essential_sphere(l: &Layout, w: u32) -> Result<Option<CutResult>, NormalError> {
    for v in spheres(l, w)? {
        let cut = cut_in(l, &v)?;
        if cut.is_essential() {
            return Ok(Some(cut));
        }
    }
    Ok(None)
}

fn pair_of(s: &Skeleton) -> MarkedPair {
    match s {
        Skeleton::Standard(p) => MarkedPair::from_poly(p.clone()),
        Skeleton::Atom(a) => MarkedPair::atom(match a {
            AtomSkeleton::Point => AtomLabel::S3,
            AtomSkeleton::TripleHat => AtomLabel::L31,
            AtomSkeleton::ProjectivePlane => AtomLabel::P3,
            AtomSkeleton::S2JoinS1 { twisted: false } => AtomLabel::S2xS1,
            AtomSkeleton::S2JoinS1 { twisted: true } => AtomLabel::S2twS1,
            AtomSkeleton::P1 => AtomLabel::B1,
            AtomSkeleton::P1prime => AtomLabel::B1p,
        }),
        Skeleton::Sum(ps) => {
            let mut it = ps.iter().map(pair_of);
            let first = it.next().expect("sums have parts");
            it.fold(first, |acc, p| connected_sum(&acc, &p))
        }
    }
}

/// Drops ball summands.
fn without_balls(s: &Skeleton) -> Skeleton {
    let point = Skeleton::Atom(AtomSkeleton::Point);
    let mut flat = Vec::new();
    flatten(s, &mut flat);
    flat.retain(|p| *p != point);
    chain(&flat)
}

/// Splits `pair` along essential normal spheres of weight at most
/// `weight_bound` until none is found; a semi-decision.
pub fn prime_decompose(pair: &MarkedPair, table: &CensusTable, weight_bound: u32) -> Decomposition {
    let point = Skeleton::Atom(AtomSkeleton::Point);
    let mut work = vec![without_balls(&pair.skeleton)];
    let mut factors = Vec::new();
    let finish = |s: &Skeleton, status| {
        let pair = pair_of(s);
        Factor { complexity: complexity_exact_within(&pair, table), pair, status }
    };
    while let Some(part) = work.pop() {
        if part == point && !(factors.is_empty() && work.is_empty()) {
            continue;
        }
        let found = Layout::new(&part).and_then(|l| essential_sphere(&l, weight_bound));
        match found {
            Ok(Some(cut)) => {
                if let Some(a) = cut.split_off {
                    factors.push(finish(&Skeleton::Atom(a), FactorStatus::PrimeUpTo(weight_bound)));
                }
                work.extend(cut.pieces.iter().rev().map(without_balls));
            }
            Ok(None) => factors.push(finish(&part, FactorStatus::PrimeUpTo(weight_bound))),
            Err(e) => factors.push(finish(&part, FactorStatus::Unresolved(e.to_string()))),
        }
    }
    let complexity = complexity_exact_within(pair, table);
    let total: Option<usize> = factors
        .iter()
        .map(|f| match f.complexity {
            Complexity::Exact(c) => Some(c),
            Complexity::Unknown { .. } => None,
        })
        .sum();
    let additive = match (complexity, total) {
        (Complexity::Exact(c), Some(t)) => Some(c == t),
        _ => None,
    };
    Decomposition { factors, complexity, additive }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::atom_skeleton;

    fn atom(a: AtomSkeleton) -> Skeleton {
        Skeleton::Atom(a)
    }

    #[test]
    fn boundary_vertex_rule() {
        assert!(!boundary_vertex_ok(1, [2, 2, 1]));
        assert!(boundary_vertex_ok(1, [2, 2, 2]));
        assert!(!boundary_vertex_ok(0, [2, 2, 2]));
        assert!(!boundary_vertex_ok(3, [4, 2, 2]));
        assert!(boundary_vertex_ok(0, [2, 2, 0]));
    }

    #[test]
    fn compositions_are_ordered() {
        let c = compositions(2, 2);
        assert_eq!(c, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![0, 2], vec![1, 1], vec![2, 0]]);
        assert_eq!(compositions(0, 3), vec![Vec::<u32>::new()]);
    }

    #[test]
    fn zero_weight_gives_the_empty_surface() {
        let s = atom(AtomSkeleton::TripleHat);
        let vs = enumerate_compatible(&s, 0).unwrap();
        assert_eq!(vs.len(), 1);
        let st = surface_stats(&s, &vs[0]).unwrap();
        assert!(st.components.is_empty());
        assert!(!st.is_sphere);
    }

    #[test]
    fn triple_hat_spheres_are_parallel() {
        let s = atom(AtomSkeleton::TripleHat);
        let vs = enumerate_compatible(&s, 8).unwrap();
        assert_eq!(vs.iter().map(|v| v.colors[0]).collect::<Vec<_>>(), vec![0, 2, 4, 6, 8]);
        let st = surface_stats(&s, &vs[2]).unwrap();
        assert_eq!(st.components, vec![2, 2]);
        assert!(surface_stats(&s, &vs[1]).unwrap().is_obvious);
    }

    #[test]
    fn wrong_length_is_an_error() {
        let s = atom(AtomSkeleton::TripleHat);
        let v = NormalVector { colors: vec![2, 2], discs: vec![] };
        assert!(matches!(compatible(&s, &v), Err(NormalError::Shape { .. })));
    }

    #[test]
    fn sums_split_along_arc_spheres() {
        let s = Skeleton::Sum(vec![atom(AtomSkeleton::TripleHat), atom(AtomSkeleton::ProjectivePlane)]);
        let v = complete_vector(&s, &[0, 0, 1]).unwrap().unwrap();
        let cut = cut_along(&s, &v).unwrap();
        assert!(cut.is_essential());
        assert_eq!(cut.pieces, vec![atom(AtomSkeleton::TripleHat), atom(AtomSkeleton::ProjectivePlane)]);
    }

    #[test]
    fn join_fiber_does_not_separate() {
        let s = atom(AtomSkeleton::S2JoinS1 { twisted: true });
        let v = complete_vector(&s, &[1, 0]).unwrap().unwrap();
        let cut = cut_along(&s, &v).unwrap();
        assert!(!cut.separating && cut.is_essential());
        assert_eq!(cut.split_off, Some(AtomSkeleton::S2JoinS1 { twisted: true }));
        assert!(complete_vector(&s, &[1, 1]).unwrap().is_none());
    }

    #[test]
    fn obvious_sphere_cuts_off_a_ball() {
        for l in AtomLabel::basic() {
            let s = atom_skeleton(l);
            let v = obvious_vector(&s).unwrap().unwrap_or_else(|| panic!("{l}"));
            let st = surface_stats(&s, &v).unwrap();
            assert!(st.is_sphere && st.is_obvious, "{l}: {st:?}");
            assert_eq!(st.chi, st.chi_cells, "{l}");
            let cut = cut_along(&s, &v).unwrap();
            assert!(!cut.is_essential());
            assert_eq!(cut.vertices, s.interior_vertices());
        }
    }

    #[test]
    fn all_twos_are_compatible_on_basic_atoms() {
        for l in AtomLabel::basic() {
            let s = atom_skeleton(l);
            if let Skeleton::Standard(_) = s {
                let n = num_coordinates(&s).unwrap();
                assert!(complete_vector(&s, &vec![2; n]).unwrap().is_some(), "{l}");
            }
        }
    }

    #[test]
    fn projective_plane_is_prime() {
        let t = crate::census::build_table(0);
        let d = prime_decompose(&MarkedPair::atom(AtomLabel::P3), &t, 8);
        assert_eq!(d.factors.len(), 1);
        assert_eq!(d.factors[0].status, FactorStatus::PrimeUpTo(8));
    }

    #[test]
    fn lens_space_sums_split() {
        let t = crate::census::build_table(0);
        let l31 = MarkedPair::atom(AtomLabel::L31);
        let s = connected_sum(&l31, &MarkedPair::atom(AtomLabel::P3));
        let d = prime_decompose(&s, &t, 8);
        let keys: Vec<String> = d.factors.iter().map(|f| f.pair.key()).collect();
        assert_eq!(keys, vec![l31.key(), MarkedPair::atom(AtomLabel::P3).key()]);
        assert!(d.factors.iter().all(|f| f.complexity == Complexity::Exact(0)));
        assert_eq!(d.additive, Some(true));
        let d0 = prime_decompose(&s, &t, 0);
        assert_eq!(d0.factors.len(), 1);
        assert_eq!(d0.factors[0].status, FactorStatus::PrimeUpTo(0));
    }
}
