//! Census tables: records by level, brick status, checks and the record
//! text format.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use super::generate::{closures, kind_multisets, ClosureOptions};
use crate::calculus::{
    assemble, atom_skeleton, connected_sum, gluing_maps, is_trivial_assembling, s3_gluings, self_assemblings,
    strip_b2pp_poly, AtomLabel, CalcError, MarkedPair,
};
use crate::polyhedron::{
    canonical_signature, decode_signature, three_distinct_faces, validate, AtomSkeleton, CanonicalSignature, Skeleton,
    SpecialPolyhedron, SpineKind, SurfaceKind,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BrickStatus {
    Brick,
    /// A sharp assembling with this signature, written over record ids, or
    /// `faces` when some spine meets a face twice.
    NonBrick(String),
    /// Some assemblings could not be realized.
    Undecided,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusRecord {
    pub level: usize,
    pub signature: String,
    pub skeleton: Skeleton,
    pub boundary: Vec<(SurfaceKind, SpineKind)>,
    /// Atom label, or `anon#k`.
    pub id: String,
    /// No `B''_2` can be split off.
    pub kernel: bool,
    /// Singular graph within `3n` vertices.
    pub within_3n: bool,
    pub brick: BrickStatus,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CensusTable {
    pub levels: Vec<Vec<CensusRecord>>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CensusError {
    #[error("line {0}: {1}")]
    Syntax(usize, String),
}

fn atom_signature(a: AtomSkeleton) -> String {
    hex::encode(format!("atom:{}", a.name()))
}

/// Record signature: the canonical signature of a standard skeleton, or
/// the encoded name of an atom.
pub fn skeleton_signature(s: &Skeleton) -> String {
    match s {
        Skeleton::Standard(p) => canonical_signature(p).to_hex(),
        Skeleton::Atom(a) => atom_signature(*a),
        Skeleton::Sum(_) => hex::encode(s.key()),
    }
}

fn skeleton_from_signature(sig: &str) -> Result<Skeleton, String> {
    let bytes = hex::decode(sig).map_err(|e| e.to_string())?;
    if let Some(name) = bytes.strip_prefix(b"atom:") {
        let name = std::str::from_utf8(name).map_err(|e| e.to_string())?;
        return AtomSkeleton::from_name(name).map(Skeleton::Atom).ok_or(format!("unknown atom {name}"));
    }
    decode_signature(&CanonicalSignature::from_hex(sig).map_err(|e| e.to_string())?)
        .map(Skeleton::Standard)
        .map_err(|e| e.to_string())
}

impl CensusRecord {
    /// The pair, as an atom when the record is named by one.
    pub fn pair(&self) -> MarkedPair {
        match self.id.parse::<AtomLabel>() {
            Ok(l) => MarkedPair::atom(l),
            Err(_) => match &self.skeleton {
                Skeleton::Standard(p) => MarkedPair::from_poly(p.clone()).with_lower(self.level),
                other => unreachable!("anonymous record with skeleton {other}"),
            },
        }
    }

    fn flags(&self) -> String {
        let mut f = Vec::new();
        if self.kernel {
            f.push("kernel".to_string());
        }
        if self.within_3n {
            f.push("3n".to_string());
        }
        f.push(match &self.brick {
            BrickStatus::Brick => "brick".to_string(),
            BrickStatus::NonBrick(e) => format!("nonbrick={e}"),
            BrickStatus::Undecided => "undecided".to_string(),
        });
        f.join(";")
    }
}

fn profile(b: &[(SurfaceKind, SpineKind)]) -> String {
    if b.is_empty() {
        return "-".into();
    }
    b.iter().map(|(s, t)| format!("{s}:{t}")).collect::<Vec<_>>().join(",")
}

fn parse_profile(s: &str) -> Option<Vec<(SurfaceKind, SpineKind)>> {
    if s == "-" {
        return Some(Vec::new());
    }
    s.split(',')
        .map(|k| {
            let (a, b) = k.split_once(':')?;
            let surface = match a {
                "T" => SurfaceKind::Torus,
                "K" => SurfaceKind::Klein,
                _ => return None,
            };
            let spine = match b {
                "theta" => SpineKind::Theta,
                "sigma" => SpineKind::Sigma,
                _ => return None,
            };
            Some((surface, spine))
        })
        .collect()
}

impl fmt::Display for CensusRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "REC level={} sig={} bd={} id={} flags={}",
            self.level,
            self.signature,
            profile(&self.boundary),
            self.id,
            self.flags()
        )
    }
}

impl CensusTable {
    pub fn records(&self) -> impl Iterator<Item = &CensusRecord> {
        self.levels.iter().flatten()
    }

    pub fn max_level(&self) -> Option<usize> {
        self.levels.len().checked_sub(1)
    }

    /// The record whose skeleton has this key.
    pub fn find_key(&self, key: &str) -> Option<&CensusRecord> {
        self.records().find(|r| r.skeleton.key() == key)
    }

    pub fn to_records(&self) -> String {
        self.records().map(|r| format!("{r}\n")).collect()
    }

    pub fn parse(text: &str) -> Result<CensusTable, CensusError> {
        let mut levels: Vec<Vec<CensusRecord>> = Vec::new();
        for (ln, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |m: &str| CensusError::Syntax(ln + 1, m.to_string());
            let mut toks = line.split_whitespace();
            if toks.next() != Some("REC") {
                return Err(bad("expected REC"));
            }
            let mut kv = BTreeMap::new();
            for t in toks {
                let (k, v) = t.split_once('=').ok_or_else(|| bad("expected key=value"))?;
                kv.insert(k, v);
            }
            let get = |k: &str| kv.get(k).copied().ok_or_else(|| bad(&format!("missing {k}")));
            let level: usize = get("level")?.parse().map_err(|_| bad("bad level"))?;
            let signature = get("sig")?.to_string();
            let skeleton = skeleton_from_signature(&signature).map_err(|e| bad(&e))?;
            let boundary = parse_profile(get("bd")?).ok_or_else(|| bad("bad boundary profile"))?;
            let id = get("id")?.to_string();
            let mut kernel = false;
            let mut within_3n = false;
            let mut brick = BrickStatus::Undecided;
            for f in get("flags")?.split(';') {
                match f {
                    "kernel" => kernel = true,
                    "3n" => within_3n = true,
                    "brick" => brick = BrickStatus::Brick,
                    "undecided" => brick = BrickStatus::Undecided,
                    f => match f.strip_prefix("nonbrick=") {
                        Some(e) => brick = BrickStatus::NonBrick(e.to_string()),
                        None => return Err(bad(&format!("unknown flag {f}"))),
                    },
                }
            }
            if levels.len() <= level {
                levels.resize(level + 1, Vec::new());
            }
            levels[level].push(CensusRecord { level, signature, skeleton, boundary, id, kernel, within_3n, brick });
        }
        Ok(CensusTable { levels })
    }
}

/// Standard skeleta with `n` interior vertices. Level 0 takes up to three
/// boundary components; above it only kernels with `#X ≤ 2n`.
pub fn generate_candidates(n: usize) -> Vec<SpecialPolyhedron> {
    let (max_x, kernel) = if n == 0 { (3, false) } else { (2 * n, true) };
    let kinds: Vec<_> = (0..=max_x).flat_map(kind_multisets).collect();
    let found: Vec<Vec<SpecialPolyhedron>> =
        kinds.par_iter().map(|k| closures(n, k, ClosureOptions { kernel, skeleta_only: true })).collect();
    let mut all: BTreeMap<CanonicalSignature, SpecialPolyhedron> = BTreeMap::new();
    for p in found.into_iter().flatten() {
        all.entry(canonical_signature(&p)).or_insert(p);
    }
    all.into_values().collect()
}

const LEVEL0_ATOMS: [AtomLabel; 5] = [AtomLabel::S3, AtomLabel::L31, AtomLabel::P3, AtomLabel::B1, AtomLabel::B1p];

fn record(level: usize, skeleton: Skeleton, id: String, kernel: bool) -> CensusRecord {
    let boundary = skeleton.boundaries().unwrap_or_default();
    let within_3n = level + 2 * boundary.len() <= 3 * level;
    CensusRecord {
        level,
        signature: skeleton_signature(&skeleton),
        skeleton,
        boundary,
        id,
        kernel,
        within_3n,
        brick: BrickStatus::Undecided,
    }
}

/// Records of level `n`, without brick status.
pub fn build_level(n: usize) -> Vec<CensusRecord> {
    let mut recs: Vec<CensusRecord> = Vec::new();
    if n == 0 {
        for l in LEVEL0_ATOMS {
            recs.push(record(0, atom_skeleton(l), l.to_string(), true));
        }
    }
    let named: Vec<(String, AtomLabel)> = AtomLabel::basic().iter().map(|&l| (atom_skeleton(l).key(), l)).collect();
    let mut anon = 0;
    for p in generate_candidates(n) {
        let kernel = strip_b2pp_poly(&p).1 == 0;
        let s = Skeleton::Standard(p);
        let id = match named.iter().find(|(k, _)| *k == s.key()) {
            Some((_, l)) => l.to_string(),
            None => {
                anon += 1;
                format!("anon#{n}.{anon}")
            }
        };
        recs.push(record(n, s, id, kernel));
    }
    recs.sort_by(|a, b| a.signature.cmp(&b.signature));
    recs
}

/// Levels `0..=n` with brick status.
pub fn build_table(n: usize) -> CensusTable {
    let mut table = CensusTable::default();
    for level in 0..=n {
        table.levels.push(build_level(level));
        let status: Vec<BrickStatus> = table.levels[level].par_iter().map(|r| brick_check(r, &table)).collect();
        for (r, s) in table.levels[level].iter_mut().zip(status) {
            r.brick = s;
        }
    }
    table
}

fn matching_boundaries(a: &MarkedPair, b: &MarkedPair) -> Vec<(usize, usize)> {
    let (Ok(ka), Ok(kb)) = (a.boundaries(), b.boundaries()) else { return Vec::new() };
    let mut out = Vec::new();
    for (i, x) in ka.iter().enumerate() {
        for (j, y) in kb.iter().enumerate() {
            if x == y {
                out.push((i, j));
            }
        }
    }
    out
}

/// Brick status of `rec` against the records of `table` below and at its
/// level: it is a non-brick if a non-trivial assembling of records whose
/// levels add up to its own, or a self-assembling six levels down, has its
/// skeleton.
pub fn brick_check(rec: &CensusRecord, table: &CensusTable) -> BrickStatus {
    let key = rec.skeleton.key();
    let n = rec.level;
    let pool: Vec<(usize, MarkedPair, String)> = table
        .records()
        .filter(|r| r.level <= n && !r.boundary.is_empty() && r.signature != rec.signature)
        .map(|r| (r.level, r.pair(), r.id.clone()))
        .collect();
    let mut undecided = false;
    for (x, (lx, a, ea)) in pool.iter().enumerate() {
        for (ly, b, eb) in &pool[x..] {
            if lx + ly != n {
                continue;
            }
            for (ia, ib) in matching_boundaries(a, b) {
                let Ok(maps) = gluing_maps(a, ia, b, ib) else { continue };
                for g in 0..maps.len() {
                    if !matches!(is_trivial_assembling(a, b, g, ia, ib), Ok(None)) {
                        continue;
                    }
                    match assemble(a, b, g, ia, ib) {
                        Ok(r) if r.key() == key => {
                            let tail = if (ia, ib) == (0, 0) { String::new() } else { format!(",{ia},{ib}") };
                            return BrickStatus::NonBrick(format!("asm({ea},{eb},{g}{tail})"));
                        }
                        Ok(_) => {}
                        Err(CalcError::Unsupported(_)) => undecided = true,
                        Err(_) => {}
                    }
                }
            }
        }
    }
    if n >= 6 {
        for (l, a, ea) in &pool {
            if l + 6 != n {
                continue;
            }
            let k = a.num_boundaries();
            for i in 0..k {
                for j in i + 1..k {
                    match self_assemblings(a, i, j) {
                        Ok(all) => {
                            if let Some(ident) = all.iter().position(|q| Skeleton::Standard(q.clone()).key() == key) {
                                let tail = if (i, j) == (0, 1) { String::new() } else { format!(",{i},{j}") };
                                return BrickStatus::NonBrick(format!("self({ea},{ident}{tail})"));
                            }
                        }
                        Err(CalcError::Unsupported(_)) => undecided = true,
                        Err(_) => {}
                    }
                }
            }
        }
    }
    if n > 0 && three_faces(rec).is_err() {
        // reducible, or one of the solid tori and Klein bottles
        return BrickStatus::NonBrick("faces".into());
    }
    if undecided {
        BrickStatus::Undecided
    } else {
        BrickStatus::Brick
    }
}

/// One named check over a table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableCheck {
    pub name: String,
    pub passed: usize,
    pub failures: Vec<String>,
}

impl TableCheck {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub checks: Vec<TableCheck>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(TableCheck::ok)
    }

    fn run(&mut self, name: &str, items: Vec<(String, Result<(), String>)>) {
        let mut c = TableCheck { name: name.to_string(), passed: 0, failures: Vec::new() };
        for (what, r) in items {
            match r {
                Ok(()) => c.passed += 1,
                Err(e) => c.failures.push(format!("{what}: {e}")),
            }
        }
        self.checks.push(c);
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let mark = if c.ok() { "ok  " } else { "FAIL" };
            writeln!(f, "{mark} {:<28} {} passed, {} failed", c.name, c.passed, c.failures.len())?;
            for e in c.failures.iter().take(50) {
                writeln!(f, "       {e}")?;
            }
        }
        Ok(())
    }
}

fn require(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn structure(r: &CensusRecord) -> Result<(), String> {
    let Skeleton::Standard(p) = &r.skeleton else { return Ok(()) };
    let rep = validate(p);
    require(rep.standard && rep.is_valid(), || {
        rep.failures().iter().map(|c| format!("{} ({})", c.name, c.detail)).collect::<Vec<_>>().join("; ")
    })?;
    require(rep.thickenable == Some(true), || "not thickenable".into())?;
    let faces = rep.faces.unwrap_or(0) - r.boundary.len();
    let v = rep.interior_vertices;
    require(faces as i64 - v as i64 == r.boundary.len() as i64 + 1, || format!("f-v = {}", faces as i64 - v as i64))?;
    require(rep.euler == Some(1), || format!("euler characteristic {:?}", rep.euler))?;
    require(v == r.level, || format!("{v} interior vertices at level {}", r.level))?;
    if r.level > 0 {
        require(r.boundary.len() <= 2 * r.level, || format!("#X = {} > 2n", r.boundary.len()))?;
    }
    require(canonical_signature(p).to_hex() == r.signature, || "signature does not match skeleton".into())
}

/// Every edge away from the boundary spines meets an interior vertex.
fn edge_condition(r: &CensusRecord) -> Result<(), String> {
    let Skeleton::Standard(p) = &r.skeleton else { return Ok(()) };
    if r.level == 0 || !r.kernel {
        return Ok(());
    }
    let faces = p.trace_faces().map_err(|e| e.to_string())?;
    let hexes = crate::polyhedron::marked_hexagons(p, &faces)?;
    let on_spine: BTreeSet<u32> = hexes.iter().flat_map(|h| h.vertices).collect();
    let spine_edges: BTreeSet<u32> = hexes.iter().flat_map(|h| h.tau_edges).collect();
    for (i, e) in p.edges().iter().enumerate() {
        if spine_edges.contains(&(i as u32)) {
            continue;
        }
        require(e.ends.iter().any(|x| !on_spine.contains(&x.vertex)), || {
            format!("edge {i} joins two boundary spines")
        })?;
    }
    Ok(())
}

fn three_faces(r: &CensusRecord) -> Result<(), String> {
    let Skeleton::Standard(p) = &r.skeleton else { return Ok(()) };
    if ["B1", "B1p", "B2", "B2p"].contains(&r.id.as_str()) {
        return Ok(());
    }
    for i in 0..r.boundary.len() {
        let ok = three_distinct_faces(p, i).map_err(|e| e.to_string())?;
        require(ok, || format!("boundary {i} meets fewer than three faces"))?;
    }
    Ok(())
}

/// A spine meeting some face twice rules out an irreducible pair other
/// than the solid tori and Klein bottles, so such records are no bricks.
fn faces_consistent(r: &CensusRecord) -> Result<(), String> {
    match three_faces(r) {
        Err(e) if r.brick == BrickStatus::Brick => Err(e),
        _ => Ok(()),
    }
}

fn identities(r: &CensusRecord) -> Result<(), String> {
    let a = r.pair();
    let key = a.key();
    let s3 = connected_sum(&a, &MarkedPair::atom(AtomLabel::S3));
    require(s3.key() == key, || "a # S3 differs from a".into())?;
    for l in [AtomLabel::B0, AtomLabel::B0p, AtomLabel::B0pp] {
        let b = MarkedPair::atom(l);
        for (ia, ib) in matching_boundaries(&a, &b) {
            let n = gluing_maps(&a, ia, &b, ib).map_err(|e| e.to_string())?.len();
            for g in 0..n {
                let res = assemble(&a, &b, g, ia, ib).map_err(|e| format!("{l} gluing {g}: {e}"))?;
                require(res.key() == key, || format!("a + {l} along {ia} with gluing {g} differs from a"))?;
            }
        }
    }
    let b1 = MarkedPair::atom(AtomLabel::B1);
    let with = connected_sum(&a, &b1);
    let last = with.num_boundaries() - 1;
    for g in s3_gluings(AtomLabel::B1, AtomLabel::B1).map_err(|e| e.to_string())? {
        let res = assemble(&with, &b1, g, last, 0).map_err(|e| e.to_string())?;
        require(res.key() == key, || format!("(a # B1) + B1 with gluing {g} differs from a"))?;
    }
    Ok(())
}

fn z_arithmetic() -> Vec<(String, Result<(), String>)> {
    let mut out = Vec::new();
    for k in 1..=6u32 {
        for h in 1..=6u32 {
            if k + h < 3 {
                continue;
            }
            let a = MarkedPair::atom(AtomLabel::Z(k));
            let b = MarkedPair::atom(AtomLabel::Z(h));
            let want = MarkedPair::atom(AtomLabel::Z(k + h - 2)).key();
            let r = (|| {
                let n = gluing_maps(&a, 0, &b, 0).map_err(|e| e.to_string())?.len();
                for g in 0..n {
                    let got = assemble(&a, &b, g, 0, 0).map_err(|e| e.to_string())?;
                    require(got.key() == want, || format!("gluing {g} gives {}", got.skeleton))?;
                }
                Ok(())
            })();
            out.push((format!("Z{k}+Z{h}"), r));
        }
    }
    let r = (|| {
        let z = MarkedPair::atom(AtomLabel::B2PP);
        let p = MarkedPair::atom(AtomLabel::B2p);
        let want = MarkedPair::atom(AtomLabel::B0pp).key();
        let n = gluing_maps(&z, 0, &p, 0).map_err(|e| e.to_string())?.len();
        for g in 0..n {
            let got = assemble(&z, &p, g, 0, 0).map_err(|e| e.to_string())?;
            require(got.key() == want, || format!("gluing {g} gives {}", got.skeleton))?;
        }
        Ok(())
    })();
    out.push(("B2pp+B2p".into(), r));
    out
}

/// The level-0 records are the complexity-zero kernels plus `B''_2`.
fn level0(table: &CensusTable) -> Vec<(String, Result<(), String>)> {
    use AtomLabel::*;
    let Some(recs) = table.levels.first() else {
        return vec![("level 0".into(), Err("missing".into()))];
    };
    let expected: BTreeSet<String> =
        [S3, L31, P3, B0, B0p, B0pp, B1, B1p, B2, B2p, Z(3)].iter().map(|&l| atom_skeleton(l).key()).collect();
    let got: BTreeSet<String> = recs.iter().map(|r| r.skeleton.key()).collect();
    let kernels: Vec<&str> = recs.iter().filter(|r| r.kernel).map(|r| r.id.as_str()).collect();
    vec![
        ("skeleta".into(), require(got == expected, || format!("{} records, expected {}", got.len(), expected.len()))),
        (
            "kernels".into(),
            require(kernels.len() == 10 && !kernels.contains(&"B2pp"), || format!("kernels {kernels:?}")),
        ),
    ]
}

/// Runs every table check.
pub fn verify_table(table: &CensusTable) -> VerifyReport {
    let mut rep = VerifyReport::default();
    let mut seen = BTreeSet::new();
    rep.run(
        "unique signatures",
        table
            .records()
            .map(|r| (r.id.clone(), require(seen.insert(r.signature.clone()), || "duplicate signature".into())))
            .collect(),
    );
    let per = |f: fn(&CensusRecord) -> Result<(), String>| -> Vec<(String, Result<(), String>)> {
        let recs: Vec<&CensusRecord> = table.records().collect();
        recs.par_iter().map(|r| (format!("level {} {}", r.level, r.id), f(r))).collect()
    };
    rep.run("structure", per(structure));
    rep.run("edge condition", per(edge_condition));
    rep.run("three faces on each spine", per(faces_consistent));
    rep.run("identity laws", per(identities));
    rep.run("level 0", level0(table));
    rep.run("Z arithmetic", z_arithmetic());
    rep
}

/// Differences between two tables, one line each.
pub fn diff_tables(a: &CensusTable, b: &CensusTable) -> Vec<String> {
    let index = |t: &CensusTable| -> BTreeMap<String, String> {
        t.records().map(|r| (r.signature.clone(), r.to_string())).collect()
    };
    let (ia, ib) = (index(a), index(b));
    let mut out = Vec::new();
    for (sig, ra) in &ia {
        match ib.get(sig) {
            None => out.push(format!("- {ra}")),
            Some(rb) if rb != ra => {
                out.push(format!("- {ra}"));
                out.push(format!("+ {rb}"));
            }
            _ => {}
        }
    }
    for (sig, rb) in &ib {
        if !ia.contains_key(sig) {
            out.push(format!("+ {rb}"));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn records_round_trip() {
        let t = build_table(0);
        let text = t.to_records();
        let back = CensusTable::parse(&text).unwrap();
        assert_eq!(back.to_records(), text);
        assert!(diff_tables(&t, &back).is_empty());
    }

    #[test]
    fn rejects_unknown_flags() {
        let line = format!("REC level=0 sig={} bd=- id=S3 flags=shiny", atom_signature(AtomSkeleton::Point));
        assert!(CensusTable::parse(&line).is_err());
    }
}
