//! The `poly-v1` text format.
//!
//! ```text
//! POLY v=2 e=4
//! E 0 0 0 1 0 1
//! C 3
//! MARK 0 T theta
//! ```
//!
//! `C` lines (vertex-free singular circles with their wing permutation) are
//! only present when the polyhedron has such circles. Face ids in `MARK`
//! lines follow the order of [`SpecialPolyhedron::trace_faces`].

use std::fmt::Write as _;

use thiserror::Error;

use super::ograph::{Circle, Edge, End, Mark, PolyError, SpecialPolyhedron, SpineKind, SurfaceKind};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("missing POLY header")]
    MissingHeader,
    #[error("header declares {declared} edges but {found} were given")]
    EdgeCount { declared: usize, found: usize },
    #[error(transparent)]
    Structure(#[from] PolyError),
    #[error("MARK refers to face {0} which does not exist")]
    UnknownFace(usize),
}

fn syntax(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax { line, msg: msg.into() }
}

fn kv(tok: &str, key: &str, line: usize) -> Result<usize, ParseError> {
    tok.strip_prefix(key)
        .and_then(|r| r.strip_prefix('='))
        .and_then(|r| r.parse().ok())
        .ok_or_else(|| syntax(line, format!("expected {key}=<int>, got {tok:?}")))
}

pub fn parse_poly(text: &str) -> Result<SpecialPolyhedron, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut circles = Vec::new();
    let mut marks_raw: Vec<(usize, SurfaceKind, SpineKind)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks[0] {
            "POLY" => {
                if header.is_some() || toks.len() != 3 {
                    return Err(syntax(ln, "bad POLY header"));
                }
                header = Some((kv(toks[1], "v", ln)?, kv(toks[2], "e", ln)?));
            }
            "E" => {
                if header.is_none() {
                    return Err(ParseError::MissingHeader);
                }
                if toks.len() != 7 {
                    return Err(syntax(ln, "edge lines have six fields"));
                }
                let mut n = [0usize; 6];
                for k in 0..6 {
                    n[k] = toks[k + 1].parse().map_err(|_| syntax(ln, format!("not an integer: {:?}", toks[k + 1])))?;
                }
                if n[1] > 3 || n[4] > 3 || n[2] > 5 || n[5] > 5 {
                    return Err(syntax(ln, "slot must be 0-3 and perm 0-5"));
                }
                edges.push(Edge::new(End::new(n[0], n[1] as u8, n[2] as u8), End::new(n[3], n[4] as u8, n[5] as u8)));
            }
            "C" => {
                if toks.len() != 2 {
                    return Err(syntax(ln, "circle lines have one field"));
                }
                let p: u8 = toks[1].parse().map_err(|_| syntax(ln, "bad circle perm"))?;
                if p > 5 {
                    return Err(syntax(ln, "perm must be 0-5"));
                }
                circles.push(Circle { perm: p });
            }
            "MARK" => {
                if toks.len() != 4 {
                    return Err(syntax(ln, "MARK lines have three fields"));
                }
                let f: usize = toks[1].parse().map_err(|_| syntax(ln, "bad face id"))?;
                let s = match toks[2] {
                    "T" => SurfaceKind::Torus,
                    "K" => SurfaceKind::Klein,
                    other => return Err(syntax(ln, format!("surface must be T or K, got {other:?}"))),
                };
                let sp = match toks[3] {
                    "theta" => SpineKind::Theta,
                    "sigma" => SpineKind::Sigma,
                    other => return Err(syntax(ln, format!("spine must be theta or sigma, got {other:?}"))),
                };
                marks_raw.push((f, s, sp));
            }
            other => return Err(syntax(ln, format!("unknown record {other:?}"))),
        }
    }
    let (nv, ne) = header.ok_or(ParseError::MissingHeader)?;
    if ne != edges.len() {
        return Err(ParseError::EdgeCount { declared: ne, found: edges.len() });
    }
    let plain = SpecialPolyhedron::new(nv, edges, circles, vec![])?;
    if marks_raw.is_empty() {
        return Ok(plain);
    }
    let faces = plain.trace_faces()?;
    let mut marks = Vec::new();
    for (f, s, sp) in marks_raw {
        let face = faces.faces.get(f).ok_or(ParseError::UnknownFace(f))?;
        let c = face.corners.first().ok_or(ParseError::UnknownFace(f))?;
        marks.push(Mark { vertex: c.vertex, germ: super::ograph::germ_index(c.from, c.to), surface: s, spine: sp });
    }
    Ok(plain.with_marks(marks)?)
}

pub fn write_poly(poly: &SpecialPolyhedron) -> String {
    let mut out = String::new();
    writeln!(out, "POLY v={} e={}", poly.num_vertices(), poly.edges().len()).unwrap();
    for e in poly.edges() {
        let [a, b] = e.ends;
        writeln!(out, "E {} {} {} {} {} {}", a.vertex, a.slot, a.perm, b.vertex, b.slot, b.perm).unwrap();
    }
    for c in poly.circles() {
        writeln!(out, "C {}", c.perm).unwrap();
    }
    if !poly.marks().is_empty() {
        let faces = poly.trace_faces().expect("marked polyhedra are complete");
        for m in poly.marks() {
            let f = faces.germ_face[m.vertex as usize][m.germ as usize];
            writeln!(out, "MARK {} {} {}", f, m.surface, m.spine).unwrap();
        }
    }
    out
}
