use std::fmt;

use super::ograph::{germ_index, FaceSet, SpecialPolyhedron, SpineKind, Step, SurfaceKind, GERMS};
use super::thicken::{thicken_with, SurfaceType, ThickenError, Thickening};

/// Structure of a marked boundary face C∖τ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hexagon {
    pub face: usize,
    pub vertices: [u32; 2],
    /// The slot at each spine vertex that leaves the boundary surface.
    pub pslots: [u8; 2],
    pub tau_edges: [u32; 3],
    pub surface: SurfaceKind,
    pub spine: SpineKind,
}

/// Recognises a face whose closure is a torus or Klein bottle with a
/// two-vertex trivalent spine.
pub fn analyze_hexagon(poly: &SpecialPolyhedron, faces: &FaceSet, face: usize) -> Option<Hexagon> {
    let f = faces.faces.get(face)?;
    if f.len() != 6 || !f.disc || f.corners.len() != 6 {
        return None;
    }
    let mut verts: Vec<u32> = f.corners.iter().map(|c| c.vertex).collect();
    verts.sort();
    verts.dedup();
    if verts.len() != 2 {
        return None;
    }
    let mut pslots = [0u8; 2];
    for (k, &v) in verts.iter().enumerate() {
        let germs: Vec<u8> = f.corners.iter().filter(|c| c.vertex == v).map(|c| germ_index(c.from, c.to)).collect();
        if germs.len() != 3 {
            return None;
        }
        // the three germs must avoid one common slot
        let c = (0..4u8).find(|&s| {
            germs.iter().all(|&g| {
                let (a, b) = GERMS[g as usize];
                a != s && b != s
            })
        })?;
        pslots[k] = c;
    }
    let mut edges: Vec<(u32, u8)> = f
        .steps
        .iter()
        .map(|s| match *s {
            Step::Edge { edge, from } => (edge, from),
            Step::Circle { .. } => (u32::MAX, 0),
        })
        .collect();
    if edges.iter().any(|e| e.0 == u32::MAX) {
        return None;
    }
    edges.sort();
    let mut tau = Vec::new();
    let mut orientable = true;
    for pair in edges.chunks(2) {
        if pair.len() != 2 || pair[0].0 != pair[1].0 {
            return None;
        }
        if pair[0].1 == pair[1].1 {
            orientable = false;
        }
        tau.push(pair[0].0);
    }
    tau.dedup();
    if tau.len() != 3 {
        return None;
    }
    let mut loops = 0;
    for &e in &tau {
        let edge = &poly.edges()[e as usize];
        for end in &edge.ends {
            let k = verts.iter().position(|&v| v == end.vertex)?;
            if end.slot == pslots[k] {
                return None;
            }
        }
        if edge.ends[0].vertex == edge.ends[1].vertex {
            loops += 1;
        }
    }
    let spine = match loops {
        0 => SpineKind::Theta,
        2 => SpineKind::Sigma,
        _ => return None,
    };
    Some(Hexagon {
        face,
        vertices: [verts[0], verts[1]],
        pslots,
        tau_edges: [tau[0], tau[1], tau[2]],
        surface: if orientable { SurfaceKind::Torus } else { SurfaceKind::Klein },
        spine,
    })
}

/// Hexagons of all marked faces, in mark order.
pub fn marked_hexagons(poly: &SpecialPolyhedron, faces: &FaceSet) -> Result<Vec<Hexagon>, String> {
    let mut out: Vec<Hexagon> = Vec::new();
    for (i, m) in poly.marks().iter().enumerate() {
        let fid = faces.germ_face[m.vertex as usize][m.germ as usize] as usize;
        let h = analyze_hexagon(poly, faces, fid)
            .ok_or_else(|| format!("mark {i}: face {fid} is not a boundary hexagon"))?;
        if h.surface != m.surface || h.spine != m.spine {
            return Err(format!(
                "mark {i}: declared ({}, {}) but face {fid} closes to ({}, {})",
                m.surface, m.spine, h.surface, h.spine
            ));
        }
        if out.iter().any(|o| o.vertices.iter().any(|v| h.vertices.contains(v))) {
            return Err(format!("mark {i}: shares spine vertices with another mark"));
        }
        out.push(h);
    }
    Ok(out)
}

/// Checks that the thickening is bounded by one sphere plus, for every
/// marked face, the parallel copy of its closed surface.
pub fn boundary_matches_marks(th: &Thickening, hexes: &[Hexagon]) -> Result<(), String> {
    let mut used = vec![false; th.components.len()];
    for (i, h) in hexes.iter().enumerate() {
        let comp = th.component_of_region(h.vertices[0] as usize, h.pslots[0]);
        if th.component_of_region(h.vertices[1] as usize, h.pslots[1]) != comp {
            return Err(format!("mark {i}: outer regions lie on different components"));
        }
        let c = &th.components[comp];
        if (c.cells0, c.cells1, c.cells2) != (2, 3, 1) {
            return Err(format!("mark {i}: outer copy is not a single face side"));
        }
        let want = match h.surface {
            SurfaceKind::Torus => SurfaceType::Torus,
            SurfaceKind::Klein => SurfaceType::Klein,
        };
        if c.kind != want {
            return Err(format!("mark {i}: outer copy is {:?}", c.kind));
        }
        if std::mem::replace(&mut used[comp], true) {
            return Err(format!("mark {i}: component already used"));
        }
    }
    let rest: Vec<_> = th.components.iter().enumerate().filter(|(i, _)| !used[*i]).map(|(_, c)| c.kind).collect();
    if rest != [SurfaceType::Sphere] {
        return Err(format!("remaining boundary is {rest:?}, expected one sphere"));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub ok: bool,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
    pub quasi_standard: bool,
    pub standard: bool,
    pub vertices: usize,
    pub interior_vertices: usize,
    pub faces: Option<usize>,
    pub boundary_components: usize,
    pub euler: Option<i64>,
    pub thickenable: Option<bool>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.ok).collect()
    }

    pub fn check(&self, name: &str) -> Option<bool> {
        self.checks.iter().find(|c| c.name == name).map(|c| c.ok)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let mark = if c.ok { "ok  " } else { "FAIL" };
            if c.detail.is_empty() {
                writeln!(f, "{mark} {}", c.name)?;
            } else {
                writeln!(f, "{mark} {}: {}", c.name, c.detail)?;
            }
        }
        writeln!(f, "quasi-standard: {}", self.quasi_standard)?;
        writeln!(f, "standard: {}", self.standard)
    }
}

pub fn validate(poly: &SpecialPolyhedron) -> ValidationReport {
    let mut checks = Vec::new();
    let mut push = |name: &'static str, ok: bool, detail: String| {
        checks.push(Check { name, ok, detail });
    };
    let nv = poly.num_vertices();
    let nonempty = nv + poly.edges().len() + poly.circles().len() > 0;
    push("has-cells", nonempty, if nonempty { String::new() } else { "no cells".into() });
    let attached = poly.is_complete();
    push("slots-attached", attached, String::new());
    let faces = poly.trace_faces();
    let traced = faces.is_ok();
    push("traces-close", traced, faces.as_ref().err().map(|e| e.to_string()).unwrap_or_default());
    let nx = poly.marks().len();
    let mut report = ValidationReport {
        checks: Vec::new(),
        quasi_standard: false,
        standard: false,
        vertices: nv,
        interior_vertices: nv.saturating_sub(2 * nx),
        faces: None,
        boundary_components: nx,
        euler: None,
        thickenable: None,
    };
    let faces = match faces {
        Ok(f) if nonempty && attached => f,
        _ => {
            report.checks = checks;
            return report;
        }
    };
    report.quasi_standard = true;
    let nondisc: Vec<usize> = faces.faces.iter().enumerate().filter(|(_, f)| !f.disc).map(|(i, _)| i).collect();
    push(
        "faces-discs",
        nondisc.is_empty(),
        if nondisc.is_empty() { String::new() } else { format!("non-disc faces {nondisc:?}") },
    );
    let segments = poly.circles().is_empty();
    push(
        "edges-segments",
        segments,
        if segments { String::new() } else { format!("{} vertex-free circles", poly.circles().len()) },
    );
    let comps = poly.singular_components();
    let connected = comps <= 1;
    push("singular-graph-connected", connected, format!("{comps} components"));
    let f = faces.faces.len();
    let euler = nv as i64 - poly.edges().len() as i64 + f as i64;
    report.faces = Some(f);
    report.euler = Some(euler);
    push("euler-one", euler == 1, format!("chi = {euler}"));
    let hexes = marked_hexagons(poly, &faces);
    push("marks-hexagonal", hexes.is_ok(), hexes.as_ref().err().cloned().unwrap_or_default());
    let fp = f as i64 - nx as i64;
    let vp = nv as i64 - 2 * nx as i64;
    push("f-minus-v", fp - vp == nx as i64 + 1, format!("f(P) = {fp}, v(P) = {vp}, #X = {nx}"));
    let standard = nondisc.is_empty() && segments && connected && nv > 0;
    if nondisc.is_empty() {
        match thicken_with(poly, &faces) {
            Ok(th) => {
                report.thickenable = Some(true);
                push("thickenable", true, String::new());
                if let Ok(h) = &hexes {
                    let b = boundary_matches_marks(&th, h);
                    push("boundary-sphere-plus-marks", b.is_ok(), b.err().unwrap_or_default());
                }
            }
            Err(ThickenError::NotThickenable { face }) => {
                report.thickenable = Some(false);
                push("thickenable", false, format!("twisted plate over face {face}"));
            }
            Err(e) => push("thickenable", false, e.to_string()),
        }
    }
    report.standard = standard;
    report.checks = checks;
    report
}
