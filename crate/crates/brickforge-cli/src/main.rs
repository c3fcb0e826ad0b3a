use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};

use brickforge::calculus::{complexity_exact_within, evaluate, strip_b2pp_poly, AtomLabel, Expr, MarkedPair};
use brickforge::census::{build_table, skeleton_signature, verify_table, BrickStatus, CensusTable};
use brickforge::normal::{cut_along, enumerate_compatible, surface_stats};
use brickforge::polyhedron::{canonical_signature, parse_poly, validate, write_poly, Skeleton};
use brickforge::surfaces::{mcg_klein, nontrivial_loops_klein, write_klein_table};

const CENSUS_HEADER: &str = "# census-v1";

#[derive(Parser)]
#[command(name = "brickforge", version, about = "Skeleta, assemblings and bricks of 3-manifold pairs")]
struct Cli {
    /// Print machine-readable records instead of plain text where the
    /// command has them.
    #[arg(long, global = true)]
    records: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the census through a level and write its records.
    CensusEnumerate {
        level: usize,
        /// Records file; defaults to `lvl<level>` in the census directory,
        /// or standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
    /// Re-run the consistency checks on a census file.
    CensusVerify { file: PathBuf },
    /// Evaluate a pair expression and look it up in a census.
    PairEval {
        expr: String,
        #[arg(long, default_value = "lvl0")]
        census: String,
    },
    /// Parse and validate a poly-v1 file.
    PolyCheck { file: PathBuf },
    /// Normal spheres on a skeleton given as a poly-v1 file or an atom
    /// label.
    NormalSpheres {
        file: String,
        #[arg(long, default_value_t = 8)]
        weight: u32,
    },
    /// Loops on the Klein bottle and its mapping class group.
    KleinLoops {
        #[arg(long, default_value_t = 6)]
        weight: u32,
    },
    /// Find the census record of a poly-v1 skeleton.
    Identify {
        file: PathBuf,
        #[arg(long, default_value = "lvl0")]
        census: String,
    },
}

fn census_dir() -> Option<PathBuf> {
    std::env::var_os("BRICKFORGE_CENSUS_DIR").map(PathBuf::from)
}

fn read_census(path: &Path) -> Result<CensusTable> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    if let Some(first) = text.lines().next().filter(|l| l.starts_with("# census-")) {
        if first.trim() != CENSUS_HEADER {
            bail!("{}: unsupported version `{}`", path.display(), first.trim_start_matches("# "));
        }
    }
    CensusTable::parse(&text).with_context(|| format!("parsing {}", path.display()))
}

/// A census file, a name in the census directory, or `lvl<n>` built on
/// the spot.
fn load_census(spec: &str) -> Result<CensusTable> {
    let direct = PathBuf::from(spec);
    if direct.is_file() {
        return read_census(&direct);
    }
    if let Some(dir) = census_dir() {
        for name in [spec.to_string(), format!("{spec}.txt")] {
            let p = dir.join(name);
            if p.is_file() {
                return read_census(&p);
            }
        }
    }
    match spec.strip_prefix("lvl").and_then(|n| n.parse::<usize>().ok()) {
        Some(n) => {
            eprintln!("no census file for {spec}, building it");
            Ok(build_table(n))
        }
        None => bail!("census `{spec}` not found"),
    }
}

/// Replaces `anon#n.k` ids by the signatures of their records.
fn substitute_ids(expr: &str, table: &CensusTable) -> Result<String> {
    let mut out = String::new();
    let mut rest = expr;
    while let Some(i) = rest.find("anon#") {
        out.push_str(&rest[..i]);
        let tail = &rest[i..];
        let end = tail[5..].find(|c: char| !(c.is_ascii_digit() || c == '.')).map_or(tail.len(), |e| e + 5);
        let id = &tail[..end];
        let rec = table.records().find(|r| r.id == id).with_context(|| format!("no record {id} in the census"))?;
        out.push_str(&format!("sig:{}", rec.signature));
        rest = &tail[end..];
    }
    out.push_str(rest);
    Ok(out)
}

/// The atom or census record with the same skeleton, summand by summand.
fn identity(skel: &Skeleton, table: &CensusTable) -> String {
    if let Skeleton::Sum(parts) = skel {
        return parts.iter().map(|p| identity(p, table)).collect::<Vec<_>>().join(" # ");
    }
    let key = skel.key();
    let atom =
        AtomLabel::basic().into_iter().chain((4..=8).map(AtomLabel::Z)).find(|l| MarkedPair::atom(*l).key() == key);
    match (atom, table.find_key(&key)) {
        (Some(l), _) => l.to_string(),
        (None, Some(r)) => r.id.clone(),
        (None, None) => "unknown".into(),
    }
}

fn brick_word(b: &BrickStatus) -> String {
    match b {
        BrickStatus::Brick => "brick".into(),
        BrickStatus::NonBrick(e) => format!("not a brick ({e})"),
        BrickStatus::Undecided => "undecided".into(),
    }
}

fn read_poly(path: &Path) -> Result<brickforge::polyhedron::SpecialPolyhedron> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_poly(&text).with_context(|| format!("parsing {}", path.display()))
}

fn run(cli: Cli, out: &mut impl Write) -> Result<bool> {
    match cli.command {
        Command::CensusEnumerate { level, out: file, jobs } => {
            if jobs > 0 {
                rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global()?;
            }
            let table = build_table(level);
            let file = file.or_else(|| census_dir().map(|d| d.join(format!("lvl{level}.txt"))));
            let text = format!("{CENSUS_HEADER}\n{}", table.to_records());
            let mut summary = String::new();
            for (n, recs) in table.levels.iter().enumerate() {
                let bricks = recs.iter().filter(|r| r.brick == BrickStatus::Brick).count();
                let undecided = recs.iter().filter(|r| r.brick == BrickStatus::Undecided).count();
                summary.push_str(&format!(
                    "level {n}: {} records, {bricks} bricks, {} not bricks, {undecided} undecided\n",
                    recs.len(),
                    recs.len() - bricks - undecided
                ));
            }
            match file {
                Some(p) => {
                    fs::write(&p, text).with_context(|| format!("writing {}", p.display()))?;
                    write!(out, "{summary}")?;
                    writeln!(out, "wrote {}", p.display())?;
                }
                None => {
                    write!(out, "{text}")?;
                    eprint!("{summary}");
                }
            }
            Ok(true)
        }
        Command::CensusVerify { file } => {
            let table = read_census(&file)?;
            let report = verify_table(&table);
            write!(out, "{report}")?;
            Ok(report.ok())
        }
        Command::PairEval { expr, census } => {
            let table = load_census(&census)?;
            let text = substitute_ids(&expr, &table)?;
            let e: Expr = text.parse()?;
            let p = evaluate(&e)?;
            if cli.records {
                writeln!(out, "PAIR expr={e} key={}", p.key())?;
                return Ok(true);
            }
            writeln!(out, "expression: {e}")?;
            writeln!(out, "skeleton: {}", p.skeleton)?;
            writeln!(out, "identity: {}", identity(&p.skeleton, &table))?;
            writeln!(out, "complexity: {}", complexity_exact_within(&p, &table))?;
            Ok(true)
        }
        Command::PolyCheck { file } => {
            let poly = read_poly(&file)?;
            let report = validate(&poly);
            if cli.records {
                write!(out, "{}", write_poly(&poly))?;
            } else {
                write!(out, "{report}")?;
                writeln!(out, "signature: {}", canonical_signature(&poly).to_hex())?;
            }
            Ok(report.is_valid())
        }
        Command::NormalSpheres { file, weight } => {
            let skel = match file.parse::<AtomLabel>() {
                Ok(l) if !Path::new(&file).exists() => MarkedPair::atom(l).skeleton,
                _ => Skeleton::Standard(read_poly(Path::new(&file))?),
            };
            let vs = enumerate_compatible(&skel, weight)?;
            writeln!(out, "{} compatible vectors of weight at most {weight}", vs.len())?;
            for v in &vs {
                let st = surface_stats(&skel, v)?;
                if cli.records {
                    writeln!(out, "{v}")?;
                    continue;
                }
                if !st.is_sphere {
                    continue;
                }
                let kind = if st.is_obvious {
                    "obvious".to_string()
                } else {
                    match cut_along(&skel, v) {
                        Ok(c) if c.is_essential() => "essential".into(),
                        Ok(_) => "inessential".into(),
                        Err(e) => format!("unresolved: {e}"),
                    }
                };
                writeln!(out, "sphere {v} {kind}")?;
            }
            Ok(true)
        }
        Command::KleinLoops { weight } => {
            let loops = nontrivial_loops_klein(weight);
            let mcg = mcg_klein();
            if cli.records {
                write!(out, "{}", write_klein_table(&loops, &mcg))?;
            } else {
                writeln!(out, "{} non-trivial loop classes", loops.len())?;
                for l in &loops {
                    let kind = if l.orientation_preserving { "two-sided" } else { "one-sided" };
                    writeln!(out, "  {:<8} {kind}", l.h1.to_string())?;
                }
                writeln!(out, "mapping class group of order {}", mcg.order())?;
                for e in &mcg.elements {
                    let m = e.matrix();
                    writeln!(out, "  {:<7} [{} {}; {} {}]", e.name(), m[0][0], m[0][1], m[1][0], m[1][1])?;
                }
            }
            Ok(true)
        }
        Command::Identify { file, census } => {
            let table = load_census(&census)?;
            let poly = read_poly(&file)?;
            let (kernel, stripped) = strip_b2pp_poly(&poly);
            let sig = skeleton_signature(&Skeleton::Standard(kernel));
            writeln!(out, "signature: {}", canonical_signature(&poly).to_hex())?;
            writeln!(out, "B2pp factors split off: {stripped}")?;
            let found = table.records().find(|r| r.signature == sig).cloned();
            match found {
                Some(r) => {
                    writeln!(out, "record: {} (level {})", r.id, r.level)?;
                    writeln!(out, "status: {}", brick_word(&r.brick))?;
                    Ok(true)
                }
                None => {
                    writeln!(out, "record: none through level {}", table.max_level().map_or(0, |l| l))?;
                    Ok(false)
                }
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(cli, &mut out) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
