use std::fs;
use std::process::{Command, Output};

fn brickforge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_brickforge"))
        .args(args)
        .env_remove("BRICKFORGE_CENSUS_DIR")
        .output()
        .expect("runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn z_arithmetic_through_the_cli() {
    let o = brickforge(&["pair-eval", "asm(Z3,Z3,0)", "--census", "lvl0"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("identity: Z4"), "{s}");
    assert!(s.contains("complexity: 0"), "{s}");
}

#[test]
fn sums_are_named_by_summand() {
    let o = brickforge(&["pair-eval", "sum(L31,P3)"]);
    assert!(stdout(&o).contains("identity: L31 # P3"));
}

#[test]
fn garbage_is_a_parse_error() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("garbage.poly");
    fs::write(&f, "not a polyhedron\n").unwrap();
    let o = brickforge(&["poly-check", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("error"));
}

#[test]
fn census_files_verify_and_identify() {
    let dir = tempfile::tempdir().unwrap();
    let census = dir.path().join("lvl1.txt");
    let o = brickforge(&["census-enumerate", "1", "--out", census.to_str().unwrap(), "--jobs", "2"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("level 1: 9 records"));
    let o = brickforge(&["census-verify", census.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stdout(&o));

    let poly = dir.path().join("b2.poly");
    let text = fs::read_to_string(&census).unwrap();
    let anon = text.lines().find(|l| l.contains("id=anon#1.1")).unwrap();
    let sig = anon.split_whitespace().find_map(|t| t.strip_prefix("sig=")).unwrap();
    let poly_text = brickforge::polyhedron::write_poly(
        &brickforge::polyhedron::decode_signature(&brickforge::polyhedron::CanonicalSignature::from_hex(sig).unwrap())
            .unwrap(),
    );
    fs::write(&poly, poly_text).unwrap();
    let o = brickforge(&["identify", poly.to_str().unwrap(), "--census", census.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("record: anon#1.1 (level 1)"), "{}", stdout(&o));

    let o = brickforge(&["pair-eval", "sum(anon#1.1,S3)", "--census", census.to_str().unwrap()]);
    assert!(stdout(&o).contains("identity: anon#1.1"), "{}", stdout(&o));
}

#[test]
fn wrong_census_version_is_refused() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("old.txt");
    fs::write(&f, "# census-v0\n").unwrap();
    let o = brickforge(&["census-verify", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn census_directory_from_the_environment() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_brickforge"))
        .args(["census-enumerate", "0"])
        .env("BRICKFORGE_CENSUS_DIR", dir.path())
        .output()
        .unwrap();
    assert!(o.status.success());
    assert!(dir.path().join("lvl0.txt").is_file());
    let o = Command::new(env!("CARGO_BIN_EXE_brickforge"))
        .args(["pair-eval", "asm(B2pp,B2p,0)"])
        .env("BRICKFORGE_CENSUS_DIR", dir.path())
        .output()
        .unwrap();
    assert!(String::from_utf8_lossy(&o.stderr).is_empty());
    assert!(stdout(&o).contains("identity: B0pp"), "{}", stdout(&o));
}

#[test]
fn normal_spheres_on_atoms() {
    let o = brickforge(&["normal-spheres", "L31", "--weight", "8"]);
    let s = stdout(&o);
    assert!(s.starts_with("5 compatible vectors"), "{s}");
    assert_eq!(s.matches("sphere ").count(), 1);
    let o = brickforge(&["normal-spheres", "S2xS1", "--weight", "3"]);
    assert!(stdout(&o).contains("essential"));
}

#[test]
fn output_is_deterministic() {
    for args in
        [&["klein-loops", "--weight", "6"][..], &["census-enumerate", "1"][..], &["--records", "klein-loops"][..]]
    {
        assert_eq!(stdout(&brickforge(args)), stdout(&brickforge(args)));
    }
}
