use brickforge::calculus::{atom_skeleton, AtomLabel};
use brickforge::census::build_level;
use brickforge::normal::{compatible, enumerate_compatible, surface_stats, NormalVector};
use brickforge::polyhedron::Skeleton;
use proptest::prelude::*;

fn skeleta() -> Vec<(String, Skeleton)> {
    let mut out: Vec<(String, Skeleton)> =
        AtomLabel::basic().iter().map(|l| (l.to_string(), atom_skeleton(*l))).collect();
    for r in build_level(1) {
        out.push((r.id.clone(), r.skeleton.clone()));
    }
    out
}

#[test]
fn components_are_closed_surfaces() {
    for (name, s) in skeleta() {
        for v in enumerate_compatible(&s, 6).unwrap() {
            let st = match surface_stats(&s, &v) {
                Ok(st) => st,
                Err(e) => panic!("{name}: {v}: {e}"),
            };
            assert_eq!(st.chi, st.chi_cells, "{name}: {v}");
            assert!(st.components.iter().all(|&c| c <= 2), "{name}: {v}: {:?}", st.components);
        }
    }
}

#[test]
fn doubling_keeps_compatibility() {
    for (name, s) in skeleta() {
        for v in enumerate_compatible(&s, 4).unwrap() {
            assert!(compatible(&s, &v.scaled(2)).unwrap(), "{name}: {v}");
        }
    }
}

proptest! {
    #[test]
    fn parsed_vectors_print_back(colors in proptest::collection::vec(0u32..9, 0..8)) {
        let v = NormalVector { colors, discs: vec![] };
        prop_assert_eq!(v.to_string().parse::<NormalVector>().unwrap(), v);
    }
}
