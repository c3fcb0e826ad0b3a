use brickforge::polyhedron::SpineKind;
use brickforge::surfaces::{
    boundary_isomorphisms, classify_loops_klein, compose, gadget_boundary, gadget_classes, matching_solutions,
    mcg_klein, nontrivial_loops_klein,
};

#[test]
fn boundary_symmetries_form_groups() {
    for spine in [SpineKind::Theta, SpineKind::Sigma] {
        for (kind, g) in gadget_classes(spine) {
            let b = gadget_boundary(&g);
            let maps = boundary_isomorphisms(&b, &b);
            assert!(!maps.is_empty(), "{kind:?} {spine:?}");
            for x in &maps {
                for y in &maps {
                    assert!(maps.contains(&compose(x, y)), "{kind:?} {spine:?}");
                }
            }
        }
    }
}

#[test]
fn loop_classes_stabilize() {
    let four = nontrivial_loops_klein(4);
    assert_eq!(four.len(), 4);
    for w in 5..=10 {
        let more = nontrivial_loops_klein(w);
        let a: Vec<_> = four.iter().map(|l| (l.h1, l.orientation_preserving)).collect();
        let b: Vec<_> = more.iter().map(|l| (l.h1, l.orientation_preserving)).collect();
        assert_eq!(a, b, "weight {w}");
    }
    assert!(classify_loops_klein(6).len() >= 4);
}

#[test]
fn matching_solutions_respect_weight() {
    for c in matching_solutions(6) {
        assert!(c.weight() <= 6 && c.satisfies_matching());
    }
}

#[test]
fn mapping_classes_form_a_klein_four_group() {
    let t = mcg_klein();
    assert_eq!(t.order(), 4);
    assert!(t.is_abelian() && t.all_involutions() && t.faithful());
}
