use brickforge::calculus::{
    assemble, atom_skeleton, connected_sum, evaluate, gluing_maps, s3_gluings, AtomLabel, Expr, MarkedPair,
};
use proptest::prelude::*;

fn label() -> impl Strategy<Value = AtomLabel> {
    prop::sample::select(AtomLabel::basic().to_vec())
}

fn expr() -> impl Strategy<Value = Expr> {
    label()
        .prop_map(Expr::Atom)
        .prop_recursive(3, 8, 2, |inner| (inner.clone(), inner).prop_map(|(a, b)| Expr::Sum(Box::new(a), Box::new(b))))
}

#[test]
fn solid_tori_close_up_to_spheres() {
    assert!(!s3_gluings(AtomLabel::B1, AtomLabel::B1).unwrap().is_empty());
    // two solid Klein bottles close up to a non-orientable manifold
    assert!(s3_gluings(AtomLabel::B1p, AtomLabel::B1p).unwrap().is_empty());
}

#[test]
fn products_of_b2pp_build_zk() {
    let z = MarkedPair::atom(AtomLabel::B2PP);
    let mut acc = z.clone();
    for k in 4..=6 {
        let last = acc.num_boundaries() - 1;
        acc = assemble(&acc, &z, 0, last, 0).unwrap();
        assert_eq!(acc.key(), atom_skeleton(AtomLabel::Z(k)).key());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn z_arithmetic(k in 1u32..=6, h in 1u32..=6, g in 0usize..64) {
        prop_assume!(k + h >= 3);
        let a = MarkedPair::atom(AtomLabel::Z(k));
        let b = MarkedPair::atom(AtomLabel::Z(h));
        let n = gluing_maps(&a, 0, &b, 0).unwrap().len();
        let r = assemble(&a, &b, g % n, 0, 0).unwrap();
        prop_assert_eq!(r.key(), MarkedPair::atom(AtomLabel::Z(k + h - 2)).key());
    }

    #[test]
    fn sums_commute(a in label(), b in label()) {
        let x = connected_sum(&MarkedPair::atom(a), &MarkedPair::atom(b));
        let y = connected_sum(&MarkedPair::atom(b), &MarkedPair::atom(a));
        prop_assert_eq!(x.key(), y.key());
    }

    #[test]
    fn expressions_print_and_parse(e in expr()) {
        let back: Expr = e.to_string().parse().unwrap();
        prop_assert_eq!(evaluate(&back).unwrap().key(), evaluate(&e).unwrap().key());
    }
}
