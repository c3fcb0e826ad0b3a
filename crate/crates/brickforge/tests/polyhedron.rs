use brickforge::census::generate_candidates;
use brickforge::polyhedron::{
    canonical_signature, decode_signature, parse_poly, validate, write_poly, SpecialPolyhedron,
};
use proptest::prelude::*;
use std::sync::OnceLock;

fn pool() -> &'static [SpecialPolyhedron] {
    static POOL: OnceLock<Vec<SpecialPolyhedron>> = OnceLock::new();
    POOL.get_or_init(|| (0..=2).flat_map(generate_candidates).collect())
}

const S4: [[u8; 4]; 24] = {
    let mut out = [[0u8; 4]; 24];
    let mut k = 0;
    let mut a = 0;
    while a < 4 {
        let mut b = 0;
        while b < 4 {
            let mut c = 0;
            while c < 4 {
                if a != b && b != c && a != c {
                    out[k] = [a, b, c, 6 - a - b - c];
                    k += 1;
                }
                c += 1;
            }
            b += 1;
        }
        a += 1;
    }
    out
};

#[test]
fn candidates_are_standard_skeleta() {
    assert_eq!(pool().len(), 52);
    for p in pool() {
        let r = validate(p);
        assert!(r.standard && r.is_valid() && r.thickenable == Some(true), "{r}");
        assert_eq!(r.euler, Some(1));
    }
}

#[test]
fn signatures_are_distinct() {
    let mut sigs: Vec<String> = pool().iter().map(|p| canonical_signature(p).to_hex()).collect();
    sigs.sort();
    sigs.dedup();
    assert_eq!(sigs.len(), pool().len());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn signature_ignores_labels(i in 0usize..52, seed in proptest::collection::vec(0usize..1000, 16)) {
        let p = &pool()[i];
        let n = p.num_vertices();
        let mut order: Vec<usize> = (0..n).collect();
        for k in (1..n).rev() {
            order.swap(k, seed[k % seed.len()] % (k + 1));
        }
        let slots: Vec<[u8; 4]> = (0..n).map(|v| S4[seed[(v + 7) % seed.len()] % 24]).collect();
        let q = p.relabel(&order, &slots);
        prop_assert_eq!(canonical_signature(&q), canonical_signature(p));
    }

    #[test]
    fn text_and_signature_round_trip(i in 0usize..52) {
        let p = &pool()[i];
        let sig = canonical_signature(p);
        let back = parse_poly(&write_poly(p)).unwrap();
        prop_assert_eq!(canonical_signature(&back), sig.clone());
        let decoded = decode_signature(&sig).unwrap();
        prop_assert_eq!(canonical_signature(&decoded), sig);
    }
}
