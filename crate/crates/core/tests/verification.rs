use cfum_core::coloring::edge_satisfies;
use cfum_core::hypergraph::edge_is_valid;
use cfum_core::random::{random_coloring, random_hypergraph, random_tree, rng};
use cfum_core::tree::{ceil_log2_plus_one, path_hypergraph, um_color_path, verify_tree_coloring};
use cfum_core::{is_valid, parity_vector, Coloring, ColoringKind, Hypergraph, Tree};
use proptest::prelude::*;

fn instance(seed: u64, n: usize, m: usize, k: u32) -> (Hypergraph, Coloring) {
    let mut r = rng(seed);
    let h = random_hypergraph(&mut r, n, m, n);
    let c = random_coloring(&mut r, n, k);
    (h, c)
}

fn passes(h: &Hypergraph, c: &Coloring, kind: ColoringKind) -> bool {
    is_valid(h, c, kind).unwrap().passed()
}

/// Direct count-based reading of each definition, independent of the tally code.
fn naive(kind: ColoringKind, colors: &[u32]) -> bool {
    let count = |x: u32| colors.iter().filter(|&&y| y == x).count();
    match kind {
        ColoringKind::NonMonochromatic => colors.len() == 1 || colors.iter().any(|&x| x != colors[0]),
        ColoringKind::Rainbow => colors.iter().all(|&x| count(x) == 1),
        ColoringKind::UniqueMaximum => count(*colors.iter().max().unwrap()) == 1,
        ColoringKind::ConflictFree => colors.iter().any(|&x| count(x) == 1),
        ColoringKind::Odd => colors.iter().any(|&x| count(x) % 2 == 1),
    }
}

proptest! {
    #[test]
    fn verdicts_respect_the_hierarchy(seed: u64, n in 1usize..9, m in 1usize..12, k in 1u32..5) {
        let (h, c) = instance(seed, n, m, k);
        let [nm, rb, um, cf, odd] = ColoringKind::ALL.map(|kind| passes(&h, &c, kind));
        prop_assert!(!rb || um);
        prop_assert!(!um || cf);
        prop_assert!(!cf || (odd && nm));
    }

    #[test]
    fn predicates_match_their_definitions(colors in prop::collection::vec(1u32..5, 1..9)) {
        for kind in ColoringKind::ALL {
            prop_assert_eq!(edge_satisfies(kind, &colors), naive(kind, &colors), "{}", kind);
        }
    }

    #[test]
    fn parity_of_symmetric_difference(seed: u64, n in 1usize..12, k in 1u32..6) {
        let mut r = rng(seed);
        let c = random_coloring(&mut r, n, k);
        let h = random_hypergraph(&mut r, n, 2, n);
        let (a, b) = (&h.edges()[0], &h.edges()[1]);
        let sym: Vec<usize> = (0..n).filter(|v| a.contains(v) != b.contains(v)).collect();
        let pa = parity_vector(&c, a).unwrap().to_bits();
        let pb = parity_vector(&c, b).unwrap().to_bits();
        let xor: Vec<u8> = pa.iter().zip(&pb).map(|(x, y)| x ^ y).collect();
        prop_assert_eq!(parity_vector(&c, &sym).unwrap().to_bits(), xor);
    }

    #[test]
    fn failure_certificates_replay(seed: u64, n in 1usize..9, m in 1usize..12, k in 1u32..4) {
        let (h, c) = instance(seed, n, m, k);
        for kind in ColoringKind::ALL {
            let cert = is_valid(&h, &c, kind).unwrap();
            match &cert.edge {
                None => prop_assert!(cert.passed()),
                Some(e) => {
                    prop_assert!(!cert.passed());
                    prop_assert!(h.edges().contains(e));
                    prop_assert!(!edge_is_valid(&c, e, kind).unwrap());
                    let first = h.edges().iter().position(|f| !edge_is_valid(&c, f, kind).unwrap());
                    prop_assert_eq!(first.map(|i| &h.edges()[i]), Some(e));
                }
            }
        }
    }

    #[test]
    fn tree_verifier_matches_the_path_hypergraph(seed: u64, n in 1usize..11, k in 1u32..5) {
        let mut r = rng(seed);
        let t = random_tree(&mut r, n);
        let c = random_coloring(&mut r, n, k);
        let h = path_hypergraph(&t);
        for kind in ColoringKind::ALL {
            let streamed = verify_tree_coloring(&t, &c, kind).unwrap();
            let full = is_valid(&h, &c, kind).unwrap();
            prop_assert_eq!(streamed.verdict, full.verdict);
            prop_assert_eq!(streamed.edge, full.edge);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn path_colorings_are_unique_maximum(n in 1usize..=1024) {
        let c = um_color_path(n).unwrap();
        prop_assert_eq!(c.colors_used() as u32, ceil_log2_plus_one(n));
        let cert = verify_tree_coloring(&Tree::path_graph(n).unwrap(), &c, ColoringKind::UniqueMaximum).unwrap();
        prop_assert!(cert.passed());
    }
}

#[test]
fn path_hypergraph_layout() {
    let t = Tree::path_graph(4).unwrap();
    let h = path_hypergraph(&t);
    assert_eq!(h.edge_count(), 10);
    assert_eq!(&h.edges()[..4], &[vec![0], vec![1], vec![2], vec![3]]);
    assert_eq!(h.edges()[4], vec![0, 1]);
    assert_eq!(h.edges()[9], vec![2, 3]);
}
