use cfum_core::psf::{
    b7_family, binary_odd_refuter, cf_b7_iterated, cf_color_from_psf, is_prefix_set_free, mono_subdivision_vector,
    psf_capacity_bound, psf_from_ksubsets, PsfFamily,
};
use cfum_core::random::{random_coloring, random_hypergraph, random_uniform_hypergraph, rng};
use cfum_core::solver::{chromatic_number_exact, SolveBudget};
use cfum_core::transfer::{general_bound, um_from_cf, um_from_cf_uniform};
use cfum_core::tree::{complete_binary, verify_tree_coloring};
use cfum_core::{is_valid, parity_vector, Color, Coloring, ColoringKind, Hypergraph, SubdivisionWitness, Tree};
use proptest::prelude::*;

/// Whether some subdivision of `B_a` has its root at `v`, all branch
/// vertices colored `color`, and stays on the side of `v` away from `from`.
fn embeds(t: &Tree, c: &Coloring, color: Color, v: usize, from: Option<usize>, a: u32) -> bool {
    if c.color(v) != color {
        return false;
    }
    if a == 1 {
        return true;
    }
    let sides: Vec<usize> = t.neighbors(v).iter().copied().filter(|&u| Some(u) != from).collect();
    let ok: Vec<bool> = sides.iter().map(|&u| side_embeds(t, c, color, u, v, a - 1)).collect();
    ok.iter().filter(|&&x| x).count() >= 2
}

/// Whether the branch of `u` hanging off `p` holds a root for `B_a`.
fn side_embeds(t: &Tree, c: &Coloring, color: Color, u: usize, p: usize, a: u32) -> bool {
    embeds(t, c, color, u, Some(p), a)
        || t.neighbors(u).iter().any(|&w| w != p && side_embeds(t, c, color, w, u, a))
}

fn max_depth(t: &Tree, c: &Coloring, color: Color) -> u32 {
    (1..=t.n() as u32)
        .take_while(|&a| (0..t.n()).any(|v| embeds(t, c, color, v, None, a)))
        .last()
        .unwrap_or(0)
}

fn cf_optimal(h: &Hypergraph) -> (u32, Coloring) {
    let r = chromatic_number_exact(h, ColoringKind::ConflictFree, SolveBudget::default());
    (r.chi.exact().unwrap(), r.witness.unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn vector_respects_the_oracle(seed: u64, d in 1u32..=4, k in 1u32..=3) {
        let t = complete_binary(d).unwrap();
        let c = random_coloring(&mut rng(seed), t.n(), k);
        let mv = mono_subdivision_vector(&t, &SubdivisionWitness::identity(d), &c, k).unwrap();
        prop_assert_eq!(mv.a.iter().sum::<u32>(), d);
        for (i, &a) in mv.a.iter().enumerate() {
            let color = i as Color + 1;
            prop_assert!(a <= max_depth(&t, &c, color));
            if let Some(w) = &mv.witnesses[i] {
                prop_assert_eq!(w.levels, a);
                prop_assert!(w.branch_map.iter().all(|&v| c.color(v) == color));
            }
        }
    }

    #[test]
    fn refuter_finds_all_even_paths(seed: u64, d in 5u32..=9) {
        // two colors on at least five levels
        let t = complete_binary(d).unwrap();
        let c = random_coloring(&mut rng(seed), t.n(), 2);
        let cert = binary_odd_refuter(&t, &SubdivisionWitness::identity(d), &c, 2).unwrap();
        let path = cert.edge.expect("4 < d forces a refutation");
        prop_assert!(parity_vector(&c, &path).unwrap().is_zero());
        let [a, b] = cert.endpoints.unwrap();
        let mut host = t.path(a, b);
        host.sort_unstable();
        prop_assert_eq!(host, path);
    }

    #[test]
    fn transfer_meets_the_general_bound(seed: u64, n in 1usize..=9, m in 1usize..10) {
        let h = random_hypergraph(&mut rng(seed), n, m, n);
        let (k, cf) = cf_optimal(&h);
        let um = um_from_cf(&h, &cf).unwrap();
        prop_assert!(is_valid(&h, &um, ColoringKind::UniqueMaximum).unwrap().passed());
        prop_assert!(um.colors_used() <= general_bound(n, k as usize));
    }

    #[test]
    fn uniform_transfer_is_unique_maximum(seed: u64, n in 3usize..=9, m in 1usize..10) {
        let h = random_uniform_hypergraph(&mut rng(seed), n, m, 3);
        let (_, cf) = cf_optimal(&h);
        let um = um_from_cf_uniform(&h, &cf, 3).unwrap();
        prop_assert!(is_valid(&h, &um, ColoringKind::UniqueMaximum).unwrap().passed());
    }

    #[test]
    fn capacity_bound_holds_for_subset_families(n in 1u32..=9, k in 1u32..=9) {
        prop_assume!(k <= n);
        let f = psf_from_ksubsets(n, k).unwrap();
        prop_assert!(is_prefix_set_free(&f).passed());
        let b = psf_capacity_bound(&f).unwrap();
        prop_assert!(b.d as f64 <= b.log2_bound);
    }
}

/// Every conflict-free coloring built here uses at least sqrt(levels) colors.
#[test]
fn constructions_respect_the_square_root_bound() {
    let mut built: Vec<(Tree, Coloring)> = (0..=2).map(|r| cf_b7_iterated(r).unwrap()).collect();
    for (n, k, r) in [(4, 2, 1), (4, 2, 2), (5, 2, 1), (5, 3, 1), (6, 3, 1)] {
        built.push(cf_color_from_psf(&psf_from_ksubsets(n, k).unwrap(), r).unwrap());
    }
    built.push(cf_color_from_psf(&PsfFamily::new(3, vec![vec![1, 3], vec![1, 2, 3]]).unwrap(), 3).unwrap());
    for (t, c) in &built {
        let levels = (t.n() + 1).trailing_zeros();
        assert!(verify_tree_coloring(t, c, ColoringKind::ConflictFree).unwrap().passed(), "B_{levels}");
        assert!((c.colors_used() as f64) >= (levels as f64).sqrt(), "B_{levels}");
    }
}

#[test]
fn family_route_matches_grafting() {
    for r in 0..=2 {
        assert_eq!(cf_b7_iterated(r).unwrap(), cf_color_from_psf(&b7_family(), r).unwrap());
    }
}
