//! Seeded instance generators for experiments and property tests.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coloring::{Color, Coloring};
use crate::hypergraph::Hypergraph;
use crate::tree::Tree;

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `m` random edges on `n` vertices with sizes in `1..=max_size`.
pub fn random_hypergraph(rng: &mut impl Rng, n: usize, m: usize, max_size: usize) -> Hypergraph {
    assert!(n >= 1 && max_size >= 1);
    let verts: Vec<usize> = (0..n).collect();
    let edges = (0..m)
        .map(|_| {
            let size = rng.gen_range(1..=max_size.min(n));
            verts.choose_multiple(rng, size).copied().collect()
        })
        .collect();
    Hypergraph::new(n, edges).expect("generated edges are in range")
}

/// `m` random `l`-subsets of `0..n`.
pub fn random_uniform_hypergraph(rng: &mut impl Rng, n: usize, m: usize, l: usize) -> Hypergraph {
    assert!(1 <= l && l <= n);
    let verts: Vec<usize> = (0..n).collect();
    let edges = (0..m)
        .map(|_| verts.choose_multiple(rng, l).copied().collect())
        .collect();
    Hypergraph::new(n, edges).expect("generated edges are in range")
}

/// A random labelled tree: vertex `i > 0` attaches to a uniform earlier
/// vertex, then labels are shuffled.
pub fn random_tree(rng: &mut impl Rng, n: usize) -> Tree {
    assert!(n >= 1);
    let mut label: Vec<usize> = (0..n).collect();
    label.shuffle(rng);
    let edges = (1..n)
        .map(|i| (label[rng.gen_range(0..i)], label[i]))
        .collect();
    Tree::new(n, edges, None).expect("attachment process yields a tree")
}

/// Uniform coloring of `n` vertices from `1..=k`, palette `k`.
pub fn random_coloring(rng: &mut impl Rng, n: usize, k: Color) -> Coloring {
    let colors = (0..n).map(|_| rng.gen_range(1..=k)).collect();
    Coloring::new(colors, k).expect("colors drawn from the palette")
}

/// A connected vertex set of the given size, grown from a random vertex.
pub fn random_subtree(rng: &mut impl Rng, t: &Tree, size: usize) -> Vec<usize> {
    assert!(1 <= size && size <= t.n());
    let mut inside = vec![false; t.n()];
    let start = rng.gen_range(0..t.n());
    inside[start] = true;
    let mut set = vec![start];
    while set.len() < size {
        let frontier: Vec<usize> = set
            .iter()
            .flat_map(|&u| t.neighbors(u).iter().copied())
            .filter(|&w| !inside[w])
            .collect();
        let &w = frontier.choose(rng).expect("tree is connected");
        inside[w] = true;
        set.push(w);
    }
    set.sort_unstable();
    set
}
