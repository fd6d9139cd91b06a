//! Trees, their path hypergraphs, and the constructive colorings of paths
//! and complete binary trees.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::certificate::Certificate;
use crate::coloring::{parity_of_vertices, Color, ColorTally, Coloring, ColoringKind};
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

/// An undirected tree on vertices `0..n`, with an optional root annotation.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "TreeRepr", into = "TreeRepr")]
pub struct Tree {
    n: usize,
    edges: Vec<(usize, usize)>,
    root: Option<usize>,
    adj: Vec<Vec<usize>>,
    // rooted at vertex 0, for path queries
    parent: Vec<usize>,
    depth: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct TreeRepr {
    n: usize,
    edges: Vec<(usize, usize)>,
    #[serde(default)]
    root: Option<usize>,
}

impl TryFrom<TreeRepr> for Tree {
    type Error = Error;

    fn try_from(r: TreeRepr) -> Result<Self> {
        Tree::new(r.n, r.edges, r.root)
    }
}

impl From<Tree> for TreeRepr {
    fn from(t: Tree) -> Self {
        TreeRepr {
            n: t.n,
            edges: t.edges,
            root: t.root,
        }
    }
}

impl PartialEq for Tree {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges && self.root == other.root
    }
}

impl Eq for Tree {}

impl Tree {
    pub fn new(n: usize, edges: Vec<(usize, usize)>, root: Option<usize>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Instance("a tree needs at least one vertex".into()));
        }
        if edges.len() != n - 1 {
            return Err(Error::Instance(format!(
                "a tree on {n} vertices has {} edges, got {}",
                n - 1,
                edges.len()
            )));
        }
        if let Some(r) = root {
            if r >= n {
                return Err(Error::Instance(format!("root {r} outside [0, {n})")));
            }
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            if u >= n || v >= n {
                return Err(Error::Instance(format!("edge ({u}, {v}) outside [0, {n})")));
            }
            if u == v {
                return Err(Error::Instance(format!("self-loop at {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        let mut parent = vec![usize::MAX; n];
        let mut depth = vec![0; n];
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        parent[0] = 0;
        let mut reached = 1;
        while let Some(u) = stack.pop() {
            for &w in &adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = u;
                    depth[w] = depth[u] + 1;
                    reached += 1;
                    stack.push(w);
                }
            }
        }
        if reached != n {
            return Err(Error::Instance(format!(
                "graph is disconnected: {reached} of {n} vertices reachable from 0"
            )));
        }
        Ok(Self {
            n,
            edges,
            root,
            adj,
            parent,
            depth,
        })
    }

    pub fn path_graph(n: usize) -> Result<Self> {
        Self::new(n, (1..n).map(|i| (i - 1, i)).collect(), None)
    }

    pub fn star(leaves: usize) -> Result<Self> {
        Self::new(leaves + 1, (1..=leaves).map(|i| (0, i)).collect(), Some(0))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn root(&self) -> Option<usize> {
        self.root
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn are_adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn with_root(mut self, root: Option<usize>) -> Result<Self> {
        if root.is_some_and(|r| r >= self.n) {
            return Err(Error::Instance("root out of range".into()));
        }
        self.root = root;
        Ok(self)
    }

    /// The unique simple path from `u` to `v`, both ends included.
    pub fn path(&self, u: usize, v: usize) -> Vec<usize> {
        assert!(u < self.n && v < self.n, "vertex out of range");
        let (mut a, mut b) = (u, v);
        let mut front = Vec::new();
        let mut back = Vec::new();
        while self.depth[a] > self.depth[b] {
            front.push(a);
            a = self.parent[a];
        }
        while self.depth[b] > self.depth[a] {
            back.push(b);
            b = self.parent[b];
        }
        while a != b {
            front.push(a);
            back.push(b);
            a = self.parent[a];
            b = self.parent[b];
        }
        front.push(a);
        front.extend(back.into_iter().rev());
        front
    }

    pub fn distance(&self, u: usize, v: usize) -> usize {
        self.path(u, v).len() - 1
    }

    /// The vertex lying on all three pairwise paths between `a`, `b`, `c`.
    pub fn median(&self, a: usize, b: usize, c: usize) -> usize {
        let ab = self.path(a, b);
        let dist_c: Vec<usize> = ab.iter().map(|&x| self.distance(x, c)).collect();
        let i = (0..ab.len()).min_by_key(|&i| dist_c[i]).unwrap();
        ab[i]
    }

    /// Connected components of the forest induced on `keep`, each sorted,
    /// ordered by smallest vertex.
    pub fn components_within(&self, keep: &[bool]) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if !keep[s] || seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for &w in &self.adj[u] {
                    if keep[w] && !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// The subtree induced on a connected vertex set, relabelled so that
    /// `vertices[i]` becomes `i`.
    pub fn induced(&self, vertices: &[usize]) -> Result<Tree> {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| index[u] != usize::MAX && index[v] != usize::MAX)
            .map(|&(u, v)| (index[u], index[v]))
            .collect();
        let root = self.root.and_then(|r| (index[r] != usize::MAX).then(|| index[r]));
        Tree::new(vertices.len(), edges, root)
    }

    /// Longest path, as a vertex sequence.
    pub fn diameter_path(&self) -> Vec<usize> {
        let far = |s: usize| {
            let d: Vec<usize> = (0..self.n).map(|v| self.distance(s, v)).collect();
            (0..self.n).max_by_key(|&v| (d[v], std::cmp::Reverse(v))).unwrap()
        };
        let a = far(0);
        let b = far(a);
        self.path(a, b)
    }

    /// AHU canonical string of the unrooted tree (via its center), equal for
    /// isomorphic trees.
    pub fn canonical_form(&self) -> String {
        let centers = self.centers();
        centers
            .iter()
            .map(|&c| self.rooted_code(c, usize::MAX))
            .min()
            .unwrap()
    }

    pub fn is_isomorphic(&self, other: &Tree) -> bool {
        self.n == other.n && self.canonical_form() == other.canonical_form()
    }

    fn centers(&self) -> Vec<usize> {
        let mut deg: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        let mut layer: Vec<usize> = (0..self.n).filter(|&v| deg[v] <= 1).collect();
        let mut remaining = self.n;
        while remaining > 2 {
            remaining -= layer.len();
            let mut next = Vec::new();
            for &u in &layer {
                for &w in &self.adj[u] {
                    deg[w] -= 1;
                    if deg[w] == 1 {
                        next.push(w);
                    }
                }
            }
            layer = next;
        }
        layer
    }

    fn rooted_code(&self, v: usize, from: usize) -> String {
        let mut kids: Vec<String> = self.adj[v]
            .iter()
            .filter(|&&w| w != from)
            .map(|&w| self.rooted_code(w, v))
            .collect();
        kids.sort();
        format!("({})", kids.concat())
    }
}

/// The unique `u`–`v` path in `t`.
pub fn tree_path(t: &Tree, u: usize, v: usize) -> Result<Vec<usize>> {
    if u >= t.n() || v >= t.n() {
        return Err(Error::Instance(format!("vertex out of range [0, {})", t.n())));
    }
    Ok(t.path(u, v))
}

/// One singleton edge per vertex, then one edge per pair `u < v` in
/// lexicographic order.
pub fn path_hypergraph(t: &Tree) -> Hypergraph {
    let n = t.n();
    let mut edges: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
    for u in 0..n {
        for v in u + 1..n {
            edges.push(t.path(u, v));
        }
    }
    Hypergraph::new(n, edges).expect("tree paths form a valid hypergraph")
}

/// Streams over all `u`–`v` paths without materializing the hypergraph.
/// Same verdict as `is_valid(path_hypergraph(t), c, kind)`; the reported
/// violation is the lexicographically smallest `(u, v)`.
pub fn verify_tree_coloring(t: &Tree, c: &Coloring, kind: ColoringKind) -> Result<Certificate> {
    if c.len() != t.n() {
        return Err(Error::Instance(format!(
            "coloring has {} entries but the tree has {} vertices",
            c.len(),
            t.n()
        )));
    }
    let first_bad = (0..t.n())
        .into_par_iter()
        .filter_map(|u| first_violation_from(t, c, kind, u).map(|v| (u, v)))
        .min();
    Ok(match first_bad {
        None => Certificate::pass(Some(kind)),
        Some((u, v)) => Certificate::violation(kind, t.path(u, v)).with_endpoints(u, v),
    })
}

/// Smallest `v > u` such that the `u`–`v` path violates `kind`.
fn first_violation_from(t: &Tree, c: &Coloring, kind: ColoringKind, u: usize) -> Option<usize> {
    let mut tally = ColorTally::new(c.palette());
    let mut best: Option<usize> = None;
    // (vertex, parent, next neighbor index)
    let mut stack: Vec<(usize, usize, usize)> = vec![(u, usize::MAX, 0)];
    tally.push(c.color(u));
    while let Some(top) = stack.last_mut() {
        let (v, from, idx) = *top;
        if idx < t.degree(v) {
            top.2 += 1;
            let w = t.neighbors(v)[idx];
            if w == from {
                continue;
            }
            tally.push(c.color(w));
            if w > u && best.is_none_or(|b| w < b) && !tally.satisfies(kind) {
                best = Some(w);
            }
            stack.push((w, v, 0));
        } else {
            tally.pop(c.color(v));
            stack.pop();
        }
    }
    best
}

/// Rooted complete binary tree with `d` levels in heap layout: root 0,
/// children of `i` are `2i + 1` and `2i + 2`.
pub fn complete_binary(d: u32) -> Result<Tree> {
    if d < 1 {
        return Err(Error::Precondition("complete binary tree needs d >= 1".into()));
    }
    if d > 30 {
        return Err(Error::Capacity(format!("B_{d} is too large")));
    }
    let n = (1usize << d) - 1;
    Tree::new(n, (1..n).map(|i| ((i - 1) / 2, i)).collect(), Some(0))
}

/// Level (1 = root) of heap index `i`.
pub fn heap_level(i: usize) -> u32 {
    usize::BITS - (i + 1).leading_zeros()
}

/// `ceil(log2(n + 1))`: the number of bits needed to write `n`.
pub fn ceil_log2_plus_one(n: usize) -> u32 {
    usize::BITS - n.leading_zeros()
}

/// Unique-maximum coloring of the path `P_n` with `ceil(log2(n+1))` colors:
/// the central vertex (left one for even length) takes the top color and
/// the two halves recurse.
pub fn um_color_path(n: usize) -> Result<Coloring> {
    if n < 1 {
        return Err(Error::Precondition("path needs n >= 1".into()));
    }
    let mut colors = vec![0; n];
    fn fill(colors: &mut [Color]) {
        let m = colors.len();
        if m == 0 {
            return;
        }
        let mid = (m - 1) / 2;
        colors[mid] = ceil_log2_plus_one(m);
        let (left, right) = colors.split_at_mut(mid);
        fill(left);
        fill(&mut right[1..]);
    }
    fill(&mut colors);
    Coloring::new(colors, ceil_log2_plus_one(n))
}

/// Level `l` counted from the bottom gets color `l`; uses `d` colors.
pub fn um_color_complete_binary(d: u32) -> Result<Coloring> {
    let t = complete_binary(d)?;
    let colors = (0..t.n()).map(|i| d - heap_level(i) + 1).collect();
    Coloring::new(colors, d)
}

/// Counting bound for odd colorings of `P_n`: passes iff `2^k - 1 >= n`,
/// i.e. there are enough nonzero parity vectors for the `n` paths that
/// start at one endpoint.
pub fn odd_lower_bound_path(n: usize, k: u32) -> Certificate {
    let capacity = if k >= 64 { u64::MAX } else { (1u64 << k) - 1 };
    if capacity >= n as u64 {
        Certificate::pass(Some(ColoringKind::Odd))
    } else {
        Certificate::fail(Some(ColoringKind::Odd), "too-few-parity-vectors").with_detail(format!(
            "{k} colors give {capacity} nonzero parity vectors but P_{n} has {n} paths from an endpoint"
        ))
    }
}

/// Pigeonhole search on a concrete coloring of `P_n` (vertices `0..n` in
/// order): compares parity vectors of the prefixes `[0, i)` including the
/// empty one; a repeat at `i < j` means the path `i..j` is all-even.
pub fn path_parity_violation(c: &Coloring) -> Option<Certificate> {
    let mut seen = std::collections::HashMap::new();
    let mut acc = parity_of_vertices(c, &[]).expect("empty set");
    seen.insert(acc.clone(), 0usize);
    for j in 1..=c.len() {
        acc.toggle_color(c.color(j - 1));
        if let Some(&i) = seen.get(&acc) {
            let path: Vec<usize> = (i..j).collect();
            return Some(
                Certificate::violation(ColoringKind::Odd, path)
                    .with_endpoints(i, j - 1)
                    .with_detail(format!("prefixes of length {i} and {j} share a parity vector")),
            );
        }
        seen.insert(acc.clone(), j);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::is_valid;

    #[test]
    fn construction_checks_shape() {
        assert!(Tree::new(0, vec![], None).is_err());
        assert!(Tree::new(3, vec![(0, 1)], None).is_err());
        assert!(Tree::new(4, vec![(0, 1), (1, 0), (2, 3)], None).is_err());
        assert!(Tree::new(2, vec![(0, 2)], None).is_err());
        assert!(Tree::new(1, vec![], Some(0)).is_ok());
    }

    #[test]
    fn tree_path_examples() {
        let p4 = Tree::path_graph(4).unwrap();
        assert_eq!(tree_path(&p4, 0, 3).unwrap(), vec![0, 1, 2, 3]);
        assert_eq!(tree_path(&p4, 2, 2).unwrap(), vec![2]);
        assert_eq!(tree_path(&p4, 3, 1).unwrap(), vec![3, 2, 1]);
        let star = Tree::star(3).unwrap();
        assert_eq!(tree_path(&star, 1, 2).unwrap(), vec![1, 0, 2]);
        assert!(tree_path(&star, 1, 9).is_err());
    }

    #[test]
    fn path_hypergraph_sizes() {
        let p2 = path_hypergraph(&Tree::path_graph(2).unwrap());
        assert_eq!(p2.edges(), &[vec![0], vec![1], vec![0, 1]]);
        assert_eq!(path_hypergraph(&Tree::path_graph(3).unwrap()).edge_count(), 6);
        assert_eq!(path_hypergraph(&complete_binary(2).unwrap()).edge_count(), 6);
        let b3 = path_hypergraph(&complete_binary(3).unwrap());
        assert_eq!(b3.edge_count(), 7 * 6 / 2 + 7);
    }

    #[test]
    fn complete_binary_shapes() {
        assert_eq!(complete_binary(1).unwrap().n(), 1);
        let b2 = complete_binary(2).unwrap();
        assert_eq!(b2.n(), 3);
        assert_eq!(b2.degree(0), 2);
        assert_eq!(complete_binary(3).unwrap().n(), 7);
        assert!(complete_binary(0).is_err());
        assert_eq!(heap_level(0), 1);
        assert_eq!(heap_level(2), 2);
        assert_eq!(heap_level(6), 3);
        assert_eq!(heap_level(7), 4);
    }

    #[test]
    fn um_path_examples() {
        assert_eq!(um_color_path(1).unwrap().colors(), &[1]);
        assert_eq!(um_color_path(3).unwrap().colors(), &[1, 2, 1]);
        let c7 = um_color_path(7).unwrap();
        assert_eq!(c7.colors_used(), 3);
        let p7 = Tree::path_graph(7).unwrap();
        assert!(verify_tree_coloring(&p7, &c7, ColoringKind::UniqueMaximum).unwrap().passed());
        // even length: left-of-centre takes the top colour
        assert_eq!(um_color_path(4).unwrap().colors(), &[1, 3, 2, 1]);
        assert!(um_color_path(0).is_err());
    }

    #[test]
    fn um_binary_examples() {
        assert_eq!(um_color_complete_binary(1).unwrap().colors(), &[1]);
        assert_eq!(um_color_complete_binary(2).unwrap().colors(), &[2, 1, 1]);
        let c = um_color_complete_binary(4).unwrap();
        assert_eq!(c.colors_used(), 4);
        let b4 = complete_binary(4).unwrap();
        assert!(verify_tree_coloring(&b4, &c, ColoringKind::UniqueMaximum).unwrap().passed());
    }

    #[test]
    fn odd_bound_examples() {
        assert!(!odd_lower_bound_path(3, 1).passed());
        assert!(odd_lower_bound_path(3, 2).passed());
        assert!(!odd_lower_bound_path(4, 2).passed());
        assert!(odd_lower_bound_path(1, 1).passed());
    }

    #[test]
    fn alternating_p7_has_an_even_path() {
        let c = Coloring::from_colors(vec![1, 2, 1, 2, 1, 2, 1]).unwrap();
        let cert = path_parity_violation(&c).unwrap();
        // prefix parities: (1,0) (1,1) (0,1) (0,0) -> the first four vertices
        assert_eq!(cert.edge, Some(vec![0, 1, 2, 3]));
        let edge = cert.edge.unwrap();
        assert!(parity_of_vertices(&c, &edge).unwrap().is_zero());
        let p7 = Tree::path_graph(7).unwrap();
        let v = verify_tree_coloring(&p7, &c, ColoringKind::Odd).unwrap();
        assert!(!v.passed());
        // um_color_path is odd, so the search must come up empty
        assert!(path_parity_violation(&um_color_path(15).unwrap()).is_none());
    }

    #[test]
    fn single_vertex_passes_everything() {
        let p1 = Tree::path_graph(1).unwrap();
        let c = Coloring::from_colors(vec![1]).unwrap();
        for kind in ColoringKind::ALL {
            assert!(verify_tree_coloring(&p1, &c, kind).unwrap().passed());
        }
    }

    #[test]
    fn streaming_verifier_matches_hypergraph_certificate() {
        let t = Tree::new(6, vec![(0, 1), (1, 2), (1, 3), (3, 4), (4, 5)], None).unwrap();
        let c = Coloring::from_colors(vec![1, 2, 1, 3, 1, 2]).unwrap();
        let h = path_hypergraph(&t);
        for kind in ColoringKind::ALL {
            let a = verify_tree_coloring(&t, &c, kind).unwrap();
            let mut b = is_valid(&h, &c, kind).unwrap();
            if let Some(e) = &a.endpoints {
                b = b.with_endpoints(e[0], e[1]);
            }
            assert_eq!(a, b, "{kind}");
        }
    }

    #[test]
    fn median_and_isomorphism() {
        let t = Tree::new(6, vec![(0, 1), (1, 2), (1, 3), (3, 4), (4, 5)], None).unwrap();
        assert_eq!(t.median(0, 2, 5), 1);
        assert_eq!(t.median(0, 1, 5), 1);
        let relabelled =
            Tree::new(6, vec![(5, 4), (4, 3), (4, 2), (2, 1), (1, 0)], None).unwrap();
        assert!(t.is_isomorphic(&relabelled));
        assert!(!t.is_isomorphic(&Tree::path_graph(6).unwrap()));
        assert_eq!(Tree::path_graph(5).unwrap().diameter_path().len(), 5);
    }

    #[test]
    fn induced_relabels() {
        let t = Tree::path_graph(5).unwrap();
        let sub = t.induced(&[3, 2, 4]).unwrap();
        assert_eq!(sub.n(), 3);
        assert!(sub.are_adjacent(0, 1));
        assert!(sub.are_adjacent(0, 2));
        assert!(t.induced(&[0, 2]).is_err());
    }
}
