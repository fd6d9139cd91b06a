//! Unique-maximum (vertex ranking) number of trees and forests by the
//! separator recursion, memoized on vertex subsets.

use std::collections::HashMap;

use crate::coloring::{Color, Coloring};
use crate::error::{Error, Result};
use crate::tree::{ceil_log2_plus_one, Tree};

use super::um_search::compress;
use super::{Chi, Meter, SolveBudget, SolveResult};

type Mask = u64;

/// Largest vertex count the subset memo can address.
pub const UM_TREE_CAPACITY: usize = 64;

/// Exact UM solver for a forest given by adjacency masks.
///
/// For connected `S`, `um(S) = min over v of 1 + max um(C)` over the
/// components `C` of `S - v`; a forest's value is the max over its components.
pub struct TreeUmSolver {
    n: usize,
    adj: Vec<Mask>,
    // connected set -> (largest k proven infeasible, smallest k proven feasible + its top vertex)
    infeasible_up_to: HashMap<Mask, Color>,
    feasible_at: HashMap<Mask, (Color, usize)>,
    meter: Meter,
}

impl TreeUmSolver {
    pub fn new(t: &Tree) -> Result<Self> {
        let edges = t.edges().to_vec();
        Self::from_forest(t.n(), &edges)
    }

    /// Any acyclic graph on `0..n`.
    pub fn from_forest(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n > UM_TREE_CAPACITY {
            return Err(Error::Capacity(format!(
                "{n} vertices exceeds the subset memo capacity of {UM_TREE_CAPACITY}"
            )));
        }
        let mut adj = vec![0; n];
        let mut dsu: Vec<usize> = (0..n).collect();
        fn find(d: &mut [usize], x: usize) -> usize {
            if d[x] != x {
                let r = find(d, d[x]);
                d[x] = r;
            }
            d[x]
        }
        for &(u, v) in edges {
            if u >= n || v >= n || u == v {
                return Err(Error::Instance(format!("bad edge ({u}, {v})")));
            }
            let (a, b) = (find(&mut dsu, u), find(&mut dsu, v));
            if a == b {
                return Err(Error::Instance("graph has a cycle".into()));
            }
            dsu[a] = b;
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        Ok(Self {
            n,
            adj,
            infeasible_up_to: HashMap::new(),
            feasible_at: HashMap::new(),
            meter: Meter::new(SolveBudget::default().with_time_limit(std::time::Duration::MAX)),
        })
    }

    pub fn full_mask(&self) -> Mask {
        if self.n == 64 {
            !0
        } else {
            (1 << self.n) - 1
        }
    }

    fn components(&self, s: Mask) -> Vec<Mask> {
        let mut left = s;
        let mut out = Vec::new();
        while left != 0 {
            let seed = left & left.wrapping_neg();
            let mut comp = seed;
            let mut frontier = seed;
            while frontier != 0 {
                let mut next = 0;
                let mut f = frontier;
                while f != 0 {
                    let v = f.trailing_zeros() as usize;
                    f &= f - 1;
                    next |= self.adj[v];
                }
                next &= s & !comp;
                comp |= next;
                frontier = next;
            }
            out.push(comp);
            left &= !comp;
        }
        out
    }

    /// Vertex count of a longest path inside the connected set `s`.
    fn longest_path(&self, s: Mask) -> usize {
        let bfs = |src: usize| {
            let mut seen: Mask = 1 << src;
            let mut frontier: Mask = 1 << src;
            let mut last = src;
            let mut layers = 0;
            while frontier != 0 {
                last = frontier.trailing_zeros() as usize;
                layers += 1;
                let mut next = 0;
                let mut f = frontier;
                while f != 0 {
                    let v = f.trailing_zeros() as usize;
                    f &= f - 1;
                    next |= self.adj[v];
                }
                next &= s & !seen;
                seen |= next;
                frontier = next;
            }
            (last, layers)
        };
        let (far, _) = bfs(s.trailing_zeros() as usize);
        bfs(far).1
    }

    fn lower_bound(&self, s: Mask) -> Color {
        ceil_log2_plus_one(self.longest_path(s))
    }

    fn feasible(&mut self, s: Mask, k: Color) -> bool {
        if s.count_ones() == 1 {
            return k >= 1;
        }
        if let Some(&(best, _)) = self.feasible_at.get(&s) {
            if best <= k {
                return true;
            }
        }
        if self.infeasible_up_to.get(&s).is_some_and(|&m| k <= m) {
            return false;
        }
        if k < self.lower_bound(s) {
            return false;
        }
        self.meter.tick();
        // candidate separators, most balanced first
        let mut cands: Vec<(usize, usize, Vec<Mask>)> = Vec::new();
        let mut rest = s;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let comps = self.components(s & !(1 << v));
            let largest = comps.iter().map(|c| c.count_ones()).max().unwrap_or(0) as usize;
            cands.push((largest, v, comps));
        }
        cands.sort_by_key(|c| (c.0, c.1));
        for (_, v, comps) in cands {
            let mut ok = true;
            for c in comps {
                if !self.feasible(c, k - 1) {
                    ok = false;
                    break;
                }
            }
            if ok {
                let e = self.feasible_at.entry(s).or_insert((k, v));
                if k < e.0 {
                    *e = (k, v);
                }
                return true;
            }
        }
        let e = self.infeasible_up_to.entry(s).or_insert(k);
        *e = (*e).max(k);
        false
    }

    fn connected_chi(&mut self, s: Mask) -> Color {
        let mut k = self.lower_bound(s);
        while !self.feasible(s, k) {
            k += 1;
        }
        k
    }

    /// UM number of the forest induced on `s`.
    pub fn chi(&mut self, s: Mask) -> Color {
        self.components(s)
            .into_iter()
            .map(|c| self.connected_chi(c))
            .max()
            .unwrap_or(0)
    }

    fn paint(&mut self, s: Mask, colors: &mut [Color]) {
        for c in self.components(s) {
            if c.count_ones() == 1 {
                colors[c.trailing_zeros() as usize] = 1;
                continue;
            }
            let k = self.connected_chi(c);
            let (kk, v) = self.feasible_at[&c];
            debug_assert_eq!(kk, k);
            colors[v] = k;
            self.paint(c & !(1 << v), colors);
        }
    }

    /// An optimal UM coloring of the forest induced on `s` (entries outside
    /// `s` are left 0).
    pub fn coloring(&mut self, s: Mask) -> Vec<Color> {
        let mut colors = vec![0; self.n];
        self.paint(s, &mut colors);
        colors
    }

    pub fn nodes(&self) -> u64 {
        self.meter.nodes
    }
}

/// Exact UM number of a tree with an optimal witness coloring.
pub fn um_tree_exact(t: &Tree) -> Result<SolveResult> {
    let start = std::time::Instant::now();
    let mut solver = TreeUmSolver::new(t)?;
    let all = solver.full_mask();
    let chi = solver.chi(all);
    let mut colors = solver.coloring(all);
    compress(&mut colors);
    let witness = Coloring::new(colors, chi)?;
    Ok(SolveResult {
        chi: Chi::Exact { value: chi },
        witness: Some(witness),
        stats: super::SolveStats {
            nodes: solver.nodes(),
            elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::ColoringKind;
    use crate::tree::{complete_binary, verify_tree_coloring};

    fn check(t: &Tree) -> u32 {
        let r = um_tree_exact(t).unwrap();
        let w = r.witness.unwrap();
        assert!(verify_tree_coloring(t, &w, ColoringKind::UniqueMaximum).unwrap().passed());
        let chi = r.chi.exact().unwrap();
        assert_eq!(w.colors_used() as u32, chi);
        chi
    }

    #[test]
    fn examples() {
        assert_eq!(check(&Tree::path_graph(7).unwrap()), 3);
        assert_eq!(check(&Tree::star(3).unwrap()), 2);
        let gap = Tree::new(8, vec![(0, 1), (1, 2), (2, 3), (4, 5), (5, 6), (6, 7), (1, 5)], None)
            .unwrap();
        assert_eq!(check(&gap), 4);
        assert_eq!(check(&Tree::path_graph(1).unwrap()), 1);
    }

    #[test]
    fn complete_binary_trees_need_d_colors() {
        for d in 1..=5 {
            assert_eq!(check(&complete_binary(d).unwrap()), d);
        }
    }

    #[test]
    fn long_paths_and_wide_stars() {
        for n in [15usize, 16, 31, 40] {
            assert_eq!(check(&Tree::path_graph(n).unwrap()), ceil_log2_plus_one(n), "P_{n}");
        }
        assert_eq!(check(&Tree::star(40).unwrap()), 2);
    }

    #[test]
    fn forest_value_is_max_over_components() {
        let mut s = TreeUmSolver::from_forest(6, &[(0, 1), (1, 2), (3, 4)]).unwrap();
        assert_eq!(s.chi(s.full_mask()), 2);
        assert_eq!(s.chi(0b100000), 1);
        assert_eq!(s.chi(0), 0);
        assert!(TreeUmSolver::from_forest(3, &[(0, 1), (1, 2), (2, 0)]).is_err());
    }

    #[test]
    fn capacity_is_enforced() {
        let t = Tree::path_graph(65).unwrap();
        assert!(matches!(um_tree_exact(&t), Err(Error::Capacity(_))));
    }
}
