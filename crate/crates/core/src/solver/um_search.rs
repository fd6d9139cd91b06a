//! Unique-maximum search on general hypergraphs, top color class first.
//!
//! For a vertex set `W` let `E(W)` be the edges contained in `W`. A
//! `k`-coloring of `(W, E(W))` exists iff `W` is empty, or some set `S`
//! with no two vertices in a common edge of `E(W)` leaves `W \ S`
//! `(k-1)`-colorable. Enlarging `S` only shrinks what is left, so `S`
//! ranges over maximal independent sets of the 2-section, and the
//! 2-section components of `W` are solved separately.

use std::collections::HashMap;

use crate::coloring::{edge_satisfies, Color, Coloring, ColoringKind};
use crate::hypergraph::Hypergraph;

use super::{Chi, Decision, Meter, SolveBudget, SolveResult};

type Mask = u64;

fn bits(mut m: Mask) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            return None;
        }
        let i = m.trailing_zeros() as usize;
        m &= m - 1;
        Some(i)
    })
}

struct TopDown {
    n: usize,
    edges: Vec<Mask>,
    // (W, k) -> Some(top class) when feasible, None when not
    memo: HashMap<(Mask, Color), Option<Mask>>,
    meter: Meter,
}

impl TopDown {
    fn new(h: &Hypergraph, budget: SolveBudget) -> Self {
        let edges = h
            .edges()
            .iter()
            .filter(|e| e.len() > 1)
            .map(|e| e.iter().fold(0, |m, &v| m | 1 << v))
            .collect();
        Self {
            n: h.n(),
            edges,
            memo: HashMap::new(),
            meter: Meter::new(budget),
        }
    }

    /// 2-section adjacency restricted to edges inside `w`.
    fn adjacency(&self, w: Mask) -> Vec<Mask> {
        let mut adj = vec![0; self.n];
        for &e in &self.edges {
            if e & !w == 0 {
                for v in bits(e) {
                    adj[v] |= e & !(1 << v);
                }
            }
        }
        adj
    }

    fn components(w: Mask, adj: &[Mask]) -> Vec<Mask> {
        let mut left = w;
        let mut out = Vec::new();
        while left != 0 {
            let seed = left & left.wrapping_neg();
            let mut comp = seed;
            let mut frontier = seed;
            while frontier != 0 {
                let next = bits(frontier).fold(0, |m, v| m | adj[v]) & w & !comp;
                comp |= next;
                frontier = next;
            }
            out.push(comp);
            left &= !comp;
        }
        out
    }

    /// Maximal independent sets of the graph on `p` (Bron–Kerbosch on the
    /// complement, with pivoting).
    fn maximal_independent_sets(adj: &[Mask], p: Mask) -> Vec<Mask> {
        fn rec(adj: &[Mask], r: Mask, p: Mask, x: Mask, out: &mut Vec<Mask>) {
            if p == 0 {
                if x == 0 {
                    out.push(r);
                }
                return;
            }
            // pivot: vertex whose closed neighbourhood covers most of p
            let pivot = bits(p | x)
                .max_by_key(|&u| ((adj[u] | 1 << u) & p).count_ones())
                .unwrap();
            let mut cand = p & (adj[pivot] | 1 << pivot);
            let (mut p, mut x) = (p, x);
            while cand != 0 {
                let v = cand.trailing_zeros() as usize;
                cand &= cand - 1;
                let keep = !(adj[v] | 1 << v);
                rec(adj, r | 1 << v, p & keep, x & keep, out);
                p &= !(1 << v);
                x |= 1 << v;
            }
        }
        let mut out = Vec::new();
        rec(adj, 0, p, 0, &mut out);
        out
    }

    fn feasible(&mut self, w: Mask, k: Color) -> Decision<()> {
        if w == 0 {
            return Decision::Yes(());
        }
        if k == 0 {
            return Decision::No;
        }
        if let Some(hit) = self.memo.get(&(w, k)) {
            return if hit.is_some() { Decision::Yes(()) } else { Decision::No };
        }
        if !self.meter.tick() {
            return Decision::OutOfBudget;
        }
        let adj = self.adjacency(w);
        let comps = Self::components(w, &adj);
        let answer = if comps.len() > 1 {
            let mut all = true;
            for c in comps {
                match self.feasible(c, k) {
                    Decision::Yes(()) => {}
                    Decision::No => {
                        all = false;
                        break;
                    }
                    Decision::OutOfBudget => return Decision::OutOfBudget,
                }
            }
            all.then_some(0)
        } else if w.count_ones() == 1 {
            Some(w)
        } else {
            let mut found = None;
            for s in Self::maximal_independent_sets(&adj, w) {
                match self.feasible(w & !s, k - 1) {
                    Decision::Yes(()) => {
                        found = Some(s);
                        break;
                    }
                    Decision::No => {}
                    Decision::OutOfBudget => return Decision::OutOfBudget,
                }
            }
            found
        };
        self.memo.insert((w, k), answer);
        if answer.is_some() {
            Decision::Yes(())
        } else {
            Decision::No
        }
    }

    /// Colors `w` (known feasible with `k`) using the memoized choices.
    fn paint(&self, w: Mask, k: Color, colors: &mut [Color]) {
        if w == 0 {
            return;
        }
        match self.memo.get(&(w, k)).copied().flatten() {
            Some(0) => {
                let adj = self.adjacency(w);
                for c in Self::components(w, &adj) {
                    self.paint(c, k, colors);
                }
            }
            Some(s) => {
                for v in bits(s) {
                    colors[v] = k;
                }
                self.paint(w & !s, k - 1, colors);
            }
            None => unreachable!("paint called on an infeasible state"),
        }
    }
}

/// Relabels the used colors to `1..m` preserving order.
pub(super) fn compress(colors: &mut [Color]) {
    let mut used: Vec<Color> = colors.to_vec();
    used.sort_unstable();
    used.dedup();
    for c in colors.iter_mut() {
        *c = used.binary_search(c).unwrap() as Color + 1;
    }
}

pub(super) fn solve(h: &Hypergraph, budget: SolveBudget) -> SolveResult {
    let n = h.n();
    if n > Mask::BITS as usize {
        return fallback(h, budget);
    }
    let mut td = TopDown::new(h, budget);
    let all: Mask = if n == 64 { !0 } else { (1 << n) - 1 };
    let upper = n as Color;
    if n == 0 {
        return SolveResult {
            chi: Chi::Exact { value: 0 },
            witness: Some(Coloring::new(vec![], 1).unwrap()),
            stats: td.meter.stats(),
        };
    }
    for k in 1..=budget.max_colors.min(upper) {
        match td.feasible(all, k) {
            Decision::Yes(()) => {
                let mut colors = vec![0; n];
                td.paint(all, k, &mut colors);
                compress(&mut colors);
                let witness = Coloring::new(colors, k).expect("colors in range");
                return SolveResult {
                    chi: Chi::Exact { value: k },
                    witness: Some(witness),
                    stats: td.meter.stats(),
                };
            }
            Decision::No => {}
            Decision::OutOfBudget => {
                return SolveResult {
                    chi: Chi::Unknown { lower: k, upper },
                    witness: None,
                    stats: td.meter.stats(),
                }
            }
        }
    }
    SolveResult {
        chi: Chi::Unknown {
            lower: budget.max_colors + 1,
            upper,
        },
        witness: None,
        stats: td.meter.stats(),
    }
}

/// Plain depth-first search over all (non-canonical) colorings, used when
/// the instance is too wide for bitmask states.
fn fallback(h: &Hypergraph, budget: SolveBudget) -> SolveResult {
    let n = h.n();
    let mut closing = vec![Vec::new(); n];
    for e in h.edges() {
        closing[*e.last().unwrap()].push(e.as_slice());
    }
    let mut meter = Meter::new(budget);
    let mut colors = vec![0; n];
    fn dfs(
        v: usize,
        k: Color,
        closing: &[Vec<&[usize]>],
        colors: &mut Vec<Color>,
        meter: &mut Meter,
    ) -> Decision<()> {
        if v == colors.len() {
            return Decision::Yes(());
        }
        for c in 1..=k {
            if !meter.tick() {
                return Decision::OutOfBudget;
            }
            colors[v] = c;
            let ok = closing[v].iter().all(|e| {
                let cs: Vec<Color> = e.iter().map(|&u| colors[u]).collect();
                edge_satisfies(ColoringKind::UniqueMaximum, &cs)
            });
            if ok {
                match dfs(v + 1, k, closing, colors, meter) {
                    Decision::No => {}
                    other => return other,
                }
            }
        }
        Decision::No
    }
    let upper = n as Color;
    for k in 1..=budget.max_colors.min(upper) {
        match dfs(0, k, &closing, &mut colors, &mut meter) {
            Decision::Yes(()) => {
                return SolveResult {
                    chi: Chi::Exact { value: k },
                    witness: Some(Coloring::new(colors, k).expect("in range")),
                    stats: meter.stats(),
                }
            }
            Decision::No => {}
            Decision::OutOfBudget => {
                return SolveResult {
                    chi: Chi::Unknown { lower: k, upper },
                    witness: None,
                    stats: meter.stats(),
                }
            }
        }
    }
    SolveResult {
        chi: Chi::Unknown {
            lower: budget.max_colors + 1,
            upper,
        },
        witness: None,
        stats: meter.stats(),
    }
}
