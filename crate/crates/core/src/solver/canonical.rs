use crate::coloring::{edge_satisfies, Color, Coloring, ColoringKind};
use crate::hypergraph::Hypergraph;

use super::{Chi, Decision, Meter, SolveBudget, SolveResult};

struct Search<'a> {
    kind: ColoringKind,
    n: usize,
    edges: &'a [Vec<usize>],
    // edges whose largest vertex is v, checked once v is colored
    closing: Vec<Vec<usize>>,
    // for rainbow: every edge through v (violations never heal)
    touching: Vec<Vec<usize>>,
    colors: Vec<Color>,
    buf: Vec<Color>,
    meter: Meter,
}

impl<'a> Search<'a> {
    fn new(h: &'a Hypergraph, kind: ColoringKind, budget: SolveBudget) -> Self {
        let n = h.n();
        let mut closing = vec![Vec::new(); n];
        let mut touching = vec![Vec::new(); n];
        for (i, e) in h.edges().iter().enumerate() {
            if e.len() > 1 {
                closing[*e.last().unwrap()].push(i);
                for &v in e {
                    touching[v].push(i);
                }
            }
        }
        Self {
            kind,
            n,
            edges: h.edges(),
            closing,
            touching,
            colors: vec![0; n],
            buf: Vec::new(),
            meter: Meter::new(budget),
        }
    }

    fn consistent_at(&mut self, v: usize) -> bool {
        if self.kind == ColoringKind::Rainbow {
            let c = self.colors[v];
            return self.touching[v].iter().all(|&i| {
                self.edges[i]
                    .iter()
                    .take_while(|&&u| u < v)
                    .all(|&u| self.colors[u] != c)
            });
        }
        for &i in &self.closing[v] {
            self.buf.clear();
            self.buf.extend(self.edges[i].iter().map(|&u| self.colors[u]));
            if !edge_satisfies(self.kind, &self.buf) {
                return false;
            }
        }
        true
    }

    fn dfs(&mut self, v: usize, used: Color, k: Color) -> Decision<()> {
        if v == self.n {
            return Decision::Yes(());
        }
        for c in 1..=k.min(used + 1) {
            if !self.meter.tick() {
                return Decision::OutOfBudget;
            }
            self.colors[v] = c;
            if self.consistent_at(v) {
                match self.dfs(v + 1, used.max(c), k) {
                    Decision::No => {}
                    other => return other,
                }
            }
        }
        self.colors[v] = 0;
        Decision::No
    }
}

pub(super) fn solve(h: &Hypergraph, kind: ColoringKind, budget: SolveBudget) -> SolveResult {
    let n = h.n();
    let mut search = Search::new(h, kind, budget);
    if n == 0 {
        return SolveResult {
            chi: Chi::Exact { value: 0 },
            witness: Some(Coloring::new(vec![], 1).unwrap()),
            stats: search.meter.stats(),
        };
    }
    let upper = n as u32;
    for k in 1..=budget.max_colors.min(upper) {
        match search.dfs(0, 0, k) {
            Decision::Yes(()) => {
                let witness = Coloring::new(search.colors.clone(), k).expect("colors in range");
                return SolveResult {
                    chi: Chi::Exact { value: k },
                    witness: Some(witness),
                    stats: search.meter.stats(),
                };
            }
            Decision::No => {}
            Decision::OutOfBudget => {
                return SolveResult {
                    chi: Chi::Unknown { lower: k, upper },
                    witness: None,
                    stats: search.meter.stats(),
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
        stats: search.meter.stats(),
    }
}
