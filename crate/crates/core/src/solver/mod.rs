//! Exact chromatic numbers for the five coloring kinds.
//!
//! * Permutation-invariant kinds (nm, rb, cf, odd) use a depth-first search
//!   over canonical colorings (color `c + 1` may only appear after color
//!   `c`), checking each edge once its last vertex is colored.
//! * Unique-maximum is order sensitive and is solved top-down: the top color
//!   class is an independent set of the 2-section, and every edge avoiding
//!   it must be colored with one fewer color.
//! * On trees the same idea specializes to the separator recursion
//!   `um(S) = 1 + min_v max_{S' in comp(S - v)} um(S')`.

mod canonical;
mod exhaustive;
mod tree_um;
mod um_search;

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::coloring::{Coloring, ColoringKind};
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::tree::{path_hypergraph, Tree};

pub use exhaustive::{chromatic_number_exhaustive, exists_coloring_exhaustive};
pub use tree_um::{um_tree_exact, TreeUmSolver, UM_TREE_CAPACITY};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveBudget {
    pub max_colors: u32,
    pub time_limit: Duration,
    pub node_limit: u64,
}

impl SolveBudget {
    pub fn new(max_colors: u32, time_limit: Duration, node_limit: u64) -> Result<Self> {
        if max_colors == 0 || time_limit.is_zero() || node_limit == 0 {
            return Err(Error::Precondition("budget components must be positive".into()));
        }
        Ok(Self {
            max_colors,
            time_limit,
            node_limit,
        })
    }

    pub fn with_time_limit(mut self, t: Duration) -> Self {
        self.time_limit = t;
        self
    }

    pub fn with_node_limit(mut self, nodes: u64) -> Self {
        self.node_limit = nodes;
        self
    }

    pub fn with_max_colors(mut self, k: u32) -> Self {
        self.max_colors = k;
        self
    }
}

impl Default for SolveBudget {
    fn default() -> Self {
        Self {
            max_colors: 64,
            time_limit: Duration::from_secs(60),
            node_limit: u64::MAX,
        }
    }
}

/// Exact value, or bounds when the budget ran out first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "status")]
pub enum Chi {
    Exact { value: u32 },
    Unknown { lower: u32, upper: u32 },
}

impl Chi {
    pub fn exact(self) -> Option<u32> {
        match self {
            Chi::Exact { value } => Some(value),
            Chi::Unknown { .. } => None,
        }
    }

    pub fn lower_bound(self) -> u32 {
        match self {
            Chi::Exact { value } => value,
            Chi::Unknown { lower, .. } => lower,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SolveStats {
    pub nodes: u64,
    pub elapsed_ms: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolveResult {
    pub chi: Chi,
    pub witness: Option<Coloring>,
    pub stats: SolveStats,
}

impl SolveResult {
    /// `{chi, witness, status, stats}` plus the bounds when inexact.
    pub fn to_json(&self) -> serde_json::Value {
        let (chi, status, lower, upper) = match self.chi {
            Chi::Exact { value } => (Some(value), "exact", value, value),
            Chi::Unknown { lower, upper } => (None, "unknown", lower, upper),
        };
        serde_json::json!({
            "chi": chi,
            "witness": self.witness.as_ref().map(|w| w.colors().to_vec()),
            "status": status,
            "lower": lower,
            "upper": upper,
            "stats": self.stats,
        })
    }
}

/// Shared node/time accounting.
pub(crate) struct Meter {
    start: Instant,
    budget: SolveBudget,
    pub nodes: u64,
    exhausted: bool,
}

impl Meter {
    pub fn new(budget: SolveBudget) -> Self {
        Self {
            start: Instant::now(),
            budget,
            nodes: 0,
            exhausted: false,
        }
    }

    /// Counts one node; false once the budget is spent.
    pub fn tick(&mut self) -> bool {
        if self.exhausted {
            return false;
        }
        self.nodes += 1;
        if self.nodes > self.budget.node_limit
            || (self.nodes % 1024 == 0 && self.start.elapsed() > self.budget.time_limit)
        {
            self.exhausted = true;
        }
        !self.exhausted
    }

    pub fn stats(&self) -> SolveStats {
        SolveStats {
            nodes: self.nodes,
            elapsed_ms: self.start.elapsed().as_secs_f64() * 1e3,
        }
    }
}

/// Three-valued answer of a budgeted decision search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Decision<T> {
    Yes(T),
    No,
    OutOfBudget,
}

/// Minimum number of colors of the given kind, found by trying
/// `k = 1, 2, ...`. Witnesses for permutation-invariant kinds are the
/// lexicographically least canonical coloring.
pub fn chromatic_number_exact(h: &Hypergraph, kind: ColoringKind, budget: SolveBudget) -> SolveResult {
    if kind == ColoringKind::UniqueMaximum {
        return um_search::solve(h, budget);
    }
    canonical::solve(h, kind, budget)
}

/// Exact `(um, cf, odd)` for the path hypergraph of a tree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OptimalityGap {
    pub um: u32,
    pub cf: u32,
    pub odd: u32,
}

pub fn verify_optimality_gap(t: &Tree, budget: SolveBudget) -> Result<OptimalityGap> {
    let um = um_tree_exact(t)?;
    let h = path_hypergraph(t);
    let exact = |kind: ColoringKind| {
        let r = chromatic_number_exact(&h, kind, budget);
        r.chi.exact().ok_or_else(|| {
            Error::Capacity(format!("budget exhausted while solving {kind}: {:?}", r.chi))
        })
    };
    Ok(OptimalityGap {
        um: um.chi.exact().expect("tree recursion is always exact"),
        cf: exact(ColoringKind::ConflictFree)?,
        odd: exact(ColoringKind::Odd)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::is_valid;
    use crate::tree::Tree;

    fn gap_tree() -> Tree {
        Tree::new(8, vec![(0, 1), (1, 2), (2, 3), (4, 5), (5, 6), (6, 7), (1, 5)], None).unwrap()
    }

    fn solve(h: &Hypergraph, kind: ColoringKind) -> u32 {
        let r = chromatic_number_exact(h, kind, SolveBudget::default());
        let w = r.witness.as_ref().unwrap();
        assert!(is_valid(h, w, kind).unwrap().passed());
        let chi = r.chi.exact().unwrap();
        assert_eq!(w.colors_used() as u32, chi);
        chi
    }

    #[test]
    fn all_triples_of_six() {
        let h = Hypergraph::complete_uniform(6, 3).unwrap();
        assert_eq!(solve(&h, ColoringKind::Odd), 1);
        assert_eq!(solve(&h, ColoringKind::ConflictFree), 3);
    }

    #[test]
    fn p7_needs_three_of_each() {
        let h = path_hypergraph(&Tree::path_graph(7).unwrap());
        for kind in [ColoringKind::UniqueMaximum, ColoringKind::ConflictFree, ColoringKind::Odd] {
            assert_eq!(solve(&h, kind), 3, "{kind}");
        }
        assert_eq!(solve(&h, ColoringKind::Rainbow), 7);
        assert_eq!(solve(&h, ColoringKind::NonMonochromatic), 2);
    }

    #[test]
    fn witness_is_lexicographically_least_canonical() {
        let h = path_hypergraph(&Tree::path_graph(3).unwrap());
        let r = chromatic_number_exact(&h, ColoringKind::ConflictFree, SolveBudget::default());
        assert_eq!(r.witness.unwrap().colors(), &[1, 2, 1]);
    }

    #[test]
    fn optimality_gap_examples() {
        let b = SolveBudget::default();
        assert_eq!(
            verify_optimality_gap(&gap_tree(), b).unwrap(),
            OptimalityGap { um: 4, cf: 3, odd: 3 }
        );
        let b3 = crate::tree::complete_binary(3).unwrap();
        assert_eq!(verify_optimality_gap(&b3, b).unwrap(), OptimalityGap { um: 3, cf: 3, odd: 3 });
        for n in 1..=10 {
            let g = verify_optimality_gap(&Tree::path_graph(n).unwrap(), b).unwrap();
            let want = crate::tree::ceil_log2_plus_one(n);
            assert_eq!(g, OptimalityGap { um: want, cf: want, odd: want }, "P_{n}");
        }
    }

    #[test]
    fn budget_exhaustion_reports_bounds() {
        let h = Hypergraph::complete_uniform(8, 3).unwrap();
        let tight = SolveBudget::default().with_node_limit(5);
        let r = chromatic_number_exact(&h, ColoringKind::ConflictFree, tight);
        match r.chi {
            Chi::Unknown { lower, upper } => {
                assert!(lower >= 1 && lower <= 4);
                assert_eq!(upper, 8);
            }
            other => panic!("expected unknown, got {other:?}"),
        }
        assert!(r.witness.is_none());
        let capped = SolveBudget::default().with_max_colors(2);
        let r = chromatic_number_exact(&h, ColoringKind::ConflictFree, capped);
        assert_eq!(r.chi, Chi::Unknown { lower: 3, upper: 8 });
    }

    #[test]
    fn budget_rejects_zero_components() {
        assert!(SolveBudget::new(0, Duration::from_secs(1), 1).is_err());
        assert!(SolveBudget::new(1, Duration::ZERO, 1).is_err());
        assert!(SolveBudget::new(1, Duration::from_secs(1), 0).is_err());
    }

    #[test]
    fn json_output_shape() {
        let h = path_hypergraph(&Tree::path_graph(3).unwrap());
        let r = chromatic_number_exact(&h, ColoringKind::UniqueMaximum, SolveBudget::default());
        let v = r.to_json();
        assert_eq!(v["chi"], 2);
        assert_eq!(v["status"], "exact");
        assert_eq!(v["witness"], serde_json::json!([1, 2, 1]));
        assert!(v["stats"]["nodes"].as_u64().unwrap() > 0);
    }
}
