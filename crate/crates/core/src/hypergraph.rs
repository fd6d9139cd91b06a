//! Hypergraphs over vertices `0..n` and the coloring verifier.

use serde::{Deserialize, Serialize};

use crate::certificate::Certificate;
use crate::coloring::{edge_satisfies, parity_of_vertices, Coloring, ColoringKind, ParityVector};
use crate::error::{Error, Result};

/// A hypergraph on vertices `0..n`. Edges are nonempty, duplicate-free and
/// stored sorted; edge order is preserved as given.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Hypergraph {
    n: usize,
    edges: Vec<Vec<usize>>,
}

impl Hypergraph {
    pub fn new(n: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        let mut sorted = Vec::with_capacity(edges.len());
        for (i, mut e) in edges.into_iter().enumerate() {
            if e.is_empty() {
                return Err(Error::Instance(format!("edge {i} is empty")));
            }
            e.sort_unstable();
            if let Some(&v) = e.iter().find(|&&v| v >= n) {
                return Err(Error::Instance(format!(
                    "edge {i} mentions vertex {v}, outside [0, {n})"
                )));
            }
            if e.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Instance(format!("edge {i} repeats a vertex")));
            }
            sorted.push(e);
        }
        Ok(Self { n, edges: sorted })
    }

    /// All `size`-subsets of `0..n` in lexicographic order.
    pub fn complete_uniform(n: usize, size: usize) -> Result<Self> {
        Self::new(n, subsets(n, size).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// `Some(l)` when every edge has exactly `l` vertices.
    pub fn uniformity(&self) -> Option<usize> {
        let l = self.edges.first()?.len();
        self.edges.iter().all(|e| e.len() == l).then_some(l)
    }

    /// Hypergraph induced on `keep` (edges entirely inside it), relabelled
    /// to `0..keep.len()` in the order given.
    pub fn induced(&self, keep: &[usize]) -> Result<Self> {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| e.iter().all(|&v| index[v] != usize::MAX))
            .map(|e| e.iter().map(|&v| index[v]).collect())
            .collect();
        Self::new(keep.len(), edges)
    }
}

/// Lexicographic iterator over the `size`-subsets of `0..n`.
pub fn subsets(n: usize, size: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut cur: Option<Vec<usize>> = (size <= n).then(|| (0..size).collect());
    std::iter::from_fn(move || {
        let out = cur.clone()?;
        let next = {
            let c = cur.as_mut().unwrap();
            let mut i = size;
            loop {
                if i == 0 {
                    break false;
                }
                i -= 1;
                if c[i] < n - size + i {
                    c[i] += 1;
                    for j in i + 1..size {
                        c[j] = c[j - 1] + 1;
                    }
                    break true;
                }
            }
        };
        if !next {
            cur = None;
        }
        Some(out)
    })
}

fn check_length(h: &Hypergraph, c: &Coloring) -> Result<()> {
    if c.len() != h.n() {
        return Err(Error::Instance(format!(
            "coloring has {} entries but the hypergraph has {} vertices",
            c.len(),
            h.n()
        )));
    }
    Ok(())
}

/// Parity vector of edge `e` under `c`: bit `i - 1` is the parity of the
/// number of vertices of `e` colored `i`.
pub fn parity_vector(c: &Coloring, e: &[usize]) -> Result<ParityVector> {
    parity_of_vertices(c, e)
}

/// Checks `c` against every edge of `h`; a failure names the first violating
/// edge in edge-list order.
pub fn is_valid(h: &Hypergraph, c: &Coloring, kind: ColoringKind) -> Result<Certificate> {
    check_length(h, c)?;
    let mut buf = Vec::new();
    for e in h.edges() {
        buf.clear();
        buf.extend(e.iter().map(|&v| c.color(v)));
        if !edge_satisfies(kind, &buf) {
            return Ok(Certificate::violation(kind, e.clone()));
        }
    }
    Ok(Certificate::pass(Some(kind)))
}

/// Re-checks a single edge named by a certificate.
pub fn edge_is_valid(c: &Coloring, edge: &[usize], kind: ColoringKind) -> Result<bool> {
    let colors = edge
        .iter()
        .map(|&v| {
            c.colors()
                .get(v)
                .copied()
                .ok_or_else(|| Error::Instance(format!("vertex {v} out of range")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(edge_satisfies(kind, &colors))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificate::Verdict;

    fn col(v: &[u32]) -> Coloring {
        Coloring::from_colors(v.to_vec()).unwrap()
    }

    fn p3_paths() -> Hypergraph {
        Hypergraph::new(3, vec![vec![0], vec![1], vec![2], vec![0, 1], vec![0, 1, 2], vec![1, 2]])
            .unwrap()
    }

    #[test]
    fn construction_rejects_bad_edges() {
        assert!(Hypergraph::new(3, vec![vec![]]).is_err());
        assert!(Hypergraph::new(3, vec![vec![0, 3]]).is_err());
        assert!(Hypergraph::new(3, vec![vec![1, 0, 1]]).is_err());
        let h = Hypergraph::new(3, vec![vec![2, 0]]).unwrap();
        assert_eq!(h.edges()[0], vec![0, 2]);
    }

    #[test]
    fn parity_vector_examples() {
        let c = col(&[2, 2, 3]);
        assert_eq!(parity_vector(&c, &[0, 1, 2]).unwrap().to_bits(), vec![0, 0, 1]);
        let c = col(&[1, 2, 1, 2]);
        assert_eq!(parity_vector(&c, &[0, 1, 2, 3]).unwrap().to_bits(), vec![0, 0]);
        let c = Coloring::new(vec![3, 1], 4).unwrap();
        let p = parity_vector(&c, &[0]).unwrap();
        assert_eq!(p.count_ones(), 1);
        assert!(p.get(2));
        assert!(parity_vector(&c, &[5]).is_err());
    }

    #[test]
    fn p3_with_121_passes_the_middle_kinds() {
        let h = p3_paths();
        let c = col(&[1, 2, 1]);
        for kind in [ColoringKind::UniqueMaximum, ColoringKind::ConflictFree, ColoringKind::Odd] {
            assert!(is_valid(&h, &c, kind).unwrap().passed(), "{kind}");
        }
        let rb = is_valid(&h, &c, ColoringKind::Rainbow).unwrap();
        assert_eq!(rb.edge, Some(vec![0, 1, 2]));
    }

    #[test]
    fn monochromatic_pair_fails_everything() {
        let h = Hypergraph::new(2, vec![vec![0, 1]]).unwrap();
        let c = col(&[1, 1]);
        for kind in ColoringKind::ALL {
            let cert = is_valid(&h, &c, kind).unwrap();
            assert_eq!(cert.verdict, Verdict::Fail, "{kind}");
            assert_eq!(cert.edge, Some(vec![0, 1]));
        }
    }

    #[test]
    fn all_triples_monochromatic_is_odd_but_not_cf() {
        let h = Hypergraph::complete_uniform(4, 3).unwrap();
        assert_eq!(h.edge_count(), 4);
        let c = col(&[1, 1, 1, 1]);
        assert!(is_valid(&h, &c, ColoringKind::Odd).unwrap().passed());
        assert!(!is_valid(&h, &c, ColoringKind::ConflictFree).unwrap().passed());
    }

    #[test]
    fn singleton_edges_are_exempt() {
        let h = Hypergraph::new(1, vec![vec![0]]).unwrap();
        let c = col(&[1]);
        for kind in ColoringKind::ALL {
            assert!(is_valid(&h, &c, kind).unwrap().passed());
        }
    }

    #[test]
    fn length_mismatch_is_an_instance_error() {
        let h = p3_paths();
        assert!(matches!(is_valid(&h, &col(&[1, 2]), ColoringKind::Odd), Err(Error::Instance(_))));
    }

    #[test]
    fn subsets_enumerates_binomially() {
        assert_eq!(subsets(5, 2).count(), 10);
        assert_eq!(subsets(6, 3).count(), 20);
        assert_eq!(subsets(3, 0).collect::<Vec<_>>(), vec![Vec::<usize>::new()]);
        assert_eq!(subsets(2, 3).count(), 0);
        let first: Vec<_> = subsets(4, 2).take(3).collect();
        assert_eq!(first, vec![vec![0, 1], vec![0, 2], vec![0, 3]]);
    }

    #[test]
    fn uniformity_and_induced() {
        let h = Hypergraph::complete_uniform(5, 3).unwrap();
        assert_eq!(h.uniformity(), Some(3));
        let sub = h.induced(&[0, 2, 4, 1]).unwrap();
        assert_eq!(sub.n(), 4);
        assert_eq!(sub.edge_count(), 4);
        assert_eq!(p3_paths().uniformity(), None);
    }
}
