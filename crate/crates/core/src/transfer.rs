//! Turning conflict-free colorings into unique-maximum ones, and the
//! partitioned hypergraphs on which the resulting color counts are tight.

use serde::{Deserialize, Serialize};

use crate::certificate::Certificate;
use crate::coloring::{Color, Coloring, ColoringKind};
use crate::error::{Error, Result};
use crate::hypergraph::{is_valid, subsets, Hypergraph};

/// A hypergraph with a partition of its vertices into parts `P_1..P_k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionedHypergraph {
    pub base: Hypergraph,
    pub parts: Vec<Vec<usize>>,
    /// Set when the instance lies outside the range where tightness is known.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub warning: Option<String>,
}

impl PartitionedHypergraph {
    pub fn new(base: Hypergraph, parts: Vec<Vec<usize>>) -> Result<Self> {
        let mut owner = vec![usize::MAX; base.n()];
        for (i, p) in parts.iter().enumerate() {
            for &v in p {
                if v >= base.n() || owner[v] != usize::MAX {
                    return Err(Error::Instance(format!("part {i} is not disjoint or out of range")));
                }
                owner[v] = i;
            }
        }
        if owner.contains(&usize::MAX) {
            return Err(Error::Instance("parts do not cover every vertex".into()));
        }
        Ok(Self {
            base,
            parts,
            warning: None,
        })
    }

    /// Vertex `v` gets `1 + index of its part`.
    pub fn part_coloring(&self) -> Coloring {
        let mut colors = vec![0; self.base.n()];
        for (i, p) in self.parts.iter().enumerate() {
            for &v in p {
                colors[v] = i as Color + 1;
            }
        }
        Coloring::new(colors, self.parts.len() as Color).expect("parts cover all vertices")
    }
}

/// Color classes of `c` ordered by size descending, lower color first on ties.
fn classes_by_size(c: &Coloring) -> Vec<Vec<usize>> {
    let mut classes: Vec<Vec<usize>> = vec![Vec::new(); c.max_color() as usize];
    for (v, &x) in c.colors().iter().enumerate() {
        classes[x as usize - 1].push(v);
    }
    classes.retain(|cl| !cl.is_empty());
    // stable sort keeps lower colors ahead on ties
    classes.sort_by_key(|cl| std::cmp::Reverse(cl.len()));
    classes
}

fn require_cf(h: &Hypergraph, c: &Coloring) -> Result<()> {
    let cert = is_valid(h, c, ColoringKind::ConflictFree)?;
    if cert.passed() {
        Ok(())
    } else {
        Err(Error::Rejected {
            reason: "input coloring is not conflict-free".into(),
            certificate: Box::new(cert),
        })
    }
}

/// The largest class of a conflict-free coloring keeps color 1 and every
/// other vertex gets its own color, `2, 3, ...` in vertex order.
///
/// Uses at most `n - ceil(n/k) + 1` colors where `k` is the number of
/// colors of `c_cf`.
pub fn um_from_cf(h: &Hypergraph, c_cf: &Coloring) -> Result<Coloring> {
    require_cf(h, c_cf)?;
    let n = h.n();
    if n == 0 {
        return Ok(c_cf.clone());
    }
    let biggest = &classes_by_size(c_cf)[0];
    let mut in_biggest = vec![false; n];
    for &v in biggest {
        in_biggest[v] = true;
    }
    let mut next = 2;
    let colors: Vec<Color> = (0..n)
        .map(|v| {
            if in_biggest[v] {
                1
            } else {
                next += 1;
                next - 1
            }
        })
        .collect();
    Coloring::new(colors, next - 1)
}

/// The `l`-uniform refinement: the largest class gets 1, the
/// `min(l - 2, |P_2|)` lowest vertices of the second largest class get 2,
/// every other vertex its own color from 3 on.
pub fn um_from_cf_uniform(h: &Hypergraph, c_cf: &Coloring, l: usize) -> Result<Coloring> {
    if l < 3 {
        return Err(Error::Precondition(format!("edge size must be at least 3, got {l}")));
    }
    if h.edges().iter().any(|e| e.len() != l) {
        return Err(Error::Precondition(format!("hypergraph is not {l}-uniform")));
    }
    require_cf(h, c_cf)?;
    let n = h.n();
    if n == 0 {
        return Ok(c_cf.clone());
    }
    let classes = classes_by_size(c_cf);
    let mut colors = vec![0; n];
    for &v in &classes[0] {
        colors[v] = 1;
    }
    if let Some(second) = classes.get(1) {
        for &v in second.iter().take(l - 2) {
            colors[v] = 2;
        }
    }
    let mut next = if classes.len() > 1 { 3 } else { 2 };
    for x in colors.iter_mut().filter(|x| **x == 0) {
        *x = next;
        next += 1;
    }
    Coloring::new(colors, next - 1)
}

/// `k` contiguous blocks, the first `k'` of size `ceil(n/k)` and the rest one smaller.
pub fn balanced_parts(n: usize, k: usize) -> Vec<Vec<usize>> {
    assert!(1 <= k && k <= n);
    let big = n.div_ceil(k);
    let k_big = n - k * (big - 1);
    let mut parts = Vec::with_capacity(k);
    let mut start = 0;
    for i in 0..k {
        let size = if i < k_big { big } else { big - 1 };
        parts.push((start..start + size).collect());
        start += size;
    }
    parts
}

fn owners(n: usize, parts: &[Vec<usize>]) -> Vec<usize> {
    let mut owner = vec![0; n];
    for (i, p) in parts.iter().enumerate() {
        for &v in p {
            owner[v] = i;
        }
    }
    owner
}

/// All 2- and 3-subsets that meet exactly two parts.
pub fn extremal_nonuniform(n: usize, k: usize) -> Result<PartitionedHypergraph> {
    if k == 0 || k > n {
        return Err(Error::Precondition(format!("need 1 <= k <= n, got k={k}, n={n}")));
    }
    let parts = balanced_parts(n, k);
    let owner = owners(n, &parts);
    let meets_two = |e: &Vec<usize>| {
        let mut ps: Vec<usize> = e.iter().map(|&v| owner[v]).collect();
        ps.sort_unstable();
        ps.dedup();
        ps.len() == 2
    };
    let edges = subsets(n, 2)
        .chain(subsets(n, 3))
        .filter(meets_two)
        .collect();
    PartitionedHypergraph::new(Hypergraph::new(n, edges)?, parts)
}

/// All `l`-subsets meeting some part in exactly one vertex. Tightness of
/// the uniform transfer is only known for `n >= 2kl`; smaller instances
/// carry a warning.
pub fn extremal_uniform(n: usize, k: usize, l: usize) -> Result<PartitionedHypergraph> {
    if l < 3 {
        return Err(Error::Precondition(format!("edge size must be at least 3, got {l}")));
    }
    if k == 0 || k > n || l > n {
        return Err(Error::Precondition(format!("need 1 <= k <= n and l <= n, got n={n}, k={k}, l={l}")));
    }
    let parts = balanced_parts(n, k);
    let owner = owners(n, &parts);
    let edges = subsets(n, l)
        .filter(|e| {
            let mut count = vec![0usize; k];
            for &v in e {
                count[owner[v]] += 1;
            }
            count.contains(&1)
        })
        .collect();
    let mut out = PartitionedHypergraph::new(Hypergraph::new(n, edges)?, parts)?;
    if n < 2 * k * l {
        out.warning = Some(format!("n = {n} < 2kl = {}: tightness not guaranteed", 2 * k * l));
    }
    Ok(out)
}

/// `n - ceil(n/k) + 1`.
pub fn general_bound(n: usize, k: usize) -> usize {
    n - n.div_ceil(k) + 1
}

/// `n - ceil(n/k) - l + 4`, meaningful for `n >= 2kl`.
pub fn uniform_bound(n: usize, k: usize, l: usize) -> usize {
    (n + 4) - n.div_ceil(k) - l
}

/// Checks a transferred coloring: passes UM and respects `bound`.
pub fn check_transfer(h: &Hypergraph, um: &Coloring, bound: usize) -> Result<Certificate> {
    let cert = is_valid(h, um, ColoringKind::UniqueMaximum)?;
    if !cert.passed() {
        return Ok(cert);
    }
    let used = um.colors_used();
    Ok(if used <= bound {
        cert
    } else {
        Certificate::fail(Some(ColoringKind::UniqueMaximum), "bound-exceeded")
            .with_detail(format!("{used} colors used, bound {bound}"))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::{chromatic_number_exact, SolveBudget};

    #[test]
    fn parts_are_balanced_and_contiguous() {
        assert_eq!(balanced_parts(7, 3), vec![vec![0, 1, 2], vec![3, 4], vec![5, 6]]);
        assert_eq!(balanced_parts(6, 2), vec![vec![0, 1, 2], vec![3, 4, 5]]);
    }

    #[test]
    fn small_nonuniform_instance() {
        let p = extremal_nonuniform(4, 2).unwrap();
        assert_eq!(p.parts, vec![vec![0, 1], vec![2, 3]]);
        let pairs = p.base.edges().iter().filter(|e| e.len() == 2).count();
        let triples = p.base.edges().iter().filter(|e| e.len() == 3).count();
        assert_eq!((pairs, triples), (4, 4));
    }

    #[test]
    fn transfer_on_six_two() {
        let p = extremal_nonuniform(6, 2).unwrap();
        let cf = p.part_coloring();
        assert!(is_valid(&p.base, &cf, ColoringKind::ConflictFree).unwrap().passed());
        let um = um_from_cf(&p.base, &cf).unwrap();
        assert_eq!(um.colors(), &[1, 1, 1, 2, 3, 4]);
        assert!(check_transfer(&p.base, &um, general_bound(6, 2)).unwrap().passed());
        let exact = chromatic_number_exact(&p.base, ColoringKind::UniqueMaximum, SolveBudget::default());
        assert_eq!(exact.chi.exact(), Some(4));
    }

    #[test]
    fn single_color_input_is_kept() {
        let h = Hypergraph::new(3, vec![vec![1]]).unwrap();
        let c = Coloring::new(vec![1, 1, 1], 1).unwrap();
        assert_eq!(um_from_cf(&h, &c).unwrap().colors(), &[1, 1, 1]);
    }

    #[test]
    fn ties_pick_the_lower_color() {
        let h = Hypergraph::new(4, vec![vec![0, 2]]).unwrap();
        let c = Coloring::new(vec![2, 2, 1, 1], 2).unwrap();
        assert_eq!(um_from_cf(&h, &c).unwrap().colors(), &[2, 3, 1, 1]);
    }

    #[test]
    fn non_cf_input_is_rejected() {
        let h = Hypergraph::new(2, vec![vec![0, 1]]).unwrap();
        let c = Coloring::new(vec![1, 1], 1).unwrap();
        match um_from_cf(&h, &c) {
            Err(Error::Rejected { certificate, .. }) => assert_eq!(certificate.edge, Some(vec![0, 1])),
            other => panic!("expected rejection, got {other:?}"),
        }
    }

    #[test]
    fn uniform_twelve_two_three() {
        let p = extremal_uniform(12, 2, 3).unwrap();
        assert!(p.warning.is_none());
        let cf = p.part_coloring();
        let um = um_from_cf_uniform(&p.base, &cf, 3).unwrap();
        assert_eq!(um.colors_used(), 7);
        assert_eq!(uniform_bound(12, 2, 3), 7);
        assert!(check_transfer(&p.base, &um, 7).unwrap().passed());
    }

    #[test]
    fn small_second_class() {
        // 5-uniform, second class has a single vertex, so only it gets color 2
        let h = Hypergraph::new(7, vec![vec![0, 1, 2, 3, 6], vec![1, 2, 3, 4, 6], vec![0, 2, 3, 4, 5]])
            .unwrap();
        let c = Coloring::new(vec![1, 1, 1, 1, 1, 3, 2], 3).unwrap();
        assert!(is_valid(&h, &c, ColoringKind::ConflictFree).unwrap().passed());
        let um = um_from_cf_uniform(&h, &c, 5).unwrap();
        assert_eq!(um.colors(), &[1, 1, 1, 1, 1, 3, 2]);
        assert_eq!(um.colors_used(), 7 - 5 - 1 + 2);
        assert!(is_valid(&h, &um, ColoringKind::UniqueMaximum).unwrap().passed());
    }

    #[test]
    fn below_regime_is_flagged() {
        let p = extremal_uniform(9, 3, 3).unwrap();
        assert!(p.warning.is_some());
        assert!(is_valid(&p.base, &p.part_coloring(), ColoringKind::ConflictFree).unwrap().passed());
        assert!(matches!(
            um_from_cf_uniform(&p.base, &p.part_coloring(), 4),
            Err(Error::Precondition(_))
        ));
    }
}
