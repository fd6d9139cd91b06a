//! Embeddings of complete binary trees, as subdivisions, into host trees.

use serde::{Deserialize, Serialize};

use crate::certificate::Certificate;
use crate::error::{Error, Result};
use crate::tree::Tree;

/// A subdivision of `B_levels` inside a host tree.
///
/// Positions of `B_levels` use heap layout (root 0, children `2p+1`, `2p+2`).
/// `branch_map[p]` is the host vertex for position `p`; `paths[p - 1]` is the
/// host path from `branch_map[parent(p)]` to `branch_map[p]`, ends included.
/// The host is kept separately; the JSON form is `{levels, branch_map, paths}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubdivisionWitness {
    pub levels: u32,
    pub branch_map: Vec<usize>,
    pub paths: Vec<Vec<usize>>,
}

fn positions(levels: u32) -> usize {
    (1usize << levels) - 1
}

impl SubdivisionWitness {
    /// `B_d` mapped onto itself (host must be `complete_binary(d)`).
    pub fn identity(levels: u32) -> Self {
        let n = positions(levels);
        Self {
            levels,
            branch_map: (0..n).collect(),
            paths: (1..n).map(|p| vec![(p - 1) / 2, p]).collect(),
        }
    }

    /// `B_1` on a single host vertex.
    pub fn single(v: usize) -> Self {
        Self {
            levels: 1,
            branch_map: vec![v],
            paths: Vec::new(),
        }
    }

    /// A new root joined to two witnesses of equal depth. `left_path` runs
    /// from `root` to `left.root()`, `right_path` likewise.
    pub fn join(
        root: usize,
        left_path: Vec<usize>,
        left: &Self,
        right_path: Vec<usize>,
        right: &Self,
    ) -> Self {
        assert_eq!(left.levels, right.levels, "joined witnesses must have equal depth");
        let levels = left.levels + 1;
        let mut branch_map = vec![root];
        let mut paths = Vec::with_capacity(positions(levels) - 1);
        for depth in 0..left.levels {
            let lo = positions(depth);
            let hi = positions(depth + 1);
            for side in [left, right] {
                branch_map.extend_from_slice(&side.branch_map[lo..hi]);
            }
        }
        // paths of the new tree in heap order: depth-1 edges first
        paths.push(left_path);
        paths.push(right_path);
        for depth in 1..left.levels {
            let lo = positions(depth);
            let hi = positions(depth + 1);
            for side in [left, right] {
                paths.extend(side.paths[lo - 1..hi - 1].iter().cloned());
            }
        }
        Self {
            levels,
            branch_map,
            paths,
        }
    }

    pub fn root(&self) -> usize {
        self.branch_map[0]
    }

    /// Host path attached to the edge above position `p` (p >= 1).
    pub fn path_to(&self, p: usize) -> &[usize] {
        &self.paths[p - 1]
    }

    /// Leaf branch vertices, left to right.
    pub fn leaves(&self) -> &[usize] {
        let first = positions(self.levels - 1);
        &self.branch_map[first..]
    }

    /// Host path from the leaf at heap position `p` up to the root branch vertex.
    pub fn path_to_root(&self, mut p: usize) -> Vec<usize> {
        let mut out = vec![self.branch_map[p]];
        while p > 0 {
            let seg = self.path_to(p);
            out.extend(seg[..seg.len() - 1].iter().rev());
            p = (p - 1) / 2;
        }
        out
    }

    /// The top `levels` levels of this witness.
    pub fn truncated(&self, levels: u32) -> Self {
        assert!(levels >= 1 && levels <= self.levels);
        let n = positions(levels);
        Self {
            levels,
            branch_map: self.branch_map[..n].to_vec(),
            paths: self.paths[..n - 1].to_vec(),
        }
    }

    /// The `B_{levels-1}` hanging below child `side` (0 = left, 1 = right) of the root.
    pub fn child_subwitness(&self, side: usize) -> Self {
        assert!(self.levels >= 2 && side < 2);
        let sub_levels = self.levels - 1;
        let n = positions(sub_levels);
        // position q of the sub-witness sits at heap position map(q) here
        let map = |q: usize| {
            let depth = crate::tree::heap_level(q) - 1;
            let offset = q - (positions(depth));
            positions(depth + 1) + side * (1 << depth) + offset
        };
        Self {
            levels: sub_levels,
            branch_map: (0..n).map(|q| self.branch_map[map(q)]).collect(),
            paths: (1..n).map(|q| self.paths[map(q) - 1].clone()).collect(),
        }
    }

    /// Every host vertex touched by the witness.
    pub fn vertex_set(&self) -> Vec<usize> {
        let mut all: Vec<usize> = self.branch_map.clone();
        for p in &self.paths {
            all.extend(p);
        }
        all.sort_unstable();
        all.dedup();
        all
    }
}

/// Checks that the witness really is a subdivision of `B_levels` in `host`:
/// injective branch map, genuine host paths, internally disjoint paths that
/// avoid all other branch vertices.
pub fn validate_subdivision(host: &Tree, w: &SubdivisionWitness) -> Certificate {
    match check(host, w) {
        Ok(()) => Certificate::pass(None),
        Err((code, detail)) => Certificate::fail(None, code).with_detail(detail),
    }
}

fn check(host: &Tree, w: &SubdivisionWitness) -> std::result::Result<(), (&'static str, String)> {
    if w.levels == 0 || w.levels > 30 {
        return Err(("bad-levels", format!("levels = {}", w.levels)));
    }
    let m = positions(w.levels);
    if w.branch_map.len() != m {
        return Err((
            "bad-shape",
            format!("branch_map has {} entries, B_{} has {m}", w.branch_map.len(), w.levels),
        ));
    }
    if w.paths.len() != m - 1 {
        return Err(("bad-shape", format!("{} paths for {} tree edges", w.paths.len(), m - 1)));
    }
    let n = host.n();
    // owner[v]: which element claims host vertex v (branch p -> p, path interior of p -> m + p)
    let mut owner = vec![usize::MAX; n];
    for (p, &v) in w.branch_map.iter().enumerate() {
        if v >= n {
            return Err(("vertex-out-of-range", format!("position {p} maps to {v}")));
        }
        if owner[v] != usize::MAX {
            return Err((
                "branch-map-not-injective",
                format!("positions {} and {p} both map to {v}", owner[v]),
            ));
        }
        owner[v] = p;
    }
    for p in 1..m {
        let path = &w.paths[p - 1];
        let (a, b) = (w.branch_map[(p - 1) / 2], w.branch_map[p]);
        if path.len() < 2 || path[0] != a || path[path.len() - 1] != b {
            return Err((
                "path-endpoints",
                format!("path for position {p} must run from {a} to {b}"),
            ));
        }
        for win in path.windows(2) {
            if win[0] >= n || win[1] >= n || !host.are_adjacent(win[0], win[1]) {
                return Err((
                    "not-a-host-path",
                    format!("path for position {p} uses non-edge ({}, {})", win[0], win[1]),
                ));
            }
        }
        for &v in &path[1..path.len() - 1] {
            if owner[v] != usize::MAX {
                let clash = if owner[v] < m {
                    format!("branch vertex of position {}", owner[v])
                } else {
                    format!("interior of the path to position {}", owner[v] - m)
                };
                return Err((
                    "paths-not-disjoint",
                    format!("vertex {v} inside the path to position {p} is also the {clash}"),
                ));
            }
            owner[v] = m + p;
        }
    }
    Ok(())
}

/// Returns an error unless the witness validates.
pub fn ensure_valid(host: &Tree, w: &SubdivisionWitness, what: &str) -> Result<()> {
    let cert = validate_subdivision(host, w);
    if cert.passed() {
        Ok(())
    } else {
        Err(Error::Internal(format!(
            "{what}: witness rejected ({}: {})",
            cert.reason.unwrap_or_default(),
            cert.detail.unwrap_or_default()
        )))
    }
}
