//! Level-monochromatic conflict-free colorings of complete binary trees.

use crate::coloring::{Color, Coloring};
use crate::error::{Error, Result};
use crate::tree::{complete_binary, Tree};

use super::{is_prefix_set_free, PsfFamily};

/// Deepest tree the constructions will build.
pub const MAX_PSF_LEVELS: u32 = 24;

/// Heap positions of the descendants of `v` exactly `j` levels below it,
/// left to right.
fn below(v: usize, j: usize) -> std::ops::Range<usize> {
    let start = ((v + 1) << j) - 1;
    start..start + (1 << j)
}

struct Builder<'a> {
    family: &'a PsfFamily,
    rounds: u32,
    colors: Vec<Color>,
}

impl Builder<'_> {
    fn paint_level(&mut self, v: usize, j: usize, c: Color) {
        for u in below(v, j) {
            self.colors[u] = c;
        }
    }

    /// A block of `f` levels colored `1..=f` under `v`, then (while rounds
    /// remain) one family member per subtree below the block.
    fn region(&mut self, v: usize, f: usize, round: u32) {
        for j in 0..f {
            self.paint_level(v, j, j as Color + 1);
        }
        if round > self.rounds {
            return;
        }
        let (n, d, k) = (self.family.n, self.family.d, self.family.k as usize);
        let base = d + (round - 1) * n;
        for (i, u) in below(v, f).enumerate() {
            let set = self.family.sets[i].elements().to_vec();
            for (j, &e) in set.iter().enumerate() {
                self.paint_level(u, j, base + e);
            }
            let filler = k + d as usize - set.len();
            if round == self.rounds && filler == 0 {
                continue;
            }
            for w in below(u, set.len()) {
                self.region(w, filler, round + 1);
            }
        }
    }
}

/// Colors `B_{d(r+1)+kr}` from a `[k, d, n]` prefix set-free family whose
/// sets have at most `k + d` elements, using at most `nr + d` colors.
///
/// The top `d` levels get colors `1..=d`. Each of the `2^d` subtrees below
/// takes the next member in family order and colors its `i`-th level with
/// `d + element i`. The remaining `k + d - |set|` levels are again colored
/// `1, 2, ...` and act as the top block of the next round, which uses `n`
/// fresh colors.
pub fn cf_color_from_psf(f: &PsfFamily, r: u32) -> Result<(Tree, Coloring)> {
    let cert = is_prefix_set_free(f);
    if !cert.passed() {
        return Err(Error::Rejected {
            reason: "family is not prefix set-free".into(),
            certificate: Box::new(cert),
        });
    }
    if f.len() < 1 << f.d {
        return Err(Error::Precondition(format!("{} sets, 2^{} needed", f.len(), f.d)));
    }
    if let Some(s) = f.sets.iter().find(|s| s.len() > (f.k + f.d) as usize || s.len() < f.k as usize) {
        return Err(Error::Precondition(format!(
            "set {:?} has length outside [{}, {}]",
            s.elements(),
            f.k,
            f.k + f.d
        )));
    }
    let levels = f.d * (r + 1) + f.k * r;
    if levels == 0 {
        return Err(Error::Precondition("the construction would have no levels".into()));
    }
    if levels > MAX_PSF_LEVELS {
        return Err(Error::Capacity(format!("B_{levels} is deeper than {MAX_PSF_LEVELS} levels")));
    }
    let tree = complete_binary(levels)?;
    let mut b = Builder {
        family: f,
        rounds: r,
        colors: vec![0; tree.n()],
    };
    b.region(0, f.d as usize, 1);
    let palette = f.n * r + f.d;
    if let Some(v) = b.colors.iter().position(|&c| c == 0 || c > palette) {
        return Err(Error::Internal(format!("vertex {v} left with color {}", b.colors[v])));
    }
    Ok((tree, Coloring::new(b.colors, palette)?))
}

/// The family behind the 6-color coloring of `B_7`: cyclic windows of
/// length 3 over `1..=4`.
pub fn b7_family() -> PsfFamily {
    PsfFamily::new(4, vec![vec![1, 2, 3], vec![2, 3, 4], vec![3, 4, 1], vec![4, 1, 2]])
        .expect("valid ordered sets")
}

const B7_ROWS: [[Color; 5]; 4] = [
    [3, 4, 5, 1, 2],
    [4, 5, 6, 1, 2],
    [5, 6, 3, 1, 2],
    [6, 3, 4, 1, 2],
];

/// `B_7` with root 1, second level 2, and the four `B_5` subtrees colored
/// level by level as listed in `B7_ROWS`, left to right.
pub fn cf_b7_explicit() -> (Tree, Coloring) {
    let tree = complete_binary(7).expect("7 levels");
    let mut colors = vec![0; tree.n()];
    colors[0] = 1;
    colors[1] = 2;
    colors[2] = 2;
    for (q, top) in (3..7).enumerate() {
        for (j, &c) in B7_ROWS[q].iter().enumerate() {
            for u in below(top, j) {
                colors[u] = c;
            }
        }
    }
    (tree, Coloring::new(colors, 6).expect("colors 1..=6"))
}

/// `B_{5r+2}` with `4r + 2` colors: starting from `B_2` colored `1, 2`,
/// every bottom triple (a parent colored 1 with its two leaves colored 2)
/// becomes the top of a fresh copy of the `B_7` pattern using four new
/// colors.
pub fn cf_b7_iterated(r: u32) -> Result<(Tree, Coloring)> {
    let levels = 5 * r + 2;
    if levels > MAX_PSF_LEVELS {
        return Err(Error::Capacity(format!("B_{levels} is deeper than {MAX_PSF_LEVELS} levels")));
    }
    let mut colors: Vec<Color> = vec![1, 2, 2];
    let mut depth = 2usize;
    for round in 1..=r {
        let fresh = 2 + 4 * (round - 1);
        let mut next = vec![0; (1 << (depth + 5)) - 1];
        next[..colors.len()].copy_from_slice(&colors);
        let first_leaf = (1 << (depth - 1)) - 1;
        for leaf in first_leaf..colors.len() {
            let right_leaf = usize::from(leaf % 2 == 0);
            for side in 0..2 {
                let q = 2 * right_leaf + side;
                let child = 2 * leaf + 1 + side;
                let rotated = |i: u32| fresh + 1 + (q as u32 + i) % 4;
                let row = [rotated(0), rotated(1), rotated(2), 1, 2];
                for (j, &c) in row.iter().enumerate() {
                    for u in below(child, j) {
                        next[u] = c;
                    }
                }
            }
        }
        colors = next;
        depth += 5;
    }
    let tree = complete_binary(levels)?;
    Ok((tree, Coloring::new(colors, 4 * r + 2)?))
}
