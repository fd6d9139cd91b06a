//! Monochromatic binary subdivisions inside a colored subdivision of
//! `B_d`, and the parity collision they force when few colors are used.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::certificate::Certificate;
use crate::coloring::{parity_of_vertices, Color, Coloring, ColoringKind, ParityVector};
use crate::error::{Error, Result};
use crate::subdivision::{ensure_valid, SubdivisionWitness};
use crate::tree::Tree;

/// `a[i-1]` levels of a subdivision whose branch vertices all have color
/// `i`, with one witness per nonzero coordinate. The coordinates sum to `d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonoVector {
    pub a: Vec<u32>,
    pub witnesses: Vec<Option<SubdivisionWitness>>,
}

struct Skeleton<'a> {
    host: &'a Tree,
    w: &'a SubdivisionWitness,
    c: &'a Coloring,
    k: usize,
}

impl Skeleton<'_> {
    fn is_leaf(&self, p: usize) -> bool {
        2 * p + 1 >= self.w.branch_map.len()
    }

    /// Every witness built here has its root as the topmost skeleton
    /// position and stays inside that position's subtree, so paths from an
    /// ancestor down to the root never touch it.
    fn solve(&self, p: usize, height: u32) -> MonoVector {
        let v = self.w.branch_map[p];
        let color = self.c.color(v) as usize - 1;
        let mut out = MonoVector {
            a: vec![0; self.k],
            witnesses: vec![None; self.k],
        };
        if self.is_leaf(p) {
            out.a[color] = 1;
            out.witnesses[color] = Some(SubdivisionWitness::single(v));
            return out;
        }
        let left = self.solve(2 * p + 1, height - 1);
        let right = self.solve(2 * p + 2, height - 1);
        if left.a == right.a {
            out.a = left.a.clone();
            out.witnesses = left.witnesses.clone();
            out.a[color] += 1;
            out.witnesses[color] = Some(match (&left.witnesses[color], &right.witnesses[color]) {
                (Some(wl), Some(wr)) => SubdivisionWitness::join(
                    v,
                    self.host.path(v, wl.root()),
                    wl,
                    self.host.path(v, wr.root()),
                    wr,
                ),
                _ => SubdivisionWitness::single(v),
            });
            return out;
        }
        for i in 0..self.k {
            let from_left = left.a[i] >= right.a[i];
            let side = if from_left { &left } else { &right };
            out.a[i] = side.a[i];
            out.witnesses[i] = side.witnesses[i].clone();
        }
        // trim the largest coordinates (lowest color on ties) back to `height`
        while out.a.iter().sum::<u32>() > height {
            let top = *out.a.iter().max().unwrap();
            let i = out.a.iter().position(|&x| x == top).unwrap();
            out.a[i] -= 1;
            out.witnesses[i] = match out.a[i] {
                0 => None,
                lv => out.witnesses[i].as_ref().map(|w| w.truncated(lv)),
            };
        }
        out
    }
}

fn check_inputs(host: &Tree, w: &SubdivisionWitness, c: &Coloring, k: Color) -> Result<()> {
    if c.len() != host.n() {
        return Err(Error::Instance(format!(
            "coloring has {} entries for {} vertices",
            c.len(),
            host.n()
        )));
    }
    if c.max_color() > k {
        return Err(Error::Precondition(format!("color {} exceeds palette {k}", c.max_color())));
    }
    let cert = crate::subdivision::validate_subdivision(host, w);
    if !cert.passed() {
        return Err(Error::Rejected {
            reason: "subdivision witness does not validate".into(),
            certificate: Box::new(cert),
        });
    }
    Ok(())
}

/// For a `k`-coloring of a subdivision `w` of `B_d` in `host`, a vector `a`
/// with sum `d` and, per color `i` with `a_i > 0`, a subdivision of
/// `B_{a_i}` whose branch vertices all have color `i`.
pub fn mono_subdivision_vector(
    host: &Tree,
    w: &SubdivisionWitness,
    c: &Coloring,
    k: Color,
) -> Result<MonoVector> {
    check_inputs(host, w, c, k)?;
    let sk = Skeleton {
        host,
        w,
        c,
        k: k as usize,
    };
    let out = sk.solve(0, w.levels);
    if out.a.iter().sum::<u32>() != w.levels {
        return Err(Error::Internal(format!("vector {:?} does not sum to {}", out.a, w.levels)));
    }
    for (i, (&ai, wi)) in out.a.iter().zip(&out.witnesses).enumerate() {
        match wi {
            None if ai == 0 => {}
            Some(x) if x.levels == ai => {
                ensure_valid(host, x, "monochromatic subdivision")?;
                if x.branch_map.iter().any(|&v| c.color(v) as usize != i + 1) {
                    return Err(Error::Internal(format!("witness for color {} is not monochromatic", i + 1)));
                }
            }
            _ => return Err(Error::Internal(format!("witness for color {} has the wrong depth", i + 1))),
        }
    }
    Ok(out)
}

/// Looks for a path with an all-even parity vector, proving `c` is not an
/// odd coloring. Such a path is guaranteed when `k^2 < d`: some color `i`
/// has `a_i >= d/k`, and among the `2^(a_i - 1)` leaf-to-root paths of its
/// monochromatic `B_{a_i}` two share a parity vector (or one is all even).
/// The two paths joined at their meeting vertex, minus one end, are all even.
///
/// Returns a failing certificate naming the path, or a passing one with
/// reason `no-refutation-forced` when nothing was found and `k^2 >= d`.
pub fn binary_odd_refuter(
    host: &Tree,
    w: &SubdivisionWitness,
    c: &Coloring,
    k: Color,
) -> Result<Certificate> {
    let mv = mono_subdivision_vector(host, w, c, k)?;
    let d = w.levels;
    let best = *mv.a.iter().max().unwrap();
    let i = mv.a.iter().position(|&x| x == best).unwrap();
    debug_assert!(best * k >= d);
    let mono = mv.witnesses[i].as_ref().expect("largest coordinate is positive");
    let first_leaf = (1usize << (mono.levels - 1)) - 1;
    let leaves: Vec<usize> = (first_leaf..mono.branch_map.len()).collect();
    let mut first_with: HashMap<ParityVector, usize> = HashMap::new();
    // lexicographically first pair (q, p) of leaves with equal vectors
    let mut pair: Option<(usize, usize)> = None;
    let mut found: Option<Vec<usize>> = None;
    for &p in &leaves {
        let up = mono.path_to_root(p);
        let pv = parity_of_vertices(c, &up)?;
        if pv.is_zero() {
            found = Some(up);
            break;
        }
        match first_with.get(&pv) {
            Some(&q) if pair.is_none_or(|(q0, _)| q < q0) => pair = Some((q, p)),
            Some(_) => {}
            None => {
                first_with.insert(pv, p);
            }
        }
    }
    if let (None, Some((q, p))) = (&found, pair) {
        // leaf q ... meeting vertex ... leaf p, dropping leaf q
        let path = host.path(mono.branch_map[q], mono.branch_map[p]);
        found = Some(path[1..].to_vec());
    }
    match found {
        Some(path) => {
            let pv = parity_of_vertices(c, &path)?;
            if !pv.is_zero() {
                return Err(Error::Internal(format!("refuting path has parity {pv}")));
            }
            let (a, b) = (path[0], *path.last().unwrap());
            Ok(Certificate::violation(ColoringKind::Odd, path)
                .with_endpoints(a.min(b), a.max(b))
                .with_detail(format!("color {} spans B_{best}", i + 1)))
        }
        None if (k as u64).pow(2) < d as u64 => Err(Error::Internal(format!(
            "no parity collision among {} paths with {k} colors",
            leaves.len()
        ))),
        None => Ok(Certificate::pass(Some(ColoringKind::Odd)).with_reason("no-refutation-forced")),
    }
}
