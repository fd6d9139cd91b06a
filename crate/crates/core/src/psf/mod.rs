//! Prefix set-free families and the conflict-free colorings of complete
//! binary trees built from them; monochromatic subdivisions and the
//! parity argument that bounds odd colorings of binary trees from below.

mod construct;
mod ratio;
mod vector;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::certificate::Certificate;
use crate::error::{Error, Result};
use crate::hypergraph::subsets;

pub use construct::{cf_b7_explicit, cf_b7_iterated, cf_color_from_psf, b7_family, MAX_PSF_LEVELS};
pub use ratio::{entropy2, optimize_ratio, RatioOptimum};
pub use vector::{binary_odd_refuter, mono_subdivision_vector, MonoVector};

/// A sequence of distinct elements of `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct OrderedSet(Vec<u32>);

impl OrderedSet {
    pub fn new(elements: Vec<u32>, n: u32) -> Result<Self> {
        let mut seen = vec![false; n as usize + 1];
        for &e in &elements {
            if e == 0 || e > n {
                return Err(Error::Instance(format!("element {e} outside 1..={n}")));
            }
            if std::mem::replace(&mut seen[e as usize], true) {
                return Err(Error::Instance(format!("element {e} repeated in {elements:?}")));
            }
        }
        Ok(Self(elements))
    }

    pub fn elements(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn as_key(prefix: &[u32]) -> Vec<u32> {
        let mut k = prefix.to_vec();
        k.sort_unstable();
        k
    }
}

/// A family of ordered sets over `1..=n` with its parameters: `k` is the
/// shortest set length and `2^d <= |F|`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PsfFamily {
    pub n: u32,
    pub sets: Vec<OrderedSet>,
    pub k: u32,
    pub d: u32,
}

impl PsfFamily {
    /// Takes `k` as the shortest length and `d = floor(log2 |F|)`.
    pub fn new(n: u32, sets: Vec<Vec<u32>>) -> Result<Self> {
        if sets.is_empty() {
            return Err(Error::Instance("family is empty".into()));
        }
        let sets = sets
            .into_iter()
            .map(|s| OrderedSet::new(s, n))
            .collect::<Result<Vec<_>>>()?;
        let k = sets.iter().map(OrderedSet::len).min().unwrap() as u32;
        let d = sets.len().ilog2();
        Ok(Self { n, sets, k, d })
    }

    /// Declares a smaller capacity exponent.
    pub fn with_d(mut self, d: u32) -> Result<Self> {
        if d > self.sets.len().ilog2() {
            return Err(Error::Precondition(format!(
                "{} sets cannot support d = {d}",
                self.sets.len()
            )));
        }
        self.d = d;
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn max_len(&self) -> usize {
        self.sets.iter().map(OrderedSet::len).max().unwrap_or(0)
    }
}

/// Passes iff no prefix of any member equals another member as a set.
/// Prefixes include the whole sequence, so members must also differ as sets.
pub fn is_prefix_set_free(f: &PsfFamily) -> Certificate {
    let mut by_set: HashMap<Vec<u32>, Vec<usize>> = HashMap::new();
    for (i, s) in f.sets.iter().enumerate() {
        by_set.entry(OrderedSet::as_key(s.elements())).or_default().push(i);
    }
    for (i, a) in f.sets.iter().enumerate() {
        for len in 1..=a.len() {
            let prefix = &a.elements()[..len];
            if let Some(js) = by_set.get(&OrderedSet::as_key(prefix)) {
                if let Some(&j) = js.iter().find(|&&j| j != i) {
                    return Certificate::fail(None, "prefix-matches-member").with_detail(format!(
                        "prefix {prefix:?} of member {i} equals member {j} {:?} as a set",
                        f.sets[j].elements()
                    ));
                }
            }
        }
    }
    Certificate::pass(None)
}

/// All `k`-subsets of `1..=n`, each in increasing order, with
/// `d = floor(log2 C(n, k))`.
pub fn psf_from_ksubsets(n: u32, k: u32) -> Result<PsfFamily> {
    if k == 0 || k > n {
        return Err(Error::Precondition(format!("need 1 <= k <= n, got n={n}, k={k}")));
    }
    if binomial(n, k) > 1 << 20 {
        return Err(Error::Capacity(format!("C({n}, {k}) sets is too many")));
    }
    let sets = subsets(n as usize, k as usize)
        .map(|s| s.into_iter().map(|e| e as u32 + 1).collect())
        .collect();
    PsfFamily::new(n, sets)
}

pub fn binomial(n: u32, k: u32) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Both sides of `d <= log2 sum_{i=k}^{n} C(n, i)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CapacityBound {
    pub d: u32,
    pub log2_bound: f64,
}

/// Checks the counting bound for a prefix set-free family. A violation
/// means the checker and the bound disagree, which is reported as an
/// internal error.
pub fn psf_capacity_bound(f: &PsfFamily) -> Result<CapacityBound> {
    let cert = is_prefix_set_free(f);
    if !cert.passed() {
        return Err(Error::Rejected {
            reason: "family is not prefix set-free".into(),
            certificate: Box::new(cert),
        });
    }
    let total: u128 = (f.k..=f.n).map(|i| binomial(f.n, i)).sum();
    let log2_bound = (total as f64).log2();
    if f.d as f64 > log2_bound + 1e-12 {
        return Err(Error::Internal(format!(
            "d = {} exceeds log2 {total} = {log2_bound}",
            f.d
        )));
    }
    Ok(CapacityBound { d: f.d, log2_bound })
}
