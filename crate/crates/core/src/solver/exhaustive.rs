//! Unrestricted enumeration of all `k^n` colorings. Deliberately naive: it
//! serves as the reference the pruned searches are checked against.

use crate::coloring::{Color, Coloring, ColoringKind};
use crate::error::{Error, Result};
use crate::hypergraph::{is_valid, Hypergraph};

const MAX_ASSIGNMENTS: f64 = 5e7;

/// First coloring in odometer order (vertex 0 fastest) valid for `kind`.
pub fn exists_coloring_exhaustive(
    h: &Hypergraph,
    kind: ColoringKind,
    k: Color,
) -> Result<Option<Coloring>> {
    let n = h.n();
    if k == 0 {
        return Ok(None);
    }
    if (k as f64).powi(n as i32) > MAX_ASSIGNMENTS {
        return Err(Error::Capacity(format!("{k}^{n} colorings is too many to enumerate")));
    }
    let mut colors = vec![1; n];
    loop {
        let c = Coloring::new(colors.clone(), k)?;
        if is_valid(h, &c, kind)?.passed() {
            return Ok(Some(c));
        }
        let mut i = 0;
        loop {
            if i == n {
                return Ok(None);
            }
            if colors[i] < k {
                colors[i] += 1;
                break;
            }
            colors[i] = 1;
            i += 1;
        }
    }
}

/// Smallest `k <= max_colors` admitting a valid coloring, if any.
pub fn chromatic_number_exhaustive(
    h: &Hypergraph,
    kind: ColoringKind,
    max_colors: Color,
) -> Result<Option<(Color, Coloring)>> {
    if h.n() == 0 {
        return Ok(Some((0, Coloring::new(vec![], 1)?)));
    }
    for k in 1..=max_colors {
        if let Some(c) = exists_coloring_exhaustive(h, kind, k)? {
            return Ok(Some((k, c)));
        }
    }
    Ok(None)
}
