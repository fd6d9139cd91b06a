//! The limiting UM/CF ratio reachable with `k`-subset families:
//! maximize `x + H(x)` over `x` in `(0, 1)`.

use serde::{Deserialize, Serialize};

/// Binary entropy in bits, with `H(0) = H(1) = 0`.
pub fn entropy2(x: f64) -> f64 {
    let term = |p: f64| if p <= 0.0 { 0.0 } else { -p * p.log2() };
    term(x) + term(1.0 - x)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RatioOptimum {
    /// Closed form: the derivative `1 + log2((1-x)/x)` vanishes at `x = 2/3`.
    pub x_star: f64,
    pub value: f64,
    /// Best point of a grid search over `(0, 1)`.
    pub grid_x: f64,
    pub grid_value: f64,
    pub grid_step: f64,
}

pub fn optimize_ratio() -> RatioOptimum {
    let x_star = 2.0 / 3.0;
    let value = x_star + entropy2(x_star);
    let grid_step: f64 = 1e-6;
    let steps = (1.0 / grid_step).round() as u64;
    let (grid_x, grid_value) = (1..steps)
        .map(|i| {
            let x = i as f64 * grid_step;
            (x, x + entropy2(x))
        })
        .fold((0.0, f64::NEG_INFINITY), |best, cur| if cur.1 > best.1 { cur } else { best });
    RatioOptimum {
        x_star,
        value,
        grid_x,
        grid_value,
        grid_step,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_and_grid_agree() {
        let r = optimize_ratio();
        assert!((r.x_star - 2.0 / 3.0).abs() < 1e-12);
        assert!((r.value - 3f64.log2()).abs() < 1e-12);
        assert!((r.grid_x - r.x_star).abs() <= 1e-6);
        assert!((r.grid_value - r.value).abs() <= 1e-9);
    }

    #[test]
    fn half_is_not_optimal() {
        assert!((0.5 + entropy2(0.5) - 1.5).abs() < 1e-15);
        assert!(1.5 < 3f64.log2());
    }
}
