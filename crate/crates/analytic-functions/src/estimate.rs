//! Windowed lower estimate of a radius of convergence from finitely many
//! coefficient sizes.

use num_traits::Zero;
use padic_field::{Val, Q};
use thiserror::Error;

/// Result of the window estimator. All radii are `log_p` exponents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadiusEstimate {
    /// `min_{n in window} v_n / n`, the estimate of `liminf |a_n|^{-1/n}`.
    pub log_radius: Q,
    pub window: (usize, usize),
    /// Nonzero coefficients inside the window.
    pub samples: usize,
    pub min_log: Q,
    pub max_log: Q,
    /// Change of `v_n / n` per index between the first and last sample.
    pub slope: Q,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("every coefficient in the window {lo}..={hi} vanishes")]
pub struct Inconclusive {
    pub lo: usize,
    pub hi: usize,
}

/// The estimator window `[ceil(M/2), M]` for a sequence indexed `0..=M`.
pub fn window(m: usize) -> (usize, usize) {
    (m.div_ceil(2).max(1), m)
}

/// One estimator step in `log_p` units: `2 / M`.
pub fn estimator_tolerance(m: usize) -> Q {
    Q::new(2, m.max(1) as i64)
}

/// `vals[n]` is `-log_p` of the size of the `n`-th coefficient.
pub fn estimate_from_vals(vals: &[Val]) -> Result<RadiusEstimate, Inconclusive> {
    let m = vals.len().saturating_sub(1);
    let (lo, hi) = window(m);
    let mut pts: Vec<(usize, Q)> = Vec::new();
    for (n, v) in vals.iter().enumerate().take(hi + 1).skip(lo) {
        if let Val::Fin(v) = v {
            pts.push((n, *v / Q::from_integer(n as i64)));
        }
    }
    if pts.is_empty() {
        return Err(Inconclusive { lo, hi });
    }
    let min_log = pts.iter().map(|x| x.1).min().unwrap();
    let max_log = pts.iter().map(|x| x.1).max().unwrap();
    let (n0, r0) = pts[0];
    let (n1, r1) = *pts.last().unwrap();
    let slope = if n1 > n0 { (r1 - r0) / Q::from_integer((n1 - n0) as i64) } else { Q::zero() };
    Ok(RadiusEstimate { log_radius: min_log, window: (lo, hi), samples: pts.len(), min_log, max_log, slope })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_ratio() {
        // sum p^n T^n: v_n / n = 1
        let vals: Vec<Val> = (0..=20).map(|n| Val::Fin(Q::from_integer(n))).collect();
        let e = estimate_from_vals(&vals).unwrap();
        assert_eq!(e.log_radius, Q::from_integer(1));
        assert_eq!(e.window, (10, 20));
        assert_eq!(e.samples, 11);
    }

    #[test]
    fn all_zero_window() {
        let mut vals = vec![Val::Inf; 11];
        vals[0] = Val::Fin(Q::zero());
        assert_eq!(estimate_from_vals(&vals), Err(Inconclusive { lo: 5, hi: 10 }));
    }
}
