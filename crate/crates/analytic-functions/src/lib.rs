//! Truncated analytic functions: power series on disks, Mittag-Leffler
//! expansions on affinoids, Gauss norms, the operators `sigma_q`, `d/dT`,
//! `delta_1`, `d_q`, and radius-of-convergence estimates.

pub mod coeffs;
mod estimate;
mod function;
mod series;

use thiserror::Error;

pub use estimate::{estimate_from_vals, estimator_tolerance, window, Inconclusive, RadiusEstimate};
pub use function::{same_domain, AnalyticFunction};
pub use series::{exp_element, exp_series, log1p_element, log1p_series, DiskSeries, GaussNorm};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AnalyticError {
    #[error("the domain is not mapped onto itself by x -> q x")]
    NotInvariant,
    #[error("q = 1 has no q-derivative")]
    QIsOne,
    #[error("(c, rho) is not a generic point of the domain")]
    OutsideValidity,
    #[error("point outside the domain")]
    NotInDomain,
    #[error("pole inside the domain")]
    PoleInDomain,
    #[error("function does not vanish at the requested point")]
    NotDivisible,
    #[error("exponential diverges: |g(c)| >= omega")]
    ExpDiverges,
    #[error("logarithm diverges: |g(c)| >= 1")]
    LogDiverges,
    #[error("function is not invertible at this truncation")]
    NotInvertible,
    #[error("unsupported: {0}")]
    Unsupported(&'static str),
}
