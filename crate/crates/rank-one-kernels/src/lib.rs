//! Rank-one solvable differential modules over the Robba ring: Witt vectors
//! of polynomials in `u = T^{-1}`, their pi-exponentials, the operators
//! `L(a_0, f)` and the deformed `sigma_q` matrices.
//!
//! Everything lives in the chart at infinity: series are in `u`, and
//! `delta_1 = T d/dT` acts as `-u d/du`.

mod exponential;
mod operator;
mod upoly;
mod witt;

pub use exponential::{integrality_diagnostic, pi_exponential, rank_one_deformed_matrix, DeformedRankOne, IntegralityReport, PiExponential};
pub use operator::{log_derivative, solvable_operator};
pub use upoly::UPoly;
pub use witt::{from_phantom, phantom, witt_add, witt_neg, witt_sub, WittVector};

use analytic_functions::AnalyticError;
use difference_modules::ModuleError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KernelError {
    #[error("component {0} is not integral")]
    NonIntegral(usize),
    #[error("Witt vectors of different lengths or fields")]
    Mismatch,
    #[error("a Witt vector of length {need} needs a field of level >= {level}, got {have}", level = need - 1)]
    FieldLevel { need: usize, have: i32 },
    #[error("empty Witt vector")]
    Empty,
    #[error("|q - 1| < 1 is required")]
    QNotNearOne,
    #[error(transparent)]
    Analytic(#[from] AnalyticError),
    #[error(transparent)]
    Module(#[from] ModuleError),
}
