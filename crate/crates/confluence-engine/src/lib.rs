//! Deformation of differential equations into families of q-difference
//! equations sharing one Taylor solution, confluence back to the
//! differential equation, admissibility, and Frobenius pullback.

mod admissible;
mod confluence;
mod family;
mod frobenius;

pub use admissible::{best_admissibility, check_admissible, shilov_radius, AdmissibilityReport};
pub use confluence::{confluence, iterated_limit, roundtrip_check, ConfluenceMode, ConfluenceResult, IteratedDiagnostic, RoundtripReport};
pub use family::{deform, deform_between, family_polynomial, Deformation, DeformationFamily, Gate};
pub use frobenius::{
    derive_frobenius_witness, frobenius_domain, frobenius_pullback, frobenius_radius_law, verify_frobenius_structure,
    FrobeniusCheck, FrobeniusWitness,
};

use difference_modules::ModuleError;
use padic_field::Q;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConfluenceError {
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error("not admissible: {0}")]
    NotAdmissible(String),
    #[error("admissibility undecided: the radius estimate is inconclusive")]
    Inconclusive,
    #[error("q is a root of unity of order {0}")]
    RootOfUnity(u64),
    #[error("iterated limit does not stabilise: difference valuations {0:?}")]
    Diverged(Vec<Q>),
    #[error("unsupported: {0}")]
    Unsupported(&'static str),
}

impl From<analytic_functions::AnalyticError> for ConfluenceError {
    fn from(e: analytic_functions::AnalyticError) -> ConfluenceError {
        ConfluenceError::Module(ModuleError::Analytic(e))
    }
}
