//! Linear q-difference, differential and mixed systems over an affinoid:
//! the recurrences for their Taylor solutions, generic radii, tensor
//! constructions and solution checks.

mod check;
mod equation;
pub mod matrix;
mod ops;
mod radius;
mod taylor;

pub use check::{solution_check, solution_rank, Law, LawResult, SolutionReport};
pub use equation::{DiffEquation, Equation, QDiffEquation, SigmaDeltaEquation};
pub use matrix::{ConstMatrix, Entry, FnMatrix, Matrix, SeriesMatrix};
pub use ops::{dual, hom, tensor};
pub use radius::{generic_radius, radius_profile, rough_lower_bound, ProfilePoint, RadiusReport};
pub use taylor::{
    f_coefficients, g_coefficients, h_coefficients, taylor_solution_at, GenericSolution, SolutionKind, TaylorSolution,
};

use analytic_functions::AnalyticError;
use thiserror::Error;

/// Default series truncation.
pub const DEFAULT_TRUNCATION: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModuleError {
    #[error(transparent)]
    Analytic(#[from] AnalyticError),
    #[error("matrix is not square or dimensions differ")]
    Shape,
    #[error("equations live on different domains")]
    DomainMismatch,
    #[error("equations use different q")]
    QMismatch,
    #[error("equations are of different kinds")]
    KindMismatch,
    #[error("q = 1")]
    QIsOne,
    #[error("q is a root of unity of order {0}")]
    RootOfUnity(u64),
    #[error("x -> qx does not map the domain onto itself")]
    NotInvariant,
    #[error("matrix is not invertible at this truncation")]
    NotInvertible,
    #[error("point is not in the domain")]
    NotInDomain,
    #[error("radius undefined for this (q, c, rho): |q - 1| max(|c|, rho) >= rho")]
    RadiusUndefined,
    #[error("precondition violated: {0}")]
    Precondition(&'static str),
}
