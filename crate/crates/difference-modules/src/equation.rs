use std::sync::Arc;

use affinoid_geometry::{hole_permutation, Affinoid};
use analytic_functions::{same_domain, AnalyticFunction};
use padic_field::{PAdic, Q};

use crate::matrix::FnMatrix;
use crate::ModuleError;

fn check_domain(dom: &Arc<Affinoid>, m: &FnMatrix) -> Result<(), ModuleError> {
    if m.entries().iter().all(|f| same_domain(f.domain(), dom)) {
        Ok(())
    } else {
        Err(ModuleError::DomainMismatch)
    }
}

/// Inverse of `a`, accepted only if `a a^{-1} = 1` to half the working precision.
fn certify_invertible(a: &FnMatrix) -> Result<FnMatrix, ModuleError> {
    let inv = a.inverse()?;
    let half = Q::from_integer(a.get(0, 0).field().precision() as i64 / 2);
    if a.mul(&inv).agreement(&a.identity_like()) < half {
        return Err(ModuleError::NotInvertible);
    }
    Ok(inv)
}

/// `sigma_q(Y) = A(q, T) Y`.
#[derive(Clone, Debug)]
pub struct QDiffEquation {
    dom: Arc<Affinoid>,
    q: PAdic,
    a: FnMatrix,
    a_inv: FnMatrix,
}

impl QDiffEquation {
    pub fn new(dom: &Arc<Affinoid>, q: PAdic, a: FnMatrix) -> Result<QDiffEquation, ModuleError> {
        check_domain(dom, &a)?;
        if hole_permutation(dom, &q).is_none() {
            return Err(ModuleError::NotInvariant);
        }
        let a_inv = certify_invertible(&a)?;
        Ok(QDiffEquation { dom: dom.clone(), q, a, a_inv })
    }

    /// The unit object of rank `n`.
    pub fn unit(dom: &Arc<Affinoid>, q: PAdic, n: usize, m: usize) -> Result<QDiffEquation, ModuleError> {
        let a = FnMatrix::identity(n, &AnalyticFunction::zero(dom, m));
        QDiffEquation::new(dom, q, a)
    }

    pub fn domain(&self) -> &Arc<Affinoid> {
        &self.dom
    }

    pub fn q(&self) -> &PAdic {
        &self.q
    }

    pub fn matrix(&self) -> &FnMatrix {
        &self.a
    }

    pub fn inverse_matrix(&self) -> &FnMatrix {
        &self.a_inv
    }

    pub fn rank(&self) -> usize {
        self.a.dim()
    }

    pub fn order(&self) -> usize {
        self.a.order()
    }

    /// `A(q^k, T) = A(q, q^{k-1} T) ... A(q, qT) A(q, T)`.
    pub fn iterate(&self, k: u64) -> Result<FnMatrix, ModuleError> {
        let mut acc = self.a.identity_like();
        let mut s = self.a.clone();
        for i in 0..k {
            acc = s.mul(&acc);
            if i + 1 < k {
                s = s.sigma_q(&self.q)?;
            }
        }
        Ok(acc)
    }

    /// The equation of `sigma_{q^k}`.
    pub fn power(&self, k: u64) -> Result<QDiffEquation, ModuleError> {
        QDiffEquation::new(&self.dom, self.q.pow(k), self.iterate(k)?)
    }
}

/// `delta_1(Y) = G_1(T) Y` with `delta_1 = T d/dT`.
#[derive(Clone, Debug)]
pub struct DiffEquation {
    dom: Arc<Affinoid>,
    g1: FnMatrix,
}

impl DiffEquation {
    pub fn new(dom: &Arc<Affinoid>, g1: FnMatrix) -> Result<DiffEquation, ModuleError> {
        check_domain(dom, &g1)?;
        Ok(DiffEquation { dom: dom.clone(), g1 })
    }

    pub fn unit(dom: &Arc<Affinoid>, n: usize, m: usize) -> DiffEquation {
        let z = AnalyticFunction::zero(dom, m);
        DiffEquation { dom: dom.clone(), g1: FnMatrix::from_fn(n, |_, _| z.clone()) }
    }

    pub fn domain(&self) -> &Arc<Affinoid> {
        &self.dom
    }

    pub fn matrix(&self) -> &FnMatrix {
        &self.g1
    }

    pub fn rank(&self) -> usize {
        self.g1.dim()
    }

    pub fn order(&self) -> usize {
        self.g1.order()
    }
}

/// `sigma_q(Y) = A Y` together with `delta_1(Y) = G_1 Y`. Compatibility of
/// the two is not assumed.
#[derive(Clone, Debug)]
pub struct SigmaDeltaEquation {
    q_part: QDiffEquation,
    d_part: DiffEquation,
}

impl SigmaDeltaEquation {
    pub fn new(dom: &Arc<Affinoid>, q: PAdic, a: FnMatrix, g1: FnMatrix) -> Result<SigmaDeltaEquation, ModuleError> {
        if a.dim() != g1.dim() {
            return Err(ModuleError::Shape);
        }
        Ok(SigmaDeltaEquation { q_part: QDiffEquation::new(dom, q, a)?, d_part: DiffEquation::new(dom, g1)? })
    }

    pub fn from_parts(q_part: QDiffEquation, d_part: DiffEquation) -> Result<SigmaDeltaEquation, ModuleError> {
        if !same_domain(q_part.domain(), d_part.domain()) {
            return Err(ModuleError::DomainMismatch);
        }
        if q_part.rank() != d_part.rank() {
            return Err(ModuleError::Shape);
        }
        Ok(SigmaDeltaEquation { q_part, d_part })
    }

    pub fn q_part(&self) -> &QDiffEquation {
        &self.q_part
    }

    pub fn d_part(&self) -> &DiffEquation {
        &self.d_part
    }

    pub fn domain(&self) -> &Arc<Affinoid> {
        self.q_part.domain()
    }

    pub fn q(&self) -> &PAdic {
        self.q_part.q()
    }

    pub fn a(&self) -> &FnMatrix {
        self.q_part.matrix()
    }

    pub fn g1(&self) -> &FnMatrix {
        self.d_part.matrix()
    }

    /// Matrix of `delta_q = sigma_q o delta_1`: `G(q, T) = G_1(qT) A(q, T)`.
    pub fn g_q(&self) -> Result<FnMatrix, ModuleError> {
        Ok(self.g1().sigma_q(self.q())?.mul(self.a()))
    }

    /// `v(delta_1(A) - G_1(qT) A + A G_1)`: both laws can hold at once only
    /// if this vanishes.
    pub fn compatibility_defect(&self) -> Result<Q, ModuleError> {
        let lhs = self.a().delta1();
        let rhs = self.g_q()?.sub(&self.a().mul(self.g1()));
        Ok(lhs.agreement(&rhs))
    }
}

#[derive(Clone, Debug)]
pub enum Equation {
    Q(QDiffEquation),
    D(DiffEquation),
    SD(SigmaDeltaEquation),
}

impl Equation {
    pub fn domain(&self) -> &Arc<Affinoid> {
        match self {
            Equation::Q(e) => e.domain(),
            Equation::D(e) => e.domain(),
            Equation::SD(e) => e.domain(),
        }
    }

    pub fn q(&self) -> Option<&PAdic> {
        match self {
            Equation::Q(e) => Some(e.q()),
            Equation::D(_) => None,
            Equation::SD(e) => Some(e.q()),
        }
    }

    pub fn rank(&self) -> usize {
        match self {
            Equation::Q(e) => e.rank(),
            Equation::D(e) => e.rank(),
            Equation::SD(e) => e.q_part().rank(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Equation::Q(_) => "q-difference",
            Equation::D(_) => "differential",
            Equation::SD(_) => "sigma-delta",
        }
    }
}

impl From<QDiffEquation> for Equation {
    fn from(e: QDiffEquation) -> Equation {
        Equation::Q(e)
    }
}

impl From<DiffEquation> for Equation {
    fn from(e: DiffEquation) -> Equation {
        Equation::D(e)
    }
}

impl From<SigmaDeltaEquation> for Equation {
    fn from(e: SigmaDeltaEquation) -> Equation {
        Equation::SD(e)
    }
}
