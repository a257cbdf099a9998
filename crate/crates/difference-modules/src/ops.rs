use crate::equation::{DiffEquation, Equation, QDiffEquation, SigmaDeltaEquation};
use crate::matrix::FnMatrix;
use crate::ModuleError;
use analytic_functions::same_domain;

fn compatible(a: &Equation, b: &Equation) -> Result<(), ModuleError> {
    if !same_domain(a.domain(), b.domain()) {
        return Err(ModuleError::DomainMismatch);
    }
    match (a.q(), b.q()) {
        (Some(x), Some(y)) if !(x - y).is_zero() => Err(ModuleError::QMismatch),
        _ => Ok(()),
    }
}

fn kron_sum(g1: &FnMatrix, g2: &FnMatrix) -> FnMatrix {
    g1.kron(&g2.identity_like()).add(&g1.identity_like().kron(g2))
}

fn q_tensor(a: &QDiffEquation, b: &QDiffEquation) -> Result<QDiffEquation, ModuleError> {
    QDiffEquation::new(a.domain(), a.q().clone(), a.matrix().kron(b.matrix()))
}

// sigma(Z) = A_2 Z A_1^{-1}, flattened row by row
fn q_hom(a: &QDiffEquation, b: &QDiffEquation) -> Result<QDiffEquation, ModuleError> {
    QDiffEquation::new(a.domain(), a.q().clone(), b.matrix().kron(&a.inverse_matrix().transpose()))
}

fn d_tensor(a: &DiffEquation, b: &DiffEquation) -> Result<DiffEquation, ModuleError> {
    DiffEquation::new(a.domain(), kron_sum(a.matrix(), b.matrix()))
}

// delta(Z) = G_2 Z - Z G_1
fn d_hom(a: &DiffEquation, b: &DiffEquation) -> Result<DiffEquation, ModuleError> {
    let g = b.matrix().kron(&a.matrix().identity_like()).sub(&b.matrix().identity_like().kron(&a.matrix().transpose()));
    DiffEquation::new(a.domain(), g)
}

pub fn tensor(a: &Equation, b: &Equation) -> Result<Equation, ModuleError> {
    compatible(a, b)?;
    Ok(match (a, b) {
        (Equation::Q(x), Equation::Q(y)) => Equation::Q(q_tensor(x, y)?),
        (Equation::D(x), Equation::D(y)) => Equation::D(d_tensor(x, y)?),
        (Equation::SD(x), Equation::SD(y)) => Equation::SD(SigmaDeltaEquation::from_parts(
            q_tensor(x.q_part(), y.q_part())?,
            d_tensor(x.d_part(), y.d_part())?,
        )?),
        _ => return Err(ModuleError::KindMismatch),
    })
}

/// `Hom(a, b)`.
pub fn hom(a: &Equation, b: &Equation) -> Result<Equation, ModuleError> {
    compatible(a, b)?;
    Ok(match (a, b) {
        (Equation::Q(x), Equation::Q(y)) => Equation::Q(q_hom(x, y)?),
        (Equation::D(x), Equation::D(y)) => Equation::D(d_hom(x, y)?),
        (Equation::SD(x), Equation::SD(y)) => {
            Equation::SD(SigmaDeltaEquation::from_parts(q_hom(x.q_part(), y.q_part())?, d_hom(x.d_part(), y.d_part())?)?)
        }
        _ => return Err(ModuleError::KindMismatch),
    })
}

/// `Hom(e, 1)`.
pub fn dual(e: &Equation) -> Result<Equation, ModuleError> {
    let m = match e {
        Equation::Q(x) => x.order(),
        Equation::D(x) => x.order(),
        Equation::SD(x) => x.d_part().order(),
    };
    let dom = e.domain();
    let unit = match e {
        Equation::Q(x) => Equation::Q(QDiffEquation::unit(dom, x.q().clone(), 1, m)?),
        Equation::D(_) => Equation::D(DiffEquation::unit(dom, 1, m)),
        Equation::SD(x) => Equation::SD(SigmaDeltaEquation::from_parts(
            QDiffEquation::unit(dom, x.q().clone(), 1, m)?,
            DiffEquation::unit(dom, 1, m),
        )?),
    };
    hom(e, &unit)
}
