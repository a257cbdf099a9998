use std::sync::Arc;

use affinoid_geometry::Affinoid;
use analytic_functions::AnalyticFunction;
use difference_modules::{DiffEquation, FnMatrix};
use padic_field::PAdic;

use crate::upoly::UPoly;
use crate::witt::WittVector;
use crate::KernelError;

/// `sum_j pi_{s-j} sum_{i<=j} f_i^{p^{j-i}} delta_1(f_i) / f_i`, as a
/// polynomial in `u`. It equals `delta_1(e) / e` for the pi-exponential `e`.
pub fn log_derivative(w: &WittVector) -> Result<UPoly, KernelError> {
    let f = w.field();
    let s = w.level();
    if f.level() < s as i32 {
        return Err(KernelError::FieldLevel { need: w.len(), have: f.level() });
    }
    let p = f.p();
    let comps = w.components();
    let mut acc = UPoly::zero(f);
    for j in 0..=s {
        let pi = PAdic::pi_j(f, (s - j) as i32).expect("level checked");
        let mut inner = UPoly::zero(f);
        for (i, fi) in comps.iter().enumerate().take(j + 1) {
            // f^{e-1} delta_1(f), with delta_1 = -u d/du
            let e = p.pow((j - i) as u32);
            inner = inner.sub(&fi.pow(e - 1).mul(&fi.euler()));
        }
        acc = acc.add(&inner.scale(&pi));
    }
    Ok(acc)
}

/// `delta_1 - G_1` with `G_1 = a_0 + log_derivative(w)`, whose solution at
/// infinity is `T^{a_0}` times the pi-exponential of `w`. The domain must
/// have a hole at 0.
pub fn solvable_operator(a0: &PAdic, w: &WittVector, dom: &Arc<Affinoid>, m: usize) -> Result<DiffEquation, KernelError> {
    let ld = log_derivative(w)?;
    let mut g = AnalyticFunction::constant(dom, a0.clone(), m);
    for (k, c) in ld.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let t = AnalyticFunction::monomial(dom, -(k as i64), m)?;
        g = g.add(&t.scale(c));
    }
    Ok(DiffEquation::new(dom, FnMatrix::scalar(g))?)
}
