use padic_field::{Field, PAdic};

use crate::upoly::UPoly;
use crate::KernelError;

/// `(f_0, ..., f_s)` with integral components in `u O_{K}[u]`.
#[derive(Clone, Debug)]
pub struct WittVector {
    comps: Vec<UPoly>,
}

impl WittVector {
    pub fn new(comps: Vec<UPoly>) -> Result<WittVector, KernelError> {
        let first = comps.first().ok_or(KernelError::Empty)?;
        let f = first.field().clone();
        for (i, c) in comps.iter().enumerate() {
            if !c.field().same_field(&f) {
                return Err(KernelError::Mismatch);
            }
            if !c.is_integral() {
                return Err(KernelError::NonIntegral(i));
            }
        }
        Ok(WittVector { comps })
    }

    /// Components need not be integral; the pi-exponential of such a
    /// vector is still defined formally.
    pub fn new_unchecked(comps: Vec<UPoly>) -> WittVector {
        assert!(!comps.is_empty(), "empty Witt vector");
        WittVector { comps }
    }

    pub fn zero(f: &Field, len: usize) -> WittVector {
        WittVector { comps: vec![UPoly::zero(f); len] }
    }

    pub fn field(&self) -> &Field {
        self.comps[0].field()
    }

    pub fn len(&self) -> usize {
        self.comps.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `s`, the index of the last component.
    pub fn level(&self) -> usize {
        self.comps.len() - 1
    }

    pub fn components(&self) -> &[UPoly] {
        &self.comps
    }

    pub fn is_integral(&self) -> bool {
        self.comps.iter().all(|c| c.is_integral())
    }

    /// Componentwise `f_i(lambda u)`; a ring map, so Witt-compatible.
    pub fn dilate(&self, lambda: &PAdic) -> WittVector {
        WittVector { comps: self.comps.iter().map(|c| c.dilate(lambda)).collect() }
    }

    pub fn lift(&self, g: &Field) -> WittVector {
        WittVector { comps: self.comps.iter().map(|c| c.lift(g)).collect() }
    }
}

fn p_power(f: &Field, i: usize) -> PAdic {
    PAdic::p_power(f, i as i64)
}

/// `phi_j = sum_{i <= j} p^i f_i^{p^{j-i}}`.
pub fn phantom(w: &WittVector) -> Vec<UPoly> {
    let f = w.field();
    let p = f.p();
    (0..w.len())
        .map(|j| {
            (0..=j).fold(UPoly::zero(f), |acc, i| acc.add(&w.comps[i].pow(p.pow((j - i) as u32)).scale(&p_power(f, i))))
        })
        .collect()
}

/// Triangular inversion `f_j = (phi_j - sum_{i<j} p^i f_i^{p^{j-i}}) / p^j`;
/// fails unless every component comes out integral.
pub fn from_phantom(phi: &[UPoly]) -> Result<WittVector, KernelError> {
    if phi.is_empty() {
        return Err(KernelError::Empty);
    }
    WittVector::new(from_phantom_raw(phi).comps)
}

pub(crate) fn from_phantom_raw(phi: &[UPoly]) -> WittVector {
    let f = phi[0].field().clone();
    let p = f.p();
    let mut comps: Vec<UPoly> = Vec::with_capacity(phi.len());
    for (j, ph) in phi.iter().enumerate() {
        let mut r = ph.clone();
        for (i, c) in comps.iter().enumerate() {
            r = r.sub(&c.pow(p.pow((j - i) as u32)).scale(&p_power(&f, i)));
        }
        comps.push(r.scale(&PAdic::p_power(&f, -(j as i64))));
    }
    WittVector { comps }
}

fn check(a: &WittVector, b: &WittVector) -> Result<(), KernelError> {
    if a.len() != b.len() || !a.field().same_field(b.field()) {
        return Err(KernelError::Mismatch);
    }
    Ok(())
}

pub fn witt_add(a: &WittVector, b: &WittVector) -> Result<WittVector, KernelError> {
    check(a, b)?;
    let s: Vec<UPoly> = phantom(a).iter().zip(phantom(b)).map(|(x, y)| x.add(&y)).collect();
    from_phantom(&s)
}

pub fn witt_neg(a: &WittVector) -> Result<WittVector, KernelError> {
    let s: Vec<UPoly> = phantom(a).iter().map(|x| x.neg()).collect();
    from_phantom(&s)
}

pub fn witt_sub(a: &WittVector, b: &WittVector) -> Result<WittVector, KernelError> {
    check(a, b)?;
    let s: Vec<UPoly> = phantom(a).iter().zip(phantom(b)).map(|(x, y)| x.sub(&y)).collect();
    from_phantom(&s)
}
