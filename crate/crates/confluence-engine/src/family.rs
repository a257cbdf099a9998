use std::sync::Arc;

use affinoid_geometry::Affinoid;
use analytic_functions::AnalyticFunction;
use difference_modules::{Equation, FnMatrix, GenericSolution, QDiffEquation};
use padic_field::{PAdic, Q};

use crate::admissible::AdmissibilityReport;
use crate::ConfluenceError;

/// How a deformation is licensed.
#[derive(Clone, Copy, Debug)]
pub enum Gate<'a> {
    /// A passing report; `q'` must also satisfy `|q' - 1| s_X < R`.
    Certified(&'a AdmissibilityReport),
    /// Skip the check; results are marked uncertified.
    Override,
}

/// Coefficients of `prod_{k<n} (Q - q^k)` in powers of `Q`.
pub fn family_polynomial(n: usize, q: &PAdic) -> Vec<PAdic> {
    let f = q.field();
    let mut c = vec![PAdic::one(f)];
    let mut qk = PAdic::one(f);
    for _ in 0..n {
        let mut next = vec![PAdic::zero(f); c.len() + 1];
        for (i, a) in c.iter().enumerate() {
            next[i + 1] = &next[i + 1] + a;
            next[i] = &next[i] - &(a * &qk);
        }
        c = next;
        qk = &qk * q;
    }
    c
}

fn eval_poly(c: &[PAdic], x: &PAdic) -> PAdic {
    let mut acc = PAdic::zero(x.field());
    for a in c.iter().rev() {
        acc = &(&acc * x) + a;
    }
    acc
}

fn derivative_at(c: &[PAdic], x: &PAdic) -> PAdic {
    let d: Vec<PAdic> = c.iter().enumerate().skip(1).map(|(k, a)| a.scale_int(k as i64)).collect();
    eval_poly(&d, x)
}

#[derive(Clone, Debug)]
pub struct Deformation {
    pub equation: QDiffEquation,
    pub certified: bool,
}

/// `A(Q, T) = sum_n K_n(T) prod_{k<n} (Q - q^k)` with `K_n = H_n T^n / [n]_q^!`.
/// A differential source is the case `q = 1`, `K_n = G_[n] T^n / n!`.
#[derive(Clone, Debug)]
pub struct DeformationFamily {
    dom: Arc<Affinoid>,
    base_q: PAdic,
    kernels: Vec<FnMatrix>,
    report: Option<AdmissibilityReport>,
}

fn mul_fn(m: &FnMatrix, f: &AnalyticFunction) -> FnMatrix {
    m.map(|x| if x.is_zero() { x.clone() } else { x.mul(f) })
}

impl DeformationFamily {
    pub fn new(e: &Equation, m: usize, gate: Gate) -> Result<DeformationFamily, ConfluenceError> {
        let report = match gate {
            Gate::Certified(r) => {
                if !r.admissible() {
                    return Err(ConfluenceError::NotAdmissible(describe(r)));
                }
                Some(r.clone())
            }
            Gate::Override => None,
        };
        let (src, base_q) = match e {
            Equation::Q(x) => (e.clone(), x.q().clone()),
            Equation::D(_) => (e.clone(), PAdic::one(e.domain().field())),
            Equation::SD(x) => (Equation::D(x.d_part().clone()), PAdic::one(e.domain().field())),
        };
        let sol = GenericSolution::new(&src, m)?;
        let dens = sol.denominators().map_err(|e| match e {
            difference_modules::ModuleError::RootOfUnity(n) => ConfluenceError::RootOfUnity(n),
            e => e.into(),
        })?;
        let dom = e.domain().clone();
        let order = sol.coeffs()[0].order();
        let mut kernels = Vec::with_capacity(dens.len());
        for (n, (h, d)) in sol.coeffs().iter().zip(&dens).enumerate() {
            let t = AnalyticFunction::monomial(&dom, n as i64, order)?;
            let inv = d.inv().expect("nonzero denominator");
            kernels.push(mul_fn(h, &t).scale(&inv));
        }
        Ok(DeformationFamily { dom, base_q, kernels, report })
    }

    pub fn kernels(&self) -> &[FnMatrix] {
        &self.kernels
    }

    pub fn base_q(&self) -> &PAdic {
        &self.base_q
    }

    pub fn certified(&self) -> bool {
        self.report.is_some()
    }

    /// `log_p` radius `R / s_X` of the disk of admissible `q'` around 1.
    pub fn disk_of_q(&self) -> Option<Q> {
        self.report.as_ref().and_then(|r| r.r_estimate.map(|b| b - r.s_x))
    }

    pub fn matrix_at(&self, q_prime: &PAdic) -> FnMatrix {
        let mut acc = self.kernels[0].clone();
        let one = PAdic::one(q_prime.field());
        let is_one = (&self.base_q - &one).is_zero();
        let mut p = one.clone();
        let mut qk = one;
        for k in &self.kernels[1..] {
            p = &p * &(q_prime - &qk);
            if !is_one {
                qk = &qk * &self.base_q;
            }
            if p.is_zero() {
                break;
            }
            acc = acc.add(&k.scale(&p));
        }
        acc
    }

    pub fn at(&self, q_prime: &PAdic) -> Result<Deformation, ConfluenceError> {
        if let Some(r) = &self.report {
            if !r.allows(q_prime) {
                return Err(ConfluenceError::NotAdmissible("|q' - 1| s_X >= R".into()));
            }
        }
        let a = self.matrix_at(q_prime);
        Ok(Deformation { equation: QDiffEquation::new(&self.dom, q_prime.clone(), a)?, certified: self.certified() })
    }

    /// `Q d/dQ A(Q, T)` at `Q = 1`, from the family polynomials.
    pub fn derivative_at_one(&self) -> FnMatrix {
        let one = PAdic::one(self.base_q.field());
        let mut acc = self.kernels[0].map(|x| x.map_coeffs(|c| PAdic::zero(c.field())));
        for (n, k) in self.kernels.iter().enumerate().skip(1) {
            let d = derivative_at(&family_polynomial(n, &self.base_q), &one);
            if d.is_zero() {
                continue;
            }
            acc = acc.add(&k.scale(&d));
        }
        acc
    }
}

fn describe(r: &AdmissibilityReport) -> String {
    let mut v = Vec::new();
    if r.inconclusive {
        v.push("radius estimate inconclusive");
    }
    if !r.q_condition {
        v.push("|q - 1| s_X >= r");
    }
    if !r.lower {
        v.push("r > R");
    }
    if !r.upper {
        v.push("R > r_X");
    }
    v.join(", ")
}

/// `A(q', T) = sum_n G_[n](T) ((q' - 1) T)^n / n!`.
pub fn deform(e: &difference_modules::DiffEquation, q_prime: &PAdic, m: usize, gate: Gate) -> Result<Deformation, ConfluenceError> {
    DeformationFamily::new(&Equation::D(e.clone()), m, gate)?.at(q_prime)
}

/// `A(q', T) = sum_n H_n(T) T^n prod_{k<n} (q' - q^k) / [n]_q^!`.
pub fn deform_between(e: &QDiffEquation, q_prime: &PAdic, m: usize, gate: Gate) -> Result<Deformation, ConfluenceError> {
    DeformationFamily::new(&Equation::Q(e.clone()), m, gate)?.at(q_prime)
}
