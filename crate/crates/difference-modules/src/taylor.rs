use analytic_functions::{DiskSeries, Inconclusive, RadiusEstimate, estimate_from_vals};
use padic_field::{PAdic, Val};
use q_calculus::{q_factorial, QContext};

use crate::equation::{DiffEquation, Equation, QDiffEquation, SigmaDeltaEquation};
use crate::matrix::{ConstMatrix, FnMatrix, SeriesMatrix};
use crate::ModuleError;

/// `H_0 = 1`, `H_1 = (A - 1)/((q - 1) T)`, `H_{n+1} = d_q(H_n) + sigma_q(H_n) H_1`.
pub fn h_coefficients(e: &QDiffEquation, m: usize) -> Result<Vec<FnMatrix>, ModuleError> {
    let q = e.q();
    let one = PAdic::one(q.field());
    if (q - &one).is_zero() {
        return Err(ModuleError::QIsOne);
    }
    let a = e.matrix();
    let id = a.identity_like();
    let mut out = vec![id.clone()];
    if m == 0 {
        return Ok(out);
    }
    let k = (q - &one).inv().map_err(|_| ModuleError::QIsOne)?;
    let h1 = a.sub(&id).scale(&k).div_linear(&PAdic::zero(q.field()))?;
    out.push(h1.clone());
    for n in 1..m {
        let h = &out[n];
        let next = h.d_q(q)?.add(&h.sigma_q(q)?.mul(&h1));
        out.push(next);
    }
    Ok(out)
}

/// `G_[0] = 1`, `G_[1] = G_1 / T`, `G_[n+1] = G_[n]' + G_[n] G_[1]`.
pub fn g_coefficients(e: &DiffEquation, m: usize) -> Result<Vec<FnMatrix>, ModuleError> {
    let g = e.matrix();
    let mut out = vec![g.identity_like()];
    if m == 0 {
        return Ok(out);
    }
    let g1 = g.div_linear(&PAdic::zero(g.get(0, 0).field()))?;
    out.push(g1.clone());
    for n in 1..m {
        let h = &out[n];
        let next = h.ddt().add(&h.mul(&g1));
        out.push(next);
    }
    Ok(out)
}

/// Matrices of `D_q^n = (sigma_q o d/dT)^n` on solutions:
/// `F_[1] = G(q, T)/(qT)`, `F_[n+1] = sigma_q(F_[n]) F_[1] + D_q(F_[n]) A`.
pub fn f_coefficients(e: &SigmaDeltaEquation, m: usize) -> Result<Vec<FnMatrix>, ModuleError> {
    let q = e.q();
    let a = e.a();
    let mut out = vec![a.identity_like()];
    if m == 0 {
        return Ok(out);
    }
    let qinv = q.inv().map_err(|_| ModuleError::NotInvariant)?;
    let f1 = e.g_q()?.scale(&qinv).div_linear(&PAdic::zero(q.field()))?;
    out.push(f1.clone());
    for n in 1..m {
        let f = &out[n];
        let next = f.sigma_q(q)?.mul(&f1).add(&f.big_d_q(q)?.mul(a));
        out.push(next);
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolutionKind {
    /// `sum H_n(c) (x - c)_{q,n} / [n]_q^!`
    Twisted,
    /// `sum G_[n](c) (x - c)^n / n!`
    Standard,
    /// `sum F_[n](c / q^n) (x - c)^n / (n! q^{n(n-1)/2})`
    Hybrid,
}

/// The coefficient matrices of the solution as functions of the base point.
#[derive(Clone, Debug)]
pub struct GenericSolution {
    kind: SolutionKind,
    q: Option<PAdic>,
    coeffs: Vec<FnMatrix>,
}

impl GenericSolution {
    pub fn new(e: &Equation, m: usize) -> Result<GenericSolution, ModuleError> {
        Ok(match e {
            Equation::Q(e) => GenericSolution { kind: SolutionKind::Twisted, q: Some(e.q().clone()), coeffs: h_coefficients(e, m)? },
            Equation::D(e) => GenericSolution { kind: SolutionKind::Standard, q: None, coeffs: g_coefficients(e, m)? },
            Equation::SD(e) => GenericSolution { kind: SolutionKind::Hybrid, q: Some(e.q().clone()), coeffs: f_coefficients(e, m)? },
        })
    }

    pub fn kind(&self) -> SolutionKind {
        self.kind
    }

    pub fn q(&self) -> Option<&PAdic> {
        self.q.as_ref()
    }

    pub fn coeffs(&self) -> &[FnMatrix] {
        &self.coeffs
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// The normalising constants `[n]_q^!`, `n!`, or `n! q^{n(n-1)/2}`.
    pub fn denominators(&self) -> Result<Vec<PAdic>, ModuleError> {
        let f = self.coeffs[0].get(0, 0).field().clone();
        let mut out = Vec::with_capacity(self.coeffs.len());
        let mut fact = PAdic::one(&f);
        for n in 0..self.coeffs.len() {
            if n > 0 {
                fact = fact.scale_int(n as i64);
            }
            out.push(match self.kind {
                SolutionKind::Standard => fact.clone(),
                SolutionKind::Twisted => {
                    let d = q_factorial(n as u64, self.q.as_ref().unwrap());
                    if d.is_zero() {
                        return Err(ModuleError::RootOfUnity(n as u64));
                    }
                    d
                }
                SolutionKind::Hybrid => &fact * &self.q.as_ref().unwrap().pow((n * n.saturating_sub(1) / 2) as u64),
            });
        }
        Ok(out)
    }

    /// The solution with `Y(c) = 1` at a rational base point.
    pub fn at(&self, c: &PAdic) -> Result<TaylorSolution, ModuleError> {
        let dens = self.denominators()?;
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        let mut point = c.clone();
        let qinv = match &self.q {
            Some(q) => Some(q.inv().map_err(|_| ModuleError::NotInvariant)?),
            None => None,
        };
        for (n, h) in self.coeffs.iter().enumerate() {
            let at = if self.kind == SolutionKind::Hybrid { &point } else { c };
            let v = h.evaluate(at).map_err(|e| match e {
                ModuleError::Analytic(analytic_functions::AnalyticError::NotInDomain) => ModuleError::NotInDomain,
                e => e,
            })?;
            let inv = dens[n].inv().expect("nonzero denominator");
            coeffs.push(v.scale(&inv));
            if self.kind == SolutionKind::Hybrid {
                point = &point * qinv.as_ref().unwrap();
            }
        }
        Ok(TaylorSolution { base: c.clone(), kind: self.kind, q: self.q.clone(), coeffs })
    }
}

/// A solution at a rational base point `c` with `Y(c) = 1`, truncated.
#[derive(Clone, Debug)]
pub struct TaylorSolution {
    base: PAdic,
    kind: SolutionKind,
    q: Option<PAdic>,
    coeffs: Vec<ConstMatrix>,
}

impl TaylorSolution {
    pub fn base(&self) -> &PAdic {
        &self.base
    }

    pub fn kind(&self) -> SolutionKind {
        self.kind
    }

    /// Normalised coefficient matrices, in the basis named by `kind`.
    pub fn coeffs(&self) -> &[ConstMatrix] {
        &self.coeffs
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, x: &PAdic) -> ConstMatrix {
        let f = x.field();
        let mut acc = self.coeffs[0].clone();
        let mut mono = PAdic::one(f);
        let mut qk = PAdic::one(f);
        let d = x - &self.base;
        for a in &self.coeffs[1..] {
            mono = match self.kind {
                SolutionKind::Twisted => {
                    let t = &mono * &(x - &(&qk * &self.base));
                    qk = &qk * self.q.as_ref().unwrap();
                    t
                }
                _ => &mono * &d,
            };
            acc = acc.add(&a.scale(&mono));
        }
        acc
    }

    /// The solution as a matrix of series in `T - c`.
    pub fn to_series(&self) -> SeriesMatrix {
        let m = self.order();
        let n = self.coeffs[0].dim();
        let f = self.base.field();
        let basis = match self.kind {
            SolutionKind::Twisted => Some(QContext::new(self.q.clone().unwrap(), self.base.clone(), m)),
            _ => None,
        };
        SeriesMatrix::from_fn(n, |i, j| {
            let mut c = vec![PAdic::zero(f); m + 1];
            for (k, a) in self.coeffs.iter().enumerate() {
                let x = a.get(i, j);
                if x.is_zero() {
                    continue;
                }
                match &basis {
                    Some(ctx) => {
                        for (l, b) in ctx.basis().tilde[k].iter().enumerate() {
                            c[l] = &c[l] + &(x * b);
                        }
                    }
                    None => c[k] = &c[k] + x,
                }
            }
            DiskSeries::new(self.base.clone(), c)
        })
    }

    /// `min_{i,j} v(a_n)` of the expansion in powers of `T - c`.
    pub fn coefficient_vals(&self) -> Vec<Val> {
        let s = self.to_series();
        (0..=self.order()).map(|n| s.entries().iter().map(|e| e.coeff(n).valuation()).min().unwrap()).collect()
    }

    pub fn estimate_radius(&self) -> Result<RadiusEstimate, Inconclusive> {
        estimate_from_vals(&self.coefficient_vals())
    }
}

pub fn taylor_solution_at(e: &Equation, c: &PAdic, m: usize) -> Result<TaylorSolution, ModuleError> {
    GenericSolution::new(e, m)?.at(c)
}
