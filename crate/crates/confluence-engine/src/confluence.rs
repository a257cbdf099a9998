use difference_modules::{DiffEquation, Equation, FnMatrix, QDiffEquation};
use padic_field::{PAdic, Q};

use crate::admissible::best_admissibility;
use crate::family::{deform, DeformationFamily, Gate};
use crate::ConfluenceError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConfluenceMode {
    /// `G_1 = d/dQ A(Q, T)` at `Q = 1`, from the family through `q`.
    DerivativeOfFamily,
    /// `G_1 = lim (A(q^{p^n}, T) - 1) / (q^{p^n} - 1)`.
    IteratedLimit,
}

/// Convergence record of the iterated limit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IteratedDiagnostic {
    pub steps: usize,
    /// `v(Delta_{n+1} - Delta_n)` for each step taken.
    pub difference_valuations: Vec<Q>,
    /// The last difference vanished at working precision.
    pub exhausted: bool,
}

#[derive(Clone, Debug)]
pub struct ConfluenceResult {
    pub equation: DiffEquation,
    pub diagnostic: Option<IteratedDiagnostic>,
}

fn delta_of(e: &QDiffEquation) -> Result<FnMatrix, ConfluenceError> {
    let one = PAdic::one(e.q().field());
    let d = e.q() - &one;
    let inv = d.inv().map_err(|_| ConfluenceError::Module(difference_modules::ModuleError::QIsOne))?;
    Ok(e.matrix().sub(&e.matrix().identity_like()).scale(&inv))
}

/// Runs at most `steps` Frobenius iterations `q -> q^p`.
pub fn iterated_limit(e: &QDiffEquation, steps: usize) -> Result<(FnMatrix, IteratedDiagnostic), ConfluenceError> {
    let one = PAdic::one(e.q().field());
    if !(e.q() - &one).valuation().fin().is_some_and(|v| v > Q::from_integer(0)) {
        return Err(ConfluenceError::Unsupported("iterated limit needs |q - 1| < 1"));
    }
    let p = e.q().field().p();
    let mut cur = e.clone();
    let mut delta = delta_of(&cur)?;
    let mut vals = Vec::new();
    let mut exhausted = false;
    for _ in 0..steps {
        cur = cur.power(p)?;
        let next = delta_of(&cur)?;
        let diff = next.sub(&delta);
        delta = next;
        if diff.is_zero() {
            exhausted = true;
            break;
        }
        let v = diff.min_valuation().fin().expect("nonzero difference");
        if vals.last().is_some_and(|&w| v <= w) {
            vals.push(v);
            return Err(ConfluenceError::Diverged(vals));
        }
        vals.push(v);
    }
    let steps = vals.len() + usize::from(exhausted);
    Ok((delta, IteratedDiagnostic { steps, difference_valuations: vals, exhausted }))
}

pub fn confluence(e: &QDiffEquation, mode: ConfluenceMode, m: usize, gate: Gate) -> Result<ConfluenceResult, ConfluenceError> {
    match mode {
        ConfluenceMode::DerivativeOfFamily => {
            let fam = DeformationFamily::new(&Equation::Q(e.clone()), m, gate)?;
            Ok(ConfluenceResult { equation: DiffEquation::new(e.domain(), fam.derivative_at_one())?, diagnostic: None })
        }
        ConfluenceMode::IteratedLimit => {
            if let Gate::Certified(r) = gate {
                if !r.admissible() {
                    return Err(ConfluenceError::NotAdmissible("report does not pass".into()));
                }
            }
            let (g, d) = iterated_limit(e, 8)?;
            Ok(ConfluenceResult { equation: DiffEquation::new(e.domain(), g)?, diagnostic: Some(d) })
        }
    }
}

/// Agreement of both round trips through `q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoundtripReport {
    /// `confluence(deform(G_1, q))` against `G_1`.
    pub differential: Q,
    /// `deform(confluence(A), q)` against `A`, with `A = deform(G_1, q)`.
    pub difference: Q,
    pub threshold: Q,
}

impl RoundtripReport {
    pub fn passes(&self) -> bool {
        self.differential >= self.threshold && self.difference >= self.threshold
    }
}

/// Both gates use the report with `r = R`.
pub fn roundtrip_check(e: &DiffEquation, q: &PAdic, m: usize, threshold: Q) -> Result<RoundtripReport, ConfluenceError> {
    let report = best_admissibility(&Equation::D(e.clone()), Some(q), m)?;
    let a = deform(e, q, m, Gate::Certified(&report))?.equation;
    let g = confluence(&a, ConfluenceMode::DerivativeOfFamily, m, Gate::Certified(&report))?.equation;
    let differential = g.matrix().agreement(e.matrix());
    let back = deform(&g, q, m, Gate::Certified(&report))?.equation;
    let difference = back.matrix().agreement(a.matrix());
    Ok(RoundtripReport { differential, difference, threshold })
}
