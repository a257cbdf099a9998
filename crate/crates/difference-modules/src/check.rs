use std::fmt;

use padic_field::{PAdic, Val, Q};

use crate::equation::Equation;
use analytic_functions::DiskSeries;

use crate::matrix::{FnMatrix, SeriesMatrix};
use crate::ModuleError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Law {
    /// `sigma_q(Y) = A Y`
    Sigma,
    /// `delta_1(Y) = G_1 Y`
    Delta,
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Law::Sigma => "sigma_q(Y) = A Y",
            Law::Delta => "delta_1(Y) = G_1 Y",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawResult {
    pub law: Law,
    /// `v(lhs - rhs)` minus `min(0, v(Y))`.
    pub min_difference_valuation: Q,
    pub passes: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionReport {
    pub laws: Vec<LawResult>,
    pub threshold: Q,
    /// Coefficients of degree `<= compared_degree` were compared.
    pub compared_degree: usize,
}

impl SolutionReport {
    pub fn passes(&self) -> bool {
        self.laws.iter().all(|l| l.passes)
    }

    pub fn failed_laws(&self) -> Vec<Law> {
        self.laws.iter().filter(|l| !l.passes).map(|l| l.law).collect()
    }

    pub fn min_difference_valuation(&self) -> Q {
        self.laws.iter().map(|l| l.min_difference_valuation).min().unwrap()
    }
}

/// Checks that the columns of `y`, a matrix of series about `c`, solve `e`.
/// Away from `c = 0` the substitution `T -> qT` recentres a truncated
/// series, so only degrees up to `M/2` are compared there.
pub fn solution_check(e: &Equation, y: &SeriesMatrix, threshold: Q) -> Result<SolutionReport, ModuleError> {
    if y.dim() != e.rank() {
        return Err(ModuleError::Shape);
    }
    y.constant_term().inverse()?;
    law_report(e, y, threshold)
}

fn law_report(e: &Equation, y: &SeriesMatrix, threshold: Q) -> Result<SolutionReport, ModuleError> {
    let c = y.center().clone();
    let m = y.order();
    let upto = if c.is_zero() { m } else { m / 2 };
    let scale = match y.min_valuation() {
        Val::Fin(v) => v.min(Q::from_integer(0)),
        Val::Inf => Q::from_integer(0),
    };
    let sigma = |q: &PAdic, a: &FnMatrix| -> Result<Q, ModuleError> {
        let a = a.taylor_at(&c, m)?;
        Ok(y.sigma_q(q).agreement_upto(&a.mul(y), upto))
    };
    let delta = |g: &FnMatrix| -> Result<Q, ModuleError> {
        let g = g.taylor_at(&c, m)?;
        Ok(y.delta1().agreement_upto(&g.mul(y), upto))
    };
    let raw = match e {
        Equation::Q(x) => vec![(Law::Sigma, sigma(x.q(), x.matrix())?)],
        Equation::D(x) => vec![(Law::Delta, delta(x.matrix())?)],
        Equation::SD(x) => vec![(Law::Sigma, sigma(x.q(), x.a())?), (Law::Delta, delta(x.g1())?)],
    };
    let laws = raw
        .into_iter()
        .map(|(law, d)| {
            let v = d - scale;
            LawResult { law, min_difference_valuation: v, passes: v >= threshold }
        })
        .collect();
    Ok(SolutionReport { laws, threshold, compared_degree: upto })
}

/// Number of linearly independent solutions among candidate column vectors
/// of series about a common centre. Solutions are independent iff their
/// values at the centre are.
pub fn solution_rank(e: &Equation, candidates: &[Vec<DiskSeries>], threshold: Q) -> Result<usize, ModuleError> {
    let n = e.rank();
    let mut rows: Vec<Vec<PAdic>> = Vec::new();
    for v in candidates {
        if v.len() != n {
            return Err(ModuleError::Shape);
        }
        // the laws act column by column
        let y = SeriesMatrix::from_fn(n, |i, _| v[i].clone());
        if law_report(e, &y, threshold)?.passes() {
            rows.push(v.iter().map(|s| s.coeff(0)).collect());
        }
    }
    Ok(rank(rows))
}

fn rank(mut rows: Vec<Vec<PAdic>>) -> usize {
    let mut r = 0;
    let cols = rows.first().map(|x| x.len()).unwrap_or(0);
    for col in 0..cols {
        let Some(piv) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else { continue };
        rows.swap(r, piv);
        let inv = rows[r][col].inv().expect("nonzero pivot");
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let f = &rows[i][col] * &inv;
                for j in 0..cols {
                    let t = &rows[r][j] * &f;
                    rows[i][j] = &rows[i][j] - &t;
                }
            }
        }
        r += 1;
    }
    r
}
