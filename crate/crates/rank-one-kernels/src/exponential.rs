use analytic_functions::{estimator_tolerance, exp_series, DiskSeries};
use padic_field::{legendre, Field, PAdic, Val, Q};

use crate::upoly::UPoly;
use crate::witt::{from_phantom_raw, phantom, witt_sub, WittVector};
use crate::KernelError;

/// `exp(sum_j pi_{s-j} phi_j / p^j)` as a series in `u = T^{-1}`.
#[derive(Clone, Debug)]
pub struct PiExponential {
    source: WittVector,
    series: DiskSeries,
}

impl PiExponential {
    pub fn source(&self) -> &WittVector {
        &self.source
    }

    pub fn series(&self) -> &DiskSeries {
        &self.series
    }

    /// Constant term 1 and every other coefficient in `pi_s O`, at
    /// truncation.
    pub fn in_unit_group(&self) -> bool {
        let f = self.series.field();
        let s = self.source.level() as i32;
        let vpi = Q::new(1, (f.p() as i64 - 1) * (f.p() as i64).pow(s as u32));
        let one = PAdic::one(f);
        (&self.series.coeff(0) - &one).is_zero()
            && self.series.coeffs()[1..].iter().all(|c| c.valuation() >= Val::Fin(vpi))
    }
}

fn require_level(f: &Field, w: &WittVector) -> Result<(), KernelError> {
    if f.level() < w.level() as i32 {
        return Err(KernelError::FieldLevel { need: w.len(), have: f.level() });
    }
    Ok(())
}

/// `sum_j pi_{s-j} phi_j / p^j`, in `g`.
fn exponent(phi: &[UPoly], g: &Field) -> UPoly {
    let s = phi.len() - 1;
    phi.iter().enumerate().fold(UPoly::zero(g), |acc, (j, ph)| {
        let pi = PAdic::pi_j(g, (s - j) as i32).expect("level checked");
        acc.add(&ph.scale(&(&pi * &PAdic::p_power(g, -(j as i64)))))
    })
}

/// Digits lost to the divisions by `n <= m` in `exp` and by `p^j`.
fn guard_digits(p: u64, s: usize, m: usize) -> u32 {
    (legendre(p, m as u64) + s as u64 + 4) as u32
}

fn exp_of_phantom(phi: &[UPoly], m: usize) -> Result<DiskSeries, KernelError> {
    let f = phi[0].field().clone();
    let g = f.with_precision(f.precision() + guard_digits(f.p(), phi.len() - 1, m));
    let lifted: Vec<UPoly> = phi.iter().map(|x| x.lift(&g)).collect();
    let e = exp_series(&exponent(&lifted, &g).to_series(m))?;
    Ok(e.map(|x| x.to_field(&f)))
}

/// Components are read as exact and the exponential is computed with
/// guard digits, then capped at the field's precision.
pub fn pi_exponential(w: &WittVector, m: usize) -> Result<PiExponential, KernelError> {
    require_level(w.field(), w)?;
    let series = exp_of_phantom(&phantom(w), m)?;
    Ok(PiExponential { source: w.clone(), series })
}

/// Coefficient checks on a series in `u` with constant term 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralityReport {
    /// Minimum valuation over degrees `>= 1`.
    pub min_valuation: Val,
    pub integral: bool,
    /// Radius estimate in `u`; `None` for a polynomial within the window.
    pub log_radius: Option<Q>,
    /// Radius beyond 1 by more than the estimator tolerance.
    pub overconvergent: bool,
    pub tolerance: Q,
}

impl IntegralityReport {
    pub fn passes(&self) -> bool {
        self.integral && self.overconvergent
    }
}

pub fn integrality_diagnostic(s: &DiskSeries) -> IntegralityReport {
    let m = s.order();
    let min_valuation = s.coeffs()[1..].iter().map(|c| c.valuation()).min().unwrap_or(Val::Inf);
    let integral = min_valuation >= Val::Fin(Q::from_integer(0));
    let tolerance = estimator_tolerance(m);
    let tail_zero = s.coeffs()[m / 2..].iter().all(|c| c.is_zero());
    let log_radius = if tail_zero { None } else { s.estimate_radius().ok().map(|e| e.log_radius) };
    let overconvergent = tail_zero || log_radius.is_some_and(|r| r > tolerance);
    IntegralityReport { min_valuation, integral, log_radius, overconvergent, tolerance }
}

#[derive(Clone, Debug)]
pub struct DeformedRankOne {
    /// `w(qT) - w(T)` in the Witt group.
    pub difference: WittVector,
    /// `A(q, T)` as a series in `u`.
    pub series: DiskSeries,
    pub diagnostic: IntegralityReport,
}

/// `A(q, T) = e(w(qT), 1) / e(w(T), 1) = e(w(qT) - w(T), 1)`.
pub fn rank_one_deformed_matrix(w: &WittVector, q: &PAdic, m: usize) -> Result<DeformedRankOne, KernelError> {
    let f = w.field();
    require_level(f, w)?;
    let d = q - &PAdic::one(f);
    if !d.valuation().fin().is_none_or(|v| v > Q::from_integer(0)) {
        return Err(KernelError::QNotNearOne);
    }
    // T -> qT is u -> u / q
    let wq = w.dilate(&q.inv().map_err(|_| KernelError::QNotNearOne)?);
    let difference = if w.is_integral() {
        witt_sub(&wq, w)?
    } else {
        let phi: Vec<UPoly> = phantom(&wq).iter().zip(phantom(w)).map(|(a, b)| a.sub(&b)).collect();
        from_phantom_raw(&phi)
    };
    let series = exp_of_phantom(&phantom(&difference), m)?;
    let diagnostic = integrality_diagnostic(&series);
    Ok(DeformedRankOne { difference, series, diagnostic })
}
