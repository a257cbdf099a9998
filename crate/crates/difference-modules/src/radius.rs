use analytic_functions::{estimate_from_vals, RadiusEstimate};
use padic_field::{omega_log, Norm, PAdic, Val, Q};

use crate::equation::{Equation, SigmaDeltaEquation};
use crate::taylor::GenericSolution;
use crate::ModuleError;

/// Generic radius at `(c, rho)`, all quantities `log_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadiusReport {
    pub rlog: Q,
    /// `log_p` of the generic radius: `min(rho_generic, estimate)`.
    pub log_radius: Q,
    /// Distance from `t_{c,rho}` to the complement of the domain.
    pub rho_generic: Q,
    /// `None` when every coefficient in the window vanishes.
    pub estimate: Option<RadiusEstimate>,
    /// The radius equals `rho_generic`.
    pub saturated: bool,
    pub truncation_limited: bool,
}

fn coefficient_solution(e: &Equation, m: usize) -> Result<GenericSolution, ModuleError> {
    match e {
        // the differential part carries the radius of a compatible pair
        Equation::SD(x) => GenericSolution::new(&Equation::D(x.d_part().clone()), m),
        _ => GenericSolution::new(e, m),
    }
}

fn check_point(e: &Equation, c: &PAdic, rlog: Q) -> Result<(), ModuleError> {
    let dom = e.domain();
    if !dom.is_generic_point(c, rlog) {
        return Err(ModuleError::NotInDomain);
    }
    if let Equation::Q(x) = e {
        let t = c.norm().max(Norm::Pow(rlog));
        if (x.q() - &PAdic::one(c.field())).norm().mul(t) >= Norm::Pow(rlog) {
            return Err(ModuleError::RadiusUndefined);
        }
    }
    Ok(())
}

fn radius_from(sol: &GenericSolution, e: &Equation, c: &PAdic, rlog: Q) -> Result<RadiusReport, ModuleError> {
    check_point(e, c, rlog)?;
    let dens = sol.denominators()?;
    let mut vals = Vec::with_capacity(dens.len());
    let mut limited = false;
    for (h, d) in sol.coeffs().iter().zip(&dens) {
        let g = h.gauss_norm(c, rlog)?;
        limited |= g.truncation_limited;
        vals.push(match (g.norm, d.valuation()) {
            (Norm::Zero, _) => Val::Inf,
            (Norm::Pow(x), Val::Fin(v)) => Val::Fin(-x - v),
            (Norm::Pow(_), Val::Inf) => return Err(ModuleError::RootOfUnity(0)),
        });
    }
    let rho_generic = e.domain().rho_generic(c, rlog);
    let estimate = estimate_from_vals(&vals).ok();
    let log_radius = match &estimate {
        Some(est) => est.log_radius.min(rho_generic),
        None => rho_generic,
    };
    Ok(RadiusReport { rlog, log_radius, rho_generic, saturated: log_radius == rho_generic, estimate, truncation_limited: limited })
}

/// `min(rho_{c,X}, liminf (|H_n|_{(c,rho)} / |[n]_q^!|)^{-1/n})`, the liminf
/// replaced by the window estimate. Differential and mixed equations use
/// `G_[n] / n!`.
pub fn generic_radius(e: &Equation, c: &PAdic, rlog: Q, m: usize) -> Result<RadiusReport, ModuleError> {
    let sol = coefficient_solution(e, m)?;
    radius_from(&sol, e, c, rlog)
}

#[derive(Clone, Debug)]
pub struct ProfilePoint {
    pub rlog: Q,
    pub result: Result<RadiusReport, ModuleError>,
}

/// Generic radii at `(c, rho)` for each `rho` in the grid.
pub fn radius_profile(e: &Equation, c: &PAdic, grid: &[Q], m: usize) -> Result<Vec<ProfilePoint>, ModuleError> {
    let sol = coefficient_solution(e, m)?;
    Ok(grid.iter().map(|&r| ProfilePoint { rlog: r, result: radius_from(&sol, e, c, r) }).collect())
}

/// `omega rho / max(|A|_{(c,rho)}, |G(q,T)|_{(c,rho)} / max(1, |c|/rho))`, a lower
/// bound for the radius of the Taylor solution at `c`.
pub fn rough_lower_bound(e: &SigmaDeltaEquation, c: &PAdic, rlog: Q) -> Result<Q, ModuleError> {
    let dom = e.domain();
    let rho_cx = dom.rho_c_x(c).map_err(|_| ModuleError::NotInDomain)?;
    let shift = (e.q() - &PAdic::one(c.field())).norm().mul(c.norm());
    if shift > Norm::Pow(rlog) || rlog > rho_cx {
        return Err(ModuleError::Precondition("|q - 1||c| <= rho <= rho_{c,X}"));
    }
    let a = e.a().gauss_norm(c, rlog)?.norm;
    let cr = match c.norm() {
        Norm::Pow(x) => (x - rlog).max(Q::from_integer(0)),
        Norm::Zero => Q::from_integer(0),
    };
    let g = e.g_q()?.gauss_norm(c, rlog)?.norm.div(Norm::Pow(cr));
    let den = match a.max(g) {
        Norm::Pow(x) => x,
        Norm::Zero => return Err(ModuleError::NotInvertible),
    };
    Ok(omega_log(c.field().p()) + rlog - den)
}
