use difference_modules::{generic_radius, Equation, RadiusReport};
use padic_field::{Norm, PAdic, Q};

use crate::ConfluenceError;

/// All radii as `log_p` exponents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibilityReport {
    pub r: Q,
    /// `R`: minimum of the generic radii over the Shilov boundary.
    pub r_estimate: Option<Q>,
    pub s_x: Q,
    pub r_x: Q,
    /// `log_p |q - 1|`, `None` for `q = 1` or a differential equation
    /// checked without a target `q`.
    pub q_shift: Option<Q>,
    /// `|q - 1| s_X < r`
    pub q_condition: bool,
    /// `r <= R`
    pub lower: bool,
    /// `R <= r_X`
    pub upper: bool,
    pub inconclusive: bool,
    pub shilov_radii: Vec<Result<RadiusReport, String>>,
}

impl AdmissibilityReport {
    pub fn admissible(&self) -> bool {
        !self.inconclusive && self.q_condition && self.lower && self.upper
    }

    /// `|q' - 1| s_X < R`.
    pub fn allows(&self, q_prime: &PAdic) -> bool {
        let Some(big_r) = self.r_estimate else { return false };
        (q_prime - &PAdic::one(q_prime.field())).norm().mul(Norm::Pow(self.s_x)) < Norm::Pow(big_r)
    }
}

/// Generic radii at the Shilov points and their minimum.
pub fn shilov_radius(e: &Equation, m: usize) -> (Option<Q>, Vec<Result<RadiusReport, String>>) {
    let mut reports = Vec::new();
    let mut big_r: Option<Q> = None;
    let mut failed = false;
    for g in e.domain().shilov_points() {
        let r = generic_radius(e, &g.center, g.rlog, m);
        match &r {
            Ok(x) => big_r = Some(big_r.map_or(x.log_radius, |y| y.min(x.log_radius))),
            Err(_) => failed = true,
        }
        reports.push(r.map_err(|e| e.to_string()));
    }
    (if failed { None } else { big_r }, reports)
}

/// Checks `|q - 1| s_X < r <= R <= r_X`, with `q` the equation's own `q`
/// or the target of a deformation.
pub fn check_admissible(e: &Equation, r: Q, q: Option<&PAdic>, m: usize) -> AdmissibilityReport {
    let dom = e.domain();
    let (s_x, r_x) = (dom.s_x(), dom.r_x());
    let (big_r, shilov_radii) = shilov_radius(e, m);
    let q = q.or(e.q());
    let q_shift = q.and_then(|q| (q - &PAdic::one(q.field())).norm().log());
    let q_condition = match q_shift {
        Some(x) => x + s_x < r,
        None => true,
    };
    let (lower, upper) = match big_r {
        Some(b) => (r <= b, b <= r_x),
        None => (false, false),
    };
    AdmissibilityReport { r, r_estimate: big_r, s_x, r_x, q_shift, q_condition, lower, upper, inconclusive: big_r.is_none(), shilov_radii }
}

/// The report with `r = R`, the least restrictive choice.
pub fn best_admissibility(e: &Equation, q: Option<&PAdic>, m: usize) -> Result<AdmissibilityReport, ConfluenceError> {
    let (big_r, _) = shilov_radius(e, m);
    let big_r = big_r.ok_or(ConfluenceError::Inconclusive)?;
    Ok(check_admissible(e, big_r, q, m))
}
