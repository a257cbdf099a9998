use std::sync::Arc;

use affinoid_geometry::{Affinoid, Disk};
use analytic_functions::DiskSeries;
use difference_modules::{taylor_solution_at, DiffEquation, Equation, FnMatrix, QDiffEquation, SeriesMatrix, SigmaDeltaEquation};
use num_bigint::BigInt;
use padic_field::{PAdic, Q};

use crate::ConfluenceError;

const UNSUPPORTED: &str = "Frobenius pullback needs a domain centred at 0 with holes centred at 0";

/// `{T : T^p in X}` for `X` centred at 0 with holes centred at 0.
pub fn frobenius_domain(dom: &Affinoid) -> Result<Arc<Affinoid>, ConfluenceError> {
    let p = Q::from_integer(dom.field().p() as i64);
    if !dom.outer().center.is_zero() || dom.holes().iter().any(|h| !h.center.is_zero()) {
        return Err(ConfluenceError::Unsupported(UNSUPPORTED));
    }
    let z = dom.outer().center.clone();
    let holes = dom.holes().iter().map(|h| Disk::new(z.clone(), h.rlog / p)).collect();
    let out = Affinoid::new(Disk::new(z.clone(), dom.outer().rlog / p), holes).map_err(|_| ConfluenceError::Unsupported(UNSUPPORTED))?;
    Ok(Arc::new(out))
}

/// `log_p r' = min(log_p r / p, log_p r + 1)`.
pub fn frobenius_radius_law(p: u64, rlog: Q) -> Q {
    (rlog / Q::from_integer(p as i64)).min(rlog + Q::from_integer(1))
}

fn substitute(m: &FnMatrix, p: usize, dom: &Arc<Affinoid>, m_new: usize) -> Result<FnMatrix, ConfluenceError> {
    Ok(m.try_map(|f| f.substitute_power(p, dom, m_new))?)
}

/// `phi^*` along `T -> T^p`, identity on coefficients:
/// `G_1 -> p G_1(T^p)` and `A(q, T) -> A(q^p, T^p)` with `q` unchanged.
pub fn frobenius_pullback(e: &Equation, m_new: usize) -> Result<Equation, ConfluenceError> {
    let dom = frobenius_domain(e.domain())?;
    let p = e.domain().field().p();
    let pq = PAdic::from_int(e.domain().field(), p as i64);
    let d = |x: &DiffEquation| -> Result<DiffEquation, ConfluenceError> {
        Ok(DiffEquation::new(&dom, substitute(x.matrix(), p as usize, &dom, m_new)?.scale(&pq))?)
    };
    let q = |x: &QDiffEquation| -> Result<QDiffEquation, ConfluenceError> {
        let a = substitute(&x.iterate(p)?, p as usize, &dom, m_new)?;
        Ok(QDiffEquation::new(&dom, x.q().clone(), a)?)
    };
    Ok(match e {
        Equation::D(x) => Equation::D(d(x)?),
        Equation::Q(x) => Equation::Q(q(x)?),
        Equation::SD(x) => Equation::SD(SigmaDeltaEquation::from_parts(q(x.q_part())?, d(x.d_part())?)?),
    })
}

/// `(1 + u)^k - 1` as a series in `u = T - 1`.
fn power_shift(f: &padic_field::Field, k: u64, m: usize) -> DiskSeries {
    let mut c = vec![PAdic::zero(f); m + 1];
    let mut b = BigInt::from(1);
    for (i, slot) in c.iter_mut().enumerate().skip(1) {
        if i as u64 > k {
            break;
        }
        b = b * BigInt::from(k - i as u64 + 1) / BigInt::from(i as u64);
        *slot = PAdic::from_bigint(f, &b);
    }
    DiskSeries::new(PAdic::one(f), c)
}

/// `Y(T^{p^h}, 1)` and `Y(T, 1)` as series in `T - 1`.
fn solutions_at_one(e: &Equation, h: u32, m: usize) -> Result<(SeriesMatrix, SeriesMatrix), ConfluenceError> {
    let f = e.domain().field();
    let one = PAdic::one(f);
    if !e.domain().contains(&one) {
        return Err(ConfluenceError::Module(difference_modules::ModuleError::NotInDomain));
    }
    let y = taylor_solution_at(e, &one, m)?.to_series();
    let inner = power_shift(f, f.p().pow(h), y.order());
    Ok((y.map(|s| s.compose(&inner)), y))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusCheck {
    pub h: u32,
    /// Degrees in `T - 1` compared.
    pub compared_degree: usize,
    pub min_difference_valuation: Q,
    pub threshold: Q,
}

impl FrobeniusCheck {
    pub fn passes(&self) -> bool {
        self.min_difference_valuation >= self.threshold
    }
}

fn normalise(y: &SeriesMatrix) -> Q {
    y.min_valuation().fin().unwrap_or(Q::from_integer(0)).min(Q::from_integer(0))
}

/// Checks `Y(T^{p^h}, 1) H(1) = H(T) Y(T, 1)` up to degree `M / 2` in
/// `T - 1`. Both sides solve the pulled-back system; `H(1)` is their common
/// value at 1.
pub fn verify_frobenius_structure(e: &Equation, hmat: &FnMatrix, h: u32, m: usize, threshold: Q) -> Result<FrobeniusCheck, ConfluenceError> {
    let (lhs, y) = solutions_at_one(e, h, m)?;
    let one = PAdic::one(e.domain().field());
    let hs = hmat.taylor_at(&one, y.order())?;
    let h1 = hs.map(|s| DiskSeries::constant(&one, s.coeff(0), y.order()));
    let lhs = lhs.mul(&h1);
    let rhs = hs.mul(&y);
    let upto = y.order() / 2;
    let v = lhs.agreement_upto(&rhs, upto) - normalise(&lhs).min(normalise(&y));
    Ok(FrobeniusCheck { h, compared_degree: upto, min_difference_valuation: v, threshold })
}

/// `H = Y(T^{p^h}, 1) Y(T, 1)^{-1}`, truncated to degree `M / 2`; the
/// representative with `H(1) = 1`.
#[derive(Clone, Debug)]
pub struct FrobeniusWitness {
    pub h: u32,
    pub series: SeriesMatrix,
    /// Smallest entry radius estimate; `None` when every entry is a
    /// polynomial of degree below the estimator window.
    pub log_radius: Option<Q>,
    /// `log_p rho_{1, X}`.
    pub rho: Q,
}

impl FrobeniusWitness {
    /// Whether `H` converges on the whole disk of `X` around 1.
    pub fn in_ring(&self) -> bool {
        self.log_radius.is_none_or(|r| r >= self.rho)
    }
}

pub fn derive_frobenius_witness(e: &Equation, h: u32, m: usize) -> Result<FrobeniusWitness, ConfluenceError> {
    let (lhs, y) = solutions_at_one(e, h, m)?;
    let upto = y.order() / 2;
    let yinv = y.inverse()?;
    let series = lhs.mul(&yinv).map(|s| s.truncate(upto));
    let log_radius = series.entries().iter().filter_map(|s| s.estimate_radius().ok()).map(|r| r.log_radius).min();
    let one = PAdic::one(e.domain().field());
    let rho = e.domain().rho_c_x(&one).map_err(|_| ConfluenceError::Module(difference_modules::ModuleError::NotInDomain))?;
    Ok(FrobeniusWitness { h, series, log_radius, rho })
}

#[cfg(test)]
mod tests {
    use super::*;
    use padic_field::make_field;

    #[test]
    fn radius_law_branches() {
        assert_eq!(frobenius_radius_law(3, Q::from_integer(0)), Q::from_integer(0));
        assert_eq!(frobenius_radius_law(2, Q::from_integer(-4)), Q::from_integer(-3));
        assert_eq!(frobenius_radius_law(5, Q::new(-5, 4)), Q::new(-1, 4));
    }

    #[test]
    fn domain_radii_scale() {
        let f = make_field(3, -1, 20).unwrap();
        let a = Affinoid::annulus(PAdic::zero(&f), Q::from_integer(-3), Q::from_integer(3));
        let b = frobenius_domain(&a).unwrap();
        assert_eq!(b.outer().rlog, Q::from_integer(1));
        assert_eq!(b.holes()[0].rlog, Q::from_integer(-1));
    }

    #[test]
    fn binomial_shift() {
        let f = make_field(3, -1, 20).unwrap();
        let s = power_shift(&f, 3, 5);
        let want = [0, 3, 3, 1, 0, 0];
        for (c, w) in s.coeffs().iter().zip(want) {
            assert!(c.agreement(&PAdic::from_int(&f, w)) >= Q::from_integer(20));
        }
    }
}
