//! Truncated power series on a disk, in the basis `(T - c)^n`.

use num_traits::{One, Zero};
use padic_field::{omega_log, Field, Norm, PAdic, Val, Q};

use crate::coeffs::{conv_trunc, horner, min_val, taylor_shift};
use crate::estimate::{estimate_from_vals, Inconclusive, RadiusEstimate};
use crate::AnalyticError;

/// A Gauss norm together with a flag telling whether the maximum was
/// attained so close to the truncation order that the tail may dominate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GaussNorm {
    pub norm: Norm,
    pub truncation_limited: bool,
}

impl GaussNorm {
    pub fn max(self, o: GaussNorm) -> GaussNorm {
        if o.norm > self.norm {
            GaussNorm { norm: o.norm, truncation_limited: o.truncation_limited }
        } else if o.norm == self.norm {
            GaussNorm { norm: self.norm, truncation_limited: self.truncation_limited || o.truncation_limited }
        } else {
            self
        }
    }
}

/// `sum_{n <= M} a_n (T - c)^n`.
///
/// `exact` marks polynomials: no term beyond `M` was ever discarded.
#[derive(Clone, Debug)]
pub struct DiskSeries {
    center: PAdic,
    coeffs: Vec<PAdic>,
    rlog: Option<Q>,
    exact: bool,
}

fn q(n: i64) -> Q {
    Q::from_integer(n)
}

impl DiskSeries {
    pub fn new(center: PAdic, coeffs: Vec<PAdic>) -> DiskSeries {
        assert!(!coeffs.is_empty(), "series needs at least a constant term");
        DiskSeries { center, coeffs, rlog: None, exact: false }
    }

    pub fn polynomial(center: PAdic, coeffs: Vec<PAdic>) -> DiskSeries {
        DiskSeries { exact: true, ..DiskSeries::new(center, coeffs) }
    }

    pub fn zero(center: &PAdic, m: usize) -> DiskSeries {
        let f = center.field();
        DiskSeries::polynomial(center.clone(), vec![PAdic::zero(f); m + 1])
    }

    pub fn constant(center: &PAdic, a: PAdic, m: usize) -> DiskSeries {
        let mut s = DiskSeries::zero(center, m);
        s.coeffs[0] = a;
        s
    }

    pub fn one(center: &PAdic, m: usize) -> DiskSeries {
        DiskSeries::constant(center, PAdic::one(center.field()), m)
    }

    /// The coordinate `T - c`.
    pub fn coordinate(center: &PAdic, m: usize) -> DiskSeries {
        let mut s = DiskSeries::zero(center, m.max(1));
        s.coeffs[1] = PAdic::one(center.field());
        s
    }

    /// Polynomial given by its coefficients in `T`, re-expanded at `center`.
    pub fn from_t_poly(center: &PAdic, t_coeffs: &[PAdic], m: usize) -> DiskSeries {
        let mut c = taylor_shift(t_coeffs, center);
        let exact = c.len() <= m + 1 || c[m + 1..].iter().all(|x| x.is_zero());
        c.resize(m + 1, PAdic::zero(center.field()));
        DiskSeries { center: center.clone(), coeffs: c, rlog: None, exact }
    }

    pub fn with_radius(mut self, rlog: Q) -> DiskSeries {
        self.rlog = Some(rlog);
        self
    }

    pub fn mark_inexact(mut self) -> DiskSeries {
        self.exact = false;
        self
    }

    pub fn field(&self) -> &Field {
        self.center.field()
    }

    pub fn center(&self) -> &PAdic {
        &self.center
    }

    pub fn coeffs(&self) -> &[PAdic] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> PAdic {
        self.coeffs.get(n).cloned().unwrap_or_else(|| PAdic::zero(self.field()))
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    pub fn radius_bound(&self) -> Option<Q> {
        self.rlog
    }

    fn same_center(&self, o: &DiskSeries) {
        debug_assert!((&self.center - &o.center).is_zero(), "series about different centres");
    }

    fn zip(&self, o: &DiskSeries, op: impl Fn(&PAdic, &PAdic) -> PAdic) -> DiskSeries {
        self.same_center(o);
        let m = self.order().max(o.order());
        let coeffs = (0..=m).map(|i| op(&self.coeff(i), &o.coeff(i))).collect();
        DiskSeries { center: self.center.clone(), coeffs, rlog: min_opt(self.rlog, o.rlog), exact: self.exact && o.exact }
    }

    pub fn add(&self, o: &DiskSeries) -> DiskSeries {
        self.zip(o, |a, b| a + b)
    }

    pub fn sub(&self, o: &DiskSeries) -> DiskSeries {
        self.zip(o, |a, b| a - b)
    }

    pub fn neg(&self) -> DiskSeries {
        self.map(|a| -a)
    }

    pub fn scale(&self, k: &PAdic) -> DiskSeries {
        self.map(|a| a * k)
    }

    pub fn map(&self, f: impl Fn(&PAdic) -> PAdic) -> DiskSeries {
        DiskSeries { coeffs: self.coeffs.iter().map(f).collect(), ..self.clone() }
    }

    /// Product truncated at the larger of the two orders.
    pub fn mul(&self, o: &DiskSeries) -> DiskSeries {
        self.same_center(o);
        // an inexact factor is unknown above its own order
        let m = match (self.exact, o.exact) {
            (true, true) => self.order().max(o.order()),
            (true, false) => o.order(),
            (false, true) => self.order(),
            (false, false) => self.order().min(o.order()),
        };
        let (coeffs, dropped) = conv_trunc(&self.coeffs, &o.coeffs, m);
        let exact = self.exact && o.exact && !dropped;
        DiskSeries { center: self.center.clone(), coeffs, rlog: min_opt(self.rlog, o.rlog), exact }
    }

    pub fn truncate(&self, m: usize) -> DiskSeries {
        let mut s = self.clone();
        if s.coeffs.len() > m + 1 {
            if s.coeffs[m + 1..].iter().any(|x| !x.is_zero()) {
                s.exact = false;
            }
            s.coeffs.truncate(m + 1);
        }
        s
    }

    pub fn pad(&self, m: usize) -> DiskSeries {
        let mut s = self.clone();
        if s.coeffs.len() < m + 1 {
            s.coeffs.resize(m + 1, PAdic::zero(self.field()));
        }
        s
    }

    /// `d/dT`; the order drops by one.
    pub fn derivative(&self) -> DiskSeries {
        let f = self.field();
        let mut c: Vec<PAdic> = (1..self.coeffs.len()).map(|n| self.coeffs[n].scale_int(n as i64)).collect();
        if c.is_empty() {
            c.push(PAdic::zero(f));
        }
        DiskSeries { coeffs: c, ..self.clone() }
    }

    /// `T d/dT = ((T - c) + c) d/dT`.
    pub fn delta1(&self) -> DiskSeries {
        let d = self.derivative().pad(self.order());
        let mut out = self.map(|x| PAdic::zero(x.field()));
        for n in 0..=self.order() {
            let a = self.coeffs[n].scale_int(n as i64);
            out.coeffs[n] = &out.coeffs[n] + &a;
            out.coeffs[n] = &out.coeffs[n] + &(&self.center * &d.coeffs[n]);
        }
        if !self.center.is_zero() {
            out.exact = self.exact;
        }
        out
    }

    pub fn eval(&self, x: &PAdic) -> PAdic {
        horner(&self.coeffs, &(x - &self.center))
    }

    /// `sup_n |a_n| p^{rlog n}`.
    pub fn gauss_norm(&self, rlog: Q) -> GaussNorm {
        let mut best = Norm::Zero;
        let mut at = 0;
        for (n, a) in self.coeffs.iter().enumerate() {
            let t = a.norm().mul(Norm::Pow(rlog * q(n as i64)));
            if t > best {
                best = t;
                at = n;
            }
        }
        let m = self.order();
        GaussNorm { norm: best, truncation_limited: !self.exact && m > 0 && 4 * at > 3 * m }
    }

    pub fn min_valuation(&self) -> Val {
        min_val(&self.coeffs)
    }

    /// Minimum over `n <= upto` of `v(a_n - b_n)`, counting exact
    /// agreement as agreement to the available precision.
    pub fn agreement(&self, o: &DiskSeries, upto: usize) -> Q {
        (0..=upto).map(|n| self.coeff(n).agreement(&o.coeff(n))).min().unwrap()
    }

    /// Composition `self(inner)`: `self` is read as a series in `X`
    /// (its centre ignored) and `inner` must have zero constant term.
    pub fn compose(&self, inner: &DiskSeries) -> DiskSeries {
        let m = inner.order();
        assert!(inner.coeff(0).is_zero(), "inner series must vanish at its centre");
        let mut acc = DiskSeries::constant(inner.center(), self.coeff(self.order()), m);
        for n in (0..self.order()).rev() {
            acc = acc.mul(inner).truncate(m);
            acc.coeffs[0] = &acc.coeffs[0] + &self.coeffs[n];
        }
        acc.exact = self.exact && inner.exact && self.order() * inner_degree(inner) <= m;
        acc
    }

    /// Multiplicative inverse; the constant term must be a unit of the field.
    pub fn inverse(&self) -> Result<DiskSeries, AnalyticError> {
        let h0inv = self.coeffs[0].inv().map_err(|_| AnalyticError::NotInvertible)?;
        let m = self.order();
        let mut b = vec![h0inv.clone()];
        for n in 1..=m {
            let mut s = PAdic::zero(self.field());
            for k in 1..=n {
                if !self.coeffs[k].is_zero() {
                    s = &s + &(&self.coeffs[k] * &b[n - k]);
                }
            }
            b.push(-(&s * &h0inv));
        }
        Ok(DiskSeries { center: self.center.clone(), coeffs: b, rlog: self.rlog, exact: m == 0 && self.exact })
    }

    /// Same series about another centre. Exact for polynomials; for
    /// truncated series only coefficients of low degree are reliable.
    pub fn recenter(&self, c: &PAdic) -> DiskSeries {
        let delta = c - &self.center;
        DiskSeries { center: c.clone(), coeffs: taylor_shift(&self.coeffs, &delta), rlog: self.rlog, exact: self.exact }
    }

    /// `f(qT)`, expanded again about the same centre.
    pub fn sigma_q(&self, qq: &PAdic) -> DiskSeries {
        let mut qn = PAdic::one(self.field());
        let mut c = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            c.push(a * &qn);
            qn = &qn * qq;
        }
        // f(qT) = sum a_n q^n (T - c/q)^n
        let qinv = qq.inv().expect("q is a unit");
        let from = &self.center * &qinv;
        let s = DiskSeries { center: from, coeffs: c, rlog: self.rlog, exact: self.exact };
        if self.center.is_zero() {
            return DiskSeries { center: self.center.clone(), ..s };
        }
        s.recenter(&self.center)
    }

    /// Window estimate of the radius of convergence, `log_p` scale.
    pub fn estimate_radius(&self) -> Result<RadiusEstimate, Inconclusive> {
        let vals: Vec<Val> = self.coeffs.iter().map(|a| a.valuation()).collect();
        estimate_from_vals(&vals)
    }
}

fn inner_degree(s: &DiskSeries) -> usize {
    s.coeffs.iter().rposition(|x| !x.is_zero()).unwrap_or(0)
}

fn min_opt(a: Option<Q>, b: Option<Q>) -> Option<Q> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

/// Absolute precision targeted by the element-level series.
fn target_precision(f: &Field) -> Q {
    q(f.precision() as i64 + 2)
}

/// `exp(x)` for `v(x) > 1/(p - 1)`.
pub fn exp_element(x: &PAdic) -> Result<PAdic, AnalyticError> {
    let f = x.field();
    let one = PAdic::one(f);
    if x.is_zero() {
        return Ok(one);
    }
    let v = x.valuation().fin().unwrap();
    let margin = v + omega_log(f.p());
    if margin <= Q::zero() {
        return Err(AnalyticError::ExpDiverges);
    }
    let target = target_precision(f);
    let mut sum = one.clone();
    let mut term = one;
    let mut n = 1i64;
    // v(x^n / n!) >= n (v(x) - 1/(p-1))
    while margin * q(n) <= target + Q::one() {
        term = (&term * x).div(&PAdic::from_int(f, n)).unwrap();
        sum = &sum + &term;
        n += 1;
    }
    Ok(sum)
}

/// `log(1 + x)` for `v(x) > 0`.
pub fn log1p_element(x: &PAdic) -> Result<PAdic, AnalyticError> {
    let f = x.field();
    if x.is_zero() {
        return Ok(PAdic::zero(f));
    }
    let v = x.valuation().fin().unwrap();
    if v <= Q::zero() {
        return Err(AnalyticError::LogDiverges);
    }
    let target = target_precision(f) + v;
    let mut sum = PAdic::zero(f);
    let mut pw = x.clone();
    let mut n = 1i64;
    loop {
        // v(x^n / n) >= n v - log_p n
        let lg = (n as f64).ln() / (f.p() as f64).ln();
        let lower = v * q(n) - q(lg.ceil() as i64);
        if lower > target {
            break;
        }
        let t = pw.div(&PAdic::from_int(f, n)).unwrap();
        sum = if n % 2 == 1 { &sum + &t } else { &sum - &t };
        pw = &pw * x;
        n += 1;
    }
    Ok(sum)
}

/// `exp(g)` as a series, by `n e_n = sum_k k g_k e_{n-k}`.
pub fn exp_series(g: &DiskSeries) -> Result<DiskSeries, AnalyticError> {
    let f = g.field().clone();
    let m = g.order();
    let mut e = vec![exp_element(&g.coeffs[0])?];
    for n in 1..=m {
        let mut s = PAdic::zero(&f);
        for k in 1..=n {
            if !g.coeffs[k].is_zero() {
                s = &s + &(&g.coeffs[k].scale_int(k as i64) * &e[n - k]);
            }
        }
        e.push(s.div(&PAdic::from_int(&f, n as i64)).unwrap());
    }
    let exact = g.exact && g.coeffs.iter().all(|x| x.is_zero());
    Ok(DiskSeries { center: g.center.clone(), coeffs: e, rlog: None, exact })
}

/// `log(1 + g)`, by integrating `g' / (1 + g)`.
pub fn log1p_series(g: &DiskSeries) -> Result<DiskSeries, AnalyticError> {
    let f = g.field().clone();
    let m = g.order();
    let l0 = log1p_element(&g.coeffs[0])?;
    let mut onep = g.clone();
    onep.coeffs[0] = &onep.coeffs[0] + &PAdic::one(&f);
    let inv = onep.inverse()?;
    let dg = g.derivative().pad(m);
    let (quot, _) = conv_trunc(&dg.coeffs, &inv.coeffs, m);
    let mut l = vec![l0];
    for n in 1..=m {
        l.push(quot[n - 1].div(&PAdic::from_int(&f, n as i64)).unwrap());
    }
    Ok(DiskSeries { center: g.center.clone(), coeffs: l, rlog: None, exact: false })
}
