//! q-integers, q-factorials and q-binomials, the twisted monomials
//! `(T - c)_{q,n} = (T - c)(T - qc)...(T - q^{n-1}c)`, and the triangular
//! change of basis between `(T - c)^n` and `(T - c)_{q,n}`.

use std::sync::{Arc, OnceLock};

use analytic_functions::DiskSeries;
use padic_field::{q_membership, Norm, PAdic, QMembership, Q, DEFAULT_ROOT_BOUND};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QCalcError {
    #[error("index {i} out of range for n = {n}")]
    OutOfRange { n: usize, i: usize },
    #[error("degree {n} exceeds the truncation order {m}")]
    BeyondTruncation { n: usize, m: usize },
    #[error("q is a root of unity of order {0}: q-factorials vanish")]
    RootOfUnity(u64),
    #[error("|q - 1||c| >= rho: the twisted and standard norms need not agree")]
    NormNotCertified,
}

/// `[n]_q = 1 + q + ... + q^{n-1}`.
pub fn q_integer(n: u64, q: &PAdic) -> PAdic {
    let f = q.field();
    let mut s = PAdic::zero(f);
    let mut qj = PAdic::one(f);
    for _ in 0..n {
        s = &s + &qj;
        qj = &qj * q;
    }
    s
}

/// `[n]_q^! = [1]_q [2]_q ... [n]_q`, accumulated as a product so that it
/// vanishes exactly at roots of unity.
pub fn q_factorial(n: u64, q: &PAdic) -> PAdic {
    let f = q.field();
    let mut acc = PAdic::one(f);
    let mut qk = PAdic::zero(f);
    let mut qj = PAdic::one(f);
    for _ in 1..=n {
        qk = &qk + &qj;
        qj = &qj * q;
        acc = &acc * &qk;
    }
    acc
}

/// Coefficients of `prod_{k<n} (1 - q^k T)`.
fn q_product_row(n: usize, q: &PAdic) -> Vec<PAdic> {
    let f = q.field();
    let mut row = vec![PAdic::one(f)];
    let mut qk = PAdic::one(f);
    for _ in 0..n {
        let mut next = vec![PAdic::zero(f); row.len() + 1];
        for (i, a) in row.iter().enumerate() {
            next[i] = &next[i] + a;
            next[i + 1] = &next[i + 1] - &(a * &qk);
        }
        row = next;
        qk = &qk * q;
    }
    row
}

/// `binom(n, i)_q`, read off `prod_{k<n}(1 - q^k T) = sum_i (-1)^i binom(n,i)_q q^{i(i-1)/2} T^i`.
/// Valid at roots of unity.
pub fn q_binomial(n: usize, i: usize, q: &PAdic) -> Result<PAdic, QCalcError> {
    if i > n {
        return Err(QCalcError::OutOfRange { n, i });
    }
    let row = q_product_row(n, q);
    let tri = (i * i.saturating_sub(1) / 2) as i64;
    let qpow = q.powi(-tri).expect("q is a unit");
    let c = &row[i] * &qpow;
    Ok(if i % 2 == 1 { -c } else { c })
}

/// Change of basis between `(T - c)^k` and `(T - c)_{q,k}` up to order `M`.
#[derive(Debug)]
pub struct Basis {
    /// `(T - c)_{q,n} = sum_k tilde[n][k] (T - c)^k`.
    pub tilde: Vec<Vec<PAdic>>,
    /// `(T - c)^n = sum_k inverse[n][k] (T - c)_{q,k}`.
    pub inverse: Vec<Vec<PAdic>>,
}

/// `q`, a centre `c`, and a truncation order.
#[derive(Debug)]
pub struct QContext {
    q: PAdic,
    c: PAdic,
    m: usize,
    membership: QMembership,
    basis: OnceLock<Basis>,
}

impl QContext {
    pub fn new(q: PAdic, c: PAdic, m: usize) -> Arc<QContext> {
        let membership = q_membership(&q, DEFAULT_ROOT_BOUND);
        Arc::new(QContext { q, c, m, membership, basis: OnceLock::new() })
    }

    pub fn q(&self) -> &PAdic {
        &self.q
    }

    pub fn c(&self) -> &PAdic {
        &self.c
    }

    pub fn order(&self) -> usize {
        self.m
    }

    pub fn membership(&self) -> &QMembership {
        &self.membership
    }

    /// `|q - 1||c|`.
    pub fn shift_norm(&self) -> Norm {
        (&self.q - &PAdic::one(self.q.field())).norm().mul(self.c.norm())
    }

    pub fn basis(&self) -> &Basis {
        self.basis.get_or_init(|| self.build_basis())
    }

    fn build_basis(&self) -> Basis {
        let f = self.q.field();
        let one = PAdic::one(f);
        // beta_k = (q^k - 1) c
        let mut beta = Vec::with_capacity(self.m + 1);
        let mut qk = one.clone();
        for _ in 0..=self.m {
            beta.push(&(&qk - &one) * &self.c);
            qk = &qk * &self.q;
        }
        let mut tilde = vec![vec![one.clone()]];
        let mut inverse = vec![vec![one.clone()]];
        for n in 0..self.m {
            // (T-c)_{q,n+1} = (T-c)_{q,n} ((T - c) - beta_n)
            let row = &tilde[n];
            let mut next = vec![PAdic::zero(f); n + 2];
            for (k, a) in row.iter().enumerate() {
                next[k + 1] = &next[k + 1] + a;
                next[k] = &next[k] - &(a * &beta[n]);
            }
            tilde.push(next);
            // (T-c) (T-c)_{q,k} = (T-c)_{q,k+1} + beta_k (T-c)_{q,k}
            let row = &inverse[n];
            let mut next = vec![PAdic::zero(f); n + 2];
            for (k, a) in row.iter().enumerate() {
                next[k + 1] = &next[k + 1] + a;
                next[k] = &next[k] + &(a * &beta[k]);
            }
            inverse.push(next);
        }
        Basis { tilde, inverse }
    }
}

/// `sum_n a_n (T - c)_{q,n}`.
#[derive(Clone, Debug)]
pub struct TwistedSeries {
    ctx: Arc<QContext>,
    coeffs: Vec<PAdic>,
}

impl TwistedSeries {
    pub fn new(ctx: &Arc<QContext>, coeffs: Vec<PAdic>) -> TwistedSeries {
        TwistedSeries { ctx: ctx.clone(), coeffs }
    }

    pub fn context(&self) -> &Arc<QContext> {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[PAdic] {
        &self.coeffs
    }

    /// `sup_n |a_n| rho^n`, refused unless `|q - 1||c| < rho`.
    pub fn gauss_norm(&self, rlog: Q) -> Result<Norm, QCalcError> {
        if self.ctx.shift_norm() >= Norm::Pow(rlog) {
            return Err(QCalcError::NormNotCertified);
        }
        Ok(sup_norm(&self.coeffs, rlog))
    }

    /// Product through the standard basis.
    pub fn mul(&self, o: &TwistedSeries) -> TwistedSeries {
        let a = from_twisted(self);
        let b = from_twisted(o);
        to_twisted(&a.mul(&b), &self.ctx)
    }
}

fn sup_norm(c: &[PAdic], rlog: Q) -> Norm {
    c.iter().enumerate().map(|(n, a)| a.norm().mul(Norm::Pow(rlog * Q::from_integer(n as i64)))).max().unwrap_or(Norm::Zero)
}

/// `(T - c)_{q,n}` expanded in powers of `T - c`.
pub fn twisted_monomial(n: usize, ctx: &QContext) -> Result<DiskSeries, QCalcError> {
    if n > ctx.m {
        return Err(QCalcError::BeyondTruncation { n, m: ctx.m });
    }
    let mut c = ctx.basis().tilde[n].clone();
    c.resize(ctx.m + 1, PAdic::zero(ctx.q.field()));
    Ok(DiskSeries::polynomial(ctx.c.clone(), c))
}

/// Coefficients of `f` (a series about `c`) in the twisted basis.
pub fn to_twisted(f: &DiskSeries, ctx: &Arc<QContext>) -> TwistedSeries {
    debug_assert!((f.center() - &ctx.c).is_zero(), "series must be centred at c");
    let b = ctx.basis();
    let m = ctx.m;
    let fld = ctx.q.field();
    let mut out = vec![PAdic::zero(fld); m + 1];
    for (k, a) in f.coeffs().iter().enumerate().take(m + 1) {
        if a.is_zero() {
            continue;
        }
        for (n, x) in b.inverse[k].iter().enumerate() {
            out[n] = &out[n] + &(a * x);
        }
    }
    TwistedSeries { ctx: ctx.clone(), coeffs: out }
}

pub fn from_twisted(g: &TwistedSeries) -> DiskSeries {
    let b = g.ctx.basis();
    let m = g.ctx.m;
    let fld = g.ctx.q.field();
    let mut out = vec![PAdic::zero(fld); m + 1];
    for (n, a) in g.coeffs.iter().enumerate().take(m + 1) {
        if a.is_zero() {
            continue;
        }
        for (k, x) in b.tilde[n].iter().enumerate() {
            out[k] = &out[k] + &(a * x);
        }
    }
    DiskSeries::polynomial(g.ctx.c.clone(), out)
}

/// `d_q` on a polynomial given by its coefficients in powers of `T`.
pub fn d_q_t_poly(a: &[PAdic], q: &PAdic) -> Vec<PAdic> {
    let f = q.field();
    let mut out = vec![PAdic::zero(f); a.len().max(1)];
    let mut qint = PAdic::zero(f);
    let mut qk = PAdic::one(f);
    for k in 1..a.len() {
        qint = &qint + &qk;
        qk = &qk * q;
        out[k - 1] = &a[k] * &qint;
    }
    out
}

/// `f(q^i T)` on coefficients in powers of `T`.
pub fn sigma_t_poly(a: &[PAdic], q: &PAdic) -> Vec<PAdic> {
    let mut qk = PAdic::one(q.field());
    a.iter()
        .map(|x| {
            let y = x * &qk;
            qk = &qk * q;
            y
        })
        .collect()
}

fn t_coeffs(f: &DiskSeries) -> Vec<PAdic> {
    f.recenter(&PAdic::zero(f.field())).coeffs().to_vec()
}

/// `a_n = d_q^n(f)(c) / [n]_q^!`.
pub fn twisted_taylor_coeffs(f: &DiskSeries, ctx: &Arc<QContext>) -> Result<TwistedSeries, QCalcError> {
    if let padic_field::QClass::RootOfUnity { order, .. } = ctx.membership.class {
        return Err(QCalcError::RootOfUnity(order));
    }
    let mut d = t_coeffs(f);
    let mut out = Vec::with_capacity(ctx.m + 1);
    for n in 0..=ctx.m {
        let val = eval_t_poly(&d, &ctx.c);
        let fact = q_factorial(n as u64, &ctx.q);
        out.push(val.div(&fact).expect("q-factorial of a non-root of unity"));
        d = d_q_t_poly(&d, &ctx.q);
    }
    Ok(TwistedSeries { ctx: ctx.clone(), coeffs: out })
}

fn eval_t_poly(a: &[PAdic], x: &PAdic) -> PAdic {
    let mut acc = PAdic::zero(x.field());
    for c in a.iter().rev() {
        acc = &(&acc * x) + c;
    }
    acc
}

fn poly_mul(a: &[PAdic], b: &[PAdic]) -> Vec<PAdic> {
    let f = a[0].field();
    let mut out = vec![PAdic::zero(f); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] = &out[i + j] + &(x * y);
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeibnizReport {
    pub n: usize,
    /// Minimum over coefficients of `v(lhs - rhs)`.
    pub min_difference_valuation: Q,
}

impl LeibnizReport {
    pub fn passes(&self, threshold: Q) -> bool {
        self.min_difference_valuation >= threshold
    }
}

/// Compares `d_q^n(fg)(T)` with `sum_i binom(n,i)_q d_q^{n-i}(f)(q^i T) d_q^i(g)(T)`
/// on polynomials.
pub fn q_leibniz_check(f: &DiskSeries, g: &DiskSeries, n: usize, ctx: &QContext) -> LeibnizReport {
    let q = &ctx.q;
    let a = t_coeffs(f);
    let b = t_coeffs(g);
    let mut lhs = poly_mul(&a, &b);
    for _ in 0..n {
        lhs = d_q_t_poly(&lhs, q);
    }
    let mut da = vec![a.clone()];
    let mut db = vec![b.clone()];
    for i in 0..n {
        da.push(d_q_t_poly(&da[i], q));
        db.push(d_q_t_poly(&db[i], q));
    }
    let fld = q.field();
    let mut rhs = vec![PAdic::zero(fld); lhs.len()];
    for i in 0..=n {
        let qi = q.pow(i as u64);
        let term = poly_mul(&sigma_t_poly(&da[n - i], &qi), &db[i]);
        let c = q_binomial(n, i, q).unwrap();
        for (k, t) in term.iter().enumerate() {
            if k < rhs.len() {
                rhs[k] = &rhs[k] + &(&c * t);
            }
        }
    }
    let min = lhs.iter().zip(&rhs).map(|(x, y)| x.agreement(y)).min().unwrap();
    LeibnizReport { n, min_difference_valuation: min }
}
