//! Field descriptors for `Q_p` and `K_s = Q_p(zeta_{p^{s+1}})`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

/// Largest supported extension level `s`.
pub const MAX_LEVEL: i32 = 3;
/// Largest supported degree `p^s (p - 1)`.
pub const MAX_DEGREE: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("precision must be at least 1, got {0}")]
    BadPrecision(u32),
    #[error("extension level {s} unsupported for p = {p} (s must lie in -1..={max} and the degree must not exceed {deg})", max = MAX_LEVEL, deg = MAX_DEGREE)]
    UnsupportedLevel { p: u64, s: i32 },
}

/// Descriptor of a capped-precision field.
///
/// For `s >= 0` the uniformizer is `pi_s = zeta - 1`, whose minimal
/// polynomial is the Eisenstein polynomial `Phi_{p^{s+1}}(1 + x)`. For
/// `s = -1` the field is `Q_p` and the uniformizer is `p` itself.
#[derive(Debug)]
pub struct FieldCtx {
    p: u64,
    s: i32,
    n: u32,
    d: usize,
    p_big: BigInt,
    // E(x) = x^d + sum_{j<d} eis[j] x^j; empty for Q_p.
    eis: Vec<BigInt>,
    ppow: Vec<BigInt>,
}

pub type Field = Arc<FieldCtx>;

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut k = 2;
    while k * k <= p {
        if p.is_multiple_of(k) {
            return false;
        }
        k += 1;
    }
    true
}

pub fn make_field(p: u64, s: i32, n: u32) -> Result<Field, FieldError> {
    if !is_prime(p) {
        return Err(FieldError::NotPrime(p));
    }
    if n < 1 {
        return Err(FieldError::BadPrecision(n));
    }
    if !(-1..=MAX_LEVEL).contains(&s) {
        return Err(FieldError::UnsupportedLevel { p, s });
    }
    let d = if s < 0 {
        1
    } else {
        match (p as usize).checked_pow(s as u32).map(|x| x * (p as usize - 1)) {
            Some(d) if d <= MAX_DEGREE => d,
            _ => return Err(FieldError::UnsupportedLevel { p, s }),
        }
    };
    let eis = if s < 0 { Vec::new() } else { eisenstein(p, s as u32) };
    let p_big = BigInt::from(p);
    let mut ppow = Vec::with_capacity(2 * n as usize + 8);
    let mut acc = BigInt::one();
    for _ in 0..(2 * n as usize + 8) {
        ppow.push(acc.clone());
        acc *= &p_big;
    }
    Ok(Arc::new(FieldCtx { p, s, n, d, p_big, eis, ppow }))
}

/// Coefficients of `Phi_{p^{s+1}}(1 + x) = sum_{j<p} (1 + x)^{j p^s}`, low
/// degree first, leading coefficient dropped.
fn eisenstein(p: u64, s: u32) -> Vec<BigInt> {
    let m = p.pow(s) as usize;
    let deg = m * (p as usize - 1);
    let mut out = vec![BigInt::zero(); deg + 1];
    for j in 0..p as usize {
        let e = j * m;
        // binomial row of (1+x)^e
        let mut b = BigInt::one();
        for k in 0..=e {
            out[k] += &b;
            b = b * BigInt::from(e - k) / BigInt::from(k + 1);
        }
    }
    debug_assert!(out[deg].is_one());
    out.truncate(deg);
    out
}

impl FieldCtx {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn level(&self) -> i32 {
        self.s
    }

    /// Relative precision in `p`-adic digits.
    pub fn precision(&self) -> u32 {
        self.n
    }

    /// Degree (and ramification index) over `Q_p`.
    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn p_big(&self) -> &BigInt {
        &self.p_big
    }

    pub(crate) fn eis(&self) -> &[BigInt] {
        &self.eis
    }

    pub fn ppow(&self, k: u64) -> BigInt {
        match self.ppow.get(k as usize) {
            Some(x) => x.clone(),
            None => num_traits::pow(self.p_big.clone(), k as usize),
        }
    }

    pub(crate) fn ppow_ref(&self, k: u64) -> Option<&BigInt> {
        self.ppow.get(k as usize)
    }

    /// Relative precision in uniformizer units.
    pub(crate) fn rel_units(&self) -> i64 {
        self.n as i64 * self.d as i64
    }

    pub fn same_field(&self, o: &FieldCtx) -> bool {
        self.p == o.p && self.s == o.s
    }

    /// The same field with a different precision.
    pub fn with_precision(&self, n: u32) -> Field {
        make_field(self.p, self.s, n).expect("valid descriptor")
    }

    /// Minimal polynomial of the uniformizer, low degree first, monic.
    pub fn uniformizer_minpoly(&self) -> Vec<BigInt> {
        if self.s < 0 {
            return vec![-self.p_big.clone(), BigInt::one()];
        }
        let mut v = self.eis.clone();
        v.push(BigInt::one());
        v
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, o: &Self) -> bool {
        self.p == o.p && self.s == o.s && self.n == o.n
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_descriptors() {
        assert_eq!(make_field(4, -1, 10).unwrap_err(), FieldError::NotPrime(4));
        assert_eq!(make_field(1, -1, 10).unwrap_err(), FieldError::NotPrime(1));
        assert_eq!(make_field(3, -1, 0).unwrap_err(), FieldError::BadPrecision(0));
        assert!(matches!(make_field(3, -2, 10), Err(FieldError::UnsupportedLevel { .. })));
        assert!(matches!(make_field(3, 4, 10), Err(FieldError::UnsupportedLevel { .. })));
        // 5^3 * 4 = 500 exceeds the degree cap
        assert!(matches!(make_field(5, 3, 10), Err(FieldError::UnsupportedLevel { .. })));
    }

    #[test]
    fn degrees() {
        assert_eq!(make_field(3, -1, 50).unwrap().degree(), 1);
        assert_eq!(make_field(3, 0, 50).unwrap().degree(), 2);
        assert_eq!(make_field(2, 1, 40).unwrap().degree(), 2);
        assert_eq!(make_field(2, 3, 20).unwrap().degree(), 8);
        assert_eq!(make_field(3, 2, 20).unwrap().degree(), 18);
    }

    #[test]
    fn eisenstein_shape() {
        // Phi_3(1+x) = x^2 + 3x + 3
        assert_eq!(eisenstein(3, 0), vec![BigInt::from(3), BigInt::from(3)]);
        // Phi_4(1+x) = x^2 + 2x + 2
        assert_eq!(eisenstein(2, 1), vec![BigInt::from(2), BigInt::from(2)]);
        for (p, s) in [(2u64, 2u32), (3, 1), (5, 1), (2, 3)] {
            let e = eisenstein(p, s);
            assert_eq!(e[0], BigInt::from(p));
            assert!(e.iter().all(|c| (c % BigInt::from(p)).is_zero()));
        }
    }
}
