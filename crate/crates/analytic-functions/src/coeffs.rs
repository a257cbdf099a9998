//! Operations on coefficient vectors shared by disk series and
//! Mittag-Leffler functions.

use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use padic_field::{Field, PAdic, Val};

static BINOM: OnceLock<Mutex<Vec<Vec<BigInt>>>> = OnceLock::new();

/// Binomial coefficient `C(n, k)`, cached by Pascal rows.
pub fn binom(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let cell = BINOM.get_or_init(|| Mutex::new(vec![vec![BigInt::one()]]));
    let mut rows = cell.lock().unwrap();
    while rows.len() <= n {
        let last = rows.last().unwrap();
        let mut next = Vec::with_capacity(last.len() + 1);
        next.push(BigInt::one());
        for w in last.windows(2) {
            next.push(&w[0] + &w[1]);
        }
        next.push(BigInt::one());
        rows.push(next);
    }
    rows[n][k].clone()
}

pub fn binom_padic(f: &Field, n: usize, k: usize) -> PAdic {
    PAdic::from_bigint(f, &binom(n, k))
}

/// Re-centre a polynomial: given `sum a_k (T - a)^k`, return the
/// coefficients in powers of `(T - a - delta)`. Exact on polynomials.
pub fn taylor_shift(a: &[PAdic], delta: &PAdic) -> Vec<PAdic> {
    let mut c = a.to_vec();
    if delta.is_zero() || c.len() < 2 {
        return c;
    }
    let n = c.len();
    for i in 0..n - 1 {
        for j in (i..n - 1).rev() {
            let t = delta * &c[j + 1];
            c[j] = &c[j] + &t;
        }
    }
    c
}

/// Principal part `sum_k b[k-1] (T - a)^{-k}` re-expanded at a new centre
/// `a - eps`: returns coefficients of `(T - a + eps)^{-j}`, `j = 1..=m`.
/// Converges where `|T - a + eps| > |eps|`.
pub fn laurent_reexpand(b: &[PAdic], eps: &PAdic, m: usize) -> (Vec<PAdic>, bool) {
    let f = eps.field();
    let mut out = vec![PAdic::zero(f); m];
    let mut dropped = false;
    if eps.is_zero() {
        for (k, x) in b.iter().enumerate() {
            if k < m {
                out[k] = &out[k] + x;
            } else if !x.is_zero() {
                dropped = true;
            }
        }
        return (out, dropped);
    }
    let mut epow = vec![PAdic::one(f)];
    for i in 1..m {
        epow.push(&epow[i - 1] * eps);
    }
    for (k0, bk) in b.iter().enumerate() {
        if bk.is_zero() {
            continue;
        }
        let k = k0 + 1;
        // (T - c)^{-k} = sum_j C(k+j-1, j) eps^j (T - c')^{-k-j}
        for j in 0.. {
            let idx = k + j;
            if idx > m {
                dropped = true;
                break;
            }
            let t = &(bk * &epow[j]) * &binom_padic(f, k + j - 1, j);
            out[idx - 1] = &out[idx - 1] + &t;
        }
    }
    (out, dropped)
}

/// Expansion of the principal part `sum_k b[k-1] (T - a)^{-k}` as a power
/// series in `(T - c)` up to degree `m`, where `delta = c - a != 0`.
/// Converges for `|T - c| < |delta|`.
pub fn principal_to_series(b: &[PAdic], delta: &PAdic, m: usize) -> Vec<PAdic> {
    let f = delta.field();
    let mut out = vec![PAdic::zero(f); m + 1];
    if b.iter().all(|x| x.is_zero()) {
        return out;
    }
    let dinv = delta.inv().expect("expansion centre equals the pole");
    let nd = -&dinv;
    // (T - a)^{-k} = delta^{-k} sum_j C(k+j-1, j) (-1/delta)^j (T - c)^j
    let mut ndpow = vec![PAdic::one(f)];
    for i in 1..=m {
        ndpow.push(&ndpow[i - 1] * &nd);
    }
    let mut dk = PAdic::one(f);
    for (k0, bk) in b.iter().enumerate() {
        dk = &dk * &dinv;
        if bk.is_zero() {
            continue;
        }
        let k = k0 + 1;
        let base = bk * &dk;
        for j in 0..=m {
            let t = &(&base * &ndpow[j]) * &binom_padic(f, k + j - 1, j);
            out[j] = &out[j] + &t;
        }
    }
    out
}

/// Negative-degree part of `(sum_k b[k-1] X^{-k}) * (sum_j e[j] X^j)`:
/// coefficients of `X^{-a}`, `a = 1..=m`.
pub fn principal_of_product(b: &[PAdic], e: &[PAdic], m: usize) -> Vec<PAdic> {
    let f = b.first().or(e.first()).expect("nonempty").field().clone();
    let mut out = vec![PAdic::zero(&f); m];
    for (k0, bk) in b.iter().enumerate() {
        if bk.is_zero() {
            continue;
        }
        let k = k0 + 1;
        for a in 1..=k.min(m) {
            if let Some(ej) = e.get(k - a) {
                if !ej.is_zero() {
                    out[a - 1] = &out[a - 1] + &(bk * ej);
                }
            }
        }
    }
    out
}

/// Truncated product of two coefficient vectors; the flag reports whether a
/// nonzero term beyond degree `m` was discarded.
pub fn conv_trunc(a: &[PAdic], b: &[PAdic], m: usize) -> (Vec<PAdic>, bool) {
    let f = a.first().or(b.first()).expect("nonempty").field().clone();
    let mut out = vec![PAdic::zero(&f); m + 1];
    let mut dropped = false;
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            if i + j > m {
                dropped = true;
                break;
            }
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    (out, dropped)
}

pub fn min_val(v: &[PAdic]) -> Val {
    v.iter().map(|x| x.valuation()).min().unwrap_or(Val::Inf)
}

pub fn horner(a: &[PAdic], x: &PAdic) -> PAdic {
    let f = x.field();
    let mut acc = PAdic::zero(f);
    for c in a.iter().rev() {
        acc = &(&acc * x) + c;
    }
    acc
}
