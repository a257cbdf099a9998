//! Capped-precision arithmetic in `Q_p` and in the cyclotomic tower
//! `K_s = Q_p(zeta_{p^{s+1}})`.
//!
//! Elements carry an exact valuation and an absolute precision. Norms and
//! radii are handled as exact rational exponents of `p`.

pub mod element;
pub mod field;
pub mod newton;
pub mod qclass;
pub mod val;

pub use element::PAdic;
pub use field::{make_field, Field, FieldCtx, FieldError, MAX_DEGREE, MAX_LEVEL};
pub use newton::newton_root_valuations;
pub use qclass::{q_membership, QClass, QMembership, DEFAULT_ROOT_BOUND};
pub use val::{Norm, Val, Q};

/// `log_p(omega)` where `omega = |p|^{1/(p-1)}`.
pub fn omega_log(p: u64) -> Q {
    Q::new(-1, p as i64 - 1)
}

/// `log_p |n!|`, i.e. minus Legendre's formula.
pub fn factorial_norm_log(p: u64, n: u64) -> Q {
    Q::from_integer(-(legendre(p, n) as i64))
}

/// `v_p(n!)`.
pub fn legendre(p: u64, n: u64) -> u64 {
    let mut v = 0;
    let mut m = n / p;
    while m > 0 {
        v += m;
        m /= p;
    }
    v
}

/// Sum of the base-`p` digits of `n`.
pub fn digit_sum(p: u64, mut n: u64) -> u64 {
    let mut s = 0;
    while n > 0 {
        s += n % p;
        n /= p;
    }
    s
}
