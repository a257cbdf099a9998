//! Valuations and norms as exact exponents.

use std::fmt;

use num_rational::Ratio;
use num_traits::{Signed, Zero};

pub type Q = Ratio<i64>;

/// A `p`-adic valuation (`v_p(p) = 1`), possibly infinite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Val {
    Fin(Q),
    Inf,
}

impl Val {
    pub fn fin(self) -> Option<Q> {
        match self {
            Val::Fin(v) => Some(v),
            Val::Inf => None,
        }
    }

    pub fn is_inf(self) -> bool {
        matches!(self, Val::Inf)
    }

    pub fn add(self, o: Val) -> Val {
        match (self, o) {
            (Val::Fin(a), Val::Fin(b)) => Val::Fin(a + b),
            _ => Val::Inf,
        }
    }

    pub fn min(self, o: Val) -> Val {
        std::cmp::min(self, o)
    }
}

impl From<Q> for Val {
    fn from(v: Q) -> Self {
        Val::Fin(v)
    }
}

impl fmt::Display for Val {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Val::Fin(v) => write!(f, "{}", v),
            Val::Inf => write!(f, "inf"),
        }
    }
}

/// A norm `p^e`, or zero. Used for absolute values, Gauss norms and radii.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Norm {
    Zero,
    Pow(Q),
}

impl Norm {
    pub const ONE: Norm = Norm::Pow(Q::new_raw(0, 1));

    pub fn pow_of_p(e: Q) -> Norm {
        Norm::Pow(e)
    }

    /// The norm `p^{-v}`.
    pub fn from_val(v: Val) -> Norm {
        match v {
            Val::Fin(v) => Norm::Pow(-v),
            Val::Inf => Norm::Zero,
        }
    }

    pub fn to_val(self) -> Val {
        match self {
            Norm::Zero => Val::Inf,
            Norm::Pow(e) => Val::Fin(-e),
        }
    }

    /// `log_p` of the norm, `None` for zero.
    pub fn log(self) -> Option<Q> {
        match self {
            Norm::Zero => None,
            Norm::Pow(e) => Some(e),
        }
    }

    pub fn is_zero(self) -> bool {
        matches!(self, Norm::Zero)
    }

    pub fn mul(self, o: Norm) -> Norm {
        match (self, o) {
            (Norm::Pow(a), Norm::Pow(b)) => Norm::Pow(a + b),
            _ => Norm::Zero,
        }
    }

    /// `self / o`; panics when dividing by zero.
    pub fn div(self, o: Norm) -> Norm {
        match (self, o) {
            (_, Norm::Zero) => panic!("division by the zero norm"),
            (Norm::Zero, _) => Norm::Zero,
            (Norm::Pow(a), Norm::Pow(b)) => Norm::Pow(a - b),
        }
    }

    pub fn powi(self, k: i64) -> Norm {
        match self {
            Norm::Zero if k > 0 => Norm::Zero,
            Norm::Zero if k == 0 => Norm::ONE,
            Norm::Zero => panic!("negative power of the zero norm"),
            Norm::Pow(e) => Norm::Pow(e * k),
        }
    }

    pub fn max(self, o: Norm) -> Norm {
        std::cmp::max(self, o)
    }

    pub fn min(self, o: Norm) -> Norm {
        std::cmp::min(self, o)
    }

    /// Approximate real value, for display only.
    pub fn approx(self, p: u64) -> f64 {
        match self {
            Norm::Zero => 0.0,
            Norm::Pow(e) => (p as f64).powf(*e.numer() as f64 / *e.denom() as f64),
        }
    }
}

impl fmt::Display for Norm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Norm::Zero => write!(f, "0"),
            Norm::Pow(e) if e.is_zero() => write!(f, "1"),
            Norm::Pow(e) if e.is_negative() => write!(f, "p^({})", e),
            Norm::Pow(e) => write!(f, "p^{}", e),
        }
    }
}

/// Decimal rendering of an exact rational, rounded to `digits` places.
pub fn q_decimal(x: Q, digits: usize) -> String {
    let neg = x.is_negative();
    let num = x.numer().unsigned_abs() as u128;
    let den = *x.denom() as u128;
    let scale = 10u128.pow(digits as u32);
    let scaled = (num * scale * 2 + den) / (den * 2);
    let int = scaled / scale;
    let frac = scaled % scale;
    let sign = if neg && scaled != 0 { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac:0width$}", width = digits)
    }
}
