//! Classification of a parameter `q` relative to the unit disk around 1.

use crate::element::PAdic;
use crate::val::{Norm, Q};

/// Default bound `k` for the test `q^{p^k} = 1`.
pub const DEFAULT_ROOT_BOUND: u32 = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QClass {
    /// `|q| != 1`.
    NotUnitNorm,
    /// `q^{order} = 1` at the stated residual precision; `order` is a power
    /// of `p` (possibly 1).
    RootOfUnity { order: u64, residual_precision: Q },
    /// `|q - 1| < 1` and no `p`-power root of unity was detected.
    InUnitDisk,
    /// `|q| = 1`, `|q - 1| = 1`.
    Generic,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMembership {
    pub norm_q: Norm,
    pub norm_q_minus_1: Norm,
    pub class: QClass,
}

impl QMembership {
    pub fn is_root_of_unity(&self) -> bool {
        matches!(self.class, QClass::RootOfUnity { .. })
    }

    /// `|q - 1| < 1`, including roots of unity of `p`-power order.
    pub fn in_unit_disk(&self) -> bool {
        self.norm_q_minus_1 < Norm::ONE
    }
}

/// Best-effort classification: `q^{p^k} - 1` is tested for vanishing at the
/// working precision for `k <= bound`.
pub fn q_membership(q: &PAdic, bound: u32) -> QMembership {
    let f = q.field();
    let one = PAdic::one(f);
    let norm_q = q.norm();
    let norm_q_minus_1 = (q - &one).norm();
    if norm_q != Norm::ONE {
        return QMembership { norm_q, norm_q_minus_1, class: QClass::NotUnitNorm };
    }
    let p = f.p();
    let mut z = q.clone();
    let mut order = 1u64;
    for _ in 0..=bound {
        let diff = &z - &one;
        if diff.is_zero() {
            let class = QClass::RootOfUnity { order, residual_precision: diff.precision() };
            return QMembership { norm_q, norm_q_minus_1, class };
        }
        z = z.pow(p);
        order *= p;
    }
    let class = if norm_q_minus_1 < Norm::ONE { QClass::InUnitDisk } else { QClass::Generic };
    QMembership { norm_q, norm_q_minus_1, class }
}
