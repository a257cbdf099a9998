//! Affinoid domains `D^+(c_0, R_0)` minus finitely many open disks, their
//! radii, generic points, and invariance under `x -> q x`.
//!
//! Radii are always `p^r` with `r` an exact rational; functions here take and
//! return the exponent `r`.

use num_integer::Integer;
use padic_field::{Field, Norm, PAdic, Q};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error("hole {0} is centred outside the outer disk")]
    HoleOutside(usize),
    #[error("point does not lie in the affinoid")]
    NotInX,
    #[error("elements from different fields")]
    FieldMismatch,
}

/// The disk of radius `p^rlog` around `center`.
#[derive(Clone, Debug)]
pub struct Disk {
    pub center: PAdic,
    pub rlog: Q,
}

impl Disk {
    pub fn new(center: PAdic, rlog: Q) -> Disk {
        Disk { center, rlog }
    }
}

/// The seminorm `|.|_{(c, rho)}`, stored as the pair.
#[derive(Clone, Debug)]
pub struct GenericPointRef {
    pub center: PAdic,
    pub rlog: Q,
}

/// `log_p |a - b|`, `None` when the difference vanishes.
pub fn dist_log(a: &PAdic, b: &PAdic) -> Option<Q> {
    (a - b).norm().log()
}

pub fn dist(a: &PAdic, b: &PAdic) -> Norm {
    (a - b).norm()
}

#[derive(Clone, Debug)]
pub struct Affinoid {
    outer: Disk,
    holes: Vec<Disk>,
}

impl Affinoid {
    pub fn new(outer: Disk, holes: Vec<Disk>) -> Result<Affinoid, GeometryError> {
        for (i, h) in holes.iter().enumerate() {
            if !h.center.field().same_field(outer.center.field()) {
                return Err(GeometryError::FieldMismatch);
            }
            if dist(&h.center, &outer.center) > Norm::Pow(outer.rlog) {
                return Err(GeometryError::HoleOutside(i));
            }
        }
        Ok(Affinoid { outer, holes })
    }

    pub fn disk(center: PAdic, rlog: Q) -> Affinoid {
        Affinoid { outer: Disk::new(center, rlog), holes: Vec::new() }
    }

    /// `{ p^r_in <= |T - c| <= p^r_out }`.
    pub fn annulus(center: PAdic, r_in: Q, r_out: Q) -> Affinoid {
        let hole = Disk::new(center.clone(), r_in);
        Affinoid { outer: Disk::new(center, r_out), holes: vec![hole] }
    }

    pub fn field(&self) -> &Field {
        self.outer.center.field()
    }

    pub fn outer(&self) -> &Disk {
        &self.outer
    }

    pub fn holes(&self) -> &[Disk] {
        &self.holes
    }

    /// Closed outer disk, open holes.
    pub fn contains(&self, c: &PAdic) -> bool {
        if dist(c, &self.outer.center) > Norm::Pow(self.outer.rlog) {
            return false;
        }
        self.holes.iter().all(|h| dist(c, &h.center) >= Norm::Pow(h.rlog))
    }

    /// Index of the hole containing `x`, if any.
    pub fn hole_containing(&self, x: &PAdic) -> Option<usize> {
        self.holes.iter().position(|h| dist(x, &h.center) < Norm::Pow(h.rlog))
    }

    /// `rho_{c,X} = min(R_0, |c - c_1|, ..., |c - c_n|)`.
    pub fn rho_c_x(&self, c: &PAdic) -> Result<Q, GeometryError> {
        if !self.contains(c) {
            return Err(GeometryError::NotInX);
        }
        let mut r = self.outer.rlog;
        for h in &self.holes {
            // c in X forces c != c_i
            let d = dist_log(c, &h.center).expect("point of X equals a hole centre");
            r = r.min(d);
        }
        Ok(r)
    }

    /// Whether `(c, rho)` names a generic point of `X`: the disk
    /// `D^+(c, rho)` lies in the outer disk and meets no hole in an open
    /// subdisk of radius smaller than `rho`.
    pub fn is_generic_point(&self, c: &PAdic, rlog: Q) -> bool {
        if rlog > self.outer.rlog || dist(c, &self.outer.center) > Norm::Pow(self.outer.rlog) {
            return false;
        }
        self.holes.iter().all(|h| dist(c, &h.center).max(Norm::Pow(rlog)) >= Norm::Pow(h.rlog))
    }

    /// Distance from the generic point `t_{c,rho}` to the complement of `X`:
    /// `min(R_0, max(rho, |c - c_i|))`. Equals `rho_{c,X}` for `c` in `X` and
    /// `rho <= rho_{c,X}`.
    pub fn rho_generic(&self, c: &PAdic, rlog: Q) -> Q {
        let mut r = self.outer.rlog;
        for h in &self.holes {
            let d = match dist_log(c, &h.center) {
                Some(d) => d.max(rlog),
                None => rlog,
            };
            r = r.min(d);
        }
        r
    }

    /// `s_X = max(|c_0|, R_0)`.
    pub fn s_x(&self) -> Q {
        match self.outer.center.norm().log() {
            Some(a) => a.max(self.outer.rlog),
            None => self.outer.rlog,
        }
    }

    /// `r_X = min(R_0, R_1, ..., R_n)`.
    pub fn r_x(&self) -> Q {
        self.holes.iter().fold(self.outer.rlog, |r, h| r.min(h.rlog))
    }

    /// The Shilov boundary: the outer generic point followed by one per hole.
    pub fn shilov_points(&self) -> Vec<GenericPointRef> {
        let mut v = vec![GenericPointRef { center: self.outer.center.clone(), rlog: self.outer.rlog }];
        for h in &self.holes {
            v.push(GenericPointRef { center: h.center.clone(), rlog: h.rlog });
        }
        v
    }
}

/// `|q| = 1` and `|q - 1||c| < R`.
pub fn disk_q_invariant(c: &PAdic, rlog: Q, q: &PAdic) -> bool {
    let one = PAdic::one(q.field());
    if q.norm() != Norm::ONE {
        return false;
    }
    (q - &one).norm().mul(c.norm()) < Norm::Pow(rlog)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QInvariance {
    /// `x -> q x` maps `X` to itself, sending hole `i` to hole
    /// `permutation[i]`; `x -> q^{k0} x` fixes every hole.
    Invariant { k0: u64, permutation: Vec<usize> },
    NotInvariant,
    /// Some hole needed more than `bound` iterations.
    Undecided { bound: u64 },
}

pub const DEFAULT_POWER_BOUND: u64 = 256;

/// The permutation of holes induced by `x -> q x`, or `None` when `X` is not
/// mapped onto itself. Hole `i` goes to `perm[i]`.
pub fn hole_permutation(x: &Affinoid, q: &PAdic) -> Option<Vec<usize>> {
    if q.norm() != Norm::ONE || !disk_q_invariant(&x.outer.center, x.outer.rlog, q) {
        return None;
    }
    let mut perm = Vec::with_capacity(x.holes.len());
    for h in &x.holes {
        let image = q * &h.center;
        let j = x
            .holes
            .iter()
            .position(|g| g.rlog == h.rlog && dist(&image, &g.center) < Norm::Pow(g.rlog))?;
        perm.push(j);
    }
    let mut seen = vec![false; perm.len()];
    for &j in &perm {
        if seen[j] {
            return None;
        }
        seen[j] = true;
    }
    Some(perm)
}

pub fn affinoid_q_invariant(x: &Affinoid, q: &PAdic, bound: u64) -> QInvariance {
    let perm = match hole_permutation(x, q) {
        Some(p) => p,
        None => return QInvariance::NotInvariant,
    };
    let one = PAdic::one(q.field());
    let mut k0 = 1u64;
    for h in &x.holes {
        let mut qk = q.clone();
        let mut found = None;
        for k in 1..=bound {
            if (&qk - &one).norm().mul(h.center.norm()) < Norm::Pow(h.rlog) {
                found = Some(k);
                break;
            }
            qk = &qk * q;
        }
        match found {
            Some(k) => k0 = k0.lcm(&k),
            None => return QInvariance::Undecided { bound },
        }
    }
    QInvariance::Invariant { k0, permutation: perm }
}
