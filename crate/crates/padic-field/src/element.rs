//! Elements of a capped-precision field.
//!
//! An element is stored as `p^e * sum_{i<d} c_i w^i` where `w` is the
//! uniformizer, together with an absolute precision counted in powers of
//! `w`. Since the valuations of the terms `c_i w^i` have pairwise distinct
//! fractional parts, the valuation of the sum is the minimum of the term
//! valuations and is therefore exact.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::field::Field;
use crate::val::{Norm, Val, Q};

#[derive(Clone, Debug)]
pub struct PAdic {
    f: Field,
    e: i64,
    // empty for zero
    c: Vec<BigInt>,
    // absolute precision in uniformizer units
    prec: i64,
}

// absolute precision standing for "exact", in uniformizer units
const EXACT_PREC: i64 = 1 << 30;

fn ceil_div(a: i64, b: i64) -> i64 {
    Integer::div_ceil(&a, &b)
}

fn vp_big(x: &BigInt, p: &BigInt) -> u64 {
    if x.is_zero() {
        return u64::MAX;
    }
    let mut v = 0;
    let mut y = x.clone();
    loop {
        let (q, r) = y.div_rem(p);
        if !r.is_zero() {
            return v;
        }
        v += 1;
        y = q;
    }
}

impl PAdic {
    fn build(f: &Field, e: i64, mut c: Vec<BigInt>, prec: i64) -> PAdic {
        let d = f.degree() as i64;
        let p = f.p_big().clone();
        if c.len() < d as usize {
            c.resize(d as usize, BigInt::zero());
        }
        let mut e = e;
        let mut prec = prec;
        // two passes: the first may shift e, which changes the cap
        for _ in 0..2 {
            reduce(f, e, &mut c, prec);
            if c.iter().all(|x| x.is_zero()) {
                return PAdic::zero_with_prec(f, prec);
            }
            let m = c.iter().filter(|x| !x.is_zero()).map(|x| vp_big(x, &p)).min().unwrap();
            if m > 0 {
                let pm = f.ppow(m);
                for x in c.iter_mut() {
                    *x = &*x / &pm;
                }
                e += m as i64;
            }
            let i0 = c.iter().position(|x| !(x % &p).is_zero()).unwrap() as i64;
            let vw = e * d + i0;
            let cap = vw + f.rel_units();
            if prec <= cap {
                break;
            }
            prec = cap;
        }
        PAdic { f: f.clone(), e, c, prec }
    }

    pub fn zero_with_prec(f: &Field, prec_w: i64) -> PAdic {
        PAdic { f: f.clone(), e: 0, c: Vec::new(), prec: prec_w.min(EXACT_PREC) }
    }

    /// The exact zero.
    pub fn zero(f: &Field) -> PAdic {
        PAdic::zero_with_prec(f, EXACT_PREC)
    }

    /// Whether this is a zero carrying no rounding error.
    pub fn is_exact_zero(&self) -> bool {
        self.c.is_empty() && self.prec >= EXACT_PREC
    }

    pub fn one(f: &Field) -> PAdic {
        PAdic::from_int(f, 1)
    }

    pub fn from_int(f: &Field, n: i64) -> PAdic {
        PAdic::from_bigint(f, &BigInt::from(n))
    }

    pub fn from_bigint(f: &Field, n: &BigInt) -> PAdic {
        if n.is_zero() {
            return PAdic::zero(f);
        }
        let v = vp_big(n, f.p_big()) as i64;
        let d = f.degree() as i64;
        PAdic::build(f, 0, vec![n.clone()], v * d + f.rel_units())
    }

    pub fn from_rational(f: &Field, num: i64, den: i64) -> PAdic {
        PAdic::from_ratio(f, &BigInt::from(num), &BigInt::from(den))
    }

    pub fn from_q(f: &Field, x: Q) -> PAdic {
        PAdic::from_rational(f, *x.numer(), *x.denom())
    }

    pub fn from_ratio(f: &Field, num: &BigInt, den: &BigInt) -> PAdic {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return PAdic::zero(f);
        }
        let p = f.p_big();
        let a = vp_big(num, p);
        let b = vp_big(den, p);
        let u1 = num / f.ppow(a);
        let u2 = den / f.ppow(b);
        let n = f.precision() as u64;
        let modulus = f.ppow(n);
        let inv = modinv(&u2, &modulus);
        let c0 = (u1 * inv).mod_floor(&modulus);
        let e = a as i64 - b as i64;
        let d = f.degree() as i64;
        PAdic::build(f, e, vec![c0], e * d + f.rel_units())
    }

    /// `sum_i coeffs[i] * w^i` for integer coefficients, reduced modulo the
    /// minimal polynomial of the uniformizer.
    pub fn from_uniformizer_poly(f: &Field, coeffs: &[BigInt]) -> PAdic {
        let w = PAdic::uniformizer(f);
        let mut acc = PAdic::zero(f);
        for c in coeffs.iter().rev() {
            acc = &(&acc * &w) + &PAdic::from_bigint(f, c);
        }
        acc
    }

    /// The uniformizer: `p` for `Q_p`, `pi_s = zeta - 1` otherwise.
    pub fn uniformizer(f: &Field) -> PAdic {
        if f.level() < 0 {
            return PAdic::from_int(f, f.p() as i64);
        }
        let mut c = vec![BigInt::zero(); f.degree()];
        if f.degree() == 1 {
            // K_0 over Q_2: zeta_2 = -1, so pi_0 = -2
            return PAdic::from_int(f, -2);
        }
        c[1] = BigInt::one();
        PAdic::build(f, 0, c, 1 + f.rel_units())
    }

    /// `pi_s = zeta_{p^{s+1}} - 1`; `None` for `Q_p`.
    pub fn pi_s(f: &Field) -> Option<PAdic> {
        if f.level() < 0 {
            None
        } else {
            Some(PAdic::uniformizer(f))
        }
    }

    /// `pi_j = zeta_{p^{j+1}} - 1` for `0 <= j <= s`, computed as
    /// `(1 + pi_s)^{p^{s-j}} - 1` so that the whole sequence is compatible.
    pub fn pi_j(f: &Field, j: i32) -> Option<PAdic> {
        if f.level() < 0 || j < 0 || j > f.level() {
            return None;
        }
        let z = PAdic::zeta(f)?;
        let zj = z.pow(f.p().pow((f.level() - j) as u32));
        Some(&zj - &PAdic::one(f))
    }

    /// The primitive `p^{s+1}`-th root of unity `1 + pi_s`.
    pub fn zeta(f: &Field) -> Option<PAdic> {
        PAdic::pi_s(f).map(|x| &x + &PAdic::one(f))
    }

    /// Dwork's `pi`: the root of `X^{p-1} = -p` congruent to `zeta_p - 1`
    /// modulo its square. `None` for `Q_p` with `p` odd, or if Newton's
    /// iteration from `zeta_p - 1` fails to settle.
    pub fn dwork_pi(f: &Field) -> Option<PAdic> {
        let p = f.p() as i64;
        if p == 2 {
            return Some(PAdic::from_int(f, -2));
        }
        let mut x = PAdic::pi_j(f, 0)?;
        let target = PAdic::from_int(f, -p);
        for _ in 0..64 {
            let r = &x.pow(f.p() - 1) - &target;
            if r.is_zero() {
                return Some(x);
            }
            let d = x.pow(f.p() - 2).scale_int(p - 1);
            x = &x - &r.div(&d).ok()?;
        }
        None
    }

    pub fn field(&self) -> &Field {
        &self.f
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Valuation in uniformizer units, `None` for zero.
    fn val_w(&self) -> Option<i64> {
        if self.c.is_empty() {
            return None;
        }
        let p = self.f.p_big();
        let i0 = self.c.iter().position(|x| !(x % p).is_zero()).unwrap() as i64;
        Some(self.e * self.f.degree() as i64 + i0)
    }

    /// Exact valuation; `Inf` when the element is zero at its precision.
    pub fn valuation(&self) -> Val {
        match self.val_w() {
            Some(v) => Val::Fin(Q::new(v, self.f.degree() as i64)),
            None => Val::Inf,
        }
    }

    /// Valuation, or an error if the element is indistinguishable from zero.
    pub fn valuation_exact(&self) -> Result<Q, PrecisionExhausted> {
        self.valuation().fin().ok_or(PrecisionExhausted { prec: self.precision() })
    }

    /// `|x| = p^{-v(x)}`.
    pub fn norm(&self) -> Norm {
        Norm::from_val(self.valuation())
    }

    /// Absolute precision: the element is known modulo `p^{precision}`.
    pub fn precision(&self) -> Q {
        Q::new(self.prec, self.f.degree() as i64)
    }

    /// Relative precision in `p`-adic digits; zero has none.
    pub fn rel_precision(&self) -> Q {
        match self.val_w() {
            Some(v) => Q::new(self.prec - v, self.f.degree() as i64),
            None => Q::zero(),
        }
    }

    /// Valuation of `self - o`, or the precision of the difference when it
    /// vanishes at that precision.
    pub fn agreement(&self, o: &PAdic) -> Q {
        let diff = self - o;
        match diff.valuation() {
            Val::Fin(v) => v,
            Val::Inf => diff.precision(),
        }
    }

    /// Same value, reinterpreted as exact and re-capped in field `g`.
    pub fn lift_exact(&self, g: &Field) -> PAdic {
        assert!(self.f.same_field(g), "field mismatch");
        if self.is_zero() {
            return PAdic::zero(g);
        }
        let vw = self.val_w().unwrap();
        PAdic::build(g, self.e, self.c.clone(), vw + g.rel_units())
    }

    /// Same value with precision capped for field `g`.
    pub fn to_field(&self, g: &Field) -> PAdic {
        assert!(self.f.same_field(g), "field mismatch");
        PAdic::build(g, self.e, self.c.clone(), self.prec)
    }

    /// Drop precision to at most `prec` (absolute, in `v_p` units).
    pub fn truncate_precision(&self, prec: Q) -> PAdic {
        let d = self.f.degree() as i64;
        let pw = (prec * d).floor().to_integer();
        if pw >= self.prec {
            return self.clone();
        }
        if self.is_zero() {
            return PAdic::zero_with_prec(&self.f, pw);
        }
        PAdic::build(&self.f, self.e, self.c.clone(), pw)
    }

    pub fn is_one(&self) -> bool {
        (self - &PAdic::one(&self.f)).is_zero()
    }

    /// `v(x) >= 0`.
    pub fn is_integral(&self) -> bool {
        self.valuation() >= Val::Fin(Q::zero())
    }

    /// `p^e` as an element.
    pub fn p_power(f: &Field, e: i64) -> PAdic {
        let d = f.degree() as i64;
        PAdic::build(f, e, vec![BigInt::one()], e * d + f.rel_units())
    }

    /// Multiply by `p^k` exactly.
    pub fn shift(&self, k: i64) -> PAdic {
        if self.is_zero() {
            return PAdic::zero_with_prec(&self.f, self.prec + k * self.f.degree() as i64);
        }
        PAdic { f: self.f.clone(), e: self.e + k, c: self.c.clone(), prec: self.prec + k * self.f.degree() as i64 }
    }

    pub fn scale_int(&self, k: i64) -> PAdic {
        self * &PAdic::from_int(&self.f, k)
    }

    pub fn pow(&self, k: u64) -> PAdic {
        let mut base = self.clone();
        let mut acc = PAdic::one(&self.f);
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn powi(&self, k: i64) -> Result<PAdic, DivisionByZero> {
        if k >= 0 {
            Ok(self.pow(k as u64))
        } else {
            Ok(self.inv()?.pow((-k) as u64))
        }
    }

    /// The inverse of the uniformizer.
    fn uniformizer_inv(f: &Field) -> PAdic {
        if f.degree() == 1 {
            return PAdic::uniformizer(f).inv().unwrap();
        }
        // w (w^{d-1} + e_{d-1} w^{d-2} + ... + e_1) = -e_0 = -p
        let eis = f.eis();
        let d = f.degree();
        let mut c = vec![BigInt::zero(); d];
        for j in 1..d {
            c[j - 1] = -eis[j].clone();
        }
        c[d - 1] = -BigInt::one();
        PAdic::build(f, -1, c, -1 + f.rel_units())
    }

    pub fn inv(&self) -> Result<PAdic, DivisionByZero> {
        let f = &self.f;
        let vw = self.val_w().ok_or(DivisionByZero)?;
        let d = f.degree() as i64;
        let rel = self.prec - vw;
        let target_prec = -vw + rel;
        if d == 1 {
            let modulus = f.ppow(rel.max(1) as u64);
            let u = modinv(&self.c[0], &modulus);
            return Ok(PAdic::build(f, -self.e, vec![u], target_prec));
        }
        // unit part: u = x / (p^e w^{i0})
        let i0 = vw - self.e * d;
        let mut u = PAdic { f: f.clone(), e: 0, c: self.c.clone(), prec: self.prec - self.e * d };
        if i0 > 0 {
            let winv = PAdic::uniformizer_inv(f);
            for _ in 0..i0 {
                u = &u * &winv;
            }
        }
        let p = f.p_big();
        let a = u.c[0].mod_floor(p);
        let a_inv = modinv(&a, p);
        let mut y = PAdic::from_bigint(f, &a_inv);
        let two = PAdic::from_int(f, 2);
        for _ in 0..64 {
            let r = &PAdic::one(f) - &(&u * &y);
            y = &y * &(&two - &(&u * &y));
            if r.is_zero() {
                break;
            }
        }
        let mut out = y;
        if i0 > 0 {
            let winv = PAdic::uniformizer_inv(f);
            for _ in 0..i0 {
                out = &out * &winv;
            }
        }
        let out = out.shift(-self.e);
        Ok(PAdic::build(f, out.e, out.c, target_prec.min(out.prec)))
    }

    pub fn div(&self, o: &PAdic) -> Result<PAdic, DivisionByZero> {
        Ok(self * &o.inv()?)
    }

    /// Components `(e, c)` of the stored form `p^e sum c_i w^i`.
    pub fn parts(&self) -> (i64, &[BigInt]) {
        (self.e, &self.c)
    }

    /// Rebuild from stored parts with absolute precision `prec` (v_p units).
    pub fn from_parts(f: &Field, e: i64, c: Vec<BigInt>, prec: Q) -> PAdic {
        let d = f.degree() as i64;
        let pw = (prec * d).floor().to_integer();
        PAdic::build(f, e, c, pw)
    }

    /// The integer or rational value when the element lies in `Q_p` and is
    /// represented by a small integer modulo its precision; used for display.
    pub fn to_i64_lossy(&self) -> Option<i64> {
        if self.is_zero() {
            return Some(0);
        }
        if self.c.iter().skip(1).any(|x| !x.is_zero()) || self.e < 0 {
            return None;
        }
        let k = ceil_div(self.prec - self.e * self.f.degree() as i64, self.f.degree() as i64).max(0) as u64;
        let m = self.f.ppow(k);
        let mut u = self.c[0].mod_floor(&m);
        if &u * 2 > m {
            u -= &m;
        }
        (u * self.f.ppow(self.e as u64)).to_i64()
    }
}

fn reduce(f: &Field, e: i64, c: &mut [BigInt], prec: i64) {
    let d = f.degree() as i64;
    for (i, x) in c.iter_mut().enumerate() {
        if x.is_zero() {
            continue;
        }
        let k = ceil_div(prec - e * d - i as i64, d);
        if k <= 0 {
            *x = BigInt::zero();
        } else {
            match f.ppow_ref(k as u64) {
                Some(m) => {
                    if x.is_negative() || &*x >= m {
                        *x = x.mod_floor(m);
                    }
                }
                None => {
                    let m = f.ppow(k as u64);
                    *x = x.mod_floor(&m);
                }
            }
        }
    }
}

pub(crate) fn modinv(a: &BigInt, m: &BigInt) -> BigInt {
    if m.is_one() {
        return BigInt::zero();
    }
    let g = a.extended_gcd(m);
    assert!(g.gcd.is_one(), "not invertible modulo p");
    g.x.mod_floor(m)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("division by an element that is zero at its precision")]
pub struct DivisionByZero;

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("precision exhausted: element is zero modulo p^{prec}")]
pub struct PrecisionExhausted {
    pub prec: Q,
}

fn check(a: &PAdic, b: &PAdic) {
    debug_assert!(a.f.same_field(&b.f), "mixing elements of different fields");
}

impl<'a> Add<&'a PAdic> for &'a PAdic {
    type Output = PAdic;
    fn add(self, o: &PAdic) -> PAdic {
        check(self, o);
        let prec = self.prec.min(o.prec);
        if self.is_zero() {
            return PAdic::build(&self.f, o.e, o.c.clone(), prec);
        }
        if o.is_zero() {
            return PAdic::build(&self.f, self.e, self.c.clone(), prec);
        }
        let e = self.e.min(o.e);
        let s1 = self.f.ppow((self.e - e) as u64);
        let s2 = self.f.ppow((o.e - e) as u64);
        let c: Vec<BigInt> = self
            .c
            .iter()
            .zip(o.c.iter())
            .map(|(a, b)| {
                let x = if s1.is_one() { a.clone() } else { a * &s1 };
                let y = if s2.is_one() { b.clone() } else { b * &s2 };
                x + y
            })
            .collect();
        PAdic::build(&self.f, e, c, prec)
    }
}

impl<'a> Sub<&'a PAdic> for &'a PAdic {
    type Output = PAdic;
    fn sub(self, o: &PAdic) -> PAdic {
        self + &(-o)
    }
}

impl Neg for &PAdic {
    type Output = PAdic;
    fn neg(self) -> PAdic {
        if self.is_zero() {
            return self.clone();
        }
        PAdic::build(&self.f, self.e, self.c.iter().map(|x| -x).collect(), self.prec)
    }
}

impl Neg for PAdic {
    type Output = PAdic;
    fn neg(self) -> PAdic {
        -&self
    }
}

impl<'a> Mul<&'a PAdic> for &'a PAdic {
    type Output = PAdic;
    fn mul(self, o: &PAdic) -> PAdic {
        check(self, o);
        let f = &self.f;
        match (self.val_w(), o.val_w()) {
            (None, None) => return PAdic::zero_with_prec(f, self.prec + o.prec),
            (None, Some(v)) => return PAdic::zero_with_prec(f, self.prec + v),
            (Some(v), None) => return PAdic::zero_with_prec(f, o.prec + v),
            _ => {}
        }
        let v1 = self.val_w().unwrap();
        let v2 = o.val_w().unwrap();
        let prec = (self.prec + v2).min(o.prec + v1);
        let d = f.degree();
        let mut conv = vec![BigInt::zero(); 2 * d - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                conv[i + j] += a * b;
            }
        }
        if d > 1 {
            let eis = f.eis();
            for k in (d..2 * d - 1).rev() {
                let t = std::mem::take(&mut conv[k]);
                if t.is_zero() {
                    continue;
                }
                for (j, ej) in eis.iter().enumerate() {
                    if !ej.is_zero() {
                        conv[k - d + j] -= &t * ej;
                    }
                }
            }
        }
        conv.truncate(d);
        PAdic::build(f, self.e + o.e, conv, prec)
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr<PAdic> for PAdic {
            type Output = PAdic;
            fn $m(self, o: PAdic) -> PAdic {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a PAdic> for PAdic {
            type Output = PAdic;
            fn $m(self, o: &PAdic) -> PAdic {
                (&self).$m(o)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl PartialEq for PAdic {
    /// Equality at the common precision.
    fn eq(&self, o: &PAdic) -> bool {
        (self - o).is_zero()
    }
}

impl fmt::Display for PAdic {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.f.p();
        if self.is_zero() {
            return write!(fm, "O({}^{})", p, self.precision());
        }
        if let Some(v) = self.to_i64_lossy() {
            if v.unsigned_abs() < 1_000_000 {
                return write!(fm, "{} + O({}^{})", v, p, self.precision());
            }
        }
        let w = if self.f.level() < 0 { String::new() } else { "w".to_string() };
        let mut terms = Vec::new();
        for (i, x) in self.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            terms.push(match i {
                0 => format!("{}", x),
                1 => format!("{}*{}", x, w),
                _ => format!("{}*{}^{}", x, w, i),
            });
        }
        write!(fm, "{}^{}*({}) + O({}^{})", p, self.e, terms.join(" + "), p, self.precision())
    }
}
