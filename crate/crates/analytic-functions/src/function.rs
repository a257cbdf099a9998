//! Analytic elements on an affinoid in truncated Mittag-Leffler form:
//! a polynomial in `T - c_0` plus one principal part in `(T - c_i)^{-1}`
//! per hole.

use std::sync::Arc;

use affinoid_geometry::{dist, hole_permutation, Affinoid, Disk};
use padic_field::{Field, Norm, PAdic, Val, Q};

use crate::coeffs::{conv_trunc, horner, laurent_reexpand, min_val, principal_of_product, principal_to_series, taylor_shift};
use crate::series::{DiskSeries, GaussNorm};
use crate::AnalyticError;

#[derive(Clone, Debug)]
pub struct AnalyticFunction {
    dom: Arc<Affinoid>,
    // len m + 1
    poly: Vec<PAdic>,
    // per hole, len m; entry k - 1 multiplies (T - c_i)^{-k}
    holes: Vec<Vec<PAdic>>,
    exact: bool,
}

fn zeros(f: &Field, n: usize) -> Vec<PAdic> {
    vec![PAdic::zero(f); n]
}

fn add_into(acc: &mut [PAdic], v: &[PAdic]) {
    for (a, b) in acc.iter_mut().zip(v) {
        if !b.is_zero() {
            *a = &*a + b;
        }
    }
}

pub fn same_domain(a: &Affinoid, b: &Affinoid) -> bool {
    let eq = |x: &Disk, y: &Disk| x.rlog == y.rlog && (&x.center - &y.center).is_zero();
    eq(a.outer(), b.outer()) && a.holes().len() == b.holes().len() && a.holes().iter().zip(b.holes()).all(|(x, y)| eq(x, y))
}

fn q_integer(qq: &PAdic, k: usize) -> PAdic {
    let f = qq.field();
    let mut s = PAdic::zero(f);
    let mut qj = PAdic::one(f);
    for _ in 0..k {
        s = &s + &qj;
        qj = &qj * qq;
    }
    s
}

impl AnalyticFunction {
    pub fn zero(dom: &Arc<Affinoid>, m: usize) -> AnalyticFunction {
        let f = dom.field();
        AnalyticFunction { dom: dom.clone(), poly: zeros(f, m + 1), holes: vec![zeros(f, m); dom.holes().len()], exact: true }
    }

    pub fn constant(dom: &Arc<Affinoid>, a: PAdic, m: usize) -> AnalyticFunction {
        let mut z = AnalyticFunction::zero(dom, m);
        z.poly[0] = a;
        z
    }

    pub fn one(dom: &Arc<Affinoid>, m: usize) -> AnalyticFunction {
        AnalyticFunction::constant(dom, PAdic::one(dom.field()), m)
    }

    /// Polynomial with coefficients in powers of `T`.
    pub fn from_t_poly(dom: &Arc<Affinoid>, t_coeffs: &[PAdic], m: usize) -> AnalyticFunction {
        let mut z = AnalyticFunction::zero(dom, m);
        let s = taylor_shift(t_coeffs, &dom.outer().center);
        for (k, a) in s.into_iter().enumerate() {
            if k <= m {
                z.poly[k] = a;
            } else if !a.is_zero() {
                z.exact = false;
            }
        }
        z
    }

    /// `T^k` for any integer `k`.
    pub fn monomial(dom: &Arc<Affinoid>, k: i64, m: usize) -> Result<AnalyticFunction, AnalyticError> {
        let f = dom.field();
        if k >= 0 {
            let mut c = zeros(f, k as usize + 1);
            c[k as usize] = PAdic::one(f);
            return Ok(AnalyticFunction::from_t_poly(dom, &c, m));
        }
        AnalyticFunction::pole(dom, &PAdic::zero(f), (-k) as usize, m)
    }

    /// `(T - a)^{-k}` for `a` outside `X`.
    pub fn pole(dom: &Arc<Affinoid>, a: &PAdic, k: usize, m: usize) -> Result<AnalyticFunction, AnalyticError> {
        let f = dom.field();
        let mut b = zeros(f, k);
        b[k - 1] = PAdic::one(f);
        let mut z = AnalyticFunction::zero(dom, m.max(k));
        if let Some(i) = dom.holes().iter().position(|h| (&h.center - a).is_zero()) {
            z.holes[i][k - 1] = PAdic::one(f);
            return Ok(z);
        }
        if let Some(i) = dom.hole_containing(a) {
            let eps = a - &dom.holes()[i].center;
            let (re, dropped) = laurent_reexpand(&b, &eps, z.order());
            z.holes[i] = re;
            z.exact = !dropped;
            return Ok(z);
        }
        let c0 = &dom.outer().center;
        if dist(a, c0) > Norm::Pow(dom.outer().rlog) {
            z.poly = principal_to_series(&b, &(c0 - a), z.order());
            z.exact = false;
            return Ok(z);
        }
        Err(AnalyticError::PoleInDomain)
    }

    pub fn from_parts(dom: &Arc<Affinoid>, poly: Vec<PAdic>, holes: Vec<Vec<PAdic>>, exact: bool) -> AnalyticFunction {
        assert_eq!(holes.len(), dom.holes().len(), "one principal part per hole");
        let m = poly.len().saturating_sub(1).max(holes.iter().map(|h| h.len()).max().unwrap_or(0));
        let f = dom.field();
        let mut z = AnalyticFunction { dom: dom.clone(), poly, holes, exact };
        z.poly.resize(m + 1, PAdic::zero(f));
        for h in z.holes.iter_mut() {
            h.resize(m, PAdic::zero(f));
        }
        z
    }

    /// A series about the outer centre, read as the polynomial part.
    pub fn from_disk_series(dom: &Arc<Affinoid>, s: &DiskSeries) -> AnalyticFunction {
        assert!((s.center() - &dom.outer().center).is_zero(), "series must be centred at c_0");
        let mut z = AnalyticFunction::zero(dom, s.order());
        z.poly = s.coeffs().to_vec();
        z.exact = s.is_exact();
        z
    }

    pub fn domain(&self) -> &Arc<Affinoid> {
        &self.dom
    }

    pub fn field(&self) -> &Field {
        self.dom.field()
    }

    pub fn order(&self) -> usize {
        self.poly.len() - 1
    }

    pub fn poly(&self) -> &[PAdic] {
        &self.poly
    }

    pub fn hole_part(&self, i: usize) -> &[PAdic] {
        &self.holes[i]
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    pub fn mark_inexact(mut self) -> AnalyticFunction {
        self.exact = false;
        self
    }

    pub fn pad(&self, m: usize) -> AnalyticFunction {
        if m <= self.order() {
            return self.clone();
        }
        let f = self.field();
        let mut z = self.clone();
        z.poly.resize(m + 1, PAdic::zero(f));
        for h in z.holes.iter_mut() {
            h.resize(m, PAdic::zero(f));
        }
        z
    }

    pub fn truncate(&self, m: usize) -> AnalyticFunction {
        if m >= self.order() {
            return self.clone();
        }
        let mut z = self.clone();
        let tail = z.poly.split_off(m + 1);
        let mut lost = tail.iter().any(|x| !x.is_zero());
        for h in z.holes.iter_mut() {
            lost |= h.split_off(m).iter().any(|x| !x.is_zero());
        }
        z.exact &= !lost;
        z
    }

    fn check_domain(&self, o: &AnalyticFunction) {
        debug_assert!(Arc::ptr_eq(&self.dom, &o.dom) || same_domain(&self.dom, &o.dom), "functions on different domains");
    }

    fn zip(&self, o: &AnalyticFunction, op: impl Fn(&PAdic, &PAdic) -> PAdic) -> AnalyticFunction {
        self.check_domain(o);
        let m = self.order().max(o.order());
        let a = self.pad(m);
        let b = o.pad(m);
        AnalyticFunction {
            dom: self.dom.clone(),
            poly: a.poly.iter().zip(&b.poly).map(|(x, y)| op(x, y)).collect(),
            holes: a.holes.iter().zip(&b.holes).map(|(h, g)| h.iter().zip(g).map(|(x, y)| op(x, y)).collect()).collect(),
            exact: self.exact && o.exact,
        }
    }

    pub fn add(&self, o: &AnalyticFunction) -> AnalyticFunction {
        self.zip(o, |a, b| a + b)
    }

    pub fn sub(&self, o: &AnalyticFunction) -> AnalyticFunction {
        self.zip(o, |a, b| a - b)
    }

    pub fn map_coeffs(&self, op: impl Fn(&PAdic) -> PAdic) -> AnalyticFunction {
        AnalyticFunction {
            dom: self.dom.clone(),
            poly: self.poly.iter().map(&op).collect(),
            holes: self.holes.iter().map(|h| h.iter().map(&op).collect()).collect(),
            exact: self.exact,
        }
    }

    pub fn neg(&self) -> AnalyticFunction {
        self.map_coeffs(|a| -a)
    }

    pub fn scale(&self, k: &PAdic) -> AnalyticFunction {
        self.map_coeffs(|a| a * k)
    }

    pub fn add_constant(&self, k: &PAdic) -> AnalyticFunction {
        let mut z = self.clone();
        z.poly[0] = &z.poly[0] + k;
        z
    }

    pub fn is_zero(&self) -> bool {
        self.poly.iter().all(|x| x.is_zero()) && self.holes.iter().flatten().all(|x| x.is_zero())
    }

    /// Product, re-expanding cross terms by partial fractions. Only
    /// `poly * poly` and products of principal parts at the same hole are
    /// truncated.
    pub fn mul(&self, o: &AnalyticFunction) -> AnalyticFunction {
        self.check_domain(o);
        let m = self.order().max(o.order());
        let a = self.pad(m);
        let b = o.pad(m);
        let f = self.field().clone();
        let mut out = AnalyticFunction::zero(&self.dom, m);
        let (pp, mut dropped) = conv_trunc(&a.poly, &b.poly, m);
        out.poly = pp;
        let c0 = &self.dom.outer().center;
        let nh = self.holes.len();
        for i in 0..nh {
            let ci = &self.dom.holes()[i].center;
            for (p, h) in [(&a.poly, &b.holes[i]), (&b.poly, &a.holes[i])] {
                if h.iter().all(|x| x.is_zero()) || p.iter().all(|x| x.is_zero()) {
                    continue;
                }
                let ps = taylor_shift(p, &(ci - c0));
                let neg = principal_of_product(h, &ps, m);
                add_into(&mut out.holes[i], &neg);
                // nonnegative powers of (T - c_i)
                let mut nonneg = zeros(&f, m + 1);
                for (k0, bk) in h.iter().enumerate() {
                    if bk.is_zero() {
                        continue;
                    }
                    let k = k0 + 1;
                    for e in 0..=m {
                        if let Some(pj) = ps.get(e + k) {
                            if !pj.is_zero() {
                                nonneg[e] = &nonneg[e] + &(bk * pj);
                            }
                        }
                    }
                }
                let back = taylor_shift(&nonneg, &(c0 - ci));
                add_into(&mut out.poly, &back);
            }
            for j in 0..nh {
                let (hi, hj) = (&a.holes[i], &b.holes[j]);
                if hi.iter().all(|x| x.is_zero()) || hj.iter().all(|x| x.is_zero()) {
                    continue;
                }
                if i == j {
                    for (x0, x) in hi.iter().enumerate() {
                        for (y0, y) in hj.iter().enumerate() {
                            if x.is_zero() || y.is_zero() {
                                continue;
                            }
                            let k = x0 + y0 + 2;
                            if k <= m {
                                out.holes[i][k - 1] = &out.holes[i][k - 1] + &(x * y);
                            } else {
                                dropped = true;
                            }
                        }
                    }
                    continue;
                }
                let cj = &self.dom.holes()[j].center;
                // principal part at c_i of H_i * H_j, and at c_j
                let ej = principal_to_series(hj, &(ci - cj), m);
                add_into(&mut out.holes[i], &principal_of_product(hi, &ej, m));
                let ei = principal_to_series(hi, &(cj - ci), m);
                add_into(&mut out.holes[j], &principal_of_product(hj, &ei, m));
            }
        }
        out.exact = a.exact && b.exact && !dropped;
        out
    }

    pub fn powi(&self, k: u32) -> AnalyticFunction {
        let mut acc = AnalyticFunction::one(&self.dom, self.order());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn evaluate(&self, x: &PAdic) -> Result<PAdic, AnalyticError> {
        if !self.dom.contains(x) {
            return Err(AnalyticError::NotInDomain);
        }
        let mut s = horner(&self.poly, &(x - &self.dom.outer().center));
        for (h, d) in self.holes.iter().zip(self.dom.holes()) {
            let u = (x - &d.center).inv().map_err(|_| AnalyticError::NotInDomain)?;
            s = &s + &(&u * &horner(h, &u));
        }
        Ok(s)
    }

    /// Taylor expansion at a point `c` of `X`, to order `m`.
    pub fn taylor_at(&self, c: &PAdic, m: usize) -> Result<DiskSeries, AnalyticError> {
        let rho = self.dom.rho_c_x(c).map_err(|_| AnalyticError::NotInDomain)?;
        let f = self.field();
        let c0 = &self.dom.outer().center;
        let mut s = taylor_shift(&self.poly, &(c - c0));
        let mut exact = self.exact && s[(m + 1).min(s.len())..].iter().all(|x| x.is_zero());
        s.resize(m + 1, PAdic::zero(f));
        for (h, d) in self.holes.iter().zip(self.dom.holes()) {
            if h.iter().all(|x| x.is_zero()) {
                continue;
            }
            exact = false;
            add_into(&mut s, &principal_to_series(h, &(c - &d.center), m));
        }
        let out = if exact { DiskSeries::polynomial(c.clone(), s) } else { DiskSeries::new(c.clone(), s) };
        Ok(out.with_radius(rho))
    }

    /// Laurent expansion valid on the circle `|T - r| = rho` where `r` is `c`
    /// or the centre of a hole inside `D^+(c, rho)`.
    fn laurent_near(&self, c: &PAdic, rlog: Q) -> (Vec<PAdic>, Vec<PAdic>, bool) {
        let m = self.order();
        let rad = Norm::Pow(rlog);
        let inside: Vec<usize> = (0..self.holes.len()).filter(|&i| dist(c, &self.dom.holes()[i].center) <= rad).collect();
        let r = match inside.first() {
            Some(&i) => self.dom.holes()[i].center.clone(),
            None => c.clone(),
        };
        let c0 = &self.dom.outer().center;
        let mut pos = taylor_shift(&self.poly, &(&r - c0));
        let mut neg = zeros(self.field(), m);
        let mut truncated = false;
        for (i, (h, d)) in self.holes.iter().zip(self.dom.holes()).enumerate() {
            if h.iter().all(|x| x.is_zero()) {
                continue;
            }
            if inside.contains(&i) {
                let (re, dropped) = laurent_reexpand(h, &(&d.center - &r), m);
                truncated |= dropped;
                add_into(&mut neg, &re);
            } else {
                truncated = true;
                add_into(&mut pos, &principal_to_series(h, &(&r - &d.center), m));
            }
        }
        (pos, neg, truncated)
    }

    /// `|f|_{(c, rho)}` for a generic point `(c, rho)` of `X`.
    pub fn gauss_norm(&self, c: &PAdic, rlog: Q) -> Result<GaussNorm, AnalyticError> {
        if !self.dom.is_generic_point(c, rlog) {
            return Err(AnalyticError::OutsideValidity);
        }
        let (pos, neg, truncated) = self.laurent_near(c, rlog);
        let m = self.order();
        let mut best = Norm::Zero;
        let mut at = 0usize;
        for (k, a) in pos.iter().enumerate() {
            let t = a.norm().mul(Norm::Pow(rlog * Q::from_integer(k as i64)));
            if t > best {
                best = t;
                at = k;
            }
        }
        for (k0, b) in neg.iter().enumerate() {
            let k = k0 + 1;
            let t = b.norm().mul(Norm::Pow(-rlog * Q::from_integer(k as i64)));
            if t > best {
                best = t;
                at = k;
            }
        }
        let limited = (truncated || !self.exact) && m > 0 && 4 * at > 3 * m;
        Ok(GaussNorm { norm: best, truncation_limited: limited })
    }

    /// `||f||_X` as the maximum over the Shilov boundary.
    pub fn sup_norm(&self) -> GaussNorm {
        let mut acc = GaussNorm { norm: Norm::Zero, truncation_limited: false };
        for g in self.dom.shilov_points() {
            acc = acc.max(self.gauss_norm(&g.center, g.rlog).expect("Shilov points are generic points"));
        }
        acc
    }

    /// `f(qT)`; needs `x -> q x` to map `X` onto itself.
    pub fn sigma_q(&self, qq: &PAdic) -> Result<AnalyticFunction, AnalyticError> {
        let perm = hole_permutation(&self.dom, qq).ok_or(AnalyticError::NotInvariant)?;
        let f = self.field().clone();
        let m = self.order();
        let qinv = qq.inv().map_err(|_| AnalyticError::NotInvariant)?;
        let c0 = &self.dom.outer().center;
        let mut qk = PAdic::one(&f);
        let mut a = Vec::with_capacity(m + 1);
        for x in &self.poly {
            a.push(x * &qk);
            qk = &qk * qq;
        }
        // sum a_k q^k (T - c_0/q)^k, moved back to c_0
        let poly = taylor_shift(&a, &(c0 - &(c0 * &qinv)));
        let mut out = AnalyticFunction { dom: self.dom.clone(), poly, holes: vec![zeros(&f, m); self.holes.len()], exact: self.exact };
        for (i, h) in self.holes.iter().enumerate() {
            if h.iter().all(|x| x.is_zero()) {
                continue;
            }
            let j = perm.iter().position(|&t| t == i).expect("permutation");
            let mut qk = qinv.clone();
            let mut b = Vec::with_capacity(m);
            for x in h {
                b.push(x * &qk);
                qk = &qk * &qinv;
            }
            let eps = &(&self.dom.holes()[i].center * &qinv) - &self.dom.holes()[j].center;
            let (re, dropped) = laurent_reexpand(&b, &eps, m);
            out.exact &= !dropped;
            add_into(&mut out.holes[j], &re);
        }
        Ok(out)
    }

    pub fn ddt(&self) -> AnalyticFunction {
        let m = self.order();
        let mut out = AnalyticFunction::zero(&self.dom, m);
        out.exact = self.exact;
        for k in 1..=m {
            out.poly[k - 1] = self.poly[k].scale_int(k as i64);
        }
        for (i, h) in self.holes.iter().enumerate() {
            for (k0, b) in h.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let k = k0 + 1;
                if k < m {
                    out.holes[i][k] = b.scale_int(-(k as i64));
                } else {
                    out.exact = false;
                }
            }
        }
        out
    }

    /// `T d/dT`.
    pub fn delta1(&self) -> AnalyticFunction {
        let m = self.order();
        let mut out = AnalyticFunction::zero(&self.dom, m);
        out.exact = self.exact;
        let c0 = self.dom.outer().center.clone();
        for k in 1..=m {
            let ka = self.poly[k].scale_int(k as i64);
            out.poly[k] = &out.poly[k] + &ka;
            out.poly[k - 1] = &out.poly[k - 1] + &(&c0 * &ka);
        }
        for (i, h) in self.holes.iter().enumerate() {
            let c = self.dom.holes()[i].center.clone();
            for (k0, b) in h.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let k = k0 + 1;
                let kb = b.scale_int(-(k as i64));
                out.holes[i][k0] = &out.holes[i][k0] + &kb;
                if c.is_zero() {
                    continue;
                }
                if k < m {
                    out.holes[i][k] = &out.holes[i][k] + &(&c * &kb);
                } else {
                    out.exact = false;
                }
            }
        }
        out
    }

    /// `d_q = (sigma_q - 1) / ((q - 1) T)`.
    pub fn d_q(&self, qq: &PAdic) -> Result<AnalyticFunction, AnalyticError> {
        let f = self.field().clone();
        let one = PAdic::one(&f);
        if (qq - &one).is_zero() {
            return Err(AnalyticError::QIsOne);
        }
        hole_permutation(&self.dom, qq).ok_or(AnalyticError::NotInvariant)?;
        let m = self.order();
        let c0 = self.dom.outer().center.clone();
        let mut out = AnalyticFunction::zero(&self.dom, m);
        out.exact = self.exact;
        // T^k -> [k]_q T^{k-1} about 0
        let p0 = taylor_shift(&self.poly, &(-&c0));
        let mut d0 = zeros(&f, m + 1);
        let mut qk = one.clone();
        let mut qint = PAdic::zero(&f);
        for k in 1..=m {
            qint = &qint + &qk;
            qk = &qk * qq;
            d0[k - 1] = &p0[k] * &qint;
        }
        out.poly = taylor_shift(&d0, &c0);
        let mut rest = AnalyticFunction::zero(&self.dom, m);
        let mut has_rest = false;
        let qinv = qq.inv().unwrap();
        for (i, h) in self.holes.iter().enumerate() {
            if h.iter().all(|x| x.is_zero()) {
                continue;
            }
            if self.dom.holes()[i].center.is_zero() {
                // T^{-k} -> -q^{-k} [k]_q T^{-k-1}
                let mut qk = qinv.clone();
                for (k0, b) in h.iter().enumerate() {
                    let k = k0 + 1;
                    if !b.is_zero() {
                        let c = -(&(b * &qk) * &q_integer(qq, k));
                        if k < m {
                            out.holes[i][k] = &out.holes[i][k] + &c;
                        } else {
                            out.exact = false;
                        }
                    }
                    qk = &qk * &qinv;
                }
            } else {
                rest.holes[i] = h.clone();
                has_rest = true;
            }
        }
        if has_rest {
            rest.exact = self.exact;
            let qm1inv = (qq - &one).inv().unwrap();
            let g = rest.sigma_q(qq)?.sub(&rest).scale(&qm1inv);
            out = out.add(&g.div_linear(&PAdic::zero(&f))?);
        }
        Ok(out)
    }

    /// `D_q = sigma_q o d/dT`.
    pub fn big_d_q(&self, qq: &PAdic) -> Result<AnalyticFunction, AnalyticError> {
        self.ddt().sigma_q(qq)
    }

    /// `delta_q = sigma_q o delta_1`.
    pub fn delta_q(&self, qq: &PAdic) -> Result<AnalyticFunction, AnalyticError> {
        self.delta1().sigma_q(qq)
    }

    /// `f / (T - a)`. When `a` lies in `X` the function must vanish there.
    pub fn div_linear(&self, a: &PAdic) -> Result<AnalyticFunction, AnalyticError> {
        let m = self.order();
        if self.dom.holes().iter().any(|h| (&h.center - a).is_zero()) || !self.dom.contains(a) {
            let p = AnalyticFunction::pole(&self.dom, a, 1, m)?;
            return Ok(self.mul(&p));
        }
        let f = self.field().clone();
        let r = self.evaluate(a)?;
        let floor = match min_val(&self.poly).min(self.holes.iter().map(|h| min_val(h)).min().unwrap_or(Val::Inf)) {
            Val::Fin(v) => v,
            Val::Inf => return Ok(self.clone()),
        };
        let half = Q::new(f.precision() as i64, 2);
        if r.valuation() < Val::Fin(floor + half) {
            return Err(AnalyticError::NotDivisible);
        }
        let c0 = self.dom.outer().center.clone();
        let ps = taylor_shift(&self.poly, &(a - &c0));
        let mut quot = zeros(&f, m + 1);
        for k in 1..=m {
            quot[k - 1] = ps[k].clone();
        }
        let mut out = AnalyticFunction::zero(&self.dom, m);
        out.exact = self.exact;
        out.poly = taylor_shift(&quot, &(&c0 - a));
        for (i, h) in self.holes.iter().enumerate() {
            if h.iter().all(|x| x.is_zero()) {
                continue;
            }
            // (u^{-k} - alpha^{-k}) / (u - alpha) = -sum_{j=1..k} u^{-j} alpha^{-(k+1-j)}
            let alpha = a - &self.dom.holes()[i].center;
            let ainv = alpha.inv().map_err(|_| AnalyticError::PoleInDomain)?;
            let mut apow = vec![PAdic::one(&f)];
            for t in 1..=m + 1 {
                apow.push(&apow[t - 1] * &ainv);
            }
            for (k0, b) in h.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let k = k0 + 1;
                for j in 1..=k {
                    let t = b * &apow[k + 1 - j];
                    out.holes[i][j - 1] = &out.holes[i][j - 1] - &t;
                }
            }
        }
        Ok(out)
    }

    /// Multiplicative inverse by Newton iteration `g <- g (2 - f g)`,
    /// started from a dominant constant or, on an annulus, a dominant
    /// monomial in `T - c_0`.
    pub fn inverse(&self) -> Result<AnalyticFunction, AnalyticError> {
        let f = self.field().clone();
        let m = self.order();
        let two = PAdic::from_int(&f, 2);
        let mut g = self.initial_inverse()?;
        let one = AnalyticFunction::one(&self.dom, m);
        let mut last = Norm::ONE;
        for _ in 0..16 {
            let e = one.sub(&self.mul(&g));
            let en = e.sup_norm().norm;
            if en >= Norm::ONE {
                return Err(AnalyticError::NotInvertible);
            }
            if en.is_zero() || en >= last {
                break;
            }
            last = en;
            let fg = self.mul(&g);
            g = g.mul(&fg.neg().add_constant(&two));
        }
        g.exact = false;
        Ok(g)
    }

    fn initial_inverse(&self) -> Result<AnalyticFunction, AnalyticError> {
        let m = self.order();
        let a0 = &self.poly[0];
        if !a0.is_zero() {
            let rest = self.add_constant(&-a0);
            if rest.sup_norm().norm < a0.norm() {
                return Ok(AnalyticFunction::constant(&self.dom, a0.inv().unwrap(), m));
            }
        }
        // annulus about c_0: look for one Laurent term dominating on both circles
        let c0 = &self.dom.outer().center;
        if self.dom.holes().len() == 1 && (&self.dom.holes()[0].center - c0).is_zero() {
            let r_out = self.dom.outer().rlog;
            let r_in = self.dom.holes()[0].rlog;
            let dom_term = |rl: Q| -> Option<i64> {
                let mut best = Norm::Zero;
                let mut at = None;
                let mut tie = false;
                let terms = self.poly.iter().enumerate().map(|(k, a)| (k as i64, a)).chain(self.holes[0].iter().enumerate().map(|(k, b)| (-(k as i64) - 1, b)));
                for (k, a) in terms {
                    let t = a.norm().mul(Norm::Pow(rl * Q::from_integer(k)));
                    if t > best {
                        best = t;
                        at = Some(k);
                        tie = false;
                    } else if t == best && !t.is_zero() {
                        tie = true;
                    }
                }
                if tie {
                    None
                } else {
                    at
                }
            };
            if let (Some(k1), Some(k2)) = (dom_term(r_out), dom_term(r_in)) {
                if k1 == k2 {
                    let coef = if k1 >= 0 { &self.poly[k1 as usize] } else { &self.holes[0][(-k1 - 1) as usize] };
                    let cinv = coef.inv().unwrap();
                    let mut g = AnalyticFunction::zero(&self.dom, m);
                    if k1 > 0 {
                        // (T - c_0)^{-k}
                        g.holes[0][k1 as usize - 1] = cinv;
                    } else if k1 < 0 {
                        g.poly[(-k1) as usize] = cinv;
                    } else {
                        g.poly[0] = cinv;
                    }
                    return Ok(g);
                }
            }
        }
        Err(AnalyticError::NotInvertible)
    }

    /// `f(T^k)` on the domain `new_dom`, for `X` and `new_dom` centred at 0
    /// with all holes centred at 0.
    pub fn substitute_power(&self, k: usize, new_dom: &Arc<Affinoid>, m_new: usize) -> Result<AnalyticFunction, AnalyticError> {
        let centred = |d: &Affinoid| d.outer().center.is_zero() && d.holes().iter().all(|h| h.center.is_zero());
        if !centred(&self.dom) || !centred(new_dom) || new_dom.holes().len() != self.dom.holes().len() {
            return Err(AnalyticError::Unsupported("power substitution needs domains centred at 0"));
        }
        let mut out = AnalyticFunction::zero(new_dom, m_new);
        out.exact = self.exact;
        for (n, a) in self.poly.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            if n * k <= m_new {
                out.poly[n * k] = a.clone();
            } else {
                out.exact = false;
            }
        }
        for (i, h) in self.holes.iter().enumerate() {
            for (n0, b) in h.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let idx = (n0 + 1) * k;
                if idx <= m_new {
                    out.holes[i][idx - 1] = b.clone();
                } else {
                    out.exact = false;
                }
            }
        }
        Ok(out)
    }

    pub fn min_valuation(&self) -> Val {
        self.holes.iter().map(|h| min_val(h)).fold(min_val(&self.poly), Val::min)
    }

    /// Minimum over all stored coefficients of `v(a - b)`.
    pub fn agreement(&self, o: &AnalyticFunction) -> Q {
        let m = self.order().max(o.order());
        let a = self.pad(m);
        let b = o.pad(m);
        let mut best: Option<Q> = None;
        let mut upd = |x: &PAdic, y: &PAdic| {
            let v = x.agreement(y);
            best = Some(best.map_or(v, |b: Q| b.min(v)));
        };
        for (x, y) in a.poly.iter().zip(&b.poly) {
            upd(x, y);
        }
        for (h, g) in a.holes.iter().zip(&b.holes) {
            for (x, y) in h.iter().zip(g) {
                upd(x, y);
            }
        }
        best.unwrap_or_else(|| Q::from_integer(0))
    }

    /// Coefficients of `T^k` when `X` is centred at 0 with at most one hole,
    /// centred at 0: index `k + order` holds `T^k`, `k` in `-order..=order`.
    pub fn laurent_at_zero(&self) -> Option<Vec<PAdic>> {
        if !self.dom.outer().center.is_zero() || self.dom.holes().len() > 1 || self.dom.holes().iter().any(|h| !h.center.is_zero()) {
            return None;
        }
        let m = self.order();
        let f = self.field();
        let mut v = zeros(f, 2 * m + 1);
        for (k, a) in self.poly.iter().enumerate() {
            v[m + k] = a.clone();
        }
        if let Some(h) = self.holes.first() {
            for (k0, b) in h.iter().enumerate() {
                v[m - k0 - 1] = b.clone();
            }
        }
        Some(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use padic_field::make_field;

    fn qq(n: i64, d: i64) -> Q {
        Q::new(n, d)
    }

    fn int(f: &Field, n: i64) -> PAdic {
        PAdic::from_int(f, n)
    }

    fn dom_hole(f: &Field, c: i64, r: i64) -> Arc<Affinoid> {
        Arc::new(Affinoid::new(Disk::new(PAdic::zero(f), qq(0, 1)), vec![Disk::new(int(f, c), qq(r, 1))]).unwrap())
    }

    #[test]
    fn hole_norms() {
        let f = make_field(3, -1, 30).unwrap();
        let dom = dom_hole(&f, 1, -1);
        let g = AnalyticFunction::pole(&dom, &PAdic::one(&f), 1, 8).unwrap();
        assert_eq!(g.gauss_norm(&PAdic::one(&f), qq(-1, 1)).unwrap().norm, Norm::Pow(qq(1, 1)));
        assert_eq!(g.sup_norm().norm, Norm::Pow(qq(1, 1)));
        let d = Arc::new(Affinoid::disk(PAdic::zero(&f), qq(0, 1)));
        let t = AnalyticFunction::monomial(&d, 1, 8).unwrap();
        assert_eq!(t.sup_norm().norm, Norm::ONE);
        assert_eq!(AnalyticFunction::one(&d, 4).sup_norm().norm, Norm::ONE);
    }

    #[test]
    fn sigma_on_hole_matches_evaluation() {
        let f = make_field(3, -1, 30).unwrap();
        let dom = dom_hole(&f, 1, -2);
        let qv = int(&f, 28);
        let g = AnalyticFunction::pole(&dom, &PAdic::one(&f), 1, 24).unwrap();
        let s = g.sigma_q(&qv).unwrap();
        // leading term q^{-1} (T - 1)^{-1}
        assert_eq!(s.hole_part(0)[0], qv.inv().unwrap());
        for x in [0i64, 2, 3, 5, 7] {
            let x = int(&f, x);
            let direct = (&(&qv * &x) - &PAdic::one(&f)).inv().unwrap();
            assert!(s.evaluate(&x).unwrap().agreement(&direct) >= qq(20, 1));
        }
    }

    #[test]
    fn sigma_monomials() {
        let f = make_field(3, -1, 30).unwrap();
        let ann = Arc::new(Affinoid::annulus(PAdic::zero(&f), qq(-1, 1), qq(0, 1)));
        let qv = int(&f, 4);
        let t = AnalyticFunction::monomial(&ann, 1, 6).unwrap();
        assert_eq!(t.sigma_q(&qv).unwrap().poly()[1], qv);
        let ti = AnalyticFunction::monomial(&ann, -1, 6).unwrap();
        assert_eq!(ti.sigma_q(&qv).unwrap().hole_part(0)[0], qv.inv().unwrap());
        // 2 is a unit but 2 - 1 is not small: hole_permutation fails on a hole at 1
        let dom = dom_hole(&f, 1, -1);
        assert_eq!(t.pad(2).sigma_q(&int(&f, 2)).is_ok(), true);
        assert_eq!(AnalyticFunction::one(&dom, 2).sigma_q(&int(&f, 4)).unwrap_err(), AnalyticError::NotInvariant);
    }

    #[test]
    fn derivations() {
        let f = make_field(3, -1, 30).unwrap();
        let d = Arc::new(Affinoid::disk(PAdic::zero(&f), qq(0, 1)));
        let t3 = AnalyticFunction::monomial(&d, 3, 6).unwrap();
        assert_eq!(t3.delta1().poly()[3], int(&f, 3));
        let t2 = AnalyticFunction::monomial(&d, 2, 6).unwrap();
        let dq = t2.big_d_q(&int(&f, 4)).unwrap();
        assert_eq!(dq.poly()[1], int(&f, 8));
        assert!(dq.poly().iter().enumerate().all(|(k, a)| k == 1 || a.is_zero()));
        // d_q((T - 1)(T - 4)) = [2]_q (T - 1) with q = 4
        let p = AnalyticFunction::from_t_poly(&d, &[int(&f, 4), int(&f, -5), int(&f, 1)], 6);
        let r = p.d_q(&int(&f, 4)).unwrap();
        assert_eq!(r.poly()[0], int(&f, -5));
        assert_eq!(r.poly()[1], int(&f, 5));
        assert_eq!(p.d_q(&PAdic::one(&f)).unwrap_err(), AnalyticError::QIsOne);
    }

    #[test]
    fn d_q_on_holes() {
        let f = make_field(3, -1, 40).unwrap();
        let ann = Arc::new(Affinoid::annulus(PAdic::zero(&f), qq(-1, 1), qq(0, 1)));
        let qv = int(&f, 4);
        // d_q(T^{-1}) = -q^{-1} T^{-2}
        let ti = AnalyticFunction::monomial(&ann, -1, 6).unwrap();
        let r = ti.d_q(&qv).unwrap();
        assert_eq!(r.hole_part(0)[1], -qv.inv().unwrap());
        // hole away from 0: compare with (f(qx) - f(x)) / ((q - 1) x)
        let dom = dom_hole(&f, 1, -2);
        let qv = int(&f, 28);
        let g = AnalyticFunction::pole(&dom, &PAdic::one(&f), 1, 30).unwrap();
        let r = g.d_q(&qv).unwrap();
        for x in [2i64, 3, 5] {
            let x = int(&f, x);
            let fx = g.evaluate(&x).unwrap();
            let fqx = g.evaluate(&(&qv * &x)).unwrap();
            let expect = (&fqx - &fx).div(&(&(&qv - &PAdic::one(&f)) * &x)).unwrap();
            assert!(r.evaluate(&x).unwrap().agreement(&expect) >= qq(25, 1));
        }
    }

    #[test]
    fn products_across_holes() {
        let f = make_field(3, -1, 30).unwrap();
        let dom = Arc::new(
            Affinoid::new(
                Disk::new(PAdic::zero(&f), qq(0, 1)),
                vec![Disk::new(int(&f, 1), qq(-1, 1)), Disk::new(int(&f, 2), qq(-1, 1))],
            )
            .unwrap(),
        );
        let a = AnalyticFunction::pole(&dom, &int(&f, 1), 2, 10).unwrap();
        let b = AnalyticFunction::pole(&dom, &int(&f, 2), 1, 10).unwrap();
        let t = AnalyticFunction::from_t_poly(&dom, &[int(&f, 1), int(&f, 3), int(&f, 1)], 10);
        let prod = a.mul(&b).mul(&t);
        assert!(prod.is_exact());
        for x in [0i64, 3, 6, 9] {
            let x = int(&f, x);
            let expect = &(&a.evaluate(&x).unwrap() * &b.evaluate(&x).unwrap()) * &t.evaluate(&x).unwrap();
            assert!(prod.evaluate(&x).unwrap().agreement(&expect) >= qq(25, 1));
        }
    }

    #[test]
    fn inverses_and_division() {
        let f = make_field(3, -1, 30).unwrap();
        let d = Arc::new(Affinoid::disk(PAdic::zero(&f), qq(0, 1)));
        let g = AnalyticFunction::from_t_poly(&d, &[PAdic::one(&f), int(&f, 3)], 40);
        let one = AnalyticFunction::one(&d, 40);
        assert!(g.mul(&g.inverse().unwrap()).agreement(&one) >= qq(25, 1));
        let ann = Arc::new(Affinoid::annulus(PAdic::zero(&f), qq(-1, 1), qq(0, 1)));
        let h = AnalyticFunction::from_t_poly(&ann, &[int(&f, 9), int(&f, 1), int(&f, 9)], 40);
        let hi = h.inverse().unwrap();
        assert!(h.mul(&hi).agreement(&AnalyticFunction::one(&ann, 40)) >= qq(20, 1));
        let t2 = AnalyticFunction::from_t_poly(&d, &[int(&f, -4), PAdic::zero(&f), PAdic::one(&f)], 6);
        let q = t2.div_linear(&int(&f, 2)).unwrap();
        assert_eq!(q.poly()[0], int(&f, 2));
        assert_eq!(q.poly()[1], PAdic::one(&f));
        assert_eq!(t2.div_linear(&int(&f, 1)).unwrap_err(), AnalyticError::NotDivisible);
    }
}
