//! Square matrices over analytic functions, disk series, or constants.

use std::fmt;

use analytic_functions::{AnalyticFunction, DiskSeries, GaussNorm};
use padic_field::{Norm, PAdic, Val, Q};

use crate::ModuleError;

/// Entries of a [`Matrix`].
pub trait Entry: Clone + fmt::Debug {
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn scale(&self, k: &PAdic) -> Self;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn try_inverse(&self) -> Option<Self>;
    fn min_valuation(&self) -> Val;
    /// Minimum valuation of the difference, up to available precision.
    fn agreement(&self, o: &Self) -> Q;
}

impl Entry for PAdic {
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn scale(&self, k: &PAdic) -> Self {
        self * k
    }
    fn zero_like(&self) -> Self {
        PAdic::zero(self.field())
    }
    fn one_like(&self) -> Self {
        PAdic::one(self.field())
    }
    fn is_zero(&self) -> bool {
        PAdic::is_zero(self)
    }
    fn try_inverse(&self) -> Option<Self> {
        self.inv().ok()
    }
    fn min_valuation(&self) -> Val {
        self.valuation()
    }
    fn agreement(&self, o: &Self) -> Q {
        PAdic::agreement(self, o)
    }
}

impl Entry for AnalyticFunction {
    fn add(&self, o: &Self) -> Self {
        AnalyticFunction::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        AnalyticFunction::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        AnalyticFunction::mul(self, o)
    }
    fn neg(&self) -> Self {
        AnalyticFunction::neg(self)
    }
    fn scale(&self, k: &PAdic) -> Self {
        AnalyticFunction::scale(self, k)
    }
    fn zero_like(&self) -> Self {
        AnalyticFunction::zero(self.domain(), self.order())
    }
    fn one_like(&self) -> Self {
        AnalyticFunction::one(self.domain(), self.order())
    }
    fn is_zero(&self) -> bool {
        AnalyticFunction::is_zero(self)
    }
    fn try_inverse(&self) -> Option<Self> {
        self.inverse().ok()
    }
    fn min_valuation(&self) -> Val {
        AnalyticFunction::min_valuation(self)
    }
    fn agreement(&self, o: &Self) -> Q {
        AnalyticFunction::agreement(self, o)
    }
}

impl Entry for DiskSeries {
    fn add(&self, o: &Self) -> Self {
        DiskSeries::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        DiskSeries::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        DiskSeries::mul(self, o)
    }
    fn neg(&self) -> Self {
        DiskSeries::neg(self)
    }
    fn scale(&self, k: &PAdic) -> Self {
        DiskSeries::scale(self, k)
    }
    fn zero_like(&self) -> Self {
        DiskSeries::zero(self.center(), self.order())
    }
    fn one_like(&self) -> Self {
        DiskSeries::one(self.center(), self.order())
    }
    fn is_zero(&self) -> bool {
        self.coeffs().iter().all(|x| x.is_zero())
    }
    fn try_inverse(&self) -> Option<Self> {
        self.inverse().ok()
    }
    fn min_valuation(&self) -> Val {
        DiskSeries::min_valuation(self)
    }
    fn agreement(&self, o: &Self) -> Q {
        DiskSeries::agreement(self, o, self.order().min(o.order()))
    }
}

/// Square matrix, row-major.
#[derive(Clone, Debug)]
pub struct Matrix<E> {
    n: usize,
    e: Vec<E>,
}

pub type FnMatrix = Matrix<AnalyticFunction>;
pub type SeriesMatrix = Matrix<DiskSeries>;
pub type ConstMatrix = Matrix<PAdic>;

impl<E: Entry> Matrix<E> {
    pub fn from_rows(rows: Vec<Vec<E>>) -> Result<Matrix<E>, ModuleError> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(ModuleError::Shape);
        }
        Ok(Matrix { n, e: rows.into_iter().flatten().collect() })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> E) -> Matrix<E> {
        let mut e = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                e.push(f(i, j));
            }
        }
        Matrix { n, e }
    }

    pub fn scalar(x: E) -> Matrix<E> {
        Matrix { n: 1, e: vec![x] }
    }

    /// Identity shaped like `like`'s entries.
    pub fn identity(n: usize, like: &E) -> Matrix<E> {
        Matrix::from_fn(n, |i, j| if i == j { like.one_like() } else { like.zero_like() })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.e[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: E) {
        self.e[i * self.n + j] = x;
    }

    pub fn entries(&self) -> &[E] {
        &self.e
    }

    pub fn map<F: Entry>(&self, f: impl Fn(&E) -> F) -> Matrix<F> {
        Matrix { n: self.n, e: self.e.iter().map(f).collect() }
    }

    pub fn try_map<F: Entry, X>(&self, f: impl Fn(&E) -> Result<F, X>) -> Result<Matrix<F>, X> {
        Ok(Matrix { n: self.n, e: self.e.iter().map(f).collect::<Result<_, _>>()? })
    }

    pub fn identity_like(&self) -> Matrix<E> {
        Matrix::identity(self.n, &self.e[0])
    }

    pub fn add(&self, o: &Matrix<E>) -> Matrix<E> {
        assert_eq!(self.n, o.n, "dimension mismatch");
        Matrix { n: self.n, e: self.e.iter().zip(&o.e).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, o: &Matrix<E>) -> Matrix<E> {
        assert_eq!(self.n, o.n, "dimension mismatch");
        Matrix { n: self.n, e: self.e.iter().zip(&o.e).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn neg(&self) -> Matrix<E> {
        self.map(|x| x.neg())
    }

    pub fn scale(&self, k: &PAdic) -> Matrix<E> {
        self.map(|x| x.scale(k))
    }

    pub fn mul(&self, o: &Matrix<E>) -> Matrix<E> {
        assert_eq!(self.n, o.n, "dimension mismatch");
        let n = self.n;
        Matrix::from_fn(n, |i, j| {
            let mut acc: Option<E> = None;
            for k in 0..n {
                let a = self.get(i, k);
                let b = o.get(k, j);
                if a.is_zero() || b.is_zero() {
                    continue;
                }
                let t = a.mul(b);
                acc = Some(match acc {
                    Some(s) => s.add(&t),
                    None => t,
                });
            }
            acc.unwrap_or_else(|| self.get(i, 0).zero_like())
        })
    }

    pub fn transpose(&self) -> Matrix<E> {
        Matrix::from_fn(self.n, |i, j| self.get(j, i).clone())
    }

    /// Kronecker product, indices `(i1 * n2 + i2, j1 * n2 + j2)`.
    pub fn kron(&self, o: &Matrix<E>) -> Matrix<E> {
        let n2 = o.n;
        Matrix::from_fn(self.n * n2, |i, j| self.get(i / n2, j / n2).mul(o.get(i % n2, j % n2)))
    }

    pub fn is_zero(&self) -> bool {
        self.e.iter().all(|x| x.is_zero())
    }

    pub fn min_valuation(&self) -> Val {
        self.e.iter().map(|x| x.min_valuation()).min().unwrap()
    }

    pub fn agreement(&self, o: &Matrix<E>) -> Q {
        assert_eq!(self.n, o.n, "dimension mismatch");
        self.e.iter().zip(&o.e).map(|(a, b)| a.agreement(b)).min().unwrap()
    }

    /// Gauss-Jordan elimination with unit pivots, falling back to the
    /// adjugate over the inverse determinant.
    pub fn inverse(&self) -> Result<Matrix<E>, ModuleError> {
        match self.gauss_jordan() {
            Some(m) => Ok(m),
            None => {
                let d = self.det().try_inverse().ok_or(ModuleError::NotInvertible)?;
                Ok(self.adjugate().map(|x| x.mul(&d)))
            }
        }
    }

    fn gauss_jordan(&self) -> Option<Matrix<E>> {
        let n = self.n;
        let mut a = self.clone();
        let mut b = self.identity_like();
        for col in 0..n {
            let (row, inv) = (col..n).find_map(|r| a.get(r, col).try_inverse().map(|x| (r, x)))?;
            if row != col {
                for j in 0..n {
                    a.e.swap(row * n + j, col * n + j);
                    b.e.swap(row * n + j, col * n + j);
                }
            }
            for j in 0..n {
                a.e[col * n + j] = a.e[col * n + j].mul(&inv);
                b.e[col * n + j] = b.e[col * n + j].mul(&inv);
            }
            for r in 0..n {
                if r == col || a.get(r, col).is_zero() {
                    continue;
                }
                let f = a.get(r, col).clone();
                for j in 0..n {
                    let x = a.get(r, j).sub(&f.mul(a.get(col, j)));
                    a.set(r, j, x);
                    let y = b.get(r, j).sub(&f.mul(b.get(col, j)));
                    b.set(r, j, y);
                }
            }
        }
        Some(b)
    }

    fn minor(&self, r: usize, c: usize) -> Matrix<E> {
        let n = self.n - 1;
        Matrix::from_fn(n, |i, j| self.get(if i < r { i } else { i + 1 }, if j < c { j } else { j + 1 }).clone())
    }

    /// Laplace expansion along the first row.
    pub fn det(&self) -> E {
        if self.n == 1 {
            return self.e[0].clone();
        }
        let mut acc = self.e[0].zero_like();
        for j in 0..self.n {
            if self.get(0, j).is_zero() {
                continue;
            }
            let t = self.get(0, j).mul(&self.minor(0, j).det());
            acc = if j % 2 == 0 { acc.add(&t) } else { acc.sub(&t) };
        }
        acc
    }

    pub fn adjugate(&self) -> Matrix<E> {
        if self.n == 1 {
            return self.identity_like();
        }
        Matrix::from_fn(self.n, |i, j| {
            let d = self.minor(j, i).det();
            if (i + j) % 2 == 0 {
                d
            } else {
                d.neg()
            }
        })
    }
}

impl ConstMatrix {
    pub fn norm(&self) -> Norm {
        self.e.iter().map(|x| x.norm()).max().unwrap()
    }
}

impl FnMatrix {
    pub fn sigma_q(&self, q: &PAdic) -> Result<FnMatrix, ModuleError> {
        Ok(self.try_map(|x| x.sigma_q(q))?)
    }

    pub fn delta1(&self) -> FnMatrix {
        self.map(|x| x.delta1())
    }

    pub fn ddt(&self) -> FnMatrix {
        self.map(|x| x.ddt())
    }

    pub fn d_q(&self, q: &PAdic) -> Result<FnMatrix, ModuleError> {
        Ok(self.try_map(|x| x.d_q(q))?)
    }

    pub fn big_d_q(&self, q: &PAdic) -> Result<FnMatrix, ModuleError> {
        Ok(self.try_map(|x| x.big_d_q(q))?)
    }

    /// Entrywise division by `T - a`.
    pub fn div_linear(&self, a: &PAdic) -> Result<FnMatrix, ModuleError> {
        Ok(self.try_map(|x| x.div_linear(a))?)
    }

    pub fn evaluate(&self, x: &PAdic) -> Result<ConstMatrix, ModuleError> {
        Ok(self.try_map(|f| f.evaluate(x))?)
    }

    pub fn taylor_at(&self, c: &PAdic, m: usize) -> Result<SeriesMatrix, ModuleError> {
        Ok(self.try_map(|f| f.taylor_at(c, m))?)
    }

    /// Maximum of the entries' Gauss norms at `(c, rho)`.
    pub fn gauss_norm(&self, c: &PAdic, rlog: Q) -> Result<GaussNorm, ModuleError> {
        let mut acc = GaussNorm { norm: Norm::Zero, truncation_limited: false };
        for f in &self.e {
            acc = acc.max(f.gauss_norm(c, rlog)?);
        }
        Ok(acc)
    }

    pub fn sup_norm(&self) -> GaussNorm {
        self.e.iter().fold(GaussNorm { norm: Norm::Zero, truncation_limited: false }, |acc, f| acc.max(f.sup_norm()))
    }

    pub fn order(&self) -> usize {
        self.e[0].order()
    }
}

impl SeriesMatrix {
    pub fn sigma_q(&self, q: &PAdic) -> SeriesMatrix {
        self.map(|x| x.sigma_q(q))
    }

    pub fn delta1(&self) -> SeriesMatrix {
        self.map(|x| x.delta1())
    }

    pub fn eval(&self, x: &PAdic) -> ConstMatrix {
        self.map(|s| s.eval(x))
    }

    pub fn constant_term(&self) -> ConstMatrix {
        self.map(|s| s.coeff(0))
    }

    pub fn center(&self) -> &PAdic {
        self.e[0].center()
    }

    pub fn order(&self) -> usize {
        self.e.iter().map(|s| s.order()).min().unwrap()
    }

    /// Minimum over degrees `<= upto` of the entrywise difference valuation.
    pub fn agreement_upto(&self, o: &SeriesMatrix, upto: usize) -> Q {
        self.e.iter().zip(&o.e).map(|(a, b)| a.agreement(b, upto)).min().unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use padic_field::make_field;

    #[test]
    fn constant_inverse_and_det() {
        let f = make_field(3, -1, 30).unwrap();
        let i = |n| PAdic::from_int(&f, n);
        let a = Matrix::from_rows(vec![vec![i(3), i(1)], vec![i(1), i(0)]]).unwrap();
        assert_eq!(a.det(), i(-1));
        let b = a.inverse().unwrap();
        let id = a.mul(&b);
        assert!(id.agreement(&a.identity_like()) >= Q::from_integer(29));
        let k = a.kron(&Matrix::identity(2, &i(0)));
        assert_eq!(k.dim(), 4);
        assert_eq!(k.get(2, 0), &i(1));
        assert_eq!(a.adjugate().get(0, 1), &i(-1));
    }

    #[test]
    fn adjugate_fallback() {
        use affinoid_geometry::Affinoid;
        use std::sync::Arc;
        let f = make_field(3, -1, 30).unwrap();
        let dom = Arc::new(Affinoid::disk(PAdic::zero(&f), Q::from_integer(0)));
        let t = |c: &[i64]| AnalyticFunction::from_t_poly(&dom, &c.iter().map(|&x| PAdic::from_int(&f, x)).collect::<Vec<_>>(), 8);
        // no unit in the first column, determinant 1
        let a = Matrix::from_rows(vec![vec![t(&[0, 1]), t(&[1, 1])], vec![t(&[-1, 1]), t(&[0, 1])]]).unwrap();
        assert!(a.det().agreement(&t(&[1])) >= Q::from_integer(30));
        let b = a.inverse().unwrap();
        assert!(a.mul(&b).agreement(&a.identity_like()) >= Q::from_integer(28));
    }
}
