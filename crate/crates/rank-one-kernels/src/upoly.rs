use analytic_functions::DiskSeries;
use padic_field::{Field, PAdic, Val};

/// A polynomial `sum_k c_k u^k` in `u = T^{-1}`.
#[derive(Clone, Debug)]
pub struct UPoly {
    f: Field,
    c: Vec<PAdic>,
}

impl UPoly {
    pub fn new(f: &Field, c: Vec<PAdic>) -> UPoly {
        let mut p = UPoly { f: f.clone(), c };
        p.trim();
        p
    }

    pub fn from_ints(f: &Field, c: &[i64]) -> UPoly {
        UPoly::new(f, c.iter().map(|&x| PAdic::from_int(f, x)).collect())
    }

    pub fn zero(f: &Field) -> UPoly {
        UPoly { f: f.clone(), c: Vec::new() }
    }

    /// `u^k`.
    pub fn monomial(f: &Field, k: usize) -> UPoly {
        let mut c = vec![PAdic::zero(f); k + 1];
        c[k] = PAdic::one(f);
        UPoly { f: f.clone(), c }
    }

    fn trim(&mut self) {
        while self.c.last().is_some_and(|x| x.is_exact_zero()) {
            self.c.pop();
        }
    }

    pub fn field(&self) -> &Field {
        &self.f
    }

    pub fn coeffs(&self) -> &[PAdic] {
        &self.c
    }

    pub fn coeff(&self, k: usize) -> PAdic {
        self.c.get(k).cloned().unwrap_or_else(|| PAdic::zero(&self.f))
    }

    pub fn degree(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    pub fn add(&self, o: &UPoly) -> UPoly {
        let n = self.c.len().max(o.c.len());
        UPoly::new(&self.f, (0..n).map(|k| &self.coeff(k) + &o.coeff(k)).collect())
    }

    pub fn sub(&self, o: &UPoly) -> UPoly {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> UPoly {
        UPoly::new(&self.f, self.c.iter().map(|x| -x).collect())
    }

    pub fn scale(&self, k: &PAdic) -> UPoly {
        UPoly::new(&self.f, self.c.iter().map(|x| x * k).collect())
    }

    pub fn mul(&self, o: &UPoly) -> UPoly {
        if self.c.is_empty() || o.c.is_empty() {
            return UPoly::zero(&self.f);
        }
        let mut c = vec![PAdic::zero(&self.f); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_exact_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] = &c[i + j] + &(a * b);
            }
        }
        UPoly::new(&self.f, c)
    }

    pub fn pow(&self, mut k: u64) -> UPoly {
        let mut acc = UPoly::new(&self.f, vec![PAdic::one(&self.f)]);
        let mut b = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&b);
            }
            k >>= 1;
            if k > 0 {
                b = b.mul(&b);
            }
        }
        acc
    }

    /// `f(lambda u)`.
    pub fn dilate(&self, lambda: &PAdic) -> UPoly {
        let mut l = PAdic::one(&self.f);
        let mut c = Vec::with_capacity(self.c.len());
        for a in &self.c {
            c.push(a * &l);
            l = &l * lambda;
        }
        UPoly::new(&self.f, c)
    }

    /// `u d/du`, which is `-delta_1` in `T`.
    pub fn euler(&self) -> UPoly {
        UPoly::new(&self.f, self.c.iter().enumerate().map(|(k, a)| a.scale_int(k as i64)).collect())
    }

    pub fn min_valuation(&self) -> Val {
        self.c.iter().map(|x| x.valuation()).min().unwrap_or(Val::Inf)
    }

    pub fn is_integral(&self) -> bool {
        self.min_valuation() >= Val::Fin(padic_field::Q::from_integer(0))
    }

    /// Same coefficients, read as exact, in the field `g` of the same tower.
    pub fn lift(&self, g: &Field) -> UPoly {
        UPoly { f: g.clone(), c: self.c.iter().map(|x| x.lift_exact(g)).collect() }
    }

    pub fn to_field(&self, g: &Field) -> UPoly {
        UPoly { f: g.clone(), c: self.c.iter().map(|x| x.to_field(g)).collect() }
    }

    /// The series in `u` centred at 0, padded or truncated to order `m`.
    pub fn to_series(&self, m: usize) -> DiskSeries {
        let mut c = self.c.clone();
        c.resize(m + 1, PAdic::zero(&self.f));
        DiskSeries::polynomial(PAdic::zero(&self.f), c)
    }

    /// Coefficientwise agreement, as for elements.
    pub fn agreement(&self, o: &UPoly) -> padic_field::Q {
        let n = self.c.len().max(o.c.len()).max(1);
        (0..n).map(|k| self.coeff(k).agreement(&o.coeff(k))).min().unwrap()
    }
}
