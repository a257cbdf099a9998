use std::sync::Arc;

use analytic_functions::DiskSeries;
use padic_field::{make_field, Field, PAdic, Q};
use q_calculus::{
    from_twisted, q_factorial, q_leibniz_check, to_twisted, twisted_monomial, twisted_taylor_coeffs, QContext,
    TwistedSeries,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn int(f: &Field, n: i64) -> PAdic {
    PAdic::from_int(f, n)
}

fn random_poly(rng: &mut ChaCha8Rng, f: &Field, c: &PAdic, deg: usize, m: usize) -> DiskSeries {
    let mut a: Vec<PAdic> = (0..=deg)
        .map(|_| PAdic::p_power(f, rng.gen_range(0..4)).scale_int(rng.gen_range(-500..500)))
        .collect();
    a.resize(m + 1, PAdic::zero(f));
    DiskSeries::polynomial(c.clone(), a)
}

fn ctx_4_1(f: &Field, m: usize) -> Arc<QContext> {
    QContext::new(int(f, 4), PAdic::one(f), m)
}

#[test]
fn roundtrip_and_norms_on_random_polynomials() {
    let f = make_field(3, -1, 40).unwrap();
    let m = 32;
    let ctx = ctx_4_1(&f, m);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    // |q - 1||c| = 3^{-1}
    let radii = [Q::new(-1, 2), Q::from_integer(0), Q::from_integer(1)];
    for _ in 0..100 {
        let deg = rng.gen_range(0..=m);
        let p = random_poly(&mut rng, &f, ctx.c(), deg, m);
        let t = to_twisted(&p, &ctx);
        let back = from_twisted(&t);
        for k in 0..=m {
            assert_eq!(back.coeff(k), p.coeff(k));
        }
        let again = to_twisted(&back, &ctx);
        assert!(again.coeffs().iter().zip(t.coeffs()).all(|(x, y)| x == y));
        for r in radii {
            assert_eq!(p.gauss_norm(r).norm, t.gauss_norm(r).unwrap());
        }
    }
}

#[test]
fn norm_refused_on_small_disks() {
    let f = make_field(3, -1, 40).unwrap();
    let ctx = ctx_4_1(&f, 4);
    let t = to_twisted(&DiskSeries::one(&PAdic::one(&f), 4), &ctx);
    assert!(t.gauss_norm(Q::from_integer(-1)).is_err());
    assert!(t.gauss_norm(Q::from_integer(-2)).is_err());
}

#[test]
fn zero_centre_is_the_identity() {
    let f = make_field(3, -1, 40).unwrap();
    let ctx = QContext::new(int(&f, 4), PAdic::zero(&f), 10);
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let p = random_poly(&mut rng, &f, ctx.c(), 10, 10);
    let t = to_twisted(&p, &ctx);
    for k in 0..=10 {
        assert_eq!(t.coeffs()[k], p.coeff(k));
    }
}

#[test]
fn basis_entries_are_small_off_the_diagonal() {
    let f = make_field(3, -1, 40).unwrap();
    for (q, c) in [(4, 1), (10, 1), (4, 3), (28, 2)] {
        let ctx = QContext::new(int(&f, q), int(&f, c), 24);
        let s = ctx.shift_norm();
        for n in 0..=24 {
            let row = &ctx.basis().tilde[n];
            assert!(row[n].is_one());
            for (i, b) in row.iter().enumerate().take(n) {
                assert!(b.norm() <= s.powi((n - i) as i64), "n={n} i={i}");
            }
        }
    }
}

#[test]
fn taylor_coefficients_match_conversion() {
    let f = make_field(3, -1, 40).unwrap();
    let ctx = ctx_4_1(&f, 6);
    let mut sq = vec![PAdic::zero(&f); 7];
    sq[2] = PAdic::one(&f);
    let t2 = DiskSeries::polynomial(PAdic::zero(&f), sq).recenter(&PAdic::one(&f));
    let a = twisted_taylor_coeffs(&t2, &ctx).unwrap();
    let b = to_twisted(&t2, &ctx);
    for (x, y) in a.coeffs().iter().zip(b.coeffs()) {
        assert!(x.agreement(y) >= Q::from_integer(30));
    }
    let k = DiskSeries::constant(&PAdic::one(&f), int(&f, 7), 6);
    let a = twisted_taylor_coeffs(&k, &ctx).unwrap();
    assert_eq!(a.coeffs()[0], int(&f, 7));
    assert!(a.coeffs()[1..].iter().all(|x| x.is_zero()));

    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let ctx = QContext::new(int(&f, 10), int(&f, 2), 12);
    for _ in 0..10 {
        let p = random_poly(&mut rng, &f, ctx.c(), 12, 12);
        let a = twisted_taylor_coeffs(&p, &ctx).unwrap();
        let b = to_twisted(&p, &ctx);
        for (x, y) in a.coeffs().iter().zip(b.coeffs()) {
            assert!(x.agreement(y) >= Q::from_integer(30));
        }
    }
}

/// Independent product rule in the twisted basis:
/// `h_n = sum_{j<=n} sum_{s<=j} [s+n-j]! [j]! / ([n-j]! [s]! [j-s]!) q^{s(s-1)/2} (q-1)^s c^s f_{s+n-j} g_j`.
fn h_oracle(fc: &[PAdic], gc: &[PAdic], ctx: &QContext) -> Vec<PAdic> {
    let q = ctx.q();
    let fld = q.field();
    let one = PAdic::one(fld);
    let fact = |k: usize| q_factorial(k as u64, q);
    let dq = &(q - &one) * ctx.c();
    let m = ctx.order();
    let mut h = vec![PAdic::zero(fld); m + 1];
    for (n, hn) in h.iter_mut().enumerate() {
        for j in 0..=n {
            for s in 0..=j {
                let i = s + n - j;
                if i >= fc.len() || j >= gc.len() {
                    continue;
                }
                let num = &fact(i) * &fact(j);
                let den = &(&fact(n - j) * &fact(s)) * &fact(j - s);
                let w = &num.div(&den).unwrap() * &(&q.pow((s * s.saturating_sub(1) / 2) as u64) * &dq.pow(s as u64));
                *hn = &*hn + &(&w * &(&fc[i] * &gc[j]));
            }
        }
    }
    h
}

#[test]
fn twisted_product_matches_closed_formula() {
    let f = make_field(3, -1, 40).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for (q, c) in [(4, 1), (10, 3), (-2, 5)] {
        let m = 16;
        let ctx = QContext::new(int(&f, q), int(&f, c), m);
        for _ in 0..10 {
            let mut fc: Vec<PAdic> = (0..=8).map(|_| int(&f, rng.gen_range(-50..50))).collect();
            let mut gc: Vec<PAdic> = (0..=8).map(|_| int(&f, rng.gen_range(-50..50))).collect();
            let h = h_oracle(&fc, &gc, &ctx);
            fc.resize(m + 1, PAdic::zero(&f));
            gc.resize(m + 1, PAdic::zero(&f));
            let prod = TwistedSeries::new(&ctx, fc).mul(&TwistedSeries::new(&ctx, gc));
            for (x, y) in prod.coeffs().iter().zip(&h) {
                assert!(x.agreement(y) >= Q::from_integer(30), "q={q} c={c}");
            }
        }
    }
    // (T - c) (T - c)_{q,2} = (T - c)_{q,3} + (q^2 - 1) c (T - c)_{q,2}
    let ctx = QContext::new(int(&f, 4), PAdic::one(&f), 4);
    let z = PAdic::zero(&f);
    let one = PAdic::one(&f);
    let a = TwistedSeries::new(&ctx, vec![z.clone(), one.clone(), z.clone(), z.clone(), z.clone()]);
    let b = TwistedSeries::new(&ctx, vec![z.clone(), z.clone(), one.clone(), z.clone(), z.clone()]);
    let p = a.mul(&b);
    assert_eq!(p.coeffs()[2], int(&f, 15));
    assert_eq!(p.coeffs()[3], one);
}

fn twisted_order(t: &TwistedSeries) -> Option<usize> {
    t.coeffs().iter().position(|x| !x.is_zero())
}

#[test]
fn twisted_order_of_products() {
    let f = make_field(3, -1, 40).unwrap();
    let m = 20;
    let ctx = ctx_4_1(&f, m);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..30 {
        let mk = |rng: &mut ChaCha8Rng| {
            let lo = rng.gen_range(0..5);
            let mut c = vec![PAdic::zero(&f); m + 1];
            for x in c.iter_mut().take(lo + 5).skip(lo) {
                *x = int(&f, rng.gen_range(1..50));
            }
            TwistedSeries::new(&ctx, c)
        };
        let a = mk(&mut rng);
        let b = mk(&mut rng);
        let p = a.mul(&b);
        let (va, vb) = (twisted_order(&a).unwrap(), twisted_order(&b).unwrap());
        assert!(twisted_order(&p).unwrap() >= va.max(vb));
    }
}

#[test]
fn q_leibniz_on_random_cubics() {
    let f = make_field(3, -1, 40).unwrap();
    let ctx = QContext::new(int(&f, 4), PAdic::one(&f), 8);
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..10 {
        let a = random_poly(&mut rng, &f, &PAdic::zero(&f), 3, 3);
        let b = random_poly(&mut rng, &f, &PAdic::zero(&f), 3, 3);
        for n in 0..=5 {
            let r = q_leibniz_check(&a, &b, n, &ctx);
            assert!(r.passes(Q::from_integer(40 - 5)), "n={n}: {:?}", r.min_difference_valuation);
        }
    }
}

#[test]
fn twisted_monomial_examples() {
    let f = make_field(3, -1, 40).unwrap();
    let ctx = ctx_4_1(&f, 3);
    let t1 = twisted_monomial(1, &ctx).unwrap();
    assert!(t1.coeff(0).is_zero() && t1.coeff(1).is_one());
}
