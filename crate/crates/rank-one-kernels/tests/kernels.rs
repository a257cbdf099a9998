use std::sync::Arc;

use affinoid_geometry::Affinoid;
use analytic_functions::DiskSeries;
use padic_field::{make_field, Field, PAdic, Q};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rank_one_kernels::{
    from_phantom, integrality_diagnostic, log_derivative, phantom, pi_exponential, rank_one_deformed_matrix,
    solvable_operator, witt_add, witt_neg, witt_sub, KernelError, UPoly, WittVector,
};

const N: u32 = 40;
const M: usize = 32;

fn q(n: i64) -> Q {
    Q::from_integer(n)
}

fn u(f: &Field) -> UPoly {
    UPoly::monomial(f, 1)
}

fn random_poly(rng: &mut ChaCha8Rng, f: &Field, deg: usize) -> UPoly {
    let mut c = vec![0];
    c.extend((1..=deg).map(|_| rng.gen_range(-20..20)));
    UPoly::from_ints(f, &c)
}

fn random_witt(rng: &mut ChaCha8Rng, f: &Field, len: usize) -> WittVector {
    WittVector::new((0..len).map(|_| random_poly(rng, f, 2)).collect()).unwrap()
}

fn same(a: &WittVector, b: &WittVector, prec: Q) -> bool {
    a.components().iter().zip(b.components()).all(|(x, y)| x.agreement(y) >= prec)
}

#[test]
fn phantom_examples() {
    let f = make_field(3, -1, N).unwrap();
    let w = WittVector::new(vec![u(&f)]).unwrap();
    assert!(phantom(&w)[0].agreement(&u(&f)) >= q(N as i64));

    let w = WittVector::new(vec![u(&f), UPoly::zero(&f)]).unwrap();
    let ph = phantom(&w);
    assert!(ph[1].agreement(&UPoly::monomial(&f, 3)) >= q(N as i64));

    let g = UPoly::from_ints(&f, &[0, 2, 5]);
    let w = WittVector::new(vec![UPoly::zero(&f), g.clone()]).unwrap();
    let ph = phantom(&w);
    assert!(ph[0].is_zero());
    assert!(ph[1].agreement(&g.scale(&PAdic::from_int(&f, 3))) >= q(N as i64));
}

#[test]
fn witt_group_examples() {
    let f = make_field(3, -1, N).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let w = random_witt(&mut rng, &f, 2);
    let z = WittVector::zero(&f, 2);
    // the inversion divides by p^j: j digits of precision go
    assert!(same(&witt_add(&w, &z).unwrap(), &w, q(N as i64 - 1)));

    let a = WittVector::new(vec![u(&f), UPoly::zero(&f)]).unwrap();
    let b = WittVector::new(vec![u(&f).neg(), UPoly::zero(&f)]).unwrap();
    let s = witt_add(&a, &b).unwrap();
    assert!(s.components().iter().all(|c| c.is_zero()));

    let n = witt_neg(&w).unwrap();
    assert!(witt_add(&w, &n).unwrap().components().iter().all(|c| c.is_zero()));
    let d = witt_sub(&w, &w).unwrap();
    assert!(d.components().iter().all(|c| c.is_zero()));
}

#[test]
fn phantom_is_additive() {
    let f = make_field(5, -1, N).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for _ in 0..10 {
        let a = random_witt(&mut rng, &f, 3);
        let b = random_witt(&mut rng, &f, 3);
        let s = witt_add(&a, &b).unwrap();
        assert!(s.is_integral());
        for ((x, y), z) in phantom(&a).iter().zip(phantom(&b)).zip(phantom(&s)) {
            assert!(x.add(&y).agreement(&z) >= q(N as i64 - 3));
        }
    }
}

#[test]
fn classical_witt_addition_p2() {
    // S_0 = X_0 + Y_0, S_1 = X_1 + Y_1 - X_0 Y_0 for p = 2.
    let f = make_field(2, -1, N).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..20 {
        let a = random_witt(&mut rng, &f, 2);
        let b = random_witt(&mut rng, &f, 2);
        let (x, y) = (a.components(), b.components());
        let s = witt_add(&a, &b).unwrap();
        assert!(s.components()[0].agreement(&x[0].add(&y[0])) >= q(N as i64 - 2));
        let s1 = x[1].add(&y[1]).sub(&x[0].mul(&y[0]));
        assert!(s.components()[1].agreement(&s1) >= q(N as i64 - 2));
    }
}

#[test]
fn inversion_rejects_non_integral() {
    let f = make_field(3, -1, N).unwrap();
    let phi = vec![UPoly::zero(&f), u(&f)];
    assert_eq!(from_phantom(&phi).unwrap_err(), KernelError::NonIntegral(1));
    let third = UPoly::new(&f, vec![PAdic::zero(&f), PAdic::from_rational(&f, 1, 3)]);
    assert!(matches!(WittVector::new(vec![third]), Err(KernelError::NonIntegral(0))));
}

#[test]
fn pi_exponential_examples() {
    let k = make_field(3, 0, N).unwrap();
    let e = pi_exponential(&WittVector::zero(&k, 1), M).unwrap();
    assert!((&e.series().coeff(0) - &PAdic::one(&k)).is_zero());
    assert!(e.series().coeffs()[1..].iter().all(|c| c.is_zero()));

    let pi = PAdic::pi_s(&k).unwrap();
    let e = pi_exponential(&WittVector::new(vec![u(&k)]).unwrap(), M).unwrap();
    let mut t = PAdic::one(&k);
    for n in 0..=M {
        if n > 0 {
            t = (&t * &pi).div(&PAdic::from_int(&k, n as i64)).unwrap();
        }
        assert!(e.series().coeff(n).agreement(&t) >= q(N as i64 - 2));
        assert!(e.series().coeff(n).is_integral());
    }
    assert!(e.in_unit_group());

    let f = make_field(3, -1, N).unwrap();
    let needs = pi_exponential(&WittVector::new(vec![u(&f)]).unwrap(), M).unwrap_err();
    assert_eq!(needs, KernelError::FieldLevel { need: 1, have: -1 });
}

#[test]
fn pi_exponential_group_law() {
    let k = make_field(3, 1, N).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    for i in 0..20 {
        let len = 1 + i % 2;
        let a = random_witt(&mut rng, &k, len);
        let b = random_witt(&mut rng, &k, len);
        let ea = pi_exponential(&a, M).unwrap();
        let eb = pi_exponential(&b, M).unwrap();
        let es = pi_exponential(&witt_add(&a, &b).unwrap(), M).unwrap();
        assert!(ea.in_unit_group() && eb.in_unit_group() && es.in_unit_group());
        let prod = ea.series().mul(eb.series()).truncate(M);
        assert!(prod.agreement(es.series(), M) >= q(N as i64 - 8));
    }
}

#[test]
fn operator_examples() {
    let k = make_field(3, 0, N).unwrap();
    let dom = Arc::new(Affinoid::annulus(PAdic::zero(&k), Q::new(-1, 4), q(0)));
    let a0 = PAdic::from_rational(&k, 1, 2);
    let e = solvable_operator(&a0, &WittVector::zero(&k, 1), &dom, M).unwrap();
    let want = analytic_functions::AnalyticFunction::constant(&dom, a0.clone(), M);
    assert!(e.matrix().get(0, 0).agreement(&want) >= q(N as i64));

    let pi = PAdic::pi_s(&k).unwrap();
    let w = WittVector::new(vec![u(&k)]).unwrap();
    let ld = log_derivative(&w).unwrap();
    assert!(ld.agreement(&u(&k).scale(&-&pi)) >= q(N as i64));
    let e = solvable_operator(&PAdic::zero(&k), &w, &dom, M).unwrap();
    let want = analytic_functions::AnalyticFunction::monomial(&dom, -1, M).unwrap().scale(&-&pi);
    assert!(e.matrix().get(0, 0).agreement(&want) >= q(N as i64));

    let both = solvable_operator(&a0, &w, &dom, M).unwrap();
    let sum = e.matrix().get(0, 0).add_constant(&a0);
    assert!(both.matrix().get(0, 0).agreement(&sum) >= q(N as i64));
}

/// `delta_1 = -u d/du` on a series in `u`.
fn delta1_u(s: &DiskSeries) -> DiskSeries {
    s.delta1().neg()
}

#[test]
fn pi_exponential_solves_operator() {
    let k = make_field(3, 1, N).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(25);
    for len in [1, 2, 2] {
        let w = random_witt(&mut rng, &k, len);
        let e = pi_exponential(&w, M).unwrap();
        let g = log_derivative(&w).unwrap().to_series(M);
        let lhs = delta1_u(e.series());
        let rhs = g.mul(e.series()).truncate(M);
        // the truncated product is exact below the degree of g
        let upto = M - g.coeffs().iter().rposition(|c| !c.is_zero()).unwrap_or(0);
        assert!(lhs.agreement(&rhs, upto) >= q(N as i64 - 8));
    }
}

#[test]
fn deformed_matrix_examples() {
    let k = make_field(3, 0, N).unwrap();
    let one = PAdic::one(&k);
    let four = PAdic::from_int(&k, 4);
    let z = rank_one_deformed_matrix(&WittVector::zero(&k, 1), &four, M).unwrap();
    assert!(z.series.coeffs()[1..].iter().all(|c| c.is_zero()));

    let w = WittVector::new(vec![u(&k)]).unwrap();
    let d = rank_one_deformed_matrix(&w, &one, M).unwrap();
    assert!((&d.series.coeff(0) - &one).is_zero() && d.series.coeffs()[1..].iter().all(|c| c.is_zero()));

    // exp(pi_0 (q^{-1} - 1) u)
    let pi = PAdic::pi_s(&k).unwrap();
    let lam = &pi * &(&four.inv().unwrap() - &one);
    let d = rank_one_deformed_matrix(&w, &four, M).unwrap();
    let mut t = one.clone();
    for n in 0..=M {
        if n > 0 {
            t = (&t * &lam).div(&PAdic::from_int(&k, n as i64)).unwrap();
        }
        assert!(d.series.coeff(n).agreement(&t) >= q(N as i64 - 4));
    }
    assert!(d.diagnostic.passes(), "{:?}", d.diagnostic);

    assert_eq!(rank_one_deformed_matrix(&w, &PAdic::from_int(&k, 2), M).unwrap_err(), KernelError::QNotNearOne);
}

#[test]
fn deformed_matrix_diagnostic() {
    let k = make_field(3, 0, N).unwrap();
    let m = 48;
    let pi = PAdic::pi_s(&k).unwrap();
    // w = (pi_0^{-1} u) gives exp((q^{-1} - 1) u): overconvergent iff |q^{-1} - 1| < omega.
    let w = WittVector::new_unchecked(vec![u(&k).scale(&pi.inv().unwrap())]);
    let good = rank_one_deformed_matrix(&w, &PAdic::from_int(&k, 4), m).unwrap();
    assert!(good.diagnostic.passes(), "{:?}", good.diagnostic);
    let xi = PAdic::zeta(&k).unwrap();
    let bad = rank_one_deformed_matrix(&w, &xi, m).unwrap();
    assert!(!bad.diagnostic.passes(), "{:?}", bad.diagnostic);
    assert_eq!(integrality_diagnostic(&bad.series), bad.diagnostic);

    // integral w stays overconvergent for every |q - 1| < 1
    let k1 = make_field(3, 1, N).unwrap();
    let w = WittVector::new(vec![u(&k1), UPoly::zero(&k1)]).unwrap();
    let d = rank_one_deformed_matrix(&w, &PAdic::zeta(&k1).unwrap(), m).unwrap();
    assert!(d.diagnostic.integral);
}
