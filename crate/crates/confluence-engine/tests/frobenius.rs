use std::sync::Arc;

use affinoid_geometry::Affinoid;
use analytic_functions::{estimator_tolerance, exp_series, AnalyticFunction, DiskSeries};
use confluence_engine::{
    best_admissibility, check_admissible, deform, derive_frobenius_witness, frobenius_pullback, frobenius_radius_law,
    verify_frobenius_structure, Gate,
};
use difference_modules::{generic_radius, DiffEquation, Equation, FnMatrix, QDiffEquation};
use padic_field::{make_field, Field, PAdic, Q};

const N: u32 = 40;
const M: usize = 48;

fn q(n: i64) -> Q {
    Q::from_integer(n)
}

fn unit_disk(f: &Field) -> Arc<Affinoid> {
    Arc::new(Affinoid::disk(PAdic::zero(f), q(0)))
}

fn circle(f: &Field) -> Arc<Affinoid> {
    Arc::new(Affinoid::annulus(PAdic::zero(f), q(0), q(0)))
}

fn linear(dom: &Arc<Affinoid>, a: PAdic, b: PAdic) -> DiffEquation {
    DiffEquation::new(dom, FnMatrix::scalar(AnalyticFunction::from_t_poly(dom, &[a, b], M))).unwrap()
}

/// `exp(pi (T^3 - T))` on the domain.
fn dwork_frobenius(dom: &Arc<Affinoid>, pi: &PAdic, m: usize) -> AnalyticFunction {
    let f = pi.field();
    let z = PAdic::zero(f);
    let g = DiskSeries::polynomial(z.clone(), vec![z.clone(), -pi, z, pi.clone()]).pad(m);
    AnalyticFunction::from_disk_series(dom, &exp_series(&g).unwrap())
}

#[test]
fn admissibility_examples() {
    let f = make_field(3, -1, N).unwrap();
    let dom = unit_disk(&f);
    let qv = PAdic::from_int(&f, 4);
    let unit = Equation::D(DiffEquation::unit(&dom, 1, M));
    let r = check_admissible(&unit, q(-1) + Q::new(1, 2), Some(&qv), M);
    assert!(r.admissible(), "{r:?}");

    let k = make_field(3, 0, N).unwrap();
    let pi = PAdic::pi_s(&k).unwrap();
    let dom = unit_disk(&k);
    let e = Equation::D(linear(&dom, PAdic::zero(&k), pi));
    let r = check_admissible(&e, Q::new(-5, 8), Some(&PAdic::from_int(&k, 4)), M);
    assert!(r.admissible(), "{r:?}");
    assert!(r.r_estimate.unwrap() <= estimator_tolerance(M));
}

#[test]
fn pullback_matrices() {
    let f = make_field(3, -1, N).unwrap();
    let dom = circle(&f);
    let half = PAdic::from_rational(&f, 1, 2);
    let e = Equation::D(linear(&dom, half, PAdic::zero(&f)));
    let Equation::D(pb) = frobenius_pullback(&e, M).unwrap() else { panic!() };
    let expect = AnalyticFunction::constant(pb.domain(), PAdic::from_rational(&f, 3, 2), M);
    assert!(pb.matrix().get(0, 0).agreement(&expect) >= q(N as i64));

    let unit = Equation::D(DiffEquation::unit(&dom, 2, M));
    let Equation::D(pb) = frobenius_pullback(&unit, M).unwrap() else { panic!() };
    assert!(pb.matrix().is_zero());

    let qv = PAdic::from_int(&f, 4);
    let a = QDiffEquation::new(&dom, qv.clone(), FnMatrix::scalar(AnalyticFunction::constant(&dom, qv.clone(), M))).unwrap();
    let Equation::Q(pb) = frobenius_pullback(&Equation::Q(a), M).unwrap() else { panic!() };
    assert_eq!(pb.q(), &qv);
    let expect = AnalyticFunction::constant(pb.domain(), qv.pow(3), M);
    assert!(pb.matrix().get(0, 0).agreement(&expect) >= q(N as i64 - 2));

    let shifted = Arc::new(Affinoid::disk(PAdic::one(&f), q(0)));
    assert!(frobenius_pullback(&Equation::D(DiffEquation::unit(&shifted, 1, M)), M).is_err());
}

fn outer_radius(e: &Equation) -> Q {
    let z = PAdic::zero(e.domain().field());
    generic_radius(e, &z, e.domain().outer().rlog, M).unwrap().log_radius
}

#[test]
fn radius_law() {
    let tol = estimator_tolerance(M);
    let f = make_field(3, -1, N).unwrap();
    let k = make_field(3, 0, N).unwrap();
    let pi = PAdic::pi_s(&k).unwrap();
    let cases = [
        (Equation::D(linear(&circle(&f), PAdic::from_rational(&f, 1, 2), PAdic::zero(&f))), q(0)),
        (Equation::D(linear(&unit_disk(&k), PAdic::zero(&k), pi)), q(0)),
        (Equation::D(linear(&unit_disk(&f), PAdic::zero(&f), PAdic::one(&f))), Q::new(-1, 2)),
        (Equation::D(linear(&unit_disk(&f), PAdic::zero(&f), PAdic::from_rational(&f, 1, 9))), Q::new(-5, 2)),
    ];
    for (e, r) in cases {
        let before = outer_radius(&e);
        assert!((before - r) <= tol && (r - before) <= tol, "{before} vs {r}");
        let after = outer_radius(&frobenius_pullback(&e, 3 * M).unwrap());
        let law = frobenius_radius_law(3, r);
        assert!((after - law) <= tol && (law - after) <= tol, "{after} vs {law}");
    }
    assert_eq!(frobenius_radius_law(3, Q::new(-1, 2)), Q::new(-1, 6));
    assert_eq!(frobenius_radius_law(3, Q::new(-5, 2)), Q::new(-3, 2));
}

#[test]
fn structure_checks() {
    let f = make_field(3, -1, N).unwrap();
    let dom = circle(&f);
    let unit = Equation::D(DiffEquation::unit(&dom, 2, M));
    let id = FnMatrix::identity(2, &AnalyticFunction::one(&dom, M));
    assert!(verify_frobenius_structure(&unit, &id, 1, M, q(N as i64 - 5)).unwrap().passes());
    assert!(verify_frobenius_structure(&unit, &id, 2, M, q(N as i64 - 5)).unwrap().passes());

    // y = T: the witness is T^2, a polynomial.
    let e = Equation::D(linear(&dom, PAdic::one(&f), PAdic::zero(&f)));
    let w = derive_frobenius_witness(&e, 1, M).unwrap();
    assert!(w.in_ring());
    let t2 = AnalyticFunction::monomial(&dom, 2, M).unwrap();
    let t2 = t2.taylor_at(&PAdic::one(&f), M / 2).unwrap();
    assert!(w.series.get(0, 0).agreement(&t2, M / 2) >= q(N as i64 - 5));
    let h = FnMatrix::scalar(AnalyticFunction::monomial(&dom, 2, M).unwrap());
    assert!(verify_frobenius_structure(&e, &h, 1, M, q(N as i64 - 5)).unwrap().passes());
    let one = FnMatrix::scalar(AnalyticFunction::one(&dom, M));
    assert!(!verify_frobenius_structure(&e, &one, 1, M, q(N as i64 - 5)).unwrap().passes());
}

#[test]
fn dwork_witness_and_root_of_unity() {
    let k = make_field(3, 0, N).unwrap();
    let pi = PAdic::dwork_pi(&k).unwrap();
    let dom = unit_disk(&k);
    let e = linear(&dom, PAdic::zero(&k), pi.clone());
    let eq = Equation::D(e.clone());
    // |h_n| <= 3^{-2n/9}: the tail beyond 4M is below the threshold.
    let h = dwork_frobenius(&dom, &pi, 4 * M);
    let c = verify_frobenius_structure(&eq, &FnMatrix::scalar(h.clone()), 1, M, q(N as i64 - 10)).unwrap();
    assert!(c.passes(), "{c:?}");

    let w = derive_frobenius_witness(&eq, 1, M).unwrap();
    assert!(w.in_ring(), "{w:?}");
    // theta(1) = zeta_3^{-1}: the witness is normalised to 1 at T = 1.
    let at_one = h.taylor_at(&PAdic::one(&k), M / 2).unwrap();
    let at_one = at_one.scale(&at_one.coeff(0).inv().unwrap());
    assert!(at_one.coeff(0).agreement(&PAdic::one(&k)) >= q(N as i64 - 10));
    let zeta = PAdic::zeta(&k).unwrap();
    let h1 = h.evaluate(&PAdic::one(&k)).unwrap();
    assert!(h1.agreement(&zeta.inv().unwrap()) >= q(N as i64 - 12) || h1.agreement(&zeta) >= q(N as i64 - 12));
    assert!(w.series.get(0, 0).agreement(&at_one, M / 2) >= q(N as i64 - 10));

    let xi = PAdic::zeta(&k).unwrap();
    let rep = best_admissibility(&eq, Some(&xi), M).unwrap();
    let a = deform(&e, &xi, M, Gate::Certified(&rep)).unwrap().equation;
    // Formal identity in degrees <= M: every factor is truncated alike.
    let h = FnMatrix::scalar(dwork_frobenius(&dom, &pi, M));
    let b = h.sigma_q(&xi).unwrap().mul(a.matrix()).mul(&h.inverse().unwrap());
    assert!(b.agreement(&b.identity_like()) >= q(N as i64 - 10));
}

