//! Known values computed by hand or by exhaustive search, checked through
//! the public API.

use ffdiophantine::algebra::{
    parse_polynomial, parse_series, DegValue, Field, LaurentSeries, MatrixF,
};
use ffdiophantine::approx::{
    best_error, best_error_mult, dirichlet_solve, DirichletMode, DirichletOutcome, DirichletTarget,
    Method, Witness,
};
use ffdiophantine::cli::generate::{generate_series, SeriesSpec};
use ffdiophantine::cli::rng::instance_rng;
use ffdiophantine::exponents::{estimate, profile, ExponentValue, ProfileKind};
use ffdiophantine::limsup::{
    delta_membership, intersection_check, plane_identity_check, prop_backward_check, tau0,
    tset_enumerate, xi_and_t, AtVariant, IndexTuple, TsetMode, TsetParams,
};
use ffdiophantine::rational::{int, rat};

fn series(spec: &str, f: &Field, floor: i64) -> LaurentSeries {
    let spec = SeriesSpec::parse(spec).unwrap();
    generate_series(&spec, f, floor, &mut instance_rng(0, "golden", 0)).unwrap()
}

fn one_by_one(y: LaurentSeries) -> MatrixF {
    MatrixF::from_rows(vec![vec![y]]).unwrap()
}

fn w(p: &[&str], q: &[&str], f: &Field) -> Witness {
    Witness::new(
        p.iter().map(|s| parse_polynomial(s, f).unwrap()).collect(),
        q.iter().map(|s| parse_polynomial(s, f).unwrap()).collect(),
    )
}

#[test]
fn rational_generator_expands_inverse() {
    let f = Field::prime(2).unwrap();
    let y = series("rational(1, X+1)", &f, -4);
    assert_eq!(
        y,
        parse_series("X^-1 + X^-2 + X^-3 + X^-4 + O(X^-5)", &f).unwrap()
    );
}

#[test]
fn lacunary_generator_terms() {
    let f = Field::prime(2).unwrap();
    let y = series("lacunary(3)", &f, -10);
    let exps: Vec<i64> = y.terms().map(|(e, _)| e).collect();
    assert_eq!(exps, vec![-1, -3, -9]);
}

#[test]
fn lacunary_best_error_at_tower_horizons() {
    let f = Field::prime(2).unwrap();
    let y = one_by_one(series("lacunary(3)", &f, -300));
    let theta = [LaurentSeries::zero()];
    for k in 0..4u32 {
        let p = 3i64.pow(k);
        let b = best_error(&y, &theta, (p + 1) as u32, Method::Kernel, &f).unwrap();
        assert_eq!(b.b, DegValue::fin(-2 * p), "T = {}", p + 1);
    }
}

#[test]
fn lacunary_kernel_matches_brute_force() {
    let f = Field::prime(2).unwrap();
    let y = one_by_one(series("lacunary(3)", &f, -120));
    let theta = [LaurentSeries::zero()];
    for t in 1..=12 {
        let k = best_error(&y, &theta, t, Method::Kernel, &f).unwrap();
        let b = best_error(&y, &theta, t, Method::Brute, &f).unwrap();
        assert_eq!(k.b, b.b, "T = {t}");
    }
}

#[test]
fn lacunary_is_very_well_approximable() {
    let f = Field::prime(2).unwrap();
    let y = one_by_one(series("lacunary(3)", &f, -120));
    let p = profile(&y, &[LaurentSeries::zero()], 28, ProfileKind::Standard, &f).unwrap();
    let est = estimate(&p).unwrap();
    assert!(est.omega_proxy >= ExponentValue::Finite(rat(3, 2)));
}

#[test]
fn golden_continued_fraction_profile() {
    let f = Field::prime(2).unwrap();
    let y = one_by_one(series("cf(1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1)", &f, -40));
    let theta = [LaurentSeries::zero()];
    for t in 1..=6 {
        let b = best_error(&y, &theta, t, Method::Brute, &f).unwrap();
        assert_eq!(b.b, DegValue::fin(-(t as i64)), "T = {t}");
    }
}

#[test]
fn best_error_small_cases() {
    let f = Field::prime(2).unwrap();
    let zero = MatrixF::zeros(1, 1);
    let theta = [parse_series("X^-3", &f).unwrap()];
    for t in 1..=5 {
        assert_eq!(
            best_error(&zero, &theta, t, Method::Kernel, &f).unwrap().b,
            DegValue::fin(-3)
        );
    }
    let y = one_by_one(parse_series("X^-1", &f).unwrap());
    let b = best_error(&y, &[LaurentSeries::zero()], 2, Method::Kernel, &f).unwrap();
    assert_eq!(b.b, DegValue::NEG_INF);
}

#[test]
fn mult_equals_standard_for_one_by_one() {
    let f = Field::prime(3).unwrap();
    let y = one_by_one(series("lacunary(2)", &f, -60));
    let theta = [parse_series("X^-2 + 2*X^-5", &f).unwrap()];
    for t in 1..=8 {
        let s = best_error(&y, &theta, t, Method::Brute, &f).unwrap();
        let m = best_error_mult(&y, &theta, t, &f).unwrap();
        assert_eq!(s.b, m.b, "T = {t}");
    }
}

#[test]
fn dirichlet_examples() {
    let f = Field::prime(2).unwrap();
    let y = one_by_one(parse_series("X^-1", &f).unwrap());
    let t = DirichletTarget::new(vec![1, 1], 1, 1).unwrap();
    let strict = dirichlet_solve(&y, &t, DirichletMode::Strict, &f).unwrap();
    assert!(matches!(strict, DirichletOutcome::NoSolution));
    match dirichlet_solve(&y, &t, DirichletMode::Relaxed, &f).unwrap() {
        DirichletOutcome::Solved { errors, .. } => assert_eq!(errors, vec![DegValue::NEG_INF]),
        other => panic!("unexpected {other:?}"),
    }
    let y = one_by_one(parse_series("X^-2 + X^-5", &f).unwrap());
    match dirichlet_solve(&y, &t, DirichletMode::Strict, &f).unwrap() {
        DirichletOutcome::Solved { errors, strict, .. } => {
            assert_eq!(errors, vec![DegValue::fin(-2)]);
            assert!(strict);
        }
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn index_tuples_and_tau0() {
    let p11 = TsetParams::new(1, 1, int(1), TsetMode::Multiplicative).unwrap();
    assert_eq!(xi_and_t(&[3], &[1], &p11).unwrap().unwrap().t, vec![2, 2]);
    assert_eq!(xi_and_t(&[2], &[2], &p11).unwrap().unwrap().t, vec![2, 2]);
    assert!(xi_and_t(&[1], &[2], &p11).unwrap().is_none());
    let dual = TsetParams::new(2, 1, int(1), TsetMode::Dual).unwrap();
    assert_eq!(
        xi_and_t(&[3], &[1], &dual).unwrap().unwrap().t,
        vec![2, 2, 2]
    );

    assert_eq!(tau0(int(1), &p11).unwrap(), rat(1, 8));
    assert_eq!(tau0(int(2), &p11).unwrap(), rat(1, 8));
    let p12 = TsetParams::new(1, 2, int(2), TsetMode::Multiplicative).unwrap();
    assert_eq!(tau0(rat(1, 2), &p12).unwrap(), rat(1, 60));
}

#[test]
fn tset_levels_are_finite() {
    let p = TsetParams::new(1, 1, int(1), TsetMode::Multiplicative).unwrap();
    let e = tset_enumerate(&p, 10, rat(1, 8)).unwrap();
    assert!(!e.tuples.is_empty());
    assert!(e.level_counts.keys().all(|&s| (0..=10).contains(&s)));
    assert!(tset_enumerate(&p, -1, rat(1, 8)).unwrap().tuples.is_empty());
}

#[test]
fn delta_membership_examples() {
    let f = Field::prime(2).unwrap();
    let y = MatrixF::zeros(1, 1);
    let th = [LaurentSeries::zero()];
    let t = IndexTuple::new(vec![2, 2]);
    let tau = rat(1, 8);
    let m = delta_membership(
        &y,
        &th,
        &t,
        &w(&["0"], &["1"], &f),
        tau,
        AtVariant::Standard,
        &f,
    )
    .unwrap();
    assert_eq!((m.deg, m.member), (DegValue::fin(-2), true));
    let m = delta_membership(
        &y,
        &th,
        &t,
        &w(&["0"], &["X"], &f),
        tau,
        AtVariant::Standard,
        &f,
    )
    .unwrap();
    assert_eq!((m.deg, m.member), (DegValue::fin(-1), true));
    let m = delta_membership(
        &y,
        &th,
        &t,
        &w(&["X"], &["1"], &f),
        tau,
        AtVariant::Standard,
        &f,
    )
    .unwrap();
    assert!(!m.member);
}

#[test]
fn backward_witness_parameters() {
    let f = Field::prime(2).unwrap();
    let y = MatrixF::zeros(1, 1);
    let th = [LaurentSeries::zero()];
    let t = IndexTuple::new(vec![2, 2]);
    let bw =
        prop_backward_check(&y, &th, &t, &w(&["0"], &["1"], &f), rat(1, 8), int(1), &f).unwrap();
    assert_eq!((bw.t_prime, bw.eps_prime), (int(2), rat(1, 4)));
    assert!(bw.report.holds());
}

#[test]
fn intersection_difference() {
    let f = Field::prime(2).unwrap();
    let y = MatrixF::zeros(1, 1);
    let th = [LaurentSeries::zero()];
    let t = IndexTuple::new(vec![2, 2]);
    let a = w(&["0"], &["1"], &f);
    let b = w(&["0"], &["X"], &f);
    let r = intersection_check(&y, &th, &t, &a, &b, rat(1, 8), &f).unwrap();
    assert_eq!(r.difference.as_ref().unwrap().deg, DegValue::fin(-1));
    assert!(r.report.holds());
    assert!(intersection_check(&y, &th, &t, &a, &a, rat(1, 8), &f).is_err());
}

#[test]
fn plane_identity_examples() {
    let f = Field::prime(2).unwrap();
    let th = [LaurentSeries::zero()];
    let alpha = w(&["0"], &["X"], &f);
    let t = IndexTuple::new(vec![0, 4]);
    for (y, member) in [("X^-4", true), ("X^-1", false)] {
        let y = one_by_one(parse_series(y, &f).unwrap());
        let c = plane_identity_check(&y, &th, &t, &alpha, rat(1, 2), &f).unwrap();
        assert!(c.gate);
        assert_eq!((c.via_delta, c.via_plane), (member, member));
    }
    let t = IndexTuple::new(vec![2, 2]);
    let y = one_by_one(parse_series("X^-4", &f).unwrap());
    let c = plane_identity_check(&y, &th, &t, &alpha, rat(1, 2), &f).unwrap();
    assert!(!c.gate && !c.via_delta && c.report.holds());
}
