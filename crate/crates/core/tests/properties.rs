mod common;

use std::sync::Arc;

use num_traits::{One, Zero};
use proptest::prelude::*;

use common::*;

use localmirror::closed::{conj1, triple_intersection};
use localmirror::exact::rational::render;
use localmirror::exact::{expand_reciprocal_at_infinity, int, rat, CoeffRing, Rational, RingElem, Window};
use localmirror::givental::{a_n, d1, ifunction_in, trivalent, x_k_factored, y_k, Action, GeometrySpec, ThetaOperator};
use localmirror::mirror::{default_window, run_pipeline};
use localmirror::series::{series_reversion, DegreeBound, LogQSeries};

fn reciprocal_form() -> impl Strategy<Value = (Rational, Rational, Rational, Rational, u32)> {
    (small_rational().prop_filter("nonzero", |c| !c.is_zero()), small_rational(), small_rational(), small_rational(), 0u32..6)
}

proptest! {
    #[test]
    fn rationals_are_reduced(n in -1000i64..1000, d in 1i64..1000) {
        let r = rat(n, d);
        prop_assert!(r.denom() > &num_bigint::BigInt::zero());
        prop_assert_eq!(num_integer::Integer::gcd(r.numer(), r.denom()), num_bigint::BigInt::one());
        if n == 0 {
            prop_assert_eq!(render(&r), "0/1");
        }
    }

    #[test]
    fn ring_axioms_hold((a, b, c) in any_triple()) {
        ring_axioms(&a, &b, &c).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn reciprocal_at_infinity((c, a, b, e, depth) in reciprocal_form()) {
        let ring = nilpotent_ring();
        let y = &(&RingElem::generator(&ring, 0, a) + &RingElem::hbar(&ring, 1, b)) + &RingElem::constant(&ring, e);
        let f = &RingElem::lambda(&ring, 0, c) + &y;
        let inv = expand_reciprocal_at_infinity(&f, depth).unwrap();
        let rest = &(&inv * &f) - &RingElem::one(&ring);
        for (k, v) in rest.terms() {
            prop_assert!(k.lambda_degree() < -(depth as i32), "term {:?} {} survives", k, v);
        }
    }

    #[test]
    fn exp_log_inverse(s in any_series(true)) {
        prop_assert_eq!(s.log().unwrap().exp().unwrap(), s.clone());
    }

    #[test]
    fn log_exp_inverse(g in any_series(false)) {
        prop_assert_eq!(g.exp().unwrap().log().unwrap(), g.clone());
    }

    #[test]
    fn theta_is_a_derivation(a in any_series(false), b in any_series(true)) {
        prop_assume!(a.bound() == b.bound());
        for i in 0..a.nvars() {
            let lhs = a.mul(&b).unwrap().theta(i);
            let rhs = a.theta(i).mul(&b).unwrap().add(&a.mul(&b.theta(i)).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn reversion_round_trips(gs in mirror_series()) {
        reversion_round_trip(&gs).map_err(TestCaseError::fail)?;
    }
}

#[test]
fn pipeline_mirror_maps_round_trip() {
    for k in 1..=3 {
        let spec = x_k_factored(k, Action::Antidiagonal).unwrap();
        let bound = DegreeBound::single(4);
        let run = run_pipeline(&spec, &bound, default_window(&bound)).unwrap();
        reversion_round_trip(&run.mirror.g).unwrap();
        assert_eq!(run.mirror.inverse, series_reversion(&run.mirror.maps).unwrap());
        assert_eq!(run.mirror.jacobian.constant_term(), int(1));
    }
    let spec = a_n(2).unwrap();
    let bound = DegreeBound::Box(vec![2, 2]);
    let run = run_pipeline(&spec, &bound, default_window(&bound)).unwrap();
    reversion_round_trip(&run.mirror.g).unwrap();
    for beta in run.table.entries.keys() {
        assert!(bound.contains(beta));
    }
}

#[test]
fn algebra_is_associative_on_every_basis_triple() {
    let specs: Vec<GeometrySpec> =
        vec![a_n(2).unwrap(), a_n(3).unwrap(), trivalent(Action::Generic).unwrap(), y_k(0).unwrap(), y_k(1).unwrap(), y_k(2).unwrap()];
    let mut rings: Vec<Arc<CoeffRing>> = specs.iter().map(|s| s.coefficient_ring(Window::wide()).unwrap()).collect();
    rings.push(nilpotent_ring());
    for ring in rings {
        let dim = ring.algebra().dim();
        let e: Vec<RingElem> = (0..dim).map(|b| RingElem::basis_element(&ring, b, int(1))).collect();
        assert_eq!(&e[0] * &e[0], e[0], "basis element 0 is not the unit");
        for a in &e {
            for b in &e {
                assert_eq!(a * b, b * a);
                for c in &e {
                    assert_eq!(&(a * b) * c, a * &(b * c));
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 16, ..ProptestConfig::default() })]

    #[test]
    fn birkhoff_leaves_no_positive_hbar(k in 1i64..=4, diagonal in any::<bool>(), degree in 1u32..=4) {
        birkhoff_case(k, diagonal, degree).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn operator_composition_matches_sequential_application(
        a in prop::collection::vec((0u32..=2, 0u32..=2, -3i64..=3), 1..4),
        b in prop::collection::vec((0u32..=2, 0u32..=2, -3i64..=3), 1..4),
    ) {
        let spec = x_k_factored(1, Action::Antidiagonal).unwrap();
        let bound = DegreeBound::single(3);
        let ring = spec.coefficient_ring(default_window(&bound)).unwrap();
        let i = ifunction_in(&spec, &ring, &bound).unwrap();
        let build = |ts: &[(u32, u32, i64)]| {
            ts.iter().fold(ThetaOperator::zero(&ring, 1, true), |acc, (qe, te, c)| {
                acc.add(&ThetaOperator::term(&ring, true, vec![*qe], vec![*te], RingElem::constant(&ring, int(*c)))).unwrap()
            })
        };
        let (oa, ob) = (build(&a), build(&b));
        let composed = oa.compose(&ob).unwrap().apply(&i).unwrap();
        let sequential = oa.apply(&ob.apply(&i).unwrap()).unwrap();
        prop_assert_eq!(composed, sequential);
    }
}

#[test]
fn birkhoff_postcondition_on_named_geometries() {
    birkhoff_postcondition(&d1(Action::Antidiagonal).unwrap(), &DegreeBound::single(4)).unwrap();
    birkhoff_postcondition(&a_n(2).unwrap(), &DegreeBound::Box(vec![2, 2])).unwrap();
    birkhoff_postcondition(&trivalent(Action::Diagonal).unwrap(), &DegreeBound::Box(vec![1, 1, 1])).unwrap();
    birkhoff_postcondition(&y_k(0).unwrap(), &DegreeBound::Box(vec![3, 3])).unwrap();
}

#[test]
fn theta_q_commutation() {
    let spec = x_k_factored(2, Action::Antidiagonal).unwrap();
    let ring = spec.coefficient_ring(Window::wide()).unwrap();
    let theta = ThetaOperator::theta(&ring, 1, true, 0);
    let q = ThetaOperator::q(&ring, 1, true, 0);
    let hq = q.mul_coeff(&RingElem::hbar(&ring, 1, int(1)));
    assert_eq!(theta.compose(&q).unwrap(), q.compose(&theta).unwrap().add(&hq).unwrap());
}

#[test]
fn ifunction_coefficients_are_stable_under_enlarging_the_box() {
    for spec in [x_k_factored(2, Action::Antidiagonal).unwrap(), d1(Action::Antidiagonal).unwrap()] {
        let ring = spec.coefficient_ring(default_window(&DegreeBound::single(4))).unwrap();
        let small = ifunction_in(&spec, &ring, &DegreeBound::single(2)).unwrap();
        let large = ifunction_in(&spec, &ring, &DegreeBound::single(4)).unwrap();
        for d in 0..=2u32 {
            assert_eq!(small.coeff(&[d]), large.coeff(&[d]));
        }
    }
    let spec = a_n(2).unwrap();
    let ring = spec.coefficient_ring(default_window(&DegreeBound::Box(vec![3, 3]))).unwrap();
    let small = ifunction_in(&spec, &ring, &DegreeBound::Box(vec![1, 2])).unwrap();
    let large = ifunction_in(&spec, &ring, &DegreeBound::Box(vec![3, 3])).unwrap();
    for (d, c) in small.terms() {
        assert_eq!(&large.coeff(d), c);
    }
}

#[test]
fn euler_class_identity_k1_to_5() {
    for k in 1..=5 {
        euler_class_identity(k).unwrap();
    }
}

#[test]
fn triple_intersection_normalization() {
    for k in 1..=10i64 {
        assert_eq!(triple_intersection(k).unwrap() * int(k * (k + 2)), int(-1));
    }
}

#[test]
fn theta_of_mirror_map_is_qdt() {
    for k in 1..=6i64 {
        let g = conj1(k).unwrap();
        let t = g.mirror_map(8).unwrap();
        let qdt = g.qdt.to_series(8);
        assert_eq!(t.theta(0), LogQSeries::from_series(qdt.clone()));
        let y = g.yukawa_qqq().mul(&g.qdt.pow(3).recip().unwrap()).to_series(8);
        assert_eq!(y.constant_term(), rat(-1, k * (k + 2)));
    }
}

#[test]
fn mismatched_bound_is_an_error() {
    let spec = y_k(0).unwrap();
    let ring = spec.coefficient_ring(Window::wide()).unwrap();
    assert!(matches!(ifunction_in(&spec, &ring, &DegreeBound::single(2)), Err(localmirror::Error::VariableMismatch(_))));
}
