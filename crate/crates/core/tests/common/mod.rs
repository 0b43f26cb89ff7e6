//! Strategies and checks shared by the property and acceptance suites.
#![allow(dead_code)]

use std::sync::Arc;

use num_traits::{One, Zero};
use proptest::prelude::*;

use localmirror::exact::{int, rat, CoeffRing, CohomAlgebra, Key, Rational, RingElem, Window};
use localmirror::givental::{a_n, ifunction_in, x_k_factored, Action, GeometrySpec};
use localmirror::mirror::{birkhoff, default_window, no_positive_hbar};
use localmirror::series::{series_reversion, DegreeBound, LogQSeries, QSeries};

pub type Check = Result<(), String>;

pub fn small_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

pub fn nilpotent_ring() -> Arc<CoeffRing> {
    CoeffRing::new(Arc::new(CohomAlgebra::nilpotent("p")), vec!["l1".into(), "l2".into()], Window::wide())
}

pub fn a2_ring() -> Arc<CoeffRing> {
    a_n(2).unwrap().coefficient_ring(Window::wide()).unwrap()
}

pub fn ring_elem(ring: Arc<CoeffRing>) -> impl Strategy<Value = RingElem> {
    let dim = ring.algebra().dim();
    let nl = ring.nlambda();
    prop::collection::vec((0..dim, prop::collection::vec(-2i32..=2, nl), -2i32..=2, small_rational()), 0..6).prop_map(move |terms| {
        terms.into_iter().fold(RingElem::zero(&ring), |acc, (basis, lambda, hbar, c)| &acc + &RingElem::monomial(&ring, Key { basis, lambda, hbar }, c))
    })
}

fn triple_in(ring: Arc<CoeffRing>) -> impl Strategy<Value = (RingElem, RingElem, RingElem)> {
    (ring_elem(ring.clone()), ring_elem(ring.clone()), ring_elem(ring))
}

pub fn any_triple() -> impl Strategy<Value = (RingElem, RingElem, RingElem)> {
    prop_oneof![triple_in(nilpotent_ring()), triple_in(a2_ring())]
}

pub fn series_1(degree: u32, unit: bool) -> impl Strategy<Value = QSeries<Rational>> {
    prop::collection::vec(small_rational(), degree as usize).prop_map(move |tail| {
        let head = if unit { Rational::one() } else { Rational::zero() };
        let coeffs: Vec<Rational> = std::iter::once(head).chain(tail).collect();
        QSeries::from_coeffs(degree, &coeffs)
    })
}

pub fn series_box(b: [u32; 2], unit: bool) -> impl Strategy<Value = QSeries<Rational>> {
    let bound = DegreeBound::Box(b.to_vec());
    let exps: Vec<Vec<u32>> = bound.exponents().into_iter().filter(|e| e.iter().any(|x| *x > 0)).collect();
    prop::collection::vec(small_rational(), exps.len()).prop_map(move |cs| {
        let mut terms: Vec<(Vec<u32>, Rational)> = exps.iter().cloned().zip(cs).collect();
        if unit {
            terms.push((vec![0, 0], Rational::one()));
        }
        QSeries::rational(bound.clone(), terms)
    })
}

pub fn any_series(unit: bool) -> impl Strategy<Value = QSeries<Rational>> {
    prop_oneof![(1u32..=6).prop_flat_map(move |d| series_1(d, unit)), series_box([2, 2], unit), series_box([3, 1], unit)]
}

/// Zero-constant series for one or two mirror maps.
pub fn mirror_series() -> impl Strategy<Value = Vec<QSeries<Rational>>> {
    prop_oneof![
        (1u32..=7).prop_flat_map(|d| series_1(d, false)).prop_map(|g| vec![g]),
        (series_box([2, 3], false), series_box([2, 3], false)).prop_map(|(a, b)| vec![a, b]),
    ]
}

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

pub fn ring_axioms(a: &RingElem, b: &RingElem, c: &RingElem) -> Check {
    ensure(&(a + b) * c == &(a * c) + &(b * c), || format!("distributivity fails for {a}, {b}, {c}"))?;
    ensure(a * b == b * a, || format!("commutativity fails for {a}, {b}"))?;
    ensure(a * &(b * c) == &(a * b) * c, || format!("associativity fails for {a}, {b}, {c}"))
}

/// `t(q(x)) = log x` and `q(x(q)) = q` for `t_i = log q_i + g_i`.
pub fn reversion_round_trip(gs: &[QSeries<Rational>]) -> Check {
    let e = |x: localmirror::Error| x.to_string();
    let t: Vec<LogQSeries<Rational>> = gs.iter().enumerate().map(|(i, g)| LogQSeries::mirror_map(i, g.clone())).collect::<Result<_, _>>().map_err(e)?;
    let q = series_reversion(&t).map_err(e)?;
    let bound = gs[0].bound().clone();
    for (i, g) in gs.iter().enumerate() {
        let x = QSeries::variable(bound.clone(), i);
        let fixed = x.mul(&g.compose(&q).map_err(e)?.neg().exp().map_err(e)?).map_err(e)?;
        ensure(q[i] == fixed, || format!("t(q(x)) != log x in component {i}"))?;
    }
    let xq: Vec<QSeries<Rational>> =
        gs.iter().enumerate().map(|(i, g)| QSeries::variable(bound.clone(), i).mul(&g.exp()?)).collect::<Result<_, _>>().map_err(e)?;
    for (i, qi) in q.iter().enumerate() {
        ensure(qi.compose(&xq).map_err(e)? == QSeries::variable(bound.clone(), i), || format!("q(x(q)) != q in component {i}"))?;
    }
    Ok(())
}

/// Every coefficient of the Birkhoff output beyond degree 0 is in `ħ^{<0}`.
pub fn birkhoff_postcondition(spec: &GeometrySpec, bound: &DegreeBound) -> Check {
    let e = |x: localmirror::Error| format!("{}: {x}", spec.name);
    let ring = spec.coefficient_ring(default_window(bound)).map_err(e)?;
    let i = ifunction_in(spec, &ring, bound).map_err(e)?;
    let b = birkhoff(&i).map_err(e)?;
    ensure(no_positive_hbar(&b.j), || format!("{} has a non-negative ħ-power", spec.name))?;
    for (d, c) in b.j.terms() {
        if d.iter().any(|x| *x > 0) {
            ensure(c.terms().all(|(k, _)| k.hbar < 0), || format!("{} at {d:?}", spec.name))?;
        }
    }
    Ok(())
}

pub fn birkhoff_case(k: i64, diagonal: bool, degree: u32) -> Check {
    let action = if diagonal { Action::Diagonal } else { Action::Antidiagonal };
    birkhoff_postcondition(&x_k_factored(k, action).map_err(|e| e.to_string())?, &DegreeBound::single(degree))
}

/// `(kp+λ₁)((−2−k)p+λ₂)·λ₁^{k−1}λ₂^{k+1} = (p+λ₁)^k(−p+λ₂)^{2+k}` modulo `p²`.
pub fn euler_class_identity(k: i64) -> Check {
    let ring = nilpotent_ring();
    let p = RingElem::generator(&ring, 0, int(1));
    let l1 = RingElem::lambda(&ring, 0, int(1));
    let l2 = RingElem::lambda(&ring, 1, int(1));
    let k32 = k as u32;
    let lhs = &(&(&p.scale(&int(k)) + &l1) * &(&p.scale(&int(-2 - k)) + &l2)) * &(&l1.pow(k32 - 1) * &l2.pow(k32 + 1));
    let rhs = &(&p + &l1).pow(k32) * &(&l2 - &p).pow(k32 + 2);
    ensure(lhs == rhs, || format!("k = {k}: {lhs} != {rhs}"))
}
