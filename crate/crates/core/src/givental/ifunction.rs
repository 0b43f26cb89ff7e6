//! The equivariant I-function of a [`GeometrySpec`].
//!
//! Column `j` with linear form `D_j = Σ_i l_i^j p_i + w_j` and charge
//! `c = ⟨d, l^j⟩` contributes the telescoped ratio
//! `∏_{m=-∞}^{0}(D_j + mħ) / ∏_{m=-∞}^{c}(D_j + mħ)`, i.e.
//! `∏_{m=c+1}^{0}(D_j + mħ)` for `c < 0` and `1/∏_{m=1}^{c}(D_j + mħ)` for `c > 0`.

use std::sync::Arc;

use num_traits::One;

use super::geometry::{Expansion, GeometrySpec};
use crate::error::{Error, Result};
use crate::exact::{expand_reciprocal_at_infinity, int, rat, CoeffRing, Rational, RingElem, Window};
use crate::series::{DegreeBound, QSeries};

/// The linear form `D_j` in `ring`.
fn column_form(spec: &GeometrySpec, ring: &Arc<CoeffRing>, j: usize) -> RingElem {
    let mut f = RingElem::zero(ring);
    for i in 0..spec.nrows() {
        let l = spec.charges[i][j];
        if l != 0 {
            f = &f + &RingElem::generator(ring, i, int(l));
        }
    }
    for (t, c) in spec.weights[j].iter().enumerate() {
        f = &f + &RingElem::lambda(ring, t, c.clone());
    }
    f
}

/// `1/(X + mħ)` as `Σ_k (-X)^k (mħ)^{-k-1}`, stopping when `X^k` vanishes or
/// leaves the ħ window.
fn reciprocal_at_hbar_infinity(x: &RingElem, m: i64) -> RingElem {
    let ring = x.ring();
    let w = ring.window();
    let neg = -x;
    let mut out = RingElem::zero(ring);
    let mut power = RingElem::one(ring);
    let mut k = 0i32;
    loop {
        let e = -k - 1;
        if e < w.hbar_min {
            return out.with_hbar_floor(w.hbar_min);
        }
        let term = &power * &RingElem::hbar(ring, e, rat(1, m).pow(k + 1));
        out = &out + &term;
        power = &power * &neg;
        if power.is_zero() && !power.is_truncated() {
            return out;
        }
        k += 1;
    }
}

/// Number of numerator factors, an upper bound on their λ- and ħ-degree.
fn numerator_count(spec: &GeometrySpec, d: &[u32]) -> i64 {
    (0..spec.ncols())
        .map(|j| {
            let c: i64 = (0..spec.nrows()).map(|i| d[i] as i64 * spec.charges[i][j]).sum();
            (-c).max(0)
        })
        .sum()
}

/// Coefficient of `q^d`.
pub fn ifunction_coefficient(spec: &GeometrySpec, ring: &Arc<CoeffRing>, d: &[u32]) -> Result<RingElem> {
    let w = ring.window();
    let extra = numerator_count(spec, d) as i32 + 1;
    let work = ring.with_window(Window::new(w.lambda_depth + extra as u32, w.hbar_min - extra, w.hbar_max + extra));
    let mut numer = RingElem::one(&work);
    let mut denoms: Vec<(usize, RingElem)> = Vec::new();
    for j in 0..spec.ncols() {
        let c: i64 = (0..spec.nrows()).map(|i| d[i] as i64 * spec.charges[i][j]).sum();
        let form = column_form(spec, &work, j);
        if c < 0 {
            for m in c + 1..=0 {
                let f = &form + &RingElem::hbar(&work, 1, int(m));
                if f.is_zero() {
                    continue;
                }
                numer = &numer * &f;
            }
        } else {
            for m in 1..=c {
                let f = &form + &RingElem::hbar(&work, 1, int(m));
                if f.is_zero() {
                    return Err(Error::ZeroDenominator { column: j + 1, degree: d.to_vec() });
                }
                denoms.push((j, f));
            }
        }
    }
    let mut coef = numer;
    for (j, f) in denoms {
        let inv = match spec.expansions[j] {
            Expansion::LambdaInfinity => expand_reciprocal_at_infinity(&f, work.window().lambda_depth)?,
            Expansion::HbarInfinity => {
                let m = f.coefficient(&crate::exact::Key { basis: 0, lambda: vec![0; work.nlambda()], hbar: 1 });
                let x = &f - &RingElem::hbar(&work, 1, m.clone());
                let m: i64 = m.to_integer().try_into().map_err(|_| Error::InvalidArgument("ħ shift too large".into()))?;
                reciprocal_at_hbar_infinity(&x, m)
            }
        };
        coef = &coef * &inv;
    }
    coef.rewindow(ring)
}

/// The I-function through `bound`, with prefactor `exp(Σ p_i log q_i / ħ)` in the log part.
pub fn ifunction(spec: &GeometrySpec, bound: &DegreeBound, window: Window) -> Result<QSeries<RingElem>> {
    spec.validate()?;
    let ring = spec.coefficient_ring(window)?;
    ifunction_in(spec, &ring, bound)
}

/// As [`ifunction`], in a given coefficient ring.
pub fn ifunction_in(spec: &GeometrySpec, ring: &Arc<CoeffRing>, bound: &DegreeBound) -> Result<QSeries<RingElem>> {
    if bound.nvars() != spec.nrows() {
        return Err(Error::VariableMismatch(format!("degree bound has {} variables, geometry has {} curves", bound.nvars(), spec.nrows())));
    }
    let mut s = QSeries::zero(bound.clone(), RingElem::zero(ring));
    for d in bound.exponents() {
        let c = ifunction_coefficient(spec, ring, &d)?;
        s.set(d, c);
    }
    let log_part = (0..spec.nrows()).map(|i| &RingElem::generator(ring, i, Rational::one()) * &RingElem::hbar(ring, -1, Rational::one())).collect();
    Ok(s.with_log_part(Some(log_part)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Key;
    use crate::givental::geometry::{x_k, Action};
    use crate::givental::operator::{annihilation_check, parse_operator};

    fn terms(e: &RingElem) -> Vec<(Key, Rational)> {
        e.terms().map(|(k, v)| (k.clone(), v.clone())).collect()
    }

    #[test]
    fn degree_zero_is_one() {
        let spec = x_k(1, Action::Generic).unwrap();
        let i = ifunction(&spec, &DegreeBound::single(2), Window::new(4, -8, 8)).unwrap();
        assert_eq!(terms(&i.coeff(&[0])), terms(&RingElem::one(i.zero_coeff().ring())));
    }

    #[test]
    fn x_minus_one_leading_term() {
        let spec = x_k(-1, Action::Generic).unwrap();
        let i = ifunction(&spec, &DegreeBound::single(1), Window::new(4, -8, 8)).unwrap();
        let ring = i.zero_coeff().ring().clone();
        let c = i.coeff(&[1]).hbar_coefficient(-2);
        let l1 = RingElem::lambda(&ring, 0, int(1));
        let l2 = RingElem::lambda(&ring, 1, int(1));
        let p = RingElem::generator(&ring, 0, int(1));
        let want = &(&l1 * &l2) - &(&p * &(&l1 + &l2));
        assert_eq!(terms(&c), terms(&want));
    }

    #[test]
    fn x_zero_first_order() {
        let spec = x_k(0, Action::Generic).unwrap();
        let i = ifunction(&spec, &DegreeBound::single(4), Window::new(6, -10, 10)).unwrap();
        let ring = i.zero_coeff().ring().clone();
        let f = [rat(1, 1), rat(3, 2), rat(10, 3), rat(35, 4)];
        for (d, fd) in f.iter().enumerate() {
            let c = i.coeff(&[d as u32 + 1]).hbar_coefficient(-1);
            let want = &RingElem::generator(&ring, 0, fd * int(2)) - &RingElem::lambda(&ring, 1, fd.clone());
            assert_eq!(terms(&c), terms(&want), "degree {}", d + 1);
        }
    }

    #[test]
    fn operators_annihilate() {
        let w = Window::new(8, -14, 14);
        let spec = x_k(-1, Action::Generic).unwrap();
        let i = ifunction(&spec, &DegreeBound::single(4), w).unwrap();
        let ring = i.zero_coeff().ring().clone();
        let op = parse_operator("t^2 - q*(t - l1)*(t - l2)", &ring, 1, true).unwrap();
        assert!(annihilation_check(&op, &i, 4).unwrap().annihilated);
        let wrong = parse_operator("t^2 - q*(t - l1)*(t + l2)", &ring, 1, true).unwrap();
        assert!(!annihilation_check(&wrong, &i, 4).unwrap().annihilated);

        let spec = x_k(0, Action::Antidiagonal).unwrap();
        let i = ifunction(&spec, &DegreeBound::single(4), w).unwrap();
        let ring = i.zero_coeff().ring().clone();
        let op = parse_operator("t^2 - q*(2t + l)*(2t + l + h)", &ring, 1, true).unwrap();
        assert!(annihilation_check(&op, &i, 4).unwrap().annihilated);
    }
}
