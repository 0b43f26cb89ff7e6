//! Genus-zero closed forms for the local curves `X_k`, `k ≥ 1`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::check::{compare_log_series, compare_series, SeriesCheck};
use crate::error::{Error, Result};
use crate::exact::rational::factorial;
use crate::exact::{int, Rational};
use crate::series::{series_reversion, DegreeBound, LogQSeries, QSeries, RationalFunctionQ};

/// Mirror map, Yukawa coupling and intersection number of `X_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct ClosedGenus0 {
    pub k: i64,
    /// `(-1)^{k+1}`.
    pub epsilon: i64,
    /// `q dt/dq = (1 + ε(k+1)²q)/(1 + εq)`.
    pub qdt: RationalFunctionQ,
    /// `-1/(k(k+2))`.
    pub triple: Rational,
}

pub fn conj1(k: i64) -> Result<ClosedGenus0> {
    if k < 1 {
        return Err(Error::InvalidArgument(format!("closed forms need k >= 1, got {k}")));
    }
    let epsilon = if k % 2 == 1 { 1 } else { -1 };
    let qdt = RationalFunctionQ::new(vec![int(1), int(epsilon * (k + 1) * (k + 1))], vec![int(1), int(epsilon)])?;
    Ok(ClosedGenus0 { k, epsilon, qdt, triple: triple_intersection(k)? })
}

/// `1/(k(-2-k))`.
pub fn triple_intersection(k: i64) -> Result<Rational> {
    let den = k * (-2 - k);
    if den == 0 {
        return Err(Error::InvalidArgument(format!("triple intersection undefined at k = {k}")));
    }
    Ok(Rational::new(BigInt::one(), den.into()))
}

impl ClosedGenus0 {
    /// `k(k+2)`.
    pub fn mirror_coefficient(&self) -> Rational {
        int(self.k * (self.k + 2))
    }

    /// `g(q) = k(k+2) log(1 + εq)`.
    pub fn mirror_series(&self, degree: u32) -> Result<QSeries<Rational>> {
        let one_plus = QSeries::from_coeffs(degree, &[int(1), int(self.epsilon)]);
        Ok(one_plus.log()?.scale(&self.mirror_coefficient()))
    }

    /// `t(q) = log q + g(q)`.
    pub fn mirror_map(&self, degree: u32) -> Result<LogQSeries<Rational>> {
        LogQSeries::mirror_map(0, self.mirror_series(degree)?)
    }

    /// `q(x)` with `x = e^t`.
    pub fn inverse_mirror_map(&self, degree: u32) -> Result<QSeries<Rational>> {
        Ok(series_reversion(&[self.mirror_map(degree)?])?.remove(0))
    }

    /// `Y_qqq = triple · qdt²`.
    pub fn yukawa_qqq(&self) -> RationalFunctionQ {
        RationalFunctionQ::polynomial(vec![self.triple.clone()]).mul(&self.qdt.pow(2))
    }

    /// `Y_ttt = qdt⁻³ Y_qqq` as a series in `x`.
    pub fn yukawa_ttt(&self, degree: u32) -> Result<QSeries<Rational>> {
        let y = self.yukawa_qqq().mul(&self.qdt.pow(3).recip()?);
        y.to_series(degree).compose(&[self.inverse_mirror_map(degree)?])
    }

    /// `x(q) = q e^{g(q)}`.
    pub fn x_of_q(&self, degree: u32) -> Result<QSeries<Rational>> {
        let bound = DegreeBound::single(degree);
        QSeries::variable(bound, 0).mul(&self.mirror_series(degree)?.exp()?)
    }
}

/// Coefficient of `e^{dt}` in the instanton part of `𝓕_k`:
/// `-(-1)^{kd}((k+1)²d - 1)! / (d! d² (((k+1)² - 1)d)!)`.
pub fn amodel_coefficient(k: i64, d: u32) -> Rational {
    let s = ((k + 1) * (k + 1)) as u64;
    let d64 = d as u64;
    let num = factorial(s * d64 - 1);
    let den = factorial(d64) * BigInt::from(d64 * d64) * factorial((s - 1) * d64);
    let sign = if (k * d as i64).rem_euclid(2) == 0 { -1 } else { 1 };
    Rational::new(num * sign, den)
}

/// `𝓕_k = classical·t³ + Σ_d a_d x^d`.
#[derive(Debug, Clone, PartialEq)]
pub struct Prepotential {
    /// Coefficient of `t³`, `triple/3!`.
    pub classical: Rational,
    pub instanton: QSeries<Rational>,
}

impl Prepotential {
    /// `∂^n/∂t^n` of the instanton part: `Σ d^n a_d x^d`.
    pub fn instanton_derivative(&self, n: u32) -> QSeries<Rational> {
        (0..n).fold(self.instanton.clone(), |s, _| s.theta(0))
    }

    /// The triple intersection, `3!·classical`.
    pub fn triple(&self) -> Rational {
        &self.classical * int(6)
    }
}

pub fn amodel_prepotential(k: i64, degree: u32) -> Result<Prepotential> {
    let g = conj1(k)?;
    let mut coeffs = vec![Rational::zero()];
    coeffs.extend((1..=degree).map(|d| amodel_coefficient(k, d)));
    Ok(Prepotential { classical: &g.triple / int(6), instanton: QSeries::from_coeffs(degree, &coeffs) })
}

/// `∂²𝓕/∂t² = triple · log q(t)`. The `triple·t` parts agree by
/// construction; the check compares `Σ d² a_d x^d` with `-triple · g(q(x))`.
pub fn ftt_identity_check(k: i64, degree: u32) -> Result<SeriesCheck> {
    let g0 = conj1(k)?;
    let f = amodel_prepotential(k, degree)?;
    let left = f.instanton_derivative(2);
    let right = g0.mirror_series(degree)?.compose(&[g0.inverse_mirror_map(degree)?])?.scale(&-g0.triple.clone());
    Ok(compare_series(&format!("F_tt k={k}"), &left, &right, degree))
}

/// `∂³𝓕/∂t³ = Y_ttt`.
pub fn yukawa_check(k: i64, degree: u32) -> Result<SeriesCheck> {
    let g0 = conj1(k)?;
    let f = amodel_prepotential(k, degree)?;
    let left = f.instanton_derivative(3).add(&QSeries::constant(DegreeBound::single(degree), f.triple()))?;
    let right = g0.yukawa_ttt(degree)?;
    Ok(compare_series(&format!("Yukawa k={k}"), &left, &right, degree))
}

/// `θ² ∘ qdt⁻¹ ∘ θ`.
#[derive(Debug, Clone, PartialEq)]
pub struct PfOperator {
    pub qdt: RationalFunctionQ,
}

pub fn pf_operator(k: i64) -> Result<PfOperator> {
    Ok(PfOperator { qdt: conj1(k)?.qdt })
}

impl PfOperator {
    pub fn apply(&self, f: &LogQSeries<Rational>) -> Result<LogQSeries<Rational>> {
        let degree = f.bound().max_total();
        let inv = self.qdt.recip()?.to_series(degree);
        Ok(f.theta(0).mul_series(&inv)?.theta(0).theta(0))
    }
}

fn render_poly(p: &[Rational]) -> String {
    let mut out = String::new();
    for (i, c) in p.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let neg = c < &Rational::zero();
        let a = if neg { -c.clone() } else { c.clone() };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono = match i {
            0 => String::new(),
            1 => "q".to_string(),
            _ => format!("q^{i}"),
        };
        if a.is_one() && i > 0 {
            out.push_str(&mono);
        } else {
            out.push_str(&a.to_string());
            out.push_str(&mono);
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

impl fmt::Display for PfOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "θ^2 (({})/({}))^-1 θ", render_poly(self.qdt.numerator()), render_poly(self.qdt.denominator()))
    }
}

/// The periods `1`, `t(q)` and `F_t(q) = triple/2·t(q)² + Σ d a_d x(q)^d`.
pub fn periods(k: i64, degree: u32) -> Result<[LogQSeries<Rational>; 3]> {
    let g0 = conj1(k)?;
    let f = amodel_prepotential(k, degree)?;
    let bound = DegreeBound::single(degree);
    let one = LogQSeries::from_series(QSeries::constant(bound, Rational::one()));
    let t = g0.mirror_map(degree)?;
    let inst = f.instanton_derivative(1).compose(&[g0.x_of_q(degree)?])?;
    let ft = t.mul(&t)?.scale(&(&g0.triple / int(2))).add(&LogQSeries::from_series(inst))?;
    Ok([one, t, ft])
}

/// Applies [`pf_operator`] to each period and checks the result vanishes.
pub fn pf_check(k: i64, degree: u32) -> Result<Vec<SeriesCheck>> {
    let op = pf_operator(k)?;
    let names = ["1", "t", "F_t"];
    let zero = LogQSeries::zero(DegreeBound::single(degree), Rational::zero());
    periods(k, degree)?.iter().zip(names).map(|(p, name)| Ok(compare_log_series(&format!("PF k={k} on {name}"), &op.apply(p)?, &zero, degree))).collect()
}
