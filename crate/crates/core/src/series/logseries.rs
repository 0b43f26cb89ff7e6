//! Polynomials in `log q_i` with truncated-series coefficients.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::qseries::{Coefficient, DegreeBound, QSeries};
use crate::error::{Error, Result};
use crate::exact::Rational;

#[derive(Debug, Clone, PartialEq)]
pub struct LogQSeries<C> {
    bound: DegreeBound,
    zero: C,
    /// log-exponent vector → series coefficient
    parts: BTreeMap<Vec<u32>, QSeries<C>>,
}

impl<C: Coefficient> LogQSeries<C> {
    pub fn zero(bound: DegreeBound, zero: C) -> Self {
        LogQSeries { bound, zero, parts: BTreeMap::new() }
    }

    pub fn from_series(s: QSeries<C>) -> Self {
        let mut r = LogQSeries::zero(s.bound().clone(), s.zero_coeff().clone());
        let n = s.nvars();
        r.insert(vec![0; n], s);
        r
    }

    /// `c · log q_i`.
    pub fn log_variable(bound: DegreeBound, i: usize, c: C) -> Self {
        let n = bound.nvars();
        let mut r = LogQSeries::zero(bound.clone(), c.zero_like());
        let mut e = vec![0; n];
        e[i] = 1;
        r.insert(e, QSeries::constant(bound, c));
        r
    }

    fn insert(&mut self, e: Vec<u32>, s: QSeries<C>) {
        if s.is_zero() {
            self.parts.remove(&e);
        } else {
            self.parts.insert(e, s);
        }
    }

    pub fn bound(&self) -> &DegreeBound {
        &self.bound
    }

    pub fn nvars(&self) -> usize {
        self.bound.nvars()
    }

    pub fn parts(&self) -> impl Iterator<Item = (&Vec<u32>, &QSeries<C>)> {
        self.parts.iter()
    }

    /// Coefficient of `∏ (log q_i)^{e_i}`.
    pub fn part(&self, e: &[u32]) -> QSeries<C> {
        self.parts.get(e).cloned().unwrap_or_else(|| QSeries::zero(self.bound.clone(), self.zero.clone()))
    }

    /// The log-free part.
    pub fn series_part(&self) -> QSeries<C> {
        self.part(&vec![0; self.nvars()])
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        let bound = self.bound.meet(&o.bound)?;
        let mut r = LogQSeries::zero(bound, self.zero.clone());
        for (e, s) in self.parts.iter().chain(o.parts.iter()) {
            let cur = r.part(e);
            let sum = cur.add(s)?;
            r.insert(e.clone(), sum);
        }
        Ok(r)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut r = LogQSeries::zero(self.bound.clone(), self.zero.clone());
        for (e, s) in &self.parts {
            r.insert(e.clone(), s.scale(c));
        }
        r
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        let bound = self.bound.meet(&o.bound)?;
        let mut r = LogQSeries::zero(bound, self.zero.clone());
        for (a, x) in &self.parts {
            for (b, y) in &o.parts {
                let e: Vec<u32> = a.iter().zip(b).map(|(i, j)| i + j).collect();
                let cur = r.part(&e);
                let sum = cur.add(&x.mul(y)?)?;
                r.insert(e, sum);
            }
        }
        Ok(r)
    }

    pub fn mul_series(&self, s: &QSeries<C>) -> Result<Self> {
        self.mul(&LogQSeries::from_series(s.clone()))
    }

    /// `θ_i`, using `θ_i log q_i = 1`.
    pub fn theta(&self, i: usize) -> Self {
        let mut r = LogQSeries::zero(self.bound.clone(), self.zero.clone());
        for (e, s) in &self.parts {
            let t = s.theta(i);
            let cur = r.part(e);
            r.insert(e.clone(), cur.add(&t).expect("same bound"));
            if e[i] > 0 {
                let mut lower = e.clone();
                lower[i] -= 1;
                let cur = r.part(&lower);
                let d = s.scale(&Rational::from_integer(e[i].into()));
                r.insert(lower, cur.add(&d).expect("same bound"));
            }
        }
        r
    }

    /// Highest total power of logarithms present.
    pub fn log_degree(&self) -> u32 {
        self.parts.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }
}

impl LogQSeries<Rational> {
    /// `log q_i + g` for a series `g` with zero constant term.
    pub fn mirror_map(i: usize, g: QSeries<Rational>) -> Result<Self> {
        if !Zero::is_zero(&g.constant_term()) {
            return Err(Error::NotMirrorMapShape("series part has a constant term".into()));
        }
        let bound = g.bound().clone();
        LogQSeries::log_variable(bound, i, Rational::one()).add(&LogQSeries::from_series(g))
    }

    /// Splits `t_i = log q_i + g_i`, returning `g_i`.
    pub fn mirror_series(&self, i: usize) -> Result<QSeries<Rational>> {
        let n = self.nvars();
        let mut unit = vec![0; n];
        unit[i] = 1;
        for (e, s) in &self.parts {
            if *e == unit {
                if *s != QSeries::constant(self.bound.clone(), Rational::one()) {
                    return Err(Error::NotMirrorMapShape(format!("log q_{} coefficient is not 1", i + 1)));
                }
            } else if e.iter().any(|x| *x > 0) {
                return Err(Error::NotMirrorMapShape("unexpected logarithm".into()));
            }
        }
        if !self.parts.contains_key(&unit) {
            return Err(Error::NotMirrorMapShape(format!("missing log q_{}", i + 1)));
        }
        let g = self.series_part();
        if !Zero::is_zero(&g.constant_term()) {
            return Err(Error::NotMirrorMapShape("series part has a constant term".into()));
        }
        Ok(g)
    }
}

/// Inverts mirror maps `t_i = log q_i + g_i(q)`, returning `q_i(x)` with `x = e^t`.
///
/// Fixed point `q_i = x_i exp(-g_i(q(x)))`; each pass fixes one more degree.
pub fn series_reversion(t: &[LogQSeries<Rational>]) -> Result<Vec<QSeries<Rational>>> {
    let gs: Vec<QSeries<Rational>> = t.iter().enumerate().map(|(i, ti)| ti.mirror_series(i)).collect::<Result<_>>()?;
    let Some(first) = gs.first() else {
        return Ok(Vec::new());
    };
    let bound = first.bound().clone();
    if gs.len() != bound.nvars() {
        return Err(Error::NotMirrorMapShape(format!("{} maps for {} variables", gs.len(), bound.nvars())));
    }
    let n = gs.len();
    let xs: Vec<QSeries<Rational>> = (0..n).map(|i| QSeries::variable(bound.clone(), i)).collect();
    let mut q = xs.clone();
    for _ in 0..=bound.max_total() {
        let mut next = Vec::with_capacity(n);
        for i in 0..n {
            let gx = gs[i].compose(&q)?;
            next.push(xs[i].mul(&gx.neg().exp()?)?);
        }
        if next == q {
            break;
        }
        q = next;
    }
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    fn log1p(d: u32, c: i64) -> QSeries<Rational> {
        QSeries::from_coeffs(d, &[int(1), int(c)]).log().unwrap()
    }

    #[test]
    fn theta_of_log() {
        let b = DegreeBound::single(3);
        let l = LogQSeries::log_variable(b.clone(), 0, int(1));
        assert_eq!(l.theta(0), LogQSeries::from_series(QSeries::constant(b, int(1))));
    }

    #[test]
    fn theta_of_mirror_map() {
        let t = LogQSeries::mirror_map(0, log1p(3, 1).scale(&int(3))).unwrap();
        let th = t.theta(0);
        assert_eq!(th.log_degree(), 0);
        assert_eq!(th.series_part().coeff_list(), vec![int(1), int(3), int(-3), int(3)]);
    }

    #[test]
    fn reversion_log1p() {
        let t = LogQSeries::mirror_map(0, log1p(4, 1).scale(&int(3))).unwrap();
        let q = series_reversion(&[t]).unwrap();
        assert_eq!(q[0].coeff_list(), vec![int(0), int(1), int(-3), int(15), int(-91)]);
    }

    #[test]
    fn reversion_identity_and_shape() {
        let b = DegreeBound::single(3);
        let t = LogQSeries::log_variable(b.clone(), 0, int(1));
        assert_eq!(series_reversion(&[t]).unwrap()[0], QSeries::variable(b.clone(), 0));
        let bad = LogQSeries::log_variable(b, 0, int(2));
        assert!(matches!(series_reversion(&[bad]), Err(Error::NotMirrorMapShape(_))));
    }
}
