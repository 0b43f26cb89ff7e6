use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{Rational, RingElem};

/// Arithmetic needed of a series coefficient.
pub trait Coefficient: Clone + PartialEq + fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn scale(&self, r: &Rational) -> Self;
    /// Multiplicative inverse when it exists in the coefficient domain.
    fn inverse(&self) -> Option<Self>;
    fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }
}

impl Coefficient for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn scale(&self, r: &Rational) -> Self {
        self * r
    }
    fn inverse(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }
}

impl Coefficient for RingElem {
    fn zero_like(&self) -> Self {
        RingElem::zero(self.ring())
    }
    fn one_like(&self) -> Self {
        RingElem::one(self.ring())
    }
    /// A truncated zero still carries unknown terms, so it is kept.
    fn is_zero(&self) -> bool {
        RingElem::is_zero(self) && !self.is_truncated()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn scale(&self, r: &Rational) -> Self {
        RingElem::scale(self, r)
    }
    fn inverse(&self) -> Option<Self> {
        let c = self.as_rational()?;
        (!Zero::is_zero(&c)).then(|| RingElem::constant(self.ring(), c.recip()))
    }
}

/// Degree truncation of a series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DegreeBound {
    /// Total degree at most `degree` in `nvars` variables.
    Total { nvars: usize, degree: u32 },
    /// Per-variable degree at most `b[i]`.
    Box(Vec<u32>),
}

impl DegreeBound {
    pub fn single(degree: u32) -> Self {
        DegreeBound::Total { nvars: 1, degree }
    }

    pub fn nvars(&self) -> usize {
        match self {
            DegreeBound::Total { nvars, .. } => *nvars,
            DegreeBound::Box(b) => b.len(),
        }
    }

    pub fn contains(&self, e: &[u32]) -> bool {
        match self {
            DegreeBound::Total { degree, .. } => e.iter().sum::<u32>() <= *degree,
            DegreeBound::Box(b) => e.iter().zip(b).all(|(x, m)| x <= m),
        }
    }

    /// Largest total degree inside the bound.
    pub fn max_total(&self) -> u32 {
        match self {
            DegreeBound::Total { degree, .. } => *degree,
            DegreeBound::Box(b) => b.iter().sum(),
        }
    }

    /// All exponent vectors inside the bound, in graded order.
    pub fn exponents(&self) -> Vec<Vec<u32>> {
        let n = self.nvars();
        let caps: Vec<u32> = match self {
            DegreeBound::Total { degree, .. } => vec![*degree; n],
            DegreeBound::Box(b) => b.clone(),
        };
        let mut out = vec![vec![]];
        for c in caps {
            out = out
                .into_iter()
                .flat_map(|v: Vec<u32>| {
                    (0..=c).map(move |k| {
                        let mut w = v.clone();
                        w.push(k);
                        w
                    })
                })
                .collect();
        }
        out.retain(|e| self.contains(e));
        out.sort_by(|a, b| (a.iter().sum::<u32>(), a).cmp(&(b.iter().sum::<u32>(), b)));
        out
    }

    /// The tighter of two bounds on the same variables.
    pub fn meet(&self, o: &DegreeBound) -> Result<DegreeBound> {
        if self.nvars() != o.nvars() {
            return Err(Error::VariableMismatch(format!("{} vs {} variables", self.nvars(), o.nvars())));
        }
        Ok(match (self, o) {
            (DegreeBound::Total { nvars, degree: a }, DegreeBound::Total { degree: b, .. }) => DegreeBound::Total { nvars: *nvars, degree: (*a).min(*b) },
            (DegreeBound::Box(a), DegreeBound::Box(b)) => DegreeBound::Box(a.iter().zip(b).map(|(x, y)| *x.min(y)).collect()),
            (DegreeBound::Total { degree, .. }, DegreeBound::Box(b)) | (DegreeBound::Box(b), DegreeBound::Total { degree, .. }) => {
                if b.iter().sum::<u32>() <= *degree {
                    DegreeBound::Box(b.clone())
                } else if b.iter().all(|x| x >= degree) {
                    DegreeBound::Total { nvars: b.len(), degree: *degree }
                } else {
                    return Err(Error::VariableMismatch("cannot intersect a total-degree bound with a box".into()));
                }
            }
        })
    }
}

/// Truncated power series in `q_1..q_r`, optionally carrying the symbolic
/// prefactor `exp(Σ_i c_i log q_i)` in `log_part`.
#[derive(Debug, Clone, PartialEq)]
pub struct QSeries<C> {
    bound: DegreeBound,
    zero: C,
    coeffs: BTreeMap<Vec<u32>, C>,
    log_part: Option<Vec<C>>,
}

fn add_exp(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

impl<C: Coefficient> QSeries<C> {
    pub fn zero(bound: DegreeBound, zero: C) -> Self {
        QSeries { bound, zero, coeffs: BTreeMap::new(), log_part: None }
    }

    pub fn constant(bound: DegreeBound, c: C) -> Self {
        let zero = c.zero_like();
        let mut s = QSeries::zero(bound, zero);
        let n = s.nvars();
        s.set(vec![0; n], c);
        s
    }

    /// The monomial `c · q^e`.
    pub fn monomial(bound: DegreeBound, e: Vec<u32>, c: C) -> Self {
        let mut s = QSeries::zero(bound, c.zero_like());
        s.set(e, c);
        s
    }

    pub fn from_terms(bound: DegreeBound, zero: C, terms: impl IntoIterator<Item = (Vec<u32>, C)>) -> Self {
        let mut s = QSeries::zero(bound, zero);
        for (e, c) in terms {
            s.add_to(e, &c);
        }
        s
    }

    pub fn bound(&self) -> &DegreeBound {
        &self.bound
    }

    pub fn nvars(&self) -> usize {
        self.bound.nvars()
    }

    pub fn zero_coeff(&self) -> &C {
        &self.zero
    }

    pub fn log_part(&self) -> Option<&[C]> {
        self.log_part.as_deref()
    }

    pub fn with_log_part(mut self, log_part: Option<Vec<C>>) -> Self {
        self.log_part = log_part;
        self
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &C)> {
        self.coeffs.iter()
    }

    pub fn coeff(&self, e: &[u32]) -> C {
        self.coeffs.get(e).cloned().unwrap_or_else(|| self.zero.clone())
    }

    pub fn constant_term(&self) -> C {
        self.coeff(&vec![0; self.nvars()])
    }

    /// Sets a coefficient; exponents outside the bound are ignored.
    pub fn set(&mut self, e: Vec<u32>, c: C) {
        if !self.bound.contains(&e) {
            return;
        }
        if c.is_zero() {
            self.coeffs.remove(&e);
        } else {
            self.coeffs.insert(e, c);
        }
    }

    pub fn add_to(&mut self, e: Vec<u32>, c: &C) {
        if !self.bound.contains(&e) || c.is_zero() {
            return;
        }
        let v = match self.coeffs.get(&e) {
            Some(old) => old.add(c),
            None => c.clone(),
        };
        self.set(e, v);
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn check_vars(&self, o: &Self) -> Result<DegreeBound> {
        self.bound.meet(&o.bound)
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        let bound = self.check_vars(o)?;
        let mut r = QSeries::zero(bound, self.zero.clone());
        r.log_part = self.log_part.clone();
        for (e, c) in self.coeffs.iter().chain(o.coeffs.iter()) {
            r.add_to(e.clone(), c);
        }
        Ok(r)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.map(|c| c.neg())
    }

    pub fn scale(&self, r: &Rational) -> Self {
        self.map(|c| c.scale(r))
    }

    /// Multiplies every coefficient by `c` on the left.
    pub fn mul_coeff(&self, c: &C) -> Self {
        self.map(|x| c.mul(x))
    }

    pub fn map(&self, f: impl Fn(&C) -> C) -> Self {
        let mut r = QSeries::zero(self.bound.clone(), self.zero.clone());
        r.log_part = self.log_part.clone();
        for (e, c) in &self.coeffs {
            r.set(e.clone(), f(c));
        }
        r
    }

    /// Applies `f` to every coefficient, changing the coefficient type.
    pub fn map_into<D: Coefficient>(&self, zero: D, f: impl Fn(&C) -> D) -> QSeries<D> {
        let mut r = QSeries::zero(self.bound.clone(), zero);
        for (e, c) in &self.coeffs {
            r.set(e.clone(), f(c));
        }
        r
    }

    /// Truncated product; the log part of `self` is kept.
    pub fn mul(&self, o: &Self) -> Result<Self> {
        let bound = self.check_vars(o)?;
        let mut acc: BTreeMap<Vec<u32>, C> = BTreeMap::new();
        for (a, x) in &self.coeffs {
            for (b, y) in &o.coeffs {
                let e = add_exp(a, b);
                if !bound.contains(&e) {
                    continue;
                }
                let p = x.mul(y);
                match acc.get_mut(&e) {
                    Some(v) => *v = v.add(&p),
                    None => {
                        acc.insert(e, p);
                    }
                }
            }
        }
        acc.retain(|_, v| !v.is_zero());
        Ok(QSeries { bound, zero: self.zero.clone(), coeffs: acc, log_part: self.log_part.clone() })
    }

    pub fn pow(&self, k: u32) -> Result<Self> {
        let mut r = QSeries::constant(self.bound.clone(), self.zero.one_like());
        for _ in 0..k {
            r = r.mul(self)?;
        }
        Ok(r)
    }

    /// Multiplies by `q^e`, dropping what leaves the bound.
    pub fn shift(&self, e: &[u32]) -> Self {
        let mut r = QSeries::zero(self.bound.clone(), self.zero.clone());
        r.log_part = self.log_part.clone();
        for (d, c) in &self.coeffs {
            r.set(add_exp(d, e), c.clone());
        }
        r
    }

    pub fn truncate(&self, bound: &DegreeBound) -> Result<Self> {
        let bound = self.bound.meet(bound)?;
        let mut r = QSeries::zero(bound, self.zero.clone());
        r.log_part = self.log_part.clone();
        for (e, c) in &self.coeffs {
            r.set(e.clone(), c.clone());
        }
        Ok(r)
    }

    /// Inverse of a series whose constant term is invertible.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = self.constant_term();
        let inv = c0.inverse().ok_or(Error::ConstantTerm { expected: "invertible" })?;
        let one = self.zero.one_like();
        // s = c0 (1 + y)
        let mut y = self.mul_coeff(&inv);
        y.log_part = None;
        let n = self.nvars();
        y.set(vec![0; n], self.zero.clone());
        let mut sum = QSeries::constant(self.bound.clone(), one.clone());
        let mut term = sum.clone();
        let neg_y = y.neg();
        for _ in 0..self.bound.max_total() {
            term = term.mul(&neg_y)?;
            if term.is_zero() {
                break;
            }
            sum = sum.add(&term)?;
        }
        Ok(sum.mul_coeff(&inv))
    }

    /// `log(s)` for constant term one.
    pub fn log(&self) -> Result<Self> {
        let one = self.zero.one_like();
        if self.constant_term() != one {
            return Err(Error::ConstantTerm { expected: "1" });
        }
        let n = self.nvars();
        let mut y = self.clone();
        y.log_part = None;
        y.set(vec![0; n], self.zero.clone());
        let mut sum = QSeries::zero(self.bound.clone(), self.zero.clone());
        let mut term = QSeries::constant(self.bound.clone(), one);
        for k in 1..=self.bound.max_total() {
            term = term.mul(&y)?;
            if term.is_zero() {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            sum = sum.add(&term.scale(&Rational::new(sign.into(), (k as i64).into())))?;
        }
        Ok(sum)
    }

    /// `exp(s)` for constant term zero.
    pub fn exp(&self) -> Result<Self> {
        if !self.constant_term().is_zero() {
            return Err(Error::ConstantTerm { expected: "0" });
        }
        let one = self.zero.one_like();
        let mut y = self.clone();
        y.log_part = None;
        let mut sum = QSeries::constant(self.bound.clone(), one.clone());
        let mut term = sum.clone();
        for k in 1..=self.bound.max_total() {
            term = term.mul(&y)?.scale(&Rational::new(1.into(), (k as i64).into()));
            if term.is_zero() {
                break;
            }
            sum = sum.add(&term)?;
        }
        Ok(sum)
    }

    /// `θ_i = q_i d/dq_i`, with the product rule on the log part.
    pub fn theta(&self, i: usize) -> Self {
        let mut r = QSeries::zero(self.bound.clone(), self.zero.clone());
        r.log_part = self.log_part.clone();
        for (e, c) in &self.coeffs {
            if e[i] > 0 {
                r.set(e.clone(), c.scale(&Rational::from_integer(e[i].into())));
            }
        }
        if let Some(lp) = &self.log_part {
            let extra = self.mul_coeff(&lp[i]);
            for (e, c) in &extra.coeffs {
                r.add_to(e.clone(), c);
            }
        }
        r
    }

    /// Substitutes `q_i = subs[i](x)`, where each `subs[i]` has zero constant term.
    /// The log part must be handled by the caller and is rejected here.
    pub fn compose(&self, subs: &[QSeries<Rational>]) -> Result<Self> {
        if self.log_part.is_some() {
            return Err(Error::InvalidArgument("compose on a series with a log prefactor".into()));
        }
        if subs.len() != self.nvars() {
            return Err(Error::VariableMismatch(format!("{} substitutions for {} variables", subs.len(), self.nvars())));
        }
        for s in subs {
            if !Zero::is_zero(&s.constant_term()) {
                return Err(Error::ConstantTerm { expected: "0 in substituted series" });
            }
        }
        let n = self.nvars();
        let mut powers: Vec<Vec<QSeries<Rational>>> = Vec::with_capacity(n);
        let bound = self.bound.clone();
        for (i, s) in subs.iter().enumerate() {
            let s = s.truncate(&bound)?;
            let top = self.coeffs.keys().map(|e| e[i]).max().unwrap_or(0);
            let mut list = vec![QSeries::constant(s.bound.clone(), Rational::one())];
            for k in 1..=top as usize {
                let next = list[k - 1].mul(&s)?;
                list.push(next);
            }
            powers.push(list);
        }
        let mut r = QSeries::zero(bound.clone(), self.zero.clone());
        for (e, c) in &self.coeffs {
            let mut m = QSeries::constant(bound.clone(), Rational::one());
            for i in 0..n {
                if e[i] > 0 {
                    m = m.mul(&powers[i][e[i] as usize])?;
                }
            }
            for (d, v) in &m.coeffs {
                r.add_to(d.clone(), &c.scale(v));
            }
        }
        Ok(r)
    }
}

impl QSeries<Rational> {
    /// Series with rational coefficients from `(exponent, value)` pairs.
    pub fn rational(bound: DegreeBound, terms: impl IntoIterator<Item = (Vec<u32>, Rational)>) -> Self {
        QSeries::from_terms(bound, Rational::zero(), terms)
    }

    /// Single-variable series from a coefficient list starting at `q^0`.
    pub fn from_coeffs(degree: u32, coeffs: &[Rational]) -> Self {
        QSeries::rational(DegreeBound::single(degree), coeffs.iter().enumerate().map(|(i, c)| (vec![i as u32], c.clone())))
    }

    /// Single-variable coefficient list `[c_0, …, c_D]`.
    pub fn coeff_list(&self) -> Vec<Rational> {
        (0..=self.bound.max_total()).map(|d| self.coeff(&[d])).collect()
    }

    /// The variable `q_i`.
    pub fn variable(bound: DegreeBound, i: usize) -> Self {
        let mut e = vec![0; bound.nvars()];
        e[i] = 1;
        QSeries::monomial(bound, e, Rational::one())
    }
}

pub fn series_mul<C: Coefficient>(a: &QSeries<C>, b: &QSeries<C>) -> Result<QSeries<C>> {
    a.mul(b)
}

pub fn series_invert<C: Coefficient>(a: &QSeries<C>) -> Result<QSeries<C>> {
    a.inverse()
}

pub fn series_log<C: Coefficient>(a: &QSeries<C>) -> Result<QSeries<C>> {
    a.log()
}

pub fn series_exp<C: Coefficient>(a: &QSeries<C>) -> Result<QSeries<C>> {
    a.exp()
}

pub fn theta_apply<C: Coefficient>(a: &QSeries<C>, i: usize) -> QSeries<C> {
    a.theta(i)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    fn s(d: u32, c: &[i64]) -> QSeries<Rational> {
        QSeries::from_coeffs(d, &c.iter().map(|x| int(*x)).collect::<Vec<_>>())
    }

    #[test]
    fn products() {
        assert_eq!(s(2, &[1, 1]).mul(&s(2, &[1, -1])).unwrap(), s(2, &[1, 0, -1]));
        let inv = s(5, &[1, 1]).inverse().unwrap();
        assert_eq!(s(5, &[1, 1]).mul(&inv).unwrap(), s(5, &[1]));
        let alt = s(3, &[1, -1, 1, -1]);
        assert_eq!(s(3, &[1, 4]).mul(&alt).unwrap(), s(3, &[1, 3, -3, 3]));
        let two = QSeries::<Rational>::zero(DegreeBound::Box(vec![1, 1]), int(0));
        assert!(matches!(s(2, &[1]).mul(&two), Err(Error::VariableMismatch(_))));
    }

    #[test]
    fn log_exp() {
        let l = s(3, &[1, 1]).log().unwrap();
        assert_eq!(l.coeff_list(), vec![int(0), int(1), rat(-1, 2), rat(1, 3)]);
        assert_eq!(l.exp().unwrap(), s(3, &[1, 1]));
        let a = s(2, &[1, 4]).log().unwrap();
        let b = s(2, &[1, 1]).log().unwrap();
        assert_eq!(a.sub(&b).unwrap().coeff_list(), vec![int(0), int(3), rat(-15, 2)]);
        assert!(matches!(s(2, &[2, 1]).log(), Err(Error::ConstantTerm { .. })));
        assert!(matches!(s(2, &[1, 1]).exp(), Err(Error::ConstantTerm { .. })));
    }

    #[test]
    fn theta_monomial() {
        assert_eq!(s(3, &[0, 0, 1]).theta(0), s(3, &[0, 0, 2]));
    }

    #[test]
    fn box_exponents() {
        let b = DegreeBound::Box(vec![1, 2]);
        assert_eq!(b.exponents().len(), 6);
        assert_eq!(b.exponents()[0], vec![0, 0]);
        assert_eq!(DegreeBound::Total { nvars: 2, degree: 2 }.exponents().len(), 6);
    }

    #[test]
    fn compose_substitutes() {
        let f = s(3, &[0, 1, 1]);
        let q = s(3, &[0, 1, -1]);
        let g = f.compose(&[q]).unwrap();
        assert_eq!(g.coeff_list(), vec![int(0), int(1), int(0), int(-2)]);
    }
}
