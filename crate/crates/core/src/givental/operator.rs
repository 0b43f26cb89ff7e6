//! Differential operators in `θ_i = q_i d/dq_i`, normal ordered with every
//! `q`-power to the left of every `θ`-power.
//!
//! In the ħ-weighted convention each `θ_i` stands for `ħ q_i d/dq_i`, so that
//! `θ_i q^b = q^b (θ_i + b_i ħ)`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::rational::{binomial, parse_rational};
use crate::exact::{int, CoeffRing, Rational, RingElem};
use crate::series::QSeries;

/// `(q-exponent, θ-exponent)` of a normal-ordered monomial.
pub type OpKey = (Vec<u32>, Vec<u32>);

#[derive(Clone, PartialEq)]
pub struct ThetaOperator {
    ring: Arc<CoeffRing>,
    nvars: usize,
    hbar_weighted: bool,
    terms: BTreeMap<OpKey, RingElem>,
}

impl fmt::Debug for ThetaOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ThetaOperator({self})")
    }
}

impl ThetaOperator {
    pub fn zero(ring: &Arc<CoeffRing>, nvars: usize, hbar_weighted: bool) -> Self {
        ThetaOperator { ring: ring.clone(), nvars, hbar_weighted, terms: BTreeMap::new() }
    }

    /// `c · q^b θ^a`.
    pub fn term(ring: &Arc<CoeffRing>, hbar_weighted: bool, q: Vec<u32>, theta: Vec<u32>, c: RingElem) -> Self {
        let mut op = ThetaOperator::zero(ring, q.len(), hbar_weighted);
        op.add_term((q, theta), c);
        op
    }

    pub fn scalar(ring: &Arc<CoeffRing>, nvars: usize, hbar_weighted: bool, c: RingElem) -> Self {
        ThetaOperator::term(ring, hbar_weighted, vec![0; nvars], vec![0; nvars], c)
    }

    pub fn identity(ring: &Arc<CoeffRing>, nvars: usize, hbar_weighted: bool) -> Self {
        ThetaOperator::scalar(ring, nvars, hbar_weighted, RingElem::one(ring))
    }

    pub fn theta(ring: &Arc<CoeffRing>, nvars: usize, hbar_weighted: bool, i: usize) -> Self {
        let mut a = vec![0; nvars];
        a[i] = 1;
        ThetaOperator::term(ring, hbar_weighted, vec![0; nvars], a, RingElem::one(ring))
    }

    pub fn q(ring: &Arc<CoeffRing>, nvars: usize, hbar_weighted: bool, i: usize) -> Self {
        let mut b = vec![0; nvars];
        b[i] = 1;
        ThetaOperator::term(ring, hbar_weighted, b, vec![0; nvars], RingElem::one(ring))
    }

    fn add_term(&mut self, key: OpKey, c: RingElem) {
        let v = match self.terms.remove(&key) {
            Some(old) => &old + &c,
            None => c,
        };
        if !RingElem::is_zero(&v) {
            self.terms.insert(key, v);
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn ring(&self) -> &Arc<CoeffRing> {
        &self.ring
    }

    pub fn is_hbar_weighted(&self) -> bool {
        self.hbar_weighted
    }

    pub fn terms(&self) -> impl Iterator<Item = (&OpKey, &RingElem)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.nvars != o.nvars || self.hbar_weighted != o.hbar_weighted {
            return Err(Error::VariableMismatch("operators on different variables or θ conventions".into()));
        }
        if !self.ring.compatible(&o.ring) {
            return Err(Error::RingMismatch);
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let mut r = self.clone();
        for (k, c) in &o.terms {
            r.add_term(k.clone(), c.clone());
        }
        Ok(r)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut r = ThetaOperator::zero(&self.ring, self.nvars, self.hbar_weighted);
        for (k, v) in &self.terms {
            r.add_term(k.clone(), v.scale(c));
        }
        r
    }

    pub fn mul_coeff(&self, c: &RingElem) -> Self {
        let mut r = ThetaOperator::zero(&self.ring, self.nvars, self.hbar_weighted);
        for (k, v) in &self.terms {
            r.add_term(k.clone(), c * v);
        }
        r
    }

    /// `(θ_i + s)^a` expanded as `Σ_k C(a,k) s^{a-k} θ_i^k`, where `s = b·ħ` or `b`.
    fn shifted_power(&self, a: u32, b: u32) -> Vec<(u32, RingElem)> {
        let s = if self.hbar_weighted { RingElem::hbar(&self.ring, 1, int(b as i64)) } else { RingElem::constant(&self.ring, int(b as i64)) };
        (0..=a).map(|k| (k, s.pow(a - k).scale(&Rational::from_integer(binomial(a as u64, k as u64))))).collect()
    }

    /// Normal-ordered product `self ∘ o`.
    pub fn compose(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let mut r = ThetaOperator::zero(&self.ring, self.nvars, self.hbar_weighted);
        for ((b1, a1), c1) in &self.terms {
            for ((b2, a2), c2) in &o.terms {
                // θ^{a1} q^{b2} = q^{b2} ∏_i (θ_i + b2_i w)^{a1_i}
                let mut parts: Vec<(Vec<u32>, RingElem)> = vec![(a2.clone(), c1 * c2)];
                for i in 0..self.nvars {
                    let expansion = self.shifted_power(a1[i], b2[i]);
                    let mut next = Vec::new();
                    for (theta, c) in &parts {
                        for (k, s) in &expansion {
                            if RingElem::is_zero(s) {
                                continue;
                            }
                            let mut t = theta.clone();
                            t[i] += k;
                            next.push((t, c * s));
                        }
                    }
                    parts = next;
                }
                let q: Vec<u32> = b1.iter().zip(b2).map(|(x, y)| x + y).collect();
                for (theta, c) in parts {
                    r.add_term((q.clone(), theta), c);
                }
            }
        }
        Ok(r)
    }

    pub fn pow(&self, k: u32) -> Result<Self> {
        let mut r = ThetaOperator::identity(&self.ring, self.nvars, self.hbar_weighted);
        for _ in 0..k {
            r = r.compose(self)?;
        }
        Ok(r)
    }

    /// Applies the operator to a series, honouring its log prefactor.
    pub fn apply(&self, s: &QSeries<RingElem>) -> Result<QSeries<RingElem>> {
        if s.nvars() != self.nvars {
            return Err(Error::VariableMismatch(format!("operator in {} variables applied to a series in {}", self.nvars, s.nvars())));
        }
        if !s.zero_coeff().ring().compatible(&self.ring) {
            return Err(Error::RingMismatch);
        }
        let hbar = RingElem::hbar(&self.ring, 1, Rational::one());
        let mut cache: BTreeMap<Vec<u32>, QSeries<RingElem>> = BTreeMap::new();
        cache.insert(vec![0; self.nvars], s.clone());
        let mut out = QSeries::zero(s.bound().clone(), s.zero_coeff().clone()).with_log_part(s.log_part().map(<[RingElem]>::to_vec));
        for ((b, a), c) in &self.terms {
            let applied = theta_power(&mut cache, a, self.hbar_weighted.then_some(&hbar));
            out = out.add(&applied.mul_coeff(c).shift(b))?;
        }
        Ok(out)
    }
}

fn theta_power(cache: &mut BTreeMap<Vec<u32>, QSeries<RingElem>>, a: &[u32], hbar: Option<&RingElem>) -> QSeries<RingElem> {
    if let Some(s) = cache.get(a) {
        return s.clone();
    }
    let i = a.iter().position(|x| *x > 0).expect("nonzero exponent");
    let mut lower = a.to_vec();
    lower[i] -= 1;
    let base = theta_power(cache, &lower, hbar);
    let mut t = base.theta(i);
    if let Some(h) = hbar {
        t = t.mul_coeff(h);
    }
    cache.insert(a.to_vec(), t.clone());
    t
}

impl fmt::Display for ThetaOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for ((b, a), c) in &self.terms {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for (i, e) in b.iter().enumerate() {
                if *e > 0 {
                    write!(f, "*{}", power(&var_name("q", i, self.nvars), *e))?;
                }
            }
            for (i, e) in a.iter().enumerate() {
                if *e > 0 {
                    write!(f, "*{}", power(&var_name("t", i, self.nvars), *e))?;
                }
            }
        }
        Ok(())
    }
}

fn var_name(prefix: &str, i: usize, n: usize) -> String {
    if n == 1 {
        prefix.to_string()
    } else {
        format!("{prefix}{}", i + 1)
    }
}

fn power(name: &str, e: u32) -> String {
    if e == 1 {
        name.to_string()
    } else {
        format!("{name}^{e}")
    }
}

/// Outcome of applying an operator to a series expected to be annihilated.
#[derive(Debug, Clone, PartialEq)]
pub struct Annihilation {
    pub annihilated: bool,
    /// Highest degree checked.
    pub degree: u32,
    /// First degree with a nonzero residual, and the residual there.
    pub first_residual: Option<(Vec<u32>, String)>,
}

/// Applies `op` to `s` and inspects the result through total degree `degree`.
/// Terms outside the exact region of the coefficients are not compared.
pub fn annihilation_check(op: &ThetaOperator, s: &QSeries<RingElem>, degree: u32) -> Result<Annihilation> {
    let r = op.apply(s)?;
    let first_residual = r
        .terms()
        .filter(|(e, c)| e.iter().sum::<u32>() <= degree && !RingElem::is_zero(c))
        .min_by_key(|(e, _)| (e.iter().sum::<u32>(), (*e).clone()))
        .map(|(e, c)| (e.clone(), c.to_string()));
    Ok(Annihilation { annihilated: first_residual.is_none(), degree, first_residual })
}

pub fn operator_apply(op: &ThetaOperator, s: &QSeries<RingElem>) -> Result<QSeries<RingElem>> {
    op.apply(s)
}

pub fn operator_compose(a: &ThetaOperator, b: &ThetaOperator) -> Result<ThetaOperator> {
    a.compose(b)
}

/// Parses an operator such as `t^2 - q*(2*t - l)*(2*t - l + h)`.
///
/// `t`, `t1, t2, …` are θ's, `q`, `q1, …` the variables, `h` is ħ, and the
/// ring's λ and generator names are coefficients. Juxtaposition and `*`
/// compose, so factors are applied right to left.
pub fn parse_operator(src: &str, ring: &Arc<CoeffRing>, nvars: usize, hbar_weighted: bool) -> Result<ThetaOperator> {
    let mut p = OpParser { src: src.as_bytes(), pos: 0, ring, nvars, weighted: hbar_weighted, text: src };
    let op = p.sum()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected input"));
    }
    Ok(op)
}

struct OpParser<'a> {
    src: &'a [u8],
    pos: usize,
    ring: &'a Arc<CoeffRing>,
    nvars: usize,
    weighted: bool,
    text: &'a str,
}

impl OpParser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse { line: 0, message: format!("{msg} at column {} of '{}'", self.pos + 1, self.text) }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn sum(&mut self) -> Result<ThetaOperator> {
        let mut acc = ThetaOperator::zero(self.ring, self.nvars, self.weighted);
        let mut sign = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -1
            }
            Some(b'+') => {
                self.pos += 1;
                1
            }
            _ => 1,
        };
        loop {
            let t = self.product()?;
            acc = acc.add(&t.scale(&int(sign)))?;
            match self.peek() {
                Some(b'+') => sign = 1,
                Some(b'-') => sign = -1,
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    fn product(&mut self) -> Result<ThetaOperator> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                }
                Some(c) if c == b'(' || c.is_ascii_alphanumeric() => {}
                _ => return Ok(acc),
            }
            let f = self.factor()?;
            acc = acc.compose(&f)?;
        }
    }

    fn factor(&mut self) -> Result<ThetaOperator> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let e: u32 = self.text[start..self.pos].parse().map_err(|_| self.error("expected exponent"))?;
            return base.pow(e);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<ThetaOperator> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.sum()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(self.factor()?.scale(&-Rational::one()))
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && (self.src[self.pos].is_ascii_digit() || self.src[self.pos] == b'/') {
                    self.pos += 1;
                }
                let r = parse_rational(&self.text[start..self.pos]).ok_or_else(|| self.error("bad number"))?;
                Ok(ThetaOperator::scalar(self.ring, self.nvars, self.weighted, RingElem::constant(self.ring, r)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
                    self.pos += 1;
                }
                let name = self.text[start..self.pos].to_string();
                self.name(&name)
            }
            _ => Err(self.error("expected a term")),
        }
    }

    fn index(&self, name: &str, prefix: &str) -> Option<usize> {
        if name == prefix && self.nvars == 1 {
            return Some(0);
        }
        let i: usize = name.strip_prefix(prefix)?.parse().ok()?;
        (1..=self.nvars).contains(&i).then(|| i - 1)
    }

    fn name(&mut self, name: &str) -> Result<ThetaOperator> {
        let (ring, n, w) = (self.ring, self.nvars, self.weighted);
        if let Some(j) = ring.lambda_names().iter().position(|l| l == name) {
            return Ok(ThetaOperator::scalar(ring, n, w, RingElem::lambda(ring, j, Rational::one())));
        }
        if let Some(g) = ring.algebra().generators().iter().position(|p| p == name) {
            return Ok(ThetaOperator::scalar(ring, n, w, RingElem::generator(ring, g, Rational::one())));
        }
        if name == "h" {
            return Ok(ThetaOperator::scalar(ring, n, w, RingElem::hbar(ring, 1, Rational::one())));
        }
        if let Some(i) = self.index(name, "t") {
            return Ok(ThetaOperator::theta(ring, n, w, i));
        }
        if let Some(i) = self.index(name, "q") {
            return Ok(ThetaOperator::q(ring, n, w, i));
        }
        Err(self.error(&format!("unknown name '{name}'")))
    }
}

/// Total θ-degree of the operator (its order).
pub fn order(op: &ThetaOperator) -> u32 {
    op.terms.keys().map(|(_, a)| a.iter().sum::<u32>()).max().unwrap_or(0)
}

/// Rational constant of a scalar operator, if it is one.
pub fn as_constant(op: &ThetaOperator) -> Option<Rational> {
    match op.terms.len() {
        0 => Some(Rational::zero()),
        1 => {
            let ((b, a), c) = op.terms.iter().next()?;
            if b.iter().chain(a).any(|e| *e > 0) {
                return None;
            }
            c.as_rational()
        }
        _ => None,
    }
}

/// Coefficient of `q^b θ^a`, zero when absent.
pub fn coefficient(op: &ThetaOperator, q: &[u32], theta: &[u32]) -> RingElem {
    op.terms.get(&(q.to_vec(), theta.to_vec())).cloned().unwrap_or_else(|| RingElem::zero(&op.ring))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{CohomAlgebra, Window};
    use crate::series::DegreeBound;

    fn ring(nlam: usize) -> Arc<CoeffRing> {
        let names = (1..=nlam).map(|i| format!("l{i}")).collect();
        CoeffRing::new(Arc::new(CohomAlgebra::nilpotent("p")), names, Window::wide())
    }

    #[test]
    fn theta_squared() {
        let r = ring(1);
        let t = ThetaOperator::theta(&r, 1, true, 0);
        assert_eq!(t.compose(&t).unwrap(), parse_operator("t^2", &r, 1, true).unwrap());
    }

    #[test]
    fn commutation() {
        let r = ring(1);
        let lhs = parse_operator("t*q", &r, 1, true).unwrap();
        let rhs = parse_operator("q*t + q*h", &r, 1, true).unwrap();
        assert_eq!(lhs, rhs);
        let lhs = parse_operator("t*q^2", &r, 1, false).unwrap();
        let rhs = parse_operator("q^2*t + 2q^2", &r, 1, false).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn theta_kills_constants() {
        let r = ring(1);
        let one = QSeries::constant(DegreeBound::single(4), RingElem::one(&r));
        let op = parse_operator("t^2", &r, 1, true).unwrap();
        let a = annihilation_check(&op, &one, 4).unwrap();
        assert!(a.annihilated);
    }

    #[test]
    fn parse_errors() {
        let r = ring(1);
        assert!(parse_operator("t + x", &r, 1, true).is_err());
        assert!(parse_operator("(t", &r, 1, true).is_err());
    }
}
