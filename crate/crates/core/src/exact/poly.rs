//! Polynomials in the cohomology generators, used to state ring relations.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::rational::{render_compact, Rational};
use crate::error::{Error, Result};

/// Sparse polynomial with rational coefficients in `nvars` variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Poly::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Poly::zero(nvars);
        p.add_term(e, Rational::one());
        p
    }

    pub fn monomial(exps: Vec<u32>, c: Rational) -> Self {
        let mut p = Poly::zero(exps.len());
        p.add_term(exps, c);
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, e: Vec<u32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), c.clone());
        }
        r
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        let mut r = Poly::zero(self.nvars);
        for (e, v) in &self.terms {
            r.add_term(e.clone(), v * c);
        }
        r
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        let mut r = Poly::zero(self.nvars);
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                let e = a.iter().zip(b).map(|(i, j)| i + j).collect();
                r.add_term(e, x * y);
            }
        }
        r
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut r = Poly::constant(self.nvars, Rational::one());
        for _ in 0..k {
            r = r.mul(self);
        }
        r
    }

    /// Degree if every term has the same total degree.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    /// Parses expressions such as `p1^2`, `p2*(p1-p2)^2`, `3/2*p1 - p2`.
    pub fn parse(src: &str, names: &[String]) -> Result<Poly> {
        let mut p = Parser { chars: src.chars().filter(|c| !c.is_whitespace()).collect(), pos: 0, names };
        let r = p.sum()?;
        if p.pos != p.chars.len() {
            return Err(p.err("trailing input"));
        }
        Ok(r)
    }

    pub fn display(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (e, c) in self.terms.iter().rev() {
            let mono: Vec<String> = e.iter().zip(names).filter(|(k, _)| **k > 0).map(|(k, n)| if *k == 1 { n.clone() } else { format!("{n}^{k}") }).collect();
            if !out.is_empty() {
                out.push_str(" + ");
            }
            match (mono.is_empty(), c.is_one()) {
                (true, _) => out.push_str(&render_compact(c)),
                (false, true) => out.push_str(&mono.join("*")),
                (false, false) => out.push_str(&format!("{}*{}", render_compact(c), mono.join("*"))),
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.nvars).map(|i| format!("p{i}")).collect();
        f.write_str(&self.display(&names))
    }
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    names: &'a [String],
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Config(format!("polynomial: {msg} at offset {}", self.pos))
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn sum(&mut self) -> Result<Poly> {
        let n = self.names.len();
        let mut acc = Poly::zero(n);
        let mut sign = Rational::one();
        if self.peek() == Some('-') {
            self.pos += 1;
            sign = -sign;
        } else if self.peek() == Some('+') {
            self.pos += 1;
        }
        loop {
            let t = self.product()?;
            acc = acc.add(&t.scale(&sign));
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    sign = Rational::one();
                }
                Some('-') => {
                    self.pos += 1;
                    sign = -Rational::one();
                }
                _ => return Ok(acc),
            }
        }
    }

    fn product(&mut self) -> Result<Poly> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.power()?);
                }
                Some('/') => {
                    self.pos += 1;
                    let d = self.integer()?;
                    if d.is_zero() {
                        return Err(self.err("division by zero"));
                    }
                    acc = acc.scale(&d.recip());
                }
                Some(c) if c == '(' || c.is_alphabetic() => acc = acc.mul(&self.power()?),
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let e = self.integer()?;
            let e: u32 = e.to_integer().try_into().map_err(|_| self.err("bad exponent"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<Rational> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        Ok(Rational::from_integer(s.parse().map_err(|_| self.err("bad integer"))?))
    }

    fn atom(&mut self) -> Result<Poly> {
        let n = self.names.len();
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let r = self.sum()?;
                if self.peek() != Some(')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(r)
            }
            Some(c) if c.is_ascii_digit() => Ok(Poly::constant(n, self.integer()?)),
            Some(c) if c.is_alphabetic() => {
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_alphanumeric() || c == '_') {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                let i = self.names.iter().position(|x| *x == name).ok_or_else(|| self.err(&format!("unknown generator '{name}'")))?;
                Ok(Poly::var(n, i))
            }
            _ => Err(self.err("unexpected input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::int;

    fn names() -> Vec<String> {
        vec!["p1".into(), "p2".into()]
    }

    #[test]
    fn parses_products_and_powers() {
        let p = Poly::parse("p2*(p1-p2)^2", &names()).unwrap();
        let mut want = Poly::zero(2);
        want = want.add(&Poly::monomial(vec![2, 1], int(1)));
        want = want.add(&Poly::monomial(vec![1, 2], int(-2)));
        want = want.add(&Poly::monomial(vec![0, 3], int(1)));
        assert_eq!(p, want);
        assert_eq!(p.homogeneous_degree(), Some(3));
    }

    #[test]
    fn parses_coefficients() {
        let p = Poly::parse("-3/2*p1 + 2p2", &names()).unwrap();
        assert_eq!(p.terms().count(), 2);
        assert!(Poly::parse("p3", &names()).is_err());
        assert!(Poly::parse("p1 +", &names()).is_err());
        assert_eq!(Poly::parse("p1+1", &names()).unwrap().homogeneous_degree(), None);
    }
}
