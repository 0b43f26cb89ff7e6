use num_traits::{One, Zero};

use super::qseries::QSeries;
use crate::error::{Error, Result};
use crate::exact::Rational;

/// `num(q) / den(q)` with `den(0) = 1` after normalization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalFunctionQ {
    num: Vec<Rational>,
    den: Vec<Rational>,
}

fn trim(mut v: Vec<Rational>) -> Vec<Rational> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut r = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            r[i + j] += x * y;
        }
    }
    trim(r)
}

impl RationalFunctionQ {
    /// Coefficient lists start at `q^0`.
    pub fn new(num: Vec<Rational>, den: Vec<Rational>) -> Result<Self> {
        let num = trim(num);
        let den = trim(den);
        let d0 = den.first().cloned().unwrap_or_else(Rational::zero);
        if d0.is_zero() {
            return Err(Error::PoleAtZero);
        }
        let inv = d0.recip();
        Ok(RationalFunctionQ { num: num.iter().map(|c| c * &inv).collect(), den: den.iter().map(|c| c * &inv).collect() })
    }

    pub fn polynomial(p: Vec<Rational>) -> Self {
        RationalFunctionQ::new(p, vec![Rational::one()]).expect("unit denominator")
    }

    pub fn numerator(&self) -> &[Rational] {
        &self.num
    }

    pub fn denominator(&self) -> &[Rational] {
        &self.den
    }

    pub fn mul(&self, o: &Self) -> Self {
        RationalFunctionQ::new(poly_mul(&self.num, &o.num), poly_mul(&self.den, &o.den)).expect("den(0) = 1")
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut r = RationalFunctionQ::polynomial(vec![Rational::one()]);
        for _ in 0..k {
            r = r.mul(self);
        }
        r
    }

    pub fn recip(&self) -> Result<Self> {
        RationalFunctionQ::new(self.den.clone(), self.num.clone())
    }

    /// Taylor expansion through `q^degree`.
    pub fn to_series(&self, degree: u32) -> QSeries<Rational> {
        let d = degree as usize;
        let mut out = vec![Rational::zero(); d + 1];
        for n in 0..=d {
            let mut c = self.num.get(n).cloned().unwrap_or_else(Rational::zero);
            for k in 1..=n.min(self.den.len().saturating_sub(1)) {
                c -= &self.den[k] * &out[n - k];
            }
            out[n] = c;
        }
        QSeries::from_coeffs(degree, &out)
    }
}

pub fn rational_to_series(f: &RationalFunctionQ, degree: u32) -> Result<QSeries<Rational>> {
    Ok(f.to_series(degree))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    fn r(n: &[i64], d: &[i64]) -> RationalFunctionQ {
        RationalFunctionQ::new(n.iter().map(|x| int(*x)).collect(), d.iter().map(|x| int(*x)).collect()).unwrap()
    }

    #[test]
    fn long_division() {
        assert_eq!(r(&[1, 4], &[1, 1]).to_series(3).coeff_list(), vec![int(1), int(3), int(-3), int(3)]);
        assert_eq!(r(&[1], &[1, -1]).to_series(2).coeff_list(), vec![int(1), int(1), int(1)]);
        assert_eq!(r(&[1, -1], &[1, -9]).to_series(2).coeff_list(), vec![int(1), int(8), int(72)]);
        let j2 = r(&[1, -9], &[1, -1]).recip().unwrap();
        let prod = j2.to_series(4).mul(&r(&[1, -9], &[1, -1]).to_series(4)).unwrap();
        assert_eq!(prod.coeff_list(), vec![int(1), int(0), int(0), int(0), int(0)]);
    }

    #[test]
    fn pole_at_zero() {
        assert_eq!(RationalFunctionQ::new(vec![int(1)], vec![int(0), int(1)]), Err(Error::PoleAtZero));
    }
}
