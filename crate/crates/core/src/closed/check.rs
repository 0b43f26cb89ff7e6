use std::fmt;

use num_traits::Zero;

use crate::exact::rational::render;
use crate::exact::Rational;
use crate::givental::Annihilation;
use crate::series::{LogQSeries, QSeries};

/// Outcome of comparing two series coefficient by coefficient.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesCheck {
    pub name: String,
    pub passed: bool,
    /// Total degree compared through.
    pub degree: u32,
    /// First differing exponent with `(left, right)`.
    pub first_mismatch: Option<(Vec<u32>, Rational, Rational)>,
}

impl SeriesCheck {
    /// `left - right` at the first mismatch, zero when passed.
    pub fn residual(&self) -> Rational {
        match &self.first_mismatch {
            Some((_, l, r)) => l - r,
            None => Rational::zero(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        })
    }
}

/// Outcome of one check, with the location and exact value of the first residual.
#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub name: String,
    pub status: Status,
    pub at: Option<Vec<u32>>,
    /// `"0/1"` when passed.
    pub residual: String,
}

impl Verdict {
    pub fn new(name: &str, passed: bool, at: Option<Vec<u32>>, residual: String) -> Self {
        Verdict { name: name.to_string(), status: if passed { Status::Pass } else { Status::Fail }, at, residual }
    }

    pub fn pass(name: &str) -> Self {
        Verdict::new(name, true, None, render(&Rational::zero()))
    }

    pub fn skipped(name: &str, reason: &str) -> Self {
        Verdict { name: name.to_string(), status: Status::Skipped, at: None, residual: reason.to_string() }
    }

    /// Equality of two rationals, residual `got - want`.
    pub fn equal(name: &str, got: &Rational, want: &Rational) -> Self {
        Verdict::new(name, got == want, None, render(&(got - want)))
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn renamed(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }
}

impl From<SeriesCheck> for Verdict {
    fn from(c: SeriesCheck) -> Self {
        let residual = render(&c.residual());
        Verdict::new(&c.name, c.passed, c.first_mismatch.map(|(e, _, _)| e), residual)
    }
}

impl From<Annihilation> for Verdict {
    fn from(a: Annihilation) -> Self {
        match a.first_residual {
            Some((e, r)) => Verdict::new("annihilation", false, Some(e), r),
            None => Verdict::pass("annihilation"),
        }
    }
}

/// Compares `left` and `right` at every exponent of `left`'s bound with total
/// degree at most `degree`.
pub fn compare_series(name: &str, left: &QSeries<Rational>, right: &QSeries<Rational>, degree: u32) -> SeriesCheck {
    let first_mismatch = left
        .bound()
        .exponents()
        .into_iter()
        .filter(|e| e.iter().sum::<u32>() <= degree)
        .map(|e| {
            let (l, r) = (left.coeff(&e), right.coeff(&e));
            (e, l, r)
        })
        .find(|(_, l, r)| l != r);
    SeriesCheck { name: name.to_string(), passed: first_mismatch.is_none(), degree, first_mismatch }
}

/// As [`compare_series`] part by part in the logarithms; a mismatch names
/// the log power.
pub fn compare_log_series(name: &str, left: &LogQSeries<Rational>, right: &LogQSeries<Rational>, degree: u32) -> SeriesCheck {
    let mut logs: Vec<Vec<u32>> = left.parts().chain(right.parts()).map(|(e, _)| e.clone()).collect();
    logs.sort();
    logs.dedup();
    for e in logs {
        let c = compare_series(name, &left.part(&e), &right.part(&e), degree);
        if !c.passed {
            let label = if e.iter().all(|x| *x == 0) { name.to_string() } else { format!("{name} [log^{e:?}]") };
            return SeriesCheck { name: label, ..c };
        }
    }
    SeriesCheck { name: name.to_string(), passed: true, degree, first_mismatch: None }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    #[test]
    fn reports_first_mismatch() {
        let a = QSeries::from_coeffs(3, &[int(1), int(2), int(3)]);
        let b = QSeries::from_coeffs(3, &[int(1), int(2), int(4)]);
        let c = compare_series("x", &a, &b, 3);
        assert!(!c.passed);
        assert_eq!(c.first_mismatch.as_ref().unwrap().0, vec![2]);
        assert_eq!(c.residual(), int(-1));
        assert!(compare_series("x", &a, &b, 1).passed);
    }
}
