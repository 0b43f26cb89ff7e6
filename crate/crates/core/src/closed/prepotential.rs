//! Prepotentials of the `A_n` chain and the trivalent curve as `Li₃` sums.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exact::{int, Rational};
use crate::givental::Action;
use crate::mirror::polylog_sum;
use crate::series::{DegreeBound, QSeries};

/// One for every interval `[i..j]` of consecutive curves.
pub fn an_invariants(n: usize) -> BTreeMap<Vec<u32>, Rational> {
    let mut out = BTreeMap::new();
    for i in 0..n {
        for j in i..n {
            let beta: Vec<u32> = (0..n).map(|m| u32::from(m >= i && m <= j)).collect();
            out.insert(beta, int(1));
        }
    }
    out
}

pub fn an_prepotential(n: usize, bound: &DegreeBound) -> Result<QSeries<Rational>> {
    if n == 0 {
        return Err(Error::InvalidArgument("a_n needs n >= 1".into()));
    }
    if bound.nvars() != n {
        return Err(Error::VariableMismatch(format!("bound has {} variables, a_n has {n}", bound.nvars())));
    }
    Ok(polylog_sum(bound, &an_invariants(n), 3))
}

/// `x_i` and `x₁x₂x₃` with one, `x_ix_j` with `+1` diagonal and `-1` antidiagonal.
pub fn trivalent_invariants(action: Action) -> Result<BTreeMap<Vec<u32>, Rational>> {
    let sign = match action {
        Action::Diagonal => 1,
        Action::Antidiagonal => -1,
        Action::Generic => return Err(Error::InvalidArgument("trivalent prepotential needs a diagonal or antidiagonal action".into())),
    };
    let mut out = BTreeMap::new();
    for beta in [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]] {
        out.insert(beta.to_vec(), int(1));
    }
    for beta in [[1, 1, 0], [1, 0, 1], [0, 1, 1]] {
        out.insert(beta.to_vec(), int(sign));
    }
    Ok(out)
}

pub fn trivalent_prepotential(action: Action, bound: &DegreeBound) -> Result<QSeries<Rational>> {
    if bound.nvars() != 3 {
        return Err(Error::VariableMismatch(format!("bound has {} variables, trivalent has 3", bound.nvars())));
    }
    Ok(polylog_sum(bound, &trivalent_invariants(action)?, 3))
}

/// `∂/∂t_i` in `x = e^t`.
pub fn t_derivative(f: &QSeries<Rational>, i: usize) -> QSeries<Rational> {
    f.theta(i)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn an_interval_count() {
        for n in 1..=5 {
            assert_eq!(an_invariants(n).len(), n * (n + 1) / 2);
        }
    }

    #[test]
    fn a1_is_li3() {
        let f = an_prepotential(1, &DegreeBound::single(3)).unwrap();
        assert_eq!(f.coeff_list(), vec![int(0), int(1), rat(1, 8), rat(1, 27)]);
    }

    #[test]
    fn a2_terms() {
        let f = an_prepotential(2, &DegreeBound::Box(vec![2, 2])).unwrap();
        assert_eq!(f.coeff(&[1, 1]), int(1));
        assert_eq!(f.coeff(&[2, 2]), rat(1, 8));
        assert_eq!(f.coeff(&[2, 1]), int(0));
    }

    #[test]
    fn trivalent_signs() {
        let b = DegreeBound::Box(vec![2, 2, 2]);
        let d = trivalent_prepotential(Action::Diagonal, &b).unwrap();
        let a = trivalent_prepotential(Action::Antidiagonal, &b).unwrap();
        assert_eq!(d.coeff(&[1, 1, 0]), int(1));
        assert_eq!(a.coeff(&[1, 1, 0]), int(-1));
        assert_eq!(d.coeff(&[1, 1, 1]), int(1));
        assert_eq!(a.coeff(&[1, 1, 1]), int(1));
        assert_eq!(a.coeff(&[2, 2, 0]), rat(-1, 8));
        assert!(trivalent_prepotential(Action::Generic, &b).is_err());
    }
}
