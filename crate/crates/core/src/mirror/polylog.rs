//! Multiple-cover inversion: recovers `N_β` from `Σ_β N_β Li_w(x^β)`.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::exact::rational::pow;
use crate::exact::{int, Rational};
use crate::series::QSeries;

/// Gromov-Witten numbers by curve class, with any disagreement between readouts.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct GWTable {
    pub entries: BTreeMap<Vec<u32>, Rational>,
    /// `(class, first value, conflicting value)`.
    pub conflicts: Vec<(Vec<u32>, Rational, Rational)>,
}

impl GWTable {
    pub fn get(&self, beta: &[u32]) -> Rational {
        self.entries.get(beta).cloned().unwrap_or_else(Rational::zero)
    }

    /// Records a value, noting a conflict if a different one is already present.
    pub fn merge(&mut self, beta: Vec<u32>, value: Rational) {
        match self.entries.get(&beta) {
            Some(old) if *old != value => self.conflicts.push((beta, old.clone(), value)),
            Some(_) => {}
            None => {
                self.entries.insert(beta, value);
            }
        }
    }

    /// Nonzero entries only.
    pub fn nonzero(&self) -> BTreeMap<Vec<u32>, Rational> {
        self.entries.iter().filter(|(_, v)| !v.is_zero()).map(|(k, v)| (k.clone(), v.clone())).collect()
    }
}

/// Solves `c_γ = Σ_{m | γ} M_{γ/m} / m^w` for every `γ ≠ 0` in the bound.
pub fn polylog_invert(s: &QSeries<Rational>, w: u32) -> BTreeMap<Vec<u32>, Rational> {
    let origin = vec![0; s.nvars()];
    let mut m: BTreeMap<Vec<u32>, Rational> = BTreeMap::new();
    for gamma in s.bound().exponents() {
        if gamma == origin {
            continue;
        }
        let g = gamma.iter().copied().fold(0, crate::exact::rational::gcd_u32);
        let mut v = s.coeff(&gamma);
        for k in 2..=g {
            if g % k != 0 {
                continue;
            }
            let beta: Vec<u32> = gamma.iter().map(|x| x / k).collect();
            if let Some(mb) = m.get(&beta) {
                v -= mb * pow(&int(k as i64), -(w as i32));
            }
        }
        m.insert(gamma, v);
    }
    m
}

/// `Σ_β n_β Li_w(x^β)` through `bound`.
pub fn polylog_sum(bound: &crate::series::DegreeBound, n: &BTreeMap<Vec<u32>, Rational>, w: u32) -> QSeries<Rational> {
    let mut s = QSeries::zero(bound.clone(), Rational::zero());
    for (beta, c) in n {
        if beta.iter().all(|x| *x == 0) {
            continue;
        }
        for k in 1u32.. {
            let e: Vec<u32> = beta.iter().map(|x| x * k).collect();
            if !bound.contains(&e) {
                break;
            }
            s.add_to(e, &(c * pow(&int(k as i64), -(w as i32))));
        }
    }
    s
}
