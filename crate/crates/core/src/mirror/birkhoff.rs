//! Birkhoff factorization: `c₀ I + Σ_i c_i ħθ_i I = J` with `J` free of
//! non-negative ħ-powers beyond the leading 1.

use crate::error::{Error, Result};
use crate::exact::{int, RingElem};
use crate::series::QSeries;

#[derive(Debug, Clone)]
pub struct Birkhoff {
    pub j: QSeries<RingElem>,
    pub c0: QSeries<RingElem>,
    /// One series per curve class.
    pub c: Vec<QSeries<RingElem>>,
}

/// Solves for `c₀ = 1 + O(q)` and `c_i = O(q)` degree by degree.
///
/// At degree `d` the known part is
/// `R_d = Σ_{d' < d} [c0_{d'} + Σ_i c_{i,d'}(p_i + (d-d')_i ħ)] I_{d-d'}`,
/// and `c0_d`, `c_{i,d}` cancel its `ħ^{≥0}` components along `1` and `p_i`.
pub fn birkhoff(i: &QSeries<RingElem>) -> Result<Birkhoff> {
    let zero = i.zero_coeff().clone();
    let ring = zero.ring().clone();
    let alg = ring.algebra();
    let r = i.nvars();
    let bound = i.bound().clone();
    let gens: Vec<usize> = (0..r)
        .map(|k| {
            let mut e = vec![0; r];
            e[k] = 1;
            alg.basis_index(&e).ok_or_else(|| Error::InvalidArgument(format!("generator {} is not a basis element", k + 1)))
        })
        .collect::<Result<_>>()?;
    let degrees = bound.exponents();
    let origin = vec![0; r];
    let mut c0 = QSeries::constant(bound.clone(), RingElem::one(&ring));
    let mut c: Vec<QSeries<RingElem>> = (0..r).map(|_| QSeries::zero(bound.clone(), zero.clone())).collect();
    let mut j = QSeries::zero(bound.clone(), zero.clone()).with_log_part(i.log_part().map(<[RingElem]>::to_vec));
    j.set(origin.clone(), i.coeff(&origin));
    let p: Vec<RingElem> = (0..r).map(|k| RingElem::generator(&ring, k, int(1))).collect();
    for d in degrees.iter().filter(|d| **d != origin) {
        let mut rd = RingElem::zero(&ring);
        for dp in degrees.iter().filter(|e| *e != d && e.iter().zip(d).all(|(a, b)| a <= b)) {
            let diff: Vec<u32> = d.iter().zip(dp).map(|(a, b)| a - b).collect();
            let mut factor = c0.coeff(dp);
            for k in 0..r {
                let ck = c[k].coeff(dp);
                if !RingElem::is_zero(&ck) || ck.is_truncated() {
                    let shift = &p[k] + &RingElem::hbar(&ring, 1, int(diff[k] as i64));
                    factor = &factor + &(&ck * &shift);
                }
            }
            if !RingElem::is_zero(&factor) || factor.is_truncated() {
                rd = &rd + &(&factor * &i.coeff(&diff));
            }
        }
        let positive = rd.filter_hbar(|h| h >= 0);
        let c0d = -&positive.basis_component(0);
        let mut jd = &rd + &c0d;
        for k in 0..r {
            let ck = -&positive.basis_component(gens[k]);
            jd = &jd + &(&ck * &p[k]);
            c[k].set(d.clone(), ck);
        }
        c0.set(d.clone(), c0d);
        let rest = jd.filter_hbar(|h| h >= 0);
        if !rest.is_zero() {
            return Err(Error::BirkhoffSingular { order: d.clone(), residual: rest.to_string() });
        }
        j.set(d.clone(), jd);
    }
    Ok(Birkhoff { j, c0, c })
}

/// True when no coefficient of `j` carries a non-negative ħ-power outside degree 0.
pub fn no_positive_hbar(j: &QSeries<RingElem>) -> bool {
    let origin = vec![0; j.nvars()];
    j.terms().all(|(d, c)| *d == origin || c.filter_hbar(|h| h >= 0).is_zero())
}
