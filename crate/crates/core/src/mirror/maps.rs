//! Mirror maps read off the `1/ħ` coefficient of `J`, normalization of `J`
//! in flat coordinates, and the `1/ħ²` coefficient `W`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::rational::pow;
use crate::exact::{Key, Rational, RingElem};
use crate::givental::{LambdaImage, Restriction};
use crate::series::{series_reversion, LogQSeries, QSeries};

#[derive(Debug, Clone)]
pub struct MirrorData {
    /// `t_i = log q_i + g_i(q)`.
    pub maps: Vec<LogQSeries<Rational>>,
    pub g: Vec<QSeries<Rational>>,
    /// Scalar part of the `1/ħ` coefficient, a λ-linear series.
    pub equivariant: QSeries<RingElem>,
    /// `q_i(x)` with `x_i = e^{t_i}`.
    pub inverse: Vec<QSeries<Rational>>,
    /// `1/det(δ_ij + θ_j g_i)` in `q`; `d log q/dt` for one variable.
    pub jacobian: QSeries<Rational>,
}

fn generator_indices(j: &QSeries<RingElem>) -> Result<Vec<usize>> {
    let alg = j.zero_coeff().ring().algebra();
    let r = j.nvars();
    (0..r)
        .map(|k| {
            let mut e = vec![0; r];
            e[k] = 1;
            alg.basis_index(&e).ok_or_else(|| Error::InvalidArgument(format!("generator {} is not a basis element", k + 1)))
        })
        .collect()
}

/// `ħ^{-a}` coefficient of every degree, checked to be exact in the part
/// that can pair with the top cohomology.
fn hbar_part(j: &QSeries<RingElem>, a: i32, what: &str) -> Result<QSeries<RingElem>> {
    let zero = j.zero_coeff().clone();
    let top = zero.ring().algebra().top_degree() as i32;
    let origin = vec![0; j.nvars()];
    let mut out = QSeries::zero(j.bound().clone(), zero);
    for (d, c) in j.terms() {
        if *d == origin {
            continue;
        }
        c.require_exact(a - top, -a, &format!("{what} at degree {d:?}"))?;
        out.set(d.clone(), c.hbar_coefficient(-a));
    }
    Ok(out)
}

/// Splits the `1/ħ` coefficient into `p_i`-components and the scalar part.
pub fn extract_mirror_maps(j: &QSeries<RingElem>) -> Result<MirrorData> {
    let gens = generator_indices(j)?;
    let r = j.nvars();
    let bound = j.bound().clone();
    let x = hbar_part(j, 1, "mirror map")?;
    let mut g: Vec<QSeries<Rational>> = (0..r).map(|_| QSeries::zero(bound.clone(), Rational::zero())).collect();
    let mut equivariant = QSeries::zero(bound.clone(), x.zero_coeff().clone());
    for (d, c) in x.terms() {
        for (key, v) in c.terms() {
            if key.basis == 0 {
                continue;
            }
            let Some(k) = gens.iter().position(|b| *b == key.basis) else {
                return Err(Error::MirrorComponent(format!("degree {d:?}: {c}")));
            };
            if key.lambda.iter().any(|e| *e != 0) {
                return Err(Error::MirrorComponent(format!("λ-dependent p_{} coefficient at degree {d:?}: {c}", k + 1)));
            }
            g[k].add_to(d.clone(), v);
        }
        equivariant.set(d.clone(), c.basis_component(0));
    }
    let maps: Vec<LogQSeries<Rational>> = g.iter().enumerate().map(|(i, gi)| LogQSeries::mirror_map(i, gi.clone())).collect::<Result<_>>()?;
    let inverse = series_reversion(&maps)?;
    let jacobian = jacobian(&g)?;
    Ok(MirrorData { maps, g, equivariant, inverse, jacobian })
}

/// `1/det(δ_ij + θ_j g_i)`.
pub fn jacobian(g: &[QSeries<Rational>]) -> Result<QSeries<Rational>> {
    let r = g.len();
    let Some(first) = g.first() else {
        return Err(Error::InvalidArgument("no mirror maps".into()));
    };
    let bound = first.bound().clone();
    let m: Vec<Vec<QSeries<Rational>>> = (0..r)
        .map(|i| {
            (0..r)
                .map(|jj| {
                    let t = g[i].theta(jj);
                    if i == jj {
                        t.add(&QSeries::constant(bound.clone(), Rational::one()))
                    } else {
                        Ok(t)
                    }
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    determinant(&m, &bound)?.inverse()
}

fn determinant(m: &[Vec<QSeries<Rational>>], bound: &crate::series::DegreeBound) -> Result<QSeries<Rational>> {
    let n = m.len();
    if n == 1 {
        return Ok(m[0][0].clone());
    }
    let mut det = QSeries::zero(bound.clone(), Rational::zero());
    for col in 0..n {
        let minor: Vec<Vec<QSeries<Rational>>> =
            m[1..].iter().map(|row| row.iter().enumerate().filter(|(k, _)| *k != col).map(|(_, v)| v.clone()).collect()).collect();
        let term = m[0][col].mul(&determinant(&minor, bound)?)?;
        det = if col % 2 == 0 { det.add(&term)? } else { det.sub(&term)? };
    }
    Ok(det)
}

/// `[exp(-X/ħ) Ĵ](q(x))`, `X` the `1/ħ` coefficient; the log part `p_i/ħ`
/// now refers to `log x_i`.
pub fn normalize_j(j: &QSeries<RingElem>, m: &MirrorData) -> Result<QSeries<RingElem>> {
    let x = hbar_part(j, 1, "normalization")?;
    let ring = j.zero_coeff().ring().clone();
    let inv_hbar = RingElem::hbar(&ring, -1, -Rational::one());
    let e = x.mul_coeff(&inv_hbar).exp()?;
    let bare = j.clone().with_log_part(None);
    let prod = e.mul(&bare)?;
    let composed = prod.compose(&m.inverse)?;
    Ok(composed.with_log_part(j.log_part().map(<[RingElem]>::to_vec)))
}

/// The `1/ħ²` coefficient of a normalized `J`.
pub fn extract_w(jn: &QSeries<RingElem>) -> Result<QSeries<RingElem>> {
    hbar_part(jn, 2, "W")
}

/// `(basis monomial, λ-exponents)` of a restricted term.
pub type Monomial = (Vec<u32>, Vec<i32>);

/// Applies `p_i → 0` and `λ_j → c·λ'_t` or `0`, collecting the coefficient
/// series of each surviving monomial.
pub fn restrict_w(w: &QSeries<RingElem>, restriction: &Restriction) -> Result<BTreeMap<Monomial, QSeries<Rational>>> {
    let ring = w.zero_coeff().ring().clone();
    let alg = ring.algebra();
    let bound = w.bound().clone();
    let nt = restriction.target_lambdas.len();
    let mut out: BTreeMap<Monomial, QSeries<Rational>> = BTreeMap::new();
    for (d, c) in w.terms() {
        for (key, v) in c.terms() {
            if let Some((mono, factor)) = restrict_key(key, alg.basis(), restriction, nt)? {
                out.entry(mono).or_insert_with(|| QSeries::zero(bound.clone(), Rational::zero())).add_to(d.clone(), &(v * factor));
            }
        }
    }
    out.retain(|_, s| !s.is_zero());
    Ok(out)
}

fn restrict_key(key: &Key, basis: &[Vec<u32>], restriction: &Restriction, nt: usize) -> Result<Option<(Monomial, Rational)>> {
    let mono = &basis[key.basis];
    if restriction.zero_generators.iter().any(|i| mono[*i] > 0) {
        return Ok(None);
    }
    let mut lam = vec![0i32; nt];
    let mut factor = Rational::one();
    for (e, image) in key.lambda.iter().zip(&restriction.lambda_images) {
        if *e == 0 {
            continue;
        }
        match image {
            LambdaImage::Zero if *e > 0 => return Ok(None),
            LambdaImage::Zero => return Err(Error::InvalidArgument("negative λ-power sent to zero".into())),
            LambdaImage::Scaled { target, coeff } => {
                if coeff.is_zero() {
                    if *e < 0 {
                        return Err(Error::InvalidArgument("negative λ-power sent to zero".into()));
                    }
                    return Ok(None);
                }
                factor *= pow(coeff, *e);
                lam[*target] += e;
            }
        }
    }
    Ok(Some(((mono.clone(), lam), factor)))
}
