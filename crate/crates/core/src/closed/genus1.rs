//! Genus-one potentials and the log-ansatz fit
//! `G = log(q^a ∏ Δ_i^{b_i} J^c)`.

use num_traits::{One, Zero};

use super::check::{compare_series, SeriesCheck};
use super::genus0::conj1;
use super::verify::{run_with, WindowOverride};
use crate::error::{Error, Result};
use crate::exact::rational::render;
use crate::exact::{int, rat, Rational};
use crate::givental::a_n;
use crate::mirror::MirrorData;
use crate::series::{DegreeBound, QSeries};

/// `G_k` for `k ≥ 1` in `q` and in `x = e^t`.
#[derive(Debug, Clone, PartialEq)]
pub struct ClosedGenus1 {
    pub k: i64,
    pub in_q: QSeries<Rational>,
    pub in_t: QSeries<Rational>,
}

/// `G_k(q) = 11/24 log(1+ε(k+1)²q) + (-5/12+(k+1)²/24) log(1+εq) - 1/2 log qdt`.
pub fn genus1_bmodel(k: i64, degree: u32) -> Result<ClosedGenus1> {
    let g0 = conj1(k)?;
    let e = g0.epsilon;
    let s = (k + 1) * (k + 1);
    let big = QSeries::from_coeffs(degree, &[int(1), int(e * s)]).log()?;
    let small = QSeries::from_coeffs(degree, &[int(1), int(e)]).log()?;
    let qdt = g0.qdt.to_series(degree).log()?;
    let in_q = big.scale(&rat(11, 24)).add(&small.scale(&(rat(-5, 12) + rat(s, 24))))?.sub(&qdt.scale(&rat(1, 2)))?;
    let in_t = in_q.compose(&[g0.inverse_mirror_map(degree)?])?;
    Ok(ClosedGenus1 { k, in_q, in_t })
}

/// Mirror maps `t_i = log q_i + g_i(q)` with inverse `q_i(x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MirrorCoordinates {
    pub g: Vec<QSeries<Rational>>,
    pub inverse: Vec<QSeries<Rational>>,
}

impl From<&MirrorData> for MirrorCoordinates {
    fn from(m: &MirrorData) -> Self {
        MirrorCoordinates { g: m.g.clone(), inverse: m.inverse.clone() }
    }
}

impl MirrorCoordinates {
    pub fn closed(k: i64, degree: u32) -> Result<Self> {
        let g0 = conj1(k)?;
        Ok(MirrorCoordinates { g: vec![g0.mirror_series(degree)?], inverse: vec![g0.inverse_mirror_map(degree)?] })
    }

    pub fn nvars(&self) -> usize {
        self.g.len()
    }
}

/// A function `Σ linear_i t_i + series(x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Genus1Target {
    pub linear: Vec<Rational>,
    pub series: QSeries<Rational>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnsatzFit {
    pub a: Vec<Rational>,
    pub b: Vec<Rational>,
    pub c: Rational,
    /// `log J` is dependent on the other basis functions and `c` was held at `1/2`.
    pub c_fixed: bool,
    /// Equations matched, including the unused ones checked for consistency.
    pub equations: usize,
}

/// Solves for `(a, b, c)` with `Σ a_i log q_i + Σ b_i log Δ_i + c log J`
/// equal to `target` after `q = q(x)`. The system is overdetermined; any
/// equation left unsatisfied by the solution is an error. When `log J` lies
/// in the span of the other functions, `c` is held at `1/2` and the rest
/// solved.
pub fn genus1_ansatz_fit(
    components: &[QSeries<Rational>],
    jacobian: &QSeries<Rational>,
    mirror: &MirrorCoordinates,
    target: &Genus1Target,
    degree: u32,
) -> Result<AnsatzFit> {
    let r = mirror.nvars();
    if target.linear.len() != r {
        return Err(Error::VariableMismatch(format!("{} linear coefficients for {r} variables", target.linear.len())));
    }
    let in_x = |s: &QSeries<Rational>| -> Result<QSeries<Rational>> { s.log()?.compose(&mirror.inverse) };
    // each basis function as (linear part, series in x)
    let mut basis: Vec<(Vec<Rational>, QSeries<Rational>)> = Vec::new();
    for i in 0..r {
        let mut lin = vec![Rational::zero(); r];
        lin[i] = Rational::one();
        basis.push((lin, mirror.g[i].compose(&mirror.inverse)?.neg()));
    }
    for d in components {
        basis.push((vec![Rational::zero(); r], in_x(d)?));
    }
    basis.push((vec![Rational::zero(); r], in_x(jacobian)?));

    let mut rows: Vec<(String, Vec<Rational>, Rational)> = Vec::new();
    for i in 0..r {
        rows.push((format!("t_{}", i + 1), basis.iter().map(|(l, _)| l[i].clone()).collect(), target.linear[i].clone()));
    }
    for e in target.series.bound().exponents() {
        let total: u32 = e.iter().sum();
        if total == 0 || total > degree {
            continue;
        }
        rows.push((format!("x^{e:?}"), basis.iter().map(|(_, s)| s.coeff(&e)).collect(), target.series.coeff(&e)));
    }
    let n = basis.len();
    let equations = rows.len();
    match solve_overdetermined(&rows, n) {
        Ok(sol) => Ok(AnsatzFit { a: sol[..r].to_vec(), b: sol[r..n - 1].to_vec(), c: sol[n - 1].clone(), c_fixed: false, equations }),
        Err(Error::NoFit(_)) if rank(&rows, n - 1) == rank(&rows, n) => {
            let half = rat(1, 2);
            let fixed: Vec<_> = rows
                .into_iter()
                .map(|(name, mut v, rhs)| {
                    let j = v.pop().expect("jacobian column");
                    (name, v, rhs - &half * j)
                })
                .collect();
            let sol = solve_overdetermined(&fixed, n - 1)?;
            Ok(AnsatzFit { a: sol[..r].to_vec(), b: sol[r..].to_vec(), c: half, c_fixed: true, equations })
        }
        Err(e) => Err(e),
    }
}

/// Rank of the first `cols` columns.
fn rank(rows: &[(String, Vec<Rational>, Rational)], cols: usize) -> usize {
    let mut m: Vec<Vec<Rational>> = rows.iter().map(|(_, v, _)| v[..cols].to_vec()).collect();
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..m.len()).find(|i| !m[*i][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank].clone();
        for row in m.iter_mut().skip(rank + 1) {
            if !row[col].is_zero() {
                let f = &row[col] / &pivot[col];
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Picks independent rows in order, solves the square system, then checks
/// every row.
fn solve_overdetermined(rows: &[(String, Vec<Rational>, Rational)], n: usize) -> Result<Vec<Rational>> {
    // reduced rows [coeffs | rhs] with pivot columns
    let mut reduced: Vec<(usize, Vec<Rational>)> = Vec::new();
    for (_, coeffs, rhs) in rows {
        let mut v: Vec<Rational> = coeffs.iter().cloned().chain(std::iter::once(rhs.clone())).collect();
        for (p, row) in &reduced {
            if !v[*p].is_zero() {
                let f = v[*p].clone();
                for (x, y) in v.iter_mut().zip(row) {
                    *x -= &f * y;
                }
            }
        }
        let Some(p) = (0..n).find(|j| !v[*j].is_zero()) else {
            continue;
        };
        let inv = v[p].recip();
        for x in v.iter_mut() {
            *x *= &inv;
        }
        for (_, row) in reduced.iter_mut() {
            if !row[p].is_zero() {
                let f = row[p].clone();
                for (x, y) in row.iter_mut().zip(&v) {
                    *x -= &f * y;
                }
            }
        }
        reduced.push((p, v));
        if reduced.len() == n {
            break;
        }
    }
    if reduced.len() < n {
        return Err(Error::NoFit(format!("exponents undetermined: rank {} of {n}", reduced.len())));
    }
    let mut sol = vec![Rational::zero(); n];
    for (p, row) in &reduced {
        sol[*p] = row[n].clone();
    }
    for (name, coeffs, rhs) in rows {
        let lhs: Rational = coeffs.iter().zip(&sol).map(|(a, b)| a * b).sum();
        if &lhs != rhs {
            return Err(Error::NoFit(format!("{name}: {}", render(&(lhs - rhs)))));
        }
    }
    Ok(sol)
}

/// Reference `Δ` for `G_{A₂}`, a fixed constant; it is not derived here.
pub fn a2_discriminant(bound: &DegreeBound) -> QSeries<Rational> {
    let terms: [((u32, u32), i64); 13] = [
        ((0, 0), 1),
        ((1, 0), -8),
        ((0, 1), -8),
        ((1, 1), 68),
        ((2, 0), 16),
        ((0, 2), 16),
        ((1, 2), -144),
        ((2, 1), -144),
        ((2, 2), 270),
        ((3, 2), 216),
        ((2, 3), 216),
        ((3, 3), -972),
        ((4, 4), 729),
    ];
    QSeries::rational(bound.clone(), terms.iter().filter(|((a, b), _)| bound.contains(&[*a, *b])).map(|((a, b), c)| (vec![*a, *b], int(*c))))
}

/// `(t₁+t₂)/12 - 1/12 log((1-x₁)(1-x₂)(1-x₁x₂))`.
pub fn a2_genus1_target(bound: &DegreeBound) -> Result<Genus1Target> {
    let one = QSeries::constant(bound.clone(), Rational::one());
    let x1 = QSeries::variable(bound.clone(), 0);
    let x2 = QSeries::variable(bound.clone(), 1);
    let prod = one.sub(&x1)?.mul(&one.sub(&x2)?)?.mul(&one.sub(&x1.mul(&x2)?)?)?;
    Ok(Genus1Target { linear: vec![rat(1, 12), rat(1, 12)], series: prod.log()?.scale(&rat(-1, 12)) })
}

/// The A₂ mirror coordinates and jacobian from the pipeline.
pub fn a2_mirror(bound: &DegreeBound, ov: WindowOverride) -> Result<(MirrorCoordinates, QSeries<Rational>)> {
    let m = run_with(&a_n(2)?, bound, ov)?.mirror;
    Ok(((&m).into(), m.jacobian))
}

/// Compares both forms of `G_{A₂}` with the reference `Δ` and
/// exponents `(1/12, 1/12, -7/24, 1/2)`.
pub fn a2_genus1_check(bound: &DegreeBound, ov: WindowOverride) -> Result<SeriesCheck> {
    let (mirror, jac) = a2_mirror(bound, ov)?;
    a2_genus1_check_with(&mirror, &jac, bound)
}

pub fn a2_genus1_check_with(mirror: &MirrorCoordinates, jacobian: &QSeries<Rational>, bound: &DegreeBound) -> Result<SeriesCheck> {
    let target = a2_genus1_target(bound)?;
    let delta = a2_discriminant(bound).log()?;
    let g_sum = mirror.g[0].add(&mirror.g[1])?;
    let rhs = g_sum.scale(&rat(-1, 12)).add(&delta.scale(&rat(-7, 24)))?.add(&jacobian.log()?.scale(&rat(1, 2)))?;
    let rhs = rhs.compose(&mirror.inverse)?;
    Ok(compare_series("G_A2", &target.series, &rhs, bound.max_total()))
}

/// [`genus1_ansatz_fit`] for `G_{A₂}` with the reference `Δ`.
pub fn a2_genus1_fit(bound: &DegreeBound, ov: WindowOverride) -> Result<AnsatzFit> {
    let (mirror, jac) = a2_mirror(bound, ov)?;
    genus1_ansatz_fit(&[a2_discriminant(bound)], &jac, &mirror, &a2_genus1_target(bound)?, bound.max_total())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fit_k(k: i64, delta: [i64; 2], degree: u32) -> Result<AnsatzFit> {
        let g = genus1_bmodel(k, degree).unwrap();
        let mirror = MirrorCoordinates::closed(k, degree).unwrap();
        let jac = conj1(k).unwrap().qdt.recip().unwrap().to_series(degree);
        let comps: Vec<_> = delta.iter().map(|c| QSeries::from_coeffs(degree, &[int(1), int(*c)])).collect();
        genus1_ansatz_fit(&comps, &jac, &mirror, &Genus1Target { linear: vec![int(0)], series: g.in_t }, degree)
    }

    #[test]
    fn g1_coefficients() {
        let g = genus1_bmodel(1, 5).unwrap();
        assert_eq!(g.in_t.coeff_list(), vec![int(0), rat(1, 12), rat(-1, 24), rat(-29, 36), rat(499, 48), rat(-517, 5)]);
    }

    #[test]
    fn g2_coefficients() {
        let g = genus1_bmodel(2, 5).unwrap();
        assert_eq!(g.in_t.coeff_list(), vec![int(0), rat(-1, 12), rat(19, 24), rat(899, 36), rat(27259, 48), rat(733289, 60)]);
    }

    #[test]
    fn fits_recover_exponents() {
        let f = fit_k(1, [1, 4], 6).unwrap();
        assert_eq!((f.a, f.b, f.c, f.c_fixed), (vec![int(0)], vec![rat(-1, 4), rat(11, 24)], rat(1, 2), true));
        let f = fit_k(2, [-1, -9], 6).unwrap();
        assert_eq!((f.a, f.b, f.c), (vec![int(0)], vec![rat(-1, 24), rat(11, 24)], rat(1, 2)));
    }

    #[test]
    fn wrong_components_do_not_fit() {
        assert!(matches!(fit_k(1, [2, 3], 6), Err(Error::NoFit(_))));
    }

    #[test]
    fn underdetermined_is_reported() {
        assert!(matches!(fit_k(1, [1, 4], 1), Err(Error::NoFit(_))));
    }

    #[test]
    fn reference_discriminant_is_a_square() {
        let bound = DegreeBound::Box(vec![4, 4]);
        let d = QSeries::rational(
            bound.clone(),
            [(vec![0, 0], int(1)), (vec![1, 0], int(-4)), (vec![0, 1], int(-4)), (vec![1, 1], int(18)), (vec![2, 2], int(-27))],
        );
        assert_eq!(d.mul(&d).unwrap(), a2_discriminant(&bound));
    }

    #[test]
    fn a2_fit_halves_the_exponent() {
        let f = a2_genus1_fit(&DegreeBound::Box(vec![3, 3]), WindowOverride::default()).unwrap();
        assert_eq!((f.a, f.b, f.c), (vec![rat(1, 12), rat(1, 12)], vec![rat(-7, 48)], rat(1, 2)));
        assert!(!a2_genus1_check(&DegreeBound::Box(vec![2, 2]), WindowOverride::default()).unwrap().passed);
    }
}
