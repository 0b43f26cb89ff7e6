//! Comparisons between pipeline output and the closed forms.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::check::{compare_series, Verdict};
use super::genus0::conj1;
use super::prepotential::{an_invariants, an_prepotential, t_derivative, trivalent_invariants, trivalent_prepotential};
use crate::error::Result;
use crate::exact::rational::render;
use crate::exact::{int, rat, Key, Rational, RingElem, Window};
use crate::givental::{a_n, annihilation_check, d1, ifunction, parse_operator, trivalent, x_k, x_k_factored, y_k, Action, GeometrySpec, ThetaOperator};
use crate::mirror::{default_window, restrict_w, run_pipeline, GWTable, PipelineRun};
use crate::series::{DegreeBound, QSeries};

/// Replacements for parts of the default truncation window.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct WindowOverride {
    pub lambda_depth: Option<u32>,
    pub hbar: Option<(i32, i32)>,
}

impl WindowOverride {
    pub fn window(&self, bound: &DegreeBound) -> Window {
        let mut w = default_window(bound);
        if let Some(l) = self.lambda_depth {
            w.lambda_depth = l;
        }
        if let Some((lo, hi)) = self.hbar {
            w.hbar_min = lo;
            w.hbar_max = hi;
        }
        w
    }

    pub fn is_default(&self) -> bool {
        self.lambda_depth.is_none() && self.hbar.is_none()
    }
}

pub fn run_with(spec: &GeometrySpec, bound: &DegreeBound, ov: WindowOverride) -> Result<PipelineRun> {
    run_pipeline(spec, bound, ov.window(bound))
}

/// Pipeline mirror map of `x_k_factored(k)`, antidiagonal, against
/// `k(k+2) log(1 + εq)`.
pub fn verify_conj1_mirror(k: i64, degree: u32, ov: WindowOverride) -> Result<Verdict> {
    let g0 = conj1(k)?;
    let run = run_with(&x_k_factored(k, Action::Antidiagonal)?, &DegreeBound::single(degree), ov)?;
    Ok(compare_series(&format!("mirror map k={k}"), &run.mirror.g[0], &g0.mirror_series(degree)?, degree).into())
}

/// Coefficient series of `key` in a ring-valued series.
pub fn coefficient_series(s: &QSeries<RingElem>, key: &Key) -> QSeries<Rational> {
    s.map_into(Rational::zero(), |c| c.coefficient(key))
}

/// The scalar `1/ħ` part of the antidiagonal `O(1) ⊕ O(-1)³` run equals `λ log(1+q)`.
pub fn verify_easyj(degree: u32, ov: WindowOverride) -> Result<Verdict> {
    let run = run_with(&x_k_factored(1, Action::Antidiagonal)?, &DegreeBound::single(degree), ov)?;
    let eq = &run.mirror.equivariant;
    let key = Key { basis: 0, lambda: vec![1], hbar: 0 };
    let stray = eq.terms().find_map(|(d, c)| c.terms().find(|(k, v)| **k != key && !v.is_zero()).map(|(_, v)| (d.clone(), v.clone())));
    if let Some((d, v)) = stray {
        return Ok(Verdict::new("equivariant mirror map", false, Some(d), render(&v)));
    }
    let want = QSeries::from_coeffs(degree, &[int(1), int(1)]).log()?;
    Ok(compare_series("equivariant mirror map", &coefficient_series(eq, &key), &want, degree).into())
}

/// Table entries of `got` against `want` at every nonzero class of `bound`;
/// readout conflicts fail.
pub fn compare_tables(name: &str, got: &GWTable, want: &BTreeMap<Vec<u32>, Rational>, bound: &DegreeBound) -> Verdict {
    if let Some((beta, a, b)) = got.conflicts.first() {
        return Verdict::new(&format!("{name} (readout conflict)"), false, Some(beta.clone()), render(&(a - b)));
    }
    for e in bound.exponents() {
        if e.iter().all(|x| *x == 0) {
            continue;
        }
        let w = want.get(&e).cloned().unwrap_or_else(Rational::zero);
        let g = got.get(&e);
        if g != w {
            return Verdict::new(name, false, Some(e), render(&(g - w)));
        }
    }
    Verdict::pass(name)
}

/// Tables of `x_k(k)` expanded directly and of `x_k_factored(k)`.
pub fn verify_prop1(k: i64, action: Action, degree: u32, ov: WindowOverride) -> Result<Verdict> {
    let bound = DegreeBound::single(degree);
    let direct = run_with(&x_k(k, action)?, &bound, ov)?;
    let factored = run_with(&x_k_factored(k, action)?, &bound, ov)?;
    let name = format!("x_k({k}) vs x_k_factored({k}) {action}");
    Ok(compare_tables(&name, &direct.table, &factored.table.nonzero(), &bound))
}

fn operator(src: &str, s: &QSeries<RingElem>) -> Result<ThetaOperator> {
    parse_operator(src, s.zero_coeff().ring(), s.nvars(), true)
}

fn annihilates(name: &str, src: &str, s: &QSeries<RingElem>, degree: u32) -> Result<Verdict> {
    Ok(Verdict::from(annihilation_check(&operator(src, s)?, s, degree)?).renamed(name))
}

fn identity(name: &str, a: &ThetaOperator, b: &ThetaOperator) -> Result<Verdict> {
    let diff = a.sub(b)?;
    Ok(if diff.is_zero() { Verdict::pass(name) } else { Verdict::new(name, false, None, diff.to_string()) })
}

/// Operators of the `X_{-1}`, `X_0`, `X_1'` and `D_1` I-functions.
pub fn verify_operators(degree: u32, ov: WindowOverride) -> Result<Vec<Verdict>> {
    let bound = DegreeBound::single(degree);
    let window = ov.window(&bound);
    let mut out = Vec::new();

    let i = ifunction(&x_k(-1, Action::Generic)?, &bound, window)?;
    out.push(annihilates("D_-1 annihilates I(X_-1)", "t^2 - q*(t - l1)*(t - l2)", &i, degree)?);

    let i = ifunction(&x_k(0, Action::Antidiagonal)?, &bound, window)?;
    out.push(annihilates("D_0 annihilates I(X_0)", "t^2 - q*(2t + l)*(2t + l + h)", &i, degree)?);

    let i = ifunction(&x_k_factored(1, Action::Antidiagonal)?, &bound, window)?;
    let composed = operator("(t^2 + q*(t + l)^2)*(t + l)", &i)?;
    let expanded = operator("t^2*(t + l) - q*(-t - l)^3", &i)?;
    out.push(identity("D' composition", &composed, &expanded)?);
    out.push(Verdict::from(annihilation_check(&expanded, &i, degree)?).renamed("D' annihilates I'"));

    let i = ifunction(&d1(Action::Antidiagonal)?, &bound, window)?;
    let composed = operator("(t^2 + q*(-2t - l)*(-2t - l - h))*(t + l)", &i)?;
    let expanded = operator("t^2*(t + l) - q*(-t - l)*(-2t - l)*(-2t - l - h)", &i)?;
    out.push(identity("D_D1 factorization", &composed, &expanded)?);
    out.push(Verdict::from(annihilation_check(&expanded, &i, degree)?).renamed("D_D1 annihilates I(D1)"));
    Ok(out)
}

/// Restricted `W` part of readout `curve` at `(basis monomial, λ-exponents)`.
fn restricted_part(run: &PipelineRun, spec: &GeometrySpec, curve: usize, basis: Vec<u32>, lambda: Vec<i32>) -> Result<QSeries<Rational>> {
    let ro = spec.readouts.iter().find(|r| r.curve == curve).expect("readout for curve");
    let parts = restrict_w(&run.w, &ro.restriction)?;
    Ok(parts.get(&(basis, lambda)).cloned().unwrap_or_else(|| QSeries::zero(run.bound.clone(), Rational::zero())))
}

/// A₂: the restricted `W` at `λ₂ = p₂ = 0` against `λ₁² ∂₁𝓕 + p₁λ₁(2∂₁𝓕 - ∂₂𝓕)`,
/// and the table against the three curve classes.
pub fn verify_a2(bound: &DegreeBound, ov: WindowOverride) -> Result<Vec<Verdict>> {
    let spec = a_n(2)?;
    let run = run_with(&spec, bound, ov)?;
    let f = an_prepotential(2, bound)?;
    let (d1f, d2f) = (t_derivative(&f, 0), t_derivative(&f, 1));
    let deg = bound.max_total();
    let lam2 = restricted_part(&run, &spec, 0, vec![0, 0], vec![2, 0])?;
    let p_lam = restricted_part(&run, &spec, 0, vec![1, 0], vec![1, 0])?;
    Ok(vec![
        compare_series("A2 W l1^2 part", &lam2, &d1f, deg).into(),
        compare_series("A2 W p1 l1 part", &p_lam, &d1f.scale(&int(2)).sub(&d2f)?, deg).into(),
        compare_tables("A2 GW table", &run.table, &an_invariants(2), bound),
    ])
}

/// Trivalent curve: restricted `W` at `λ₁ = p₂ = p₃ = 0` against the
/// reference derivative combinations, and the table against `𝓕_k`.
pub fn verify_trivalent(action: Action, bound: &DegreeBound, ov: WindowOverride) -> Result<Vec<Verdict>> {
    let spec = trivalent(action)?;
    let run = run_with(&spec, bound, ov)?;
    let f = trivalent_prepotential(action, bound)?;
    let d: Vec<QSeries<Rational>> = (0..3).map(|i| t_derivative(&f, i)).collect();
    let p_want = match action {
        Action::Antidiagonal => d[2].sub(&d[1])?,
        _ => d[0].scale(&int(2)).sub(&d[1])?.sub(&d[2])?,
    };
    let deg = bound.max_total();
    let lam2 = restricted_part(&run, &spec, 0, vec![0, 0, 0], vec![2])?;
    let p_lam = restricted_part(&run, &spec, 0, vec![1, 0, 0], vec![1])?;
    Ok(vec![
        compare_series(&format!("trivalent {action} W l^2 part"), &lam2, &d[0], deg).into(),
        compare_series(&format!("trivalent {action} W p1 l part"), &p_lam, &p_want, deg).into(),
        compare_tables(&format!("trivalent {action} GW table"), &run.table, &trivalent_invariants(action)?, bound),
    ])
}

/// `f(q) = Σ_{n>0} (2n-1)!/(n!)² qⁿ`.
pub fn f_series(degree: u32) -> QSeries<Rational> {
    let mut c = vec![Rational::zero()];
    let mut v = rat(1, 1);
    c.push(v.clone());
    for n in 2..=degree as i64 {
        // ratio (2n-1)(2n-2)/n²
        v *= rat((2 * n - 1) * (2 * n - 2), n * n);
        c.push(v.clone());
    }
    QSeries::from_coeffs(degree, &c)
}

/// `X_0` with the diagonal action against `Y_0`: mirror maps `2f`, `-f`,
/// the scalar `1/ħ` part `-λf` and equal tables.
pub fn verify_conj3(degree: u32, ov: WindowOverride) -> Result<Vec<Verdict>> {
    let xb = DegreeBound::single(degree);
    let yb = DegreeBound::Box(vec![degree, degree]);
    let x = run_with(&x_k(0, Action::Diagonal)?, &xb, ov)?;
    let y = run_with(&y_k(0)?, &yb, ov)?;
    let f = f_series(degree);
    let on_q1 = |s: &QSeries<Rational>| QSeries::rational(yb.clone(), s.terms().map(|(e, c)| (vec![e[0], 0], c.clone())));
    let lam = Key { basis: 0, lambda: vec![1], hbar: 0 };
    let y_table: BTreeMap<Vec<u32>, Rational> = x.table.nonzero().into_iter().map(|(e, c)| (vec![e[0], 0], c)).collect();
    Ok(vec![
        compare_series("X0 mirror map", &x.mirror.g[0], &f.scale(&int(2)), degree).into(),
        compare_series("X0 equivariant part", &coefficient_series(&x.mirror.equivariant, &lam), &f.neg(), degree).into(),
        compare_series("Y0 mirror map 1", &y.mirror.g[0], &on_q1(&f.scale(&int(2))), yb.max_total()).into(),
        compare_series("Y0 mirror map 2", &y.mirror.g[1], &on_q1(&f.neg()), yb.max_total()).into(),
        compare_tables("X0 vs Y0 GW table", &y.table, &y_table, &yb),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f_values() {
        assert_eq!(f_series(4).coeff_list(), vec![int(0), int(1), rat(3, 2), rat(10, 3), rat(35, 4)]);
    }

    #[test]
    fn small_checks() {
        let ov = WindowOverride::default();
        assert!(verify_conj1_mirror(1, 3, ov).unwrap().passed());
        assert!(verify_easyj(3, ov).unwrap().passed());
        assert!(verify_prop1(1, Action::Antidiagonal, 2, ov).unwrap().passed());
        for v in verify_operators(2, ov).unwrap() {
            assert!(v.passed(), "{v:?}");
        }
        for v in verify_conj3(2, ov).unwrap() {
            assert!(v.passed(), "{v:?}");
        }
    }

    #[test]
    fn shallow_window_is_detected() {
        let ov = WindowOverride { lambda_depth: Some(2), hbar: None };
        assert!(matches!(verify_conj1_mirror(1, 4, ov), Err(crate::Error::InsufficientDepth(_))));
    }

    #[test]
    fn table_mismatch_is_located() {
        let mut t = GWTable::default();
        t.merge(vec![1], int(1));
        let want: BTreeMap<_, _> = [(vec![1], int(1)), (vec![2], int(3))].into_iter().collect();
        let v = compare_tables("t", &t, &want, &DegreeBound::single(3));
        assert_eq!((v.passed(), v.at, v.residual), (false, Some(vec![2]), "-3/1".to_string()));
    }
}
