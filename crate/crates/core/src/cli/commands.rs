//! One function per subcommand, each producing a [`Report`].

use serde_json::{json, Value};

use super::config::{Command, RunConfig, DEFAULT_DEGREE};
use super::report::{coefficient_list, rational_value, series_value, table_value, window_value, Report};
use crate::closed::{
    a2_genus1_check, a2_genus1_fit, an_invariants, an_prepotential, compare_tables, conj1, ftt_identity_check, genus1_ansatz_fit, genus1_bmodel, pf_check,
    pf_operator, run_with, triple_intersection, trivalent_prepotential, verify_a2, verify_conj1_mirror, verify_conj3, verify_easyj, verify_operators,
    verify_prop1, verify_trivalent, yukawa_check, AnsatzFit, Genus1Target, MirrorCoordinates, Verdict,
};
use crate::error::{Error, Result};
use crate::exact::{int, rat, Rational};
use crate::givental::Action;
use crate::mirror::run_pipeline;
use crate::series::{DegreeBound, QSeries};

/// Reference `G_1` and `G_2` coefficients through `e^{5t}`.
const REFERENCE_G: [(i64, [(i64, i64); 5]); 2] =
    [(1, [(1, 12), (-1, 24), (-29, 36), (499, 48), (-517, 5)]), (2, [(-1, 12), (19, 24), (899, 36), (27259, 48), (733289, 60)])];

pub fn run(c: &RunConfig) -> Result<Report> {
    c.validate()?;
    let mut r = Report::new(c.command.name(), c.echo());
    match c.command {
        Command::Gw => gw(c, &mut r)?,
        Command::VerifyConj1 => verify_conj1(c, &mut r)?,
        Command::VerifyConj2 => verify_conj2(c, &mut r)?,
        Command::VerifyProp1 => prop1(c, &mut r)?,
        Command::VerifyConj3 => conj3(c, &mut r)?,
        Command::PfCheck => pf(c, &mut r)?,
        Command::Genus1Fit => genus1_fit(c, &mut r)?,
        Command::An => an(c, &mut r)?,
        Command::Trivalent => trivalent_cmd(c, &mut r)?,
        Command::A2Genus1 => a2_genus1(c, &mut r)?,
    }
    Ok(r)
}

fn ks(c: &RunConfig, default: &[i64]) -> Vec<i64> {
    c.k.map_or_else(|| default.to_vec(), |k| vec![k])
}

fn actions(c: &RunConfig) -> Result<Vec<Action>> {
    match c.action {
        None => Ok(vec![Action::Antidiagonal, Action::Diagonal]),
        Some(Action::Generic) => Err(Error::Config(format!("{} needs the diagonal or antidiagonal action", c.command))),
        Some(a) => Ok(vec![a]),
    }
}

fn bound_value(b: &DegreeBound) -> Value {
    match b {
        DegreeBound::Total { nvars, degree } => json!({"total_degree": degree, "nvars": nvars}),
        DegreeBound::Box(d) => json!({"box": d}),
    }
}

fn truncate(c: &RunConfig, r: &mut Report, b: &DegreeBound) {
    r.truncation("degree", bound_value(b));
    r.truncation("window", window_value(&c.window_override().window(b)));
}

fn gw(c: &RunConfig, r: &mut Report) -> Result<()> {
    let spec = c.spec()?;
    let bound = c.bound(spec.nrows(), DEFAULT_DEGREE)?;
    truncate(c, r, &bound);
    let run = run_pipeline(&spec, &bound, c.window_override().window(&bound))?;
    r.result("geometry", Value::String(spec.name.clone()));
    let maps: Vec<Value> = run.mirror.g.iter().map(|g| if spec.nrows() == 1 { coefficient_list(g) } else { series_value(g) }).collect();
    r.result("mirror_maps", Value::Array(maps));
    r.result("gw_table", table_value(&run.table));
    if spec.readouts.is_empty() {
        r.verdict(Verdict::skipped("readouts agree", "no readout"));
    } else if let Some((b, x, y)) = run.table.conflicts.first() {
        r.verdict(Verdict::new("readouts agree", false, Some(b.clone()), crate::exact::rational::render(&(x - y))));
    } else {
        r.verdict(Verdict::pass("readouts agree"));
    }
    Ok(())
}

fn verify_conj1(c: &RunConfig, r: &mut Report) -> Result<()> {
    let d = c.single_degree(DEFAULT_DEGREE)?;
    truncate(c, r, &DegreeBound::single(d));
    for k in ks(c, &[1, 2, 3, 4]) {
        let g0 = conj1(k)?;
        r.result(&format!("k={k} mirror_series"), coefficient_list(&g0.mirror_series(d)?));
        r.result(&format!("k={k} triple"), rational_value(&g0.triple));
        r.verdict(verify_conj1_mirror(k, d, c.window_override())?);
        if k == 1 {
            r.verdict(verify_easyj(d, c.window_override())?);
        }
        r.verdict(yukawa_check(k, d)?.into());
        r.verdict(ftt_identity_check(k, d)?.into());
        r.verdict(Verdict::equal(&format!("triple·k(k+2) k={k}"), &(triple_intersection(k)? * int(k * (k + 2))), &int(-1)));
    }
    Ok(())
}

/// Expected exponents `(b₁, b₂, c)` for `Δ = (1+εq, 1+ε(k+1)²q)`.
fn conj2_exponents(k: i64) -> [Rational; 3] {
    [rat(-5, 12) + rat((k + 1) * (k + 1), 24), rat(11, 24), rat(1, 2)]
}

fn fit_k(k: i64, d: u32) -> Result<AnsatzFit> {
    let g0 = conj1(k)?;
    let e = g0.epsilon;
    let comps = [QSeries::from_coeffs(d, &[int(1), int(e)]), QSeries::from_coeffs(d, &[int(1), int(e * (k + 1) * (k + 1))])];
    let jac = g0.qdt.recip()?.to_series(d);
    let target = Genus1Target { linear: vec![int(0)], series: genus1_bmodel(k, d)?.in_t };
    genus1_ansatz_fit(&comps, &jac, &MirrorCoordinates::closed(k, d)?, &target, d)
}

fn fit_value(f: &AnsatzFit) -> Value {
    json!({
        "a": f.a.iter().map(rational_value).collect::<Vec<_>>(),
        "b": f.b.iter().map(rational_value).collect::<Vec<_>>(),
        "c": rational_value(&f.c),
        "c_fixed": f.c_fixed,
        "equations": f.equations,
    })
}

fn fit_verdicts(r: &mut Report, k: i64, d: u32) -> Result<()> {
    let name = format!("genus-1 exponents k={k}");
    match fit_k(k, d) {
        Ok(f) => {
            r.result(&format!("k={k} fit"), fit_value(&f));
            let want = conj2_exponents(k);
            let got = [f.b[0].clone(), f.b[1].clone(), f.c.clone()];
            r.verdict(Verdict::equal(&format!("{name} a"), &f.a[0], &int(0)));
            for (i, label) in ["b(1+εq)", "b(1+ε(k+1)²q)", "c"].iter().enumerate() {
                r.verdict(Verdict::equal(&format!("{name} {label}"), &got[i], &want[i]));
            }
        }
        Err(Error::NoFit(why)) => r.verdict(Verdict::new(&name, false, None, why)),
        Err(e) => return Err(e),
    }
    Ok(())
}

fn verify_conj2(c: &RunConfig, r: &mut Report) -> Result<()> {
    let d = c.single_degree(DEFAULT_DEGREE)?;
    truncate(c, r, &DegreeBound::single(d));
    for k in ks(c, &[1, 2]) {
        let g = genus1_bmodel(k, d)?;
        r.result(&format!("k={k} G(t)"), coefficient_list(&g.in_t));
        match REFERENCE_G.iter().find(|(kk, _)| *kk == k) {
            Some((_, reference)) => {
                for (i, (p, q)) in reference.iter().enumerate().take(d as usize) {
                    let e = i as u32 + 1;
                    r.verdict(Verdict::equal(&format!("G_{k} coefficient e^{e}t"), &g.in_t.coeff(&[e]), &rat(*p, *q)));
                }
            }
            None => r.verdict(Verdict::skipped(&format!("G_{k} reference coefficients"), "no reference values")),
        }
        fit_verdicts(r, k, d.max(5))?;
    }
    Ok(())
}

fn prop1(c: &RunConfig, r: &mut Report) -> Result<()> {
    let d = c.single_degree(3)?;
    truncate(c, r, &DegreeBound::single(d));
    for k in ks(c, &[1, 2]) {
        for a in actions(c)? {
            r.verdict(verify_prop1(k, a, d, c.window_override())?);
        }
    }
    Ok(())
}

fn conj3(c: &RunConfig, r: &mut Report) -> Result<()> {
    let d = c.single_degree(4)?;
    truncate(c, r, &DegreeBound::Box(vec![d, d]));
    for v in verify_conj3(d, c.window_override())? {
        r.verdict(v);
    }
    Ok(())
}

fn pf(c: &RunConfig, r: &mut Report) -> Result<()> {
    let d = c.single_degree(DEFAULT_DEGREE)?;
    truncate(c, r, &DegreeBound::single(d));
    for k in ks(c, &[1, 2, 3, 4]) {
        r.result(&format!("k={k} operator"), Value::String(pf_operator(k)?.to_string()));
        for v in pf_check(k, d)? {
            r.verdict(v.into());
        }
    }
    if c.k.is_none() {
        for v in verify_operators(d.min(4), c.window_override())? {
            r.verdict(v);
        }
    }
    Ok(())
}

fn genus1_fit(c: &RunConfig, r: &mut Report) -> Result<()> {
    if c.geometry.as_deref() == Some("a_n") {
        if c.n.is_some_and(|n| n != 2) {
            return Err(Error::Config("genus1-fit supports a_n with n = 2".into()));
        }
        let b = c.bound(2, 3)?;
        truncate(c, r, &b);
        let f = a2_genus1_fit(&b, c.window_override())?;
        r.result("a2 fit", fit_value(&f));
        let want = [rat(1, 12), rat(1, 12), rat(-7, 24), rat(1, 2)];
        let got = [f.a[0].clone(), f.a[1].clone(), f.b[0].clone(), f.c.clone()];
        for (i, label) in ["a1", "a2", "b(Δ)", "c"].iter().enumerate() {
            r.verdict(Verdict::equal(&format!("A2 genus-1 exponent {label}"), &got[i], &want[i]));
        }
        return Ok(());
    }
    let d = c.single_degree(DEFAULT_DEGREE)?;
    truncate(c, r, &DegreeBound::single(d));
    for k in ks(c, &[1, 2]) {
        fit_verdicts(r, k, d)?;
    }
    Ok(())
}

fn an(c: &RunConfig, r: &mut Report) -> Result<()> {
    let n = c.n.unwrap_or(2);
    let b = c.bound(n, 3)?;
    truncate(c, r, &b);
    r.result("prepotential", series_value(&an_prepotential(n, &b)?));
    if n == 2 {
        for v in verify_a2(&b, c.window_override())? {
            r.verdict(v);
        }
    } else {
        let run = run_with(&crate::givental::a_n(n)?, &b, c.window_override())?;
        r.result("gw_table", table_value(&run.table));
        r.verdict(compare_tables(&format!("A{n} GW table"), &run.table, &an_invariants(n), &b));
    }
    Ok(())
}

fn trivalent_cmd(c: &RunConfig, r: &mut Report) -> Result<()> {
    let b = c.bound(3, 2)?;
    truncate(c, r, &b);
    for a in actions(c)? {
        r.result(&format!("{a} prepotential"), series_value(&trivalent_prepotential(a, &b)?));
        for v in verify_trivalent(a, &b, c.window_override())? {
            r.verdict(v);
        }
    }
    Ok(())
}

fn a2_genus1(c: &RunConfig, r: &mut Report) -> Result<()> {
    let b = c.bound(2, 3)?;
    truncate(c, r, &b);
    r.verdict(a2_genus1_check(&b, c.window_override())?.into());
    if let Ok(f) = a2_genus1_fit(&b, c.window_override()) {
        r.result("fit with reference Δ", fit_value(&f));
    }
    Ok(())
}
