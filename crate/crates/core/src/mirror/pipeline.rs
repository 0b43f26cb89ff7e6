//! End-to-end driver: I-function, Birkhoff factorization, mirror maps,
//! normalization, `W`, restriction and multiple-cover inversion.

use num_traits::Zero;

use super::birkhoff::{birkhoff, Birkhoff};
use super::maps::{extract_mirror_maps, extract_w, normalize_j, restrict_w, MirrorData};
use super::polylog::{polylog_invert, GWTable};
use crate::error::Result;
use crate::exact::{int, RingElem, Window};
use crate::givental::{ifunction, GeometrySpec};
use crate::series::{DegreeBound, QSeries};

#[derive(Debug, Clone)]
pub struct PipelineRun {
    pub bound: DegreeBound,
    pub window: Window,
    pub ifunction: QSeries<RingElem>,
    pub birkhoff: Birkhoff,
    pub mirror: MirrorData,
    pub normalized: QSeries<RingElem>,
    pub w: QSeries<RingElem>,
    pub table: GWTable,
}

/// Default truncation for a degree bound of total degree `D`:
/// λ-depth `2D + 2`, ħ-window `[-(2D + 6), 2D + 6]`.
pub fn default_window(bound: &DegreeBound) -> Window {
    let d = bound.max_total();
    Window::new(2 * d + 2, -2 * (d as i32) - 6, 2 * d as i32 + 6)
}

pub fn run_pipeline(spec: &GeometrySpec, bound: &DegreeBound, window: Window) -> Result<PipelineRun> {
    let i = ifunction(spec, bound, window)?;
    let b = birkhoff(&i)?;
    let mirror = extract_mirror_maps(&b.j)?;
    let normalized = normalize_j(&b.j, &mirror)?;
    let w = extract_w(&normalized)?;
    let table = read_table(spec, &w)?;
    Ok(PipelineRun { bound: bound.clone(), window, ifunction: i, birkhoff: b, mirror, normalized, w, table })
}

/// The table and mirror data of a run.
pub fn gw_table(spec: &GeometrySpec, bound: &DegreeBound, window: Window) -> Result<(GWTable, MirrorData)> {
    let run = run_pipeline(spec, bound, window)?;
    Ok((run.table, run.mirror))
}

/// Applies every readout of `spec` to `W`, merging the results.
pub fn read_table(spec: &GeometrySpec, w: &QSeries<RingElem>) -> Result<GWTable> {
    let mut table = GWTable::default();
    for ro in &spec.readouts {
        let parts = restrict_w(w, &ro.restriction)?;
        let key = (ro.basis_monomial.clone(), ro.lambda_monomial.clone());
        let series = parts.get(&key).cloned().unwrap_or_else(|| QSeries::zero(w.bound().clone(), int(0)));
        for (beta, m) in polylog_invert(&series, 2) {
            let c = beta[ro.curve];
            if c == 0 {
                continue;
            }
            let n = &ro.scale * m / int(c as i64);
            table.merge(beta, if n.is_zero() { int(0) } else { n });
        }
    }
    Ok(table)
}
