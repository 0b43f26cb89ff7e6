//! C ABI for `localmirror`.
//!
//! Every fallible call returns an [`LmStatus`] and writes its result through an
//! out-pointer. Handles are opaque and released with the matching `*_free`.
//! Strings returned to the caller are owned by the caller and released with
//! [`lm_string_free`]. The message of the last failure on the calling thread is
//! available from [`lm_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use localmirror::cli::{parse_config, run, Command, Report, RunConfig, DEFAULT_DEGREE};
use localmirror::closed::conj1;
use localmirror::exact::rational::render;
use localmirror::mirror::{run_pipeline, GWTable};
use localmirror::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LmStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Config = 3,
    Parse = 4,
    InsufficientDepth = 5,
    Computation = 6,
    OutOfRange = 7,
    Panic = 8,
}

/// Result of a subcommand run.
pub struct LmReport {
    report: Report,
}

/// Gromov-Witten invariants keyed by curve class.
pub struct LmTable {
    entries: Vec<(Vec<u32>, CString)>,
    conflicts: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(e: &Error) -> LmStatus {
    match e {
        Error::Config(_) | Error::InvalidArgument(_) => LmStatus::Config,
        Error::Parse { .. } => LmStatus::Parse,
        Error::InsufficientDepth(_) | Error::BirkhoffSingular { .. } => LmStatus::InsufficientDepth,
        _ => LmStatus::Computation,
    }
}

fn fail(status: LmStatus, msg: impl Into<String>) -> LmStatus {
    set_error(msg);
    status
}

fn guard(f: impl FnOnce() -> LmStatus) -> LmStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => fail(LmStatus::Panic, "internal panic"),
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, LmStatus> {
    if s.is_null() {
        return Err(fail(LmStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(s).to_str().map_err(|_| fail(LmStatus::InvalidUtf8, "argument is not UTF-8"))
}

fn owned(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).map(CString::into_raw).unwrap_or(ptr::null_mut())
}

fn config_from_text(text: &str, command: Option<Command>) -> Result<RunConfig, LmStatus> {
    let lift = |e: Error| fail(status_of(&e), e.to_string());
    let pairs = parse_config(text).map_err(lift)?;
    let mut c = match command {
        Some(cmd) if !pairs.contains_key("command") => RunConfig::new(cmd),
        _ => RunConfig::from_pairs(&pairs).map_err(lift)?,
    };
    c.apply_pairs(&pairs).map_err(lift)?;
    Ok(c)
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn lm_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failure on this thread, or null. Valid until the next call.
#[no_mangle]
pub extern "C" fn lm_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Runs the subcommand described by `config` (`key = value` lines).
///
/// # Safety
/// `config` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lm_run(config: *const c_char, out: *mut *mut LmReport) -> LmStatus {
    guard(|| {
        if out.is_null() {
            return fail(LmStatus::NullPointer, "null output pointer");
        }
        *out = ptr::null_mut();
        let c = match read_str(config).and_then(|t| config_from_text(t, None)) {
            Ok(c) => c,
            Err(s) => return s,
        };
        match run(&c) {
            Ok(report) => {
                *out = Box::into_raw(Box::new(LmReport { report }));
                LmStatus::Ok
            }
            Err(e) => fail(status_of(&e), e.to_string()),
        }
    })
}

/// 1 when no check failed, 0 otherwise, -1 for a null handle.
///
/// # Safety
/// `report` must be null or a handle from [`lm_run`].
#[no_mangle]
pub unsafe extern "C" fn lm_report_passed(report: *const LmReport) -> i32 {
    report.as_ref().map_or(-1, |r| i32::from(r.report.all_passed()))
}

/// Number of checks in the report.
///
/// # Safety
/// `report` must be null or a handle from [`lm_run`].
#[no_mangle]
pub unsafe extern "C" fn lm_report_check_count(report: *const LmReport) -> usize {
    report.as_ref().map_or(0, |r| r.report.verdicts.len())
}

/// Structured report as JSON. Free with [`lm_string_free`].
///
/// # Safety
/// `report` must be null or a handle from [`lm_run`].
#[no_mangle]
pub unsafe extern "C" fn lm_report_json(report: *const LmReport) -> *mut c_char {
    report.as_ref().map_or(ptr::null_mut(), |r| owned(r.report.to_json()))
}

/// Aligned text rendering of the report. Free with [`lm_string_free`].
///
/// # Safety
/// `report` must be null or a handle from [`lm_run`].
#[no_mangle]
pub unsafe extern "C" fn lm_report_text(report: *const LmReport) -> *mut c_char {
    report.as_ref().map_or(ptr::null_mut(), |r| owned(r.report.to_text()))
}

/// # Safety
/// `report` must be null or a handle from [`lm_run`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lm_report_free(report: *mut LmReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// Runs the pipeline for the geometry described by `config` and keeps its table.
///
/// # Safety
/// `config` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lm_gw_table(config: *const c_char, out: *mut *mut LmTable) -> LmStatus {
    guard(|| {
        if out.is_null() {
            return fail(LmStatus::NullPointer, "null output pointer");
        }
        *out = ptr::null_mut();
        let c = match read_str(config).and_then(|t| config_from_text(t, Some(Command::Gw))) {
            Ok(c) => c,
            Err(s) => return s,
        };
        let table = (|| -> localmirror::Result<GWTable> {
            let spec = c.spec()?;
            let bound = c.bound(spec.nrows(), DEFAULT_DEGREE)?;
            Ok(run_pipeline(&spec, &bound, c.window_override().window(&bound))?.table)
        })();
        match table {
            Ok(t) => {
                let entries = t.entries.iter().map(|(b, n)| (b.clone(), CString::new(render(n)).unwrap_or_default())).collect();
                *out = Box::into_raw(Box::new(LmTable { entries, conflicts: t.conflicts.len() }));
                LmStatus::Ok
            }
            Err(e) => fail(status_of(&e), e.to_string()),
        }
    })
}

/// # Safety
/// `table` must be null or a handle from [`lm_gw_table`].
#[no_mangle]
pub unsafe extern "C" fn lm_table_len(table: *const LmTable) -> usize {
    table.as_ref().map_or(0, |t| t.entries.len())
}

/// Number of classes whose readouts disagreed.
///
/// # Safety
/// `table` must be null or a handle from [`lm_gw_table`].
#[no_mangle]
pub unsafe extern "C" fn lm_table_conflicts(table: *const LmTable) -> usize {
    table.as_ref().map_or(0, |t| t.conflicts)
}

/// Copies the class of entry `index` into `degree` (capacity `cap`) and its
/// invariant, rendered `n/d`, into `*value`. The value string is owned by the
/// table. `*len` receives the number of variables.
///
/// # Safety
/// `table` must be a handle from [`lm_gw_table`]; `degree` must hold `cap`
/// values; `len` and `value` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn lm_table_entry(
    table: *const LmTable,
    index: usize,
    degree: *mut u32,
    cap: usize,
    len: *mut usize,
    value: *mut *const c_char,
) -> LmStatus {
    guard(|| {
        let Some(t) = table.as_ref() else {
            return fail(LmStatus::NullPointer, "null table");
        };
        if len.is_null() || value.is_null() || (degree.is_null() && cap > 0) {
            return fail(LmStatus::NullPointer, "null output pointer");
        }
        let Some((b, n)) = t.entries.get(index) else {
            return fail(LmStatus::OutOfRange, format!("index {index} out of range"));
        };
        *len = b.len();
        if cap < b.len() {
            return fail(LmStatus::OutOfRange, format!("class needs {} slots", b.len()));
        }
        ptr::copy_nonoverlapping(b.as_ptr(), degree, b.len());
        *value = n.as_ptr();
        LmStatus::Ok
    })
}

/// # Safety
/// `table` must be null or a handle from [`lm_gw_table`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lm_table_free(table: *mut LmTable) {
    if !table.is_null() {
        drop(Box::from_raw(table));
    }
}

/// Coefficients `q^0..q^degree` of the closed-form mirror map of `X_k`,
/// comma separated. Free with [`lm_string_free`].
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lm_conj1_mirror_series(k: i64, degree: u32, out: *mut *mut c_char) -> LmStatus {
    guard(|| {
        if out.is_null() {
            return fail(LmStatus::NullPointer, "null output pointer");
        }
        *out = ptr::null_mut();
        match conj1(k).and_then(|g| g.mirror_series(degree)) {
            Ok(s) => {
                *out = owned(s.coeff_list().iter().map(render).collect::<Vec<_>>().join(","));
                LmStatus::Ok
            }
            Err(e) => fail(status_of(&e), e.to_string()),
        }
    })
}

/// # Safety
/// `s` must be null or a string returned by this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lm_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
