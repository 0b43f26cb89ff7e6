use std::ffi::{CStr, CString};
use std::ptr;

use localmirror_ffi::*;

fn take(s: *mut std::ffi::c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { lm_string_free(s) };
    out
}

fn last_error() -> String {
    let p = lm_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
}

#[test]
fn version_is_nonempty() {
    let v = unsafe { CStr::from_ptr(lm_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn run_conj1_report() {
    let cfg = CString::new("command = verify-conj1\nk = 2\ndegree = 4\n").unwrap();
    let mut r = ptr::null_mut();
    assert_eq!(unsafe { lm_run(cfg.as_ptr(), &mut r) }, LmStatus::Ok);
    assert!(lm_last_error().is_null());
    assert_eq!(unsafe { lm_report_passed(r) }, 1);
    assert!(unsafe { lm_report_check_count(r) } >= 4);
    let json = take(unsafe { lm_report_json(r) });
    assert!(json.contains("\"command\": \"verify-conj1\""));
    assert!(json.contains("\"passed\": true"));
    let text = take(unsafe { lm_report_text(r) });
    assert!(text.trim_end().ends_with("PASS"));
    unsafe { lm_report_free(r) };
}

#[test]
fn failing_report_is_not_an_error() {
    let cfg = CString::new("command = a2-genus1\ndegree = 2,2\n").unwrap();
    let mut r = ptr::null_mut();
    assert_eq!(unsafe { lm_run(cfg.as_ptr(), &mut r) }, LmStatus::Ok);
    assert_eq!(unsafe { lm_report_passed(r) }, 0);
    unsafe { lm_report_free(r) };
}

#[test]
fn errors_map_to_status_codes() {
    let mut r = ptr::null_mut();
    let missing = CString::new("degree = 3\n").unwrap();
    assert_eq!(unsafe { lm_run(missing.as_ptr(), &mut r) }, LmStatus::Config);
    assert!(last_error().contains("command"));
    assert!(r.is_null());

    let bad = CString::new("command = gw\ngeometry = [1, 2\n").unwrap();
    assert_eq!(unsafe { lm_run(bad.as_ptr(), &mut r) }, LmStatus::Parse);

    let shallow = CString::new("command = verify-prop1\nlambda_depth = 1\n").unwrap();
    assert_eq!(unsafe { lm_run(shallow.as_ptr(), &mut r) }, LmStatus::InsufficientDepth);
    assert!(last_error().contains("insufficient depth"));

    assert_eq!(unsafe { lm_run(ptr::null(), &mut r) }, LmStatus::NullPointer);
    assert_eq!(unsafe { lm_run(missing.as_ptr(), ptr::null_mut()) }, LmStatus::NullPointer);

    let bytes = [0xffu8, 0];
    assert_eq!(unsafe { lm_run(bytes.as_ptr().cast(), &mut r) }, LmStatus::InvalidUtf8);
}

#[test]
fn a2_table_entries() {
    let cfg = CString::new("geometry = a_n\nn = 2\ndegree = 2,2\n").unwrap();
    let mut t = ptr::null_mut();
    assert_eq!(unsafe { lm_gw_table(cfg.as_ptr(), &mut t) }, LmStatus::Ok);
    assert_eq!(unsafe { lm_table_conflicts(t) }, 0);
    let n = unsafe { lm_table_len(t) };
    assert_eq!(n, 8);
    let mut seen = Vec::new();
    for i in 0..n {
        let mut deg = [0u32; 2];
        let mut len = 0usize;
        let mut val = ptr::null();
        assert_eq!(unsafe { lm_table_entry(t, i, deg.as_mut_ptr(), 2, &mut len, &mut val) }, LmStatus::Ok);
        assert_eq!(len, 2);
        seen.push((deg, unsafe { CStr::from_ptr(val) }.to_str().unwrap().to_string()));
    }
    assert!(seen.contains(&([1, 0], "1/1".to_string())));
    assert!(seen.contains(&([1, 1], "1/1".to_string())));
    assert!(seen.contains(&([2, 2], "0/1".to_string())));

    let mut deg = [0u32; 1];
    let mut len = 0usize;
    let mut val = ptr::null();
    assert_eq!(unsafe { lm_table_entry(t, 0, deg.as_mut_ptr(), 1, &mut len, &mut val) }, LmStatus::OutOfRange);
    assert_eq!(len, 2);
    assert_eq!(unsafe { lm_table_entry(t, n, deg.as_mut_ptr(), 1, &mut len, &mut val) }, LmStatus::OutOfRange);
    unsafe { lm_table_free(t) };
}

#[test]
fn conj1_series() {
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { lm_conj1_mirror_series(1, 3, &mut s) }, LmStatus::Ok);
    assert_eq!(take(s), "0/1,3/1,-3/2,1/1");
    assert_eq!(unsafe { lm_conj1_mirror_series(0, 3, &mut s) }, LmStatus::Config);
    assert!(s.is_null());
}

#[test]
fn null_handles_are_tolerated() {
    unsafe {
        lm_report_free(ptr::null_mut());
        lm_table_free(ptr::null_mut());
        lm_string_free(ptr::null_mut());
        assert_eq!(lm_report_passed(ptr::null()), -1);
        assert!(lm_report_json(ptr::null()).is_null());
        assert_eq!(lm_table_len(ptr::null()), 0);
    }
}

#[test]
fn header_declares_every_export() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/localmirror.h")).unwrap();
    let src = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/src/lib.rs")).unwrap();
    let names: Vec<&str> = src.lines().filter_map(|l| l.split("extern \"C\" fn ").nth(1)).map(|r| r.split('(').next().unwrap()).collect();
    assert!(names.len() >= 12);
    for n in names {
        assert!(header.contains(&format!("{n}(")), "{n} missing from header");
    }
}

#[test]
fn header_compiles_as_c() {
    let dir = std::env::temp_dir().join(format!("lm-header-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let src = dir.join("probe.c");
    std::fs::write(&src, "#include \"localmirror.h\"\nint main(void) { LmStatus s = LM_STATUS_OK; return (int)s; }\n").unwrap();
    let status =
        std::process::Command::new("cc").args(["-fsyntax-only", "-Wall", "-Werror", "-I", concat!(env!("CARGO_MANIFEST_DIR"), "/include")]).arg(&src).status();
    let _ = std::fs::remove_dir_all(&dir);
    match status {
        Ok(s) => assert!(s.success()),
        Err(_) => eprintln!("no C compiler; header not compiled"),
    }
}
