use std::path::PathBuf;
use std::process::Command;

use localmirror::cli::main_with;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("localmirror").chain(args.iter().copied());
    let code = main_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn scratch_dir(tag: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("localmirror-cli-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d
}

#[test]
fn conj1_text_table() {
    let (code, out, err) = run(&["verify-conj1", "--k", "3", "--degree", "4", "--format", "text"]);
    assert_eq!(code, 0, "{err}");
    assert!(out.contains("mirror map k=3"));
    assert!(out.contains("k=3 mirror_series: [0/1, 15/1, -15/2, 5/1, -15/4]"));
    assert!(out.trim_end().ends_with("PASS"));
}

#[test]
fn json_report_shape() {
    let (code, out, _) = run(&["verify-conj1", "--k", "1", "--degree", "3", "--format", "json-like"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["command"], "verify-conj1");
    assert_eq!(v["passed"], true);
    assert_eq!(v["results"]["k=1 triple"], "-1/3");
    assert_eq!(v["truncation"]["degree"]["total_degree"], 3);
    for verdict in v["verdicts"].as_array().unwrap() {
        assert_eq!(verdict["status"], "pass");
        assert_eq!(verdict["residual"], "0/1");
    }
}

#[test]
fn reports_are_deterministic() {
    let args = ["gw", "--geometry", "a_n", "--n", "2", "--degree", "2,2", "--format", "json-like"];
    let (_, a, _) = run(&args);
    let (_, b, _) = run(&args);
    assert_eq!(a, b);
    assert!(!a.contains("time"));
}

#[test]
fn every_numeric_is_a_fraction() {
    let (_, out, _) = run(&["gw", "--geometry", "x_k_factored", "--k", "2", "--degree", "3", "--format", "json-like"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let maps = v["results"]["mirror_maps"][0].as_array().unwrap();
    assert_eq!(maps.len(), 4);
    for m in maps {
        let s = m.as_str().unwrap();
        let (n, d) = s.split_once('/').unwrap();
        n.parse::<i64>().unwrap();
        assert!(d.parse::<i64>().unwrap() > 0);
    }
    assert_eq!(v["results"]["mirror_maps"][0][1], "-8/1");
}

#[test]
fn config_file_with_flag_override() {
    let dir = scratch_dir("config");
    let cfg = dir.join("run.cfg");
    std::fs::write(
        &cfg,
        "# explicit O(1) + O(-1)^3 local curve\ncommand = gw\ncharges = [[1, -1, -1, -1]]\nweights = [\n  [1],\n  [-1],\n  [-1],\n  [-1]\n]\nlambdas = [l]\nrelations = [p^2]\ndegree = 2\n",
    )
    .unwrap();
    let out_path = dir.join("nested/report.json");
    let (code, out, err) = run(&["--config", cfg.to_str().unwrap(), "--degree", "3", "--out", out_path.to_str().unwrap(), "--format", "text"]);
    assert_eq!(code, 0, "{err}");
    assert!(out.contains("skipped"));
    assert!(out.contains("degree = 3"));
    let written: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(written["command"], "gw");
    assert_eq!(written["truncation"]["degree"]["total_degree"], 3);
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn parse_errors_exit_2() {
    let dir = scratch_dir("parse");
    let cfg = dir.join("bad.cfg");
    std::fs::write(&cfg, "command = gw\ngeometry = a_n\ngeometry = trivalent\n").unwrap();
    let (code, _, err) = run(&["--config", cfg.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("line 3"), "{err}");
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["gw"]).0, 2);
    assert_eq!(run(&["gw", "--geometry", "nowhere"]).0, 2);
    assert_eq!(run(&["verify-conj1", "--degree", "0"]).0, 2);
    assert_eq!(run(&["verify-conj1", "--k", "-1"]).0, 2);
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&["gw", "--bogus"]).0, 2);
    assert_eq!(run(&["verify-prop1", "--k", "1", "--lambda-depth", "1"]).0, 3);
    assert_eq!(run(&["a2-genus1", "--degree", "2,2"]).0, 1);
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("--lambda-depth"));
}

#[test]
fn failing_verdict_reports_location_and_residual() {
    let (code, out, _) = run(&["a2-genus1", "--degree", "3,3", "--format", "json-like"]);
    assert_eq!(code, 1);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let failed: Vec<&serde_json::Value> = v["verdicts"].as_array().unwrap().iter().filter(|x| x["status"] == "fail").collect();
    assert!(!failed.is_empty());
    for f in failed {
        assert!(f["residual"].as_str().unwrap().contains('/') || f["at"].is_null());
    }
}

#[test]
fn binary_writes_to_out_dir_env() {
    let dir = scratch_dir("env");
    let status =
        Command::new(env!("CARGO_BIN_EXE_localmirror")).args(["verify-conj1", "--k", "2", "--degree", "3"]).env("LOCALMIRROR_OUT_DIR", &dir).output().unwrap();
    assert_eq!(status.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&status.stdout).contains("PASS"));
    let report = std::fs::read_to_string(dir.join("verify-conj1.json")).unwrap();
    assert!(report.contains("\"passed\": true"));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn binary_exit_code_on_depth_error() {
    let out = Command::new(env!("CARGO_BIN_EXE_localmirror")).args(["verify-prop1", "--k", "1", "--lambda-depth", "1"]).output().unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("insufficient depth"));
}
