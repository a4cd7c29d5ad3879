//! End-to-end tests of the `quartic` binary.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn quartic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quartic"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok_stdout(args: &[&str]) -> String {
    let out = quartic(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    quartic(args).status.code().unwrap()
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&ok_stdout(args)).unwrap()
}

fn golden(name: &str) -> String {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/tests/golden");
    std::fs::read_to_string(dir.join(name)).unwrap()
}

#[test]
fn tables_match_golden_files() {
    assert_eq!(ok_stdout(&["tables", "case-i", "--n-max", "16"]), golden("table_i.csv"));
    assert_eq!(ok_stdout(&["tables", "case-ii", "--p-max", "251"]), golden("table_ii.csv"));
    assert_eq!(ok_stdout(&["tables", "case-ii", "--p-max", "7"]), "index,p,n,N,m\n1,7,2,3,-3\n");
    assert_eq!(ok_stdout(&["tables", "case-i", "--n-max", "3"]), "index,n,p,m\n");
}

#[test]
fn seed_tables_reproduces_committed_files() {
    let dir = tempfile::tempdir().unwrap();
    ok_stdout(&["tables", "--seed-tables", dir.path().to_str().unwrap()]);
    for name in ["table_i.csv", "table_ii.csv", "table_diff.md"] {
        let fresh = std::fs::read_to_string(dir.path().join(name)).unwrap();
        assert_eq!(fresh, golden(name), "{name}");
    }
}

#[test]
fn search_examples() {
    assert_eq!(ok_stdout(&["search", "--n", "4", "--m", "13", "--bound", "200"]), "x,y,z\n");
    assert_eq!(
        ok_stdout(&["search", "--n", "2", "--m", "4", "--bound", "2"]),
        "x,y,z\n1,1,3\n1,2,9\n2,1,6\n2,2,12\n"
    );
    assert_eq!(code(&["search", "--n", "4", "--m", "13", "--bound", "0"]), 1);
    assert_eq!(code(&["search", "--n", "4", "--m", "0", "--bound", "5"]), 1);
    assert_eq!(
        ok_stdout(&["search-general", "--form", "1,9,27,1", "--bound", "100"]),
        "x,y,z\n"
    );
}

#[test]
fn search_reports_overflow_as_resource_limit() {
    let huge = (1u64 << 40).to_string();
    assert_eq!(
        code(&["search", "--n", "4294967295", "--m", "9223372036854775807", "--bound", &huge]),
        3
    );
}

#[test]
fn conic_examples() {
    assert_eq!(ok_stdout(&["conic", "--ell", "3", "--z-max", "2"]), "x,y,z\n1,1,2\n");
    assert_eq!(
        ok_stdout(&["conic", "--ell", "1", "--z-max", "5", "--brute-check"]),
        "x,y,z\n3,4,5\n4,3,5\n"
    );
    assert_eq!(code(&["conic", "--ell", "0", "--z-max", "5"]), 1);
    let v = json(&["--format", "json", "conic", "--ell", "7", "--z-max", "200", "--brute-check"]);
    assert_eq!(v["params"]["oracle_agrees"], Value::Bool(true));
}

#[test]
fn json_envelope_shape() {
    let v = json(&["tables", "case-ii", "--p-max", "7", "--format", "json"]);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["command"], "tables case-ii");
    assert_eq!(v["params"]["p_max"], 7);
    let rows = v["results"].as_array().unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0]["case"], "II");
}

#[test]
fn trace_reports() {
    let v = json(&["trace", "--n", "4", "--p", "3"]);
    let checks = v["results"]["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    assert!(checks.iter().all(|c| c["confirmed"] == true));
    let bad = json(&["trace", "--n", "1", "--p", "5"]);
    assert!(bad["results"]["checks"].as_array().unwrap().iter().any(|c| c["confirmed"] == false));
    let d = json(&["trace", "--n", "2", "--m", "-7", "--solution", "23,20,79"]);
    assert_eq!(d["results"]["outcome"]["Descended"]["x"], 2);
    assert_eq!(code(&["trace", "--n", "4", "--m", "13", "--solution", "1,1,1"]), 1);
    assert_eq!(code(&["trace", "--n", "4"]), 1);
}

#[test]
fn local_and_hasse_scan() {
    let v = json(&["local", "--form", "1,0,-17,2", "--prime-powers", "3,4,5,8,9", "--bound", "500"]);
    let verdicts = v["results"]["verdicts"].as_array().unwrap();
    assert_eq!(verdicts.len(), 5);
    assert!(verdicts.iter().all(|x| x["solvable"] == true));
    assert_eq!(v["results"]["global_solutions"], 0);
    assert_eq!(ok_stdout(&["hasse-scan", "--q-max", "17", "--d-max", "2"]), "q,d\n17,2\n");
    assert_eq!(
        code(&["local", "--form", "1,0,-17,2", "--prime-powers", "289", "--bound", "5", "--scan-limit", "100"]),
        3
    );
    assert_eq!(code(&["local", "--form", "1,0,-17,2", "--prime-powers", "6", "--bound", "5"]), 1);
    let s = json(&["selmer", "--prime-powers", "4,8,9,5,7", "--bound", "50"]);
    assert_eq!(s["results"]["global_solutions"].as_array().unwrap().len(), 0);
}

#[test]
fn config_file_and_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.conf");
    std::fs::write(&cfg, "# defaults for this run\nformat = json\nworkers = 2\nscan_limit = 100\n").unwrap();
    let cfg = cfg.to_str().unwrap();
    let v = json(&["--config", cfg, "hasse-scan", "--q-max", "17", "--d-max", "2"]);
    assert_eq!(v["results"][0]["form"], serde_json::json!([1, 0, -17, 2]));
    // the flag beats the file
    assert_eq!(
        ok_stdout(&["--config", cfg, "--format", "csv", "hasse-scan", "--q-max", "17", "--d-max", "2"]),
        "q,d\n17,2\n"
    );
    let args = ["--config", cfg, "local", "--form", "1,0,-17,2", "--prime-powers", "289", "--bound", "5"];
    assert_eq!(code(&args), 3);
    let mut raised = args.to_vec();
    raised.extend(["--scan-limit", "1000"]);
    assert_eq!(code(&raised), 0);

    let bad = dir.path().join("bad.conf");
    std::fs::write(&bad, "colour = red\n").unwrap();
    assert_eq!(code(&["--config", bad.to_str().unwrap(), "hasse-scan", "--q-max", "17", "--d-max", "2"]), 1);
    assert_eq!(code(&["--config", "/nonexistent/x.conf", "hasse-scan", "--q-max", "1", "--d-max", "1"]), 1);
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.csv");
    let out = ok_stdout(&["tables", "case-i", "--out", path.to_str().unwrap()]);
    assert!(out.is_empty());
    assert_eq!(std::fs::read_to_string(path).unwrap(), golden("table_i.csv"));
}

#[test]
fn help_version_and_usage_codes() {
    assert_eq!(code(&["--help"]), 0);
    assert_eq!(code(&["--version"]), 0);
    assert_eq!(code(&["search", "--help"]), 0);
    assert_eq!(code(&[]), 1);
    assert_eq!(code(&["frobnicate"]), 1);
    assert_eq!(code(&["--workers", "0", "hasse-scan", "--q-max", "1", "--d-max", "1"]), 1);
}

#[test]
fn output_is_deterministic_across_worker_counts() {
    let base = ["search", "--n", "2", "--m", "-7", "--bound", "300"];
    let one = ok_stdout(&[&["--workers", "1"][..], &base].concat());
    let four = ok_stdout(&[&["--workers", "4"][..], &base].concat());
    let auto = ok_stdout(&base);
    assert_eq!(one, four);
    assert_eq!(one, auto);
    let l = ["local", "--form", "1,0,-17,2", "--prime-powers", "2,3,4,5,7,8,9,17,289", "--bound", "50"];
    assert_eq!(
        ok_stdout(&[&["--workers", "1"][..], &l].concat()),
        ok_stdout(&[&["--workers", "3"][..], &l].concat())
    );
}

#[test]
fn verbose_logs_phases_to_stderr() {
    let out = quartic(&["-v", "tables", "case-i"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("enumerated 24 combinations"));
}
