use std::process::Command;

use serde_json::Value;
use zfthrottle::cli::run;

const P5: &str = "DhC";

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("zfthrottle").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn ok(args: &[&str]) -> String {
    let (code, out, err) = call(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    out
}

fn json_lines(args: &[&str]) -> Vec<Value> {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    ok(&full).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn th_text_and_json_agree() {
    let text = ok(&["th", "--rule", "zplus", "--g6", P5]);
    assert_eq!(text.lines().next().unwrap(), "th+ = 3, B = {2}, pt = 2");
    let v = &json_lines(&["th", "--rule", "zplus", "--g6", P5])[0];
    assert_eq!(v["th"], 3);
    assert_eq!(v["pt"], 2);
    assert_eq!(v["B"], serde_json::json!([2]));
    assert_eq!(v["layers"], serde_json::json!([[1, 3], [0, 4]]));
}

#[test]
fn pt_reports_stalls() {
    assert_eq!(ok(&["pt", "--rule", "zplus", "--blue", "2", "--g6", P5]).lines().next().unwrap(), "pt+ = 2");
    assert!(ok(&["pt", "--rule", "z", "--blue", "2", "--g6", P5]).starts_with("pt = none"));
    let v = &json_lines(&["pt", "--rule", "z", "--blue", "0", "--g6", P5])[0];
    assert_eq!(v["pt"], 4);
    let v = &json_lines(&["pt", "--rule", "z", "--blue", "2", "--g6", P5])[0];
    assert!(v["pt"].is_null());
}

#[test]
fn extend_prints_graph6_and_labels() {
    let out = ok(&["extend", "--blue", "0,1", "--builtin", "C4"]);
    let mut lines = out.lines();
    let g = zfthrottle::graph::parse_graph6(lines.next().unwrap()).unwrap();
    assert!(lines.next().unwrap().starts_with("labels = 0:0"));
    let v = &json_lines(&["extend", "--blue", "0,1", "--builtin", "C4"])[0];
    assert_eq!(v["g6"], zfthrottle::graph::emit_graph6(&g));
    assert_eq!(v["labels"].as_array().unwrap().len(), g.n());
}

#[test]
fn charcert_script_or_none() {
    let v: Value = serde_json::from_str(ok(&["charcert", "--t", "3", "--builtin", "P4"]).trim()).unwrap();
    assert_eq!(v["a"].as_u64().unwrap() + v["b"].as_u64().unwrap(), 3);
    assert_eq!(v["flavor"], "psd");
    assert_eq!(ok(&["charcert", "--t", "2", "--builtin", "C4"]).trim(), "none");
    assert_eq!(ok(&["charcert", "--t", "3", "--flavor", "psdfloor", "--builtin", "P4"]).trim().chars().next(), Some('{'));
}

#[test]
fn catalog_lines_match_json() {
    let text: Vec<String> = ok(&["catalog", "--k", "0"]).lines().map(String::from).collect();
    assert_eq!(text.len(), 3);
    let json = json_lines(&["catalog", "--k", "0"]);
    let graphs: Vec<String> = json.iter().map(|v| v["graph"].as_str().unwrap().to_string()).collect();
    assert_eq!(text, graphs);

    let dir = tempfile::tempdir().unwrap();
    let side = dir.path().join("g1.jsonl");
    let out = ok(&["catalog", "--k", "1", "--reduced", "--sidecar", side.to_str().unwrap()]);
    let sidecar = std::fs::read_to_string(&side).unwrap();
    assert_eq!(sidecar.lines().count(), out.lines().count());
    let first: Value = serde_json::from_str(sidecar.lines().next().unwrap()).unwrap();
    assert!(first["composition"].is_array() && first["decomposition"]["s"].is_array());
}

#[test]
fn accel_decomposition() {
    assert_eq!(ok(&["accel", "--composition", "1", "--builtin", "P4"]).trim(), "S1 = {0,3}, T1 = {1,2}, M1 = 0-1 3-2");
    assert_eq!(ok(&["accel", "--composition", "1", "--builtin", "C5"]).trim(), "none");
    let v = &json_lines(&["accel", "--composition", "1,1", "--builtin", "K2xP4"])[0];
    assert_eq!(v["composition"], serde_json::json!([1, 1]));
}

#[test]
fn verify_summary_and_report_file() {
    assert_eq!(ok(&["verify", "--theorem", "thm-th-eq-n", "--nmax", "6"]).trim(), "thm-th-eq-n: pass, 142 graphs");
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.jsonl");
    let out = json_lines(&["verify", "--theorem", "cor-spectral", "--nmax", "5", "--out", path.to_str().unwrap()]);
    assert_eq!(out.len(), 1);
    assert_eq!(out[0]["verdict"], "pass");
    let lines = std::fs::read_to_string(&path).unwrap();
    let last: Value = serde_json::from_str(lines.lines().last().unwrap()).unwrap();
    assert_eq!(last["totals"], out[0]["totals"]);

    let corpus = dir.path().join("corpus.g6");
    std::fs::write(&corpus, "Ch\nC~\n\nC]\n").unwrap();
    let line = ok(&["verify", "--theorem", "thm-th-eq-n", "--g6-file", corpus.to_str().unwrap()]);
    assert_eq!(line.trim(), "thm-th-eq-n: pass, 3 graphs");
    let global = ok(&["verify", "--theorem", "cor-spanning-supergraphs", "--nmax", "5", "--semantics", "global"]);
    assert!(global.starts_with("cor-spanning-supergraphs: pass"));
}

#[test]
fn spectral_values() {
    let rho: f64 = ok(&["spectral", "--builtin", "C4"]).trim().trim_start_matches("rho = ").parse().unwrap();
    assert!((rho - 2.0).abs() < 1e-9);
    let v = &json_lines(&["spectral", "--builtin", "C4"])[0];
    assert!((v["spectral_radius"].as_f64().unwrap() - rho).abs() < 1e-9);
    assert_eq!(ok(&["spectral", "--max", "4,3"]).split_whitespace().next(), Some("CF"));
}

#[test]
fn edge_list_input() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("p5.txt");
    std::fs::write(&p, "5 4\n0 1\n1 2\n2 3\n3 4\n").unwrap();
    assert!(ok(&["th", "--rule", "zplus", "--edges", p.to_str().unwrap()]).starts_with("th+ = 3"));
}

#[test]
fn exit_codes() {
    let usage = |args: &[&str]| {
        let (code, _, err) = call(args);
        assert_eq!(code, 2, "{args:?}");
        err
    };
    assert!(usage(&["th", "--rule", "bogus", "--g6", P5]).contains("--rule"));
    usage(&["th", "--rule", "z"]);
    usage(&["th", "--rule", "z", "--g6", P5, "--builtin", "P4"]);
    usage(&["th", "--rule", "z", "--g6", "!!"]);
    usage(&["th", "--rule", "z", "--builtin", "petersen"]);
    usage(&["verify", "--theorem", "thm-unknown"]);
    usage(&["th", "--rule", "z", "--g6-file", "/nonexistent/file"]);
    usage(&["frobnicate"]);

    let (code, _, err) = call(&["catalog", "--k", "2"]);
    assert_eq!(code, 1);
    assert!(err.contains("limit 1"), "{err}");
    let (code, _, _) = call(&["charcert", "--t", "0", "--g6", P5]);
    assert_eq!(code, 1);
    let (code, _, err) = call(&["verify", "--theorem", "cor-spectral", "--nmax", "8"]);
    assert_eq!(code, 1);
    assert!(err.contains("capacity"), "{err}");
    let (code, out, _) = call(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("verify"));
}

#[test]
fn binary_runs() {
    let bin = env!("CARGO_BIN_EXE_zfthrottle");
    let out = Command::new(bin).args(["th", "--rule", "zplus", "--g6", P5]).output().unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("th+ = 3, B = {2}, pt = 2"));
    let bad = Command::new(bin).args(["th", "--rule", "z"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
    let workers = Command::new(bin).args(["--workers", "2", "catalog", "--k", "0"]).output().unwrap();
    assert_eq!(String::from_utf8_lossy(&workers.stdout).lines().count(), 3);
}
