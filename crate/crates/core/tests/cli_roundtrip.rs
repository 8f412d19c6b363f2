use std::path::PathBuf;

use serde_json::Value;
use ulam::cli::{read_meta, run_with};

fn run(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let mut full = vec!["ulam"];
    full.extend_from_slice(args);
    let code = run_with(full, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn temp(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("ulam_cli_{}_{name}", std::process::id()))
}

const COMMANDS: &[(&str, &[&str])] = &[
    ("simulate", &["simulate", "--n", "50", "--p", "0.5"]),
    ("ensemble", &["simulate", "--n", "100", "--reps", "200", "--grid", "10,100", "--seed", "9"]),
    ("continuized", &["simulate", "--process", "continuized", "--t-max", "20", "--reps", "100", "--grid", "5,10,20"]),
    ("exact", &["exact", "--moment", "product", "--m", "10", "--n", "200", "--p", "0.3", "--format", "json"]),
    ("continuous", &["continuous", "--quantity", "third", "--t-max", "50", "--steps", "10"]),
    ("classify", &["classify", "--alpha", "2", "--beta", "1", "--A", "0.5", "--B", "-1", "--format", "csv"]),
    ("martingale", &["martingale", "--variant", "p-adding", "--n", "400", "--reps", "300", "--ladder", "100,200,400"]),
    ("fit", &["fit", "--mu2", "1.225", "--mu3", "1.932"]),
    ("distance", &["distance", "--n", "100,200", "--reps", "200"]),
    ("figure1", &["figures", "--which", "1", "--n", "200", "--reps", "300", "--panel", "left"]),
    ("figure5", &["figures", "--which", "5", "--steps", "11"]),
    ("report", &["report", "--n", "2000", "--t", "100"]),
];

#[test]
fn every_command_replays_byte_identically() {
    for (name, args) in COMMANDS {
        let path = temp(name);
        let mut with_output = args.to_vec();
        let path_str = path.to_str().unwrap();
        with_output.extend_from_slice(&["--output", path_str]);
        let (code, _, err) = run(&with_output);
        assert_eq!(code, 0, "{name}: {err}");
        let first = std::fs::read_to_string(&path).unwrap();
        let meta = read_meta(&first).unwrap();
        assert_eq!(meta["version"], Value::from(env!("CARGO_PKG_VERSION")));
        assert!(meta["seed"].is_u64() && meta["config"]["args"].is_object(), "{name}: {meta}");

        let (code, again, err) = run(&["replay", "--from", path_str]);
        assert_eq!(code, 0, "{name}: {err}");
        assert_eq!(again, first, "{name} did not replay identically");
        let (_, direct, _) = run(args);
        assert_eq!(direct, first, "{name} depends on the output destination");
        std::fs::remove_file(&path).unwrap();
    }
}

#[test]
fn csv_has_meta_then_single_header() {
    let (code, out, _) = run(&["exact", "--moment", "2", "--n", "20", "--stride", "5"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert!(lines[0].starts_with("# meta: "));
    assert!(!lines[1].starts_with('#') && lines[1].split(',').count() >= 2);
    assert!(lines[2..].iter().all(|l| l.split(',').all(|f| f.parse::<f64>().is_ok())));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["--help"]).0, 0);
    assert_eq!(run(&["--version"]).0, 0);
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&["simulate", "--n", "ten"]).0, 2);
    let (code, _, err) = run(&["simulate", "--p", "1.5"]);
    assert_eq!(code, 2);
    let diag: Value = serde_json::from_str(err.trim()).unwrap();
    assert_eq!(diag["kind"], "invalid_input");
    assert_eq!(run(&["fit", "--mu2", "1.2", "--mu3", "1.5"]).0, 2);
    assert_eq!(run(&["replay", "--from", "/nonexistent/ulam.csv"]).0, 1);
}

#[test]
fn json_documents_have_meta_and_data() {
    let (code, out, _) = run(&["classify", "--alpha", "1", "--beta", "1", "--A", "1", "--B", "1"]);
    assert_eq!(code, 0);
    let doc: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["meta"]["command"], "classify");
    assert_eq!(doc["data"]["region_label"], "real-growing");
}
