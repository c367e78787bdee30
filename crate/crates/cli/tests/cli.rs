use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn nestq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nestq"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write_state(dir: &Path, name: &str, qubits: usize, amps: &[f64]) -> String {
    let path = dir.join(name);
    let doc = serde_json::json!({ "qubits": qubits, "amplitudes": amps, "ordering": "msb-first" });
    fs::write(&path, doc.to_string()).unwrap();
    path.to_str().unwrap().to_string()
}

fn degrees(o: &Output) -> Vec<f64> {
    let v: Value = serde_json::from_str(&stdout(o)).unwrap();
    v["chain"]["rotations"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["degrees"].as_f64().unwrap())
        .collect()
}

#[test]
fn dsiht_identity_for_e0() {
    let o = nestq(&["dsiht", "--inline", "1,0,0,0", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(degrees(&o), vec![0.0, 0.0, 0.0]);
}

#[test]
fn dsiht_three_four_angles() {
    let o = nestq(&["dsiht", "--inline", "0.36,0.48,0.48,0.64", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let want = [-53.13, -38.66, -39.79];
    for (d, w) in degrees(&o).iter().zip(want) {
        assert!((d - w).abs() < 0.01, "{d} vs {w}");
    }
}

#[test]
fn dsiht_text_shows_bell_matrix() {
    let o = nestq(&["dsiht", "--inline", "0.7071,0,0,0.7071"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("-45.00°"), "{text}");
    assert!(text.contains("0.7071"), "{text}");
}

#[test]
fn dsiht_rejects_non_unit_and_missing_file() {
    let o = nestq(&["dsiht", "--inline", "1,1,0,0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(o.stdout.is_empty());
    assert_eq!(nestq(&["dsiht", "--inline", "1,1,0,0", "--renormalize"]).status.code(), Some(0));
    assert_eq!(nestq(&["dsiht", "--generator", "/nonexistent/g.json"]).status.code(), Some(2));
    assert_eq!(nestq(&["dsiht"]).status.code(), Some(1));
}

#[test]
fn dsiht_out_file_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let g = write_state(dir.path(), "g.json", 2, &[0.5; 4]);
    let out = dir.path().join("h.json");
    let o = nestq(&["dsiht", "--generator", &g, "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let doc: Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(doc["chain"]["rotations"].as_array().unwrap().len(), 3);
    assert_eq!(doc["matrix"]["dim"], 4);
}

#[test]
fn transfer_bell_to_flat() {
    let dir = tempfile::tempdir().unwrap();
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let from = write_state(dir.path(), "x.json", 2, &[h, 0.0, 0.0, h]);
    let to = write_state(dir.path(), "y.json", 2, &[0.5; 4]);
    let o = nestq(&["transfer", "--from", &from, "--to", &to, "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["residual"].as_f64().unwrap() < 1e-10);
    let row0 = v["matrix"]["rows"][0].as_array().unwrap();
    assert!((row0[0].as_f64().unwrap() - 0.5577).abs() < 5e-5);
}

#[test]
fn transfer_to_itself_is_identity() {
    let dir = tempfile::tempdir().unwrap();
    let x = write_state(dir.path(), "x.json", 2, &[0.6, 0.0, 0.8, 0.0]);
    let out = dir.path().join("u.json");
    let o = nestq(&["transfer", "--from", &x, "--to", &x, "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    for (i, row) in v["rows"].as_array().unwrap().iter().enumerate() {
        for (j, e) in row.as_array().unwrap().iter().enumerate() {
            let want = if i == j { 1.0 } else { 0.0 };
            assert!((e.as_f64().unwrap() - want).abs() < 1e-12);
        }
    }
}

#[test]
fn transfer_rejects_mismatched_and_malformed() {
    let dir = tempfile::tempdir().unwrap();
    let x = write_state(dir.path(), "x.json", 1, &[1.0, 0.0]);
    let y = write_state(dir.path(), "y.json", 2, &[1.0, 0.0, 0.0, 0.0]);
    assert_eq!(nestq(&["transfer", "--from", &x, "--to", &y]).status.code(), Some(1));
    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{\"qubits\": 1, \"amplitudes\": [1, 0], \"ordering\": \"lsb-first\"}").unwrap();
    assert_eq!(nestq(&["transfer", "--from", bad.to_str().unwrap(), "--to", &x]).status.code(), Some(1));
}

#[test]
fn nest_is_deterministic() {
    let args = ["nest", "--a", "0.6", "--b", "0.8", "--shots", "2000", "--seed", "7"];
    let first = nestq(&args);
    let second = nestq(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn nest_writes_transcript_and_histogram() {
    let dir = tempfile::tempdir().unwrap();
    let t = dir.path().join("t.json");
    let h = dir.path().join("h.csv");
    let o = nestq(&[
        "nest", "--a", "1", "--b", "0", "--shots", "10000", "--seed", "42",
        "--transcript", t.to_str().unwrap(), "--histogram", h.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&fs::read_to_string(&t).unwrap()).unwrap();
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let xi: Vec<f64> = v["xi"]["amplitudes"].as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect();
    let want = [r, 0.0, 0.0, 0.0, r, 0.0, 0.0, 0.0];
    assert!(xi.iter().zip(want).all(|(x, w)| (x - w).abs() < 1e-15), "{xi:?}");
    let csv = fs::read_to_string(&h).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "outcome,count,frequency");
    let zero: Vec<&str> = lines[1].split(',').collect();
    let f: f64 = zero[2].parse().unwrap();
    assert!((f - 0.5).abs() <= 0.015);
}

#[test]
fn nest_requires_seed_and_unit_input() {
    assert_eq!(nestq(&["nest", "--a", "0.6", "--b", "0.8"]).status.code(), Some(1));
    assert_eq!(nestq(&["nest", "--a", "1", "--b", "1", "--seed", "1"]).status.code(), Some(1));
    assert_eq!(nestq(&["nest", "--a", "1", "--b", "1", "--seed", "1", "--renormalize"]).status.code(), Some(0));
    assert_eq!(nestq(&["nest", "--a", "1", "--b", "0", "--seed", "1", "--shots", "0"]).status.code(), Some(1));
}

#[test]
fn failed_validation_leaves_no_files() {
    let dir = tempfile::tempdir().unwrap();
    let t = dir.path().join("t.json");
    let o = nestq(&["nest", "--a", "2", "--b", "0", "--seed", "1", "--transcript", t.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(!t.exists());
}

fn copy_json(args: &[&str]) -> Value {
    let mut all = vec!["copycheck", "--format", "json"];
    all.extend_from_slice(args);
    let o = nestq(&all);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

#[test]
fn copycheck_fidelities() {
    let basis = copy_json(&["--hadamard", "--c", "1", "--d", "0"]);
    assert!((basis["fidelity"].as_f64().unwrap() - 0.5).abs() < 1e-12);
    let own = copy_json(&["--a", "0.6", "--b", "0.8"]);
    assert!((own["fidelity"].as_f64().unwrap() - 1.0).abs() < 1e-9);
    assert_eq!(own["exact"], true);
    let off = copy_json(&["--a", "0.6", "--b", "0.8", "--c", "0.8", "--d", "0.6"]);
    assert!(off["fidelity"].as_f64().unwrap() < 1.0 - 1e-6);
}

#[test]
fn copycheck_sweep_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("s.csv");
    let o = nestq(&["copycheck", "--hadamard", "--sweep", "360", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let csv = fs::read_to_string(&out).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 361);
    assert_eq!(lines[0], "angle_degrees,fidelity,exact");
    assert_eq!(lines.iter().filter(|l| l.ends_with(",true")).count(), 4);
}

#[test]
fn copycheck_argument_errors() {
    assert_eq!(nestq(&["copycheck", "--a", "0.6"]).status.code(), Some(1));
    assert_eq!(nestq(&["copycheck", "--hadamard", "--c", "1"]).status.code(), Some(1));
    assert_eq!(nestq(&["copycheck", "--hadamard", "--sweep", "1"]).status.code(), Some(1));
}

#[test]
fn verify_passes() {
    let o = nestq(&["verify"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(!text.contains("[FAIL]"));
    assert!(text.trim_end().ends_with("checks passed"));
}
