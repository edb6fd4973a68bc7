use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_tightsets"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn search_q5(dir: &Path, extra: &[&str]) -> Vec<PathBuf> {
    let out = dir.to_str().unwrap();
    let mut args = vec!["search", "--q", "5", "--group", "C", "--out", out];
    args.extend_from_slice(extra);
    let o = run(&args);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "json"))
        .collect();
    files.sort();
    files
}

#[test]
fn search_is_byte_deterministic() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let fa = search_q5(a.path(), &["--spreads", "5", "--seed", "9"]);
    let fb = search_q5(b.path(), &["--spreads", "5", "--seed", "9"]);
    assert_eq!(fa.len(), fb.len());
    for (x, y) in fa.iter().zip(&fb) {
        assert_eq!(x.file_name(), y.file_name());
        assert_eq!(std::fs::read(x).unwrap(), std::fs::read(y).unwrap());
    }
}

#[test]
fn round_trip_and_report_stability() {
    let dir = tempfile::tempdir().unwrap();
    let files = search_q5(dir.path(), &[]);
    let cert = files[0].to_str().unwrap();
    let o1 = run(&["verify", "--input", cert, "--spreads", "10"]);
    assert_eq!(code(&o1), 0);
    let report = dir.path().join(format!(
        "{}.report.txt",
        files[0].file_stem().unwrap().to_string_lossy()
    ));
    let r1 = std::fs::read_to_string(&report).unwrap();
    let o2 = run(&["verify", "--input", cert, "--spreads", "10"]);
    assert_eq!(o1.stdout, o2.stdout);
    assert_eq!(r1, std::fs::read_to_string(&report).unwrap());
    assert!(r1.contains("verdict: PASS"));

    // Reserialize through serde and verify again.
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(cert).unwrap()).unwrap();
    let copy = dir.path().join("copy.json");
    std::fs::write(&copy, serde_json::to_string(&doc).unwrap()).unwrap();
    let o3 = run(&["verify", "--input", copy.to_str().unwrap(), "--spreads", "10"]);
    assert_eq!(code(&o3), 0);
}

#[test]
fn representatives_only_certificate_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let files = search_q5(dir.path(), &["--no-points"]);
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&files[0]).unwrap()).unwrap();
    assert!(doc.get("points").is_none());
    assert_eq!(doc["orbit_reps"].as_array().unwrap().len(), 12);
    let o = run(&["verify", "--input", files[0].to_str().unwrap(), "--checks", "tight,cl"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
}

#[test]
fn corrupted_point_is_named() {
    let dir = tempfile::tempdir().unwrap();
    let files = search_q5(dir.path(), &[]);
    let mut doc: Value = serde_json::from_str(&std::fs::read_to_string(&files[0]).unwrap()).unwrap();
    let other: Value = serde_json::from_str(&std::fs::read_to_string(&files[1]).unwrap()).unwrap();
    // Take a point from the complementary solution, which is disjoint.
    let pts = doc["points"].as_array().unwrap().clone();
    let outside = other["points"]
        .as_array()
        .unwrap()
        .iter()
        .find(|p| !pts.contains(p))
        .unwrap()
        .clone();
    doc["points"][0] = outside;
    let bad = dir.path().join("swapped.json");
    std::fs::write(&bad, serde_json::to_string_pretty(&doc).unwrap()).unwrap();
    let o = run(&["verify", "--input", bad.to_str().unwrap(), "--checks", "tight"]);
    assert_eq!(code(&o), 1);
    let text = String::from_utf8_lossy(&o.stdout);
    assert!(text.contains("tight: FAIL"));
    assert!(text.contains("point [["), "{text}");

    // A pair that is not singular.
    doc["points"][0] = serde_json::json!([[1, 0, 0], [1, 0, 0]]);
    std::fs::write(&bad, serde_json::to_string_pretty(&doc).unwrap()).unwrap();
    let o = run(&["verify", "--input", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stdout).contains("not on the quadric"));
}

#[test]
fn malformed_input_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let files = search_q5(dir.path(), &[]);
    let p = dir.path().join("junk.json");
    std::fs::write(&p, "{\"q\": 5").unwrap();
    assert_eq!(code(&run(&["verify", "--input", p.to_str().unwrap()])), 2);
    assert_eq!(code(&run(&["verify", "--input", "/nonexistent/cert.json"])), 2);

    let mut doc: Value = serde_json::from_str(&std::fs::read_to_string(&files[0]).unwrap()).unwrap();
    doc["modulus"][0] = Value::from(3);
    std::fs::write(&p, doc.to_string()).unwrap();
    assert_eq!(code(&run(&["verify", "--input", p.to_str().unwrap()])), 2);
}

#[test]
fn invalid_parameters() {
    assert_eq!(code(&run(&["info", "--q", "6"])), 2);
    assert_eq!(code(&run(&["info", "--q", "1"])), 2);
    assert_eq!(code(&run(&["search", "--q", "7", "--group", "G"])), 2);
    assert_eq!(code(&run(&["search", "--q", "13", "--group", "G"])), 2);
    assert_eq!(code(&run(&["search", "--q", "4"])), 2);
    let o = run(&["search", "--q", "7", "--group", "C"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("size 19"));
}

#[test]
fn info_summaries() {
    let o = run(&["info", "--q", "5"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8_lossy(&o.stdout);
    assert!(text.contains("quadric points: 806"));
    assert!(text.contains("C-orbits: 26 (26 of size 31)"));
    assert!(text.contains("target x = 12"));

    let o = run(&["info", "--q", "13"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8_lossy(&o.stdout);
    assert!(text.contains("warning: q = 13 is 1 mod 3"));
    assert!(text.contains("G-search unavailable"));

    let o = run(&["info", "--q", "9", "--json"]);
    let doc: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["quadric_points"], 7462);
    assert_eq!(doc["x"], 40);
    assert_eq!(doc["g_nominal_order"], 546);
}

#[test]
fn empty_search_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    assert_eq!(code(&run(&["search", "--q", "5", "--x", "3", "--out", out])), 3);
}

#[test]
fn derive_affine_modes() {
    let dir = tempfile::tempdir().unwrap();
    let files = search_q5(dir.path(), &[]);
    let cert = files[0].to_str().unwrap();
    assert_eq!(code(&run(&["derive-affine", "--input", cert, "--strict"])), 2);
    assert_eq!(code(&run(&["derive-affine", "--input", cert])), 1);

    let out = dir.path().to_str().unwrap();
    let o = run(&["search", "--q", "9", "--group", "G", "--out", out, "--max-solutions", "1"]);
    assert_eq!(code(&o), 0);
    let q9 = dir.path().join("q9-G-x40-001.json");
    let q9s = q9.to_str().unwrap();
    let o = run(&["derive-affine", "--input", q9s, "--plane", "5", "--strict"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    let doc: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("q9-G-x40-001.affine.json")).unwrap())
            .unwrap();
    assert_eq!((doc["m"].as_u64(), doc["n"].as_u64()), (Some(3), Some(6)));
    assert_eq!(doc["points"].as_array().unwrap().len() as u64, doc["size"].as_u64().unwrap());
    assert_eq!(code(&run(&["derive-affine", "--input", q9s, "--plane", "100000"])), 2);
}
