use std::process::{Command, Output};

use serde_json::Value;

fn mcsdetect(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mcsdetect"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.push("--json");
    let o = mcsdetect(&all);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn c12_is_indistinguishable() {
    let r = json(&["analyze", "--d", "6", "--set", "0,0;0,1;0,3;3,0"]);
    assert_eq!(r["report_version"], 1);
    assert_eq!(r["verdict"]["status"], "Indistinguishable");
    assert_eq!(r["detector_set"], serde_json::json!([]));
    assert!(r.get("numeric").is_none());
}

#[test]
fn gamma_133_verifies_through_c20() {
    let r = json(&["analyze", "--d", "4", "--set", "0,0;1,0;0,1;3,3", "--verify"]);
    assert_eq!(r["verdict"]["status"], "Distinguishable");
    assert_eq!(r["verdict"]["reason"], "DetectorFound");
    assert_eq!(r["verdict"]["witness"], "C2,0");
    assert!(r["numeric"]["protocol_residual"].as_f64().unwrap() < 1e-9);
}

#[test]
fn special_set_search_finds_witness() {
    let r = json(&["analyze", "--d", "6", "--set", "0,0;0,3;3,0;3,3", "--search"]);
    assert_eq!(r["verdict"]["status"], "Distinguishable");
    assert_eq!(r["verdict"]["reason"], "SpecialDiffSet33");
    let f = &r["numeric"]["feasibility"];
    assert!(f["best_residual"].as_f64().unwrap() < 1e-8);
    assert_eq!(f["outcome"], "witness_found");
    assert_eq!(f["restarts"], 64);
}

#[test]
fn text_output_names_the_verdict() {
    let o = mcsdetect(&["analyze", "--d", "4", "--set", "0,0;1,0;0,1;3,3"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("Distinguishable (DetectorFound, witness C2,0)"), "{out}");
    assert!(out.contains("detector_set       C2,0"), "{out}");
}

#[test]
fn machine_output_is_byte_stable() {
    let args = ["analyze", "--d", "6", "--set", "0,0;0,1;0,3;3,0", "--search", "--restarts", "8", "--iters", "200", "--seed", "3"];
    for extra in ["--json", "--csv"] {
        let mut a = args.to_vec();
        a.push(extra);
        let first = mcsdetect(&a);
        let second = mcsdetect(&a);
        assert_eq!(first.status.code(), Some(0));
        assert_eq!(first.stdout, second.stdout, "{extra}");
    }
}

#[test]
fn verify_does_not_change_symbolic_fields() {
    let set = ["analyze", "--d", "6", "--set", "0,0;0,1;2,0;4,0"];
    let mut plain = json(&set);
    let mut verified = json(&[&set[..], &["--verify"]].concat());
    assert!(verified.as_object_mut().unwrap().remove("numeric").is_some());
    assert!(plain.as_object_mut().unwrap().remove("numeric").is_none());
    assert_eq!(plain, verified);
}

#[test]
fn csv_has_header_and_one_row() {
    let o = mcsdetect(&["analyze", "--d", "4", "--set", "0,0;2,0;0,2;2,2", "--csv"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].starts_with("report_version,version,input_set,d,delta_set"));
    assert!(lines[0].contains("verdict.status"));
    assert!(lines[1].starts_with("1,"));
    assert!(lines[1].contains("DeltaCommutative"));
}

#[test]
fn file_input_matches_inline_input() {
    let dir = std::env::temp_dir().join(format!("mcsdetect-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("set.json");
    std::fs::write(&path, r#"{"d": 4, "set": [[0,0],[1,0],[0,1],[3,3]]}"#).unwrap();
    let from_file = json(&["analyze", "--file", path.to_str().unwrap()]);
    let inline = json(&["analyze", "--d", "4", "--set", "0,0;1,0;0,1;3,3"]);
    assert_eq!(from_file, inline);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn exit_codes() {
    // Parse errors.
    assert_eq!(mcsdetect(&["analyze", "--d", "4", "--set", "0,0;1"]).status.code(), Some(2));
    assert_eq!(mcsdetect(&["analyze", "--d", "4", "--set", "a,b"]).status.code(), Some(2));
    assert_eq!(mcsdetect(&["tables", "--id", "VII"]).status.code(), Some(2));
    // Domain errors: duplicate state, more states than d.
    let dup = mcsdetect(&["analyze", "--d", "4", "--set", "0,0;1,0;1,0"]);
    assert_eq!(dup.status.code(), Some(3));
    assert_eq!(String::from_utf8_lossy(&dup.stderr).lines().count(), 1);
    assert_eq!(mcsdetect(&["analyze", "--d", "3", "--set", "0,0;1,0;0,1;1,1"]).status.code(), Some(3));
    assert_eq!(mcsdetect(&["analyze", "--d", "1", "--set", "0,0"]).status.code(), Some(3));
    let missing = std::env::temp_dir().join("mcsdetect-no-such-file.json");
    let missing = missing.to_string_lossy();
    assert_eq!(mcsdetect(&["analyze", "--file", &missing]).status.code(), Some(2));
}

#[test]
fn tables_single_and_all() {
    let one = mcsdetect(&["tables", "--id", "I"]);
    assert_eq!(one.status.code(), Some(0));
    assert!(stdout(&one).contains("16/16 cells match"));

    let all = mcsdetect(&["tables", "--id", "all"]);
    assert_eq!(all.status.code(), Some(0));
    let out = stdout(&all);
    let reports: Vec<&str> = out.lines().filter(|l| l.starts_with("Table ")).collect();
    assert_eq!(reports.len(), 6);
    for (line, n) in reports.iter().zip([16, 30, 25, 36, 64, 62]) {
        assert!(line.contains(&format!("{n}/{n} cells match")), "{line}");
    }
    assert!(!out.contains("MISMATCH"));

    let j = mcsdetect(&["tables", "--id", "ii", "--json"]);
    assert_eq!(j.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&j.stdout).unwrap();
    assert_eq!(v["total"], 30);
    assert_eq!(v["mismatches"], serde_json::json!([]));
}
