//! End-to-end checks of the command-line surface: output shapes, exit
//! codes, and byte-level determinism of JSON output.

use std::process::{Command, Output};

fn nilorb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nilorb"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn roots_g2_six_lines() {
    let out = nilorb(&["roots", "G2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .collect();
    assert_eq!(lines.len(), 6);
    assert!(lines[0].contains("gap 1 0"));
    assert!(lines[5].contains("gap 3 2"));
}

#[test]
fn roots_e7_sixty_three_lines() {
    let out = nilorb(&["roots", "E7"]);
    assert!(out.status.success());
    let count = stdout(&out)
        .lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .count();
    assert_eq!(count, 63);
}

#[test]
fn roots_unknown_kind_is_usage_error() {
    let out = nilorb(&["roots", "H3"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn orbits_f4_fifteen_rows() {
    let out = nilorb(&["orbits", "F4", "--seed", "1"]);
    assert!(out.status.success());
    let rows = stdout(&out)
        .lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .count();
    assert_eq!(rows, 15);
}

#[test]
fn orbits_g2_json_four_records() {
    let out = nilorb(&["orbits", "G2", "--seed", "1", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 4);
}

#[test]
fn orbits_json_is_byte_deterministic() {
    let a = nilorb(&["orbits", "F4", "--seed", "33", "--json", "--threads", "2"]);
    let b = nilorb(&["orbits", "F4", "--seed", "33", "--json", "--threads", "1"]);
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout, "same seed must give identical bytes");
}

#[test]
fn rep_zero_diagram_is_usage_error() {
    let out = nilorb(&["rep", "G2", "0,0", "--seed", "1"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn rep_invalid_diagram_exits_nonzero_with_stats() {
    let out = nilorb(&[
        "rep",
        "G2",
        "1,1",
        "--gap-order",
        "--seed",
        "1",
        "--trials",
        "8",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("8 trials"), "stderr: {err}");
}

#[test]
fn rep_g2_minimal_orbit() {
    let out = nilorb(&["rep", "G2", "1,0", "--seed", "4"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("e = "));
    assert!(text.contains("h = "));
    assert!(text.contains("f = "));
}

#[test]
fn index_g2_certifies_and_rechecks() {
    let dir = std::env::temp_dir().join("nilorb_cli_test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("g2.json");
    let path_str = path.to_str().unwrap();
    let out = nilorb(&["index", "G2", "--seed", "2", "--out", path_str]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.matches("certified").count(), 4);
    // recheck the written certificates
    let out = nilorb(&["index", "G2", "--recheck", path_str, "--seed", "2"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).matches(" ok").count(), 4);
    // tamper and recheck again
    let mut certs: Vec<serde_json::Value> =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    certs[0]["achieved_rank"] = serde_json::json!(0);
    let tampered = dir.join("g2_bad.json");
    std::fs::write(&tampered, serde_json::to_string(&certs).unwrap()).unwrap();
    let out = nilorb(&[
        "index",
        "G2",
        "--recheck",
        tampered.to_str().unwrap(),
        "--seed",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn orbits_e8_sixty_nine_rows() {
    let out = nilorb(&["orbits", "E8", "--seed", "1"]);
    assert!(out.status.success());
    let rows = stdout(&out)
        .lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .count();
    assert_eq!(rows, 69);
}

#[test]
fn index_f4_all_certified() {
    let out = nilorb(&["index", "F4", "--seed", "3", "--out", "-"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).matches("certified").count(), 15 + 15);
    // 15 table lines + 15 "conclusion": "certified" JSON fields
}

#[test]
fn doublecen_g2_flags_one_exceptional_row() {
    let out = nilorb(&["doublecen", "G2", "--seed", "6"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let flagged: Vec<&str> = text
        .lines()
        .filter(|l| l.contains("exceeds rank"))
        .collect();
    assert_eq!(flagged.len(), 1);
    assert!(flagged[0].contains("A1+~A1"));
    assert!(flagged[0].contains("min dim C_ex =  3"));
}
