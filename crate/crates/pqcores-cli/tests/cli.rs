//! End-to-end checks of the command-line surface: exit codes, output
//! determinism, exports, and the documented example invocations.

use std::process::{Command, Output};

fn pqcores(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pqcores"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn family_reports_structure() {
    let out = pqcores(&["family", "ms:2,3,,0"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("order: 15"));
    assert!(text.contains("valency: 4"));
}

#[test]
fn family_dot_export() {
    let out = pqcores(&["family", "gpr:7,2", "--export", "dot"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.matches(" -- ").count(), 7, "7-vertex 2-regular graph has 7 edges");
}

#[test]
fn family_json_round_trip_via_file() {
    let dir = std::env::temp_dir().join(format!("pqcores-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("g.json");
    let out = pqcores(&["family", "g2qr:5,2", "--export", "json", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let first = std::fs::read_to_string(&path).unwrap();
    let out = pqcores(&["family", "g2qr:5,2", "--export", "json", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let second = std::fs::read_to_string(&path).unwrap();
    assert_eq!(first, second, "export must be byte-stable");
    assert!(first.starts_with("{\"n\":10,"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn parse_errors_exit_1() {
    let out = pqcores(&["family", "nonsense:1,2"]);
    assert_eq!(out.status.code(), Some(1));
    let out = pqcores(&["core", "gpr:6,2", "--method", "brute"]);
    assert_eq!(out.status.code(), Some(1), "6 is not prime");
}

#[test]
fn core_both_agrees_and_exits_zero() {
    let out = pqcores(&["core", "g2qr:5,2", "--method", "both"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("\"agreement\":\"AGREE\""));
    assert!(text.contains("\"predicted\":\"K_2\""));
}

#[test]
fn core_output_is_deterministic() {
    let a = stdout(&pqcores(&["core", "ms:2,3,,1,2", "--method", "both"]));
    let b = stdout(&pqcores(&["core", "ms:2,3,,1,2", "--method", "both"]));
    assert_eq!(a, b);
}

#[test]
fn hom_examples() {
    // a triangle maps into K_5
    let out = pqcores(&["hom", "gpr:3,2", "gpr:5,4"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("\"result\":\"found\""));
    // C_5 never maps into C_7
    let out = pqcores(&["hom", "gpr:5,2", "gpr:7,2"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("\"result\":\"none\""));
}

#[test]
fn constrained_hom_matches_classification_branch() {
    // the order-15 twisted product with the twist outside the subgroup is a
    // core, so neither class-constrained map may exist
    let out = pqcores(&["hom", "gpr:3,2", "gpr:5,2", "--constrained", "gpqrsu:3,5,1,2,4"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("\"result\":\"none\""));
    let out = pqcores(&["hom", "gpr:5,2", "gpr:3,2", "--constrained", "gpqrsu:3,5,1,2,4"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("\"result\":\"none\""));
    // mismatched endpoint specs are a usage error
    let out = pqcores(&["hom", "gpr:3,2", "gpr:7,2", "--constrained", "gpqrsu:3,5,1,2,4"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn invariants_on_complete_circulant() {
    let out = pqcores(&["invariants", "gpr:5,4"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("omega: 5"));
    assert!(text.contains("alpha: 1"));
    assert!(text.contains("chi: 5"));
}
