//! End-to-end tests of the binary: output shapes, JSON/text agreement,
//! and the documented exit codes.

use std::path::PathBuf;
use std::process::{Command, Output};

use tempfile::TempDir;

fn write_presentation(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_oclattice"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

#[test]
fn words_lists_a_class_with_count() {
    let out = run(&["words", "--content", "x:2,y:1"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "xxy\nxyx\nyxx\n3 words\n");

    let out = run(&["words", "--content", "x:1,y:1,z:1"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).ends_with("6 words\n"));

    // Partitions expand to the canonical content over the first letters.
    let out = run(&["words", "--partition", "2,1"]);
    assert_eq!(stdout(&out), "aab\naba\nbaa\n3 words\n");
}

#[test]
fn words_rejects_bad_content() {
    assert_eq!(code(&run(&["words", "--content", ""])), 2);
    assert_eq!(code(&run(&["words", "--content", "x:0"])), 2);
    assert_eq!(code(&run(&["words", "--content", "x:13,y:1"])), 3);
    assert_eq!(code(&run(&["words", "--content", "x:6,y:6", "--cap-words", "100"])), 3);
}

#[test]
fn phi_reports_classes() {
    let dir = TempDir::new().unwrap();
    let remark = write_presentation(&dir, "remark.txt", "xxy = yxx\nxyz = xzy\n");
    let out = run(&[
        "phi",
        "--presentation",
        remark.to_str().unwrap(),
        "--content",
        "x:1,y:1,z:1",
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "xyz xzy\nyxz yzx\nzxy zyx\n3 classes\n");

    let empty = write_presentation(&dir, "empty.txt", "# no identities\n");
    let out = run(&[
        "phi",
        "--presentation",
        empty.to_str().unwrap(),
        "--content",
        "x:2,y:1",
    ]);
    assert_eq!(stdout(&out), "xxy\nxyx\nyxx\n3 classes\n");
}

#[test]
fn phi_exit_codes() {
    let dir = TempDir::new().unwrap();
    let unbalanced = write_presentation(&dir, "unbalanced.txt", "xy = x\n");
    let out = run(&[
        "phi",
        "--presentation",
        unbalanced.to_str().unwrap(),
        "--content",
        "x:1,y:1",
    ]);
    assert_eq!(code(&out), 4);

    // Missing presentation flag and unreadable path are both input errors.
    assert_eq!(code(&run(&["phi", "--content", "x:1,y:1"])), 2);
    let out = run(&[
        "phi",
        "--presentation",
        dir.path().join("absent.txt").to_str().unwrap(),
        "--content",
        "x:1,y:1",
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn con_matches_known_structures() {
    let dir = TempDir::new().unwrap();
    let empty = write_presentation(&dir, "empty.txt", "");
    let out = run(&[
        "con",
        "--presentation",
        empty.to_str().unwrap(),
        "--partition",
        "1,1,1",
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("quotient size: 6"));
    assert!(text.contains("congruences: 6"));
    assert!(text.contains("distributive: no"));
    assert!(text.contains("modular: yes"));

    let remark = write_presentation(&dir, "remark.txt", "xxy = yxx\nxyz = xzy\n");
    let out = run(&[
        "con",
        "--presentation",
        remark.to_str().unwrap(),
        "--partition",
        "1,1,1,1",
    ]);
    let text = stdout(&out);
    assert!(text.contains("quotient size: 4"));
    assert!(text.contains("congruences: 2"));

    let tail = write_presentation(&dir, "tail.txt", "xyz = xzy\n");
    let out = run(&[
        "con",
        "--presentation",
        tail.to_str().unwrap(),
        "--partition",
        "3,2,1",
    ]);
    let text = stdout(&out);
    assert!(text.contains("quotient size: 3"));
    assert!(text.contains("congruences: 5"));
    assert!(text.contains("group order: 1"));
}

#[test]
fn con_enforces_the_congruence_cap() {
    let dir = TempDir::new().unwrap();
    let tail = write_presentation(&dir, "tail.txt", "xyz = xzy\n");
    let out = run(&[
        "con",
        "--presentation",
        tail.to_str().unwrap(),
        "--partition",
        "4,3,2,1",
        "--cap-congruences",
        "10",
    ]);
    assert_eq!(code(&out), 5);
}

#[test]
fn con_json_carries_the_lattice() {
    let dir = TempDir::new().unwrap();
    let empty = write_presentation(&dir, "empty.txt", "");
    let out = run(&[
        "con",
        "--presentation",
        empty.to_str().unwrap(),
        "--partition",
        "1,1,1",
        "--json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["quotient_size"], 6);
    assert_eq!(v["congruence_count"], 6);
    assert_eq!(v["modular"], true);
    assert_eq!(v["distributive"], false);
    assert_eq!(v["lattice"]["size"], 6);
    assert_eq!(v["lattice"]["leq"].as_array().unwrap().len(), 6);
}

#[test]
fn check_verdicts_and_exit_codes() {
    let dir = TempDir::new().unwrap();
    let com = write_presentation(&dir, "com.txt", "xy = yx\n");
    let out = run(&["check", "--presentation", com.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("verdict: true"));
    assert!(text.contains("prefix/suffix level k: 0"));
    assert!(text.contains("swap level n: 1"));

    let remark = write_presentation(&dir, "remark.txt", "xxy = yxx\nxyz = xzy\n");
    let out = run(&["check", "--presentation", remark.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("verdict: true"));
    assert!(text.contains("quotient size bound N: 324"));
    assert!(text.contains("2^104976 (104977 bits)"));

    let tail = write_presentation(&dir, "tail.txt", "xyz = xzy\n");
    let out = run(&["check", "--presentation", tail.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("verdict: false"));
    assert!(stdout(&out).contains("contains LZ: yes"));

    let empty = write_presentation(&dir, "empty.txt", "");
    let out = run(&["check", "--presentation", empty.to_str().unwrap()]);
    assert_eq!(code(&out), 6);
    assert!(stdout(&out).contains("verdict: unknown"));

    let unbalanced = write_presentation(&dir, "unbalanced.txt", "xy = x\n");
    let out = run(&["check", "--presentation", unbalanced.to_str().unwrap()]);
    assert_eq!(code(&out), 4);
}

#[test]
fn check_json_agrees_with_text() {
    let dir = TempDir::new().unwrap();
    for (name, text, verdict) in [
        ("com.txt", "xy = yx\n", "true"),
        ("tail.txt", "xyz = xzy\n", "false"),
        ("empty.txt", "", "unknown"),
    ] {
        let path = write_presentation(&dir, name, text);
        let text_out = run(&["check", "--presentation", path.to_str().unwrap()]);
        let json_out = run(&["check", "--presentation", path.to_str().unwrap(), "--json"]);
        assert_eq!(code(&text_out), code(&json_out));
        let v: serde_json::Value = serde_json::from_str(&stdout(&json_out)).unwrap();
        assert_eq!(v["verdict"], verdict);
        assert!(stdout(&text_out).contains(&format!("verdict: {verdict}")));
    }
}

#[test]
fn check_json_reports_bounds_for_true_verdicts() {
    let dir = TempDir::new().unwrap();
    let remark = write_presentation(&dir, "remark.txt", "xxy = yxx\nxyz = xzy\n");
    let out = run(&["check", "--presentation", remark.to_str().unwrap(), "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["permutativity"]["found"], true);
    assert_eq!(v["permutativity"]["n"], 3);
    assert_eq!(v["permutativity"]["witness"], "(2 3)");
    assert_eq!(v["k"], 1);
    assert_eq!(v["n"], 2);
    assert_eq!(v["N"], "324");
    assert_eq!(v["card_bound_log2"], "104976");

    let empty = write_presentation(&dir, "empty.txt", "");
    let out = run(&["check", "--presentation", empty.to_str().unwrap(), "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(v.get("N").is_none());
    assert!(v.get("k").is_none());
}

#[test]
fn derive_verdicts_and_exit_codes() {
    let dir = TempDir::new().unwrap();
    let remark = write_presentation(&dir, "remark.txt", "xxy = yxx\nxyz = xzy\n");
    let out = run(&[
        "derive",
        "--presentation",
        remark.to_str().unwrap(),
        "xxyyzz = yyxxzz",
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "derivable\n");

    let empty = write_presentation(&dir, "empty.txt", "");
    let out = run(&["derive", "--presentation", empty.to_str().unwrap(), "xy = yx"]);
    assert_eq!(code(&out), 1);
    assert_eq!(stdout(&out), "not derivable\n");

    let out = run(&["derive", "--presentation", remark.to_str().unwrap(), "xy = x"]);
    assert_eq!(code(&out), 4);

    let out = run(&["derive", "--presentation", remark.to_str().unwrap(), "xy"]);
    assert_eq!(code(&out), 2);

    let out = run(&[
        "derive",
        "--presentation",
        remark.to_str().unwrap(),
        "--json",
        "xy = yx",
    ]);
    assert_eq!(code(&out), 1);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["derivable"], false);
}

#[test]
fn clap_usage_errors_exit_2() {
    assert_eq!(code(&run(&["nonsense"])), 2);
    assert_eq!(code(&run(&[])), 2);
}
