use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn forge(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_poset-forge"))
        .args(args)
        .env("POSET_FORGE_THREADS", "2")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("poset-forge-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn gen_pipes_into_analyze() {
    let poset = forge(&["gen", "boolean", "4"], "");
    assert!(poset.status.success());
    let report = forge(&["analyze"], &stdout(&poset));
    assert!(report.status.success());
    let text = stdout(&report);
    assert!(text.contains("eulerian: yes"), "{text}");
    assert!(text.lines().any(|l| l.split_whitespace().take(3).eq(["4", "1", "24"])), "{text}");
}

#[test]
fn export_round_trip_is_byte_identical() {
    for family in [&["cubical", "3"][..], &["glued-ngons", "3", "5"], &["doubled-tree", "5", "1", "3", "1", "2"]] {
        let mut args = vec!["gen"];
        args.extend_from_slice(family);
        let original = stdout(&forge(&args, ""));
        let exported = stdout(&forge(&["export", "--json"], &original));
        assert_eq!(exported, original);
        let a = stdout(&forge(&["analyze", "--json"], &original));
        let b = stdout(&forge(&["analyze", "--json"], &exported));
        assert_eq!(a, b);
    }
}

#[test]
fn iso_distinguishes_deformed_from_cubical() {
    let deformed = scratch("deformed.json", &stdout(&forge(&["gen", "deformed-cubical", "3"], "")));
    let cubical = scratch("cubical.json", &stdout(&forge(&["gen", "cubical", "2"], "")));
    let out = forge(&["iso", deformed.to_str().unwrap(), cubical.to_str().unwrap()], "");
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).starts_with("non-isomorphic"));
    let same = forge(&["iso", cubical.to_str().unwrap(), cubical.to_str().unwrap()], "");
    assert_eq!(same.status.code(), Some(0));
}

#[test]
fn classify_and_verify() {
    let out = forge(&["classify", "binomial", "--max-rank", "12"], "");
    assert!(out.status.success());
    assert!(stdout(&out).contains("2 leaves"));
    let json = forge(&["classify", "sheffer", "--b-rule", "butterfly", "--max-rank", "6", "--odd-cap", "4", "--json"], "");
    let v: serde_json::Value = serde_json::from_str(&stdout(&json)).unwrap();
    assert_eq!(v["odd_cap"], 4);
    for suite in ["binomial-theorem", "gf-identities", "dodecahedron-examples"] {
        let out = forge(&["verify", suite], "");
        assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    }
}

#[test]
fn usage_errors() {
    assert_eq!(forge(&["gen", "nonsense"], "").status.code(), Some(2));
    assert_eq!(forge(&["classify", "binomial", "--max-rank", "2"], "").status.code(), Some(2));
    assert_eq!(forge(&["analyze"], "{\"size\": 2, \"covers\": [[0, 5]]}").status.code(), Some(2));
}

#[test]
fn complexes_become_posets() {
    let complex = stdout(&forge(&["gen", "complex", "zw"], ""));
    let poset = forge(&["poset-of", "--dual"], &complex);
    assert!(poset.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&forge(&["analyze", "--json"], &stdout(&poset)))).unwrap();
    assert_eq!(report["kind"], "sheffer");
    assert_eq!(report["eulerian"]["eulerian"], true);
}
