use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn alliance(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_alliance")).current_dir(dir).args(args).output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

// 4-cycle: any two opposite vertices form a minimum alliance.
const C4: &str = "4 4\n0 1\n1 2\n2 3\n3 0\n";

#[test]
fn verify_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("c4.txt"), C4).unwrap();
    assert_eq!(code(&alliance(dir.path(), &["verify", "--graph", "c4.txt", "--set", "0,2"])), 0);
    assert_eq!(code(&alliance(dir.path(), &["verify", "--graph", "c4.txt", "--set", "0"])), 1);
    assert_eq!(code(&alliance(dir.path(), &["verify", "--graph", "c4.txt", "--set", "0,2", "--forbidden", "2"])), 1);
    assert_eq!(code(&alliance(dir.path(), &["verify", "--graph", "c4.txt", "--set", "0,2", "--r", "1"])), 1);

    let out = alliance(dir.path(), &["--json", "verify", "--graph", "c4.txt", "--set", "0"]);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["violations"].as_array().unwrap().len(), 2);
}

#[test]
fn solve_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("c4.txt"), C4).unwrap();
    for method in ["brute", "branch", "vc", "orbit"] {
        let out = alliance(
            dir.path(),
            &["--json", "solve", "--graph", "c4.txt", "--r", "2", "--strength", "1", "--method", method],
        );
        assert_eq!(code(&out), 0, "{method}");
        let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
        assert_eq!(v["size"], 2, "{method}");
    }
    let none = alliance(dir.path(), &["solve", "--graph", "c4.txt", "--r", "1", "--strength", "1"]);
    assert_eq!(code(&none), 3);
    let budget = alliance(
        dir.path(),
        &["solve", "--graph", "c4.txt", "--r", "4", "--strength", "2", "--method", "brute", "--budget-nodes", "1"],
    );
    assert_eq!(code(&budget), 4);
}

#[test]
fn reduce_chain_and_check() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(code(&alliance(d, &["--seed", "5", "gen", "mrss", "--k", "2", "--n", "3", "--out", "m.json"])), 0);
    let out = alliance(
        d,
        &[
            "reduce", "mrss-soafn", "--in", "m.json", "--out", "t.txt", "--roles", "roles.json", "--provenance",
            "prov.json", "--instance", "s1.json",
        ],
    );
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let roles: Value = serde_json::from_str(&fs::read_to_string(d.join("roles.json")).unwrap()).unwrap();
    let prov: Value = serde_json::from_str(&fs::read_to_string(d.join("prov.json")).unwrap()).unwrap();
    let header = fs::read_to_string(d.join("t.txt")).unwrap();
    let n: usize = header.split_whitespace().next().unwrap().parse().unwrap();
    assert_eq!(prov["order"], n);
    assert_eq!(roles.as_object().unwrap().len(), n);

    assert_eq!(code(&alliance(d, &["reduce", "collapse", "--in", "s1.json", "--out", "t2.txt", "--instance", "s2.json"])), 0);
    assert_eq!(code(&alliance(d, &["reduce", "soafn-oaf", "--in", "s2.json", "--out", "t3.txt"])), 0);
    // Wrong stage order is a precondition error, not a silent success.
    assert_eq!(code(&alliance(d, &["reduce", "soafn-oaf", "--in", "s1.json", "--out", "t4.txt"])), 2);

    for tier in ["lift", "roundtrip"] {
        assert_eq!(code(&alliance(d, &["check", tier, "mrss-soafn", "--in", "m.json"])), 0, "{tier}");
    }
    let equiv = alliance(d, &["check", "equiv", "mrss-soafn", "--in", "m.json", "--budget-nodes", "10"]);
    assert_eq!(code(&equiv), 4);
}

#[test]
fn check_with_explicit_witness() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    // Triangle with k = 2; {0, 1} covers every edge, {0} does not.
    fs::write(d.join("vc.json"), r#"{"kind":"vertex-cover","n":3,"edges":[[0,1],[1,2],[0,2]],"k":2,"max_degree_3":true}"#)
        .unwrap();
    fs::write(d.join("good.json"), r#"{"vertices":[0,1]}"#).unwrap();
    fs::write(d.join("bad.json"), r#"{"vertices":[0]}"#).unwrap();
    let good = alliance(d, &["check", "lift", "vc-split", "--in", "vc.json", "--witness", "good.json"]);
    assert_eq!(code(&good), 0, "{}{}", stdout(&good), String::from_utf8_lossy(&good.stderr));
    assert_eq!(code(&alliance(d, &["check", "lift", "vc-split", "--in", "vc.json", "--witness", "bad.json"])), 1);
    assert_eq!(code(&alliance(d, &["check", "equiv", "vc-split", "--in", "vc.json"])), 0);
}

#[test]
fn gen_writes_parseable_sources() {
    let dir = tempfile::tempdir().unwrap();
    for kind in ["vc3", "mrss", "phs", "strings", "cycle-diagram", "circle", "grid", "ds"] {
        let out = alliance(dir.path(), &["--seed", "2", "gen", kind]);
        assert_eq!(code(&out), 0, "{kind}: {}", String::from_utf8_lossy(&out.stderr));
        let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
        assert!(v["kind"].is_string(), "{kind}");
    }
    let g = alliance(dir.path(), &["--seed", "2", "gen", "graph", "--n", "5"]);
    assert!(stdout(&g).starts_with("5 "));
}

#[test]
fn small_suite_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = alliance(dir.path(), &["--seed", "9", "suite", "--cases", "1", "--equiv-cases", "0"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert!(stdout(&out).contains("0 fail"));
}
