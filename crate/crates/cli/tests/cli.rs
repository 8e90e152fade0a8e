use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn locchrom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_locchrom")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).to_str().unwrap().to_string()
}

fn temp_dir(tag: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("locchrom-cli-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn schrijver_local_chromatic_number() {
    let dir = temp_dir("sg");
    let g = path(&dir, "sg.json");
    assert!(locchrom(&["gen", "--family", "schrijver", "--n", "6", "--k", "2", "--out", &g]).status.success());
    for method in ["direct", "partitions", "hom-universal"] {
        assert_eq!(json(&locchrom(&["psi", &g, "--method", method]))["psi"], 4, "{method}");
    }
    assert_eq!(json(&locchrom(&["chi", &g]))["chi"], 4);
    assert_eq!(json(&locchrom(&["fchi", &g]))["fchi"], "3");
}

#[test]
fn h_hat_euler_and_homology() {
    let dir = temp_dir("hhat");
    let k = path(&dir, "h.json");
    let cells = path(&dir, "cells.json");
    let out = locchrom(&["complex", "--kind", "hhat", "--m", "5", "--r", "3", "--out", &k, "--cells-out", &cells]);
    assert!(out.status.success());
    let euler = locchrom(&["euler", &k]);
    assert_eq!(String::from_utf8_lossy(&euler.stdout).trim(), "-10");
    let h = json(&locchrom(&["homology", &k]));
    assert_eq!(h["betti"], serde_json::json!([1, 12, 1]));
    assert_eq!(h["f_vector"], serde_json::json!([110, 360, 240]));
    let cells: Value = serde_json::from_str(&std::fs::read_to_string(&cells).unwrap()).unwrap();
    assert_eq!(cells["cells"].as_array().unwrap().len(), 110);
}

#[test]
fn link_matches_small_l_complex() {
    let dir = temp_dir("link");
    let (k, l, lk) = (path(&dir, "h.json"), path(&dir, "l.json"), path(&dir, "lk.json"));
    assert!(locchrom(&["complex", "--kind", "hhat", "--m", "5", "--r", "3", "--out", &k]).status.success());
    assert!(locchrom(&["complex", "--kind", "lmr", "--m", "3", "--r", "2", "--out", &l]).status.success());
    assert!(locchrom(&["link", &k, "--vertex", "{4}⊎{5}", "--out", &lk]).status.success());
    // the order-complex link is the subdivided hexagon: still a circle
    let h = json(&locchrom(&["homology", &lk]));
    assert_eq!(h["betti"], serde_json::json!([1, 1]));
    assert_eq!(json(&locchrom(&["iso", &l, &l]))["isomorphic"], true);
    assert_eq!(json(&locchrom(&["iso", &l, &lk]))["isomorphic"], false);
}

#[test]
fn hom_and_cnf_export() {
    let dir = temp_dir("hom");
    let (g, h, cnf) = (path(&dir, "c5.json"), path(&dir, "k2.json"), path(&dir, "x.cnf"));
    assert!(locchrom(&["gen", "--family", "cycle", "--n", "5", "--out", &g]).status.success());
    assert!(locchrom(&["gen", "--family", "complete", "--m", "2", "--out", &h]).status.success());
    assert_eq!(json(&locchrom(&["hom", &g, &h, "--cnf-out", &cnf]))["result"], "none");
    let text = std::fs::read_to_string(&cnf).unwrap();
    assert!(text.lines().any(|l| l == "p cnf 10 20"), "{text}");
    assert_eq!(json(&locchrom(&["hom", &g, &g]))["result"], "found");
}

#[test]
fn budget_exhaustion_exits_with_two() {
    let dir = temp_dir("budget");
    let (g, h) = (path(&dir, "sg.json"), path(&dir, "u.json"));
    assert!(locchrom(&["gen", "--family", "schrijver", "--n", "6", "--k", "2", "--out", &g]).status.success());
    assert!(locchrom(&["gen", "--family", "universal", "--m", "9", "--r", "3", "--out", &h]).status.success());
    assert_eq!(locchrom(&["hom", &g, &h, "--budget", "1"]).status.code(), Some(2));
    assert_eq!(locchrom(&["verify", "paper", "--budget", "1"]).status.code(), Some(2));
}

#[test]
fn invalid_input_exits_with_one() {
    assert_eq!(locchrom(&["gen", "--family", "kneser", "--n", "3", "--k", "2"]).status.code(), Some(1));
    assert_eq!(locchrom(&["psi", "/nonexistent/graph.json"]).status.code(), Some(1));
    assert_eq!(locchrom(&["complex", "--kind", "hhat", "--m", "5", "--r", "1"]).status.code(), Some(1));
}

#[test]
fn maps_report() {
    let v = json(&locchrom(&["maps", "--lemma7", "--m", "3", "--r", "2"]));
    assert_eq!(v["f"]["simplicial"], true);
    assert_eq!(v["f"]["monotone"], Value::Null);
    assert_eq!(v["g"]["monotone"], true);
    assert_eq!(v["g"]["nonempty"], true);
}

#[test]
fn verify_json_is_complete_and_deterministic() {
    let out = locchrom(&["verify", "paper", "--json"]);
    let reports = json(&out);
    let reports = reports.as_array().unwrap();
    assert_eq!(reports.len(), 14);
    let ids: Vec<&str> = reports.iter().map(|r| r["claim_id"].as_str().unwrap()).collect();
    let mut sorted = ids.clone();
    sorted.sort_unstable();
    assert_eq!(ids, sorted);
    for r in reports {
        let status = r["status"].as_str().unwrap();
        assert!(status == "pass" || status == "informational", "{r}");
    }
    let again = json(&locchrom(&["verify", "paper", "--json"]));
    let strip = |v: &Value| -> Vec<Value> {
        v.as_array()
            .unwrap()
            .iter()
            .map(|r| {
                let mut r = r.clone();
                r.as_object_mut().unwrap().remove("runtime_ms");
                r
            })
            .collect()
    };
    assert_eq!(strip(&again), strip(&Value::Array(reports.clone())));
}

#[test]
fn borsuk_generation_is_seeded() {
    let a = locchrom(&["gen", "--family", "borsuk", "--dim", "3", "--points", "12", "--alpha", "1.5"]);
    let b = locchrom(&["gen", "--family", "borsuk", "--dim", "3", "--points", "12", "--alpha", "1.5", "--seed", "0"]);
    let c = locchrom(&["gen", "--family", "borsuk", "--dim", "3", "--points", "12", "--alpha", "1.5", "--seed", "7"]);
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
}
