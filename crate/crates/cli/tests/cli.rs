use std::fs;
use std::process::{Command, Output};

use cfum_core::io::{parse_coloring, parse_hypergraph, parse_tree, write_coloring, write_tree};
use cfum_core::psf::cf_b7_explicit;
use cfum_core::transfer::extremal_nonuniform;
use cfum_core::tree::complete_binary;
use cfum_core::{Coloring, Tree};
use serde_json::Value;
use tempfile::TempDir;

fn cfum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cfum"))
        .args(args)
        .env_remove("CFUM_TIME_LIMIT")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn put(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p.display().to_string()
}

fn prefix(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).display().to_string()
}

#[test]
fn verify_exit_codes() {
    let dir = TempDir::new().unwrap();
    let (t, c) = cf_b7_explicit();
    let tree = put(&dir, "b7.tree", &write_tree(&t));
    let col = put(&dir, "b7.col", &write_coloring(&c));
    let out = cfum(&["verify", "--tree", &tree, "--coloring", &col, "--kind", "cf"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["verdict"], "pass");

    let p4 = put(&dir, "p4.tree", &write_tree(&Tree::path_graph(4).unwrap()));
    let ones = put(&dir, "ones.col", "k=1 1 1 1 1\n");
    let out = cfum(&["verify", "--tree", &p4, "--coloring", &ones, "--kind", "um"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["verdict"], "fail");
    assert_eq!(v["edge"], serde_json::json!([0, 1]));

    let bad = put(&dir, "bad.tree", "4\n0 1\n1 x\n");
    let out = cfum(&["verify", "--tree", &bad, "--coloring", &ones, "--kind", "um"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(json(&out)["error"].as_str().unwrap().contains("line"));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(cfum(&[]).status.code(), Some(2));
    assert_eq!(cfum(&["verify", "--kind", "cf"]).status.code(), Some(2));
    assert_eq!(cfum(&["experiment", "no-such"]).status.code(), Some(2));
    let dir = TempDir::new().unwrap();
    let missing = prefix(&dir, "missing.tree");
    assert_eq!(cfum(&["extract", "--tree", &missing, "--l", "1"]).status.code(), Some(2));
}

#[test]
fn generated_files_round_trip() {
    let dir = TempDir::new().unwrap();
    let p = prefix(&dir, "ext");
    let out = cfum(&["gen", "extremal", "--n", "6", "--k", "2", "--out", &p]);
    assert_eq!(out.status.code(), Some(0));
    let inst = extremal_nonuniform(6, 2).unwrap();
    let h = parse_hypergraph(&fs::read_to_string(format!("{p}.hg")).unwrap()).unwrap();
    assert_eq!(h, inst.base);
    let parts = parse_coloring(&fs::read_to_string(format!("{p}.col")).unwrap()).unwrap();
    assert_eq!(parts, inst.part_coloring());

    let out = cfum(&["color", "um-from-cf", "--hypergraph", &format!("{p}.hg"), "--coloring", &format!("{p}.col")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["colors_used"], 4);

    let q = prefix(&dir, "b5");
    assert_eq!(cfum(&["gen", "binary", "--d", "5", "--out", &q]).status.code(), Some(0));
    let t = parse_tree(&fs::read_to_string(format!("{q}.tree")).unwrap()).unwrap();
    assert_eq!(t, complete_binary(5).unwrap());
}

#[test]
fn critical_generation_and_extraction() {
    let dir = TempDir::new().unwrap();
    let p = prefix(&dir, "crit");
    let out = cfum(&["gen", "critical", "--k", "4", "--out", &p]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["n"], 8);
    let tree = format!("{p}.tree");
    let solved = cfum(&["solve", "--tree", &tree, "--kind", "um"]);
    assert_eq!(json(&solved)["chi"], 4);
    let solved = cfum(&["solve", "--tree", &tree, "--kind", "cf"]);
    assert_eq!(json(&solved)["chi"], 3);

    let recipe = put(&dir, "r.json", &json(&out)["recipe"].to_string());
    let again = cfum(&["gen", "critical", "--k", "4", "--recipe", &recipe]);
    assert_eq!(json(&again)["edges"], json(&out)["edges"]);

    let big = prefix(&dir, "big");
    assert_eq!(cfum(&["gen", "critical", "--k", "7", "--seed", "3", "--out", &big]).status.code(), Some(0));
    let out = cfum(&["extract", "--tree", &format!("{big}.tree"), "--l", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["k"], 7);
    assert_eq!(v["certificate"]["verdict"], "pass");
}

#[test]
fn solve_small_path() {
    let dir = TempDir::new().unwrap();
    let p7 = put(&dir, "p7.tree", &write_tree(&Tree::path_graph(7).unwrap()));
    for kind in ["um", "cf", "odd"] {
        let out = cfum(&["solve", "--tree", &p7, "--kind", kind]);
        assert_eq!(out.status.code(), Some(0));
        let v = json(&out);
        assert_eq!(v["chi"], 3, "{kind}");
        assert_eq!(v["status"], "exact");
    }
}

#[test]
fn colorings_are_written_and_verified() {
    let dir = TempDir::new().unwrap();
    let p = prefix(&dir, "psf");
    let out = cfum(&["color", "psf", "--n", "4", "--k", "2", "--r", "1", "--out", &p]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["n"], 63);
    assert_eq!(v["certificate"]["verdict"], "pass");
    let out = cfum(&["verify", "--tree", &format!("{p}.tree"), "--coloring", &format!("{p}.col"), "--kind", "cf"]);
    assert_eq!(out.status.code(), Some(0));

    let out = cfum(&["color", "b7"]);
    assert_eq!(json(&out)["colors_used"], 6);
    let out = cfum(&["color", "b7", "--iterate", "0"]);
    assert_eq!(json(&out)["colors_used"], 2);
    assert_eq!(json(&cfum(&["color", "um-path", "--n", "15"]))["colors_used"], 4);
    assert_eq!(json(&cfum(&["color", "um-binary", "--d", "6"]))["colors_used"], 6);
}

#[test]
fn refute_on_complete_binary_trees() {
    let dir = TempDir::new().unwrap();
    let t = complete_binary(9).unwrap();
    let tree = put(&dir, "b9.tree", &write_tree(&t));
    let col = put(&dir, "c.col", &write_coloring(&Coloring::new(vec![1; t.n()], 1).unwrap()));
    let out = cfum(&["refute", "--tree", &tree, "--coloring", &col, "--k", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["reason"], "all-parities-even");

    let b4 = put(&dir, "b4.tree", &write_tree(&complete_binary(4).unwrap()));
    let levels = put(&dir, "l.col", &write_coloring(&cfum_core::tree::um_color_complete_binary(4).unwrap()));
    let out = cfum(&["refute", "--tree", &b4, "--coloring", &levels, "--k", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["reason"], "no-refutation-forced");

    let p = put(&dir, "p.tree", &write_tree(&Tree::path_graph(7).unwrap()));
    let out = cfum(&["refute", "--tree", &p, "--coloring", &levels, "--k", "4"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn experiment_reports_are_versioned() {
    let out = cfum(&["experiment", "ratio"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema"], "cfum.experiment/1");
    assert_eq!(v["verdict"], "pass");
    assert!(String::from_utf8_lossy(&out.stderr).contains("claims hold"));
    let seeded = cfum(&["experiment", "hierarchy", "--seed", "7"]);
    assert_eq!(json(&seeded)["seed"], 7);
}

#[test]
fn time_limit_variable_is_validated() {
    let dir = TempDir::new().unwrap();
    let p = put(&dir, "p.tree", &write_tree(&Tree::path_graph(3).unwrap()));
    let out = Command::new(env!("CARGO_BIN_EXE_cfum"))
        .args(["solve", "--tree", &p, "--kind", "cf"])
        .env("CFUM_TIME_LIMIT", "soon")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_cfum"))
        .args(["solve", "--tree", &p, "--kind", "cf"])
        .env("CFUM_TIME_LIMIT", "0.5")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let out = cfum(&["solve", "--tree", &p, "--kind", "cf", "--time-limit", "-1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn input_aliases() {
    let dir = TempDir::new().unwrap();
    let p = prefix(&dir, "u");
    cfum(&["gen", "extremal", "--n", "12", "--k", "2", "--l", "3", "--out", &p]);
    let hg = format!("{p}.hg");
    let out = cfum(&["solve", "--input", &hg, "--kind", "cf", "--time-limit", "30"]);
    assert_eq!(json(&out)["chi"], 2);
    let out = cfum(&["color", "um-from-cf", "--input", &hg, "--cf", &format!("{p}.col"), "--uniform", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["colors_used"], 7);
}
