use std::path::Path;
use std::process::{Command, Output};

use dregular::constructions::paley_digraph;
use dregular::spectral::classify_spectrum;

fn dregular(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dregular"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is json")
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn paley_spectrum_matches_library() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("p7.txt");
    assert!(dregular(&["construct", "paley", "--p", "7", "-o", p(&file)]).status.success());
    let out = dregular(&["spectrum", "--json", p(&file)]);
    assert!(out.status.success());
    let got = json(&out);
    assert!((got["rho0"].as_f64().unwrap() - 2f64.sqrt()).abs() < 1e-9);
    assert_eq!(got, classify_spectrum(&paley_digraph(7).unwrap()).unwrap().to_json());
}

#[test]
fn ramanujan_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("db.txt");
    assert!(dregular(&["construct", "de-bruijn", "--k", "2", "--s", "3", "-o", p(&file)]).status.success());
    assert_eq!(dregular(&["check", "--ramanujan", p(&file)]).status.code(), Some(0));
    assert_eq!(dregular(&["check", "--ramanujan", "--graph", "petersen"]).status.code(), Some(0));
    assert_eq!(dregular(&["check", "--ramanujan", "--graph", "prism(16)"]).status.code(), Some(1));
}

#[test]
fn bad_inputs_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("bad.txt");
    std::fs::write(&file, "not an edge list\n").unwrap();
    let out = dregular(&["spectrum", p(&file)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
    assert_eq!(dregular(&["construct", "paley", "--p", "9"]).status.code(), Some(2));
    assert_eq!(dregular(&["construct", "paley"]).status.code(), Some(2));
}

#[test]
fn psl2_cayley_is_ramanujan_sparse() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("psl.txt");
    assert!(dregular(&["cayley", "--builtin", "psl2-f31", "-o", p(&file)]).status.success());
    let out = dregular(&["spectrum", "--sparse", "--top", "6", p(&file)]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let rho0 = json(&out)["rho0"].as_f64().unwrap();
    assert!(rho0 <= 2.0 + 1e-4, "{rho0}");
}

#[test]
fn cayley_generator_file_with_field_flag() {
    let dir = tempfile::tempdir().unwrap();
    let gens = dir.path().join("gens.txt");
    let body: String = dregular::algebra::PSL2_F31_GENERATORS
        .lines()
        .filter(|l| !l.trim_start().starts_with("field"))
        .map(|l| format!("{l}\n"))
        .collect();
    std::fs::write(&gens, body).unwrap();
    let out = dregular(&["cayley", "--generators", p(&gens), "--dim", "2", "--json"]);
    assert_eq!(out.status.code(), Some(2));
    let header = dregular::algebra::PSL2_F31_GENERATORS
        .lines()
        .find(|l| l.trim_start().starts_with("field"))
        .unwrap();
    let field = header.trim_start().trim_start_matches("field").trim();
    let out = dregular(&["cayley", "--generators", p(&gens), "--field", field, "--dim", "2", "--json"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let j = json(&out);
    assert_eq!(j["order"].as_u64(), Some(14880));
    assert_eq!(j["k"].as_u64(), Some(4));
}

#[test]
fn line_digraph_labels_and_walk_csv() {
    let dir = tempfile::tempdir().unwrap();
    let edges = dir.path().join("l.txt");
    let labels = dir.path().join("labels.txt");
    let out = dregular(&["line-digraph", "--graph", "complete(4)", "--labels", p(&labels), "-o", p(&edges)]);
    assert!(out.status.success());
    assert_eq!(std::fs::read_to_string(&labels).unwrap().lines().filter(|l| !l.starts_with('#')).count(), 12);
    let out = dregular(&["walk", p(&edges), "--csv", "--lmax", "6"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().next(), Some("ell,tv,l2,support"));
    assert_eq!(text.lines().count(), 8);
}

#[test]
fn alon_csv_records_seeds() {
    let out = dregular(&["alon", "--k", "3", "--n", "40,60", "--trials", "2", "--seed", "9", "--csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().next(), Some("k,n,trial,seed,connected,rho0"));
    assert!(text.lines().any(|l| l.starts_with("3,60,1,10,")));
}

#[test]
fn bounds_on_corpus_pass() {
    let out = dregular(&["bounds", "--lmax", "6"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
}
