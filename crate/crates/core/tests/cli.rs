use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use order_forge::arith::{encode, CarrierFile};
use order_forge::generic::EmbeddingState;
use order_forge::probe::VertexOrdering;
use order_forge::ColoredRegularGraph;

fn forge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_order-forge"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn path(dir: &Path, name: &str) -> PathBuf {
    dir.join(name)
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn graph_gen_matches_golden_file() {
    let out = forge(&["graph", "gen", "--n", "4", "--d", "2", "--seed", "1"]);
    assert!(out.status.success());
    let golden = include_str!("data/n4_d2_seed1.cgraph");
    assert_eq!(String::from_utf8(out.stdout).unwrap(), golden);
}

#[test]
fn graph_files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let g = path(dir.path(), "g.cgraph");
    let h = path(dir.path(), "h.cgraph");
    let log = path(dir.path(), "log.txt");
    assert!(forge(&["graph", "gen", "--n", "500", "--d", "3", "--seed", "2", "--out", s(&g)]).status.success());
    let out = forge(&["graph", "surgery", "--in", s(&g), "--c", "4", "--changelog", s(&log), "--out", s(&h)]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&h).unwrap();
    let parsed = ColoredRegularGraph::parse(&text).unwrap();
    assert_eq!(parsed.to_text(), text);
    assert!(std::fs::read_to_string(&log).unwrap().starts_with("changelog v1"));

    let stats = forge(&["graph", "stats", "--in", s(&h), "--c", "4"]);
    let stats = String::from_utf8(stats.stdout).unwrap();
    assert!(stats.contains("girth_gt_c=1"), "{stats}");
}

#[test]
fn carrier_encode_decode() {
    let dir = tempfile::tempdir().unwrap();
    let c = path(dir.path(), "p3.carrier");
    assert!(forge(&["arith", "encode", "--k", "3", "--out", s(&c)]).status.success());
    let file = CarrierFile::parse(&std::fs::read_to_string(&c).unwrap()).unwrap();
    assert_eq!(file.k, Some(3));
    let out = forge(&["arith", "decode", "--in", s(&c)]);
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().contains("verified=1"));
}

#[test]
fn tampered_carrier_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let c = path(dir.path(), "bad.carrier");
    let mut carrier = encode(2).unwrap();
    let r = carrier.param_ranks[0];
    carrier.biorder = carrier.biorder.swap2(r + 3, r + 4);
    std::fs::write(&c, carrier.to_text()).unwrap();
    let out = forge(&["arith", "decode", "--in", s(&c)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stdout).unwrap().contains("verified=0"));
}

#[test]
fn plant_then_scan() {
    let dir = tempfile::tempdir().unwrap();
    let g = path(dir.path(), "g.cgraph");
    let o = path(dir.path(), "o.order");
    let rep = path(dir.path(), "plant.rep");
    forge(&["graph", "gen", "--n", "200", "--d", "3", "--seed", "7", "--out", s(&g)]);
    let out = forge(&["probe", "plant", "--graph", s(&g), "--target", "3,1,0,2", "--out", s(&o), "--report", s(&rep)]);
    assert!(out.status.success());
    let order = VertexOrdering::parse(&std::fs::read_to_string(&o).unwrap()).unwrap();
    assert_eq!(order.len(), 200);
    let rep = std::fs::read_to_string(&rep).unwrap();
    let a = rep.lines().find_map(|l| l.strip_prefix("a=")).unwrap();
    let color = rep.lines().find_map(|l| l.strip_prefix("color=")).unwrap();

    let scan = forge(&["probe", "scan", "--graph", s(&g), "--order", s(&o), "--target", "3,1,0,2"]);
    let scan = String::from_utf8(scan.stdout).unwrap();
    assert!(scan.lines().any(|l| l == format!("{a}\t{color}")), "{scan}");
}

#[test]
fn generic_order_output_parses() {
    let dir = tempfile::tempdir().unwrap();
    let q = path(dir.path(), "q.txt");
    let out = path(dir.path(), "state.txt");
    std::fs::write(&q, "# two parameters, then squeeze\nvars=0 lt p4 p9\nand lt p4 x1 lt x1 p9\nand lt x1 x2 lt x2 x1\n")
        .unwrap();
    let res = forge(&["generic-order", "--constraints", s(&q), "--out", s(&out)]);
    assert!(res.status.success());
    let report = String::from_utf8(res.stdout).unwrap();
    assert!(report.contains("skipped=1") && report.contains("sound=1"), "{report}");
    let text = std::fs::read_to_string(&out).unwrap();
    assert_eq!(EmbeddingState::parse(&text).unwrap().to_text(), text);
}

#[test]
fn shatter_lex_report() {
    let out = forge(&["shatter", "--p", "2", "--n", "5", "--k", "3", "--order", "lex"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("verified=1") && text.contains("pi=0,1") && text.contains("patterns=8"));
}

#[test]
fn shatter_order_file() {
    let dir = tempfile::tempdir().unwrap();
    let f = path(dir.path(), "rev.txt");
    let seq: Vec<String> = (0..16).rev().map(|x: usize| x.to_string()).collect();
    std::fs::write(&f, seq.join(" ")).unwrap();
    let out = forge(&["shatter", "--p", "2", "--n", "4", "--k", "2", "--order", "file", "--order-file", s(&f)]);
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().contains("pi=1,0"));
}

#[test]
fn bounds_commands() {
    let out = forge(&["bound", "hoeffding", "--n", "100", "--p", "0.5", "--x", "30"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let b: f64 = text.lines().find_map(|l| l.strip_prefix("bound=")).unwrap().parse().unwrap();
    assert!((b / (-8.0f64).exp() - 1.0).abs() < 1e-12);
    let out = forge(&["bound", "check", "--n", "20", "--p", "0.5", "--x", "0,5,10", "--samples", "10000"]);
    assert!(out.status.success());
}

#[test]
fn exit_codes() {
    // usage: unknown flag, missing file, bad probability
    assert_eq!(forge(&["graph", "gen", "--n", "4"]).status.code(), Some(2));
    assert_eq!(forge(&["graph", "stats", "--in", "/nonexistent", "--c", "3"]).status.code(), Some(2));
    assert_eq!(forge(&["bound", "hoeffding", "--n", "10", "--p", "2", "--x", "1"]).status.code(), Some(2));
    // construction: nothing to plant in a 4-vertex graph
    let dir = tempfile::tempdir().unwrap();
    let g = path(dir.path(), "g.cgraph");
    forge(&["graph", "gen", "--n", "4", "--d", "2", "--out", s(&g)]);
    assert_eq!(forge(&["probe", "plant", "--graph", s(&g), "--target", "2,0,1"]).status.code(), Some(3));
}
