use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use gassmann_core::obstruction::CsReport;
use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_gassmann"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const A5_FP: &str = "< a, b | a^2, b^3, (a*b)^5 >\n";
const A5_PGRP: &str = "# A5\ndegree 5\n(1,2)(3,4)\n(1,3,5)\n";

#[test]
fn coset_enumeration_index() {
    let dir = tempfile::tempdir().unwrap();
    let fp = write(dir.path(), "a5.fp", A5_FP);
    let o = run(&["coset-enum", s(&fp), "--subgroup", "a"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "index = 30\n");
    let o = run(&["coset-enum", s(&fp), "--json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["index"], 60);
}

#[test]
fn coset_limit_is_a_budget_exit() {
    let dir = tempfile::tempdir().unwrap();
    let fp = write(dir.path(), "a5.fp", A5_FP);
    let o = bin()
        .args(["coset-enum", s(&fp)])
        .env("GASSMANN_MAX_COSETS", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("coset limit"));
}

#[test]
fn s_invariant_of_a5() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "a5.pgrp", A5_PGRP);
    let o = run(&["s-invariant", s(&g)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("S = 0"));
    let fp = write(dir.path(), "a5.fp", A5_FP);
    let o = run(&["s-invariant", s(&fp), "--subgroup", "a*b", "--json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["abelianization"], "Z/5");
    assert_eq!(v["S"], 0);
    assert_eq!(v["index"], 12);
}

#[test]
fn input_errors_exit_two() {
    assert_eq!(run(&["s-invariant", "/nonexistent.pgrp"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.fp", "< a | a^ >");
    assert_eq!(run(&["coset-enum", s(&bad)]).status.code(), Some(2));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn s16_demo_json() {
    let o = run(&["demo", "s16", "--json"]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!((v["sH"].as_u64(), v["sK"].as_u64(), v["csinv"].as_u64()), (Some(1), Some(0), Some(1)));
    assert_eq!(v["verdict"], "obstructed");
    let report: CsReport = serde_json::from_value(v.clone()).unwrap();
    assert_eq!(serde_json::to_value(&report).unwrap(), v);
    assert_eq!(report.csinv, report.s_h ^ report.s_k);
}

#[test]
fn text_and_json_agree() {
    let v: Value = serde_json::from_str(&stdout(&run(&["demo", "s16", "--json"]))).unwrap();
    let text = stdout(&run(&["demo", "s16"]));
    assert!(text.contains(&format!("S(H) = {}", v["sH"])));
    assert!(text.contains(&format!("S(K) = {}", v["sK"])));
    assert!(text.contains(&format!("csinv = {}", v["csinv"])));
    for c in v["certificate"]["classes"].as_array().unwrap() {
        let line = format!("class {}: |C∩H| = {}, |C∩K| = {}", c["key"].as_str().unwrap(), c["inH"], c["inK"]);
        assert!(text.contains(&line), "{line}");
    }
}

#[test]
fn worker_count_does_not_change_output() {
    let one = run(&["demo", "s16", "--json", "--n", "18", "--workers", "1"]);
    let four = run(&["demo", "s16", "--json", "--n", "18", "--workers", "4"]);
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(one.status.code(), four.status.code());
}

#[test]
fn gassmann_check_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "s4.pgrp", "degree 4\n(1,2)\n(1,2,3,4)\n");
    let h = write(dir.path(), "h.pgrp", "degree 4\n(1,2)\n");
    let k = write(dir.path(), "k.pgrp", "degree 4\n(1,2)(3,4)\n");
    let k2 = write(dir.path(), "k2.pgrp", "degree 4\n(3,4)\n");
    assert_eq!(run(&["check-gassmann", s(&g), s(&h), s(&k)]).status.code(), Some(1));
    assert_eq!(run(&["check-gassmann", s(&g), s(&h), s(&k2)]).status.code(), Some(0));
}

#[test]
fn hom_search_counts() {
    let dir = tempfile::tempdir().unwrap();
    let f2 = write(dir.path(), "f2.fp", "< a, b >");
    let s3 = write(dir.path(), "s3.pgrp", "degree 3\n(1,2)\n(1,2,3)\n");
    let all: Value = serde_json::from_str(&stdout(&run(&["hom-search", s(&f2), s(&s3), "--json"]))).unwrap();
    assert_eq!(all["count"], 36);
    let onto: Value =
        serde_json::from_str(&stdout(&run(&["hom-search", s(&f2), s(&s3), "--surjective", "--json"]))).unwrap();
    assert_eq!(onto["count"], 18);
    let tight = run(&["hom-search", s(&f2), s(&s3), "--hom-budget", "3"]);
    assert_eq!(tight.status.code(), Some(3));
}

#[test]
fn q8abc_satisfies_cs() {
    let o = run(&["verify-cs-q8abc", "1", "3", "1", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], "satisfies CS (exhaustive)");
    assert_eq!(run(&["verify-cs-q8abc", "1", "3", "3"]).status.code(), Some(2));
}

#[test]
fn search_pairs_in_order_32_group() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "g.pgrp", "degree 8\n(1,2,3,4,5,6,7,8)\n(2,4)(3,7)(6,8)\n(2,6)(4,8)\n");
    let o = run(&["search-pairs", s(&g), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let pairs = v["pairs"].as_array().unwrap();
    assert_eq!(pairs.len(), 1);
    assert_eq!(pairs[0]["certificate"]["verdict"], true);
    let o = run(&["verify-cs", s(&g)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("satisfies CS (exhaustive)"));
}

#[test]
fn csinv_through_a_presentation_of_s16() {
    let dir = tempfile::tempdir().unwrap();
    let n = 16;
    let gens: Vec<String> = (1..n).map(|i| format!("s{i}")).collect();
    let mut rels = Vec::new();
    for i in 1..n {
        rels.push(format!("s{i}^2"));
        for j in i + 1..n {
            rels.push(format!("(s{i}*s{j})^{}", if j == i + 1 { 3 } else { 2 }));
        }
    }
    let fp = write(dir.path(), "s16.fp", &format!("< {} | {} >", gens.join(", "), rels.join(", ")));
    let phi: String = (1..n).map(|i| format!("({i},{})\n", i + 1)).collect();
    let phi = write(dir.path(), "phi.pgrp", &format!("degree 16\n{phi}"));
    let g = write(dir.path(), "s16.pgrp", "degree 16\n(1,2)\n(1,2,3,4,5,6,7,8,9,10,11,12,13,14,15,16)\n");
    let h = write(
        dir.path(),
        "h.pgrp",
        "degree 16\n(1,5,9,13)(2,6,10,14)(3,7,11,15)(4,8,12,16)\n(1,3)(2,4)(5,7)(6,8)(9,11)(10,12)(13,15)(14,16)\n\
         (1,2)(3,4)(5,6)(7,8)(9,10)(11,12)(13,14)(15,16)\n",
    );
    let k = write(
        dir.path(),
        "k.pgrp",
        "degree 16\n(1,2)(3,4)(5,7)(6,8)(9,10)(11,12)(13,15)(14,16)\n(1,3)(2,4)(5,6)(7,8)(9,11)(10,12)(13,14)(15,16)\n\
         (1,5,9,13)(2,6,10,14)(3,7,11,15)(4,8,12,16)\n",
    );
    let o = run(&[
        "csinv", "--pi", s(&fp), "--phi", s(&phi), "--triple", s(&g), s(&h), s(&k), "--json",
    ]);
    assert_eq!(o.status.code(), Some(1), "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["csinv"], 1);
    assert!(v["budget_notes"].as_str().unwrap().contains("injective"));
    // identity map is rejected for a presented group
    let o = run(&["csinv", "--pi", s(&fp), "--triple", s(&g), s(&h), s(&k)]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn group_order_limit_is_a_budget_error() {
    let o = run(&["demo", "s16", "--max-group-order", "8"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("enumeration limit 8"));
}
