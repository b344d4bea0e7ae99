use std::process::{Command, Output};

use serde_json::{json, Value};

fn molekul(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_molekul"))
        .args(args)
        .env_remove("MOLEKUL_LIMIT")
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout))
    })
}

fn ok(args: &[&str]) -> Value {
    let out = molekul(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    json_of(&out)
}

fn spec_file(text: &str) -> tempfile::NamedTempFile {
    let f = tempfile::NamedTempFile::new().unwrap();
    std::fs::write(f.path(), text).unwrap();
    f
}

#[test]
fn betti_elements_of_five_generators() {
    assert_eq!(
        ok(&["ns", "betti", "14,16,18,21,45"]),
        json!([32, 42, 63, 66, 70, 72, 73, 75, 90])
    );
}

#[test]
fn numerical_semigroup_queries() {
    assert_eq!(ok(&["ns", "atoms", "6,9,20,12"]), json!([6, 9, 20]));
    assert_eq!(ok(&["ns", "frobenius", "6,9,20"]), json!(43));
    assert_eq!(ok(&["ns", "gaps", "3,5"]), json!([1, 2, 4, 7]));
    assert_eq!(ok(&["ns", "apery", "3,5", "--m", "3"]), json!([0, 5, 10]));
    assert_eq!(ok(&["ns", "factorizations", "3,5", "--x", "15"]), json!([[0, 3], [5, 0]]));
    assert_eq!(ok(&["ns", "lengths", "3,5", "--x", "30"]), json!([6, 8, 10]));
    let plain = ok(&["ns", "molecules", "3,5"]);
    assert_eq!(plain.as_array().unwrap().len(), 14);
    assert_eq!(plain, ok(&["ns", "molecules", "3,5", "--betti"]));
}

#[test]
fn graph_in_both_formats() {
    let g = ok(&["ns", "graph", "3,5", "--x", "30"]);
    assert_eq!(g["components"], json!(1));
    assert_eq!(g["edges"], json!([[0, 1], [1, 2]]));
    let dot = molekul(&["ns", "graph", "3,5", "--x", "15", "--format", "dot"]);
    let text = String::from_utf8(dot.stdout).unwrap();
    assert!(text.starts_with("graph nabla_15 {"));
    assert!(!text.contains("--"), "15 = 5*3 = 3*5 share no atom");
}

#[test]
fn text_output() {
    let out = molekul(&["ns", "molecules", "2,3", "--format", "text"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "2, 3, 4, 5, 7\n");
}

#[test]
fn json_keys_are_sorted() {
    let out = molekul(&["pm", "reduce", "1/2,3/4"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let a = text.find("\"atoms\"").unwrap();
    let r = text.find("\"reduced\"").unwrap();
    let s = text.find("\"scale\"").unwrap();
    assert!(a < r && r < s);
}

#[test]
fn puiseux_queries() {
    assert_eq!(ok(&["pm", "atoms", "1/2,3/4,1"]), json!(["1/2", "3/4"]));
    let iso = ok(&["pm", "iso", "1/2,3/4", "--other", "2,3", "--q", "4"]);
    assert_eq!(iso, json!({"isomorphic": true, "scale": "4", "hom_valid": true}));
    let none = ok(&["pm", "iso", "1/2,3/4", "--other", "2,5"]);
    assert_eq!(none["scale"], Value::Null);
    let fz = ok(&["pm", "factorizations", "1/2,3/4", "--x", "3/2"]);
    assert_eq!(fz["factorizations"], json!([[0, 2], [3, 0]]));
}

#[test]
fn strip_chart_svg_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("strip.svg");
    let p = path.to_str().unwrap();
    let args = ["ns", "strip", "2,21", "6,9,20", "--limit", "60", "--format", "svg", "--output", p];
    ok(&args);
    let first = std::fs::read_to_string(&path).unwrap();
    ok(&args);
    assert_eq!(first, std::fs::read_to_string(&path).unwrap());
    assert_eq!(first.matches("<circle").count(), 120);
    assert!(first.contains(r#"fill="blue" data-x="2""#));

    let recolored = molekul(&["ns", "strip", "3,5", "--limit", "5", "--format", "svg", "--atom-color", "#00ff00"]);
    assert!(String::from_utf8(recolored.stdout).unwrap().contains(r##"fill="#00ff00" data-x="3""##));

    let empty = molekul(&["ns", "strip", "--limit", "10", "--format", "svg"]);
    let svg = String::from_utf8(empty.stdout).unwrap();
    assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
}

#[test]
fn strip_json_lists_classes() {
    let rows = ok(&["ns", "strip", "2,3", "--limit", "8"]);
    assert_eq!(rows[0]["points"]["molecule_non_atom"], json!([4, 5, 7]));
    assert_eq!(rows[0]["points"]["gap"], json!([1]));
}

#[test]
fn primary_commands() {
    let e = spec_file("# elementary\nnumerator=1 primes=all:>=2\n");
    let p = e.path().to_str().unwrap();
    let m = ok(&["primary", "molecule", "--spec", p, "--x", "7/6"]);
    assert_eq!(m["verdict"], json!("molecule"));
    assert_eq!(m["elementary"]["conditions"]["canonical"], json!(true));
    assert_eq!(ok(&["primary", "molecule", "--spec", p, "--x", "3/2"])["verdict"], json!("not_molecule"));

    let c = ok(&["primary", "contains", "--spec", p, "--x", "2/15"]);
    assert_eq!(c, json!({"member": false, "certificate": null}));
    let mult = ok(&["primary", "multiplicity", "--spec", p, "--atom", "1/2", "--x", "7/2"]);
    assert_eq!(mult["multiplicity"], json!("7"));

    let d = ok(&["primary", "decompose", "--spec", p, "--x", "3/2", "--witnesses", "2"]);
    assert_eq!(d["factorizations"].as_array().unwrap().len(), 2);
    assert_eq!(d["more_factorizations"], json!(true));

    let mixed = spec_file("numerator=1 primes=list:2\nnumerator=8 primes=list:3\nnumerator=3 primes=all:>=5\n");
    let q = mixed.path().to_str().unwrap();
    let cls = ok(&["primary", "classify", "--spec", q]);
    assert_eq!(cls["unstable_atoms"], json!(["1/2", "8/3"]));
    assert_eq!(cls["stable"], json!(["numerator=3 primes=all:>=5"]));
}

#[test]
fn constructions() {
    let s = ok(&["construct", "stage", "--k", "2"]);
    assert_eq!(s["atoms"], json!(["1/3", "1/2"]));
    let listed = ok(&["construct", "stage", "--primes", "5,7,11", "--k", "2"]);
    assert_eq!(listed["atoms"], json!(["2/35", "1/5"]));
    let interval = ok(&["construct", "interval", "--n", "5"]);
    assert_eq!(interval["generators"], json!([3, 4, 5]));
    assert_eq!(interval["molecules"].as_array().unwrap().len(), 5);
    assert_eq!(ok(&["construct", "example42"])["atoms"], json!(["2/5", "3/5"]));
    let e57 = ok(&["construct", "example57", "--depth", "2"]);
    assert_eq!(e57["families"].as_array().unwrap().len(), 3);
}

#[test]
fn exit_codes() {
    let usage = molekul(&["ns", "no-such-action", "3,5"]);
    assert_eq!(usage.status.code(), Some(1));
    let suite = molekul(&["verify", "no-such-suite"]);
    assert_eq!(suite.status.code(), Some(1));
    assert_eq!(json_of(&suite)["error"]["kind"], json!("unknown_suite"));
    let bad_format = molekul(&["ns", "atoms", "3,5", "--format", "svg"]);
    assert_eq!(bad_format.status.code(), Some(1));

    let domain = molekul(&["ns", "atoms", "4,6"]);
    assert_eq!(domain.status.code(), Some(2));
    assert_eq!(json_of(&domain)["error"]["kind"], json!("non_coprime_generators"));
    let not_prime = molekul(&["construct", "stage", "--primes", "4,5", "--k", "1"]);
    assert_eq!(not_prime.status.code(), Some(2));

    let capped = Command::new(env!("CARGO_BIN_EXE_molekul"))
        .args(["ns", "factorizations", "3,5", "--x", "300"])
        .env("MOLEKUL_LIMIT", "5")
        .output()
        .unwrap();
    assert_eq!(capped.status.code(), Some(3));
    assert_eq!(json_of(&capped)["error"]["kind"], json!("limit_exceeded"));

    let bad_limit = Command::new(env!("CARGO_BIN_EXE_molekul"))
        .args(["ns", "atoms", "3,5"])
        .env("MOLEKUL_LIMIT", "lots")
        .output()
        .unwrap();
    assert_eq!(bad_limit.status.code(), Some(1));
}

#[test]
fn verify_suite_passes() {
    let reports = ok(&["verify", "dim2"]);
    assert_eq!(reports[0]["suite"], json!("dim2"));
    assert!(reports[0]["checks"].as_array().unwrap().iter().all(|c| c["passed"] == json!(true)));
}
