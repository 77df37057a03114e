use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn bimonoid(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bimonoid"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

const WORD_AUTOMATON: &str = r#"{
  "algebra": "B4",
  "alphabet": ["gamma", "delta"],
  "states": ["p", "q", "r"],
  "initial": {"p": "2", "q": "2"},
  "final": {"r": "2"},
  "transitions": [
    {"from": "p", "symbol": "gamma", "to": "r", "weight": "1"},
    {"from": "q", "symbol": "gamma", "to": "r", "weight": "1"}
  ]
}"#;

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn eval_prints_the_element_name() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "a.json", WORD_AUTOMATON);
    let o = bimonoid(&["eval", "--automaton", &a, "--input", "gamma", "--semantics", "init"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o).trim(), "2");
    let o = bimonoid(&["eval", "--automaton", &a, "--input", "gamma", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["run"], "0");
    assert_eq!(v["init"], "2");
}

#[test]
fn support_and_image_disagree_over_b4() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "a.json", WORD_AUTOMATON);
    let o = bimonoid(&["support", "--automaton", &a, "--max-len", "2", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["run_support"], serde_json::json!([]));
    assert_eq!(v["init_support"], serde_json::json!(["gamma"]));
    assert_eq!(v["equal"], false);
    let o = bimonoid(&["image", "--automaton", &a, "--max-len", "2"]);
    assert!(stdout(&o).contains("images equal: no"));
}

#[test]
fn check_reports_predicted_counterexample_with_exit_zero() {
    let o = bimonoid(&["check", "supports-words", "--algebra", "B4"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("predicted counterexample"), "{out}");
    assert!(out.contains("a = 2, b = 2, c = 2"), "{out}");
}

#[test]
fn check_json_is_replayable() {
    let args = ["check", "supports-trees", "--algebra", "pentagon", "--automata", "5", "--format", "json"];
    let first = stdout(&bimonoid(&args));
    let second = stdout(&bimonoid(&args));
    assert_eq!(first, second);
    let v: Value = serde_json::from_str(&first).unwrap();
    assert_eq!(v["outcome"], "consistent");
    assert_eq!(v["seed"], 42);
    let other = stdout(&bimonoid(&["--seed", "7", "check", "supports-trees", "--algebra", "pentagon", "--automata", "5", "--format", "json"]));
    let v: Value = serde_json::from_str(&other).unwrap();
    assert_eq!(v["seed"], 7);
}

#[test]
fn props_json_has_verdicts() {
    let o = bimonoid(&["props", "--algebra", "pentagon", "--format", "json"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let strongly = v["properties"]
        .as_array()
        .unwrap()
        .iter()
        .find(|p| p["condition"] == "StronglyZSF")
        .unwrap();
    assert_eq!(strongly["holds"], true);
}

#[test]
fn props_reads_table_files() {
    let dir = tempfile::tempdir().unwrap();
    let good = r#"{"names": ["0", "1"], "add": [["0","1"],["1","1"]], "mul": [["0","0"],["0","1"]], "zero": "0", "one": "1"}"#;
    let bad = good.replace(r#"["0","1"]]"#, r#"["0","0"]]"#);
    let g = write(dir.path(), "good.json", good);
    let b = write(dir.path(), "bad.json", &bad);
    assert!(bimonoid(&["props", "--table", &g]).status.success());
    let o = bimonoid(&["props", "--table", &b]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("bad.json"), "{}", stderr(&o));
    assert!(bimonoid(&["props", "--table", &b, "--allow-invalid"]).status.success());
}

#[test]
fn parse_errors_name_file_and_location() {
    let dir = tempfile::tempdir().unwrap();
    let broken = WORD_AUTOMATON.replace("\"to\": \"r\", \"weight\": \"1\"}\n", "\"to\": \"x\", \"weight\": \"1\"}\n");
    let a = write(dir.path(), "broken.json", &broken);
    let o = bimonoid(&["eval", "--automaton", &a, "--input", "gamma"]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("broken.json") && err.contains("transitions[1].to"), "{err}");
    let s = write(dir.path(), "syntax.json", "{\n  \"algebra\": \"B4\",\n  ]\n}");
    let err = stderr(&bimonoid(&["eval", "--automaton", &s, "--input", "gamma"]));
    assert!(err.contains("syntax.json") && err.contains("line 3"), "{err}");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(bimonoid(&["check", "nonsense", "--algebra", "B4"]).status.code(), Some(2));
    assert_eq!(bimonoid(&["check", "supports-words", "--algebra", "NoSuch"]).status.code(), Some(2));
    assert_eq!(bimonoid(&["check", "supports-words", "--algebra", "NatPlusMin"]).status.code(), Some(2));
}

#[test]
fn convert_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "a.json", WORD_AUTOMATON);
    let t = dir.path().join("t.json");
    let w = dir.path().join("w.json");
    let o = bimonoid(&["convert", "--input", &a, "--direction", "word-to-tree", "--output", t.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let tree: Value = serde_json::from_str(&fs::read_to_string(&t).unwrap()).unwrap();
    assert_eq!(tree["alphabet"]["e"], 0);
    assert_eq!(tree["alphabet"]["gamma"], 1);
    let o = bimonoid(&["eval", "--automaton", t.to_str().unwrap(), "--input", "gamma(e)", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!((v["run"].as_str(), v["init"].as_str()), (Some("0"), Some("2")));
    let o = bimonoid(&["convert", "--input", t.to_str().unwrap(), "--direction", "tree-to-word", "--output", w.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let back: Value = serde_json::from_str(&fs::read_to_string(&w).unwrap()).unwrap();
    let orig: Value = serde_json::from_str(WORD_AUTOMATON).unwrap();
    assert_eq!(back, orig);
    let o = bimonoid(&["convert", "--input", &a, "--direction", "word-to-tree", "--end-marker", "gamma"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn profile_counts_operations() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "a.json", WORD_AUTOMATON);
    let o = bimonoid(&["profile", "--automaton", &a, "--input", "gamma gamma gamma gamma", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rows = v["rows"].as_array().unwrap();
    let run = rows.iter().find(|r| r["semantics"] == "run").unwrap();
    let init = rows.iter().find(|r| r["semantics"] == "init").unwrap();
    assert_eq!(run["measured"]["muls"], 1215);
    assert_eq!(init["measured"]["muls"], 39);
    assert_eq!(run["measured"], run["predicted"]);
}

#[test]
fn tree_automata_over_infinite_algebras_evaluate() {
    let dir = tempfile::tempdir().unwrap();
    let text = r#"{
      "algebra": "PolyMonome",
      "alphabet": {"alpha": 0, "sigma": 2},
      "states": ["s"],
      "final": {"s": "1"},
      "transitions": [
        {"symbol": "alpha", "to": "s", "weight": "x"},
        {"children": ["s", "s"], "symbol": "sigma", "to": "s", "weight": "1"}
      ]
    }"#;
    let a = write(dir.path(), "poly.json", text);
    let o = bimonoid(&["eval", "--automaton", &a, "--input", "sigma(alpha, alpha)", "--semantics", "run"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(!stdout(&o).trim().is_empty());
}
