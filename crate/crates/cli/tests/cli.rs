use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};
use tempfile::TempDir;

use poisset_core::io::{BracketDoc, SigmaDoc};
use poisset_core::Report;

const CROWN: &str = r#"{"elements": ["1","2","3","4"], "covers": [["1","3"],["1","4"],["2","3"],["2","4"]]}"#;
const CHAIN3: &str = r#"{"elements": ["1","2","3"], "covers": [["1","2"],["2","3"]]}"#;

struct Workspace {
    dir: TempDir,
}

impl Workspace {
    fn new() -> Self {
        Workspace { dir: tempfile::tempdir().unwrap() }
    }

    fn file(&self, name: &str, contents: &str) -> PathBuf {
        let path = self.dir.path().join(name);
        std::fs::write(&path, contents).unwrap();
        path
    }
}

fn poisset(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_poisset")).args(args).output().unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn json_out(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn iv(lo: &str, hi: &str) -> Value {
    json!({"lo": lo, "hi": hi})
}

/// The crown bracket with scalars (1, 2, 3, 4) on (1,3), (1,4), (2,3), (2,4),
/// every nonzero basis pair listed in both orders.
fn crown_bracket() -> String {
    let mut pairs = Vec::new();
    for ((a, b), s) in [(("1", "3"), 1), (("1", "4"), 2), (("2", "3"), 3), (("2", "4"), 4)] {
        let v = |c: i64| json!([{"lo": a, "hi": b, "coeff": (c * s).to_string()}]);
        pairs.push(json!({"left": iv(a, a), "right": iv(a, b), "value": v(1)}));
        pairs.push(json!({"left": iv(a, b), "right": iv(b, b), "value": v(1)}));
        pairs.push(json!({"left": iv(a, b), "right": iv(a, a), "value": v(-1)}));
        pairs.push(json!({"left": iv(b, b), "right": iv(a, b), "value": v(-1)}));
    }
    json!({"pairs": pairs}).to_string()
}

#[test]
fn classify_crown() {
    let ws = Workspace::new();
    let crown = ws.file("crown.json", CROWN);
    for ring in ["Q", "Z/5"] {
        let out = poisset(&["classify", "--poset", p(&crown), "--ring", ring, "--format", "json"]);
        assert_eq!(out.status.code(), Some(0));
        let v = json_out(&out);
        assert_eq!(v["dimension"], 4);
        assert_eq!(v["chain_components"], 4);
        assert_eq!(v["match"], true);
        assert_eq!(v["basis"].as_array().unwrap().len(), 4);
    }
}

#[test]
fn classify_needs_a_field() {
    let ws = Workspace::new();
    let crown = ws.file("crown.json", CROWN);
    let out = poisset(&["classify", "--poset", p(&crown), "--ring", "Z/6"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not a field"));
}

#[test]
fn verify_crown_table() {
    let ws = Workspace::new();
    let crown = ws.file("crown.json", CROWN);
    let bracket = ws.file("ex.json", &crown_bracket());
    let out = poisset(&["verify", "--poset", p(&crown), "--bracket", p(&bracket), "--format", "json"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let report: Report = serde_json::from_slice(&out.stdout).unwrap();
    assert!(report.passed());
    assert!(!report.records.is_empty());

    let raw = poisset(&["verify", "--poset", p(&crown), "--bracket", p(&bracket), "--raw"]);
    assert_eq!(raw.status.code(), Some(0));
}

#[test]
fn crown_table_is_not_standard() {
    let ws = Workspace::new();
    let crown = ws.file("crown.json", CROWN);
    let bracket = ws.file("ex.json", &crown_bracket());
    let out = poisset(&["is-standard", "--poset", p(&crown), "--bracket", p(&bracket), "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_out(&out)["standard"], false);
}

#[test]
fn commutator_is_standard() {
    let ws = Workspace::new();
    let chain = ws.file("chain3.json", CHAIN3);
    let sigma = ws.file(
        "sigma.json",
        r#"{"entries": [{"lo":"1","hi":"2","value":"5/2"},{"lo":"2","hi":"3","value":"5/2"},{"lo":"1","hi":"3","value":"5/2"}]}"#,
    );
    let bracket = ws.dir.path().join("bracket.json");
    let out = poisset(&["from-sigma", "--poset", p(&chain), "--sigma", p(&sigma), "--format", "json", "--output", p(&bracket)]);
    assert_eq!(out.status.code(), Some(0));
    let out = poisset(&["is-standard", "--poset", p(&chain), "--bracket", p(&bracket), "--format", "json"]);
    let v = json_out(&out);
    assert_eq!(v["standard"], true);
    assert_eq!(v["lambda"]["entries"].as_array().unwrap().len(), 3);
    assert!(v["lambda"]["entries"].as_array().unwrap().iter().all(|e| e["coeff"] == "5/2"));
}

#[test]
fn non_chain_constant_sigma() {
    let ws = Workspace::new();
    let chain = ws.file("chain3.json", CHAIN3);
    let sigma = ws.file(
        "nonconstant.json",
        r#"{"entries": [{"lo":"1","hi":"2","value":"1"},{"lo":"2","hi":"3","value":"2"},{"lo":"1","hi":"3","value":"1"}]}"#,
    );
    let out = poisset(&["from-sigma", "--poset", p(&chain), "--sigma", p(&sigma), "--format", "json"]);
    assert_eq!(out.status.code(), Some(1));
    let report: Report = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report.failure_count(), 1);
    assert_eq!(report.records[0].check, "chain-constant");
}

#[test]
fn extract_then_rebuild_is_idempotent() {
    let ws = Workspace::new();
    let crown = ws.file("crown.json", CROWN);
    let bracket = ws.file("ex.json", &crown_bracket());
    let sigma = ws.dir.path().join("sigma.json");
    let rebuilt = ws.dir.path().join("rebuilt.json");

    let out = poisset(&["extract-sigma", "--poset", p(&crown), "--bracket", p(&bracket), "--format", "json", "--output", p(&sigma)]);
    assert_eq!(out.status.code(), Some(0));
    let doc: SigmaDoc = serde_json::from_str(&std::fs::read_to_string(&sigma).unwrap()).unwrap();
    let values: Vec<&str> = doc.entries.iter().map(|e| e.value.as_str()).collect();
    assert_eq!(values, ["1", "2", "3", "4"]);

    let out = poisset(&["from-sigma", "--poset", p(&crown), "--sigma", p(&sigma), "--format", "json", "--output", p(&rebuilt)]);
    assert_eq!(out.status.code(), Some(0));
    let out = poisset(&["verify", "--poset", p(&crown), "--bracket", p(&rebuilt)]);
    assert_eq!(out.status.code(), Some(0));

    let again = ws.dir.path().join("again.json");
    poisset(&["extract-sigma", "--poset", p(&crown), "--bracket", p(&rebuilt), "--format", "json", "--output", p(&again)]);
    assert_eq!(std::fs::read_to_string(&sigma).unwrap(), std::fs::read_to_string(&again).unwrap());
    let b1: BracketDoc = serde_json::from_str(&std::fs::read_to_string(&rebuilt).unwrap()).unwrap();
    assert_eq!(b1.pairs.len(), 8);
}

#[test]
fn broken_bracket_reports_violations() {
    let ws = Workspace::new();
    let chain = ws.file("chain2.json", r#"{"elements": ["1","2"], "covers": [["1","2"]]}"#);
    let bracket = ws.file(
        "bad.json",
        r#"{"pairs": [{"left": {"lo":"1","hi":"1"}, "right": {"lo":"2","hi":"2"}, "value": [{"lo":"1","hi":"2","coeff":"1"}]}]}"#,
    );
    for verb in ["verify", "extract-sigma", "lemma-suite", "is-standard"] {
        let out = poisset(&[verb, "--poset", p(&chain), "--bracket", p(&bracket), "--format", "json"]);
        assert_eq!(out.status.code(), Some(1), "{verb}");
        let report: Report = serde_json::from_slice(&out.stdout).unwrap();
        assert!(!report.passed(), "{verb}");
    }
    let out = poisset(&["lemma-suite", "--poset", p(&chain), "--bracket", p(&bracket), "--format", "json"]);
    let report: Report = serde_json::from_slice(&out.stdout).unwrap();
    assert!(!report.check_passed("orthogonal-idempotents-vanish"));
}

#[test]
fn lemma_suite_passes_on_valid_bracket() {
    let ws = Workspace::new();
    let crown = ws.file("crown.json", CROWN);
    let bracket = ws.file("ex.json", &crown_bracket());
    let out = poisset(&["lemma-suite", "--poset", p(&crown), "--bracket", p(&bracket), "--samples", "5", "--seed", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.lines().all(|l| l.starts_with("PASS ")), "{text}");
}

#[test]
fn inconsistent_table_is_an_input_error() {
    let ws = Workspace::new();
    let chain = ws.file("chain2.json", r#"{"elements": ["1","2"], "covers": [["1","2"]]}"#);
    let bracket = ws.file(
        "asym.json",
        r#"{"pairs": [
            {"left": {"lo":"1","hi":"1"}, "right": {"lo":"1","hi":"2"}, "value": [{"lo":"1","hi":"2","coeff":"1"}]},
            {"left": {"lo":"1","hi":"2"}, "right": {"lo":"1","hi":"1"}, "value": [{"lo":"1","hi":"2","coeff":"1"}]}
        ]}"#,
    );
    let out = poisset(&["verify", "--poset", p(&chain), "--bracket", p(&bracket)]);
    assert_eq!(out.status.code(), Some(2));
    let raw = poisset(&["verify", "--poset", p(&chain), "--bracket", p(&bracket), "--raw"]);
    assert_eq!(raw.status.code(), Some(1));
}

#[test]
fn parse_errors_name_file_line_and_field() {
    let ws = Workspace::new();
    let bad = ws.file("bad.json", "{\"elements\": [\"1\", \"2\"],\n \"covers\": [[\"1\", 2]]}");
    let out = poisset(&["poset-info", "--poset", p(&bad)]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("bad.json:2:"), "{err}");
    assert!(err.contains("covers[0][1]"), "{err}");

    let crown = ws.file("crown.json", CROWN);
    let sigma = ws.file("s.json", r#"{"entries": [{"lo":"1","hi":"3","value":"x"}]}"#);
    let out = poisset(&["from-sigma", "--poset", p(&crown), "--sigma", p(&sigma)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("s.json"));

    let missing = poisset(&["poset-info", "--poset", "/nonexistent/poset.json"]);
    assert_eq!(missing.status.code(), Some(2));
    assert_eq!(poisset(&["classify"]).status.code(), Some(2));
    assert_eq!(poisset(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn poset_info_and_components() {
    let ws = Workspace::new();
    let crown = ws.file("crown.json", CROWN);
    let v = json_out(&poisset(&["poset-info", "--poset", p(&crown), "--format", "json"]));
    assert_eq!(v["intervals"], 8);
    assert_eq!(v["strict_pairs"], 4);
    assert_eq!(v["maximal_chain_overlap"], false);
    assert_eq!(v["maximal_chains"].as_array().unwrap().len(), 4);

    let v = json_out(&poisset(&["components", "--poset", p(&crown), "--format", "json"]));
    assert_eq!(v["connected_components"].as_array().unwrap().len(), 1);
    assert_eq!(v["chain_components"].as_array().unwrap().len(), 4);
}

#[test]
fn export_dot() {
    let ws = Workspace::new();
    let crown = ws.file("crown.json", CROWN);
    let out = poisset(&["export-dot", "--poset", p(&crown)]);
    assert_eq!(out.status.code(), Some(0));
    let dot = String::from_utf8_lossy(&out.stdout);
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.matches("->").count(), 4);
    assert_eq!(dot.matches("rank=same").count(), 2);
}

#[test]
fn thread_cap() {
    let ws = Workspace::new();
    let crown = ws.file("crown.json", CROWN);
    let bracket = ws.file("ex.json", &crown_bracket());
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_poisset"))
            .args(["verify", "--poset", p(&crown), "--bracket", p(&bracket)])
            .env("POISSET_THREADS", threads)
            .output()
            .unwrap()
    };
    assert_eq!(run("1").status.code(), Some(0));
    assert_eq!(run("many").status.code(), Some(2));
}
