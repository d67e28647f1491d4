use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orbitkit"))
        .args(args)
        .output()
        .expect("orbitkit runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let o = run(&full);
    (serde_json::from_slice(&o.stdout).unwrap(), o.status.code().unwrap())
}

fn temp_file(contents: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

#[test]
fn act_on_the_adding_machine() {
    let o = run(&["act", "@adding-machine", "--seq", "q", "--word", "000"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("100"));
    let (v, code) = json(&["act", "@adding-machine", "--seq", "q,q,q", "--word", "000"]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"]["output"], "110");
    let (v, _) = json(&["act", "@adding-machine", "--seq", "q", "--up", "|1"]);
    assert_eq!(v["verdict"]["output"], "ε|0");
}

#[test]
fn act_reports_undefined_transitions() {
    let (v, code) = json(&["act", "@right-ideal", "--seq", "p", "--word", "b"]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"]["kind"], "undefined");
}

#[test]
fn torsion_of_a_grigorchuk_generator() {
    let (v, code) = json(&["torsion", "@grigorchuk", "--seq", "b", "--budget", "8"]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"]["kind"], "torsion");
}

#[test]
fn adding_machine_is_torsion_free_via_the_dual() {
    let (v, code) = json(&["torsion", "@adding-machine", "--seq", "q", "--budget", "8"]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"]["kind"], "torsion_free");
    let (v, code) = json(&["torsion", "@adding-machine", "--seq", "q", "--budget", "8", "--route", "rows"]);
    assert_eq!(code, 2);
    assert_eq!(v["verdict"]["kind"], "unknown");
}

#[test]
fn witness_chain_doubles_on_the_adding_machine() {
    let (v, code) = json(&["witness", "@adding-machine", "--target", "8"]);
    assert_eq!(code, 0);
    let sizes: Vec<u64> = v["verdict"]["chain"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["size"].as_u64().unwrap())
        .collect();
    assert_eq!(sizes, [1, 2, 4, 8]);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["act", "@adding-machine"]).status.code(), Some(1));
    assert_eq!(run(&["act", "@no-such", "--seq", "q", "--word", "0"]).status.code(), Some(1));
    assert_eq!(run(&["act", "@adding-machine", "--seq", "z", "--word", "0"]).status.code(), Some(1));
    assert_eq!(run(&["classify", "/no/such/file"]).status.code(), Some(1));
    assert_eq!(run(&["order", "@adding-machine", "--seq", "q", "--budget", "4"]).status.code(), Some(2));
    assert_eq!(run(&["ball", "@grigorchuk", "--depth", "3"]).status.code(), Some(2));
    assert_eq!(run(&["ball", "@grigorchuk", "--depth", "12"]).status.code(), Some(2));
    assert_eq!(run(&["ball", "@t1", "--depth", "6"]).status.code(), Some(0));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn json_reports_are_deterministic_up_to_wall_time() {
    let args = ["orbit-up", "@adding-machine", "--up", "|0", "--certify", "16"];
    let (mut a, _) = json(&args);
    let (mut b, _) = json(&args);
    for key in ["subcommand", "inputs_digest", "verdict", "budget_spent", "wall_time_ms"] {
        assert!(a.get(key).is_some(), "missing {key}");
    }
    assert_eq!(a["inputs_digest"].as_str().unwrap().len(), 64);
    a["wall_time_ms"] = Value::Null;
    b["wall_time_ms"] = Value::Null;
    assert_eq!(a, b);
    let (c, _) = json(&["orbit-up", "@adding-machine", "--up", "|1", "--certify", "16"]);
    assert_ne!(a["inputs_digest"], c["inputs_digest"]);
}

#[test]
fn digest_covers_file_contents() {
    let f = temp_file("automaton x\nalphabet 0 1\nstates q\ntrans q 0 1 q\ntrans q 1 0 q\n");
    let path = f.path().to_str().unwrap();
    let (a, code) = json(&["classify", path]);
    assert_eq!(code, 0);
    assert_eq!(a["verdict"]["bi_reversible"], true);
    std::fs::write(f.path(), "automaton x\nalphabet 0 1\nstates q\ntrans q 0 0 q\ntrans q 1 1 q\n").unwrap();
    let (b, _) = json(&["classify", path]);
    assert_ne!(a["inputs_digest"], b["inputs_digest"]);
}

#[test]
fn errors_produce_json_reports() {
    let (v, code) = json(&["act", "@adding-machine", "--seq", "z", "--word", "0"]);
    assert_eq!(code, 1);
    assert_eq!(v["verdict"]["kind"], "error");
    assert_eq!(v["verdict"]["error"], "usage");
}

#[test]
fn constructions_round_trip_through_files() {
    let o = run(&["dual", "@adding-machine"]);
    assert_eq!(o.status.code(), Some(0));
    let dual = temp_file(&stdout(&o));
    let o = run(&["dual", dual.path().to_str().unwrap()]);
    let again = temp_file(&stdout(&o));
    let (v, _) = json(&["act", again.path().to_str().unwrap(), "--seq", "q", "--word", "011"]);
    assert_eq!(v["verdict"]["output"], "111");
    for args in [
        vec!["inverse", "@adding-machine"],
        vec!["power", "@adding-machine", "--k", "2"],
        vec!["compose", "--first", "@adding-machine", "--second", "@identity"],
        vec!["union", "@adding-machine", "@identity"],
    ] {
        let o = run(&args);
        assert!(stdout(&o).starts_with("automaton"), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn wang_subcommands() {
    let o = run(&["wang", "from-automaton", "@adding-machine"]);
    let tiles = temp_file(&stdout(&o));
    let path = tiles.path().to_str().unwrap();
    let (v, code) = json(&["wang", "check", path]);
    assert_eq!((code, v["verdict"]["kind"].as_str()), (0, Some("sw_deterministic")));
    let o = run(&["wang", "to-automaton", path]);
    assert!(stdout(&o).contains("trans q 0 1 id"));
    let (v, code) = json(&["wang", "find", path, "--height", "2", "--width", "4"]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"]["rows"].as_array().unwrap().len(), 4);

    let bad = temp_file("colors a b\ntile a a b b\ntile b a b a\n");
    let (v, code) = json(&["wang", "check", bad.path().to_str().unwrap()]);
    assert_eq!((code, v["verdict"]["kind"].as_str()), (0, Some("not_sw_deterministic")));
    assert_eq!(run(&["wang", "to-automaton", bad.path().to_str().unwrap()]).status.code(), Some(1));
    let broken = temp_file("colors a\ntile a a a\n");
    assert_eq!(run(&["wang", "check", broken.path().to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn gadget_subcommands() {
    let o = run(&["gadget", "build", "@adding-machine", "--dollar", "q"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("alphabet"));
    let (v, code) = json(&["gadget", "verify", "@adding-machine", "--dollar", "q", "--seq", "q,id", "--k", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"]["kind"], "verified");
}

#[test]
fn corpus_subcommands() {
    let (v, code) = json(&["corpus", "list"]);
    assert_eq!(code, 0);
    let names: Vec<&str> = v["verdict"]["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["name"].as_str().unwrap())
        .collect();
    assert!(names.contains(&"grigorchuk"));
    let o = run(&["corpus", "dump", "grigorchuk"]);
    let f = temp_file(&stdout(&o));
    let (v, code) = json(&["classify", f.path().to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"]["invertible"], true);
}

#[test]
fn dot_output() {
    let o = run(&["--dot", "cayley", "@t1", "--depth", "4"]);
    assert!(stdout(&o).starts_with("digraph"));
    let o = run(&["--dot", "orbit", "@adding-machine", "--word", "00"]);
    assert!(stdout(&o).starts_with("digraph"));
    let o = run(&["--dot", "dual", "@adding-machine"]);
    assert!(stdout(&o).starts_with("digraph"));
}

#[test]
fn letters_and_extraction() {
    let (v, code) = json(&["classify-letters", "@identity"]);
    assert_eq!(code, 0);
    assert!(matches!(v["verdict"]["kind"].as_str(), Some("applicable" | "inapplicable")));
    let (v, code) = json(&["extract-finite", "@mixed", "--up", "1'|0"]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"]["verified"], true);
    let (_, code) = json(&["extract-finite", "@adding-machine", "--up", "|0", "--nodes", "100"]);
    assert_eq!(code, 2);
}

#[test]
fn path_search() {
    let (v, code) = json(&["path", "@adding-machine", "--word", "00", "--length", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"]["kind"], "found");
    assert_eq!(v["verdict"]["nodes"].as_array().unwrap().len(), 4);
    let (v, code) = json(&["path", "@adding-machine", "--word", "00", "--length", "4"]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"]["kind"], "not_found");
}
