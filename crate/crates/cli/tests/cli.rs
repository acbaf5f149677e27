use std::path::PathBuf;
use std::process::{Command, Output};

fn steiner(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_steiner"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "data", name]
        .iter()
        .collect();
    p.display().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

#[test]
fn eval_examples() {
    let o = steiner(&["eval", "-n", "3", "(x1 (x1 x2))"]);
    assert_eq!((code(&o), stdout(&o).trim()), (0, "x2"));
    let o = steiner(&["eval", "-n", "3", "(x1 x1)"]);
    assert_eq!(stdout(&o).trim(), "e");
    let o = steiner(&["eval", "-n", "3", "(x1"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("byte 3"));
    assert_eq!(code(&steiner(&["eval", "-n", "2", "x3"])), 2);
}

#[test]
fn normalize_reports_rewrites() {
    let o = steiner(&["normalize", "(x1 x2)"]);
    assert!(stdout(&o).starts_with("(x2 x1)\ninput was rewritten"));
    let o = steiner(&["normalize", "(x2 x1)"]);
    assert!(stdout(&o).contains("input was canonical"));
}

#[test]
fn decompose_examples() {
    let o = steiner(&["decompose", "--images", "((x1 x2) x3)", "x2", "x3"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "e1(x3) e1(x2)\nrecomposition: OK\n");
    let o = steiner(&["decompose", "--images", "x2", "x1", "x3"]);
    assert_eq!(stdout(&o), "e1(x2) e2(x1) e1(x2)\nrecomposition: OK\n");
    let o = steiner(&["decompose", "--images", "x1", "x2", "(x1 x2)"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn automorphism_commands() {
    assert_eq!(code(&steiner(&["is-aut", "--images", "x2", "x3", "x1"])), 0);
    assert_eq!(code(&steiner(&["is-aut", "--images", "x1", "x1", "x3"])), 1);
    assert_eq!(code(&steiner(&["is-aut", "--images", "x1", "x2"])), 2);
    let o = steiner(&["invert", "--images", "((x1 x2) x3)", "x2", "x3"]);
    assert_eq!(stdout(&o), "x1 -> ((x3 x1) x2)\nx2 -> x2\nx3 -> x3\n");
}

#[test]
fn subloop_commands() {
    let o = steiner(&["closure", "x1", "x2"]);
    assert!(stdout(&o).starts_with("4 elements"));
    let o = steiner(&["--json", "reduce", "x1", "x2", "(x2 x1)"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["reduced"].as_array().unwrap().len(), 2);
    assert_eq!(doc["dropped"].as_array().unwrap().len(), 1);
}

#[test]
fn mult_rewrite_round_trips() {
    let o = steiner(&["mult-rewrite", "R[x1]*R[x2]*R[x3]*R[(x3 x1)]"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("round trip: OK"));
    assert_eq!(code(&steiner(&["mult-rewrite", "R[x1]*Q[x2]"])), 2);
}

#[test]
fn relations_commands() {
    let o = steiner(&["relations", "verify-known"]);
    assert_eq!(code(&o), 0);
    assert!(!stdout(&o).contains("FAIL"));
    let o = steiner(&["relations", "conjecture", "--target", "1", "--depth", "6"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("spheres match to depth 6"));
    let o = steiner(&[
        "--json",
        "relations",
        "bfs",
        "--free-family",
        "e1",
        "--depth",
        "5",
    ]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let sizes: Vec<u64> = doc["spheres"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_u64().unwrap())
        .collect();
    assert_eq!(sizes, [1, 3, 6, 12, 24, 48]);
    let o = steiner(&["relations", "conjecture", "--target", "2", "--depth", "5"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("DIVERGENCE at depth 4"));
    assert_eq!(
        code(&steiner(&["relations", "conjecture", "--target", "3"])),
        2
    );
}

#[test]
fn resource_cap_exit_code() {
    let o = steiner(&["--max-elements", "10", "relations", "bfs", "--depth", "6"]);
    assert_eq!(code(&o), 3);
}

#[test]
fn nucleus_scan() {
    let o = steiner(&["nucleus-scan", "-n", "3", "--max-len", "1"]);
    assert_eq!(stdout(&o).trim(), "all 3 candidates eliminated");
    let o = steiner(&["nucleus-scan", "-n", "3", "--max-len", "3"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("candidates eliminated"));
    assert_eq!(code(&steiner(&["nucleus-scan", "-n", "2"])), 1);
}

#[test]
fn sts_commands() {
    let o = steiner(&["sts", "validate", &data("fano.sts")]);
    assert_eq!(stdout(&o).trim(), "valid STS(7)");
    let o = steiner(&["sts", "validate", &data("sixpoints.sts")]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("mod 6"));
    let o = steiner(&["sts", "validate", &data("duplicate.sts")]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("{1, 2}"));
    let o = steiner(&["sts", "t4", &data("fano.sts"), "--base", "1"]);
    assert_eq!(stdout(&o).trim(), "|Aut(IS)| = |Stab| = 24: EQUAL");
    let o = steiner(&["sts", "t4", &data("fano.sts"), "--base", "9"]);
    assert_eq!(code(&o), 2);
    let o = steiner(&["sts", "aut", &data("sts9.sts")]);
    assert!(stdout(&o).contains("|Aut(STS)| = 432"));
    let o = steiner(&["sts", "sdecomp", &data("fano.sts")]);
    assert_eq!(code(&o), 0);
    assert!(!stdout(&o).contains("FAIL"));
    assert_eq!(
        code(&steiner(&["sts", "validate", &data("missing.sts")])),
        2
    );
}

#[test]
fn tables_round_trip_through_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("trivial.sts");
    std::fs::write(&path, "1 2 3\n").unwrap();
    let o = steiner(&["sts", "tables", path.to_str().unwrap()]);
    assert_eq!(
        stdout(&o),
        "# exterior order=4\ne,1,2,3\n1,e,3,2\n2,3,e,1\n3,2,1,e\n"
    );
    let o = steiner(&[
        "--json",
        "sts",
        "tables",
        path.to_str().unwrap(),
        "--kind",
        "interior",
        "--base",
        "2",
    ]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["kind"]["kind"], "interior");
    assert!(doc["identities"]
        .as_array()
        .unwrap()
        .iter()
        .all(|i| i["holds"] == true));
}

#[test]
fn json_errors_are_documents() {
    let o = steiner(&["--json", "eval", "(x1"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["exit_code"], 2);
}

#[test]
fn parallel_runs_are_deterministic() {
    let a = steiner(&[
        "--threads",
        "1",
        "--json",
        "relations",
        "bfs",
        "--depth",
        "7",
    ]);
    let b = steiner(&[
        "--threads",
        "4",
        "--json",
        "relations",
        "bfs",
        "--depth",
        "7",
    ]);
    assert_eq!(code(&a), 0);
    assert_eq!(stdout(&a), stdout(&b));
}
