use hcol_core::graph::{parse_document, write_document};
use hcol_core::repr::{check_faithful, Representation};
use std::path::Path;
use std::process::{Command, Output};

fn hcol(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hcol"))
        .args(args)
        .current_dir(dir)
        .env_remove("HCOL_SEED")
        .env_remove("HCOL_OUTPUT")
        .env_remove("HCOL_FORMAT")
        .env_remove("HCOL_THREADS")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn fixtures() -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    let files = [
        ("c5.g", "5 5\n0 1\n1 2\n2 3\n3 4\n0 4\n"),
        ("k4.g", "4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n"),
        ("empty.g", "0 0\n"),
        ("inst.g", "8 9\n0 1\n0 4\n1 5\n2 6\n3 7\n4 5\n0 6\n2 7\n1 3\nX 0 1 2 3 4\n"),
        ("lists.g", "4 3\n0 1\n1 2\n2 3\nA 0 1\nA 3 0 2\n"),
        ("w4.cnf", "p cnf 3 2\n1 -2 3 1 0\n-1 2 2 -3 0\n"),
        ("w3.cnf", "p cnf 2 1\n1 -2 1 0\n"),
        ("bad.g", "3 2\n0 1\n"),
    ];
    for (name, text) in files {
        std::fs::write(dir.path().join(name), text).unwrap();
    }
    dir
}

#[test]
fn witness_text_and_json() {
    let dir = fixtures();
    let o = hcol(dir.path(), &["witness", "c5.g"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("q=2, witness="));
    let o = hcol(dir.path(), &["witness", "k4.g", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["q"], 4);
    assert_eq!(v["witness"].as_array().unwrap().len(), 4);
    assert_eq!(hcol(dir.path(), &["witness", "empty.g"]).status.code(), Some(1));
}

#[test]
fn exit_codes() {
    let dir = fixtures();
    let d = dir.path();
    assert_eq!(hcol(d, &["witness", "missing.g"]).status.code(), Some(1));
    assert_eq!(hcol(d, &["witness", "bad.g"]).status.code(), Some(1));
    assert_eq!(hcol(d, &["frobnicate"]).status.code(), Some(1));
    assert_eq!(hcol(d, &["--help"]).status.code(), Some(0));
    assert_eq!(
        hcol(d, &["represent", "--family", "vandermonde", "--graph", "c5.g", "--field", "6"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        hcol(d, &["reduce", "--from", "nae-sat", "w3.cnf", "--target", "k4.g"]).status.code(),
        Some(2)
    );
    assert_eq!(
        hcol(d, &["sweep", "--experiment", "random-q", "--p", "2"]).status.code(),
        Some(1)
    );
}

#[test]
fn kernel_document_roundtrips_and_verifies() {
    let dir = fixtures();
    let d = dir.path();
    let o = hcol(d, &["kernelize", "inst.g", "--target", "c5.g", "-o", "kernel.g"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(d.join("kernel.g")).unwrap();
    let doc = parse_document(&text).unwrap();
    assert!(doc.cover.is_some());
    assert_eq!(parse_document(&write_document(&doc)).unwrap(), doc);

    let o = hcol(d, &["kernelize", "inst.g", "--target", "c5.g", "--verify", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verified"], true);
    assert!(v["stats"]["vertices"].as_u64().unwrap() <= v["stats"]["vertex_bound"].as_u64().unwrap());
}

#[test]
fn representation_json_roundtrip() {
    let dir = fixtures();
    let d = dir.path();
    let o = hcol(d, &["represent", "--family", "vandermonde", "--graph", "c5.g", "--field", "7"]);
    assert!(o.status.success());
    let rep = Representation::from_json(&stdout(&o)).unwrap();
    assert!(check_faithful(&rep).is_ok());
    assert_eq!(Representation::from_json(&rep.to_json()).unwrap().to_json(), rep.to_json());

    let o = hcol(d, &["represent", "--family", "kneser", "--m", "5", "--r", "2", "-o", "k.json"]);
    assert!(o.status.success());
    let rep = Representation::from_json(&std::fs::read_to_string(d.join("k.json")).unwrap()).unwrap();
    assert_eq!(rep.graph().n(), 10);
    assert!(check_faithful(&rep).is_ok());
}

#[test]
fn reductions_emit_instances() {
    let dir = fixtures();
    let d = dir.path();
    let o = hcol(d, &["reduce", "--from", "nae-sat", "w4.cnf", "--target", "k4.g", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["cover_size"], 4 + 2 * 4 * 3);
    let o = hcol(d, &["reduce", "--from", "list-hcol", "lists.g", "--target", "c5.g"]);
    assert!(o.status.success());
    assert!(parse_document(&stdout(&o)).is_ok());
}

#[test]
fn seed_flag_and_env_agree() {
    let dir = fixtures();
    let d = dir.path();
    let args = ["sweep", "--experiment", "kernel-growth", "--k", "2..3", "--trials", "2"];
    let flag = hcol(d, &[&args[..], &["--seed", "11"]].concat());
    let env = Command::new(env!("CARGO_BIN_EXE_hcol"))
        .args(args)
        .current_dir(d)
        .env("HCOL_SEED", "11")
        .output()
        .unwrap();
    assert_eq!(flag.stdout, env.stdout);
    let header = stdout(&flag).lines().next().unwrap().to_string();
    assert_eq!(header, "k,q,trials,n,mean_vertices,max_vertices,vertex_bound,max_ratio");
    let o = hcol(d, &["sweep", "--experiment", "random-q", "--trials", "0"]);
    assert_eq!(stdout(&o).lines().count(), 1);
}
