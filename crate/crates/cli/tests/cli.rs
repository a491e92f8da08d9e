use std::path::PathBuf;
use std::process::{Command, Output};

fn cayley(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cayley")).args(args).env_remove("CAYLEY_CAP").output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).trim().to_string()
}

fn fixture(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures/magma").join(name);
    p.to_string_lossy().into_owned()
}

fn scratch(name: &str, body: &str) -> String {
    let p = std::env::temp_dir().join(format!("cayley-cli-{}-{name}", std::process::id()));
    std::fs::write(&p, body).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn count_examples() {
    let out = cayley(&["count", "--gf", "3", "--level", "1", "--constants", "1", "--what", "unimodulars", "--method", "all"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "4");
    let out = cayley(&["count", "--zn", "8", "--level", "1", "--constants", "3", "--what", "unimodulars"]);
    assert_eq!(stdout(&out), "8");
    let out = cayley(&["count", "--gf", "2", "--level", "3", "--constants", "1,1,1", "--what", "units"]);
    assert_eq!(stdout(&out), "128");
    let out = cayley(&["count", "--gf", "5", "--constants", "2", "--what", "residues", "--method", "all"]);
    assert_eq!(stdout(&out), "4");
}

#[test]
fn count_rejects_bad_input() {
    assert_eq!(cayley(&["count", "--gf", "6", "--level", "1"]).status.code(), Some(2));
    assert_eq!(cayley(&["count", "--gf", "3", "--level", "2", "--constants", "1"]).status.code(), Some(2));
    assert_eq!(cayley(&["count", "--level", "1"]).status.code(), Some(2));
    assert_eq!(cayley(&["count", "--gf", "3", "--zn", "3"]).status.code(), Some(2));
}

#[test]
fn cap_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_cayley"))
        .args(["count", "--gf", "3", "--level", "2", "--method", "enumerate"])
        .env("CAYLEY_CAP", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap"));
}

#[test]
fn json_is_versioned_and_deterministic() {
    let args = ["--format", "json", "--seed", "7", "count", "--gf", "3", "--level", "1", "--method", "all"];
    let strip = |o: Output| {
        let mut v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        assert_eq!(v["schema"], "1");
        assert_eq!(v["seed"], 7);
        v.as_object_mut().unwrap().remove("timestamp").unwrap();
        v
    };
    let a = strip(cayley(&args));
    assert_eq!(a["result"]["value"], 8);
    assert_eq!(a, strip(cayley(&args)));
}

#[test]
fn verify_tables_sweeps_pass() {
    for args in [["--max-q", "5", "--levels", "3"], ["--max-n", "9", "--levels", "2"], ["--max-q", "2", "--levels", "1"]] {
        let mut full = vec!["verify-tables"];
        full.extend(args);
        let out = cayley(&full);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
        assert!(stdout(&out).ends_with("rows pass"), "{}", stdout(&out));
    }
    let out = cayley(&["--format", "csv", "verify-tables", "--max-q", "3", "--levels", "1"]);
    assert!(stdout(&out).starts_with("table,ring,level"));
    assert_eq!(cayley(&["verify-tables"]).status.code(), Some(2));
}

#[test]
fn charsum_examples() {
    assert_eq!(stdout(&cayley(&["charsum", "--gf", "5", "gauss", "--chi", "2", "--alpha", "1"])), "2.236067977500+0i");
    assert_eq!(stdout(&cayley(&["charsum", "--gf", "5", "jacobi", "--chis", "2,2"])), "-1");
    assert_eq!(stdout(&cayley(&["charsum", "--gf", "7", "gauss", "--chi", "0", "--alpha", "0"])), "7");
    assert_eq!(cayley(&["charsum", "--gf", "5", "gauss", "--chi", "x"]).status.code(), Some(2));
    assert_eq!(cayley(&["charsum", "--gf", "6", "gauss", "--chi", "1", "--alpha", "1"]).status.code(), Some(2));
}

#[test]
fn magma_corpus_matches() {
    let out = cayley(&["magma", "corpus"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "10/10 fixtures match");
}

#[test]
fn magma_classify_tables() {
    let one = scratch("one.json", r#"{"elements":["e"],"table":[[0]]}"#);
    let out = cayley(&["--format", "json", "magma", "classify", "--table", &one]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    for flag in ["commutative", "associative", "di_associative", "quasigroup", "loop", "moufang", "ip"] {
        assert_eq!(v["result"][flag]["holds"], true, "{flag}");
    }

    let out = cayley(&["--format", "json", "magma", "classify", "--table", &fixture("qg_not_loop.json")]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["result"]["quasigroup"]["holds"], true);
    assert_eq!(v["result"]["loop"]["holds"], false);

    let bad = scratch("bad.json", r#"{"elements":["a"],"table":[[3]]}"#);
    assert_eq!(cayley(&["magma", "classify", "--table", &bad]).status.code(), Some(2));
    let junk = scratch("junk.json", "not json");
    assert_eq!(cayley(&["magma", "classify", "--table", &junk]).status.code(), Some(2));
}
