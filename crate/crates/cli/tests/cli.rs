use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tatehh::corpus;
use tatehh_cli::spec;

fn corpus_file(key: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus").join(format!("{key}.toml"))
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn tatehh(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tatehh"))
        .args(args)
        .env("CACHE_DIR", cache)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn bundled_specs_match_the_library_corpus() {
    for e in corpus::all() {
        let s = spec::load(&corpus_file(e.key)).unwrap();
        assert_eq!(s.algebra.field(), e.algebra.field(), "{}", e.key);
        assert_eq!(s.algebra.mult(), e.algebra.mult(), "{}", e.key);
        assert_eq!(s.frobenius.lambda, e.frobenius.lambda, "{}", e.key);
    }
}

#[test]
fn tate_on_a_field_is_zero() {
    let dir = tempfile::tempdir().unwrap();
    let f7 = corpus_file("f7");
    let out = tatehh(dir.path(), &["tate", f7.to_str().unwrap(), "--min", "-4", "--max", "4", "--engine", "both", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v = json(&out);
    let rows = v["tables"][0]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 9);
    for r in rows {
        assert!(r.as_array().unwrap()[1..].iter().all(|x| x == 0), "{r}");
    }
    assert_eq!(v["checks"][0]["status"], "pass");
}

#[test]
fn check_passes_on_dual_numbers() {
    let dir = tempfile::tempdir().unwrap();
    let out = tatehh(dir.path(), &["check", corpus_file("dual5").to_str().unwrap(), "--format", "json"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v = json(&out);
    let checks = v["checks"].as_array().unwrap();
    assert!(checks.len() >= 9);
    assert!(checks.iter().all(|c| c["status"] == "pass"), "{checks:?}");
}

#[test]
fn broken_associativity_is_a_precondition_failure() {
    let dir = tempfile::tempdir().unwrap();
    let out = tatehh(dir.path(), &["validate", fixture("broken_assoc.toml").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    let err = stderr(&out);
    assert!(err.contains("not associative on the triple (a, a, a)"), "{err}");
}

#[test]
fn malformed_specs_exit_with_parse_errors() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        ("syntax.toml", "[algebra\nname = 1\n"),
        ("field.toml", "[algebra]\nname = \"x\"\nfield = \"F6\"\nbasis = [\"1\"]\ntable = [[[1]]]\n[frobenius]\nfunctional = [1]\n"),
        ("shape.toml", "[algebra]\nname = \"x\"\nfield = \"F5\"\nbasis = [\"1\"]\ntable = [[[1, 0]]]\n[frobenius]\nfunctional = [1]\n"),
        ("extra.toml", "[algebra]\nname = \"x\"\nfield = \"Q\"\nbasis = [\"1\"]\ntable = [[[1]]]\ncolour = 3\n[frobenius]\nfunctional = [1]\n"),
    ];
    for (name, text) in cases {
        let p = dir.path().join(name);
        std::fs::write(&p, text).unwrap();
        let out = tatehh(dir.path(), &["validate", p.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(2), "{name}: {}", stderr(&out));
    }
}

#[test]
fn degenerate_functional_is_a_precondition_failure() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("degenerate.toml");
    std::fs::write(
        &p,
        "[algebra]\nname = \"dual\"\nfield = \"F5\"\nbasis = [\"1\", \"e\"]\ntable = [[[1, 0], [0, 1]], [[0, 1], [0, 0]]]\n[frobenius]\nfunctional = [1, 0]\n",
    )
    .unwrap();
    let out = tatehh(dir.path(), &["frobenius", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3), "{}", stderr(&out));
}

#[test]
fn usage_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let dual2 = corpus_file("dual2");
    for args in [
        vec!["bogus"],
        vec!["tate", dual2.to_str().unwrap(), "--module", "X"],
        vec!["tate", dual2.to_str().unwrap(), "--min", "2", "--max", "1"],
        vec!["validate", "/nonexistent/spec.toml"],
    ] {
        let out = tatehh(dir.path(), &args);
        assert_eq!(out.status.code(), Some(1), "{args:?}: {}", stderr(&out));
    }
    assert_eq!(tatehh(dir.path(), &["--help"]).status.code(), Some(0));
}

#[test]
fn cache_hits_reproduce_the_cold_run() {
    let dir = tempfile::tempdir().unwrap();
    let spec = corpus_file("trunc3_f11");
    let args = ["tate", spec.to_str().unwrap(), "--engine", "both", "--format", "json"];
    let cold = tatehh(dir.path(), &args);
    assert_eq!(cold.status.code(), Some(0), "{}", stderr(&cold));
    let stats = json(&tatehh(dir.path(), &["cache", "--stats", "--format", "json"]));
    assert_eq!(stats["data"]["entries"], 1);
    let warm = tatehh(dir.path(), &args);
    assert_eq!(cold.stdout, warm.stdout);
    let uncached = tatehh(dir.path(), &[&args[..], &["--no-cache"]].concat());
    assert_eq!(cold.stdout, uncached.stdout);
    let cleared = json(&tatehh(dir.path(), &["cache", "--clear", "--format", "json"]));
    assert_eq!(cleared["data"]["removed"], 1);
}

#[test]
fn csv_has_one_row_per_degree() {
    let dir = tempfile::tempdir().unwrap();
    let out = tatehh(dir.path(), &["hochschild", corpus_file("dual5").to_str().unwrap(), "--max", "3", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "degree,cohomology,homology");
    assert_eq!(lines.len(), 5);
}

#[test]
fn frobenius_reports_the_nakayama_order() {
    let dir = tempfile::tempdir().unwrap();
    let v = json(&tatehh(dir.path(), &["frobenius", corpus_file("qext17").to_str().unwrap(), "--format", "json"]));
    assert_eq!(v["data"]["is_symmetric"], false);
    assert_eq!(v["data"]["nakayama_order"], 16);
    let v = json(&tatehh(dir.path(), &["frobenius", corpus_file("dual5").to_str().unwrap(), "--format", "json"]));
    assert_eq!(v["data"]["is_symmetric"], true);
    assert_eq!(v["data"]["nakayama_order"], 1);
}
