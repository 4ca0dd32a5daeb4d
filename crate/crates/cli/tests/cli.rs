use std::process::Command;

use serde_json::{json, Value};

fn run(args: &[&str]) -> (i32, Value, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_zetaforge")).args(args).output().unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    let stderr = String::from_utf8(out.stderr).unwrap();
    let v = serde_json::from_str(stdout.trim()).unwrap_or(Value::Null);
    (out.status.code().unwrap(), v, stderr)
}

fn ok(args: &[&str]) -> Value {
    let (code, v, err) = run(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    assert_eq!(v["schema"], "zetaforge/1");
    v
}

#[test]
fn q5_families() {
    let v = ok(&["families", "--family", "q5", "--d", "1"]);
    assert_eq!(v["W"], json!({"numerator": [["1", 0, 0]], "denominator": [[6, 3], [12, 6]]}));
    let v = ok(&["families", "--family", "q5", "--d", "1", "--latex"]);
    assert_eq!(v["latex"], "\\frac{1}{(1 - X^{6}Y^{3})(1 - X^{12}Y^{6})}");
}

#[test]
fn funceq_output() {
    let v = ok(&["funceq", "--family", "bk", "--d", "2"]);
    assert_eq!(v["exists"], false);
    let v = ok(&["funceq", "--family", "heisenberg:1", "--d", "1"]);
    assert_eq!((v["exists"].clone(), v["sign"].clone(), v["a"].clone(), v["b"].clone()), (json!(true), json!(1), json!(5), json!(4)));
    assert_eq!(v["weight"], 4);
    assert_eq!(v["conjecture_holds"], true);
}

#[test]
fn decompose_gaussian() {
    let v = ok(&["decompose", "--minpoly", "1,0,1", "--p", "5"]);
    assert_eq!(v["pairs"], json!([[1, 1], [1, 1]]));
    assert_eq!(v["qp"], json!(["5", "5"]));
    let v = ok(&["decompose", "--minpoly", "1,0,1", "--p", "3"]);
    assert_eq!(v["pairs"], json!([[1, 2]]));
    assert_eq!(v["qp"], json!(["9"]));
}

#[test]
fn refused_inputs_exit_one() {
    // x^2 + 3 at 2: Z[theta] is not maximal there
    let (code, v, _) = run(&["decompose", "--minpoly", "3,0,1", "--p", "2"]);
    assert_eq!(code, 1);
    assert!(v["error"].as_str().unwrap().contains("ramified"));
    let (code, _, _) = run(&["decompose", "--minpoly", "1,0,1", "--p", "4"]);
    assert_eq!(code, 1);
    let (code, _, err) = run(&["funceq", "--family", "heisenberg:x"]);
    assert_eq!(code, 1);
    assert!(err.contains("--family"));
    let (code, _, err) = run(&["dirichlet", "--family", "heisenberg:1", "--d", "2", "--N", "10"]);
    assert_eq!(code, 1);
    assert!(err.contains("--minpoly"));
}

#[test]
fn euler_and_type_override_agree() {
    let a = ok(&["euler", "--family", "heisenberg:2", "--d", "2", "--minpoly", "1,0,1", "--p", "5"]);
    let b = ok(&["euler", "--family", "heisenberg:2", "--d", "2", "--type", "1,1;1,1", "--p", "5"]);
    assert_eq!(a["local_factor"], b["local_factor"]);
    assert_eq!(a["local_factor"]["p"], 5);
}

#[test]
fn dirichlet_coefficients() {
    let v = ok(&["dirichlet", "--family", "heisenberg:1", "--d", "2", "--minpoly", "1,0,1", "--N", "200"]);
    let c = v["coefficients"].as_array().unwrap();
    assert_eq!(c.len(), 200);
    assert_eq!(c[0], "1");
    assert_eq!(c[3], "48");
}

#[test]
fn abscissa_is_a_fraction() {
    assert_eq!(ok(&["abscissa", "--family", "f4", "--d", "2"])["abscissa"], "37/15");
    assert_eq!(ok(&["abscissa", "--family", "heisenberg:1", "--d", "1"])["abscissa"], "2/1");
}

#[test]
fn oracle_counts() {
    let v = ok(&["oracle", "--lattice", "heisenberg:1", "--p", "2", "--k", "2"]);
    assert_eq!(v["count"], 12);
    let path = std::env::temp_dir().join(format!("zetaforge-h1-{}.json", std::process::id()));
    std::fs::write(&path, r#"{"rank":3,"brackets":[[0,1,[0,0,1]]]}"#).unwrap();
    let lattice = format!("file:{}", path.display());
    let v = ok(&["oracle", "--lattice", &lattice, "--p", "2", "--k", "2"]);
    std::fs::remove_file(&path).unwrap();
    assert_eq!(v["count"], 12);
}

#[test]
fn verify_suites() {
    let v = ok(&["verify", "--suite", "bm-identity", "--max-m", "5"]);
    assert_eq!(v["passed"], true);
    let (code, _, _) = run(&["verify", "--suite", "bm-identity", "--max-m", "9"]);
    assert_eq!(code, 1);
    let v = ok(&["verify", "--suite", "all"]);
    assert_eq!(v["suites"].as_array().unwrap().len(), 10);
}

#[test]
fn output_is_deterministic() {
    let args = ["euler", "--family", "lmn:2:3", "--d", "3", "--minpoly", "-2,0,0,1", "--p", "7"];
    let a = Command::new(env!("CARGO_BIN_EXE_zetaforge")).args(args).output().unwrap();
    let b = Command::new(env!("CARGO_BIN_EXE_zetaforge")).args(args).output().unwrap();
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}
