use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use rbqsym_core::{LinComb, Lwc};

fn rbqsym(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rbqsym"))
        .args(args)
        .env_remove("RBQSYM_CONFIG")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn golden(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name);
    std::fs::read_to_string(path).unwrap()
}

fn assert_golden(args: &[&str], file: &str) {
    let out = rbqsym(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(stdout(&out), golden(file), "{args:?}");
}

#[test]
fn golden_outputs() {
    assert_golden(&["product", "(1)", "(1)"], "product_1_1.txt");
    assert_golden(&["product", "--mbar", "(0;(1))", "(0;(1))"], "product_mbar.txt");
    assert_golden(&["basis", "f2m", "(0^2,2)"], "basis_f2m.txt");
    assert_golden(&["basis", "m2f", "(0^2,2)"], "basis_m2f.txt");
    assert_golden(&["matrix", "f2m", "--size", "2"], "matrix_f2m_2.txt");
    assert_golden(&["waring", "-N", "2", "-D", "3"], "waring_2_3.txt");
}

fn value_of(text: &str) -> f64 {
    let first = text.lines().next().unwrap();
    first.rsplit(" = ").next().unwrap().trim().parse().unwrap()
}

#[test]
fn eval_examples() {
    let out = rbqsym(&["eval", "mzv", "3;1"]);
    assert_eq!(out.status.code(), Some(0));
    // ζ(2) − ζ(3); the printed value sits below it by at most the tail bound.
    let v = value_of(&stdout(&out));
    assert!(v <= 0.442877163803 + 1e-12 && v > 0.442877163803 - 2e-8, "{v}");
    let out = rbqsym(&["eval", "mzv", "2;0"]);
    assert!((value_of(&stdout(&out)) - 1.6449340668).abs() < 2e-8);
    let out = rbqsym(&["eval", "qmzv", "2", "--q", "0.5"]);
    assert_eq!(out.status.code(), Some(0));
    // Σ q^{2n} (1 − q)^2 / (1 − q^n)^2 at q = 1/2, by direct summation.
    let want: f64 = (1..200).map(|n| 0.25f64.powi(n) * 0.25 / (1.0 - 0.5f64.powi(n)).powi(2)).sum();
    assert!((value_of(&stdout(&out)) - want).abs() < 1e-9);
}

#[test]
fn json_round_trip() {
    let out = rbqsym(&["product", "--json", "(0,1)", "(2)"]);
    assert_eq!(out.status.code(), Some(0));
    let parsed: LinComb<Lwc> = LinComb::from_json(&stdout(&out), "M").unwrap();
    let want = rbqsym_core::quasi_shuffle(&"(0,1)".parse().unwrap(), &"(2)".parse().unwrap());
    assert_eq!(parsed, want);
    let out = rbqsym(&["basis", "f2m", "(0^2,2)", "--json"]);
    let parsed: LinComb<Lwc> = LinComb::from_json(&stdout(&out), "M").unwrap();
    assert_eq!(parsed, rbqsym_core::f_to_m(&"(0,0,2)".parse().unwrap()));
}

fn temp_config(name: &str, body: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("rbqsym-{}-{name}.toml", std::process::id()));
    std::fs::write(&path, body).unwrap();
    path
}

#[test]
fn config_file_and_precedence() {
    let path = temp_config("vars", "vars = 2\ndeg = 2\noutput = \"text\"\n");
    let run = |extra: &[&str]| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_rbqsym"));
        cmd.args(["series", "m", "(1)"]).args(extra).env("RBQSYM_CONFIG", &path);
        cmd.output().unwrap()
    };
    assert_eq!(stdout(&run(&[])).trim(), "x1 + x2");
    assert_eq!(stdout(&run(&["-N", "3"])).trim(), "x1 + x2 + x3");

    let bad = temp_config("bad", "colour = 1\n");
    let out = Command::new(env!("CARGO_BIN_EXE_rbqsym"))
        .args(["product", "(1)", "(1)", "--config"])
        .arg(&bad)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    std::fs::remove_file(path).ok();
    std::fs::remove_file(bad).ok();
}

#[test]
fn exit_codes() {
    let cases: &[(&[&str], i32)] = &[
        (&["product", "(1)", "(1)"], 0),
        (&["verify", "euler", "-a", "2", "-b", "2", "--tol", "1e-6"], 0),
        (&["verify", "euler", "-a", "2", "-b", "2", "--tol", "1e-6", "--perturb", "1/1000"], 1),
        (&["product", "(1,0)", "(1)"], 2),
        (&["verify", "stuffle", "-a", "2", "-m", "1", "-b", "4", "-n", "0"], 2),
        (&["eval", "qmzv", "2", "--q", "1.5"], 2),
        (&["frobnicate"], 2),
        (&["eval", "mzv", "1"], 3),
        (&["product", "--budget", "10", "(1,1,1,1)", "(1,1,1,1)"], 4),
        (&["--help"], 0),
    ];
    for (args, want) in cases {
        assert_eq!(rbqsym(args).status.code(), Some(*want), "{args:?}");
    }
}

#[test]
fn verify_kinds() {
    for args in [
        &["verify", "rb-identity", "--max-size", "4"][..],
        &["verify", "spitzer", "-k", "2", "-n", "3"],
        &["verify", "waring", "-N", "3", "-D", "3"],
        &["verify", "oracle-series", "-u", "(0,1)", "-v", "(2)", "-N", "5", "-D", "4"],
        &["verify", "homomorphism", "-u", "ryy", "-v", "ry", "--q", "0.5"],
        &["verify", "duality", "--s", "2,1", "--t", "1,3", "--q", "0.25"],
        &["verify", "stuffle", "-a", "3", "-m", "1", "-b", "3", "-n", "1", "--q", "0.5"],
    ] {
        let out = rbqsym(args);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}{}", stdout(&out), String::from_utf8_lossy(&out.stderr));
    }
}
