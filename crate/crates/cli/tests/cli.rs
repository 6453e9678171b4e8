use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name).display().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polyquad")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let o = run(&all);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

#[test]
fn appendix_example_reports_exact_values() {
    let v = json(&["appendix-example"]);
    assert_eq!(v["all_match"], true);
    let rows = v["rows"].as_array().unwrap();
    let exact: Vec<&str> = rows.iter().map(|r| r["exact"].as_str().unwrap()).collect();
    assert_eq!(exact, ["423/140", "54335/16384", "37295/12288"]);
    let decimals: Vec<&str> = rows.iter().map(|r| r["decimal"].as_str().unwrap()).collect();
    assert_eq!(decimals, ["3.021", "3.316", "3.035"]);
    assert_eq!(rows[1]["points"], 31);
    assert_eq!(rows[2]["points"], 21);
}

#[test]
fn integrate_rules_on_the_appendix_inputs() {
    let tri = data("appendix_triangle.json");
    let g = data("x2y3.json");
    let v = json(&["integrate", "--polygon", &tri, "--function", &g, "--method", "collected", "--N", "2"]);
    assert_eq!(v["exact"], "37295/12288");
    assert_eq!(v["integral_exact"], "423/140");
    let v = json(&["integrate", "--polygon", &tri, "--monomials", "1:2:3", "--method", "trapezoid", "--N", "4"]);
    assert_eq!(v["exact"], "54335/16384");
    assert_eq!(v["points"], 31);
    let v = json(&["integrate", "--polygon", &tri, "--monomials", "0:0:0", "--N", "3"]);
    assert_eq!(v["exact"], "0");
    assert_eq!(v["value"], 0.0);
}

#[test]
fn accelerated_method_spellings_agree() {
    let tri = data("appendix_triangle.json");
    let a = json(&["integrate", "--polygon", &tri, "--builtin", "expxy", "--method", "accelerated", "--k", "3", "--N", "4"]);
    let b = json(&["integrate", "--polygon", &tri, "--builtin", "expxy", "--method", "accelerated-3", "--N", "4"]);
    assert_eq!(a, b);
    assert_eq!(a["method"], "accelerated-3");
}

#[test]
fn csv_has_fixed_columns_and_is_deterministic() {
    let pent = data("pentagon.json");
    let args = ["convergence", "--polygon", &pent, "--monomials", "1:2:3", "--N-list", "2,4,8", "--format", "csv"];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(code(&first), 0);
    assert_eq!(first.stdout, second.stdout);
    let text = stdout(&first);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "N,method,value,exact,abs_error,est_order");
    assert_eq!(lines.count(), 9);
}

#[test]
fn convergence_orders_approach_two_four_six() {
    let tri = data("appendix_triangle.json");
    let v = json(&["convergence", "--polygon", &tri, "--monomials", "1:2:3", "--N-list", "2,4,8,16,32,64"]);
    let rows = v["rows"].as_array().unwrap();
    for (method, target) in [("weighted", 2.0), ("accelerated-2", 4.0), ("accelerated-3", 6.0)] {
        let last = rows.iter().rev().find(|r| r["method"] == method).unwrap();
        let order = last["est_order"].as_f64().unwrap();
        assert!((order - target).abs() < 0.1, "{method}: {order}");
    }
}

#[test]
fn convergence_fit_reports_the_integral() {
    let tri = data("appendix_triangle.json");
    let v = json(&["convergence", "--polygon", &tri, "--monomials", "1:2:3", "--N-list", "2,4,8,16,32", "--method", "weighted", "--w", "3"]);
    let alpha0 = v["fit"]["alpha0"].as_f64().unwrap();
    assert!((alpha0 - 423.0 / 140.0).abs() < 1e-12);
}

#[test]
fn pick_outputs() {
    let v = json(&["pick", "--polygon", &data("appendix_triangle.json")]);
    assert_eq!((v["I"].as_u64(), v["B"].as_u64(), v["area"].as_str(), v["residual"].as_str()), (Some(1), Some(3), Some("3/2"), Some("0")));
    let v = json(&["pick", "--polygon", &data("unit_square.json")]);
    assert_eq!((v["I"].as_u64(), v["B"].as_u64(), v["area"].as_str()), (Some(0), Some(4), Some("1")));
    let v = json(&["pick", "--polygon", &data("square10.json")]);
    assert_eq!((v["I"].as_u64(), v["B"].as_u64(), v["area"].as_str()), (Some(81), Some(40), Some("100")));
}

#[test]
fn lemma_sum_identity_directions() {
    let v = json(&["lemma-sum", "--spec", &data("line_identity.json"), "--verify"]);
    let pi = std::f64::consts::PI;
    assert!((v["closed_form"].as_f64().unwrap() - pi * pi / 3.0).abs() < 1e-12);
    assert_eq!(v["verified"], true);
    let v = json(&["lemma-sum", "--spec", &data("double_identity.json"), "--verify"]);
    assert!((v["closed_form"].as_f64().unwrap() - pi.powi(4) / 9.0).abs() < 1e-12);
    assert_eq!(v["verified"], true);
    let v = json(&["lemma-sum", "--inline", r#"{"kind":"line","dirs":[1,0,0,1],"h":2}"#]);
    assert_eq!(v["closed_form"], 0.0);
}

#[test]
fn bernoulli_prints_polynomial() {
    let v = json(&["bernoulli", "--j", "2"]);
    assert_eq!(v["polynomial"], "1/2*x^2 - 1/2*x + 1/12");
    assert_eq!(v["at_zero"], "1/12");
    let v = json(&["bernoulli", "--j", "4"]);
    assert_eq!(v["at_zero"], "-1/720");
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.csv");
    let o = run(&["bernoulli", "--j", "1", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(path).unwrap(), "j,B_j(x),B_j(0)\n1,x - 1/2,-1/2\n");
}

#[test]
fn input_errors_exit_with_two() {
    let tri = data("appendix_triangle.json");
    let cases: Vec<Vec<&str>> = vec![
        vec!["integrate", "--polygon", "/nonexistent.json", "--builtin", "expxy", "--N", "2"],
        vec!["integrate", "--polygon", &tri, "--builtin", "nosuch", "--N", "2"],
        vec!["integrate", "--polygon", &tri, "--monomials", "1:2", "--N", "2"],
        vec!["integrate", "--polygon", &tri, "--builtin", "expxy", "--N", "2", "--k", "2"],
        vec!["integrate", "--polygon", &tri, "--builtin", "expxy", "--N", "2", "--method", "simpson"],
        vec!["integrate", "--polygon", &tri, "--N", "2"],
        vec!["convergence", "--polygon", &tri, "--builtin", "expxy", "--N-list", "2,4"],
        vec!["convergence", "--polygon", &tri, "--builtin", "expxy", "--N-list", "4,2,8"],
        vec!["lemma-sum", "--inline", r#"{"kind":"line","dirs":[1,1,2,2],"h":1}"#],
        vec!["lemma-sum", "--inline", "not json"],
        vec!["nosuchcommand"],
    ];
    for args in cases {
        let o = run(&args);
        assert_eq!(code(&o), 2, "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn invalid_polygon_names_the_problem() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bowtie.json");
    std::fs::write(&path, r#"{"vertices": [[0,0],[2,2],[2,0],[0,2]]}"#).unwrap();
    let o = run(&["pick", "--polygon", path.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("--polygon"));
}

#[test]
fn thread_variable_is_validated() {
    let o = Command::new(env!("CARGO_BIN_EXE_polyquad")).args(["bernoulli", "--j", "1"]).env("POLYQUAD_THREADS", "zero").output().unwrap();
    assert_eq!(code(&o), 2);
    let o = Command::new(env!("CARGO_BIN_EXE_polyquad")).args(["bernoulli", "--j", "1"]).env("POLYQUAD_THREADS", "2").output().unwrap();
    assert_eq!(code(&o), 0);
}

#[test]
fn library_entry_point_matches_binary_codes() {
    assert_eq!(polyquad_cli::run(["polyquad", "appendix-example", "--out", "/nonexistent/dir/x"]), 2);
    assert_eq!(polyquad_cli::run(["polyquad", "--version"]), 0);
}
