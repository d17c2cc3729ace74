use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::{json, Value};

const FIXTURES: &[(&str, &str)] = &[
    ("knap.mat", "knap.cost"),
    ("ex1.mat", "ex1.cost"),
    ("gfamily.mat", "gfamily.cost"),
    ("chain.mat", "chain.cost"),
];

fn fixture(name: &str) -> String {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures");
    dir.join(name).to_string_lossy().into_owned()
}

fn exec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_toric-relax"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run(args: &[&str]) -> Value {
    let out = exec(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stdout));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn problem(cmd: &str, (m, c): (&str, &str)) -> Vec<String> {
    vec![cmd.into(), "--matrix".into(), fixture(m), "--cost".into(), fixture(c)]
}

fn run_owned(args: &[String]) -> Value {
    run(&args.iter().map(String::as_str).collect::<Vec<_>>())
}

/// Right-hand sides A·x for x in {0,1,2}^n, limited to a handful.
fn sample_rhs(matrix: &Value, count: usize) -> Vec<String> {
    let rows: Vec<Vec<i64>> = serde_json::from_value(matrix.clone()).unwrap();
    let n = rows[0].len();
    (0..count)
        .map(|k| {
            let x: Vec<i64> = (0..n).map(|j| ((k * 7 + j * 3) % 3) as i64).collect();
            let b: Vec<String> = rows
                .iter()
                .map(|r| r.iter().zip(&x).map(|(a, v)| a * v).sum::<i64>().to_string())
                .collect();
            b.join(",")
        })
        .collect()
}

fn matrix_of(name: &str) -> Value {
    let text = std::fs::read_to_string(fixture(name)).unwrap();
    let rows: Vec<Vec<i64>> = text
        .lines()
        .skip(1)
        .map(|l| l.split_whitespace().map(|t| t.parse().unwrap()).collect())
        .collect();
    json!(rows)
}

#[test]
fn knapsack_solve() {
    let out = exec(&["solve", "--matrix", &fixture("knap.mat"), "--cost", &fixture("knap.cost"), "--rhs", "27"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "{\"optimum\":[1,5,0],\"value\":10500}\n");
}

#[test]
fn triangulate_example() {
    let r = run_owned(&problem("triangulate", FIXTURES[1]));
    assert_eq!(r["maximal_faces"], json!([[1, 2], [2, 3], [3, 4]]));
    assert_eq!(r["triangulation"], json!(true));
    assert_eq!(r["tdi"], json!(true));
}

#[test]
fn knapsack_standard_pairs() {
    let r = run_owned(&problem("stdpairs", FIXTURES[0]));
    assert_eq!(r["arithmetic_degree"], json!(20));
    assert_eq!(r["multiplicities"], json!({"{}": 12, "{3}": 8}));
    assert_eq!(r["associated_sets"], json!([[], [3]]));
    assert_eq!(r["gomory_family"], json!(false));
}

#[test]
fn oracle_agrees_on_standard_pairs() {
    for &fx in FIXTURES {
        let algebraic = run_owned(&problem("stdpairs", fx));
        let mut args = problem("stdpairs", fx);
        args.push("--oracle".into());
        let oracle = run_owned(&args);
        assert_eq!(algebraic["pairs"], oracle["pairs"], "{fx:?}");
        assert_eq!(algebraic["multiplicities"], oracle["multiplicities"], "{fx:?}");
        let mut args = problem("oracle", fx);
        args.insert(1, "stdpairs".into());
        assert_eq!(run_owned(&args)["pairs"], algebraic["pairs"], "{fx:?}");
    }
}

#[test]
fn oracle_agrees_on_solve_and_relax() {
    for &fx in FIXTURES {
        let faces = {
            let t = run_owned(&problem("triangulate", fx));
            let mut all: Vec<Vec<usize>> = Vec::new();
            for f in serde_json::from_value::<Vec<Vec<usize>>>(t["maximal_faces"].clone()).unwrap() {
                for mask in 0u32..(1 << f.len()) {
                    let sub: Vec<usize> = (0..f.len()).filter(|i| mask >> i & 1 == 1).map(|i| f[i]).collect();
                    if !all.contains(&sub) {
                        all.push(sub);
                    }
                }
            }
            all
        };
        for rhs in sample_rhs(&matrix_of(fx.0), 4) {
            let mut args = problem("solve", fx);
            args.extend(["--rhs".into(), rhs.clone()]);
            let algebraic = run_owned(&args);
            args.push("--oracle".into());
            let oracle = run_owned(&args);
            assert_eq!(algebraic["optimum"], oracle["optimum"], "{fx:?} b={rhs}");
            assert_eq!(algebraic["value"], oracle["value"]);
            let mut args = problem("solve-sp", fx);
            args.extend(["--rhs".into(), rhs.clone()]);
            assert_eq!(run_owned(&args)["optimum"], algebraic["optimum"]);

            for f in &faces {
                let face = f.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",");
                let mut args = problem("relax", fx);
                args.extend(["--rhs".into(), rhs.clone(), "--face".into(), format!("{{{face}}}")]);
                let algebraic = run_owned(&args);
                args.push("--oracle".into());
                let oracle = run_owned(&args);
                assert_eq!(algebraic["solves_ip"], oracle["solves_ip"], "{fx:?} b={rhs} face={face}");
                if algebraic["solves_ip"] == json!(true) {
                    assert_eq!(algebraic["lift"], oracle_optimum(fx, &rhs));
                }
            }
        }
    }
}

fn oracle_optimum(fx: (&str, &str), rhs: &str) -> Value {
    run(&["oracle", "fiber", "--matrix", &fixture(fx.0), "--cost", &fixture(fx.1), "--rhs", rhs])["optimum"].clone()
}

#[test]
fn output_is_deterministic() {
    for cmd in ["triangulate", "groebner", "stdpairs", "assoc", "gomory"] {
        let args = problem(cmd, FIXTURES[3]);
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        assert_eq!(exec(&args).stdout, exec(&args).stdout, "{cmd}");
    }
    let sampled = ["triangulate", "--matrix", "1 1 1 1; 0 1 2 3", "--seed", "7"];
    let a = run(&sampled);
    assert_eq!(a, run(&sampled));
    assert_eq!(a["cost"].as_array().unwrap().len(), 4);
}

#[test]
fn exit_codes() {
    let infeasible = exec(&["solve", "--matrix", &fixture("knap.mat"), "--cost", &fixture("knap.cost"), "--rhs", "1"]);
    assert_eq!(infeasible.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&infeasible.stdout).unwrap();
    assert_eq!(err["error"]["kind"], json!("Infeasible"));

    let not_face = exec(&[
        "relax", "--matrix", &fixture("chain.mat"), "--cost", &fixture("chain.cost"),
        "--rhs", "5,5,5", "--face", "1,2",
    ]);
    assert_eq!(not_face.status.code(), Some(1));

    let dir = std::env::temp_dir().join(format!("toric-relax-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.mat");
    std::fs::write(&bad, "2 3\n1 2 3\n").unwrap();
    let out = exec(&["triangulate", "--matrix", bad.to_str().unwrap(), "--cost", "1,2,3"]);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(err["error"]["kind"], json!("Parse"));
    std::fs::remove_dir_all(&dir).unwrap();

    assert_eq!(exec(&["solve", "--matrix", "missing.mat", "--rhs", "1"]).status.code(), Some(2));
    assert_eq!(exec(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn long_chain_reports() {
    let r = run_owned(&problem("assoc", FIXTURES[3]));
    assert_eq!(r["arithmetic_degree"], json!(70));
    assert_eq!(r["chain_length"], json!(3));
    assert_eq!(r["multiplicities"]["{1,4,5}"], json!(8));
    let g = run_owned(&problem("gomory", FIXTURES[3]));
    assert_eq!(g["gomory_family"], json!(false));
    let g = run_owned(&problem("gomory", FIXTURES[2]));
    assert_eq!(g["gomory_family"], json!(true));
}

#[test]
fn hilbert_and_normality() {
    let r = run(&["normality", "--matrix", &fixture("nonnormal.mat")]);
    assert_eq!(r["normal"], json!(false));
    assert_eq!(r["witness"], json!([1, 2]));
    let h = run(&["hilbert", "--generators", &fixture("nonnormal.mat")]);
    assert_eq!(h["hilbert_basis"], json!([[1, 0], [1, 1], [1, 2], [1, 3], [1, 4]]));

    let single = fixture("gfamily_single.json");
    let r = run(&["normality", "--matrix", &fixture("gfamily.mat"), "--triangulation", &single]);
    assert_eq!(r["delta_normal"], json!(true));
    let g = run(&["gomory-cost", "--matrix", &fixture("gfamily.mat"), "--triangulation", &single]);
    let roots: Vec<Value> = g["pairs"].as_array().unwrap().iter().map(|p| p["root"].clone()).collect();
    assert_eq!(roots.len(), 4);
    assert!(g["pairs"].as_array().unwrap().iter().all(|p| p["face"] == json!([1, 2, 6])));
    // the returned cost induces the requested triangulation
    let cost: Vec<String> = serde_json::from_value::<Vec<i64>>(g["cost"].clone())
        .unwrap()
        .iter()
        .map(|c| c.to_string())
        .collect();
    let t = run(&["triangulate", "--matrix", &fixture("gfamily.mat"), "--cost", &cost.join(",")]);
    assert_eq!(t["maximal_faces"], json!([[1, 2, 6]]));
}

#[test]
fn sharp_family_and_tsv() {
    let r = run(&["sharp-family", "--m", "3"]);
    assert_eq!(r["cost"], json!([11, 0, 0, 0, 0, 0, 0, 10, 10, 10]));
    assert_eq!(r["matrix"].as_array().unwrap().len(), 7);
    let out = exec(&["sharp-family", "--m", "2", "--tsv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().next(), Some("cost\t11\t0\t0\t10\t10"));
    assert_eq!(text.lines().filter(|l| l.starts_with("matrix\t")).count(), 3);
    assert_eq!(exec(&["sharp-family", "--m", "9"]).status.code(), Some(1));
}
