use std::path::PathBuf;
use std::process::{Command, Output};

use matilda::cli::{run, EXIT_BAD_INPUT, EXIT_BUDGET, EXIT_OK, EXIT_REJECTED};
use matilda::{
    random_perm, reference_tiling_9, residue_permutation, Certificate, Document, Permutation, Rect,
    Tiling,
};

fn call(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("matilda").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn binary(args: &[&str], threads: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_matilda"))
        .args(args)
        .env("MATILDA_THREADS", threads)
        .output()
        .unwrap()
}

fn scratch(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("matilda-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn solve_prints_minimum_first() {
    let (code, out, _) = call(&["solve", "--n", "4"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.lines().next(), Some("5"));
    let (code, json, _) = call(&["solve", "--n", "4", "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    let back = matilda::solver::GlobalResult::from_json(&json).unwrap();
    assert_eq!(back.min_count, 5);
}

#[test]
fn certify_residue_file() {
    let perm = scratch("residue_k5.json", &residue_permutation(5).to_json());
    let (code, out, _) = call(&[
        "certify",
        "--perm-file",
        perm.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(code, EXIT_OK);
    let cert = Certificate::from_json(&out).unwrap();
    assert!(cert.valid && cert.size >= 32);
    let (code, out, _) = call(&["certify", "--residue", "5"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("size 32 (target 32), valid"), "{out}");
}

#[test]
fn verify_reference_and_broken_fixture() {
    let (p, t) = reference_tiling_9();
    let pf = scratch("p9.json", &p.to_json());
    let tf = scratch("t9.json", &t.to_json());
    let (code, out, _) = call(&[
        "verify",
        "--perm-file",
        pf.to_str().unwrap(),
        "--tiling-file",
        tf.to_str().unwrap(),
    ]);
    assert_eq!((code, out.trim()), (EXIT_OK, "Accept"));

    let mut broken = t.clone();
    broken.rects.push(Rect::new(1, 1, 1, 1));
    let bf = scratch("t9-broken.json", &broken.to_json());
    let (code, out, _) = call(&[
        "verify",
        "--perm-file",
        pf.to_str().unwrap(),
        "--tiling-file",
        bf.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_REJECTED);
    assert!(out.starts_with("Reject: "), "{out}");

    let cf = scratch("c9.json", &matilda::certify(&p).to_json());
    let (code, out, _) = call(&[
        "verify",
        "--perm-file",
        pf.to_str().unwrap(),
        "--tiling-file",
        tf.to_str().unwrap(),
        "--cert-file",
        cf.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(code, EXIT_OK, "{out}");
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["lemma"], true);
}

#[test]
fn bad_input_exits_one() {
    let bad = scratch("bad.json", r#"{"n": 3, "map": [1, 1, 3]}"#);
    let (code, _, err) = call(&["certify", "--perm-file", bad.to_str().unwrap()]);
    assert_eq!(code, EXIT_BAD_INPUT);
    assert!(err.contains("not a bijection"), "{err}");
    assert_eq!(call(&["solve"]).0, EXIT_BAD_INPUT);
    assert_eq!(call(&["frobnicate"]).0, EXIT_BAD_INPUT);
    assert_eq!(
        call(&["certify", "--perm", "1,2", "--residue", "2"]).0,
        EXIT_BAD_INPUT
    );
    assert_eq!(call(&["solve", "--n", "12"]).0, EXIT_BAD_INPUT);
    assert_eq!(call(&["table", "--formula", "n^2"]).0, EXIT_BAD_INPUT);
    assert_eq!(call(&["--help"]).0, EXIT_OK);
}

#[test]
fn refuted_formula_exits_two() {
    let (code, out, _) = call(&["table", "--max-n", "5", "--formula", "2n-2"]);
    assert_eq!(code, EXIT_REJECTED);
    assert_eq!(
        out.trim(),
        "refuted at n=4: formula gives 6, exact search gives 5"
    );
    let (code, _, _) = call(&["table", "--max-n", "6", "--formula", "table"]);
    assert_eq!(code, EXIT_OK);
}

#[test]
fn budget_exits_three() {
    let map = random_perm(14, 1)
        .as_slice()
        .iter()
        .map(u32::to_string)
        .collect::<Vec<_>>()
        .join(",");
    let (code, out, _) = call(&[
        "min-partition",
        "--perm",
        &map,
        "--budget-nodes",
        "2000",
        "--format",
        "json",
    ]);
    assert_eq!(code, EXIT_BUDGET);
    let partial = matilda::SolveResult::from_json(&out).unwrap();
    assert!(!partial.optimal);
    let perm = Permutation::new(random_perm(14, 1).as_slice().to_vec()).unwrap();
    assert!(matilda::verify_tiling(&perm, &partial.witness)
        .unwrap()
        .is_accept());
}

#[test]
fn construct_outputs() {
    let (code, out, _) = call(&["construct", "--k", "3", "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["conjectured_min"], 12);
    assert_eq!(v["solver_min"], 12);
    let perm = Permutation::from_json(&v["permutation"].to_string()).unwrap();
    let tiling = Tiling::from_json(&v["tiling"].to_string()).unwrap();
    assert!(matilda::verify_tiling(&perm, &tiling).unwrap().is_accept());

    let (_, out, _) = call(&["construct", "--k", "45", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["conjectured_min"], 2112);
    assert!(v["tiling"].is_null());

    let (code, out, _) = call(&["construct", "--reference-9"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("A A A B B B . C C"), "{out}");
}

#[test]
fn render_tiling_and_certificate() {
    let (p, t) = reference_tiling_9();
    let pf = scratch("rp9.json", &p.to_json());
    let tf = scratch("rt9.json", &t.to_json());
    let cf = scratch("rc9.json", &matilda::certify(&p).to_json());
    let (code, out, _) = call(&[
        "render",
        "--perm-file",
        pf.to_str().unwrap(),
        "--tiling-file",
        tf.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.lines().count(), 9);
    let (code, out, _) = call(&[
        "render",
        "--perm-file",
        pf.to_str().unwrap(),
        "--cert-file",
        cf.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.matches('#').count(), 12);
}

#[test]
fn json_outputs_round_trip() {
    let (_, out, _) = call(&["min-partition", "--residue", "2", "--format", "json"]);
    let r = matilda::SolveResult::from_json(&out).unwrap();
    assert_eq!(r.min_count, 5);
    assert_eq!(r.to_json().trim(), out.trim());
    let (_, out, _) = call(&["certify", "--perm", "2,4,1,3", "--format", "json"]);
    assert_eq!(
        Certificate::from_json(&out).unwrap().to_json().trim(),
        out.trim()
    );
    let (_, out, _) = call(&[
        "experiment",
        "--n",
        "8",
        "--trials",
        "5",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["per_trial"].as_array().unwrap().len(), 5);
}

#[test]
fn seeded_output_is_identical_across_runs_and_threads() {
    let args = [
        "experiment",
        "--n",
        "20",
        "--trials",
        "60",
        "--seed",
        "9",
        "--format",
        "json",
    ];
    let one = binary(&args, "1");
    let many = binary(&args, "4");
    let auto = binary(&args, "0");
    assert!(one.status.success());
    assert_eq!(one.stdout, many.stdout);
    assert_eq!(one.stdout, auto.stdout);
    let solve = ["solve", "--n", "6", "--format", "json"];
    assert_eq!(binary(&solve, "1").stdout, binary(&solve, "3").stdout);
}
