use std::path::{Path, PathBuf};
use std::process::Command;

use dbv::dbv::spec_file::AlgebraSpec;
use dbv::dbv::{check_axioms, Window};
use dbv::examples::{diamond, landau_ginzburg, random_finite, square_zero};
use dbv::homology::{build_beta, compute_homology, degeneration_check, obstruction_grid, qdelta_lemma_check};
use dbv::qme::{quantum_solve, SolutionFile};
use serde_json::Value;
use tempfile::TempDir;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

impl Run {
    fn json(&self) -> Value {
        serde_json::from_str(&self.stdout).unwrap_or_else(|e| panic!("{e}: {}", self.stdout))
    }
}

fn dbv(args: &[&str]) -> Run {
    dbv_env(args, &[])
}

fn dbv_env(args: &[&str], env: &[(&str, &str)]) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_dbv"));
    cmd.args(args).env_remove("DBV_WINDOW").env_remove("DBV_X_WINDOW");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().unwrap();
    Run {
        code: out.status.code().unwrap(),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn example(dir: &TempDir, name: &str, args: &[&str]) -> PathBuf {
    let mut full = vec!["example"];
    full.extend_from_slice(args);
    let r = dbv(&full);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let path = dir.path().join(format!("{name}.json"));
    std::fs::write(&path, &r.stdout).unwrap();
    path
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn emitted_cubic_spec_passes_the_axioms() {
    let dir = TempDir::new().unwrap();
    let lg = example(&dir, "lg", &["lg", "--potential", "x^3"]);
    let r = dbv(&["check-axioms", p(&lg)]);
    assert_eq!(r.code, 0);
    assert_eq!(r.json()["all_passed"], Value::Bool(true));
}

#[test]
fn cubic_quantum_solution() {
    let dir = TempDir::new().unwrap();
    let lg = example(&dir, "lg", &["lg", "--potential", "x^3"]);
    let r = dbv(&["solve-qme", p(&lg), "--t-order", "3", "--hbar-order", "3"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let gamma = r.json()["gamma"].clone();
    let terms: Vec<(Value, Value)> = gamma
        .as_array()
        .unwrap()
        .iter()
        .map(|t| (t["monomial"]["t"].clone(), t["vector"].clone()))
        .collect();
    assert_eq!(
        terms,
        vec![
            (serde_json::json!([1]), serde_json::json!({"1": "1/1"})),
            (serde_json::json!([2]), serde_json::json!({"x": "1/1"})),
        ]
    );
}

#[test]
fn square_zero_does_not_degenerate() {
    let dir = TempDir::new().unwrap();
    let sq = example(&dir, "sq", &["square-zero"]);
    let r = dbv(&["degeneration", p(&sq)]);
    assert_eq!(r.code, 1);
    let classes = r.json()["classes"].as_array().unwrap().clone();
    let obstructed: Vec<&Value> = classes.iter().filter(|c| c["status"] == "obstructed").collect();
    assert_eq!(obstructed.len(), 1);
    assert!(obstructed[0]["witness_class"].as_str().unwrap().contains("[b]"));

    let r = dbv(&["solve-qme", p(&sq)]);
    assert_eq!(r.code, 1);
    assert!(r.json()["error"].as_str().unwrap().contains("does not degenerate"));
}

#[test]
fn qdelta_fails_on_the_cubic() {
    let dir = TempDir::new().unwrap();
    let lg = example(&dir, "lg", &["lg", "--potential", "x^3"]);
    let r = dbv(&["qdelta", p(&lg)]);
    assert_eq!(r.code, 1);
    let v = r.json();
    let failing: Vec<&Value> = v["comparisons"].as_array().unwrap().iter().filter(|c| c["equal"] == false).collect();
    assert_eq!(failing[0]["witness"], "3/1*x^2");

    let d = example(&dir, "diamond", &["diamond"]);
    let r = dbv(&["qdelta", p(&d)]);
    assert_eq!(r.code, 0);
    assert_eq!(r.json()["forms_differ"], true);
}

#[test]
fn bad_inputs_exit_with_two() {
    let dir = TempDir::new().unwrap();
    let empty = dir.path().join("empty.json");
    std::fs::write(&empty, r#"{"kind": "finite", "basis": [], "unit": "1"}"#).unwrap();
    let r = dbv(&["homology", p(&empty)]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("unit"));

    let unknown = dir.path().join("unknown.json");
    std::fs::write(&unknown, r#"{"kind": "toric"}"#).unwrap();
    assert_eq!(dbv(&["homology", p(&unknown)]).code, 2);
    assert_eq!(dbv(&["homology", p(&dir.path().join("missing.json"))]).code, 2);
    assert_eq!(dbv(&["solve-qme"]).code, 2);
    assert_eq!(dbv(&["obstructions", p(&empty), "--t-order", "0"]).code, 2);
    assert_eq!(dbv(&["homology", p(&empty), "--window", "3:1"]).code, 2);
}

#[test]
fn axiom_failures_are_rejected_with_a_witness() {
    let dir = TempDir::new().unwrap();
    let sq = example(&dir, "sq", &["square-zero"]);
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&sq).unwrap()).unwrap();
    v["Q"] = serde_json::json!([["b", {"a": "1/1"}]]);
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, v.to_string()).unwrap();

    let r = dbv(&["homology", p(&bad)]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("Q Delta + Delta Q = 0") && r.stderr.contains("(a)"), "{}", r.stderr);

    let r = dbv(&["check-axioms", p(&bad)]);
    assert_eq!(r.code, 1);
    assert_eq!(r.json()["all_passed"], false);

    assert_eq!(dbv(&["homology", p(&bad), "--skip-axioms"]).code, 0);
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let dir = TempDir::new().unwrap();
    let a = dbv(&["example", "random-finite", "--dim", "7", "--seed", "5"]);
    let b = dbv(&["example", "random-finite", "--dim", "7", "--seed", "5"]);
    assert_eq!(a.stdout, b.stdout);
    let rf = example(&dir, "rf", &["random-finite", "--dim", "7", "--seed", "5"]);
    for cmd in ["check-axioms", "homology", "degeneration", "obstructions", "qdelta", "solve-qme"] {
        let x = dbv(&[cmd, p(&rf), "--pretty"]);
        let y = dbv(&[cmd, p(&rf), "--pretty"]);
        assert_eq!(x.stdout, y.stdout, "{cmd}");
        assert_eq!(x.code, y.code);
    }
}

#[test]
fn verify_round_trip_and_mutation() {
    let dir = TempDir::new().unwrap();
    let lg = example(&dir, "lg", &["lg", "--potential", "x^4 - x"]);
    let sol = dir.path().join("sol.json");
    let r = dbv(&["solve-qme", p(&lg), "--t-order", "3", "--hbar-order", "2", "--out", p(&sol)]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.is_empty());
    let r = dbv(&["verify", p(&lg), p(&sol)]);
    assert_eq!(r.code, 0, "{}", r.stdout);

    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&sol).unwrap()).unwrap();
    v["gamma"][0]["vector"]["x*eta"] = Value::String("1/1".into());
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, v.to_string()).unwrap();
    let r = dbv(&["verify", p(&lg), p(&bad)]);
    assert_eq!(r.code, 1);
    assert!(r.json()["first_nonzero_cell"].is_object());

    let other = example(&dir, "other", &["lg", "--potential", "x^3"]);
    assert_eq!(dbv(&["verify", p(&other), p(&sol)]).code, 2);
}

#[test]
fn observables() {
    let dir = TempDir::new().unwrap();
    let lg = example(&dir, "lg", &["lg", "--potential", "x^3"]);
    let r = dbv(&["observable", p(&lg), "--element", r#"{"x": "1"}"#]);
    assert_eq!(r.code, 0);
    assert_eq!(r.json()["status"], "extended");
    assert_eq!(dbv(&["observable", p(&lg), "--element", r#"{"eta": "1"}"#]).code, 2);

    let sq = example(&dir, "sq", &["square-zero"]);
    let r = dbv(&["observable", p(&sq), "--element", r#"{"a": "1"}"#]);
    assert_eq!(r.code, 1);
    assert!(r.json()["witness_class"].as_str().unwrap().contains("[b]"));
}

#[test]
fn window_comes_from_the_environment() {
    let dir = TempDir::new().unwrap();
    let lg = example(&dir, "lg", &["lg", "--potential", "x^3"]);
    let r = dbv_env(&["qdelta", p(&lg)], &[("DBV_X_WINDOW", "4")]);
    assert!(r.json()["window_note"].as_str().unwrap().contains("k <= 4"));
    let r = dbv_env(&["qdelta", p(&lg), "--x-window", "5"], &[("DBV_X_WINDOW", "4")]);
    assert!(r.json()["window_note"].as_str().unwrap().contains("k <= 5"));

    let full = dbv(&["check-axioms", p(&lg)]);
    assert_eq!(full.json()["basis_checked"], 18);
    let r = dbv_env(&["check-axioms", p(&lg)], &[("DBV_WINDOW", "0:0")]);
    assert_eq!(r.json()["basis_checked"], 9);
}

#[test]
fn verdicts_match_the_library() {
    let dir = TempDir::new().unwrap();
    let w = Window::default();
    let mut algebras = vec![landau_ginzburg("x^3").unwrap(), landau_ginzburg("x^5 - x^2").unwrap(), square_zero(), diamond()];
    algebras.extend((0..8).map(|s| random_finite(3 + s as usize % 6, s).unwrap()));
    for (k, alg) in algebras.iter().enumerate() {
        let path = dir.path().join(format!("alg{k}.json"));
        std::fs::write(&path, AlgebraSpec::from_algebra(alg).to_json()).unwrap();

        let r = dbv(&["check-axioms", p(&path)]);
        assert_eq!(r.code == 0, check_axioms(alg, &w).all_passed);

        let h = compute_homology(alg, &w).unwrap();
        let (report, lifts) = degeneration_check(alg, &h, None).unwrap();
        let r = dbv(&["degeneration", p(&path)]);
        assert_eq!(r.code == 0, report.degenerate, "alg{k}");
        assert_eq!(r.json()["degenerate"], report.degenerate);

        let r = dbv(&["qdelta", p(&path)]);
        assert_eq!(r.json()["holds"], qdelta_lemma_check(alg, &w).holds);

        let grid = obstruction_grid(alg, &h, 3, 2).unwrap();
        let r = dbv(&["obstructions", p(&path), "--t-order", "3", "--hbar-order", "2"]);
        assert_eq!(r.stdout.trim(), serde_json::to_string(&grid).unwrap());

        let r = dbv(&["solve-qme", p(&path), "--t-order", "3", "--hbar-order", "2"]);
        match build_beta(&h, &lifts) {
            Ok(beta) => {
                let (sol, _) = quantum_solve(alg, &h, &beta, 3, 2).unwrap();
                let file = SolutionFile::from_solution(alg, &sol);
                assert_eq!(r.code, 0);
                assert_eq!(r.stdout.trim(), file.to_json(false));
            }
            Err(_) => assert_eq!(r.code, 1),
        }
    }
}
