//! Acceptance suite: one test per built-in criterion (each prints its
//! pass/fail line), the end-to-end selftest budget, and byte-for-byte
//! reproducibility of the exploratory searches.

use std::time::Instant;

use elemop::random::DEFAULT_SEED;
use elemop::selftest::{run_all, run_criterion};

fn check(id: usize) {
    let r = run_criterion(id, DEFAULT_SEED);
    println!("{}", r.line());
    assert!(r.passed, "{}", r.line());
}

#[test]
fn criterion_01_kronecker_realization() {
    check(1);
}

#[test]
fn criterion_02_adjoint_identity() {
    check(2);
}

#[test]
fn criterion_03_product_spectrum_formula() {
    check(3);
}

#[test]
fn criterion_04_fiber_spectrum_formula() {
    check(4);
}

#[test]
fn criterion_05_positivity_with_commuting_left_family() {
    check(5);
}

#[test]
fn criterion_06_intertwined_eigenvalue_inclusion() {
    check(6);
}

#[test]
fn criterion_07_semidiagonality_diagnostics() {
    check(7);
}

#[test]
fn criterion_08_optimizer_soundness() {
    check(8);
}

#[test]
fn criterion_09_formal_positivity_construction() {
    check(9);
}

#[test]
fn criterion_10_schur_multiplier_module() {
    check(10);
}

#[test]
fn criterion_11_selftest_end_to_end() {
    // the full suite under the default seed: deterministic, < 60 s, and the
    // CLI wrapper exits 0
    let start = Instant::now();
    let results = run_all(DEFAULT_SEED);
    let secs = start.elapsed().as_secs_f64();
    for r in &results {
        println!("{}", r.line());
    }
    assert!(results.iter().all(|r| r.passed));
    assert!(secs < 60.0, "selftest took {secs:.1}s, budget is 60s");

    let again = run_all(DEFAULT_SEED);
    for (a, b) in results.iter().zip(&again) {
        assert_eq!(a.passed, b.passed);
        assert_eq!(a.details, b.details, "criterion {} is not deterministic", a.id);
    }

    assert_eq!(elemop::cli::run(["selftest"]), 0);
}

#[test]
fn criterion_12_exploratory_outputs_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let path = |name: &str| dir.path().join(name).to_str().unwrap().to_string();

    let rerun = |args: Vec<String>, out_a: String, out_b: String| {
        let mut a = args.clone();
        a.extend(["--out".to_string(), out_a.clone()]);
        let mut b = args;
        b.extend(["--out".to_string(), out_b.clone()]);
        assert_eq!(elemop::cli::run(a), 0);
        assert_eq!(elemop::cli::run(b), 0);
        let bytes_a = std::fs::read(out_a).unwrap();
        let bytes_b = std::fs::read(out_b).unwrap();
        assert_eq!(bytes_a, bytes_b, "outputs differ between identical runs");
        bytes_a
    };

    // seeded factorization search at the exploratory target λ = -1
    let magajna: Vec<String> = [
        "search", "magajna", "--lambda", "-1,0", "--dim", "3", "--terms", "3", "--restarts", "4",
        "--iters", "200", "--seed", "20240901",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    let out = rerun(magajna, path("magajna_a.json"), path("magajna_b.json"));
    let doc: serde_json::Value = serde_json::from_slice(&out).unwrap();
    assert_eq!(doc["kind"], "magajna");
    assert!(doc["residual"].as_f64().unwrap() >= 0.0);
    assert!(!doc["left_factors"].as_array().unwrap().is_empty());

    // seeded Lüders non-real search
    let luders: Vec<String> = [
        "search", "luders", "--dim", "3", "--terms", "2", "--restarts", "2", "--iters", "60",
        "--seed", "7777",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    let out = rerun(luders, path("luders_a.json"), path("luders_b.json"));
    let doc: serde_json::Value = serde_json::from_slice(&out).unwrap();
    assert_eq!(doc["kind"], "luders");

    // reciprocal-norm growth table
    let atoms = dir.path().join("atoms.json");
    std::fs::write(
        &atoms,
        r#"[{"c_re": 1.0, "x": 0.0}, {"c_re": 0.9, "x": 4.442882938158366}]"#,
    )
    .unwrap();
    let probe: Vec<String> = [
        "schur",
        "probe",
        "--atoms",
        atoms.to_str().unwrap(),
        "--sizes",
        "8,16",
        "--seed",
        "42",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    let out = rerun(probe, path("probe_a.json"), path("probe_b.json"));
    let doc: serde_json::Value = serde_json::from_slice(&out).unwrap();
    assert_eq!(doc["rows"].as_array().unwrap().len(), 2);
    for row in doc["rows"].as_array().unwrap() {
        assert!(row["inf_abs_F"].as_f64().unwrap() > 0.0);
        assert!(row["lower"].as_f64().unwrap() <= row["upper"].as_f64().unwrap() + 1e-9);
    }
}
