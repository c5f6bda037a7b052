//! End-to-end tests of the `dunkl` binary: outputs, JSON shape and exit codes.

use std::process::{Command, Output};

use serde_json::Value;

fn dunkl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dunkl")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON output")
}

fn value(report: &Value) -> (f64, f64) {
    let v = report["value"].as_array().expect("value pair");
    (v[0].as_f64().unwrap(), v[1].as_f64().unwrap())
}

#[test]
fn jack_examples() {
    for (args, expected) in [
        (&["jack", "--n", "2", "--k", "1/2", "--kind", "P", "--index", "1,1"][..], "x1*x2"),
        (&["jack", "--n", "1", "--kind", "E", "--index", "3"][..], "x1^3"),
        (&["jack", "--n", "2", "--k", "1/3", "--kind", "C", "--index", "1,0"][..], "x1 + x2"),
        (&["jack", "--n", "2", "--k", "-1/3", "--kind", "P", "--index", "2,0"][..], "x1^2 - x1*x2 + x2^2"),
    ] {
        let out = dunkl(args);
        assert_eq!(code(&out), 0, "{args:?}");
        assert_eq!(stdout(&out).trim(), expected, "{args:?}");
    }
}

#[test]
fn jack_json_carries_exact_coefficients() {
    let out = dunkl(&["jack", "--n", "2", "--k", "1/2", "--kind", "P", "--index", "2,0", "--json"]);
    assert_eq!(code(&out), 0);
    let report = json(&out);
    assert_eq!(report["schema"], 1);
    assert_eq!(report["text"], "x1^2 + 2/3*x1*x2 + x2^2");
    let terms = report["terms"].as_array().unwrap();
    let mixed = terms.iter().find(|t| t["exponent"] == serde_json::json!([1, 1])).unwrap();
    assert_eq!(mixed["coefficient"], "2/3");
}

#[test]
fn jack_errors() {
    // Malformed flags.
    assert_eq!(code(&dunkl(&["jack", "--n", "2", "--kind", "P", "--index", "1,x"])), 2);
    assert_eq!(code(&dunkl(&["jack", "--n", "2", "--kind", "Q", "--index", "1,1"])), 2);
    assert_eq!(code(&dunkl(&["jack", "--n", "2", "--kind", "P", "--index", "1,2"])), 2);
    // k = −1 makes the rank-two Jack construction degenerate.
    assert_eq!(code(&dunkl(&["jack", "--n", "2", "--k", "-1", "--kind", "P", "--index", "2,0"])), 3);
}

#[test]
fn eval_examples() {
    let out = dunkl(&["eval", "--object", "gamma_n", "--n", "1", "--z", "1"]);
    assert_eq!(code(&out), 0);
    let report = json(&out);
    assert_eq!(report["schema"], 1);
    assert!(report["config_echo"].is_object());
    assert!(report["diagnostic"].is_number());
    let (re, im) = value(&report);
    assert!((re - 1.0).abs() < 1e-13 && im == 0.0);

    // Zeta of the built-in Gaussian at α = 2 returns Γ_2(2), which is 1 at k = 1/2.
    let out = dunkl(&["eval", "--object", "zeta", "--n", "2", "--k", "1/2", "--alpha", "2", "--nu", "7/3"]);
    assert_eq!(code(&out), 0);
    let (re, _) = value(&json(&out));
    assert!((re - 1.0).abs() < 1e-8, "{re}");

    // 𝒦 at rank one against the classical 2K_{1/2}(2).
    let out = dunkl(&["eval", "--object", "kbessel", "--n", "1", "--nu", "1/2", "--w", "1", "--z", "1", "--oracle", "classical"]);
    assert_eq!(code(&out), 0);
    let report = json(&out);
    let (re, _) = value(&report);
    let oracle = report["oracle"]["classical"][0].as_f64().unwrap();
    let elementary = (std::f64::consts::PI).sqrt() * (-2.0f64).exp();
    assert!((re - oracle).abs() < 1e-8 * oracle);
    assert!((oracle - elementary).abs() < 1e-12);
}

#[test]
fn eval_hankel_of_the_built_in_exponential() {
    let out = dunkl(&["eval", "--object", "hankel", "--n", "1", "--nu", "3/2", "--w", "0.5"]);
    assert_eq!(code(&out), 0);
    let (re, _) = value(&json(&out));
    assert!((re - (-0.5f64).exp()).abs() < 1e-12);
}

#[test]
fn eval_exit_codes() {
    // Wrong vector length and an unknown object: malformed input.
    assert_eq!(code(&dunkl(&["eval", "--object", "dunkl_kernel", "--n", "2", "--w", "1,2", "--z", "1"])), 2);
    assert_eq!(code(&dunkl(&["eval", "--object", "nonsense"])), 2);
    assert_eq!(code(&dunkl(&["eval", "--object", "gamma_n", "--n", "1", "--z", "1+"])), 2);
    // The classical oracle exists at rank one only.
    assert_eq!(code(&dunkl(&["eval", "--object", "gamma_n", "--n", "2", "--z", "2,3", "--oracle", "classical"])), 2);
    // 𝒦 needs Re w > 0.
    assert_eq!(code(&dunkl(&["eval", "--object", "kbessel", "--n", "1", "--nu", "1/2", "--w", "-1", "--z", "1"])), 4);
    // Γ_n at a pole.
    assert_eq!(code(&dunkl(&["eval", "--object", "gamma_n", "--n", "1", "--z", "0"])), 4);
    // Far out the moment series of the Hankel transform cancels; the budget is not met.
    let out = dunkl(&["eval", "--object", "hankel", "--n", "2", "--nu", "2", "--w", "20,20", "--tol", "1e-12"]);
    assert_eq!(code(&out), 5);
    assert!(json(&out)["diagnostic"].as_f64().unwrap() > 1e-12);
}

#[test]
fn verify_symbolic_reports_exact_zero_residuals() {
    let out = dunkl(&["verify", "--suite", "symbolic", "--n", "2", "--seed", "7"]);
    assert_eq!(code(&out), 0);
    let report = json(&out);
    assert_eq!(report["schema"], 1);
    assert_eq!(report["failed"], 0);
    let checks = report["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    let ids: Vec<&str> = checks.iter().map(|c| c["check_id"].as_str().unwrap()).collect();
    let mut sorted = ids.clone();
    sorted.sort_unstable();
    assert_eq!(ids, sorted, "report ordered by check_id");
    for c in checks {
        assert_eq!(c["status"], "pass");
        assert_eq!(c["residual"].as_f64(), Some(0.0));
        assert!(!c["anchor"].as_str().unwrap().is_empty());
    }
}

#[test]
fn verify_is_deterministic_and_seed_sensitive() {
    let a = dunkl(&["verify", "--suite", "symbolic", "--seed", "7"]);
    let b = dunkl(&["verify", "--suite", "symbolic", "--seed", "7"]);
    let c = dunkl(&["verify", "--suite", "symbolic", "--seed", "8"]);
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn verify_flag_errors() {
    assert_eq!(code(&dunkl(&["verify", "--suite", "everything"])), 2);
    assert_eq!(code(&dunkl(&["verify", "--k", "-1/2"])), 2);
    assert_eq!(code(&dunkl(&["verify", "--seed", "abc"])), 2);
}
