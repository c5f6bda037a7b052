//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any
//! failure. Criteria 1–10 call the suite functions with the acceptance sizes;
//! criterion 11 runs the binary twice and compares the reports byte for byte.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use dunkl::suite::{
    bernstein_checks, conjugation_checks, delta_checks, functional_equation_checks, gaussian_zeta_checks,
    hankel_isometry_checks, hankel_law_checks, jack_sum_checks, kbessel_eigen_checks, kbessel_limit_check,
    kbessel_rank_one_checks, kbessel_symmetry_checks, laplace_checks, pairing_checks, type_b_checks, wallach_checks,
    Check, Draws,
};

const SEED: u64 = 7;

/// Number, name and runner of one acceptance criterion.
type Criterion = (u32, &'static str, Box<dyn FnOnce(&mut Draws) -> Outcome>);

struct Outcome {
    passed: bool,
    summary: String,
}

fn judge(checks: &[Check], elapsed: Duration, limit: Option<Duration>) -> Outcome {
    let failing: Vec<&Check> = checks.iter().filter(|c| !c.passed()).collect();
    let worst = checks
        .iter()
        .filter_map(|c| c.residual.map(|r| r / c.tolerance))
        .fold(0.0f64, f64::max);
    let in_time = limit.is_none_or(|l| elapsed <= l);
    let mut summary = format!(
        "{} checks, worst residual/tolerance {:.2e}, {:.1} s",
        checks.len(),
        worst,
        elapsed.as_secs_f64()
    );
    if let Some(l) = limit {
        summary.push_str(&format!(" (limit {} s)", l.as_secs()));
    }
    for c in &failing {
        summary.push_str(&format!(
            "\n    {} {:?} residual {:?} tolerance {:e}{}",
            c.check_id,
            c.status,
            c.residual,
            c.tolerance,
            c.detail.as_deref().map(|d| format!(" [{d}]")).unwrap_or_default()
        ));
    }
    Outcome { passed: failing.is_empty() && !checks.is_empty() && in_time, summary }
}

fn timed(limit: Option<u64>, f: impl FnOnce() -> Vec<Check>) -> Outcome {
    let start = Instant::now();
    let checks = f();
    judge(&checks, start.elapsed(), limit.map(Duration::from_secs))
}

fn verify_report(seed: u64) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_dunkl"))
        .args(["verify", "--suite", "all", "--seed", &seed.to_string()])
        .output()
        .map_err(|e| e.to_string())?;
    if out.stdout.is_empty() {
        return Err(format!("empty report, stderr: {}", String::from_utf8_lossy(&out.stderr)));
    }
    Ok(out.stdout)
}

fn determinism() -> Outcome {
    let start = Instant::now();
    let result = verify_report(SEED).and_then(|a| verify_report(SEED).map(|b| (a, b)));
    let elapsed = start.elapsed().as_secs_f64();
    match result {
        Ok((a, b)) => Outcome {
            passed: a == b,
            summary: format!("two reports of {} bytes, identical: {}, {elapsed:.1} s", a.len(), a == b),
        },
        Err(e) => Outcome { passed: false, summary: e },
    }
}

fn main() -> ExitCode {
    let mut draws = Draws::new(SEED);
    let criteria: Vec<Criterion> = vec![
        (1, "Bernstein identity, exact", Box::new(|d| timed(Some(30), || bernstein_checks(&[1, 2, 3], 3, d, None)))),
        (2, "Jack normalizations, exact", Box::new(|d| timed(None, || jack_sum_checks(&[1, 2, 3], 6, d, None)))),
        (3, "B-pairing orthogonality, exact", Box::new(|d| timed(None, || pairing_checks(&[1, 2], 3, d, None)))),
        (
            4,
            "conjugation and type-B kernel identification, exact",
            Box::new(|d| {
                timed(None, || {
                    let mut checks = conjugation_checks(&[1, 2], 3, 3, d, None);
                    checks.extend(type_b_checks(&[1, 2], 6, 3, d, None));
                    checks
                })
            }),
        ),
        (5, "Jack Laplace identities", Box::new(|_| timed(Some(60), || laplace_checks(&[2], None)))),
        (
            6,
            "Hankel kernel law and isometry",
            Box::new(|_| {
                timed(None, || {
                    let mut checks = hankel_law_checks(&[1, 2], None);
                    checks.extend(hankel_isometry_checks(&[1, 2], None));
                    checks
                })
            }),
        ),
        (
            7,
            "K-Bessel closed form, symmetry, limit and eigen-equation",
            Box::new(|_| {
                timed(None, || {
                    let mut checks = kbessel_rank_one_checks(None);
                    checks.extend(kbessel_symmetry_checks(None));
                    checks.push(kbessel_limit_check(None));
                    checks.extend(kbessel_eigen_checks(&[1, 2], None));
                    checks
                })
            }),
        ),
        (
            8,
            "Gaussian zeta values and the delta distribution",
            Box::new(|_| {
                timed(None, || {
                    let mut checks = gaussian_zeta_checks(&[1, 2], None);
                    checks.extend(delta_checks(&[1, 2], None));
                    checks
                })
            }),
        ),
        (
            9,
            "zeta functional equation",
            Box::new(|_| timed(Some(300), || functional_equation_checks(&[1, 2], None, &|_| 1e-3))),
        ),
        (10, "Wallach discrete point", Box::new(|_| timed(None, || wallach_checks(None)))),
        (11, "determinism of verify reports", Box::new(|_| determinism())),
    ];
    let mut all = true;
    for (n, name, run) in criteria {
        let outcome = run(&mut draws);
        all &= outcome.passed;
        let verdict = if outcome.passed { "PASS" } else { "FAIL" };
        println!("criterion {n}: {verdict} - {name}: {}", outcome.summary);
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
