//! Orthant quadrature against the Dunkl weights.

mod common;

use common::{c, params, params_default_nu, rel};
use dunkl_core::poly::{q, q_to_f64, qi};
use dunkl_core::quad::{integrate_orthant, integrate_rn_b, orthant_rule, QuadratureSpec, Scheme};
use dunkl_core::scalars::{c_b, gamma, gamma_n_scalar};
use dunkl_core::{Error, MPoly, Params, C64};

/// `∫_{ℝⁿ₊} p(x) Δ(x)^{a} ω^A(x) e^{−Σx} dx` for integer `k`, where `ω^A`
/// is the polynomial `∏_{i<j}(x_i − x_j)^{2k}`: every monomial integrates
/// to a product of classical gamma values.
fn moment_oracle(p: &MPoly, prm: &Params, a: f64) -> f64 {
    let n = prm.n();
    let k = u32::try_from(prm.k().to_integer()).expect("integer multiplicity");
    let mut weight = MPoly::one(n);
    for i in 0..n {
        for j in (i + 1)..n {
            let diff = MPoly::var(n, i).try_sub(&MPoly::var(n, j)).unwrap();
            weight = weight.try_mul(&diff.pow(2 * k)).unwrap();
        }
    }
    let full = weight.try_mul(p).unwrap();
    full.terms()
        .map(|(e, v)| q_to_f64(v) * e.parts().iter().map(|&m| gamma(c(m as f64 + a + 1.0)).unwrap().re).product::<f64>())
        .sum()
}

fn exp_times(p: MPoly) -> impl Fn(&[f64]) -> dunkl_core::Result<C64> {
    let compiled = p.compile();
    move |x: &[f64]| Ok(c(compiled.eval_real(x) * (-x.iter().sum::<f64>()).exp()))
}

#[test]
fn laplace_moments_at_integer_multiplicity() {
    for n in 1..=3 {
        let prm = params_default_nu(n, qi(1));
        for (mu, poly) in [(n as f64 + 0.3, "1"), (n as f64 + 1.5, "x1^2"), (n as f64 + 0.75, "x1*x2 + 3")] {
            if n == 1 && poly.contains("x2") {
                continue;
            }
            let p = MPoly::parse(n, poly).unwrap();
            let f = exp_times(p.clone());
            let a = mu - prm.mu0_f64() - 1.0;
            let expected = moment_oracle(&p, &prm, a);
            for spec in [QuadratureSpec::gauss(40).with_scale(1.0), QuadratureSpec::tanh_sinh(120).with_scale(1.0)] {
                let r = integrate_orthant(&f, c(mu), &spec, &prm).unwrap();
                // Tanh-sinh evaluates the wall factors at nodes close to the
                // boundary and levels off near 1e-7 at ranks two and three.
                let tol = if spec.scheme == Scheme::GaussLaguerreScaled || n == 1 { 1e-11 } else { 1e-6 };
                assert!(rel(r.value, c(expected)) < tol, "n={n} μ={mu} p={poly} {:?}: {} vs {expected}", spec.scheme, r.value);
            }
        }
    }
}

#[test]
fn exponential_integrates_to_the_generalized_gamma() {
    for (n, k) in [(2, q(1, 2)), (2, q(7, 3)), (3, q(1, 3))] {
        let prm = params_default_nu(n, k);
        let f = exp_times(MPoly::one(n));
        // At rank three a singular radial exponent (t < 1) leaves a corner
        // singularity in the simplex coordinates; see the test below.
        let ts: &[f64] = if n == 3 { &[1.0, 2.7] } else { &[0.4, 1.0, 2.7] };
        for &t in ts {
            let mu = prm.mu0_f64() + t;
            let r = integrate_orthant(&f, c(mu), &QuadratureSpec::gauss(40), &prm).unwrap();
            assert!(rel(r.value, gamma_n_scalar(c(mu), &prm).unwrap()) < 1e-10, "n={n} μ={mu}");
            assert!(r.relative_diagnostic() < 1e-9);
        }
    }
}

#[test]
fn rank_three_corner_singularity_is_reported_by_the_diagnostic() {
    let prm = params_default_nu(3, q(1, 3));
    let f = exp_times(MPoly::one(3));
    let mu = prm.mu0_f64() + 0.4;
    let exact = gamma_n_scalar(c(mu), &prm).unwrap();
    let mut last = f64::INFINITY;
    for m in [20, 40, 80] {
        let r = integrate_orthant(&f, c(mu), &QuadratureSpec::gauss(m).with_scale(1.0), &prm).unwrap();
        let err = rel(r.value, exact);
        assert!(err < last, "error must decrease with the rule size");
        assert!(r.relative_diagnostic() > 0.5 * err && r.relative_diagnostic() < 5.0 * err, "m={m}");
        last = err;
    }
}

#[test]
fn whole_space_gaussian_gives_the_type_b_constant() {
    for (n, k, nu) in [(1, q(1, 2), q(3, 2)), (2, q(1, 2), q(7, 3)), (2, qi(1), qi(3))] {
        let prm = params(n, k, nu);
        let f = |x: &[f64]| Ok(c((-0.5 * x.iter().map(|v| v * v).sum::<f64>()).exp()));
        let r = integrate_rn_b(&f, &QuadratureSpec::gauss(40), &prm).unwrap();
        assert!(rel(r.value, c_b(&prm).unwrap()) < 1e-10, "n={n}");
    }
}

#[test]
fn expanded_rule_reproduces_the_integral() {
    let prm = params_default_nu(2, q(1, 2));
    let mu = c(2.1);
    let rule = orthant_rule(mu, 30, Scheme::GaussLaguerreScaled, 1.0, &prm).unwrap();
    let f = exp_times(MPoly::parse(2, "x1^3 + x2").unwrap());
    let via_rule: C64 = rule.points.iter().zip(&rule.weights).map(|(x, w)| *w * f(x).unwrap()).sum();
    let direct = integrate_orthant(&f, mu, &QuadratureSpec::gauss(30).with_scale(1.0), &prm).unwrap();
    assert!(rel(via_rule, direct.value) < 1e-13);
}

#[test]
fn diagnostic_flags_under_resolved_rules() {
    let prm = params_default_nu(2, q(1, 2));
    let f = |x: &[f64]| Ok(c((x[0] * 3.0).cos() * (-x.iter().sum::<f64>()).exp()));
    let r = integrate_orthant(&f, c(2.0), &QuadratureSpec::gauss(4).with_scale(1.0), &prm).unwrap();
    assert!(r.relative_diagnostic() > 1e-6);
    assert!(matches!(r.require(1e-10), Err(Error::Accuracy(_))));
}

#[test]
fn gauss_scheme_needs_mu_above_mu0() {
    let prm = params_default_nu(2, q(1, 2));
    let f = exp_times(MPoly::one(2));
    let r = integrate_orthant(&f, c(0.4), &QuadratureSpec::gauss(20), &prm);
    assert!(matches!(r, Err(Error::Domain(_))));
}
