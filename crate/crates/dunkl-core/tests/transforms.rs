//! Laplace and Hankel transforms, 𝒦-Bessel functions and zeta integrals,
//! checked against classical closed forms.

mod common;

use std::f64::consts::PI;

use common::{c, cv, params, rel};
use dunkl_core::hyp::TruncationConfig;
use dunkl_core::poly::{q, qi};
use dunkl_core::quad::QuadratureSpec;
use dunkl_core::scalars::gamma;
use dunkl_core::transforms::conjugation::conjugation_sides;
use dunkl_core::transforms::{
    dunkl_transform_b_even, functional_equation_check, hankel, kbessel, laplace_jack_check, zeta_distribution,
    zeta_integral, Engine, GaussPoly, JackIndex, ZetaRequest,
};
use dunkl_core::{Composition, Error, MPoly, Params, Partition, C64};

fn engine(prm: &Params, degree: u32) -> Engine {
    Engine::new(prm, TruncationConfig { max_degree: degree, ..TruncationConfig::default() })
}

fn exp_minus_sum(x: &[f64]) -> dunkl_core::Result<C64> {
    Ok(c((-x.iter().sum::<f64>()).exp()))
}

#[test]
fn rank_one_laplace_is_a_gamma_value() {
    // ∫_0^∞ e^{−xz} x^m x^{μ−1} dx = Γ(μ+m) z^{−μ−m}.
    let prm = params(1, q(1, 2), qi(2));
    let e = engine(&prm, 30);
    let z = C64::new(1.3, 0.4);
    for (m, mu) in [(0u32, 0.7), (2, 1.5), (5, 2.25)] {
        let check = laplace_jack_check(&JackIndex::E(Composition::new(vec![m])), c(mu), &[z], &QuadratureSpec::default(), &e).unwrap();
        let expected = gamma(c(mu + m as f64)).unwrap() * z.powc(c(-(mu + m as f64)));
        assert!(rel(check.closed, expected) < 1e-13, "closed m={m}");
        assert!(rel(check.quadrature.value, expected) < 1e-11, "quadrature m={m}");
    }
}

#[test]
fn rank_two_laplace_identity_for_symmetric_and_nonsymmetric_jacks() {
    let prm = params(2, q(1, 2), q(7, 3));
    let e = engine(&prm, 30);
    let z = [c(1.0), C64::new(1.5, 0.5)];
    let indices = [
        JackIndex::E(Composition::new(vec![0, 2])),
        JackIndex::E(Composition::new(vec![2, 1])),
        JackIndex::P(Partition::new(vec![2, 1]).unwrap()),
    ];
    for index in &indices {
        let check = laplace_jack_check(index, c(2.5), &z, &QuadratureSpec::default(), &e).unwrap();
        assert!(check.relative_error() < 1e-10, "{index:?}: {}", check.relative_error());
    }
}

#[test]
fn hankel_transform_of_the_exponential_is_the_exponential() {
    // Every moment of e^{−Σt} against L_η is Γ_n(ν + η)L_η(1̲), so the series
    // collapses to Σ L_η(−w)/|η|! = e^{−Σw} at every rank.
    for (n, nu) in [(1, q(3, 2)), (2, qi(2))] {
        let prm = params(n, q(1, 2), nu.clone());
        let e = engine(&prm, 100);
        let nu = c(dunkl_core::poly::q_to_f64(&nu));
        for w in [vec![c(0.3), c(1.1)], vec![C64::new(2.0, 0.5), C64::new(0.5, 1.0)]] {
            let w = &w[..n];
            let v = hankel(&exp_minus_sum, nu, w, &QuadratureSpec::default(), &e).unwrap();
            let expected = (-w.iter().sum::<C64>()).exp();
            assert!(v.converged);
            assert!(rel(v.value, expected) < 1e-10, "n={n} w={w:?}: {}", v.value);
            assert!(v.noise_floor() < 1e-3 * v.value.norm());
        }
    }
}

#[test]
fn dunkl_transform_fixes_the_half_gaussian() {
    // f(x) = e^{−|x|²/2}, f0(t) = e^{−Σt/2}: 𝓕^B f = f.
    for (n, nu) in [(1, q(3, 2)), (2, qi(2))] {
        let prm = params(n, q(1, 2), nu.clone());
        let e = engine(&prm, 100);
        let f0 = |t: &[f64]| Ok(c((-0.5 * t.iter().sum::<f64>()).exp()));
        let xi = cv(&[0.8, 1.3][..n]);
        let v = dunkl_transform_b_even(&f0, c(dunkl_core::poly::q_to_f64(&nu)), &xi, &QuadratureSpec::default(), &e).unwrap();
        let expected = (-0.5 * xi.iter().map(|v| v.norm_sqr()).sum::<f64>()).exp();
        assert!(rel(v.value, c(expected)) < 1e-10, "n={n}");
    }
}

#[test]
fn rank_one_kbessel_at_half_index_is_elementary() {
    // 𝒦_{1/2}(w, z) = 2 (z/w)^{1/4} K_{1/2}(2√(wz)) with K_{1/2}(x) = √(π/(2x)) e^{−x}.
    let prm = params(1, q(1, 2), q(3, 2));
    let e = engine(&prm, 30);
    for (w, z) in [(1.0f64, 2.0f64), (0.3, 0.7), (2.5, 1.1)] {
        let x = 2.0 * (w * z).sqrt();
        let expected = 2.0 * (z / w).powf(0.25) * (PI / (2.0 * x)).sqrt() * (-x).exp();
        let v = kbessel(c(0.5), &[c(w)], &[c(z)], &QuadratureSpec::tanh_sinh(120), &e).unwrap();
        assert!(rel(v.value, c(expected)) < 1e-10, "w={w} z={z}");
    }
}

#[test]
fn kbessel_index_reflection_at_rank_two() {
    // x ↦ 1/x maps the weight Δ^{ν−μ0−1}ω^A dx to Δ^{−ν−μ0−1}ω^A dx.
    let prm = params(2, q(1, 2), qi(3));
    let e = engine(&prm, 30);
    let (w, z) = ([c(1.0), c(2.0)], [C64::new(0.5, 0.3), c(1.5)]);
    let spec = QuadratureSpec::tanh_sinh(80);
    for nu in [0.7, 2.0] {
        let a = kbessel(c(nu), &w, &z, &spec, &e).unwrap();
        let b = kbessel(c(-nu), &z, &w, &spec, &e).unwrap();
        assert!(rel(a.value, b.value) < 1e-8, "nu={nu}");
    }
}

#[test]
fn kbessel_needs_the_right_half_plane() {
    let prm = params(1, q(1, 2), q(3, 2));
    let e = engine(&prm, 30);
    let r = kbessel(c(1.0), &[c(-1.0)], &[c(1.0)], &QuadratureSpec::default(), &e);
    assert!(matches!(r, Err(Error::Domain(_))));
}

#[test]
fn rank_one_zeta_values_and_their_continuation() {
    // 𝒵(x^{2j} e^{−x²}; α) = Γ(α + j), so ⟨ζ_α, e^{−x²}⟩ = 1 and
    // ⟨ζ_α, x²e^{−x²}⟩ = α for every α, also where only the continuation applies.
    let prm = params(1, q(1, 2), q(7, 3));
    let g = GaussPoly::gaussian(1);
    let xg = g.mul_poly(&MPoly::parse(1, "x1^2").unwrap()).unwrap();
    let direct = zeta_integral(&g, c(1.7), &QuadratureSpec::default(), &prm).unwrap();
    assert!(rel(direct.value, gamma(c(1.7)).unwrap()) < 1e-12);
    for alpha in [2.5, 0.6, -0.3, -1.7] {
        let one = zeta_distribution(&ZetaRequest::new(g.clone(), c(alpha)), &QuadratureSpec::default(), &prm).unwrap();
        assert!((one.value - 1.0).norm() < 1e-10, "alpha={alpha}");
        let v = zeta_distribution(&ZetaRequest::new(xg.clone(), c(alpha)), &QuadratureSpec::default(), &prm).unwrap();
        assert!((v.value - alpha).norm() < 1e-10 * alpha.abs().max(1.0), "alpha={alpha}: {}", v.value);
    }
    assert!(matches!(zeta_integral(&g, c(-0.5), &QuadratureSpec::default(), &prm), Err(Error::Domain(_))));
}

#[test]
fn functional_equation_on_the_rank_one_gaussian() {
    let prm = params(1, q(1, 2), qi(3));
    let e = engine(&prm, 100);
    let report = functional_equation_check(&GaussPoly::gaussian(1), c(1.5), &QuadratureSpec::default(), &e).unwrap();
    assert!((report.ratio() - 1.0).norm() < 1e-6);
    // The reported inner diagnostic must cover the actual discrepancy.
    assert!((report.rhs - report.lhs.value).norm() <= report.rhs_inner_diagnostic + report.rhs_outer_diagnostic);
    assert!(report.check_budget(1e-5).is_ok());
    assert!(report.check_budget(1e-8).is_err());
}

#[test]
fn conjugation_identity_on_small_polynomials() {
    let prm = params(2, q(1, 3), q(5, 2));
    for f0 in ["1", "x1", "x1^2*x2 + 3*x2", "x1^3 - x1*x2^2"] {
        let (lhs, rhs) = conjugation_sides(&MPoly::parse(2, f0).unwrap(), &prm).unwrap();
        assert_eq!(lhs, rhs, "f0={f0}");
    }
}
