//! Gamma functions, generalized Pochhammer symbols, Bernstein polynomials,
//! Mehta constants and the Macdonald function.

mod common;

use std::f64::consts::PI;

use common::{c, params, params_default_nu, positive_k, rel};
use dunkl_core::poly::{q, q_to_f64, qi};
use dunkl_core::scalars::{
    bernstein_b, bernstein_big_b, bernstein_big_b_q, bernstein_big_b_via_b, bessel_k, c_a, c_b, gamma, gamma_n,
    gamma_n_scalar, kbessel_rank_one_closed, pochhammer_gen, pochhammer_gen_q, rho_vector, GammaArg,
};
use dunkl_core::{Error, Partition, C64, Q};
use proptest::prelude::*;

#[test]
fn gamma_at_classical_points() {
    assert!((gamma(c(0.5)).unwrap().re - PI.sqrt()).abs() < 1e-14);
    assert!((gamma(c(5.0)).unwrap().re - 24.0).abs() < 1e-12);
    assert!((gamma(c(-0.5)).unwrap().re + 2.0 * PI.sqrt()).abs() < 1e-13);
    // |Γ(i)|² = π / sinh π.
    let gi = gamma(C64::new(0.0, 1.0)).unwrap();
    assert!((gi.norm_sqr() - PI / PI.sinh()).abs() < 1e-14);
}

#[test]
fn gamma_poles_are_errors() {
    assert!(matches!(gamma(c(0.0)), Err(Error::Pole(_))));
    assert!(matches!(gamma(c(-3.0)), Err(Error::Pole(_))));
}

#[test]
fn generalized_gamma_rank_one_is_classical() {
    let prm = params(1, q(1, 2), qi(2));
    for a in [0.3, 1.0, 2.5, 7.25] {
        assert!(rel(gamma_n_scalar(c(a), &prm).unwrap(), gamma(c(a)).unwrap()) < 1e-14);
    }
}

#[test]
fn mehta_constant_at_k_one() {
    // ∫_{ℝ²} e^{−|x|²/2} (x1 − x2)² dx = 4π.
    let prm = params(2, qi(1), qi(3));
    assert!((c_a(&prm) - 4.0 * PI).abs() < 1e-13);
}

#[test]
fn type_b_constant_at_rank_one() {
    // c_B = ∫_ℝ e^{−x²/2} |x|^{2ν−1} dx = 2^ν Γ(ν).
    for nu in [q(3, 2), qi(2), q(7, 3)] {
        let prm = params(1, q(1, 2), nu.clone());
        let v = q_to_f64(&nu);
        let expected = 2f64.powf(v) * gamma(c(v)).unwrap().re;
        assert!((c_b(&prm).unwrap().re - expected).abs() < 1e-13 * expected);
    }
}

#[test]
fn macdonald_function_half_integer_orders() {
    for x in [0.1, 0.8, 3.0, 20.0] {
        let half = (PI / (2.0 * x)).sqrt() * (-x).exp();
        assert!(rel(bessel_k(c(0.5), x).unwrap(), c(half)) < 1e-13, "x={x}");
        assert!(rel(bessel_k(c(1.5), x).unwrap(), c(half * (1.0 + 1.0 / x))) < 1e-13, "x={x}");
    }
    assert!(bessel_k(c(0.5), 0.0).is_err());
}

#[test]
fn rank_one_kbessel_index_reflection() {
    // 𝒦_{−ν}(w, z) = 𝒦_ν(z, w).
    let (w, z) = (0.7, 2.3);
    for nu in [0.4, 1.3, 2.0] {
        let a = kbessel_rank_one_closed(c(-nu), w, z).unwrap();
        let b = kbessel_rank_one_closed(c(nu), z, w).unwrap();
        assert!(rel(a, b) < 1e-13);
    }
}

#[test]
fn rho_vector_is_centred() {
    let prm = params_default_nu(4, q(2, 3));
    let rho = rho_vector(&prm);
    assert_eq!(rho.iter().cloned().sum::<Q>(), qi(0));
    assert_eq!(rho[0], -q(2, 3) * q(3, 2));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gamma_recurrence_and_reflection(re in -4.7f64..6.0, im in -3.0f64..3.0) {
        let z = C64::new(re, im);
        prop_assume!(z.im.abs() > 1e-3 || (z.re - z.re.round()).abs() > 1e-3);
        prop_assert!(rel(gamma(z + 1.0).unwrap(), z * gamma(z).unwrap()) < 1e-12);
        let product = gamma(z).unwrap() * gamma(-z + 1.0).unwrap();
        let expected = C64::new(PI, 0.0) / (z * PI).sin();
        prop_assert!(rel(product, expected) < 1e-11);
    }

    #[test]
    fn generalized_gamma_shift_ratio(k in positive_k(), n in 1usize..=3, t in 0.2f64..6.0) {
        // Γ_n(α+1)/Γ_n(α) = ∏_j (α − k(j−1)) for α > μ0.
        let prm = params_default_nu(n, k);
        let kf = prm.k_f64();
        let a = prm.mu0_f64() + t;
        let ratio = gamma_n_scalar(c(a + 1.0), &prm).unwrap() / gamma_n_scalar(c(a), &prm).unwrap();
        let expected: f64 = (0..n).map(|j| a - kf * j as f64).product();
        prop_assert!((ratio.re - expected).abs() < 1e-11 * expected);
    }

    #[test]
    fn pochhammer_is_a_gamma_ratio(k in positive_k(), a in 3.0f64..6.0, l1 in 0u32..4, l2 in 0u32..4) {
        let (l1, l2) = (l1.max(l2), l1.min(l2));
        let prm = params_default_nu(2, k);
        let lambda = Partition::new(vec![l1, l2]).unwrap();
        let shifted = GammaArg::Vector(vec![c(a + l1 as f64), c(a + l2 as f64)]);
        let ratio = gamma_n(&shifted, &prm).unwrap() / gamma_n_scalar(c(a), &prm).unwrap();
        prop_assert!(rel(pochhammer_gen(c(a), &lambda, &prm), ratio) < 1e-11);
    }

    #[test]
    fn exact_pochhammer_matches_float(k in positive_k(), num in -7i64..7, den in 1i64..4, l1 in 0u32..4, l2 in 0u32..4) {
        let (l1, l2) = (l1.max(l2), l1.min(l2));
        let prm = params_default_nu(2, k.clone());
        let alpha = q(num, den);
        let lambda = Partition::new(vec![l1, l2]).unwrap();
        let exact = q_to_f64(&pochhammer_gen_q(&alpha, &lambda, &k));
        let float = pochhammer_gen(c(q_to_f64(&alpha)), &lambda, &prm).re;
        prop_assert!((exact - float).abs() <= 1e-12 * exact.abs().max(1.0));
    }

    #[test]
    fn big_bernstein_factorizes(k in positive_k(), n in 1usize..=3, mu in -3.0f64..4.0) {
        let prm = params_default_nu(n, k);
        let a = bernstein_big_b(c(mu), &prm);
        let b = bernstein_big_b_via_b(c(mu), &prm);
        prop_assert!((a - b).norm() <= 1e-10 * a.norm().max(1.0));
        prop_assert!(bernstein_b(c(mu), &prm).im == 0.0);
    }

    #[test]
    fn exact_big_bernstein_matches_float(k in positive_k(), n in 1usize..=3, num in -6i64..6, den in 1i64..4) {
        let prm = params_default_nu(n, k);
        let mu = q(num, den);
        let exact = q_to_f64(&bernstein_big_b_q(&mu, &prm));
        let float = bernstein_big_b(c(q_to_f64(&mu)), &prm).re;
        prop_assert!((exact - float).abs() <= 1e-10 * exact.abs().max(1.0));
    }

    #[test]
    fn type_b_constant_is_positive(k in positive_k(), n in 1usize..=3, extra in 1i64..8) {
        let mu0 = k.clone() * qi(n as i64 - 1);
        let prm = params(n, k, mu0 + q(1, 2) + q(extra, 3));
        let cb = c_b(&prm).unwrap();
        prop_assert!(cb.re > 0.0 && cb.im == 0.0);
    }
}
