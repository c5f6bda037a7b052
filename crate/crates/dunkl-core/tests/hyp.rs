//! Truncated Jack hypergeometric series and the Dunkl and Bessel kernels.

mod common;

use common::{c, cv, params, params_default_nu, rel};
use dunkl_core::hyp::{
    bessel_kernel, dunkl_kernel_a, dunkl_kernel_a_closed, hyp_eval, series_poly_q, BesselKind, HypSpec, SeriesKind,
    TruncationConfig,
};
use dunkl_core::jack::JackBasis;
use dunkl_core::poly::{q, q_to_f64, qi};
use dunkl_core::{Error, MPoly, Params, SignedPerm, C64};
use proptest::prelude::*;
use std::sync::OnceLock;

fn trunc(max_degree: u32) -> TruncationConfig {
    TruncationConfig { max_degree, ..TruncationConfig::default() }
}

fn basis(prm: &Params, d: u32) -> JackBasis {
    JackBasis::new(prm, d)
}

/// One rank-three basis at `k = 1/2` shared by the property tests, so the
/// Jack layers are built once.
fn shared_rank_three() -> &'static JackBasis {
    static BASIS: OnceLock<JackBasis> = OnceLock::new();
    BASIS.get_or_init(|| basis(&params_default_nu(3, q(1, 2)), 60))
}

/// Classical `1F1(a; b; x)` by its power series.
fn hyp1f1(a: f64, b: f64, x: f64) -> f64 {
    let (mut term, mut sum) = (1.0, 1.0);
    for m in 0..400 {
        let m = m as f64;
        term *= (a + m) / (b + m) * x / (m + 1.0);
        sum += term;
        if term.abs() < 1e-18 * sum.abs() {
            break;
        }
    }
    sum
}

/// Classical `0F1(; b; x)` by its power series.
fn hyp0f1(b: f64, x: f64) -> f64 {
    let (mut term, mut sum) = (1.0, 1.0);
    for m in 0..400 {
        let m = m as f64;
        term *= x / ((b + m) * (m + 1.0));
        sum += term;
        if term.abs() < 1e-18 * sum.abs() {
            break;
        }
    }
    sum
}

/// Rank-two type-A kernel: the centre of mass factor times the rank-one
/// kernel `e^{t} 1F1(k; 2k+1; −2t) = 1 + t/(2k+1) + …` of the relative
/// coordinate.
fn kernel_rank_two_oracle(w: [f64; 2], z: [f64; 2], k: f64) -> f64 {
    let s = (w[0] + w[1]) * (z[0] + z[1]) / 2.0;
    let t = (w[0] - w[1]) * (z[0] - z[1]) / 2.0;
    s.exp() * t.exp() * hyp1f1(k, 2.0 * k + 1.0, -2.0 * t)
}

#[test]
fn kernels_at_zero_are_one() {
    let prm = params_default_nu(3, q(1, 2));
    let b = basis(&prm, 10);
    let zero = cv(&[0.0, 0.0, 0.0]);
    let z = vec![C64::new(0.3, 0.2), c(-1.1), c(0.7)];
    let e = dunkl_kernel_a(&zero, &z, &trunc(10), &b).unwrap();
    assert!((e.value - c(1.0)).norm() < 1e-15 && e.converged);
    let f = hyp_eval(&HypSpec::new(vec![], vec![], SeriesKind::F), &zero, &z, &trunc(10), &b).unwrap();
    assert!((f.value - c(1.0)).norm() < 1e-15);
}

#[test]
fn degree_one_layer_of_the_kernel() {
    let prm = params_default_nu(3, q(2, 3));
    let b = basis(&prm, 1);
    let (x, y) = ([0.3, -0.2, 0.5], [1.1, 0.4, -0.7]);
    let k = prm.k_f64();
    let p1y: f64 = y.iter().sum();
    let layer1: f64 = (0..3).map(|i| x[i] * (y[i] + k * p1y) / (1.0 + 3.0 * k)).sum();
    let e = dunkl_kernel_a(&cv(&x), &cv(&y), &TruncationConfig { max_degree: 1, tail_tol: 0.0 }, &b).unwrap();
    assert!((e.value.re - (1.0 + layer1)).abs() < 1e-15);
}

#[test]
fn rank_one_kernel_is_the_exponential() {
    let prm = params(1, q(1, 2), qi(2));
    let b = basis(&prm, 60);
    for (w, z) in [(0.3, 1.7), (-2.0, 1.5), (0.5, -0.25)] {
        let e = dunkl_kernel_a(&cv(&[w]), &cv(&[z]), &trunc(60), &b).unwrap();
        assert!(rel(e.value, c((w * z).exp())) < 1e-14);
    }
}

#[test]
fn kernel_at_ones_is_the_exponential_of_the_sum() {
    let prm = params_default_nu(3, q(1, 3));
    let b = basis(&prm, 40);
    let w = vec![C64::new(0.4, 0.1), c(-0.3), c(0.9)];
    let e = dunkl_kernel_a(&w, &cv(&[1.0, 1.0, 1.0]), &trunc(40), &b).unwrap();
    let sum: C64 = w.iter().sum();
    assert!(rel(e.value, sum.exp()) < 1e-13);
}

#[test]
fn rank_two_series_and_closed_form_match_the_oracle() {
    for k in [q(1, 2), qi(1), q(7, 3)] {
        let prm = params_default_nu(2, k);
        let b = basis(&prm, 60);
        for (w, z) in [([0.3, 1.2], [0.9, -0.4]), ([-1.0, 0.5], [0.2, 1.4]), ([1.5, 0.0], [1.0, 0.3])] {
            let oracle = kernel_rank_two_oracle(w, z, prm.k_f64());
            let series = dunkl_kernel_a(&cv(&w), &cv(&z), &trunc(60), &b).unwrap();
            let closed = dunkl_kernel_a_closed(&cv(&w), &cv(&z), prm.k_f64()).unwrap();
            assert!(rel(series.value, c(oracle)) < 1e-13, "series {w:?} {z:?} k={} {} vs {oracle}", prm.k(), series.value);
            assert!(rel(closed, c(oracle)) < 1e-13, "closed {w:?} {z:?}");
        }
    }
}

#[test]
fn rank_one_bessel_kernel_is_classical() {
    let prm = params(1, q(1, 2), q(3, 2));
    let b = basis(&prm, 60);
    for nu in [0.5, 1.3, -0.7, 3.0] {
        for (w, z) in [(1.0, 2.0), (0.4, 0.3), (2.5, 1.0)] {
            let v = bessel_kernel(BesselKind::E, c(nu), &cv(&[w]), &cv(&[z]), &trunc(60), &b).unwrap();
            assert!(rel(v.value, c(hyp0f1(nu, -w * z))) < 1e-12, "nu={nu} w={w} z={z}");
        }
    }
}

#[test]
fn symmetric_bessel_kernel_is_the_permutation_mean() {
    let prm = params_default_nu(3, q(1, 2));
    let b = basis(&prm, 40);
    let (w, z) = (cv(&[0.3, 0.8, -0.2]), vec![C64::new(0.5, 0.2), c(1.1), c(-0.4)]);
    let nu = c(2.5);
    let j = bessel_kernel(BesselKind::J, nu, &w, &z, &trunc(40), &b).unwrap().value;
    let mut mean = C64::new(0.0, 0.0);
    let perms = SignedPerm::all_permutations(3);
    for g in &perms {
        mean += bessel_kernel(BesselKind::E, nu, &w, &g.apply(&z), &trunc(40), &b).unwrap().value;
    }
    mean /= perms.len() as f64;
    assert!(rel(j, mean) < 1e-13);
}

#[test]
fn inadmissible_and_divergent_series_are_rejected() {
    let prm = params_default_nu(2, q(1, 2));
    let b = basis(&prm, 10);
    let (w, z) = (cv(&[0.1, 0.2]), cv(&[0.3, 0.4]));
    // ν = k − 1 makes [ν]_λ vanish.
    let pole = bessel_kernel(BesselKind::E, c(-0.5), &w, &z, &trunc(10), &b);
    assert!(matches!(pole, Err(Error::Pole(_))));
    let spec = HypSpec::new(vec![c(1.0), c(1.0)], vec![], SeriesKind::F);
    assert!(matches!(hyp_eval(&spec, &w, &z, &trunc(10), &b), Err(Error::Domain(_))));
    let spec = HypSpec::new(vec![c(1.0)], vec![], SeriesKind::F);
    assert!(matches!(hyp_eval(&spec, &cv(&[2.0, 1.0]), &cv(&[1.0, 1.0]), &trunc(10), &b), Err(Error::Domain(_))));
    assert!(matches!(dunkl_kernel_a(&cv(&[0.1]), &z, &trunc(10), &b), Err(Error::VariableMismatch { .. })));
}

#[test]
fn cancelling_series_are_refused() {
    let prm = params(1, q(1, 2), qi(2));
    let b = basis(&prm, 80);
    let r = dunkl_kernel_a(&cv(&[-40.0]), &cv(&[1.0]), &trunc(80), &b);
    assert!(matches!(r, Err(Error::Accuracy(_))));
}

#[test]
fn exact_truncation_agrees_with_floating_series() {
    let prm = params_default_nu(2, q(1, 2));
    let b = basis(&prm, 8);
    let nu = q(5, 2);
    let w = [q(1, 3), q(-1, 2)];
    let poly: MPoly = series_poly_q(&[], std::slice::from_ref(&nu), SeriesKind::K, &w, 8, &b).unwrap();
    let z = [0.4, 0.7];
    let wf = cv(&[q_to_f64(&w[0]), q_to_f64(&w[1])]);
    let cfg = TruncationConfig { max_degree: 8, tail_tol: 0.0 };
    let series = hyp_eval(&HypSpec::new(vec![], vec![c(q_to_f64(&nu))], SeriesKind::K), &wf, &cv(&z), &cfg, &b).unwrap();
    assert!(rel(poly.eval(&cv(&z)).unwrap(), series.value) < 1e-14);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn symmetric_series_is_symmetric(
        w in proptest::collection::vec(-1.0f64..1.0, 3),
        z in proptest::collection::vec(-1.0f64..1.0, 3),
        g in common::signed_perm(3),
    ) {
        prop_assume!(g.apply(&[1i64, 2, 3]).iter().all(|v| *v > 0));
        let b = shared_rank_three();
        let spec = HypSpec::new(vec![], vec![c(2.5)], SeriesKind::F);
        let base = hyp_eval(&spec, &cv(&w), &cv(&z), &trunc(30), b).unwrap().value;
        let swapped = hyp_eval(&spec, &cv(&z), &cv(&w), &trunc(30), b).unwrap().value;
        let permuted = hyp_eval(&spec, &cv(&w), &g.apply(&cv(&z)), &trunc(30), b).unwrap().value;
        prop_assert!(rel(swapped, base) < 1e-13);
        prop_assert!(rel(permuted, base) < 1e-13);
    }

    #[test]
    fn kernel_on_opposite_orthants_is_a_probability(
        x in proptest::collection::vec(0.0f64..1.5, 3),
        y in proptest::collection::vec(0.0f64..1.5, 3),
    ) {
        let b = shared_rank_three();
        let mx: Vec<f64> = x.iter().map(|v| -v).collect();
        let e = dunkl_kernel_a(&cv(&mx), &cv(&y), &trunc(60), b).unwrap().value;
        prop_assert!(e.re > 0.0 && e.re <= 1.0 + 1e-13);
    }

    #[test]
    fn closed_form_matches_series_at_rank_two(
        w in proptest::collection::vec(-1.5f64..1.5, 2),
        z in proptest::collection::vec(-1.5f64..1.5, 2),
        k in common::positive_k(),
    ) {
        let prm = params_default_nu(2, k);
        let b = basis(&prm, 60);
        let series = dunkl_kernel_a(&cv(&w), &cv(&z), &trunc(60), &b).unwrap().value;
        let closed = dunkl_kernel_a_closed(&cv(&w), &cv(&z), prm.k_f64()).unwrap();
        prop_assert!(rel(closed, series) < 1e-12);
    }
}
