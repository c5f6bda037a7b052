//! Strategies and small helpers shared by the integration tests.

#![allow(dead_code)]

use dunkl_core::poly::{q, qi};
use dunkl_core::{Composition, MPoly, Params, SignedPerm, C64, Q};
use proptest::prelude::*;

/// A rational with small numerator and denominator.
pub fn small_q() -> impl Strategy<Value = Q> {
    (-6i64..=6, 1i64..=4).prop_map(|(a, b)| q(a, b))
}

/// A positive rational multiplicity.
pub fn positive_k() -> impl Strategy<Value = Q> {
    (1i64..=4, 1i64..=5).prop_map(|(a, b)| q(a, b))
}

/// A polynomial in `n` variables of total degree at most `max_degree` with
/// at most `max_terms` terms and small rational coefficients.
pub fn poly(n: usize, max_degree: u32, max_terms: usize) -> impl Strategy<Value = MPoly> {
    let term = (proptest::collection::vec(0..=max_degree, n), small_q());
    proptest::collection::vec(term, 0..=max_terms).prop_map(move |terms| {
        let mut p = MPoly::zero(n);
        for (mut e, c) in terms {
            // Clip the total degree by lowering the last exponents first.
            while e.iter().sum::<u32>() > max_degree {
                let j = e.iter().rposition(|a| *a > 0).expect("positive total degree");
                e[j] -= 1;
            }
            p.add_term(Composition::new(e), c);
        }
        p
    })
}

/// A rational point with pairwise distinct, non-zero coordinates whose
/// pairwise sums are non-zero as well.
pub fn generic_point(n: usize) -> impl Strategy<Value = Vec<Q>> {
    proptest::collection::vec((1i64..=40, 1i64..=7, any::<bool>()), n).prop_filter_map("generic point", |raw| {
        let x: Vec<Q> = raw.iter().map(|(a, b, neg)| if *neg { -q(*a, *b) } else { q(*a, *b) }).collect();
        for i in 0..x.len() {
            for j in 0..i {
                if x[i] == x[j] || x[i] == -x[j].clone() {
                    return None;
                }
            }
        }
        Some(x)
    })
}

/// A signed permutation of rank `n`.
pub fn signed_perm(n: usize) -> impl Strategy<Value = SignedPerm> {
    (Just((0..n).collect::<Vec<usize>>()).prop_shuffle(), proptest::collection::vec(any::<bool>(), n))
        .prop_map(|(perm, flips)| {
            let signs = flips.iter().map(|f| if *f { -1 } else { 1 }).collect();
            SignedPerm::new(perm, signs).expect("valid signed permutation")
        })
}

pub fn params(n: usize, k: Q, nu: Q) -> Params {
    Params::new(n, k, nu).expect("valid parameters")
}

/// Parameters with `ν` comfortably above `μ0 + 1/2`.
pub fn params_default_nu(n: usize, k: Q) -> Params {
    let nu = k.clone() * qi(n as i64 - 1) + q(3, 2);
    params(n, k, nu)
}

pub fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

pub fn cv(re: &[f64]) -> Vec<C64> {
    re.iter().map(|v| C64::new(*v, 0.0)).collect()
}

/// `|a − b| / |b|`.
pub fn rel(a: C64, b: C64) -> f64 {
    (a - b).norm() / b.norm()
}
