//! Exact polynomial arithmetic, the group action and the text format.

mod common;

use common::{generic_point, poly, signed_perm, small_q};
use dunkl_core::poly::{compositions, partitions, q, qi};
use dunkl_core::{Composition, MPoly, Partition, SignedPerm, Q};
use proptest::prelude::*;

fn neg(x: &[Q]) -> Vec<Q> {
    x.iter().map(|v| -v.clone()).collect()
}

#[test]
fn parse_reads_coefficients_and_exponents() {
    let p = MPoly::parse(2, "x1^2 - 3/2*x1*x2 + 4").unwrap();
    assert_eq!(p.coeff(&Composition::new(vec![2, 0])), qi(1));
    assert_eq!(p.coeff(&Composition::new(vec![1, 1])), q(-3, 2));
    assert_eq!(p.constant_term(), qi(4));
    assert_eq!(p.len(), 3);
}

#[test]
fn parse_rejects_out_of_range_variables_and_garbage() {
    assert!(MPoly::parse(2, "x3").is_err());
    assert!(MPoly::parse(2, "").is_err());
    assert!(MPoly::parse(2, "x1^^2").is_err());
}

#[test]
fn delta_and_power_sum() {
    let d = MPoly::delta(3);
    assert_eq!(d, MPoly::parse(3, "x1*x2*x3").unwrap());
    assert_eq!(MPoly::power_sum_1(3), MPoly::parse(3, "x1 + x2 + x3").unwrap());
}

#[test]
fn composition_and_partition_counts() {
    // Weak compositions of d into n parts: C(d+n−1, n−1).
    assert_eq!(compositions(3, 4).len(), 15);
    assert_eq!(compositions(2, 0).len(), 1);
    // Partitions of 6 into at most 3 parts.
    assert_eq!(partitions(3, 6).len(), 7);
    assert!(partitions(3, 6).iter().all(|p| p.degree() == 6));
}

#[test]
fn partition_rejects_increasing_parts() {
    assert!(Partition::new(vec![1, 2]).is_err());
    assert!(Partition::new(vec![2, 1, 0]).is_ok());
}

#[test]
fn mixed_variable_counts_are_rejected() {
    let a = MPoly::var(2, 0);
    let b = MPoly::var(3, 0);
    assert!(a.try_add(&b).is_err());
    assert!(a.try_mul(&b).is_err());
    assert!(a.eval_q(&[qi(1)]).is_err());
}

#[test]
fn signed_perm_validation() {
    assert!(SignedPerm::new(vec![0, 0], vec![1, 1]).is_err());
    assert!(SignedPerm::new(vec![1, 0], vec![1, 2]).is_err());
    let g = SignedPerm::anti_transposition(2, 0, 1);
    assert_eq!(g.apply(&[3i64, 5]), vec![-5, -3]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn multiplication_is_commutative_and_distributes(
        a in poly(2, 3, 4), b in poly(2, 3, 4), c in poly(2, 3, 4)
    ) {
        prop_assert_eq!(a.try_mul(&b).unwrap(), b.try_mul(&a).unwrap());
        let lhs = a.try_add(&b).unwrap().try_mul(&c).unwrap();
        let rhs = a.try_mul(&c).unwrap().try_add(&b.try_mul(&c).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn evaluation_is_a_ring_homomorphism(a in poly(3, 3, 4), b in poly(3, 3, 4), x in generic_point(3)) {
        let sum = a.try_add(&b).unwrap().eval_q(&x).unwrap();
        let prod = a.try_mul(&b).unwrap().eval_q(&x).unwrap();
        let (va, vb) = (a.eval_q(&x).unwrap(), b.eval_q(&x).unwrap());
        prop_assert_eq!(sum, &va + &vb);
        prop_assert_eq!(prod, va * vb);
    }

    #[test]
    fn subtraction_inverts_addition(a in poly(2, 4, 5), b in poly(2, 4, 5)) {
        prop_assert_eq!(a.try_add(&b).unwrap().try_sub(&b).unwrap(), a.clone());
        prop_assert!(a.try_sub(&a).unwrap().is_zero());
    }

    #[test]
    fn square_vars_substitutes_squares(p in poly(2, 3, 4), x in generic_point(2)) {
        let sq: Vec<Q> = x.iter().map(|v| v * v).collect();
        prop_assert_eq!(p.square_vars().eval_q(&x).unwrap(), p.eval_q(&sq).unwrap());
    }

    #[test]
    fn dilate_scales_the_argument(p in poly(2, 4, 4), c in small_q(), x in generic_point(2)) {
        let cx: Vec<Q> = x.iter().map(|v| v * &c).collect();
        prop_assert_eq!(p.dilate(&c).eval_q(&x).unwrap(), p.eval_q(&cx).unwrap());
    }

    #[test]
    fn group_act_is_composition_with_the_inverse(p in poly(3, 3, 4), g in signed_perm(3), x in generic_point(3)) {
        // (g·p)(g·x) = p(x).
        let gx = act_on_point(&g, &x);
        prop_assert_eq!(p.group_act(&g).unwrap().eval_q(&gx).unwrap(), p.eval_q(&x).unwrap());
    }

    #[test]
    fn group_act_is_a_left_action(p in poly(3, 3, 4), g in signed_perm(3), h in signed_perm(3)) {
        let two_steps = p.group_act(&h).unwrap().group_act(&g).unwrap();
        prop_assert_eq!(two_steps, p.group_act(&g.compose(&h)).unwrap());
    }

    #[test]
    fn sign_flip_of_even_part_is_trivial(p in poly(2, 4, 4)) {
        let even = p.square_vars();
        prop_assert_eq!(even.group_act(&SignedPerm::sign_flip(2, 0)).unwrap(), even.clone());
        prop_assert_eq!(even.group_act(&SignedPerm::anti_transposition(2, 0, 1)).unwrap(), even.group_act(&SignedPerm::transposition(2, 0, 1)).unwrap());
    }

    #[test]
    fn derivative_obeys_leibniz(a in poly(2, 3, 4), b in poly(2, 3, 4), i in 0usize..2) {
        let lhs = a.try_mul(&b).unwrap().derivative(i);
        let rhs = a.derivative(i).try_mul(&b).unwrap().try_add(&a.try_mul(&b.derivative(i)).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn display_round_trips_through_parse(p in poly(3, 4, 5)) {
        prop_assume!(!p.is_zero());
        let text = p.to_string();
        prop_assert_eq!(MPoly::parse(3, &text).unwrap(), p);
    }

    #[test]
    fn homogeneous_parts_sum_to_the_polynomial(p in poly(2, 5, 6)) {
        let mut acc = MPoly::zero(2);
        for d in 0..=p.degree().unwrap_or(0) {
            let h = p.homogeneous_part(d);
            prop_assert!(h.is_zero() || h.is_homogeneous());
            acc = acc.try_add(&h).unwrap();
        }
        prop_assert_eq!(acc, p);
    }

    #[test]
    fn eval_matches_exact_evaluation(p in poly(2, 4, 4), x in generic_point(2)) {
        let exact = dunkl_core::poly::q_to_f64(&p.eval_q(&x).unwrap());
        let xf: Vec<_> = x.iter().map(|v| dunkl_core::C64::new(dunkl_core::poly::q_to_f64(v), 0.0)).collect();
        let approx = p.eval(&xf).unwrap().re;
        prop_assert!((approx - exact).abs() <= 1e-9 * (1.0 + exact.abs()));
        prop_assert_eq!(p.eval_q(&neg(&neg(&x))).unwrap(), p.eval_q(&x).unwrap());
    }
}

/// `g·x` for a rational point, read off from the action on signed indices.
fn act_on_point(g: &SignedPerm, x: &[Q]) -> Vec<Q> {
    let idx: Vec<i64> = (1..=x.len() as i64).collect();
    g.apply(&idx)
        .into_iter()
        .map(|s| {
            let v = x[s.unsigned_abs() as usize - 1].clone();
            if s < 0 {
                -v
            } else {
                v
            }
        })
        .collect()
}
