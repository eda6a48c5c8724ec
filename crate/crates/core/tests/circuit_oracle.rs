//! Statevector kernels against the dense-matrix oracle.

mod common;

use proptest::prelude::*;
use qmarket_core::circuit::{
    adjusted_valuations, closed_form_pair, entangler_state, CircuitParams,
};
use qmarket_core::rng::Stream;
use std::f64::consts::PI;

#[test]
fn entangler_matches_series_exponential() {
    for n in 1..=4usize {
        for step in 0..=8 {
            let gamma = PI / 2.0 * (step as f64 / 8.0);
            let state = entangler_state(gamma, n).unwrap();
            let dense = common::dense_entangler(gamma, n);
            // J|0…0⟩ is the first column of the dense operator.
            for (idx, amp) in state.amplitudes().iter().enumerate() {
                assert!(
                    (amp - dense[idx][0]).norm() < 1e-12,
                    "n={n} gamma={gamma} idx={idx}"
                );
            }
        }
    }
}

#[test]
fn adjusted_valuations_match_dense_oracle() {
    let mut rng = Stream::new(2024, 0);
    for &n in &[2usize, 3, 5, 8] {
        for _ in 0..3 {
            let gamma = rng.uniform_in(0.0, PI / 2.0);
            let theta: Vec<f64> = (0..n).map(|_| rng.uniform_in(0.0, PI)).collect();
            let phi: Vec<f64> = (0..n).map(|_| rng.uniform_in(0.0, 2.0 * PI)).collect();
            let psi: Vec<f64> = (0..n).map(|_| rng.uniform_in(0.0, 2.0 * PI)).collect();
            let params =
                CircuitParams::new(gamma, theta.clone(), phi.clone(), psi.clone()).unwrap();
            let fast = adjusted_valuations(&params).unwrap();
            let dense = common::dense_adjusted(gamma, &theta, &phi, &psi);
            for (q, (a, b)) in fast.values().iter().zip(&dense).enumerate() {
                assert!((a - b).abs() < 1e-9, "n={n} qubit={q}: {a} vs {b}");
            }
        }
    }
}

#[test]
fn mismatched_phase_example_against_dense_oracle() {
    let dense = common::dense_adjusted(
        PI / 2.0,
        &[PI / 2.0, PI / 2.0],
        &[0.0, PI / 3.0],
        &[0.0, 0.0],
    );
    assert!((dense[0] - 0.875).abs() < 1e-12);
    assert!((dense[1] - (2.0 - 3f64.sqrt()) / 4.0).abs() < 1e-12);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // Two-player circuit output equals the closed-form pair at (φ,ψ)=(0,0).
    #[test]
    fn circuit_equals_closed_form(
        t1 in 0.0..PI,
        t2 in 0.0..PI,
        g in 0.0..(PI / 2.0),
    ) {
        let params = CircuitParams::new(g, vec![t1, t2], vec![0.0; 2], vec![0.0; 2]).unwrap();
        let v = adjusted_valuations(&params).unwrap();
        let (c1, c2) = closed_form_pair(t1, t2, g).unwrap();
        prop_assert!((v.values()[0] - c1).abs() < 1e-9);
        prop_assert!((v.values()[1] - c2).abs() < 1e-9);
    }

    // The readout is always a probability vector.
    #[test]
    fn readout_stays_in_unit_interval(
        t1 in 0.0..PI,
        t2 in 0.0..PI,
        t3 in 0.0..PI,
        p1 in 0.0..(2.0 * PI),
        p2 in 0.0..(2.0 * PI),
        q3 in 0.0..(2.0 * PI),
        g in 0.0..(PI / 2.0),
    ) {
        let params = CircuitParams::new(
            g,
            vec![t1, t2, t3],
            vec![p1, p2, 0.3],
            vec![0.1, 4.0, q3],
        )
        .unwrap();
        let v = adjusted_valuations(&params).unwrap();
        prop_assert!(v.values().iter().all(|x| (0.0..=1.0).contains(x)));
    }
}
