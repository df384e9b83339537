//! Library results checked against independent brute-force computations.

use crate::common::*;
use approx::assert_abs_diff_eq;
use jrsp_core::protocol::{ALICE_PAIR, BOB_PAIR};
use jrsp_core::tensor::{apply_correlated_ops, partial_trace, project};
use jrsp_core::*;

#[test]
fn apply_unitary_matches_full_embedding() {
    let mut r = rng(11);
    for trial in 0..20 {
        let n = 2 + trial % 4;
        let state = random_state(&mut r, n, 1.0);
        let k = 1 + trial % 2;
        let mut targets: Vec<usize> = (0..n).collect();
        // deterministic shuffle
        targets.rotate_left(trial % n);
        targets.truncate(k);
        if trial % 3 == 0 {
            targets.reverse();
        }
        let u = random_unitary(&mut r, 1 << k);
        let addrs: Vec<QubitAddress> = targets.iter().map(|&q| QubitAddress(q)).collect();
        let got = apply_unitary(&state, &u, &addrs).unwrap();
        let expect = conjugate_full(state.rho(), &embed_full(&u, &targets, n));
        assert!(got.rho().max_abs_diff(&expect).unwrap() < 1e-13, "trial {trial}");
    }
}

#[test]
fn correlated_kraus_matches_explicit_double_sum() {
    let mut r = rng(12);
    let state = random_state(&mut r, 6, 1.0);
    for kind in NoiseKind::ALL {
        let ch = kraus_set(kind, 0.37).unwrap();
        let got = apply_correlated_kraus(&state, &ch, ALICE_PAIR, BOB_PAIR).unwrap();
        let mut expect = ComplexMatrix::zeros(64, 64);
        for ei in ch.ops() {
            for ej in ch.ops() {
                let k4 = kron(&kron(ei, ei).unwrap(), &kron(ej, ej).unwrap()).unwrap();
                let full = embed_full(&k4, &[0, 1, 2, 3], 6);
                expect = expect.add(&conjugate_full(state.rho(), &full)).unwrap();
            }
        }
        assert!(got.rho().max_abs_diff(&expect).unwrap() < 1e-13, "{kind}");
    }
}

#[test]
fn correlated_kraus_rejects_bad_input() {
    let ghz = ghz_channel_state();
    let ch = kraus_set(NoiseKind::BitFlip, 0.2).unwrap();
    let overlap = apply_correlated_kraus(&ghz, &ch, ALICE_PAIR, (QubitAddress(1), QubitAddress(2)));
    assert_eq!(overlap.unwrap_err(), JrspError::DuplicateAddress(1));
    let bad = [ComplexMatrix::identity(4)];
    let err = apply_correlated_ops(&ghz, &bad, ALICE_PAIR, BOB_PAIR).unwrap_err();
    assert!(matches!(err, JrspError::MalformedKraus(_)));
}

#[test]
fn bit_flip_output_trace() {
    let ghz = ghz_channel_state();
    for lambda in [0.0, 0.1, 0.35, 0.5, 0.9, 1.0] {
        let ch = kraus_set(NoiseKind::BitFlip, lambda).unwrap();
        let out = apply_correlated_kraus(&ghz, &ch, ALICE_PAIR, BOB_PAIR).unwrap();
        let per_pair: f64 = (1.0 - lambda) * (1.0 - lambda) + lambda * lambda;
        assert_abs_diff_eq!(out.trace(), per_pair * per_pair, epsilon = 1e-13);
    }
}

#[test]
fn full_amplitude_damping_sends_11_to_00() {
    let state = QuantumState::basis(2, 0b11).unwrap();
    let ch = kraus_set(NoiseKind::AmplitudeDamping, 1.0).unwrap();
    let mut out = ComplexMatrix::zeros(4, 4);
    for e in ch.ops() {
        let ee = kron(e, e).unwrap();
        out = out.add(&conjugate_full(state.rho(), &ee)).unwrap();
    }
    assert_eq!(out, QuantumState::basis(2, 0).unwrap().into_rho());
    // Same thing through the library on a 4-qubit register with the second pair idle.
    let four = QuantumState::basis(4, 0b1100).unwrap();
    let lib = apply_correlated_kraus(
        &four,
        &ch,
        (QubitAddress(0), QubitAddress(1)),
        (QubitAddress(2), QubitAddress(3)),
    )
    .unwrap();
    assert_eq!(lib, QuantumState::basis(4, 0).unwrap());
}

#[test]
fn zero_noise_channels_are_identity() {
    let mut r = rng(13);
    let state = random_state(&mut r, 6, 0.8);
    for kind in NoiseKind::ALL {
        let ch = kraus_set(kind, 0.0).unwrap();
        let out = apply_correlated_kraus(&state, &ch, ALICE_PAIR, BOB_PAIR).unwrap();
        assert!(out.rho().max_abs_diff(state.rho()).unwrap() < 1e-12, "{kind}");
    }
}

#[test]
fn channel_state_alice_marginal_is_maximally_mixed() {
    // Brute-force partial trace over labels 2,3,5,6 from the amplitude function.
    let mut oracle = [[0.0f64; 4]; 4];
    for cfg_r in 0..64usize {
        for cfg_c in 0..64usize {
            let lab = |cfg: usize| {
                let mut l = [0usize; 7];
                for k in 1..=6 {
                    l[k] = (cfg >> (6 - k)) & 1;
                }
                l
            };
            let (lr, lc) = (lab(cfg_r), lab(cfg_c));
            if [2, 3, 5, 6].iter().any(|&k| lr[k] != lc[k]) {
                continue;
            }
            oracle[lr[1] * 2 + lr[4]][lc[1] * 2 + lc[4]] += ghz_amplitude(&lr) * ghz_amplitude(&lc);
        }
    }
    let lib = partial_trace(&ghz_channel_state(), &[ALICE_PAIR.0, ALICE_PAIR.1]).unwrap();
    for r in 0..4 {
        for c in 0..4 {
            let expect = if r == c { 0.25 } else { 0.0 };
            assert_abs_diff_eq!(oracle[r][c], expect, epsilon = 1e-15);
            assert_abs_diff_eq!(lib.rho()[(r, c)].re, expect, epsilon = 1e-15);
            assert_abs_diff_eq!(lib.rho()[(r, c)].im, 0.0, epsilon = 1e-15);
        }
    }
}

#[test]
fn channel_state_invariant_under_global_x() {
    let ghz = ghz_channel_state();
    let mut x6 = ComplexMatrix::identity(1);
    for _ in 0..6 {
        x6 = kron(&x6, &ComplexMatrix::pauli_x()).unwrap();
    }
    let flipped = conjugate_full(ghz.rho(), &x6);
    assert!(flipped.max_abs_diff(ghz.rho()).unwrap() < 1e-15);
    let ket = {
        let mut v = vec![Complex64::new(0.0, 0.0); 64];
        v[0] = Complex64::new(1.0, 0.0);
        ComplexMatrix::column(&v)
    };
    assert_abs_diff_eq!(tensor::pure_overlap(&ghz, &ket).unwrap().sqrt(), 0.5, epsilon = 1e-15);
}

#[test]
fn every_single_alice_projection_has_weight_one_quarter() {
    let mut r = rng(14);
    for _ in 0..10 {
        let p = random_phases(&mut r);
        for v in alice_basis(&p).vectors() {
            let (w, _) = project_two_qubit(&ghz_channel_state(), v, ALICE_PAIR).unwrap();
            assert_abs_diff_eq!(w, 0.25, epsilon = 1e-14);
        }
    }
}

#[test]
fn noiseless_branches_match_brute_force() {
    let mut r = rng(15);
    for _ in 0..10 {
        let p = random_phases(&mut r);
        let (ab, bb) = (alice_basis(&p), bob_basis(&p));
        for a in 1..=4 {
            for b in 1..=4 {
                let va = ab.vector(a).unwrap();
                let vb = bb.vector(b).unwrap();
                let oracle = brute_force_branch(va.as_slice(), vb.as_slice());
                let weight: f64 = oracle.iter().map(|z| z.norm_sqr()).sum();
                assert_abs_diff_eq!(weight, 1.0 / 16.0, epsilon = 1e-14);
                let joint = kron(va, vb).unwrap();
                let (w, branch) = project(
                    &ghz_channel_state(),
                    &joint,
                    &[QubitAddress(0), QubitAddress(1), QubitAddress(2), QubitAddress(3)],
                )
                .unwrap();
                assert_abs_diff_eq!(w, weight, epsilon = 1e-14);
                let expect = ComplexMatrix::outer(&ComplexMatrix::column(&oracle));
                assert!(branch.rho().max_abs_diff(&expect).unwrap() < 1e-14);
            }
        }
    }
}

/// Closed-form 16-branch decomposition of the channel state, given as
/// `(sign, angle)` per receiver amplitude. Prefactor 1/8.
fn closed_form_decomposition(p: &PhaseSpec, a: usize, b: usize) -> [(f64, f64); 4] {
    use PhaseSign::{Minus, Plus};
    let wp = |n| p.joint(n, n, Plus);
    let wm = |n, m| p.joint(n, m, Minus);
    let g = |n, m| p.cross(n, m);
    let plus = [1.0, 1.0, 1.0, 1.0];
    let alt = [1.0, -1.0, 1.0, -1.0];
    let diag = |s: [f64; 4]| [(s[0], wp(0)), (s[1], wp(1)), (s[2], wp(2)), (s[3], wp(3))];
    let minus =
        |s: [f64; 4]| [(s[0], wm(0, 2)), (s[1], wm(1, 3)), (s[2], wm(2, 0)), (s[3], wm(3, 1))];
    // The (3,1) branch carries -e^{gamma_13} on |11>.
    let cross = |s: [f64; 4]| [(s[0], g(2, 0)), (s[1], g(3, 1)), (s[2], g(0, 2)), (s[3], g(1, 3))];
    let conj = |s: [f64; 4]| [(s[0], -wp(2)), (s[1], -wp(3)), (s[2], -wp(0)), (s[3], -wp(1))];
    match (a, b) {
        (1, 1) | (2, 2) => diag(plus),
        (1, 2) | (2, 1) => diag(alt),
        (1, 3) | (2, 4) => minus([1.0, 1.0, -1.0, -1.0]),
        (1, 4) | (2, 3) => minus([1.0, -1.0, -1.0, 1.0]),
        (3, 1) | (4, 2) => cross([1.0, 1.0, -1.0, -1.0]),
        (3, 2) | (4, 1) => cross([1.0, -1.0, -1.0, 1.0]),
        (3, 3) | (4, 4) => conj(plus),
        (3, 4) | (4, 3) => conj(alt),
        _ => unreachable!(),
    }
}

#[test]
fn recomputed_branches_reproduce_closed_form_decomposition() {
    let mut r = rng(16);
    for _ in 0..10 {
        let p = random_phases(&mut r);
        let (ab, bb) = (alice_basis(&p), bob_basis(&p));
        for a in 1..=4 {
            for b in 1..=4 {
                let oracle = brute_force_branch(
                    ab.vector(a).unwrap().as_slice(),
                    bb.vector(b).unwrap().as_slice(),
                );
                for (n, (s, theta)) in closed_form_decomposition(&p, a, b).iter().enumerate() {
                    let expect = Complex64::from_polar(s / 8.0, *theta);
                    assert!((oracle[n] - expect).norm() < 1e-14, "branch ({a},{b}) amplitude {n}");
                }
            }
        }
    }
}

#[test]
fn recovery_table_agrees_with_recomputed_corrections() {
    // Correction needed on a recoverable branch is diag(psi_n / branch_n) up to a
    // global phase; the table's operator must match it up to that phase.
    let mut r = rng(17);
    for _ in 0..20 {
        let p = random_phases(&mut r);
        let psi = equatorial_state(&p);
        let (ab, bb) = (alice_basis(&p), bob_basis(&p));
        for a in 1..=4 {
            for b in 1..=4 {
                let Some(u) = recovery_operator(a, b, &p, AssistMode::WithBothAssists).unwrap()
                else {
                    continue;
                };
                let branch = brute_force_branch(
                    ab.vector(a).unwrap().as_slice(),
                    bb.vector(b).unwrap().as_slice(),
                );
                let needed: Vec<Complex64> =
                    (0..4).map(|n| psi.as_slice()[n] / (branch[n] * 4.0)).collect();
                let phase = u[(0, 0)] / needed[0];
                for n in 0..4 {
                    assert!((u[(n, n)] - needed[n] * phase).norm() < 1e-12, "({a},{b}) entry {n}");
                }
            }
        }
    }
}

#[test]
fn noiseless_success_counts_per_mode() {
    let p = PhaseSpec::uniform_degrees(30.0).unwrap();
    for (mode, expect_prob, expect_count) in [
        (AssistMode::Case1Only, 0.25, 4),
        (AssistMode::WithBobAssist, 0.5, 8),
        (AssistMode::WithBothAssists, 0.75, 12),
    ] {
        let recs = run_jrsp(&p, None, mode).unwrap();
        assert_eq!(recs.len(), 16);
        assert_eq!(recs.iter().filter(|r| r.success).count(), expect_count);
        assert_abs_diff_eq!(success_probability(&recs, mode), expect_prob, epsilon = 1e-12);
        for r in recs.iter().filter(|r| r.success) {
            assert_abs_diff_eq!(r.normalized_fidelity().unwrap(), 1.0, epsilon = 1e-12);
        }
        assert_abs_diff_eq!(jrsp_fidelity(&recs, &p).unwrap(), 1.0, epsilon = 1e-12);
    }
}

#[test]
fn named_fidelity_values() {
    let p = PhaseSpec::new([0.9, 2.5, 4.0], [3.3, 0.1, 1.7]).unwrap();
    let pf = kraus_set(NoiseKind::PhaseFlip, 0.5).unwrap();
    let recs = run_jrsp(&p, Some(&pf), AssistMode::Case1Only).unwrap();
    assert_abs_diff_eq!(jrsp_fidelity(&recs, &p).unwrap(), 0.125, epsilon = 1e-12);
    let pd = kraus_set(NoiseKind::PhaseDamping, 1.0).unwrap();
    let recs = run_jrsp(&p, Some(&pd), AssistMode::Case1Only).unwrap();
    assert_abs_diff_eq!(jrsp_fidelity(&recs, &p).unwrap(), 0.125, epsilon = 1e-12);
}

#[test]
fn bit_flip_at_full_noise_zero_phase_is_perfect_in_simulation_too() {
    let ch = kraus_set(NoiseKind::BitFlip, 1.0).unwrap();
    let f =
        simulated_fidelity(&PhaseSpec::zero(), Some(&ch), FidelityConvention::IdealWeight).unwrap();
    assert_abs_diff_eq!(f, 1.0, epsilon = 1e-12);
}

#[test]
fn bit_flip_and_bit_phase_flip_differ_at_zero_phase_interior() {
    // At zero phases the sign-alternating brackets vanish, so the gap is
    // exactly 2 l^2 (1-l)^2 (two brackets of |4|^2/16 each).
    let p = PhaseSpec::zero();
    for lambda in [0.2, 0.5, 0.7] {
        let bf = kraus_set(NoiseKind::BitFlip, lambda).unwrap();
        let bpf = kraus_set(NoiseKind::BitPhaseFlip, lambda).unwrap();
        let fb = simulated_fidelity(&p, Some(&bf), FidelityConvention::IdealWeight).unwrap();
        let fbp = simulated_fidelity(&p, Some(&bpf), FidelityConvention::IdealWeight).unwrap();
        let gap = 2.0 * lambda * lambda * (1.0 - lambda) * (1.0 - lambda);
        assert_abs_diff_eq!(fb - fbp, gap, epsilon = 1e-12);
    }
}

#[test]
fn renormalized_fidelity_divides_by_branch_weight() {
    let p = PhaseSpec::uniform_degrees(300.0).unwrap();
    let ch = kraus_set(NoiseKind::PhaseFlip, 0.5).unwrap();
    let recs = run_jrsp(&p, Some(&ch), AssistMode::Case1Only).unwrap();
    let direct: f64 =
        recs.iter().filter(|r| r.alice_index <= 2 && r.bob_index <= 2).map(|r| r.weight).sum();
    let ideal = jrsp_fidelity(&recs, &p).unwrap();
    let renorm = renormalized_fidelity(&recs, &p).unwrap();
    assert_abs_diff_eq!(renorm, ideal * 0.25 / direct, epsilon = 1e-13);
    // trace after noise is 1/4; direct branches carry a quarter of it
    assert_abs_diff_eq!(direct, 1.0 / 16.0, epsilon = 1e-13);
    assert_abs_diff_eq!(renorm, 0.5, epsilon = 1e-12);
}

#[test]
fn post_noise_bit_flip_state_is_valid_subnormalized() {
    let ch = kraus_set(NoiseKind::BitFlip, 0.5).unwrap();
    let state = noisy_channel_state(Some(&ch)).unwrap();
    assert!(validate_state(&state, true).is_empty());
    assert!(!validate_state(&state, false).is_empty());
    assert!(validate_state(&ghz_channel_state(), false).is_empty());
}
