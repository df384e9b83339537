//! Test-only oracles and random inputs. Nothing here calls into the
//! library's embedding or projection code paths.

#![allow(dead_code)]

use jrsp_core::{Complex64, ComplexMatrix, PhaseSpec, QuantumState};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_phases(rng: &mut impl Rng) -> PhaseSpec {
    let mut draw = || -> [f64; 3] { [0, 1, 2].map(|_| rng.gen_range(0.0..std::f64::consts::TAU)) };
    let a = draw();
    let b = draw();
    PhaseSpec::new(a, b).unwrap()
}

pub fn random_complex(rng: &mut impl Rng) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

/// Haar-ish unitary from Gram-Schmidt on random columns.
pub fn random_unitary(rng: &mut impl Rng, n: usize) -> ComplexMatrix {
    let mut cols: Vec<Vec<Complex64>> = Vec::new();
    while cols.len() < n {
        let mut v: Vec<Complex64> = (0..n).map(|_| random_complex(rng)).collect();
        for u in &cols {
            let dot: Complex64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (vi, ui) in v.iter_mut().zip(u) {
                *vi -= dot * ui;
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-6 {
            continue;
        }
        cols.push(v.into_iter().map(|z| z / norm).collect());
    }
    let mut m = ComplexMatrix::zeros(n, n);
    for (c, col) in cols.iter().enumerate() {
        for (r, z) in col.iter().enumerate() {
            m[(r, c)] = *z;
        }
    }
    m
}

/// Random mixed state `A A^dag / tr(A A^dag)` scaled to `trace`.
pub fn random_state(rng: &mut impl Rng, num_qubits: usize, trace: f64) -> QuantumState {
    let n = 1 << num_qubits;
    let data: Vec<Complex64> = (0..n * n).map(|_| random_complex(rng)).collect();
    let a = ComplexMatrix::new(n, n, data).unwrap();
    let rho = a.matmul(&a.adjoint()).unwrap();
    let t = rho.trace().re;
    QuantumState::new(rho.scale_real(trace / t)).unwrap()
}

/// Bit of qubit `q` (0 = most significant) in an `n`-qubit index.
pub fn bit(index: usize, q: usize, n: usize) -> usize {
    (index >> (n - 1 - q)) & 1
}

/// Full `2^n x 2^n` matrix of `op` acting on `targets`, built entry by entry:
/// `<r|O|c> = op[t(r), t(c)]` when `r` and `c` agree off the targets, else 0.
pub fn embed_full(op: &ComplexMatrix, targets: &[usize], n: usize) -> ComplexMatrix {
    let dim = 1 << n;
    let sub = |idx: usize| targets.iter().fold(0, |acc, &q| (acc << 1) | bit(idx, q, n));
    let rest_equal = |r: usize, c: usize| {
        (0..n).filter(|q| !targets.contains(q)).all(|q| bit(r, q, n) == bit(c, q, n))
    };
    let mut out = ComplexMatrix::zeros(dim, dim);
    for r in 0..dim {
        for c in 0..dim {
            if rest_equal(r, c) {
                out[(r, c)] = op[(sub(r), sub(c))];
            }
        }
    }
    out
}

pub fn conjugate_full(rho: &ComplexMatrix, k: &ComplexMatrix) -> ComplexMatrix {
    k.matmul(rho).unwrap().matmul(&k.adjoint()).unwrap()
}

/// The channel state as an explicit amplitude function over physical labels:
/// amplitude 1/2 iff q1=q2=q3 and q4=q5=q6.
pub fn ghz_amplitude(labels: &[usize; 7]) -> f64 {
    if labels[1] == labels[2]
        && labels[2] == labels[3]
        && labels[4] == labels[5]
        && labels[5] == labels[6]
    {
        0.5
    } else {
        0.0
    }
}

/// Unnormalized receiver ket `<a|<b| Phi>` computed by summing over all 2^6
/// physical configurations; `a` acts on (1,4) and `b` on (2,5), both as kets.
pub fn brute_force_branch(a: &[Complex64], b: &[Complex64]) -> [Complex64; 4] {
    let mut out = [Complex64::new(0.0, 0.0); 4];
    for cfg in 0..64usize {
        // labels[k] for k = 1..=6; bit 5 of cfg is label 1.
        let mut labels = [0usize; 7];
        for k in 1..=6 {
            labels[k] = (cfg >> (6 - k)) & 1;
        }
        let amp = ghz_amplitude(&labels);
        if amp == 0.0 {
            continue;
        }
        let ai = labels[1] * 2 + labels[4];
        let bi = labels[2] * 2 + labels[5];
        let ri = labels[3] * 2 + labels[6];
        out[ri] += a[ai].conj() * b[bi].conj() * amp;
    }
    out
}

pub fn max_abs(v: impl IntoIterator<Item = f64>) -> f64 {
    v.into_iter().fold(0.0, f64::max)
}
