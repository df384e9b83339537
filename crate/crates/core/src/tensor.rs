//! Dense complex linear algebra over a handful of qubits.
//!
//! Everything here is exact dense arithmetic on matrices of at most
//! 2^12 x 2^12 entries; the protocol itself never exceeds 64 x 64.
//!
//! Qubit `0` is the most significant bit of a computational-basis index, so
//! for the six-qubit channel state laid out as `(1, 4, 2, 5, 3, 6)` the ket
//! `|q1 q4 q2 q5 q3 q6>` has index `q1*32 + q4*16 + q2*8 + q5*4 + q3*2 + q6`.

use std::fmt;
use std::ops::{Index, IndexMut};

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::channels::KrausChannel;
use crate::error::{JrspError, Result};

/// Structural tolerance: Hermiticity, trace, orthonormality, unitarity.
pub const STRUCTURAL_TOL: f64 = 1e-12;
/// Floor for the smallest eigenvalue of a positive semidefinite state.
pub const PSD_TOL: f64 = 1e-10;
/// Largest supported matrix side (12 qubits).
pub const MAX_DIM: usize = 1 << 12;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Row-major dense complex matrix. Column vectors are `n x 1` matrices.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if rows > MAX_DIM || cols > MAX_DIM {
            return Err(JrspError::DimensionOverflow { rows, cols });
        }
        if data.len() != rows * cols {
            return Err(JrspError::DimensionMismatch(format!(
                "{} entries supplied for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(pos) = data.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(JrspError::NonFinite { row: pos / cols, col: pos % cols });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    /// Builds a matrix from nested rows. Panics on ragged input; meant for literals.
    pub fn from_rows<R: AsRef<[Complex64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.as_ref().len(), cols, "ragged matrix literal");
            data.extend_from_slice(r.as_ref());
        }
        Self { rows: rows.len(), cols, data }
    }

    pub fn from_real_rows<R: AsRef<[f64]>>(rows: &[R]) -> Self {
        let lifted: Vec<Vec<Complex64>> = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|&x| Complex64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&lifted)
    }

    pub fn diagonal(entries: &[Complex64]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, &z) in entries.iter().enumerate() {
            m[(i, i)] = z;
        }
        m
    }

    pub fn column(entries: &[Complex64]) -> Self {
        Self { rows: entries.len(), cols: 1, data: entries.to_vec() }
    }

    pub fn pauli_x() -> Self {
        Self::from_real_rows(&[[0.0, 1.0], [1.0, 0.0]])
    }

    /// `[[0, -i], [i, 0]]`.
    pub fn pauli_y() -> Self {
        let i = Complex64::i();
        Self::from_rows(&[[ZERO, -i], [i, ZERO]])
    }

    pub fn pauli_z() -> Self {
        Self::from_real_rows(&[[1.0, 0.0], [0.0, -1.0]])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[Complex64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out[(c, r)] = self[(r, c)].conj();
            }
        }
        out
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&z| z * s).collect() }
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(Complex64::new(s, 0.0))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(Self { rows: self.rows, cols: self.cols, data })
    }

    fn add_assign(&mut self, other: &Self) {
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += b;
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Ok(Self { rows: self.rows, cols: self.cols, data })
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(JrspError::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(r, k)];
                if a == ZERO {
                    continue;
                }
                let src = other.row(k);
                let dst = &mut out.data[r * other.cols..(r + 1) * other.cols];
                for (d, s) in dst.iter_mut().zip(src) {
                    *d += a * s;
                }
            }
        }
        Ok(out)
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    /// Largest entry-wise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.same_shape(other)?;
        Ok(self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max))
    }

    /// Largest entry-wise modulus of `self - self^dag`.
    pub fn hermiticity_defect(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut worst: f64 = 0.0;
        for r in 0..self.rows {
            for c in r..self.cols {
                worst = worst.max((self[(r, c)] - self[(c, r)].conj()).norm());
            }
        }
        worst
    }

    /// Largest entry-wise modulus of `U U^dag - I`.
    pub fn unitarity_defect(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let prod = self.matmul(&self.adjoint()).expect("square");
        prod.max_abs_diff(&Self::identity(self.rows)).expect("same shape")
    }

    /// Euclidean norm of all entries (the vector norm for columns).
    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `|v><v|` for a column vector `v`.
    pub fn outer(v: &Self) -> Self {
        let n = v.rows * v.cols;
        let mut out = Self::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                out[(r, c)] = v.data[r] * v.data[c].conj();
            }
        }
        out
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(JrspError::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        &mut self.data[r * self.cols + c]
    }
}

/// Kronecker product `a (x) b`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    let rows = a.rows.saturating_mul(b.rows);
    let cols = a.cols.saturating_mul(b.cols);
    if rows > MAX_DIM || cols > MAX_DIM {
        return Err(JrspError::DimensionOverflow { rows, cols });
    }
    let mut out = ComplexMatrix::zeros(rows, cols);
    for ar in 0..a.rows {
        for ac in 0..a.cols {
            let s = a[(ar, ac)];
            if s == ZERO {
                continue;
            }
            for br in 0..b.rows {
                for bc in 0..b.cols {
                    out[(ar * b.rows + br, ac * b.cols + bc)] = s * b[(br, bc)];
                }
            }
        }
    }
    Ok(out)
}

/// Index of a qubit within a state's layout.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QubitAddress(pub usize);

impl QubitAddress {
    /// Physical labels of the six-qubit channel state in storage order.
    pub const SIX_QUBIT_LAYOUT: [u8; 6] = [1, 4, 2, 5, 3, 6];

    /// Address of a physical qubit label `1..=6` in the `(1,4,2,5,3,6)` layout.
    pub fn from_label(label: u8) -> Option<Self> {
        Self::SIX_QUBIT_LAYOUT.iter().position(|&l| l == label).map(QubitAddress)
    }

    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for QubitAddress {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q{}", self.0)
    }
}

/// Density operator over `num_qubits` qubits, possibly sub-normalized.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuantumState {
    num_qubits: usize,
    rho: ComplexMatrix,
}

impl QuantumState {
    /// Wraps a `2^n x 2^n` matrix. Physical validity is checked separately by
    /// [`validate_state`].
    pub fn new(rho: ComplexMatrix) -> Result<Self> {
        if !rho.is_square() || !rho.rows.is_power_of_two() {
            return Err(JrspError::DimensionMismatch(format!(
                "density matrix must be 2^n x 2^n, got {}x{}",
                rho.rows, rho.cols
            )));
        }
        if !rho.is_finite() {
            let pos = rho.data.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()).unwrap();
            return Err(JrspError::NonFinite { row: pos / rho.cols, col: pos % rho.cols });
        }
        let num_qubits = rho.rows.trailing_zeros() as usize;
        Ok(Self { num_qubits, rho })
    }

    /// `|psi><psi|` for a column vector of length `2^n`.
    pub fn from_pure(psi: &ComplexMatrix) -> Result<Self> {
        if psi.cols != 1 {
            return Err(JrspError::DimensionMismatch("pure state must be a column vector".into()));
        }
        Self::new(ComplexMatrix::outer(psi))
    }

    /// Computational basis state `|index><index|`.
    pub fn basis(num_qubits: usize, index: usize) -> Result<Self> {
        let dim = 1usize << num_qubits;
        if index >= dim {
            return Err(JrspError::DimensionMismatch(format!("basis index {index} >= {dim}")));
        }
        let mut rho = ComplexMatrix::zeros(dim, dim);
        rho[(index, index)] = ONE;
        Self::new(rho)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        self.rho.rows
    }

    pub fn rho(&self) -> &ComplexMatrix {
        &self.rho
    }

    pub fn into_rho(self) -> ComplexMatrix {
        self.rho
    }

    /// Real part of the trace.
    pub fn trace(&self) -> f64 {
        self.rho.trace().re
    }

    fn check_targets(&self, targets: &[QubitAddress]) -> Result<()> {
        for (i, t) in targets.iter().enumerate() {
            if t.0 >= self.num_qubits {
                return Err(JrspError::AddressOutOfRange {
                    index: t.0,
                    num_qubits: self.num_qubits,
                });
            }
            if targets[..i].contains(t) {
                return Err(JrspError::DuplicateAddress(t.0));
            }
        }
        Ok(())
    }
}

/// Index layout of an operator acting on `targets` inside an `n`-qubit space.
struct Embedding {
    /// Full indices with every target bit cleared, in ascending order of the
    /// remaining qubits' sub-index.
    bases: Vec<usize>,
    /// Offset added to a base for each sub-index of the target register.
    offsets: Vec<usize>,
}

impl Embedding {
    fn new(num_qubits: usize, targets: &[QubitAddress]) -> Self {
        let mask = |q: usize| 1usize << (num_qubits - 1 - q);
        let k = targets.len();
        let offsets = (0..1usize << k)
            .map(|t| {
                (0..k).filter(|b| t & (1 << (k - 1 - b)) != 0).map(|b| mask(targets[b].0)).sum()
            })
            .collect();
        let rest: Vec<usize> =
            (0..num_qubits).filter(|q| !targets.iter().any(|t| t.0 == *q)).collect();
        let m = rest.len();
        let bases = (0..1usize << m)
            .map(|r| (0..m).filter(|b| r & (1 << (m - 1 - b)) != 0).map(|b| mask(rest[b])).sum())
            .collect();
        Self { bases, offsets }
    }
}

/// `(op embedded on targets) * m`, without materializing the embedding.
fn left_apply(m: &ComplexMatrix, op: &ComplexMatrix, emb: &Embedding) -> ComplexMatrix {
    let k = emb.offsets.len();
    let mut out = ComplexMatrix::zeros(m.rows, m.cols);
    let mut gathered = vec![ZERO; k];
    for &base in &emb.bases {
        for c in 0..m.cols {
            for (t, off) in emb.offsets.iter().enumerate() {
                gathered[t] = m[(base + off, c)];
            }
            for (tp, offp) in emb.offsets.iter().enumerate() {
                let row = op.row(tp);
                out[(base + offp, c)] = row.iter().zip(&gathered).map(|(u, g)| u * g).sum();
            }
        }
    }
    out
}

/// `K rho K^dag` with `K` embedded on `emb`; uses `K rho K^dag = (K (K rho)^dag)^dag`.
fn conjugate_by(rho: &ComplexMatrix, op: &ComplexMatrix, emb: &Embedding) -> ComplexMatrix {
    let half = left_apply(rho, op, emb);
    left_apply(&half.adjoint(), op, emb).adjoint()
}

fn check_operator(op: &ComplexMatrix, k: usize) -> Result<()> {
    let side = 1usize << k;
    if op.rows != side || op.cols != side {
        return Err(JrspError::DimensionMismatch(format!(
            "operator is {}x{} but acts on {k} qubit(s)",
            op.rows, op.cols
        )));
    }
    Ok(())
}

/// `rho -> U rho U^dag` with `U` acting on `targets` (first target = most
/// significant bit of `U`'s index).
pub fn apply_unitary(
    state: &QuantumState,
    u: &ComplexMatrix,
    targets: &[QubitAddress],
) -> Result<QuantumState> {
    state.check_targets(targets)?;
    check_operator(u, targets.len())?;
    let defect = u.unitarity_defect();
    if defect >= STRUCTURAL_TOL {
        return Err(JrspError::NotUnitary { defect });
    }
    let emb = Embedding::new(state.num_qubits, targets);
    QuantumState::new(conjugate_by(&state.rho, u, &emb))
}

/// Applies an arbitrary operator `K` as `rho -> K rho K^dag` (no unitarity check).
pub fn apply_operator(
    state: &QuantumState,
    k: &ComplexMatrix,
    targets: &[QubitAddress],
) -> Result<QuantumState> {
    state.check_targets(targets)?;
    check_operator(k, targets.len())?;
    let emb = Embedding::new(state.num_qubits, targets);
    QuantumState::new(conjugate_by(&state.rho, k, &emb))
}

/// Pair-correlated Kraus map
/// `rho -> sum_{i,j} (E_i (x) E_i (x) E_j (x) E_j) rho (...)^dag`,
/// the same index `i` on both qubits of `pair_a` and `j` on both qubits of
/// `pair_b`. The result is not renormalized; for most channels this map is
/// trace-decreasing.
pub fn apply_correlated_kraus(
    state: &QuantumState,
    ch: &KrausChannel,
    pair_a: (QubitAddress, QubitAddress),
    pair_b: (QubitAddress, QubitAddress),
) -> Result<QuantumState> {
    apply_correlated_ops(state, ch.ops(), pair_a, pair_b)
}

/// [`apply_correlated_kraus`] over a raw operator list.
pub fn apply_correlated_ops(
    state: &QuantumState,
    ops: &[ComplexMatrix],
    pair_a: (QubitAddress, QubitAddress),
    pair_b: (QubitAddress, QubitAddress),
) -> Result<QuantumState> {
    let targets = [pair_a.0, pair_a.1, pair_b.0, pair_b.1];
    state.check_targets(&targets)?;
    if ops.is_empty() {
        return Err(JrspError::MalformedKraus("empty operator set".into()));
    }
    let mut doubled = Vec::with_capacity(ops.len());
    for (n, e) in ops.iter().enumerate() {
        if e.rows != 2 || e.cols != 2 {
            return Err(JrspError::MalformedKraus(format!(
                "operator {n} is {}x{}, expected 2x2",
                e.rows, e.cols
            )));
        }
        doubled.push(kron(e, e)?);
    }
    // The (i, j) double sum factorizes into one sum per pair.
    let sum_over = |rho: &ComplexMatrix, pair: (QubitAddress, QubitAddress)| {
        let emb = Embedding::new(state.num_qubits, &[pair.0, pair.1]);
        let mut acc = ComplexMatrix::zeros(rho.rows, rho.cols);
        for ee in &doubled {
            acc.add_assign(&conjugate_by(rho, ee, &emb));
        }
        acc
    };
    let after_b = sum_over(&state.rho, pair_b);
    QuantumState::new(sum_over(&after_b, pair_a))
}

/// Projects `targets` onto the basis ket `|v>` and returns the unnormalized
/// operator `<v| rho |v>` on the remaining qubits with its trace as weight.
pub fn project(
    state: &QuantumState,
    ket: &ComplexMatrix,
    targets: &[QubitAddress],
) -> Result<(f64, QuantumState)> {
    state.check_targets(targets)?;
    let k = targets.len();
    if ket.cols != 1 || ket.rows != 1 << k {
        return Err(JrspError::DimensionMismatch(format!(
            "projection vector must be a {}-entry column",
            1 << k
        )));
    }
    let norm = ket.frobenius_norm();
    if (norm - 1.0).abs() >= STRUCTURAL_TOL {
        return Err(JrspError::NotNormalized { norm });
    }
    let emb = Embedding::new(state.num_qubits, targets);
    let v = ket.as_slice();
    let m = emb.bases.len();
    let mut reduced = ComplexMatrix::zeros(m, m);
    for (r, &br) in emb.bases.iter().enumerate() {
        for (c, &bc) in emb.bases.iter().enumerate() {
            let mut acc = ZERO;
            for (s, os) in emb.offsets.iter().enumerate() {
                let vs = v[s].conj();
                if vs == ZERO {
                    continue;
                }
                for (t, ot) in emb.offsets.iter().enumerate() {
                    acc += vs * state.rho[(br + os, bc + ot)] * v[t];
                }
            }
            reduced[(r, c)] = acc;
        }
    }
    let reduced = QuantumState::new(reduced)?;
    Ok((reduced.trace(), reduced))
}

/// Two-qubit special case of [`project`].
pub fn project_two_qubit(
    state: &QuantumState,
    ket: &ComplexMatrix,
    targets: (QubitAddress, QubitAddress),
) -> Result<(f64, QuantumState)> {
    project(state, ket, &[targets.0, targets.1])
}

/// Traces out every qubit not listed in `keep` (kept qubits stay in their
/// original relative order).
pub fn partial_trace(state: &QuantumState, keep: &[QubitAddress]) -> Result<QuantumState> {
    state.check_targets(keep)?;
    let mut sorted = keep.to_vec();
    sorted.sort();
    let traced: Vec<QubitAddress> =
        (0..state.num_qubits).map(QubitAddress).filter(|q| !sorted.contains(q)).collect();
    // Embedding over the traced register: bases enumerate the kept qubits.
    let emb = Embedding::new(state.num_qubits, &traced);
    let m = emb.bases.len();
    let mut out = ComplexMatrix::zeros(m, m);
    for (r, &br) in emb.bases.iter().enumerate() {
        for (c, &bc) in emb.bases.iter().enumerate() {
            out[(r, c)] = emb.offsets.iter().map(|o| state.rho[(br + o, bc + o)]).sum();
        }
    }
    QuantumState::new(out)
}

/// `<psi| rho |psi>` for a unit column vector `psi`.
pub fn pure_overlap(state: &QuantumState, psi: &ComplexMatrix) -> Result<f64> {
    if psi.cols != 1 || psi.rows != state.dim() {
        return Err(JrspError::DimensionMismatch(format!(
            "vector of length {} against a {}-dimensional state",
            psi.rows * psi.cols,
            state.dim()
        )));
    }
    let norm = psi.frobenius_norm();
    if (norm - 1.0).abs() >= STRUCTURAL_TOL {
        return Err(JrspError::NotNormalized { norm });
    }
    let v = psi.as_slice();
    let mut acc = ZERO;
    for r in 0..state.dim() {
        let row = state.rho.row(r);
        let inner: Complex64 = row.iter().zip(v).map(|(a, b)| a * b).sum();
        acc += v[r].conj() * inner;
    }
    Ok(acc.re)
}

/// A broken `QuantumState` invariant.
#[derive(Debug, Clone, PartialEq)]
pub enum StateViolation {
    NonFinite,
    NotHermitian { defect: f64 },
    NotPositive { min_eigenvalue: f64 },
    TraceOutOfRange { trace: f64 },
    NotNormalized { trace: f64 },
}

impl fmt::Display for StateViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NonFinite => write!(f, "non-finite entry"),
            Self::NotHermitian { defect } => write!(f, "not Hermitian (defect {defect:e})"),
            Self::NotPositive { min_eigenvalue } => {
                write!(f, "not positive semidefinite (min eigenvalue {min_eigenvalue:e})")
            }
            Self::TraceOutOfRange { trace } => write!(f, "trace out of range ({trace})"),
            Self::NotNormalized { trace } => write!(f, "trace is not 1 ({trace})"),
        }
    }
}

/// Smallest eigenvalue of the Hermitian part of `m`.
pub fn min_hermitian_eigenvalue(m: &ComplexMatrix) -> f64 {
    let n = m.rows;
    if n == 0 {
        return 0.0;
    }
    let herm = DMatrix::from_fn(n, n, |r, c| (m[(r, c)] + m[(c, r)].conj()) * 0.5);
    herm.symmetric_eigenvalues().iter().copied().fold(f64::INFINITY, f64::min)
}

/// Lists every violated invariant; empty means the state is physical.
pub fn validate_state(state: &QuantumState, allow_subnormalized: bool) -> Vec<StateViolation> {
    let mut out = Vec::new();
    if !state.rho.is_finite() {
        out.push(StateViolation::NonFinite);
        return out;
    }
    let defect = state.rho.hermiticity_defect();
    if defect >= STRUCTURAL_TOL {
        out.push(StateViolation::NotHermitian { defect });
    }
    let min_eig = min_hermitian_eigenvalue(&state.rho);
    if min_eig <= -PSD_TOL {
        out.push(StateViolation::NotPositive { min_eigenvalue: min_eig });
    }
    let trace = state.trace();
    if !(trace > 0.0 && trace <= 1.0 + STRUCTURAL_TOL) {
        out.push(StateViolation::TraceOutOfRange { trace });
    } else if !allow_subnormalized && (trace - 1.0).abs() >= STRUCTURAL_TOL {
        out.push(StateViolation::NotNormalized { trace });
    }
    out
}
