//! Reduced density matrices of symmetric states and their von Neumann
//! entropies, plus the closed forms available for Dicke states.
//!
//! A symmetric state `sum_K c_K |N,K>` decomposes across an `N_A : N_B` cut as
//! `sum_{q,r} c_{q+r} A(q, q+r) |N_A,q>|N_B,r>` with
//! `A(q,K) = sqrt(C(N_A,q) C(N_B,K-q) / C(N,K))`, so the reduced state of `A`
//! lives on the `N_A + 1` Dicke states of the subsystem.

use std::f64::consts::{E, LN_2, PI};

use crate::eigensolve::{eig_dense_symmetric, Matrix};
use crate::error::{Result, SpinError};
use crate::symspace::{
    collective_expectations, dicke_schmidt_coefficients, schmidt_support, Bipartition,
    CollectiveExpectations, DickeIndex, LogFactorials, SymmetricState,
};

/// Eigenvalues in `[-NEGATIVE_CLAMP, 0)` are roundoff and set to zero.
pub const NEGATIVE_CLAMP: f64 = 1e-9;
/// Hypergeometric weights this many bits below their row maximum are dropped
/// when assembling reduced density matrices.
pub const PRUNE_BITS: f64 = 60.0;
/// Schmidt weights below this are left out of the Dicke entropy sum; the
/// dropped tail contributes less than `N * 1e-23` bits.
const DICKE_TAIL_CUTOFF: f64 = 1e-25;

/// Entropy in bits.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct EntropyValue(pub f64);

impl EntropyValue {
    pub fn bits(self) -> f64 {
        self.0
    }
}

/// Schmidt coefficients (eigenvalues of a reduced state).
#[derive(Debug, Clone, PartialEq)]
pub struct SchmidtSpectrum {
    coefficients: Vec<f64>,
}

impl SchmidtSpectrum {
    pub fn new(mut coefficients: Vec<f64>) -> Result<Self> {
        for c in coefficients.iter_mut() {
            if !c.is_finite() || *c < -1e-12 {
                return Err(SpinError::InvalidDensity(format!(
                    "Schmidt coefficient {c} is negative"
                )));
            }
            if *c < 0.0 {
                *c = 0.0;
            }
        }
        let total: f64 = coefficients.iter().sum();
        if (total - 1.0).abs() > 1e-10 {
            return Err(SpinError::InvalidDensity(format!(
                "Schmidt coefficients sum to {total}"
            )));
        }
        Ok(Self { coefficients })
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }
}

/// Reduced state of subsystem `A` in its Dicke basis `q = 0..=N_A`.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedDensityMatrix {
    matrix: Matrix,
}

impl ReducedDensityMatrix {
    pub fn new(matrix: Matrix) -> Result<Self> {
        let trace = matrix.trace();
        if (trace - 1.0).abs() > 1e-8 {
            return Err(SpinError::InvalidDensity(format!("trace is {trace}")));
        }
        let asym = matrix.max_asymmetry();
        if asym > 1e-10 {
            return Err(SpinError::Asymmetric {
                max_deviation: asym,
            });
        }
        Ok(Self { matrix })
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn get(&self, q: usize, q2: usize) -> f64 {
        self.matrix.get(q, q2)
    }

    /// Eigenvalues with roundoff negatives clamped to zero.
    ///
    /// Index sets that the matrix never couples are diagonalized separately;
    /// a parity-definite state, for instance, splits into even and odd `q`.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        let mut values = Vec::with_capacity(self.dim());
        for block in coupled_blocks(&self.matrix) {
            if block.len() == 1 {
                values.push(self.matrix.get(block[0], block[0]));
                continue;
            }
            let sub = Matrix::from_fn(block.len(), |a, b| self.matrix.get(block[a], block[b]));
            values.extend(eig_dense_symmetric(&sub, false)?.values);
        }
        clamp_density_eigenvalues(&mut values)?;
        values.sort_by(f64::total_cmp);
        Ok(values)
    }
}

/// Anything with a probability spectrum.
pub trait DensitySpectrum {
    fn probabilities(&self) -> Result<Vec<f64>>;
}

impl DensitySpectrum for SchmidtSpectrum {
    fn probabilities(&self) -> Result<Vec<f64>> {
        Ok(self.coefficients.clone())
    }
}

impl DensitySpectrum for ReducedDensityMatrix {
    fn probabilities(&self) -> Result<Vec<f64>> {
        self.eigenvalues()
    }
}

/// `-sum p log2 p` with `0 log 0 = 0`.
pub fn von_neumann_entropy<D: DensitySpectrum + ?Sized>(state: &D) -> Result<EntropyValue> {
    Ok(EntropyValue(shannon_bits(&state.probabilities()?)))
}

pub(crate) fn shannon_bits(probabilities: &[f64]) -> f64 {
    let nats: f64 = probabilities
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| -p * p.ln())
        .sum();
    (nats / LN_2).max(0.0)
}

fn clamp_density_eigenvalues(values: &mut [f64]) -> Result<()> {
    for v in values.iter_mut() {
        if *v < -NEGATIVE_CLAMP {
            return Err(SpinError::InvalidDensity(format!(
                "eigenvalue {v} below -{NEGATIVE_CLAMP}"
            )));
        }
        if *v < 0.0 {
            *v = 0.0;
        }
    }
    let total: f64 = values.iter().sum();
    if (total - 1.0).abs() > 1e-8 {
        return Err(SpinError::InvalidDensity(format!("trace is {total}")));
    }
    Ok(())
}

/// Connected components of the graph whose edges are nonzero entries.
fn coupled_blocks(m: &Matrix) -> Vec<Vec<usize>> {
    let n = m.dim();
    let mut parent: Vec<usize> = (0..n).collect();
    fn root(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for i in 0..n {
        for (j, &v) in m.row(i)[..i].iter().enumerate() {
            if v != 0.0 {
                let (a, b) = (root(&mut parent, i), root(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for i in 0..n {
        let r = root(&mut parent, i);
        if slot[r] == usize::MAX {
            slot[r] = blocks.len();
            blocks.push(Vec::new());
        }
        blocks[slot[r]].push(i);
    }
    blocks
}

/// Reduced density matrix of `A` for a symmetric state.
///
/// Cost is `O(N_A^2 N_B)` in the worst case; weights `PRUNE_BITS` below the
/// maximum of their hypergeometric row are skipped, which narrows every
/// column of the amplitude matrix to `O(sqrt N)` entries at large `N`.
pub fn rdm_symmetric_bipartition(
    state: &SymmetricState,
    cut: Bipartition,
) -> Result<ReducedDensityMatrix> {
    let table = LogFactorials::new(state.n_qubits());
    rdm_symmetric_bipartition_in(&table, state, cut)
}

/// As [`rdm_symmetric_bipartition`] with a caller-provided factorial table.
pub fn rdm_symmetric_bipartition_in(
    table: &LogFactorials,
    state: &SymmetricState,
    cut: Bipartition,
) -> Result<ReducedDensityMatrix> {
    let n = state.n_qubits();
    cut.check_against(n)?;
    if table.max_n() < n {
        return Err(SpinError::DimensionMismatch {
            expected: n,
            found: table.max_n(),
        });
    }
    let norm_sq = state.norm_sq();
    if (norm_sq - 1.0).abs() > crate::symspace::NORM_TOLERANCE {
        return Err(SpinError::Normalization { norm_sq });
    }

    let (na, nb) = (cut.n_a(), cut.n_b());
    let dim_a = na + 1;
    // columns[r][q] = c_{q+r} A(q, q+r)
    let mut columns = vec![0.0; (nb + 1) * dim_a];
    let mut col_range = vec![(usize::MAX, 0usize); nb + 1];
    let prune = PRUNE_BITS * LN_2;

    for (total_k, &c) in state.amplitudes().iter().enumerate() {
        if c == 0.0 {
            continue;
        }
        // weights are unimodal in q, so the kept set is a window around the mode
        let (lo, hi) = schmidt_support(&cut, total_k);
        let mode = hypergeometric_mode(na, nb, total_k);
        let threshold = table.ln_hypergeometric(na, nb, total_k, mode) - prune;
        let mut store = |q: usize| -> bool {
            let lw = table.ln_hypergeometric(na, nb, total_k, q);
            if lw < threshold {
                return false;
            }
            let r = total_k - q;
            columns[r * dim_a + q] = c * (0.5 * lw).exp();
            let range = &mut col_range[r];
            range.0 = range.0.min(q);
            range.1 = range.1.max(q);
            true
        };
        for q in mode..=hi {
            if !store(q) {
                break;
            }
        }
        for q in (lo..mode).rev() {
            if !store(q) {
                break;
            }
        }
    }

    let mut rho = Matrix::zeros(dim_a);
    for r in 0..=nb {
        let (lo, hi) = col_range[r];
        if lo > hi {
            continue;
        }
        let col = &columns[r * dim_a..(r + 1) * dim_a];
        for q in lo..=hi {
            let a = col[q];
            if a == 0.0 {
                continue;
            }
            let row = &mut rho.row_mut(q)[lo..=q];
            for (dst, &b) in row.iter_mut().zip(&col[lo..=q]) {
                *dst += a * b;
            }
        }
    }
    for q in 0..dim_a {
        for q2 in 0..q {
            let v = rho.get(q, q2);
            rho.set(q2, q, v);
        }
    }
    ReducedDensityMatrix::new(rho)
}

/// Most likely `q` of `C(N_A,q) C(N_B,K-q) / C(N,K)`.
fn hypergeometric_mode(na: usize, nb: usize, total_k: usize) -> usize {
    let mode = (total_k + 1) * (na + 1) / (na + nb + 2);
    mode.clamp(total_k.saturating_sub(nb), total_k.min(na))
}

/// Entropy of a Dicke state across `cut` by summing its Schmidt weights.
pub fn dicke_ee_exact(state: DickeIndex, cut: Bipartition) -> Result<EntropyValue> {
    let table = LogFactorials::new(state.n_qubits());
    dicke_ee_exact_in(&table, state, cut)
}

/// As [`dicke_ee_exact`] with a caller-provided factorial table.
///
/// Sums outward from the mode of the (unimodal) hypergeometric weights and
/// stops once weights fall below `1e-25`.
pub fn dicke_ee_exact_in(
    table: &LogFactorials,
    state: DickeIndex,
    cut: Bipartition,
) -> Result<EntropyValue> {
    let n = state.n_qubits();
    cut.check_against(n)?;
    if table.max_n() < n {
        return Err(SpinError::DimensionMismatch {
            expected: n,
            found: table.max_n(),
        });
    }
    let (na, nb, k) = (cut.n_a(), cut.n_b(), state.excitations());
    let (lo, hi) = schmidt_support(&cut, k);
    let mode = hypergeometric_mode(na, nb, k);
    let term = |q: usize| {
        let lw = table.ln_hypergeometric(na, nb, k, q);
        let w = lw.exp();
        (w, -w * lw)
    };

    let mut nats = 0.0;
    for q in mode..=hi {
        let (w, t) = term(q);
        nats += t;
        if w < DICKE_TAIL_CUTOFF && q > mode {
            break;
        }
    }
    for q in (lo..mode).rev() {
        let (w, t) = term(q);
        nats += t;
        if w < DICKE_TAIL_CUTOFF {
            break;
        }
    }
    Ok(EntropyValue((nats / LN_2).max(0.0)))
}

/// Entropy by summing every Schmidt coefficient, without any cutoff.
pub fn dicke_ee_full_sum(state: DickeIndex, cut: Bipartition) -> Result<EntropyValue> {
    von_neumann_entropy(&dicke_schmidt_coefficients(state, cut)?)
}

/// Large-`N` expansion of the hypergeometric entropy, including the `1/N`
/// correction.
pub fn dicke_ee_approx(state: DickeIndex, cut: Bipartition) -> Result<EntropyValue> {
    let n_qubits = state.n_qubits();
    cut.check_against(n_qubits)?;
    let n = n_qubits as f64;
    let p1 = state.excitations() as f64 / n;
    let p2 = cut.n_a() as f64 / n;
    if !(p1 > 0.0 && p1 < 1.0) {
        return Err(SpinError::Domain(format!(
            "excitation fraction {p1} must lie strictly inside (0, 1)"
        )));
    }
    let s1 = p1 * (1.0 - p1);
    let s2 = p2 * (1.0 - p2);
    let leading = 0.5 * (2.0 * PI * E * n * s1 * s2).log2();
    let correction =
        E.log2() / (12.0 * n) * (-10.0 + 4.0 / s1 + 4.0 / s2 - 1.0 / (s1 * s2));
    Ok(EntropyValue(leading + correction))
}

/// Relative sign in `(|j,m> +- |j,-m>)/sqrt(2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuperpositionSign {
    Plus,
    Minus,
}

impl SuperpositionSign {
    pub fn as_f64(self) -> f64 {
        match self {
            SuperpositionSign::Plus => 1.0,
            SuperpositionSign::Minus => -1.0,
        }
    }
}

/// Half-cut entropy of `(|j,m> +- |j,-m>)/sqrt(2)` for `|m| > j/2`, where the
/// two branches have disjoint Schmidt supports and add exactly one bit.
pub fn superposition_ee_halfcut(
    state: DickeIndex,
    cut: Bipartition,
    _sign: SuperpositionSign,
) -> Result<EntropyValue> {
    cut.check_against(state.n_qubits())?;
    if cut.n_a() != cut.n_b() {
        return Err(SpinError::Domain(format!(
            "closed form holds only at p = 1/2, got N_A = {}",
            cut.n_a()
        )));
    }
    let m = state.magnetization();
    if m.abs() <= state.j() / 2.0 {
        return Err(SpinError::Domain(format!(
            "|m| = {} must exceed j/2 = {}",
            m.abs(),
            state.j() / 2.0
        )));
    }
    Ok(EntropyValue(dicke_ee_exact(state, cut)?.bits() + 1.0))
}

/// Binary entropy of `k/N`: the one-qubit entanglement of `|N,k>`.
pub fn one_qubit_entropy_closed_form(state: DickeIndex) -> EntropyValue {
    let x = state.excitations() as f64 / state.n_qubits() as f64;
    EntropyValue(shannon_bits(&[x, 1.0 - x]))
}

/// One-qubit reduced state built from collective expectation values.
#[derive(Debug, Clone, PartialEq)]
pub struct OneQubitRdm {
    pub rdm: ReducedDensityMatrix,
    pub lambda_plus: f64,
    pub lambda_minus: f64,
    pub expectations: CollectiveExpectations,
}

impl OneQubitRdm {
    pub fn entropy(&self) -> EntropyValue {
        EntropyValue(shannon_bits(&[
            self.lambda_plus.max(0.0),
            self.lambda_minus.max(0.0),
        ]))
    }
}

pub fn one_qubit_rdm(state: &SymmetricState) -> Result<OneQubitRdm> {
    let n_qubits = state.n_qubits();
    if n_qubits < 2 {
        return Err(SpinError::InvalidSize(
            "one-qubit reduction needs N >= 2".into(),
        ));
    }
    let ex = collective_expectations(state)?;
    let n = n_qubits as f64;
    let denom = 4.0 * n * (n - 1.0);
    let v_plus = (n * n - 2.0 * n + 4.0 * ex.jz2 + 4.0 * ex.jz * (n - 1.0)) / denom;
    let v_minus = (n * n - 2.0 * n + 4.0 * ex.jz2 - 4.0 * ex.jz * (n - 1.0)) / denom;
    let x_plus = ((n - 1.0) * ex.jplus + ex.anticomm) / (2.0 * n * (n - 1.0));
    let x_minus = ((n - 1.0) * ex.jplus - ex.anticomm) / (2.0 * n * (n - 1.0));
    let w = (n * n - 4.0 * ex.jz2) / denom;

    let off = x_plus + x_minus;
    let matrix = Matrix::from_row_major(vec![v_plus + w, off, off, v_minus + w])?;
    let radius = (ex.jz * ex.jz + ex.jplus * ex.jplus).sqrt() / n;
    Ok(OneQubitRdm {
        rdm: ReducedDensityMatrix::new(matrix)?,
        lambda_plus: 0.5 + radius,
        lambda_minus: 0.5 - radius,
        expectations: ex,
    })
}
