//! Combinatorics and collective-operator algebra of the N-qubit symmetric
//! subspace.
//!
//! Basis states are indexed by the excitation number `k = j - m`, the number
//! of qubits in `|1>` (with `|0>` the `J_z = +1/2` state). All logarithms are
//! base 2 unless a name says otherwise.

use std::f64::consts::LN_2;

use serde::{Deserialize, Serialize};

use crate::error::{Result, SpinError};

/// Tolerance on `sum |c_k|^2 - 1` accepted when validating states.
pub const NORM_TOLERANCE: f64 = 1e-9;

/// Dicke state `|N, k>`, equivalently `|j, m>` with `j = N/2`, `m = j - k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DickeIndex {
    n_qubits: usize,
    excitations: usize,
}

impl DickeIndex {
    pub fn new(n_qubits: usize, excitations: usize) -> Result<Self> {
        if n_qubits == 0 {
            return Err(SpinError::InvalidSize("N must be positive".into()));
        }
        if excitations > n_qubits {
            return Err(SpinError::Domain(format!(
                "excitation number {excitations} exceeds N = {n_qubits}"
            )));
        }
        Ok(Self {
            n_qubits,
            excitations,
        })
    }

    /// Builds the index from the magnetization `m` (requires `N/2 - m` integral).
    pub fn from_magnetization(n_qubits: usize, m: i64) -> Result<Self> {
        if n_qubits % 2 != 0 {
            return Err(SpinError::InvalidSize(format!(
                "integer magnetization needs even N, got {n_qubits}"
            )));
        }
        let k = n_qubits as i64 / 2 - m;
        if k < 0 || k > n_qubits as i64 {
            return Err(SpinError::Domain(format!(
                "|m| = {} exceeds j = {}",
                m.abs(),
                n_qubits / 2
            )));
        }
        Self::new(n_qubits, k as usize)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn excitations(&self) -> usize {
        self.excitations
    }

    /// Total spin `j = N/2`.
    pub fn j(&self) -> f64 {
        self.n_qubits as f64 / 2.0
    }

    /// `m = N/2 - k`.
    pub fn magnetization(&self) -> f64 {
        excitation_to_m(self.n_qubits, self.excitations)
    }
}

/// `m = N/2 - k`. The single place where the k/m conversion lives.
#[inline]
pub fn excitation_to_m(n_qubits: usize, k: usize) -> f64 {
    n_qubits as f64 / 2.0 - k as f64
}

/// Sector of `R_z^pi = exp(-i pi J_z)`: eigenvalue `(-1)^m` for integer `j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Positive,
    Negative,
}

impl Parity {
    /// Parity of basis state `k` (requires even `N`).
    pub fn of_excitation(n_qubits: usize, k: usize) -> Parity {
        debug_assert!(n_qubits % 2 == 0);
        // m = N/2 - k is even iff k and N/2 share parity
        if (n_qubits / 2 + k) % 2 == 0 {
            Parity::Positive
        } else {
            Parity::Negative
        }
    }

    pub fn contains(self, n_qubits: usize, k: usize) -> bool {
        Parity::of_excitation(n_qubits, k) == self
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Parity::Positive => "positive",
            Parity::Negative => "negative",
        }
    }
}

/// Real pure state of the symmetric subspace, amplitudes indexed by `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricState {
    n_qubits: usize,
    amplitudes: Vec<f64>,
    parity: Option<Parity>,
}

impl SymmetricState {
    /// Validates length `N + 1` and normalization.
    pub fn new(amplitudes: Vec<f64>) -> Result<Self> {
        if amplitudes.len() < 2 {
            return Err(SpinError::InvalidSize(
                "a symmetric state needs at least N + 1 = 2 amplitudes".into(),
            ));
        }
        let norm_sq: f64 = amplitudes.iter().map(|c| c * c).sum();
        if !norm_sq.is_finite() || (norm_sq - 1.0).abs() > NORM_TOLERANCE {
            return Err(SpinError::Normalization { norm_sq });
        }
        Ok(Self {
            n_qubits: amplitudes.len() - 1,
            amplitudes,
            parity: None,
        })
    }

    /// Rescales arbitrary nonzero amplitudes to unit norm.
    pub fn normalized(mut amplitudes: Vec<f64>) -> Result<Self> {
        let norm = amplitudes.iter().map(|c| c * c).sum::<f64>().sqrt();
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(SpinError::Normalization {
                norm_sq: norm * norm,
            });
        }
        amplitudes.iter_mut().for_each(|c| *c /= norm);
        Self::new(amplitudes)
    }

    pub fn dicke(index: DickeIndex) -> Self {
        let mut amplitudes = vec![0.0; index.n_qubits + 1];
        amplitudes[index.excitations] = 1.0;
        let parity = (index.n_qubits % 2 == 0)
            .then(|| Parity::of_excitation(index.n_qubits, index.excitations));
        Self {
            n_qubits: index.n_qubits,
            amplitudes,
            parity,
        }
    }

    /// `(|j,m> + sign |j,-m>)/sqrt(2)` for `m > 0`; `|j,0>` for `m = 0`.
    pub fn conjugate_superposition(n_qubits: usize, m: i64, sign: f64) -> Result<Self> {
        let plus = DickeIndex::from_magnetization(n_qubits, m)?;
        if m == 0 {
            return Ok(Self::dicke(plus));
        }
        let minus = DickeIndex::from_magnetization(n_qubits, -m)?;
        let mut amplitudes = vec![0.0; n_qubits + 1];
        amplitudes[plus.excitations] = std::f64::consts::FRAC_1_SQRT_2;
        amplitudes[minus.excitations] = sign.signum() * std::f64::consts::FRAC_1_SQRT_2;
        // m and -m share parity for integer j
        let state = Self::new(amplitudes)?;
        let parity = Parity::of_excitation(n_qubits, plus.excitations);
        state.with_parity(parity)
    }

    /// Attaches a parity tag after checking the amplitudes respect it.
    pub fn with_parity(mut self, parity: Parity) -> Result<Self> {
        if self.n_qubits % 2 != 0 {
            return Err(SpinError::InvalidSize(
                "parity sectors are defined for even N only".into(),
            ));
        }
        if let Some(k) = self
            .amplitudes
            .iter()
            .enumerate()
            .find(|&(k, c)| *c != 0.0 && !parity.contains(self.n_qubits, k))
            .map(|(k, _)| k)
        {
            return Err(SpinError::ParityMismatch(format!(
                "amplitude at k = {k} lies outside the {} sector",
                parity.as_str()
            )));
        }
        self.parity = Some(parity);
        Ok(self)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[f64] {
        &self.amplitudes
    }

    pub fn parity(&self) -> Option<Parity> {
        self.parity
    }

    pub fn norm_sq(&self) -> f64 {
        self.amplitudes.iter().map(|c| c * c).sum()
    }
}

/// `N_A : N_B` split of the qubits with `N_A <= N_B`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Bipartition {
    n_a: usize,
    n_b: usize,
}

impl Bipartition {
    pub fn new(n_a: usize, n_b: usize) -> Result<Self> {
        if n_a == 0 || n_b == 0 {
            return Err(SpinError::InvalidSize(
                "both parts of a bipartition must be nonempty".into(),
            ));
        }
        if n_a > n_b {
            return Err(SpinError::Domain(format!(
                "subsystem A must be the smaller part (N_A = {n_a} > N_B = {n_b})"
            )));
        }
        Ok(Self { n_a, n_b })
    }

    /// Half cut of an even `N`.
    pub fn half(n_qubits: usize) -> Result<Self> {
        if n_qubits % 2 != 0 {
            return Err(SpinError::InvalidSize(format!(
                "half cut needs even N, got {n_qubits}"
            )));
        }
        Self::new(n_qubits / 2, n_qubits / 2)
    }

    /// `N_A = p N`; `p N` must be an integer and `0 < p <= 1/2`.
    pub fn from_fraction(n_qubits: usize, p: f64) -> Result<Self> {
        if !(p > 0.0 && p <= 0.5) {
            return Err(SpinError::Domain(format!("fraction p = {p} not in (0, 1/2]")));
        }
        let n_a = p * n_qubits as f64;
        let rounded = n_a.round();
        if (n_a - rounded).abs() > 1e-9 * n_a.max(1.0) {
            return Err(SpinError::NonIntegerSubsystem { n: n_qubits, p });
        }
        let n_a = rounded as usize;
        Self::new(n_a, n_qubits - n_a)
    }

    pub fn n_a(&self) -> usize {
        self.n_a
    }

    pub fn n_b(&self) -> usize {
        self.n_b
    }

    pub fn n_qubits(&self) -> usize {
        self.n_a + self.n_b
    }

    pub fn fraction(&self) -> f64 {
        self.n_a as f64 / self.n_qubits() as f64
    }

    pub(crate) fn check_against(&self, n_qubits: usize) -> Result<()> {
        if self.n_qubits() != n_qubits {
            return Err(SpinError::DimensionMismatch {
                expected: n_qubits,
                found: self.n_qubits(),
            });
        }
        Ok(())
    }
}

/// Table of `ln(n!)` for `n <= max_n`.
#[derive(Debug, Clone)]
pub struct LogFactorials {
    ln_fact: Vec<f64>,
}

impl LogFactorials {
    pub fn new(max_n: usize) -> Self {
        Self {
            ln_fact: (0..=max_n as u64).map(ln_factorial).collect(),
        }
    }

    pub fn max_n(&self) -> usize {
        self.ln_fact.len() - 1
    }

    #[inline]
    pub fn ln_factorial(&self, n: usize) -> f64 {
        self.ln_fact[n]
    }

    /// Natural log of `C(n, k)`; caller guarantees `k <= n <= max_n`.
    #[inline]
    pub fn ln_binomial(&self, n: usize, k: usize) -> f64 {
        self.ln_fact[n] - self.ln_fact[k] - self.ln_fact[n - k]
    }

    /// Natural log of the hypergeometric weight
    /// `C(N_A, q) C(N_B, K - q) / C(N_A + N_B, K)`.
    #[inline]
    pub fn ln_hypergeometric(&self, n_a: usize, n_b: usize, total_k: usize, q: usize) -> f64 {
        self.ln_binomial(n_a, q) + self.ln_binomial(n_b, total_k - q)
            - self.ln_binomial(n_a + n_b, total_k)
    }
}

/// `ln(n!) = ln Gamma(n + 1)`.
///
/// Exact products below 32 (correctly rounded logarithm of a value with at
/// most a few ulps of error), Stirling series through `n^-7` above, where the
/// truncation error is below `1e-17`.
pub fn ln_factorial(n: u64) -> f64 {
    if n < 32 {
        let product: f64 = (2..=n).map(|i| i as f64).product();
        return product.ln();
    }
    let x = n as f64;
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let series = inv
        * (1.0 / 12.0
            - inv2 * (1.0 / 360.0 - inv2 * (1.0 / 1260.0 - inv2 * (1.0 / 1680.0))));
    (x + 0.5) * x.ln() - x + 0.5 * (2.0 * std::f64::consts::PI).ln() + series
}

/// `log2 C(n, k)` via log-gamma; `-inf` when `k < 0` or `k > n`.
pub fn log_binomial(n: u64, k: i64) -> f64 {
    if k < 0 || k as u64 > n {
        return f64::NEG_INFINITY;
    }
    let k = k as u64;
    if k == 0 || k == n {
        return 0.0;
    }
    let ln = ln_factorial(n) - ln_factorial(k) - ln_factorial(n - k);
    ln / LN_2
}

/// Support `q_min..=q_max` of the hypergeometric Schmidt distribution.
#[inline]
pub(crate) fn schmidt_support(cut: &Bipartition, total_k: usize) -> (usize, usize) {
    (total_k.saturating_sub(cut.n_b()), total_k.min(cut.n_a()))
}

/// Hypergeometric Schmidt coefficients of a Dicke state across `cut`, over
/// the support `max(0, k - N_B) <= q <= min(k, N_A)`.
pub fn dicke_schmidt_coefficients(
    state: DickeIndex,
    cut: Bipartition,
) -> Result<crate::entangle::SchmidtSpectrum> {
    cut.check_against(state.n_qubits())?;
    let table = LogFactorials::new(state.n_qubits());
    let (lo, hi) = schmidt_support(&cut, state.excitations());
    let coefficients = (lo..=hi)
        .map(|q| {
            table
                .ln_hypergeometric(cut.n_a(), cut.n_b(), state.excitations(), q)
                .exp()
        })
        .collect();
    crate::entangle::SchmidtSpectrum::new(coefficients)
}

/// `<J_z>`, `<J_z^2>`, `<J_+>` and `<{J_+, J_z}>` for a real symmetric state.
///
/// Amplitudes are real, so the ladder expectations are real as well.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CollectiveExpectations {
    pub jz: f64,
    pub jz2: f64,
    pub jplus: f64,
    pub anticomm: f64,
}

/// `sqrt(j(j+1) - m(m+1))`, the `J_+` matrix element out of `|j,m>`.
#[inline]
pub fn raising_element(j: f64, m: f64) -> f64 {
    (j * (j + 1.0) - m * (m + 1.0)).max(0.0).sqrt()
}

pub fn collective_expectations(state: &SymmetricState) -> Result<CollectiveExpectations> {
    let norm_sq = state.norm_sq();
    if (norm_sq - 1.0).abs() > NORM_TOLERANCE {
        return Err(SpinError::Normalization { norm_sq });
    }
    let n = state.n_qubits();
    let j = n as f64 / 2.0;
    let c = state.amplitudes();

    let mut jz = 0.0;
    let mut jz2 = 0.0;
    for (k, &ck) in c.iter().enumerate() {
        let m = excitation_to_m(n, k);
        let w = ck * ck;
        jz += w * m;
        jz2 += w * m * m;
    }

    // J_+ |m> = sqrt(...) |m+1>, and m + 1 sits at k - 1
    let mut jplus = 0.0;
    let mut anticomm = 0.0;
    for k in 1..=n {
        let m = excitation_to_m(n, k);
        let ladder = c[k - 1] * c[k] * raising_element(j, m);
        jplus += ladder;
        anticomm += (2.0 * m + 1.0) * ladder;
    }

    Ok(CollectiveExpectations {
        jz,
        jz2,
        jplus,
        anticomm,
    })
}
