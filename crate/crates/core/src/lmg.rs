//! LMG Hamiltonian `-(g_x J_x^2 + g_y J_y^2)/N - h J_z` on the symmetric
//! subspace, split into the two `R_z^pi` parity sectors.
//!
//! `J_x^2` and `J_y^2` only connect `m` with `m` and `m +- 2`, so each sector
//! block is tridiagonal over every other basis state.

use serde::{Deserialize, Serialize};

use crate::eigensolve::{eig_tridiagonal, EigenDecomposition};
use crate::error::{Result, SpinError};
use crate::symspace::{excitation_to_m, raising_element, DickeIndex, Parity, SymmetricState};

/// Couplings `(gamma_x, gamma_y, h)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LmgParams {
    pub gamma_x: f64,
    pub gamma_y: f64,
    pub h: f64,
}

impl LmgParams {
    pub fn new(gamma_x: f64, gamma_y: f64, h: f64) -> Result<Self> {
        if !(gamma_x.is_finite() && gamma_y.is_finite() && h.is_finite()) {
            return Err(SpinError::InvalidParams(format!(
                "non-finite parameters ({gamma_x}, {gamma_y}, {h})"
            )));
        }
        Ok(Self {
            gamma_x,
            gamma_y,
            h,
        })
    }

    pub fn is_isotropic(&self) -> bool {
        self.gamma_x == self.gamma_y
    }
}

impl std::fmt::Display for LmgParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {})", self.gamma_x, self.gamma_y, self.h)
    }
}

pub(crate) fn check_even(n_qubits: usize) -> Result<()> {
    if n_qubits < 2 || n_qubits % 2 != 0 {
        return Err(SpinError::InvalidSize(format!(
            "N must be even and at least 2, got {n_qubits}"
        )));
    }
    Ok(())
}

/// Matrix elements of the Hamiltonian in the Dicke basis, indexed by `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct HamiltonianElements {
    /// `<k|H|k>` for `k = 0..=N`.
    pub diagonal: Vec<f64>,
    /// `<k|H|k+2>` for `k = 0..=N-2`.
    pub coupling: Vec<f64>,
}

pub fn hamiltonian_elements(params: &LmgParams, n_qubits: usize) -> Result<HamiltonianElements> {
    check_even(n_qubits)?;
    let n = n_qubits as f64;
    let j = n / 2.0;
    let jj = j * (j + 1.0);
    let sum = params.gamma_x + params.gamma_y;
    let diff = params.gamma_x - params.gamma_y;

    let diagonal = (0..=n_qubits)
        .map(|k| {
            let m = excitation_to_m(n_qubits, k);
            -sum * (jj - m * m) / (2.0 * n) - params.h * m
        })
        .collect();

    // state k + 2 has the lower magnetization m; J_+^2 lifts it to m + 2 = k
    let coupling = (0..n_qubits - 1)
        .map(|k| {
            let m = excitation_to_m(n_qubits, k + 2);
            let ladder = raising_element(j, m) * raising_element(j, m + 1.0);
            -diff * ladder / (4.0 * n)
        })
        .collect();

    Ok(HamiltonianElements { diagonal, coupling })
}

/// Tridiagonal Hamiltonian block of one parity sector.
#[derive(Debug, Clone, PartialEq)]
pub struct ParityBlock {
    pub params: LmgParams,
    pub n_qubits: usize,
    pub sector: Parity,
    pub diag: Vec<f64>,
    pub offdiag: Vec<f64>,
    /// Excitation numbers `k` of the block's basis, ascending.
    pub index_map: Vec<usize>,
}

pub fn build_parity_block(params: &LmgParams, n_qubits: usize, sector: Parity) -> Result<ParityBlock> {
    let elements = hamiltonian_elements(params, n_qubits)?;
    let index_map: Vec<usize> = (0..=n_qubits)
        .filter(|&k| sector.contains(n_qubits, k))
        .collect();
    let diag = index_map.iter().map(|&k| elements.diagonal[k]).collect();
    let offdiag = index_map
        .windows(2)
        .map(|w| elements.coupling[w[0]])
        .collect();
    Ok(ParityBlock {
        params: *params,
        n_qubits,
        sector,
        diag,
        offdiag,
        index_map,
    })
}

impl ParityBlock {
    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn solve(&self, want_vectors: bool) -> Result<EigenDecomposition> {
        eig_tridiagonal(&self.diag, &self.offdiag, want_vectors)
    }

    /// Embeds a block vector into the full `N + 1` amplitude space.
    pub fn embed(&self, block_vector: &[f64]) -> Result<SymmetricState> {
        if block_vector.len() != self.dim() {
            return Err(SpinError::DimensionMismatch {
                expected: self.dim(),
                found: block_vector.len(),
            });
        }
        let mut amplitudes = vec![0.0; self.n_qubits + 1];
        for (&k, &c) in self.index_map.iter().zip(block_vector) {
            amplitudes[k] = c;
        }
        SymmetricState::new(amplitudes)?.with_parity(self.sector)
    }

    /// `max_{i,j} |H_ij|` of the block.
    pub fn max_abs(&self) -> f64 {
        self.diag
            .iter()
            .chain(&self.offdiag)
            .fold(0.0, |acc, x| acc.max(x.abs()))
    }

    /// Dense copy, for cross-checks.
    pub fn to_dense(&self) -> crate::eigensolve::Matrix {
        let n = self.dim();
        crate::eigensolve::Matrix::from_fn(n, |i, j| {
            if i == j {
                self.diag[i]
            } else if i + 1 == j {
                self.offdiag[i]
            } else if j + 1 == i {
                self.offdiag[j]
            } else {
                0.0
            }
        })
    }
}

/// Closed-form spectrum for `gamma_x = gamma_y = gamma`: the Dicke states with
/// `E_m = -gamma (j(j+1) - m^2)/N - h m`, sorted by energy.
pub fn isotropic_spectrum(gamma: f64, h: f64, n_qubits: usize) -> Result<Vec<(f64, DickeIndex)>> {
    check_even(n_qubits)?;
    let n = n_qubits as f64;
    let j = n / 2.0;
    let mut out = (0..=n_qubits)
        .map(|k| {
            let idx = DickeIndex::new(n_qubits, k)?;
            let m = idx.magnetization();
            Ok((-gamma * (j * (j + 1.0) - m * m) / n - h * m, idx))
        })
        .collect::<Result<Vec<_>>>()?;
    out.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.excitations().cmp(&b.1.excitations())));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn isotropic_has_no_couplings() {
        let p = LmgParams::new(0.7, 0.7, 0.3).unwrap();
        let el = hamiltonian_elements(&p, 10).unwrap();
        assert!(el.coupling.iter().all(|&c| c == 0.0));
    }

    #[test]
    fn two_qubit_coupling() {
        let p = LmgParams::new(1.0, 0.0, 0.0).unwrap();
        let el = hamiltonian_elements(&p, 2).unwrap();
        assert_eq!(el.coupling.len(), 1);
        assert!((el.coupling[0] + 0.25).abs() < 1e-15);
    }

    #[test]
    fn four_qubit_diagonal() {
        let p = LmgParams::new(1.0, 1.0, 1.0).unwrap();
        let el = hamiltonian_elements(&p, 4).unwrap();
        // m = 1 is k = 1
        assert!((el.diagonal[1] + 2.25).abs() < 1e-15);
    }

    #[test]
    fn odd_size_rejected() {
        let p = LmgParams::new(1.0, 0.0, 0.0).unwrap();
        assert!(matches!(
            hamiltonian_elements(&p, 5),
            Err(SpinError::InvalidSize(_))
        ));
        assert!(build_parity_block(&p, 0, Parity::Positive).is_err());
    }

    #[test]
    fn sector_dimensions() {
        let p = LmgParams::new(1.0, 0.5, 0.2).unwrap();
        let pos = build_parity_block(&p, 4, Parity::Positive).unwrap();
        let neg = build_parity_block(&p, 4, Parity::Negative).unwrap();
        assert_eq!(pos.dim(), 3);
        assert_eq!(neg.dim(), 2);
        assert_eq!(pos.index_map, vec![0, 2, 4]);
        let pos = build_parity_block(&p, 10_000, Parity::Positive).unwrap();
        let neg = build_parity_block(&p, 10_000, Parity::Negative).unwrap();
        assert_eq!((pos.dim(), neg.dim()), (5001, 5000));
    }

    #[test]
    fn isotropic_closed_form_value() {
        let spec = isotropic_spectrum(1.0, 1.0, 4).unwrap();
        let e = spec
            .iter()
            .find(|(_, idx)| idx.magnetization() == 1.0)
            .unwrap()
            .0;
        assert!((e + 2.25).abs() < 1e-15);
    }

    #[test]
    fn isotropic_zero_field_pairs() {
        let spec = isotropic_spectrum(0.8, 0.0, 8).unwrap();
        for m in 1..=4i64 {
            let find = |m: i64| {
                spec.iter()
                    .find(|(_, idx)| idx.magnetization() == m as f64)
                    .unwrap()
                    .0
            };
            assert_eq!(find(m), find(-m));
        }
    }

    #[test]
    fn embed_places_amplitudes_by_index_map() {
        let p = LmgParams::new(1.0, 0.0, 0.5).unwrap();
        let block = build_parity_block(&p, 4, Parity::Negative).unwrap();
        let s = block
            .embed(&[std::f64::consts::FRAC_1_SQRT_2, std::f64::consts::FRAC_1_SQRT_2])
            .unwrap();
        assert_eq!(s.amplitudes()[0], 0.0);
        assert!(s.amplitudes()[1] > 0.0 && s.amplitudes()[3] > 0.0);
        assert_eq!(s.parity(), Some(Parity::Negative));
    }
}
