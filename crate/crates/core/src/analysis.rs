//! Spectrum-level aggregation: basis-averaged entanglement, the analytic
//! Dicke bounds, fixed-intercept scaling fits, `c0(p)` profiles, entropy
//! versus energy and density-of-states histograms.
//!
//! Every average is a parallel map over eigenstates followed by an ordered
//! pairwise reduction, so results do not depend on the thread count.

use std::f64::consts::{E, PI};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::entangle::{
    dicke_ee_exact_in, rdm_symmetric_bipartition_in, superposition_ee_halfcut,
    von_neumann_entropy, SuperpositionSign,
};
use crate::error::{Result, SpinError};
use crate::lmg::{build_parity_block, check_even, LmgParams};
use crate::symspace::{Bipartition, DickeIndex, LogFactorials, Parity, SymmetricState};

/// Which parity sectors an LMG average runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum SectorChoice {
    #[default]
    Positive,
    Negative,
    Both,
}

impl SectorChoice {
    pub fn parities(self) -> &'static [Parity] {
        match self {
            SectorChoice::Positive => &[Parity::Positive],
            SectorChoice::Negative => &[Parity::Negative],
            SectorChoice::Both => &[Parity::Positive, Parity::Negative],
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            SectorChoice::Positive => "positive",
            SectorChoice::Negative => "negative",
            SectorChoice::Both => "both",
        }
    }
}

impl std::str::FromStr for SectorChoice {
    type Err = SpinError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "positive" => Ok(SectorChoice::Positive),
            "negative" => Ok(SectorChoice::Negative),
            "both" => Ok(SectorChoice::Both),
            other => Err(SpinError::InvalidParams(format!(
                "unknown sector '{other}' (expected positive, negative or both)"
            ))),
        }
    }
}

/// Orthonormal basis of the symmetric subspace that an average runs over.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Basis {
    /// `|j,m>` for all `m`.
    Dicke,
    /// `(|j,m> +- |j,-m>)/sqrt 2` for `m > 0`, plus `|j,0>`.
    Superposition,
    /// Eigenstates of the LMG Hamiltonian in the chosen sectors.
    Lmg {
        params: LmgParams,
        sector: SectorChoice,
    },
}

impl std::fmt::Display for Basis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Basis::Dicke => write!(f, "dicke"),
            Basis::Superposition => write!(f, "superposition"),
            Basis::Lmg { params, sector } => write!(
                f,
                "lmg({};{};{};{})",
                params.gamma_x,
                params.gamma_y,
                params.h,
                sector.as_str()
            ),
        }
    }
}

/// One point of a finite-size scaling series.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScalingSample {
    pub n_qubits: usize,
    pub fraction: f64,
    /// `log2(N_A + 1)`.
    pub s_max: f64,
    pub avg_ee: f64,
    pub normalized: f64,
    pub basis: Basis,
}

/// Sum with pairwise splitting; the grouping depends only on the length.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    const LEAF: usize = 16;
    if values.len() <= LEAF {
        return values.iter().sum();
    }
    let (left, right) = values.split_at(values.len() / 2);
    pairwise_sum(left) + pairwise_sum(right)
}

/// Arithmetic mean of per-state entropies.
pub fn average_ee(entropies: &[f64]) -> Result<f64> {
    if entropies.is_empty() {
        return Err(SpinError::EmptyInput);
    }
    Ok(pairwise_sum(entropies) / entropies.len() as f64)
}

/// `log2(N_A + 1)`, the largest entropy the subsystem's Dicke space allows.
pub fn s_max(cut: Bipartition) -> f64 {
    ((cut.n_a() + 1) as f64).log2()
}

pub fn normalized_average(cut: Bipartition, entropies: &[f64], basis: Basis) -> Result<ScalingSample> {
    let avg_ee = average_ee(entropies)?;
    let s_max = s_max(cut);
    let normalized = avg_ee / s_max;
    if !(0.0..=1.0 + 1e-12).contains(&normalized) {
        return Err(SpinError::Consistency(format!(
            "normalized average {normalized} outside [0, 1]"
        )));
    }
    Ok(ScalingSample {
        n_qubits: cut.n_qubits(),
        fraction: cut.fraction(),
        s_max,
        avg_ee,
        normalized: normalized.min(1.0),
        basis,
    })
}

/// Entropies of all `N + 1` Dicke states, ordered by `k`.
pub fn dicke_entropies(n_qubits: usize, cut: Bipartition) -> Result<Vec<f64>> {
    cut.check_against(n_qubits)?;
    let table = LogFactorials::new(n_qubits);
    (0..=n_qubits)
        .into_par_iter()
        .map(|k| {
            let idx = DickeIndex::new(n_qubits, k)?;
            Ok(dicke_ee_exact_in(&table, idx, cut)?.bits())
        })
        .collect()
}

/// Entropies of the superposition basis: `m = 0`, then `m = 1..=j` with the
/// `+` and `-` combinations adjacent.
///
/// At the half cut with `|m| > j/2` the closed form is used; every other state
/// goes through its reduced density matrix.
pub fn superposition_entropies(n_qubits: usize, cut: Bipartition) -> Result<Vec<f64>> {
    check_even(n_qubits)?;
    cut.check_against(n_qubits)?;
    let j = (n_qubits / 2) as i64;
    let table = LogFactorials::new(n_qubits);
    let mut labels = vec![(0i64, SuperpositionSign::Plus)];
    for m in 1..=j {
        labels.push((m, SuperpositionSign::Plus));
        labels.push((m, SuperpositionSign::Minus));
    }
    labels
        .into_par_iter()
        .map(|(m, sign)| {
            if cut.n_a() == cut.n_b() && 2 * m > j {
                let idx = DickeIndex::from_magnetization(n_qubits, m)?;
                return Ok(superposition_ee_halfcut(idx, cut, sign)?.bits());
            }
            let state = SymmetricState::conjugate_superposition(n_qubits, m, sign.as_f64())?;
            let rho = rdm_symmetric_bipartition_in(&table, &state, cut)?;
            Ok(von_neumann_entropy(&rho)?.bits())
        })
        .collect()
}

/// Energies of every eigenstate in the chosen sectors, sorted ascending, with
/// one entropy column per requested cut.
#[derive(Debug, Clone, PartialEq)]
pub struct LmgSectorEntropies {
    pub energies: Vec<f64>,
    /// `entropies[c][i]` is the entropy of eigenstate `i` across `cuts[c]`.
    pub entropies: Vec<Vec<f64>>,
}

/// Diagonalizes each requested sector once and evaluates every cut.
pub fn lmg_cut_entropies(
    params: &LmgParams,
    n_qubits: usize,
    cuts: &[Bipartition],
    sector: SectorChoice,
) -> Result<LmgSectorEntropies> {
    if cuts.is_empty() {
        return Err(SpinError::EmptyInput);
    }
    for cut in cuts {
        cut.check_against(n_qubits)?;
    }
    let table = LogFactorials::new(n_qubits);
    let mut rows: Vec<(f64, Vec<f64>)> = Vec::with_capacity(n_qubits + 1);
    for &parity in sector.parities() {
        let block = build_parity_block(params, n_qubits, parity)?;
        let dec = block.solve(true)?;
        let sector_rows: Vec<(f64, Vec<f64>)> = (0..block.dim())
            .into_par_iter()
            .map(|i| {
                let vector = dec.vector(i).ok_or_else(|| {
                    SpinError::Consistency("decomposition lacks eigenvectors".into())
                })?;
                let state = block.embed(vector)?;
                let entropies = cuts
                    .iter()
                    .map(|&cut| {
                        let rho = rdm_symmetric_bipartition_in(&table, &state, cut)?;
                        Ok(von_neumann_entropy(&rho)?.bits())
                    })
                    .collect::<Result<Vec<f64>>>()?;
                Ok((dec.values[i], entropies))
            })
            .collect::<Result<_>>()?;
        rows.extend(sector_rows);
    }
    // a stable sort keeps the per-sector order for exact ties
    rows.sort_by(|a, b| a.0.total_cmp(&b.0));
    let energies = rows.iter().map(|r| r.0).collect();
    let entropies = (0..cuts.len())
        .map(|c| rows.iter().map(|r| r.1[c]).collect())
        .collect();
    Ok(LmgSectorEntropies {
        energies,
        entropies,
    })
}

/// Energies and entropies across `cut` of every eigenstate in the chosen
/// sectors, sorted by energy.
pub fn lmg_entropies(
    params: &LmgParams,
    n_qubits: usize,
    cut: Bipartition,
    sector: SectorChoice,
) -> Result<Vec<(f64, f64)>> {
    let mut result = lmg_cut_entropies(params, n_qubits, &[cut], sector)?;
    let entropies = result.entropies.swap_remove(0);
    Ok(result.energies.into_iter().zip(entropies).collect())
}

/// Per-state entropies of `basis` across `cut`.
pub fn basis_entropies(basis: Basis, n_qubits: usize, cut: Bipartition) -> Result<Vec<f64>> {
    check_even(n_qubits)?;
    match basis {
        Basis::Dicke => dicke_entropies(n_qubits, cut),
        Basis::Superposition => superposition_entropies(n_qubits, cut),
        Basis::Lmg { params, sector } => Ok(lmg_entropies(&params, n_qubits, cut, sector)?
            .into_iter()
            .map(|(_, s)| s)
            .collect()),
    }
}

/// Normalized average entropy of `basis` for `N` qubits split at fraction `p`.
pub fn basis_average(basis: Basis, n_qubits: usize, fraction: f64) -> Result<ScalingSample> {
    let cut = Bipartition::from_fraction(n_qubits, fraction)?;
    let entropies = basis_entropies(basis, n_qubits, cut)?;
    normalized_average(cut, &entropies, basis)
}

pub fn dicke_average(n_qubits: usize, fraction: f64) -> Result<ScalingSample> {
    basis_average(Basis::Dicke, n_qubits, fraction)
}

pub fn superposition_average(n_qubits: usize, fraction: f64) -> Result<ScalingSample> {
    basis_average(Basis::Superposition, n_qubits, fraction)
}

pub fn lmg_average(
    params: &LmgParams,
    n_qubits: usize,
    fraction: f64,
    sector: SectorChoice,
) -> Result<ScalingSample> {
    let basis = Basis::Lmg {
        params: *params,
        sector,
    };
    basis_average(basis, n_qubits, fraction)
}

fn bound_inputs(n_qubits: usize, fraction: f64) -> Result<(f64, f64)> {
    check_even(n_qubits)?;
    if !(fraction > 0.0 && fraction <= 0.5) {
        return Err(SpinError::Domain(format!(
            "fraction {fraction} outside (0, 1/2]"
        )));
    }
    Ok((n_qubits as f64 / 2.0, fraction * (1.0 - fraction)))
}

/// `(1/2) log2(pi e j p (1-p))`, the leading upper bound on the Dicke average.
pub fn dicke_average_upper_bound(n_qubits: usize, fraction: f64) -> Result<f64> {
    let (j, pq) = bound_inputs(n_qubits, fraction)?;
    Ok(0.5 * (PI * E * j * pq).log2())
}

/// `j/(2j+1) log2((pi / 2e) j p (1-p))`, the leading lower bound on the Dicke
/// average.
pub fn dicke_average_lower_bound(n_qubits: usize, fraction: f64) -> Result<f64> {
    let (j, pq) = bound_inputs(n_qubits, fraction)?;
    Ok(j / (2.0 * j + 1.0) * (PI / (2.0 * E) * j * pq).log2())
}

/// Least-squares line `y = a + b x`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FitResult {
    pub intercept_a: f64,
    pub slope_b: f64,
    pub r_squared: f64,
    pub one_minus_r2: f64,
    /// `SSE / sum y^2`: the residual share against the uncentered total sum
    /// of squares, reported alongside for comparison.
    pub one_minus_r2_uncentered: f64,
    pub fixed_intercept: bool,
}

/// Slope of `y = a + b x` with `a` held fixed.
///
/// `1 - R^2 = SSE / SST` with the total sum of squares taken about the mean
/// of `y`; it is computed directly so tiny values keep their precision.
pub fn fixed_intercept_fit(points: &[(f64, f64)], a: f64) -> Result<FitResult> {
    if points.len() < 2 {
        return Err(SpinError::DegenerateFit(format!(
            "need at least 2 points, got {}",
            points.len()
        )));
    }
    if points.iter().any(|(x, y)| !x.is_finite() || !y.is_finite()) || !a.is_finite() {
        return Err(SpinError::DegenerateFit("non-finite input".into()));
    }
    let x0 = points[0].0;
    if points.iter().all(|&(x, _)| x == x0) {
        return Err(SpinError::DegenerateFit("all x values are equal".into()));
    }
    let sxx: f64 = points.iter().map(|&(x, _)| x * x).sum();
    let sxy: f64 = points.iter().map(|&(x, y)| x * (y - a)).sum();
    let b = sxy / sxx;
    let mean_y = points.iter().map(|&(_, y)| y).sum::<f64>() / points.len() as f64;
    let sst: f64 = points.iter().map(|&(_, y)| (y - mean_y).powi(2)).sum();
    if sst == 0.0 {
        return Err(SpinError::DegenerateFit("all y values are equal".into()));
    }
    let sse: f64 = points.iter().map(|&(x, y)| (y - a - b * x).powi(2)).sum();
    let one_minus_r2 = sse / sst;
    let syy: f64 = points.iter().map(|&(_, y)| y * y).sum();
    Ok(FitResult {
        intercept_a: a,
        slope_b: b,
        r_squared: 1.0 - one_minus_r2,
        one_minus_r2,
        one_minus_r2_uncentered: sse / syy,
        fixed_intercept: true,
    })
}

/// Fixed-intercept fits over a grid of intercepts.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InterceptScan {
    pub fits: Vec<FitResult>,
    /// Index into `fits` of the smallest `1 - R^2` (first on ties).
    pub best: usize,
}

impl InterceptScan {
    pub fn best_fit(&self) -> &FitResult {
        &self.fits[self.best]
    }
}

/// Fits at `a = min + i step` for every `i` with `a <= max` (up to rounding).
pub fn intercept_scan(points: &[(f64, f64)], min: f64, max: f64, step: f64) -> Result<InterceptScan> {
    if !(min.is_finite() && max.is_finite() && step.is_finite()) || min >= max || step <= 0.0 {
        return Err(SpinError::InvalidParams(format!(
            "invalid intercept scan {min}:{max}:{step}"
        )));
    }
    let count = ((max - min) / step + 1e-9).floor() as usize + 1;
    let fits = (0..count)
        .map(|i| fixed_intercept_fit(points, min + i as f64 * step))
        .collect::<Result<Vec<_>>>()?;
    let best = fits
        .iter()
        .enumerate()
        .fold(0, |best, (i, f)| {
            if f.one_minus_r2 < fits[best].one_minus_r2 {
                i
            } else {
                best
            }
        });
    Ok(InterceptScan { fits, best })
}

/// `(x, y) = (1 / s_max, normalized)` for each sample.
pub fn scaling_points(samples: &[ScalingSample]) -> Vec<(f64, f64)> {
    samples.iter().map(|s| (1.0 / s.s_max, s.normalized)).collect()
}

/// One row of a `c0(p)` table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct C0Entry {
    pub fraction: f64,
    pub avg_ee: f64,
    pub s_max: f64,
    /// `avg_ee / s_max`.
    pub c0: f64,
}

/// `c0(p) = S_A(p) / S_max(p)` for each fraction, over the full basis.
///
/// LMG eigenstates are computed once and reused for every fraction.
pub fn c0_profile(basis: Basis, n_qubits: usize, fractions: &[f64]) -> Result<Vec<C0Entry>> {
    let samples = basis_samples(basis, n_qubits, fractions)?;
    Ok(samples
        .into_iter()
        .zip(fractions)
        .map(|(sample, &fraction)| C0Entry {
            fraction,
            avg_ee: sample.avg_ee,
            s_max: sample.s_max,
            c0: sample.normalized,
        })
        .collect())
}

/// One [`ScalingSample`] per fraction for `N` qubits.
pub fn basis_samples(basis: Basis, n_qubits: usize, fractions: &[f64]) -> Result<Vec<ScalingSample>> {
    if fractions.is_empty() {
        return Err(SpinError::EmptyInput);
    }
    check_even(n_qubits)?;
    let cuts = fractions
        .iter()
        .map(|&p| Bipartition::from_fraction(n_qubits, p))
        .collect::<Result<Vec<_>>>()?;
    let columns = match basis {
        Basis::Lmg { params, sector } => lmg_cut_entropies(&params, n_qubits, &cuts, sector)?.entropies,
        _ => cuts
            .iter()
            .map(|&cut| basis_entropies(basis, n_qubits, cut))
            .collect::<Result<Vec<_>>>()?,
    };
    cuts.iter()
        .zip(&columns)
        .map(|(&cut, entropies)| normalized_average(cut, entropies, basis))
        .collect()
}

/// Entropy of each eigenstate against its energy.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumEntanglementProfile {
    pub n_qubits: usize,
    pub energies: Vec<f64>,
    /// `E / j`, ascending.
    pub scaled_energies: Vec<f64>,
    pub entropies: Vec<f64>,
    pub sector: SectorChoice,
}

impl SpectrumEntanglementProfile {
    pub fn len(&self) -> usize {
        self.entropies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entropies.is_empty()
    }
}

pub fn ee_distribution(
    params: &LmgParams,
    n_qubits: usize,
    fraction: f64,
    sector: SectorChoice,
) -> Result<SpectrumEntanglementProfile> {
    let cut = Bipartition::from_fraction(n_qubits, fraction)?;
    let pairs = lmg_entropies(params, n_qubits, cut, sector)?;
    let j = n_qubits as f64 / 2.0;
    Ok(SpectrumEntanglementProfile {
        n_qubits,
        energies: pairs.iter().map(|p| p.0).collect(),
        scaled_energies: pairs.iter().map(|p| p.0 / j).collect(),
        entropies: pairs.iter().map(|p| p.1).collect(),
        sector,
    })
}

/// Counts over equal-width bins spanning `[min, max]` of the data.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DosHistogram {
    /// `bins + 1` ascending edges.
    pub bin_edges: Vec<f64>,
    pub counts: Vec<usize>,
}

impl DosHistogram {
    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }

    /// Index of the fullest bin (first on ties).
    pub fn mode_bin(&self) -> usize {
        self.counts
            .iter()
            .enumerate()
            .fold(0, |best, (i, &c)| if c > self.counts[best] { i } else { best })
    }

    /// `(lo, hi)` of bin `i`.
    pub fn bin(&self, i: usize) -> (f64, f64) {
        (self.bin_edges[i], self.bin_edges[i + 1])
    }
}

/// Histogram with `bins` equal bins; the last bin is closed on the right so
/// every value is counted. A zero-width range is widened to `+-0.5`.
pub fn dos_histogram(values: &[f64], bins: usize) -> Result<DosHistogram> {
    if values.is_empty() {
        return Err(SpinError::EmptyInput);
    }
    if bins == 0 {
        return Err(SpinError::InvalidParams("bin count must be positive".into()));
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(SpinError::Domain("non-finite value in histogram input".into()));
    }
    let mut lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let mut hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if lo == hi {
        lo -= 0.5;
        hi += 0.5;
    }
    let width = (hi - lo) / bins as f64;
    let bin_edges: Vec<f64> = (0..=bins)
        .map(|i| if i == bins { hi } else { lo + i as f64 * width })
        .collect();
    let mut counts = vec![0usize; bins];
    for &v in values {
        let mut i = (((v - lo) / width).floor() as usize).min(bins - 1);
        // guard against rounding across an edge
        while i > 0 && v < bin_edges[i] {
            i -= 1;
        }
        while i + 1 < bins && v >= bin_edges[i + 1] {
            i += 1;
        }
        counts[i] += 1;
    }
    Ok(DosHistogram { bin_edges, counts })
}

/// Centered moving average; the window shrinks symmetrically near the ends.
pub fn moving_average(values: &[f64], window: usize) -> Result<Vec<f64>> {
    if window == 0 || window % 2 == 0 {
        return Err(SpinError::InvalidParams(format!(
            "window must be odd and positive, got {window}"
        )));
    }
    let half = window / 2;
    let n = values.len();
    Ok((0..n)
        .map(|i| {
            let reach = half.min(i).min(n - 1 - i);
            let slice = &values[i - reach..=i + reach];
            pairwise_sum(slice) / slice.len() as f64
        })
        .collect())
}

/// Width of the smoothing window used for dip detection.
pub const DIP_WINDOW: usize = 21;
/// Fraction of the spectrum at each end ignored by dip detection.
pub const DIP_EDGE_FRACTION: f64 = 0.05;

/// Indices of strictly-local minima of the smoothed entropy profile, away from
/// the outer [`DIP_EDGE_FRACTION`] of the spectrum on each side.
pub fn entropy_dips(profile: &SpectrumEntanglementProfile) -> Result<Vec<usize>> {
    let smooth = moving_average(&profile.entropies, DIP_WINDOW)?;
    let n = smooth.len();
    let skip = (DIP_EDGE_FRACTION * n as f64).ceil() as usize;
    let lo = skip.max(1);
    let hi = n.saturating_sub(skip.max(1));
    Ok((lo..hi)
        .filter(|&i| smooth[i] < smooth[i - 1] && smooth[i] < smooth[i + 1])
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn average_of_constant() {
        assert_eq!(average_ee(&[0.75; 33]).unwrap(), 0.75);
        assert!((average_ee(&[0.7; 33]).unwrap() - 0.7).abs() < 1e-15);
        assert!(matches!(average_ee(&[]), Err(SpinError::EmptyInput)));
    }

    #[test]
    fn exact_line_is_recovered() {
        let pts: Vec<(f64, f64)> = (1..8).map(|i| (i as f64 * 0.1, 0.5 + 0.3 * i as f64 * 0.1)).collect();
        let fit = fixed_intercept_fit(&pts, 0.5).unwrap();
        assert!((fit.slope_b - 0.3).abs() < 1e-12);
        assert_eq!(fit.intercept_a, 0.5);
        assert!(fit.one_minus_r2 < 1e-20);
    }

    #[test]
    fn degenerate_fits_are_rejected() {
        assert!(fixed_intercept_fit(&[(1.0, 2.0)], 0.0).is_err());
        assert!(fixed_intercept_fit(&[(1.0, 2.0), (1.0, 3.0)], 0.0).is_err());
    }

    #[test]
    fn scan_grid_includes_both_ends() {
        let pts = [(0.1, 0.53), (0.2, 0.56), (0.3, 0.59)];
        let scan = intercept_scan(&pts, 0.48, 0.52, 0.001).unwrap();
        assert_eq!(scan.fits.len(), 41);
        assert!((scan.fits[40].intercept_a - 0.52).abs() < 1e-12);
        assert!((scan.best_fit().intercept_a - 0.5).abs() < 1e-12);
    }

    #[test]
    fn histogram_counts_everything() {
        let values: Vec<f64> = (0..1000).map(|i| (i as f64 * 0.37).sin()).collect();
        let h = dos_histogram(&values, 101).unwrap();
        assert_eq!(h.total(), 1000);
        assert_eq!(h.bin_edges.len(), 102);
        let single = dos_histogram(&[2.0], 3).unwrap();
        assert_eq!(single.total(), 1);
    }

    #[test]
    fn moving_average_shrinks_at_edges() {
        let v = [1.0, 2.0, 3.0, 4.0, 5.0];
        let s = moving_average(&v, 3).unwrap();
        assert_eq!(s, vec![1.0, 2.0, 3.0, 4.0, 5.0]);
        assert!(moving_average(&v, 4).is_err());
    }

    #[test]
    fn bounds_reject_bad_fraction() {
        assert!(dicke_average_upper_bound(100, 0.6).is_err());
        assert!(dicke_average_lower_bound(100, 0.0).is_err());
        let gap = dicke_average_upper_bound(1 << 40, 0.5).unwrap()
            - dicke_average_lower_bound(1 << 40, 0.5).unwrap();
        assert!((gap - 0.5 * (2.0 * E * E).log2()).abs() < 1e-6);
    }

    #[test]
    fn sector_parsing() {
        assert_eq!("both".parse::<SectorChoice>().unwrap(), SectorChoice::Both);
        assert!("up".parse::<SectorChoice>().is_err());
    }
}
