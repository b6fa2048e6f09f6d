//! Symmetric eigensolvers.
//!
//! `eig_tridiagonal` runs implicit-shift QL with a Wilkinson shift and
//! accumulates plane rotations into the eigenvectors. `eig_dense_symmetric`
//! first reduces to tridiagonal form with Householder reflectors and
//! back-transforms the eigenvectors afterwards.
//!
//! Eigenvectors are stored as the *rows* of [`EigenDecomposition::vectors`];
//! rotations and reflections sweep contiguous memory.

use crate::error::{Result, SpinError};

/// Sweeps allowed per eigenvalue before giving up.
pub const MAX_SWEEPS: usize = 50;

/// Dense square matrix in row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    n: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m.data[i * n + j] = f(i, j);
            }
        }
        m
    }

    /// Builds from row-major data; `data.len()` must be a perfect square.
    pub fn from_row_major(data: Vec<f64>) -> Result<Self> {
        let n = (data.len() as f64).sqrt().round() as usize;
        if n * n != data.len() {
            return Err(SpinError::DimensionMismatch {
                expected: n * n,
                found: data.len(),
            });
        }
        Ok(Self { n, data })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        self.data[i * self.n + j] = value;
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    #[inline]
    pub fn row_mut(&mut self, i: usize) -> &mut [f64] {
        &mut self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |acc, x| acc.max(x.abs()))
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn max_asymmetry(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.n {
            for j in 0..i {
                worst = worst.max((self.get(i, j) - self.get(j, i)).abs());
            }
        }
        worst
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i))
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        (0..self.n)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }
}

/// Eigenvalues in ascending order, optionally with eigenvectors.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenDecomposition {
    pub values: Vec<f64>,
    /// Row `k` is the unit eigenvector for `values[k]`.
    pub vectors: Option<Matrix>,
    pub source_dim: usize,
}

impl EigenDecomposition {
    pub fn vector(&self, k: usize) -> Option<&[f64]> {
        self.vectors.as_ref().map(|v| v.row(k))
    }

    /// `max |V V^T - I|` over all pairs, or `None` without vectors.
    pub fn orthonormality_error(&self) -> Option<f64> {
        let v = self.vectors.as_ref()?;
        let n = v.dim();
        let mut worst: f64 = 0.0;
        for a in 0..n {
            for b in 0..=a {
                let dot: f64 = v.row(a).iter().zip(v.row(b)).map(|(x, y)| x * y).sum();
                let target = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((dot - target).abs());
            }
        }
        Some(worst)
    }
}

/// Eigen-decomposition of the symmetric tridiagonal matrix with main diagonal
/// `diag` and off-diagonal `offdiag`.
pub fn eig_tridiagonal(
    diag: &[f64],
    offdiag: &[f64],
    want_vectors: bool,
) -> Result<EigenDecomposition> {
    let n = diag.len();
    if n == 0 {
        return Err(SpinError::EmptyInput);
    }
    if offdiag.len() + 1 != n {
        return Err(SpinError::DimensionMismatch {
            expected: n - 1,
            found: offdiag.len(),
        });
    }
    if diag.iter().chain(offdiag).any(|x| !x.is_finite()) {
        return Err(SpinError::Domain("non-finite matrix entry".into()));
    }

    let mut d = diag.to_vec();
    let mut e = offdiag.to_vec();
    e.push(0.0);
    let mut z = want_vectors.then(|| Matrix::identity(n));
    implicit_ql(&mut d, &mut e, z.as_mut())?;
    Ok(finish(d, z, n))
}

/// Eigen-decomposition of a dense real symmetric matrix.
pub fn eig_dense_symmetric(matrix: &Matrix, want_vectors: bool) -> Result<EigenDecomposition> {
    let n = matrix.dim();
    if n == 0 {
        return Err(SpinError::EmptyInput);
    }
    if matrix.as_slice().iter().any(|x| !x.is_finite()) {
        return Err(SpinError::Domain("non-finite matrix entry".into()));
    }
    let asym = matrix.max_asymmetry();
    if asym > 1e-10 * matrix.max_abs() {
        return Err(SpinError::Asymmetric {
            max_deviation: asym,
        });
    }

    let mut work = matrix.clone();
    let reduction = householder_tridiagonalize(&mut work);
    let (mut d, mut e) = (reduction.diag, reduction.offdiag);
    e.push(0.0);
    let mut z = want_vectors.then(|| Matrix::identity(n));
    implicit_ql(&mut d, &mut e, z.as_mut())?;
    if let Some(z) = z.as_mut() {
        back_transform(&work, &reduction.scales, z);
    }
    Ok(finish(d, z, n))
}

struct Tridiagonal {
    diag: Vec<f64>,
    offdiag: Vec<f64>,
    /// `H_i = |u_i|^2 / 2` of reflector `i`, zero when step `i` was skipped.
    scales: Vec<f64>,
}

/// Householder reduction of the lower triangle of `a`, last row first.
///
/// On return row `i` of `a` (columns `0..i`) holds the Householder vector
/// `u_i` of the reflector `P_i = I - u_i u_i^T / H_i`, and
/// `A = Q T Q^T` with `Q = P_{n-1} ... P_1`.
fn householder_tridiagonalize(a: &mut Matrix) -> Tridiagonal {
    let n = a.dim();
    let mut offdiag_full = vec![0.0; n];
    let mut scales = vec![0.0; n];
    let mut p = vec![0.0; n];

    for i in (1..n).rev() {
        let l = i - 1;
        let scale: f64 = a.row(i)[..i].iter().map(|x| x.abs()).sum();
        if l == 0 || scale == 0.0 {
            offdiag_full[i] = a.get(i, l);
            continue;
        }
        let row = &mut a.row_mut(i)[..i];
        row.iter_mut().for_each(|x| *x /= scale);
        let mut h: f64 = row.iter().map(|x| x * x).sum();
        let f = row[l];
        let g = if f >= 0.0 { -h.sqrt() } else { h.sqrt() };
        offdiag_full[i] = scale * g;
        h -= f * g;
        row[l] = f - g;
        scales[i] = h;
        let u: Vec<f64> = row.to_vec();

        // p = A_sub u / h using only the lower triangle
        p[..i].iter_mut().for_each(|x| *x = 0.0);
        for j in 0..i {
            let arow = &a.row(j)[..j];
            let uj = u[j];
            let mut acc = a.get(j, j) * uj;
            for (k, &ajk) in arow.iter().enumerate() {
                acc += ajk * u[k];
                p[k] += ajk * uj;
            }
            p[j] += acc;
        }
        let inv_h = 1.0 / h;
        p[..i].iter_mut().for_each(|x| *x *= inv_h);
        let kappa: f64 = u.iter().zip(&p[..i]).map(|(a, b)| a * b).sum::<f64>() / (2.0 * h);
        for j in 0..i {
            p[j] -= kappa * u[j];
        }
        // A_sub -= u q^T + q u^T on the lower triangle
        for j in 0..i {
            let (uj, qj) = (u[j], p[j]);
            let arow = &mut a.row_mut(j)[..=j];
            for (k, ajk) in arow.iter_mut().enumerate() {
                *ajk -= uj * p[k] + qj * u[k];
            }
        }
    }

    let diag = (0..n).map(|i| a.get(i, i)).collect();
    let offdiag = offdiag_full[1..].to_vec();
    Tridiagonal {
        diag,
        offdiag,
        scales,
    }
}

/// Applies `Q = P_{n-1} ... P_1` to every eigenvector row of `z`.
fn back_transform(reflectors: &Matrix, scales: &[f64], z: &mut Matrix) {
    let n = z.dim();
    for r in 0..n {
        let y = z.row_mut(r);
        for i in 1..n {
            let h = scales[i];
            if h == 0.0 {
                continue;
            }
            let u = &reflectors.row(i)[..i];
            let s: f64 = u.iter().zip(&y[..i]).map(|(a, b)| a * b).sum::<f64>() / h;
            for (yk, uk) in y[..i].iter_mut().zip(u) {
                *yk -= s * uk;
            }
        }
    }
}

/// Implicit QL with Wilkinson shift on `(d, e)`, where `e[i]` couples `i`
/// and `i + 1` and `e[n-1]` is scratch. Rotations are applied to the rows of
/// `z` when present.
fn implicit_ql(d: &mut [f64], e: &mut [f64], mut z: Option<&mut Matrix>) -> Result<()> {
    let n = d.len();
    let norm = d
        .iter()
        .chain(e.iter())
        .fold(0.0f64, |acc, x| acc.max(x.abs()));
    let floor = f64::EPSILON * norm;
    for l in 0..n {
        let mut sweeps = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd || e[m].abs() <= floor {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            sweeps += 1;
            if sweeps > MAX_SWEEPS {
                return Err(SpinError::NonConvergence {
                    index: l,
                    sweeps: MAX_SWEEPS,
                });
            }

            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut underflow = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                if let Some(z) = z.as_deref_mut() {
                    rotate_rows(z, i, s, c);
                }
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

#[inline]
fn rotate_rows(z: &mut Matrix, i: usize, s: f64, c: f64) {
    let n = z.dim();
    let (head, tail) = z.data.split_at_mut((i + 1) * n);
    let zi = &mut head[i * n..];
    let zi1 = &mut tail[..n];
    for (a, b) in zi.iter_mut().zip(zi1.iter_mut()) {
        let f = *b;
        *b = s * *a + c * f;
        *a = c * *a - s * f;
    }
}

/// Sorts ascending and fixes eigenvector signs.
fn finish(values: Vec<f64>, vectors: Option<Matrix>, n: usize) -> EigenDecomposition {
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]).then(a.cmp(&b)));
    let sorted_values = order.iter().map(|&k| values[k]).collect();
    let sorted_vectors = vectors.map(|z| {
        let mut out = Matrix::zeros(n);
        for (dst, &src) in order.iter().enumerate() {
            let row = out.row_mut(dst);
            row.copy_from_slice(z.row(src));
            fix_sign(row);
        }
        out
    });
    EigenDecomposition {
        values: sorted_values,
        vectors: sorted_vectors,
        source_dim: n,
    }
}

/// Makes the first largest-magnitude component positive.
fn fix_sign(v: &mut [f64]) {
    let mut best = 0;
    for (k, x) in v.iter().enumerate() {
        if x.abs() > v[best].abs() {
            best = k;
        }
    }
    if v[best] < 0.0 {
        v.iter_mut().for_each(|x| *x = -*x);
    }
}
