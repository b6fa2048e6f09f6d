//! Independent brute-force references used by the integration tests.
//!
//! Everything here works in the full `2^N` computational basis (qubit `i` is
//! bit `i` of the index, bit value 1 = |1> = spin down) or uses textbook
//! algorithms unrelated to the library's own code paths.

#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random unit vector of length `n` with a fixed seed.
pub fn random_unit(n: usize, seed: u64) -> Vec<f64> {
    let mut r = rng(seed);
    let v: Vec<f64> = (0..n).map(|_| r.gen_range(-1.0..1.0)).collect();
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.into_iter().map(|x| x / norm).collect()
}

/// Binomial coefficient as `f64` by direct multiplication (small `n` only).
pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Computational-basis vector of `sum_k c_k |N,k>` where `|N,k>` is the
/// uniform superposition of bit strings with `k` ones.
pub fn to_computational(amplitudes: &[f64]) -> Vec<f64> {
    let n = amplitudes.len() - 1;
    let mut psi = vec![0.0; 1 << n];
    for (idx, slot) in psi.iter_mut().enumerate() {
        let k = (idx as u64).count_ones() as usize;
        *slot = amplitudes[k] / binomial(n, k).sqrt();
    }
    psi
}

/// `|N,k>` in the computational basis.
pub fn dicke_vector(n: usize, k: usize) -> Vec<f64> {
    let mut amps = vec![0.0; n + 1];
    amps[k] = 1.0;
    to_computational(&amps)
}

/// `(sum_i sigma^x_i / 2) psi`.
pub fn apply_jx(n: usize, psi: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; psi.len()];
    for (idx, &a) in psi.iter().enumerate() {
        for i in 0..n {
            out[idx ^ (1 << i)] += 0.5 * a;
        }
    }
    out
}

/// `(sum_i Y_i / 2) psi` with the real matrix `Y = -i sigma^y`:
/// `Y|0> = |1>`, `Y|1> = -|0>`.
pub fn apply_jy_real(n: usize, psi: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; psi.len()];
    for (idx, &a) in psi.iter().enumerate() {
        for i in 0..n {
            let sign = if idx & (1 << i) == 0 { 1.0 } else { -1.0 };
            out[idx ^ (1 << i)] += 0.5 * sign * a;
        }
    }
    out
}

/// `(sum_i sigma^z_i / 2) psi` with `sigma^z |0> = |0>`.
pub fn apply_jz(n: usize, psi: &[f64]) -> Vec<f64> {
    psi.iter()
        .enumerate()
        .map(|(idx, &a)| {
            let ones = (idx as u64).count_ones() as f64;
            0.5 * (n as f64 - 2.0 * ones) * a
        })
        .collect()
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `H psi` for `H = -(gx Jx^2 + gy Jy^2)/N - h Jz` built from Pauli sums.
/// `Jy^2 = -(Y/2)^2` in terms of the real `Y`.
pub fn apply_lmg(n: usize, gx: f64, gy: f64, h: f64, psi: &[f64]) -> Vec<f64> {
    let jx2 = apply_jx(n, &apply_jx(n, psi));
    let yy = apply_jy_real(n, &apply_jy_real(n, psi));
    let jz = apply_jz(n, psi);
    let nf = n as f64;
    (0..psi.len())
        .map(|i| -(gx * jx2[i] - gy * yy[i]) / nf - h * jz[i])
        .collect()
}

/// `H psi` for the pair form `-(1/N) sum_{k != l} (gx sx sx + gy sy sy)/4 - h Jz`.
pub fn apply_lmg_pairs(n: usize, gx: f64, gy: f64, h: f64, psi: &[f64]) -> Vec<f64> {
    let nf = n as f64;
    let mut out: Vec<f64> = apply_jz(n, psi).iter().map(|v| -h * v).collect();
    for (idx, &a) in psi.iter().enumerate() {
        for k in 0..n {
            for l in 0..n {
                if k == l {
                    continue;
                }
                let flipped = idx ^ (1 << k) ^ (1 << l);
                // sigma^y_k sigma^y_l = -Y_k Y_l
                let sk = if idx & (1 << k) == 0 { 1.0 } else { -1.0 };
                let sl = if idx & (1 << l) == 0 { 1.0 } else { -1.0 };
                let yy = -(sk * sl);
                out[flipped] -= (gx + gy * yy) * a / (4.0 * nf);
            }
        }
    }
    out
}

/// Matrix of `op` between Dicke states: `M[k][k'] = <N,k| op |N,k'>`.
pub fn project_to_dicke(n: usize, op: impl Fn(&[f64]) -> Vec<f64>) -> Vec<Vec<f64>> {
    let basis: Vec<Vec<f64>> = (0..=n).map(|k| dicke_vector(n, k)).collect();
    let images: Vec<Vec<f64>> = basis.iter().map(|b| op(b)).collect();
    basis
        .iter()
        .map(|bra| images.iter().map(|img| dot(bra, img)).collect())
        .collect()
}

/// Reduced density matrix of qubits `0..n_a` (the low bits) of a real pure state.
pub fn partial_trace(psi: &[f64], n: usize, n_a: usize) -> Vec<Vec<f64>> {
    let da = 1usize << n_a;
    let db = 1usize << (n - n_a);
    let mut rho = vec![vec![0.0; da]; da];
    for (a1, row) in rho.iter_mut().enumerate() {
        for (a2, slot) in row.iter_mut().enumerate() {
            *slot = (0..db)
                .map(|b| psi[a1 | (b << n_a)] * psi[a2 | (b << n_a)])
                .sum();
        }
    }
    rho
}

/// `rho` projected onto the Dicke states of its `n_a` qubits.
pub fn dicke_block(rho: &[Vec<f64>], n_a: usize) -> Vec<Vec<f64>> {
    let basis: Vec<Vec<f64>> = (0..=n_a).map(|q| dicke_vector(n_a, q)).collect();
    let images: Vec<Vec<f64>> = basis
        .iter()
        .map(|v| rho.iter().map(|row| dot(row, v)).collect())
        .collect();
    basis
        .iter()
        .map(|bra| images.iter().map(|img| dot(bra, img)).collect())
        .collect()
}

/// Cyclic Jacobi eigenvalue iteration; returns ascending eigenvalues.
pub fn jacobi_eigenvalues(matrix: &[Vec<f64>]) -> Vec<f64> {
    let n = matrix.len();
    let mut a: Vec<Vec<f64>> = matrix.to_vec();
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum();
        let scale: f64 = (0..n).map(|i| a[i][i] * a[i][i]).sum::<f64>() + off;
        if off <= 1e-30 * scale.max(f64::MIN_POSITIVE) {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q] == 0.0 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut values: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    values.sort_by(f64::total_cmp);
    values
}

/// Number of eigenvalues of the tridiagonal `(d, e)` below `x` (Sturm count).
pub fn sturm_count(d: &[f64], e: &[f64], x: f64) -> usize {
    let mut count = 0;
    let mut q = 1.0;
    for i in 0..d.len() {
        let e2 = if i == 0 { 0.0 } else { e[i - 1] * e[i - 1] };
        q = d[i] - x - if i == 0 { 0.0 } else { e2 / q };
        if q == 0.0 {
            q = -f64::EPSILON * (d[i].abs() + x.abs()).max(f64::MIN_POSITIVE);
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// All eigenvalues of a symmetric tridiagonal matrix by bisection.
pub fn sturm_eigenvalues(d: &[f64], e: &[f64]) -> Vec<f64> {
    let n = d.len();
    let radius = (0..n)
        .map(|i| {
            let left = if i > 0 { e[i - 1].abs() } else { 0.0 };
            let right = if i + 1 < n { e[i].abs() } else { 0.0 };
            d[i].abs() + left + right
        })
        .fold(0.0, f64::max)
        + 1.0;
    (0..n)
        .map(|k| {
            let (mut lo, mut hi) = (-radius, radius);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if mid == lo || mid == hi {
                    break;
                }
                if sturm_count(d, e, mid) > k {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            0.5 * (lo + hi)
        })
        .collect()
}

/// Neumaier-compensated `log2 C(n, k)` as `sum_{i=1}^{k} log2((n-k+i)/i)`.
pub fn log2_binomial_neumaier(n: u64, k: u64) -> f64 {
    let k = k.min(n - k);
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for i in 1..=k {
        let term = ((n - k + i) as f64 / i as f64).log2();
        let t = sum + term;
        if sum.abs() >= term.abs() {
            comp += (sum - t) + term;
        } else {
            comp += (term - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// `-sum p log2 p` over positive entries.
pub fn shannon(values: &[f64]) -> f64 {
    -values
        .iter()
        .filter(|&&p| p > 1e-300)
        .map(|&p| p * p.log2())
        .sum::<f64>()
}

/// Central-difference Jacobian of `f` at `x`.
pub fn finite_difference_jacobian(f: impl Fn([f64; 3]) -> [f64; 3], x: [f64; 3]) -> [[f64; 3]; 3] {
    let h = 1e-6;
    let mut jac = [[0.0; 3]; 3];
    for col in 0..3 {
        let mut plus = x;
        let mut minus = x;
        plus[col] += h;
        minus[col] -= h;
        let (fp, fm) = (f(plus), f(minus));
        for row in 0..3 {
            jac[row][col] = (fp[row] - fm[row]) / (2.0 * h);
        }
    }
    jac
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}
