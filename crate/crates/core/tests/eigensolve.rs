mod common;

use common::*;
use proptest::prelude::*;
use rand::Rng;
use spinlab::eigensolve::*;

fn random_symmetric(n: usize, seed: u64) -> Matrix {
    let mut r = rng(seed);
    let mut m = Matrix::zeros(n);
    for i in 0..n {
        for j in 0..=i {
            let v: f64 = r.gen_range(-1.0..1.0);
            m.set(i, j, v);
            m.set(j, i, v);
        }
    }
    m
}

fn rows(m: &Matrix) -> Vec<Vec<f64>> {
    (0..m.dim()).map(|i| m.row(i).to_vec()).collect()
}

fn max_residual(m: &Matrix, dec: &EigenDecomposition) -> f64 {
    (0..m.dim())
        .map(|k| {
            let v = dec.vector(k).unwrap();
            let mv = m.mul_vec(v);
            mv.iter()
                .zip(v)
                .map(|(a, b)| (a - dec.values[k] * b).abs())
                .fold(0.0, f64::max)
        })
        .fold(0.0, f64::max)
}

#[test]
fn constant_diagonal_gives_identity_vectors() {
    let dec = eig_tridiagonal(&[2.5; 6], &[0.0; 5], true).unwrap();
    assert!(dec.values.iter().all(|&v| v == 2.5));
    for k in 0..6 {
        let v = dec.vector(k).unwrap();
        assert_eq!(v.iter().filter(|&&x| x == 1.0).count(), 1);
        assert_eq!(v.iter().filter(|&&x| x == 0.0).count(), 5);
    }
}

#[test]
fn two_by_two_closed_form() {
    let dec = eig_tridiagonal(&[0.3, 0.3], &[-1.2], true).unwrap();
    assert!((dec.values[0] - (0.3 - 1.2)).abs() < 1e-15);
    assert!((dec.values[1] - (0.3 + 1.2)).abs() < 1e-15);
}

#[test]
fn tridiagonal_matches_sturm_bisection() {
    let mut r = rng(7);
    let n = 200;
    let d: Vec<f64> = (0..n).map(|_| r.gen_range(-2.0..2.0)).collect();
    let e: Vec<f64> = (0..n - 1).map(|_| r.gen_range(-1.0..1.0)).collect();
    let dec = eig_tridiagonal(&d, &e, true).unwrap();
    let oracle = sturm_eigenvalues(&d, &e);
    assert!(max_abs_diff(&dec.values, &oracle) < 1e-10);
    assert!(dec.orthonormality_error().unwrap() < 1e-10);
}

#[test]
fn dense_identity_and_projector() {
    let dec = eig_dense_symmetric(&Matrix::identity(17), true).unwrap();
    assert!(dec.values.iter().all(|&v| (v - 1.0).abs() < 1e-15));
    let v = random_unit(50, 3);
    let p = Matrix::from_fn(50, |i, j| v[i] * v[j]);
    let dec = eig_dense_symmetric(&p, false).unwrap();
    assert!((dec.values[49] - 1.0).abs() < 1e-11);
    assert!(dec.values[..49].iter().all(|x| x.abs() < 1e-11));
}

#[test]
fn dense_matches_jacobi_oracle() {
    let m = random_symmetric(100, 11);
    let dec = eig_dense_symmetric(&m, true).unwrap();
    let oracle = jacobi_eigenvalues(&rows(&m));
    assert!(max_abs_diff(&dec.values, &oracle) < 1e-9);
    assert!(dec.orthonormality_error().unwrap() < 1e-10);
    assert!(max_residual(&m, &dec) < 1e-9 * m.max_abs() * 100.0);
}

#[test]
fn dense_preserves_trace_and_frobenius_norm() {
    let m = random_symmetric(150, 5);
    let dec = eig_dense_symmetric(&m, false).unwrap();
    let trace: f64 = dec.values.iter().sum();
    let frob2: f64 = m.as_slice().iter().map(|x| x * x).sum();
    let eig2: f64 = dec.values.iter().map(|x| x * x).sum();
    assert!(((trace - m.trace()) / m.trace().abs().max(1.0)).abs() < 1e-9);
    assert!(((eig2 - frob2) / frob2).abs() < 1e-9);
}

#[test]
fn repeated_solves_are_bit_identical() {
    let m = random_symmetric(60, 9);
    let a = eig_dense_symmetric(&m, true).unwrap();
    let b = eig_dense_symmetric(&m, true).unwrap();
    assert_eq!(a, b);
}

#[test]
fn sign_rule_makes_largest_component_positive() {
    let m = random_symmetric(40, 21);
    let dec = eig_dense_symmetric(&m, true).unwrap();
    for k in 0..40 {
        let v = dec.vector(k).unwrap();
        let big = v.iter().fold(0.0f64, |acc, x| acc.max(x.abs()));
        let first = v.iter().find(|x| x.abs() == big).unwrap();
        assert!(*first > 0.0);
    }
}

#[test]
fn asymmetric_input_is_rejected() {
    let mut m = Matrix::identity(3);
    m.set(0, 1, 0.5);
    assert!(eig_dense_symmetric(&m, false).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn tridiagonal_agrees_with_dense_path(n in 1usize..60, seed in 0u64..10_000) {
        let mut r = rng(seed);
        let d: Vec<f64> = (0..n).map(|_| r.gen_range(-3.0..3.0)).collect();
        let e: Vec<f64> = (0..n.saturating_sub(1)).map(|_| r.gen_range(-1.0..1.0)).collect();
        let dense = Matrix::from_fn(n, |i, j| {
            if i == j { d[i] } else if i + 1 == j { e[i] } else if j + 1 == i { e[j] } else { 0.0 }
        });
        let a = eig_tridiagonal(&d, &e, true).unwrap();
        let b = eig_dense_symmetric(&dense, true).unwrap();
        prop_assert!(max_abs_diff(&a.values, &b.values) < 1e-12 * (1.0 + dense.max_abs()) * n as f64);
        prop_assert!(a.orthonormality_error().unwrap() < 1e-10);
        prop_assert!(max_residual(&dense, &a) < 1e-9 * dense.max_abs().max(1e-300) * n as f64);
    }
}
