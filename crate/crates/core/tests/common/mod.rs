//! Reference implementations used as test oracles. None of these call into
//! the library's linear algebra.
#![allow(dead_code)]

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_chacha::rand_core::SeedableRng;

use svcq::dataset::{synth_blobs, BlobSpec};
use svcq::qsim::StateVector;
use svcq::Dataset;

pub mod properties;

pub type C = Complex64;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn two_blobs(seed: u64) -> Dataset {
    synth_blobs(seed, &[BlobSpec::new(vec![0.0, 0.0], 0.5, 30), BlobSpec::new(vec![10.0, 10.0], 0.5, 30)]).unwrap()
}

/// Gaussian elimination with partial pivoting on a row-major copy.
pub fn dense_solve(a: &[Vec<f64>], b: &[f64]) -> Vec<f64> {
    let n = b.len();
    let mut m: Vec<Vec<f64>> = a.iter().zip(b).map(|(row, &r)| row.iter().copied().chain([r]).collect()).collect();
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs())).unwrap();
        m.swap(col, pivot);
        assert!(m[col][col].abs() > 1e-300, "singular oracle system");
        for row in (col + 1)..n {
            let f = m[row][col] / m[col][col];
            if f != 0.0 {
                for k in col..=n {
                    m[row][k] -= f * m[col][k];
                }
            }
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let s: f64 = ((row + 1)..n).map(|k| m[row][k] * x[k]).sum();
        x[row] = (m[row][n] - s) / m[row][row];
    }
    x
}

/// Bordered LS-SVM system built entry by entry.
pub fn bordered(k: &[Vec<f64>], gamma: f64) -> Vec<Vec<f64>> {
    let m = k.len();
    let mut f = vec![vec![0.0; m + 1]; m + 1];
    for i in 0..m {
        f[0][i + 1] = 1.0;
        f[i + 1][0] = 1.0;
        for j in 0..m {
            f[i + 1][j + 1] = k[i][j];
        }
        f[i + 1][i + 1] += 1.0 / gamma;
    }
    f
}

pub fn gaussian(x: &[f64], y: &[f64], sigma: f64) -> f64 {
    (-sigma * x.iter().zip(y).map(|(a, b)| (a - b) * (a - b)).sum::<f64>()).exp()
}

pub fn dot(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

/// Cyclic Jacobi eigenvalues of a real symmetric matrix, ascending.
pub fn jacobi_eigenvalues(a: &[Vec<f64>]) -> Vec<f64> {
    let n = a.len();
    let mut m = a.to_vec();
    for _sweep in 0..100 {
        let off: f64 = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).map(|(i, j)| m[i][j] * m[i][j]).sum();
        if off < 1e-30 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                if m[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (m[q][q] - m[p][p]) / (2.0 * m[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (mkp, mkq) = (m[k][p], m[k][q]);
                    m[k][p] = c * mkp - s * mkq;
                    m[k][q] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let (mpk, mqk) = (m[p][k], m[q][k]);
                    m[p][k] = c * mpk - s * mqk;
                    m[q][k] = s * mpk + c * mqk;
                }
            }
        }
    }
    let mut e: Vec<f64> = (0..n).map(|i| m[i][i]).collect();
    e.sort_by(f64::total_cmp);
    e
}

/// `exp(A)` by scaling and squaring of a truncated Taylor series.
pub fn expm_taylor(a: &DMatrix<C>) -> DMatrix<C> {
    let n = a.nrows();
    let norm: f64 = a.iter().map(|v| v.norm()).sum::<f64>().max(1e-300);
    let squarings = (norm.log2().ceil().max(0.0) as u32) + 4;
    let scaled = a / C::new(2f64.powi(squarings as i32), 0.0);
    let mut term = DMatrix::<C>::identity(n, n);
    let mut sum = term.clone();
    for k in 1..30 {
        term = &term * &scaled / C::new(k as f64, 0.0);
        sum += &term;
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum
}

/// `exp(−i·t·H)` through the Taylor oracle.
pub fn unitary(h: &DMatrix<C>, t: f64) -> DMatrix<C> {
    expm_taylor(&(h * C::new(0.0, -t)))
}

/// Largest singular value via power iteration on `AᴴA`.
pub fn spectral_norm(a: &DMatrix<C>) -> f64 {
    let n = a.ncols();
    let ata = a.adjoint() * a;
    let mut v = nalgebra::DVector::<C>::from_fn(n, |i, _| C::new(1.0 + i as f64 * 0.37, 0.1 * i as f64));
    let mut lambda = 0.0;
    for _ in 0..500 {
        let w = &ata * &v;
        let norm = w.norm();
        if norm == 0.0 {
            return 0.0;
        }
        lambda = norm;
        v = w / C::new(norm, 0.0);
    }
    lambda.sqrt()
}

pub fn random_hermitian(r: &mut ChaCha8Rng, n: usize, scale: f64) -> DMatrix<C> {
    let a = DMatrix::<C>::from_fn(n, n, |_, _| C::new(r.random_range(-1.0..1.0), r.random_range(-1.0..1.0)));
    (&a + a.adjoint()) * C::new(0.5 * scale, 0.0)
}

pub fn random_unit(r: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..n).map(|_| r.random_range(-1.0..1.0)).collect();
        let norm = dot(&v, &v).sqrt();
        if norm > 1e-3 {
            return v.iter().map(|x| x / norm).collect();
        }
    }
}

pub fn random_state(r: &mut ChaCha8Rng, n: usize) -> StateVector {
    let v: Vec<C> = (0..n).map(|_| C::new(r.random_range(-1.0..1.0), r.random_range(-1.0..1.0))).collect();
    let norm = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    StateVector::new(v.into_iter().map(|a| a / norm).collect()).unwrap()
}

/// Connected components by union-find, canonical order.
pub fn union_find_components(adj: &[Vec<bool>]) -> Vec<Vec<usize>> {
    let m = adj.len();
    let mut parent: Vec<usize> = (0..m).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut c = x;
        while p[c] != r {
            let next = p[c];
            p[c] = r;
            c = next;
        }
        r
    }
    for i in 0..m {
        for j in (i + 1)..m {
            if adj[i][j] {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 0..m {
        let root = find(&mut parent, i);
        groups.entry(root).or_default().push(i);
    }
    let mut out: Vec<Vec<usize>> = groups.into_values().collect();
    out.sort_by_key(|c| c[0]);
    out
}

/// Symmetric boolean matrix with unit diagonal and edge density `p`.
pub fn random_adjacency(r: &mut ChaCha8Rng, m: usize, p: f64) -> Vec<Vec<bool>> {
    let mut a = vec![vec![false; m]; m];
    for i in 0..m {
        a[i][i] = true;
        for j in (i + 1)..m {
            let on = r.random_bool(p);
            a[i][j] = on;
            a[j][i] = on;
        }
    }
    a
}

/// Gate-level swap test: H on the ancilla, controlled swap, H, then the
/// probability of reading the ancilla as 0.
pub fn swap_circuit_p0(psi: &[C], phi: &[C]) -> f64 {
    let d = psi.len();
    // joint |anc⟩|a⟩|b⟩, index = anc·d² + a·d + b
    let mut s = vec![C::new(0.0, 0.0); 2 * d * d];
    let h = std::f64::consts::FRAC_1_SQRT_2;
    for a in 0..d {
        for b in 0..d {
            let v = psi[a] * phi[b] * h;
            s[a * d + b] = v;
            s[d * d + a * d + b] = v;
        }
    }
    let mut swapped = s.clone();
    for a in 0..d {
        for b in 0..d {
            swapped[d * d + a * d + b] = s[d * d + b * d + a];
        }
    }
    (0..d * d).map(|i| ((swapped[i] + swapped[d * d + i]) * h).norm_sqr()).sum()
}

/// Reduced density matrix of the high-order register of a pure state.
pub fn partial_trace_low(amps: &[C], low_dim: usize) -> Vec<Vec<C>> {
    let high = amps.len() / low_dim;
    let mut rho = vec![vec![C::new(0.0, 0.0); high]; high];
    for (i, row) in rho.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = (0..low_dim).map(|k| amps[i * low_dim + k] * amps[j * low_dim + k].conj()).sum();
        }
    }
    rho
}

/// Closed-form Grover amplitude of each marked element after `r` iterations.
pub fn grover_marked_amplitude(n: usize, k: usize, r: u64) -> f64 {
    let theta = (k as f64 / n as f64).sqrt().asin();
    ((2 * r + 1) as f64 * theta).sin() / (k as f64).sqrt()
}
