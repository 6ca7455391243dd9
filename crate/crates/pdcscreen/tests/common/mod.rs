//! Independent definitional oracles.
//!
//! Everything here is written straight from the estimator definitions with
//! plain loops (the triple sum is a literal O(n^3) loop) and deliberately
//! shares no code with the crate's centered-matrix implementation.
#![allow(dead_code)] // each test binary uses its own subset

use ndarray::Array2;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn oracle_distances(sample: &Array2<f64>) -> Vec<Vec<f64>> {
    let n = sample.nrows();
    let mut d = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut s = 0.0;
            for c in 0..sample.ncols() {
                let diff = sample[[i, c]] - sample[[j, c]];
                s += diff * diff;
            }
            d[i][j] = s.sqrt();
        }
    }
    d
}

/// `S1 + S2 - 2*S3` with the triple sum written out literally.
pub fn oracle_dcov2(a: &[Vec<f64>], b: &[Vec<f64>]) -> f64 {
    let n = a.len();
    let nf = n as f64;
    let mut s1 = 0.0;
    let mut sum_a = 0.0;
    let mut sum_b = 0.0;
    for i in 0..n {
        for j in 0..n {
            s1 += a[i][j] * b[i][j];
            sum_a += a[i][j];
            sum_b += b[i][j];
        }
    }
    s1 /= nf * nf;
    let s2 = (sum_a / (nf * nf)) * (sum_b / (nf * nf));
    let mut s3 = 0.0;
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                s3 += a[i][j] * b[i][l];
            }
        }
    }
    s3 /= nf * nf * nf;
    s1 + s2 - 2.0 * s3
}

pub fn oracle_dcor(a: &[Vec<f64>], b: &[Vec<f64>]) -> f64 {
    let duv = oracle_dcov2(a, b).max(0.0);
    let duu = oracle_dcov2(a, a).max(0.0);
    let dvv = oracle_dcov2(b, b).max(0.0);
    let denom = (duu * dvv).sqrt();
    if denom <= 1e-12 * mean(a).powi(2) * mean(b).powi(2)
        || duu <= 1e-12 * mean(a).powi(2).max(f64::MIN_POSITIVE)
        || dvv <= 1e-12 * mean(b).powi(2).max(f64::MIN_POSITIVE)
    {
        return 0.0;
    }
    (duv / denom).sqrt()
}

fn mean(a: &[Vec<f64>]) -> f64 {
    let n = a.len() as f64;
    a.iter().flatten().sum::<f64>() / (n * n)
}

/// Per-entry U-centering formula.
pub fn oracle_ucenter(a: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = a.len();
    let nf = n as f64;
    let mut out = vec![vec![0.0; n]; n];
    let total: f64 = a.iter().flatten().sum();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let row: f64 = a[i].iter().sum();
            let col: f64 = (0..n).map(|k| a[k][j]).sum();
            out[i][j] = a[i][j] - row / (nf - 2.0) - col / (nf - 2.0)
                + total / ((nf - 1.0) * (nf - 2.0));
        }
    }
    out
}

fn oracle_u_inner(a: &[Vec<f64>], b: &[Vec<f64>]) -> f64 {
    let n = a.len();
    let nf = n as f64;
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[i][j] * b[i][j];
            }
        }
    }
    s / (nf * (nf - 3.0))
}

pub fn oracle_rstar(a: &[Vec<f64>], b: &[Vec<f64>]) -> f64 {
    let ua = oracle_ucenter(a);
    let ub = oracle_ucenter(b);
    let saa = oracle_u_inner(&ua, &ua);
    let sbb = oracle_u_inner(&ub, &ub);
    if saa <= 1e-12 * mean(a).powi(2).max(f64::MIN_POSITIVE)
        || sbb <= 1e-12 * mean(b).powi(2).max(f64::MIN_POSITIVE)
    {
        return 0.0;
    }
    oracle_u_inner(&ua, &ub) / (saa * sbb).sqrt()
}

/// Partial distance correlation assembled from the definitional marginals.
pub fn oracle_pdcor(
    a: &[Vec<f64>],
    b: &[Vec<f64>],
    z: &[Vec<f64>],
    u_centered: bool,
) -> f64 {
    let (c_uv, c_uz, c_vz) = if u_centered {
        (oracle_rstar(a, b), oracle_rstar(a, z), oracle_rstar(b, z))
    } else {
        let sq = |x: f64| x * x;
        (sq(oracle_dcor(a, b)), sq(oracle_dcor(a, z)), sq(oracle_dcor(b, z)))
    };
    let fu = 1.0 - c_uz * c_uz;
    let fv = 1.0 - c_vz * c_vz;
    if fu < 1e-12 || fv < 1e-12 {
        return 0.0;
    }
    (c_uv - c_uz * c_vz) / (fu.sqrt() * fv.sqrt())
}

pub fn random_sample(n: usize, dims: usize, rng: &mut ChaCha8Rng) -> Array2<f64> {
    Array2::from_shape_fn((n, dims), |_| rng.random_range(-2.0..2.0))
}

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    let scale = a.abs().max(b.abs()).max(1.0);
    (a - b).abs() <= tol * scale
}
