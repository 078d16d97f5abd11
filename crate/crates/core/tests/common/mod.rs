//! Test-side oracles built from explicit dense matrices, independent of the circuit code.
#![allow(dead_code)]

use std::f64::consts::PI;

use fflcu::lcu::LcuPlan;
use fflcu::spectral::GridSpec;
use fflcu::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Matrix = Vec<Vec<Complex64>>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_vector(rng: &mut ChaCha8Rng, len: usize) -> Vec<Complex64> {
    let v: Vec<Complex64> = (0..len)
        .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    normalize(&v)
}

pub fn normalize(v: &[Complex64]) -> Vec<Complex64> {
    let n = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    v.iter().map(|a| a / n).collect()
}

pub fn real(v: &[f64]) -> Vec<Complex64> {
    v.iter().map(|&x| Complex64::new(x, 0.0)).collect()
}

/// `(1/√N) e^{-2πi f_k x_j}` with positions measured from the grid center.
pub fn dtft_matrix(grid: &GridSpec) -> Matrix {
    let n = grid.points;
    let half = (n / 2) as f64;
    (0..n)
        .map(|k| {
            (0..n)
                .map(|j| {
                    let f = (k as f64 - half) * grid.delta_f;
                    let x = (j as f64 - half) * grid.delta;
                    Complex64::cis(-2.0 * PI * f * x) / (n as f64).sqrt()
                })
                .collect()
        })
        .collect()
}

pub fn adjoint(m: &Matrix) -> Matrix {
    let n = m.len();
    (0..n)
        .map(|i| (0..n).map(|j| m[j][i].conj()).collect())
        .collect()
}

pub fn mat_vec(m: &Matrix, v: &[Complex64]) -> Vec<Complex64> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

pub fn diag(d: &[Complex64]) -> Matrix {
    let n = d.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        d[i]
                    } else {
                        Complex64::new(0.0, 0.0)
                    }
                })
                .collect()
        })
        .collect()
}

/// `Σ_ℓ c_ℓ U^ℓ` as a dense matrix, with `U = diag(e^{-iπλ/P})` and its powers built by
/// repeated multiplication.
pub fn lcu_operator_matrix(plan: &LcuPlan, eigenvalues: &[f64]) -> Matrix {
    let n = eigenvalues.len();
    let u: Vec<Complex64> = eigenvalues
        .iter()
        .map(|l| Complex64::cis(-PI * l / plan.p_bound))
        .collect();
    let terms = plan.coefficients.len();
    let half = terms / 2;
    let mut total = vec![Complex64::new(0.0, 0.0); n];
    let mut power = vec![Complex64::new(1.0, 0.0); n];
    for l in 0..(terms - half) {
        let c = plan.coefficients[half + l];
        total.iter_mut().zip(&power).for_each(|(t, p)| *t += p * c);
        power.iter_mut().zip(&u).for_each(|(p, z)| *p *= z);
    }
    let mut power: Vec<Complex64> = u.iter().map(|z| z.conj()).collect();
    for l in 1..=half {
        let c = plan.coefficients[half - l];
        total.iter_mut().zip(&power).for_each(|(t, p)| *t += p * c);
        power.iter_mut().zip(&u).for_each(|(p, z)| *p *= z.conj());
    }
    diag(&total)
}

pub fn max_abs_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

pub fn l2_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

pub fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
}

/// Least-squares slope of `log y` against `log x`.
pub fn log_log_slope(x: &[f64], y: &[f64]) -> f64 {
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = lx.iter().map(|a| (a - mx).powi(2)).sum();
    sxy / sxx
}

/// Formats to three significant figures as `d.dd×10^e` mantissa/exponent pair.
pub fn three_sig_figs(x: f64) -> (f64, i32) {
    let e = x.abs().log10().floor() as i32;
    let mut mant = (x / 10f64.powi(e) * 100.0).round() / 100.0;
    let mut e = e;
    if mant.abs() >= 10.0 {
        mant /= 10.0;
        e += 1;
    }
    (mant, e)
}
