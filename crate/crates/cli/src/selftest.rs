//! Quick end-to-end checks against independent dense references.

use std::f64::consts::PI;

use fflcu::gaussian::build_trig_gaussian;
use fflcu::lcu::{apply_lcu, CoefficientScheme, LcuBackend, LcuPlan};
use fflcu::pricing::{
    black_scholes_closed_form, price_european_basket, resource_estimate, BasketSpec, OptionKind,
    PricingConfig,
};
use fflcu::sim::{DiagonalGenerator, QuantumState};
use fflcu::spectral::{apply_dtft, evolve_drift, make_grid};
use fflcu::Complex64;

use crate::output::Table;
use crate::params::ParamSpec;
use crate::CliError;

pub const SELF_TEST: &[ParamSpec] = &[];

type Check = (&'static str, fn() -> Result<(bool, String), CliError>);

fn basis(len: usize, j: usize) -> Vec<Complex64> {
    let mut e = vec![Complex64::new(0.0, 0.0); len];
    e[j] = Complex64::new(1.0, 0.0);
    e
}

fn dtft() -> Result<(bool, String), CliError> {
    let mut worst = 0.0f64;
    for n in 2..=6 {
        let g = make_grid(n, 1.0)?;
        let half = (g.points / 2) as f64;
        for j in 0..g.points {
            let mut s = QuantumState::normalized_from("x", &basis(g.points, j))?;
            apply_dtft(&mut s, "x", &g, false)?;
            for (k, a) in s.amplitudes().iter().enumerate() {
                let phase = -2.0 * PI * (k as f64 - half) * (j as f64 - half) / g.points as f64;
                let want = Complex64::cis(phase) / (g.points as f64).sqrt();
                worst = worst.max((a - want).norm());
            }
        }
    }
    Ok((worst < 1e-10, format!("max deviation {worst:.2e}")))
}

fn lcu() -> Result<(bool, String), CliError> {
    let eig: Vec<f64> = (0..16).map(|k| ((k * 7) % 16) as f64 / 4.0).collect();
    let psi: Vec<Complex64> = (0..16)
        .map(|k| Complex64::new((k as f64).sin() + 1.5, (k as f64 * 0.3).cos()))
        .collect();
    let state = QuantumState::normalized_from("x", &psi)?;
    let gen = DiagonalGenerator::new(eig.clone())?;
    let mut worst = 0.0f64;
    for scheme in [
        CoefficientScheme::Exact,
        CoefficientScheme::Lorentzian,
        CoefficientScheme::IntegratedLorentzian,
    ] {
        let plan = LcuPlan::new(0.8, 4.0, 5, scheme)?;
        let half = plan.coefficients.len() as i64 / 2;
        let dense: Vec<Complex64> = state
            .amplitudes()
            .iter()
            .zip(&eig)
            .map(|(a, l)| {
                let t: Complex64 = plan
                    .coefficients
                    .iter()
                    .enumerate()
                    .map(|(i, c)| c * Complex64::cis(-PI * (i as i64 - half) as f64 * l / 4.0))
                    .sum();
                a * t
            })
            .collect();
        let nrm = dense.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        for backend in [LcuBackend::Statevector, LcuBackend::Fibered] {
            let (out, _) = apply_lcu(&state, "x", &gen, &plan, backend)?;
            for (a, b) in out.amplitudes().iter().zip(&dense) {
                worst = worst.max((a - b / nrm).norm());
            }
        }
    }
    Ok((worst < 1e-10, format!("max deviation {worst:.2e}")))
}

fn drift() -> Result<(bool, String), CliError> {
    let g = make_grid(5, 1.0)?;
    let f = |x: f64| 0.5 + (2.0 * PI * 3.0 * g.delta_f * x).cos();
    let samples: Vec<Complex64> = g
        .positions()
        .iter()
        .map(|&x| Complex64::new(f(x), 0.0))
        .collect();
    let nrm = samples.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    let mut s = QuantumState::normalized_from("x", &samples)?;
    evolve_drift(&mut s, "x", 3.0 * g.delta, &g)?;
    let worst = s
        .amplitudes()
        .iter()
        .zip(g.positions())
        .map(|(a, x)| (a - f(x - 3.0 * g.delta) / nrm).norm())
        .fold(0.0, f64::max);
    Ok((worst < 1e-8, format!("max deviation {worst:.2e}")))
}

fn qubit_table() -> Result<(bool, String), CliError> {
    let got = [
        resource_estimate(1, 0.1, 1.0),
        resource_estimate(1, 0.1, 100.0),
        resource_estimate(3, 0.01, 1.0),
        resource_estimate(3, 0.01, 100.0),
    ];
    Ok((got == [30, 40, 140, 164], format!("{got:?}")))
}

fn trig_gaussian() -> Result<(bool, String), CliError> {
    let g = build_trig_gaussian(0.5, 1e-3)?;
    let (err, l1) = (g.sup_error(), g.coefficient_l1());
    Ok((
        err <= 1e-3 && l1 <= 1.0,
        format!("sup error {err:.2e}, Σ|a| {l1:.6}"),
    ))
}

fn european() -> Result<(bool, String), CliError> {
    let spec = BasketSpec::single(1.0, 1.0, 0.05, 0.0, 0.2, 1.0, OptionKind::Call);
    let v = price_european_basket(&spec, &PricingConfig::default())?.value;
    let bs = black_scholes_closed_form(1.0, 1.0, 0.05, 0.0, 0.2, 1.0, OptionKind::Call);
    let rel = (v - bs) / bs;
    Ok((
        rel.abs() <= 0.01,
        format!("value {v:.6}, closed form {bs:.6}"),
    ))
}

const CHECKS: &[Check] = &[
    ("dtft_matrix", dtft),
    ("lcu_dense_sum", lcu),
    ("drift_shift", drift),
    ("qubit_table", qubit_table),
    ("trig_gaussian", trig_gaussian),
    ("european_call", european),
];

/// The table plus whether every check passed.
pub fn run() -> Result<(Table, bool), CliError> {
    let mut table = Table::new(&["check", "pass", "detail"]);
    let mut all = true;
    for (name, check) in CHECKS {
        let (pass, detail) = check()?;
        all &= pass;
        table.push(vec![(*name).into(), pass.into(), detail.into()]);
    }
    Ok((table, all))
}
