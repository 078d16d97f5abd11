mod common;

use std::sync::Arc;

use common::*;
use fflcu::lcu::{CoefficientScheme, LcuBackend, LcuPlan};
use fflcu::oracles::{
    classical_spectral_evolve, exact_cosine_solution, gaussian_convolution_solution, CosineSeries,
    Quadrature,
};
use fflcu::spectral::{
    diffusion_generator, evolve_diffusion, evolve_drift, evolve_heat_problem, joint_positions,
    make_grid, HeatAxis, HeatProblem, InitialCondition,
};
use fflcu::state_prep::inject_real;
use fflcu::Complex64;

/// Worst deviation of the plan's scalar response from `e^{-βλ}` over the grid spectrum.
fn transfer_gap(plan: &LcuPlan, eigenvalues: &[f64]) -> f64 {
    eigenvalues
        .iter()
        .map(|&l| (plan.transfer(l) - Complex64::new((-plan.beta * l).exp(), 0.0)).norm())
        .fold(0.0, f64::max)
}

#[test]
fn circuit_matches_dense_spectral_solver_on_random_states() {
    let grid = make_grid(6, 1.0).unwrap();
    let (gen, p_min) = diffusion_generator(&grid);
    let mut r = rng(20);
    for trial in 0..20 {
        use rand::Rng;
        let kappa = r.random_range(1e-4..2e-3);
        let drift = r.random_range(-0.2..0.2);
        let plan = LcuPlan::new(kappa, p_min, 14, CoefficientScheme::Exact).unwrap();
        let samples = random_vector(&mut r, grid.points);
        let axis = HeatAxis {
            name: "x".into(),
            grid,
            kappa,
            drift,
        };
        let problem = HeatProblem {
            axes: vec![axis],
            initial: InitialCondition::Samples(samples.clone()),
        };
        let sol =
            evolve_heat_problem(&problem, std::slice::from_ref(&plan), LcuBackend::Auto).unwrap();
        let want = classical_spectral_evolve(&samples, kappa, drift, &grid).unwrap();
        let tol = transfer_gap(&plan, &gen.eigenvalues) * 1.000001 + 1e-12;
        let err = l2_diff(&sol.unnormalized(), &want);
        assert!(err <= tol, "trial {trial}: {err:e} > {tol:e}");
    }
}

#[test]
fn dense_solver_is_exact_on_band_limited_data() {
    let grid = make_grid(6, 1.0).unwrap();
    let series = CosineSeries::new(1.0, vec![(2.0, 0.5), (5.5, -0.25), (11.0, 0.125)]);
    assert!(series.resolvable_on(&grid));
    let (kappa, t) = (0.3, 0.01);
    let got =
        classical_spectral_evolve(&real(&series.sample(&grid)), kappa * t, 0.0, &grid).unwrap();
    let want = exact_cosine_solution(&series, t, kappa).sample(&grid);
    assert!(max_abs_diff(&got, &real(&want)) < 1e-10);
}

#[test]
fn quadrature_converges_at_second_order_or_better() {
    let series = CosineSeries::new(0.5, vec![(1.5, 1.0), (3.0, 0.5)]);
    let (kappa, t) = (0.02, 0.5);
    let exact = exact_cosine_solution(&series, t, kappa);
    let points: Vec<f64> = (0..17).map(|i| -1.0 + i as f64 / 8.0).collect();
    let truth: Vec<f64> = points.iter().map(|&x| exact.eval(x)).collect();
    let f = |x: f64| series.eval(x);
    let errs: Vec<f64> = [1usize, 2, 4]
        .iter()
        .map(|&panels| {
            let q = Quadrature {
                panels_per_sd: panels,
                half_width_sds: 12.0,
                breakpoints: vec![],
            };
            let got = gaussian_convolution_solution(&f, &points, t, kappa, &q).unwrap();
            got.iter()
                .zip(&truth)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max)
        })
        .collect();
    let order = (errs[0] / errs[2]).log2() / 2.0;
    assert!(order >= 2.0, "errors {errs:?}, order {order}");
}

#[test]
fn drift_paths_agree_on_band_limited_data() {
    let grid = make_grid(6, 1.0).unwrap();
    let series = CosineSeries::new(0.25, vec![(3.0, 1.0), (7.5, 0.5)]);
    let gamma = 0.1234;
    let mut phase_path = inject_real(&series.sample(&grid)).unwrap();
    evolve_drift(&mut phase_path, "q", gamma, &grid).unwrap();
    let shifted: Vec<f64> = grid
        .positions()
        .iter()
        .map(|x| series.eval(x - gamma))
        .collect();
    let analytic = normalize(&real(&shifted));
    assert!(max_abs_diff(phase_path.amplitudes(), &analytic) < 1e-8);
    assert!((phase_path.norm() - 1.0).abs() < 1e-12);
}

#[test]
fn separable_two_dimensional_problem() {
    let gx = make_grid(5, 1.0).unwrap();
    let gy = make_grid(4, 2.0).unwrap();
    let fx = CosineSeries::new(1.0, vec![(2.0, 0.5)]);
    let fy = CosineSeries::new(0.5, vec![(1.25, 1.0)]);
    let (kx, ky) = (2e-3, 5e-3);
    let (dx, dy) = (0.05, -0.1);
    let axes = vec![
        HeatAxis {
            name: "x".into(),
            grid: gx,
            kappa: kx,
            drift: dx,
        },
        HeatAxis {
            name: "y".into(),
            grid: gy,
            kappa: ky,
            drift: dy,
        },
    ];
    let (fx2, fy2) = (fx.clone(), fy.clone());
    let initial = InitialCondition::Function(Arc::new(move |p: &[f64]| {
        Complex64::new(fx2.eval(p[0]) * fy2.eval(p[1]), 0.0)
    }));
    let plans: Vec<LcuPlan> = axes
        .iter()
        .map(|a| {
            let (_, p) = diffusion_generator(&a.grid);
            LcuPlan::new(a.kappa, p, 14, CoefficientScheme::Exact).unwrap()
        })
        .collect();
    let problem = HeatProblem {
        axes: axes.clone(),
        initial,
    };
    let sol = evolve_heat_problem(&problem, &plans, LcuBackend::Auto).unwrap();

    let ex = exact_cosine_solution(&fx, kx, 1.0);
    let ey = exact_cosine_solution(&fy, ky, 1.0);
    let want: Vec<Complex64> = joint_positions(&axes)
        .iter()
        .map(|p| Complex64::new(ex.eval(p[0] - dx) * ey.eval(p[1] - dy), 0.0))
        .collect();
    let got = sol.unnormalized();
    let err = max_abs_diff(&got, &want);
    assert!(err < 1e-3, "max error {err:e}");
    assert!(sol.success_probability > 0.0 && sol.success_probability <= 1.0);
    assert!((sol.success_probability - sol.axis_success.iter().product::<f64>()).abs() < 1e-15);

    // swapping the diffusion order leaves the state unchanged
    let (_, px) = diffusion_generator(&gx);
    let (_, py) = diffusion_generator(&gy);
    let (a, _) = evolve_diffusion(&sol.state, "y", ky, &gy, &plans[1], LcuBackend::Auto).unwrap();
    let (a, _) = evolve_diffusion(&a, "x", kx, &gx, &plans[0], LcuBackend::Auto).unwrap();
    let (b, _) = evolve_diffusion(&sol.state, "x", kx, &gx, &plans[0], LcuBackend::Auto).unwrap();
    let (b, _) = evolve_diffusion(&b, "y", ky, &gy, &plans[1], LcuBackend::Auto).unwrap();
    assert!(max_abs_diff(a.amplitudes(), b.amplitudes()) < 1e-10);
    assert!(px > 0.0 && py > 0.0);
}

#[test]
fn diffusion_never_increases_the_norm() {
    let grid = make_grid(6, 1.0).unwrap();
    let (_, p_min) = diffusion_generator(&grid);
    let mut r = rng(9);
    for scheme in [
        CoefficientScheme::Exact,
        CoefficientScheme::IntegratedLorentzian,
    ] {
        let plan = LcuPlan::new(5e-3, p_min, 12, scheme).unwrap();
        let samples = random_vector(&mut r, grid.points);
        let problem = HeatProblem {
            axes: vec![HeatAxis {
                name: "x".into(),
                grid,
                kappa: 5e-3,
                drift: 0.0,
            }],
            initial: InitialCondition::Samples(samples),
        };
        let sol = evolve_heat_problem(&problem, &[plan], LcuBackend::Auto).unwrap();
        assert!(norm(&sol.unnormalized()) <= 1.0 + 1e-12, "{scheme}");
    }
}
