//! One function per subcommand: read parameters, validate, compute, fill a table.

use fflcu::gaussian::build_trig_gaussian;
use fflcu::lcu::{lcu_operator_error, CoefficientScheme, LcuBackend, LcuPlan};
use fflcu::oracles::{
    exact_cosine_solution, gaussian_convolution_solution, CosineSeries, Quadrature,
};
use fflcu::pricing::{
    binomial_bermudan_oracle, black_scholes_closed_form, cost_ratio, price_bermudan_with_noise,
    price_european_basket, resource_estimate, resource_estimate_exact, BasketSpec, BermudanSpec,
    Gauge, OptionKind, PricingConfig,
};
use fflcu::sim::{apply_diagonal_scaling, DiagonalGenerator};
use fflcu::spectral::{
    apply_dtft, diffusion_generator, evolve_diffusion, make_grid, make_grid_centered,
};
use fflcu::state_prep::inject_real;
use fflcu::Complex64;

use crate::output::Table;
use crate::params::{param, ParamSpec, Params};
use crate::CliError;

fn bad(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

fn power_of_two_qubits(p: &Params, key: &str, max: usize) -> Result<usize, CliError> {
    let n: usize = p.get(key)?;
    if n == 0 || n > max {
        return Err(bad(format!(
            "parameter '{key}' must be in 1..={max}, got {n}"
        )));
    }
    Ok(n)
}

pub const HEAT1D: &[ParamSpec] = &[
    param("n", "5", "qubits on the spatial grid"),
    param("m", "4", "LCU ancilla qubits"),
    param("t", "0.005", "evolution time"),
    param("kappa", "1", "diffusion coefficient"),
    param("half-width", "1", "spatial half-width L of the grid"),
    param(
        "ic",
        "cosine",
        "initial condition: cosine (4 + cos 5πx + 2 cos πx; alias paper) or hat",
    ),
    param(
        "scheme",
        "integrated",
        "coefficient scheme: exact, lorentzian, integrated",
    ),
    param(
        "backend",
        "auto",
        "LCU simulation: statevector, fibered, auto",
    ),
    param(
        "p-factor",
        "1",
        "P as a multiple of the generator's largest eigenvalue",
    ),
];

pub fn heat1d(p: &Params) -> Result<Table, CliError> {
    let n = power_of_two_qubits(p, "n", 16)?;
    let m = power_of_two_qubits(p, "m", 24)?;
    let t = p.positive("t")?;
    let kappa = p.positive("kappa")?;
    let half_width = p.positive("half-width")?;
    let ic: String = p.get("ic")?;
    let scheme: CoefficientScheme = p.get("scheme")?;
    let backend: LcuBackend = p.get("backend")?;
    let p_factor = p.positive("p-factor")?;
    if p_factor < 1.0 {
        return Err(bad("p-factor must be at least 1"));
    }

    let grid = make_grid(n, half_width)?;
    let (exact, samples): (Vec<f64>, Vec<f64>) = match ic.as_str() {
        "cosine" | "paper" => {
            let series = CosineSeries::new(4.0, vec![(2.5, 1.0), (0.5, 2.0)]);
            let exact = exact_cosine_solution(&series, t, kappa).sample(&grid);
            (exact, series.sample(&grid))
        }
        "hat" => {
            let w = 0.5 * half_width;
            let hat = move |x: f64| (1.0 - x.abs() / w).max(0.0);
            let quad = Quadrature {
                breakpoints: vec![-w, 0.0, w],
                ..Quadrature::default()
            };
            let exact = gaussian_convolution_solution(&hat, &grid.positions(), t, kappa, &quad)?;
            (exact, grid.positions().iter().map(|&x| hat(x)).collect())
        }
        other => return Err(bad(format!("unknown initial condition '{other}'"))),
    };
    let (_, p_min) = diffusion_generator(&grid);
    let plan = LcuPlan::new(kappa * t, p_factor * p_min, m, scheme)?;
    let state = inject_real(&samples)?;
    let (out, _) = evolve_diffusion(&state, "q", kappa * t, &grid, &plan, backend)?;

    let exact_norm = exact.iter().map(|v| v * v).sum::<f64>().sqrt();
    let mut table = Table::new(&["x", "evolved_amp", "exact_amp", "abs_err"]);
    for (r, a) in out.amplitudes().iter().enumerate() {
        let e = exact[r] / exact_norm;
        table.push(vec![
            grid.position(r).into(),
            a.re.into(),
            e.into(),
            (a.re - e).abs().into(),
        ]);
    }
    Ok(table)
}

pub const SWEEP_LCU: &[ParamSpec] = &[
    param("m-min", "4", "smallest ancilla count"),
    param("m-max", "12", "largest ancilla count"),
    param("exponent", "0.6666666666666666", "βP = M^exponent"),
    param("p", "1", "spectral bound P; eigenvalues fill [0, P]"),
    param(
        "points",
        "4096",
        "number of sampled eigenvalues (power of two)",
    ),
    param(
        "scheme",
        "integrated",
        "coefficient scheme: exact, lorentzian, integrated",
    ),
];

pub fn sweep_lcu(p: &Params) -> Result<Table, CliError> {
    let m_min = power_of_two_qubits(p, "m-min", 24)?;
    let m_max = power_of_two_qubits(p, "m-max", 24)?;
    if m_min > m_max {
        return Err(bad("m-min exceeds m-max"));
    }
    let exponent = p.positive("exponent")?;
    let p_bound = p.positive("p")?;
    let points: usize = p.get("points")?;
    if points < 2 || !points.is_power_of_two() {
        return Err(bad(format!(
            "points must be a power of two ≥ 2, got {points}"
        )));
    }
    let scheme: CoefficientScheme = p.get("scheme")?;
    let generator = DiagonalGenerator::new(
        (0..points)
            .map(|i| p_bound * i as f64 / (points - 1) as f64)
            .collect(),
    )?;
    let mut table = Table::new(&["M", "betaP", "op_error"]);
    for m in m_min..=m_max {
        let big_m = (1u64 << m) as f64;
        let beta_p = big_m.powf(exponent);
        let plan = LcuPlan::new(beta_p / p_bound, p_bound, m, scheme)?;
        table.push(vec![
            (1usize << m).into(),
            beta_p.into(),
            lcu_operator_error(&plan, &generator).into(),
        ]);
    }
    Ok(table)
}

pub const SWEEP_GRID: &[ParamSpec] = &[
    param("n-min", "5", "smallest grid qubit count"),
    param("n-max", "11", "largest grid qubit count"),
    param("kappa-t", "0.01", "integrated diffusion κt"),
    param("width", "0.5", "half-width of the hat initial condition"),
    param(
        "lf-coeff",
        "2",
        "frequency half-width L_f = lf-coeff·N^(1/6)",
    ),
    param(
        "filter",
        "exact",
        "spectral filter: exact (e^{-κtλ}) or lcu",
    ),
    param("m", "14", "LCU ancilla qubits when filter = lcu"),
    param(
        "panels",
        "200",
        "quadrature panels per kernel standard deviation",
    ),
];

pub fn sweep_grid(p: &Params) -> Result<Table, CliError> {
    let n_min = power_of_two_qubits(p, "n-min", 16)?;
    let n_max = power_of_two_qubits(p, "n-max", 16)?;
    if n_min > n_max {
        return Err(bad("n-min exceeds n-max"));
    }
    let kappa_t = p.positive("kappa-t")?;
    let width = p.positive("width")?;
    let lf_coeff = p.positive("lf-coeff")?;
    let filter: String = p.get("filter")?;
    let m = power_of_two_qubits(p, "m", 24)?;
    let panels: usize = p.get("panels")?;
    if panels == 0 {
        return Err(bad("panels must be positive"));
    }
    if filter != "exact" && filter != "lcu" {
        return Err(bad(format!("unknown filter '{filter}'")));
    }
    let hat = move |x: f64| (1.0 - x.abs() / width).max(0.0);
    let quad = Quadrature {
        panels_per_sd: panels,
        half_width_sds: 12.0,
        breakpoints: vec![-width, 0.0, width],
    };
    let mut table = Table::new(&["N", "delta", "linf_err"]);
    for n in n_min..=n_max {
        let points = (1usize << n) as f64;
        let delta = 1.0 / (2.0 * lf_coeff * points.powf(1.0 / 6.0));
        let grid = make_grid_centered(n, points * delta / 2.0, 0.0)?;
        let samples: Vec<f64> = grid.positions().iter().map(|&x| hat(x)).collect();
        let scale = samples.iter().map(|v| v * v).sum::<f64>().sqrt();
        let mut state = inject_real(&samples)?;
        let (generator, p_min) = diffusion_generator(&grid);
        let (evolved, factor) = if filter == "exact" {
            let weights: Vec<Complex64> = generator
                .eigenvalues
                .iter()
                .map(|l| Complex64::new((-kappa_t * l).exp(), 0.0))
                .collect();
            apply_dtft(&mut state, "q", &grid, false)?;
            apply_diagonal_scaling(&mut state, "q", &weights)?;
            apply_dtft(&mut state, "q", &grid, true)?;
            (state, scale)
        } else {
            let plan = LcuPlan::new(kappa_t, p_min, m, CoefficientScheme::Exact)?;
            let (out, prob) =
                evolve_diffusion(&state, "q", kappa_t, &grid, &plan, LcuBackend::Auto)?;
            (out, scale * plan.normalization * prob.sqrt())
        };
        let oracle = gaussian_convolution_solution(&hat, &grid.positions(), 1.0, kappa_t, &quad)?;
        let err = evolved
            .amplitudes()
            .iter()
            .zip(&oracle)
            .map(|(a, o)| (a.re * factor - o).abs())
            .fold(0.0, f64::max);
        table.push(vec![(1usize << n).into(), grid.delta.into(), err.into()]);
    }
    Ok(table)
}

pub const BASKET: &[ParamSpec] = &[
    param("spots", "1", "spot prices, comma separated"),
    param("weights", "1", "basket weights"),
    param("strike", "1", "strike K"),
    param("rate", "0.05", "risk-free rate r"),
    param("dividends", "0", "dividend yields q_i"),
    param("vols", "0.2", "volatilities σ_i"),
    param(
        "correlation",
        "",
        "row-major correlation matrix (identity when unset)",
    ),
    param("maturity", "1", "maturity T"),
    param("n", "9", "grid qubits per axis"),
    param("m", "14", "LCU ancilla qubits"),
    param(
        "scheme",
        "exact",
        "coefficient scheme: exact, lorentzian, integrated",
    ),
    param(
        "gauge",
        "moving-frame",
        "drift removal: moving-frame or exponential",
    ),
    param(
        "window-sds",
        "6",
        "payoff support in standard deviations of √T",
    ),
    param(
        "domain-factor",
        "7",
        "grid half-width as a multiple of the payoff support",
    ),
    param(
        "backend",
        "auto",
        "LCU simulation: statevector, fibered, auto",
    ),
];

fn basket_spec(p: &Params, kind: OptionKind) -> Result<BasketSpec, CliError> {
    let spots: Vec<f64> = p.list("spots")?;
    let d = spots.len();
    let correlation = if p.has("correlation") {
        let flat: Vec<f64> = p.list("correlation")?;
        if flat.len() != d * d {
            return Err(bad(format!(
                "correlation needs {} entries, got {}",
                d * d,
                flat.len()
            )));
        }
        flat.chunks(d).map(<[f64]>::to_vec).collect()
    } else {
        (0..d)
            .map(|i| (0..d).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
            .collect()
    };
    let spec = BasketSpec {
        spots,
        weights: p.list("weights")?,
        strike: p.get("strike")?,
        rate: p.get("rate")?,
        dividends: p.list("dividends")?,
        vols: p.list("vols")?,
        correlation,
        maturity: p.positive("maturity")?,
        kind,
    };
    spec.validate()?;
    Ok(spec)
}

fn pricing_config(p: &Params) -> Result<PricingConfig, CliError> {
    Ok(PricingConfig {
        n: power_of_two_qubits(p, "n", 16)?,
        m: power_of_two_qubits(p, "m", 24)?,
        scheme: p.get("scheme")?,
        window_sds: p.positive("window-sds")?,
        domain_factor: p.positive("domain-factor")?,
        gauge: p.get::<Gauge>("gauge")?,
        backend: p.get("backend")?,
    })
}

fn closed_form(spec: &BasketSpec) -> f64 {
    if spec.dims() == 1 {
        black_scholes_closed_form(
            spec.spots[0] * spec.weights[0],
            spec.strike,
            spec.rate,
            spec.dividends[0],
            spec.vols[0],
            spec.maturity,
            spec.kind,
        )
    } else {
        f64::NAN
    }
}

pub fn price_basket_params() -> Vec<ParamSpec> {
    let mut v = vec![param("kind", "call,put", "option kinds, comma separated")];
    v.extend(BASKET.iter().map(|s| param(s.key, s.default, s.help)));
    v
}

pub fn price_basket(p: &Params) -> Result<Table, CliError> {
    let kinds: Vec<OptionKind> = p.list("kind")?;
    let config = pricing_config(p)?;
    let specs = kinds
        .iter()
        .map(|&k| basket_spec(p, k))
        .collect::<Result<Vec<_>, _>>()?;
    let mut table = Table::new(&[
        "kind",
        "value",
        "closed_form",
        "rel_err",
        "success_probability",
        "beta_p",
        "grid_half_width",
    ]);
    for spec in &specs {
        let r = price_european_basket(spec, &config)?;
        let reference = closed_form(spec);
        table.push(vec![
            spec.kind.to_string().into(),
            r.value.into(),
            reference.into(),
            ((r.value - reference) / reference).into(),
            r.success_probability.into(),
            r.beta_p.into(),
            r.grid_half_width.into(),
        ]);
    }
    Ok(table)
}

pub fn price_bermudan_params() -> Vec<ParamSpec> {
    let mut v = vec![
        param("kind", "put", "option kind"),
        param("dates", "4", "number of equally spaced exercise dates"),
        param(
            "exercise-dates",
            "",
            "explicit increasing exercise dates ending at maturity",
        ),
        param("noise", "0", "extraction noise magnitudes, comma separated"),
        param("seeds", "1", "noise seeds per magnitude (1..=seeds)"),
        param(
            "lattice-steps",
            "5000",
            "binomial reference steps, 0 to skip (single asset only)",
        ),
    ];
    v.extend(BASKET.iter().map(|s| param(s.key, s.default, s.help)));
    v
}

pub fn price_bermudan(p: &Params) -> Result<Table, CliError> {
    let kind: OptionKind = p.get("kind")?;
    let basket = basket_spec(p, kind)?;
    let config = pricing_config(p)?;
    let spec = if p.has("exercise-dates") {
        BermudanSpec {
            basket,
            exercise_dates: p.list("exercise-dates")?,
        }
    } else {
        let count: usize = p.get("dates")?;
        if count == 0 {
            return Err(bad("dates must be at least 1"));
        }
        BermudanSpec::equally_spaced(basket, count)
    };
    spec.validate()?;
    let noises: Vec<f64> = p.list("noise")?;
    if noises.iter().any(|e| !(*e >= 0.0)) {
        return Err(bad("noise magnitudes must be nonnegative"));
    }
    let seeds: u64 = p.get("seeds")?;
    let steps: usize = p.get("lattice-steps")?;
    let lattice = if steps > 0 && spec.basket.dims() == 1 {
        binomial_bermudan_oracle(&spec, steps)?
    } else {
        f64::NAN
    };

    let base = price_bermudan_with_noise(&spec, &config, 0.0, 0)?;
    let mut table = Table::new(&[
        "dates",
        "noise",
        "seed",
        "value",
        "shift",
        "lattice",
        "success_probability",
    ]);
    let dates = spec.exercise_dates.len();
    for &noise in &noises {
        let runs: Vec<u64> = if noise == 0.0 {
            vec![0]
        } else {
            (1..=seeds).collect()
        };
        for seed in runs {
            let r = if noise == 0.0 {
                base.clone()
            } else {
                price_bermudan_with_noise(&spec, &config, noise, seed)?
            };
            table.push(vec![
                dates.into(),
                noise.into(),
                (seed as i64).into(),
                r.value.into(),
                (r.value - base.value).into(),
                lattice.into(),
                r.success_probability.into(),
            ]);
        }
    }
    Ok(table)
}

pub const TRIG_GAUSS: &[ParamSpec] = &[
    param("sigma", "0.1,0.3,0.5,0.9", "standard deviations in (0, 1)"),
    param("eps", "1e-2,1e-3,1e-4", "target sup errors in (0, 1)"),
    param(
        "max-order",
        "10",
        "highest derivative order in the bound check",
    ),
];

pub fn trig_gauss(p: &Params) -> Result<Table, CliError> {
    let sigmas: Vec<f64> = p.list("sigma")?;
    let epsilons: Vec<f64> = p.list("eps")?;
    let max_order: u32 = p.get("max-order")?;
    for &v in sigmas.iter().chain(&epsilons) {
        if !(v > 0.0 && v < 1.0) {
            return Err(bad(format!("sigma and eps must lie in (0, 1), got {v}")));
        }
    }
    let mut table = Table::new(&[
        "sigma",
        "epsilon",
        "period",
        "degree",
        "lambda",
        "coeff_l1",
        "sup_error",
        "max_deriv_ratio",
    ]);
    for &sigma in &sigmas {
        for &eps in &epsilons {
            let g = build_trig_gaussian(sigma, eps)?;
            let lambda = g.lambda();
            let ratio = (0..=max_order)
                .map(|n| g.max_derivative(n) / lambda.powi(n as i32 + 1))
                .fold(0.0, f64::max);
            table.push(vec![
                sigma.into(),
                eps.into(),
                g.period.into(),
                g.degree.into(),
                lambda.into(),
                g.coefficient_l1().into(),
                g.sup_error().into(),
                ratio.into(),
            ]);
        }
    }
    Ok(table)
}

pub const RESOURCES: &[ParamSpec] = &[
    param("D", "1,3,7", "dimensions"),
    param("eps", "1e-1,1e-2,1e-3,1e-4", "target errors in (0, 1]"),
    param("C", "1,100", "constants C ≥ 1"),
    param(
        "exact-log",
        "false",
        "use exact log2 instead of the tabulated log10/0.3",
    ),
];

pub fn resources(p: &Params) -> Result<Table, CliError> {
    let dims: Vec<u32> = p.list("D")?;
    let epsilons: Vec<f64> = p.list("eps")?;
    let constants: Vec<f64> = p.list("C")?;
    let exact = p.bool("exact-log")?;
    if dims.contains(&0) {
        return Err(bad("D must be at least 1"));
    }
    if epsilons.iter().any(|e| !(*e > 0.0 && *e <= 1.0)) {
        return Err(bad("eps must lie in (0, 1]"));
    }
    if constants.iter().any(|c| !(*c >= 1.0)) {
        return Err(bad("C must be at least 1"));
    }
    let mut table = Table::new(&["D", "epsilon", "C", "qubits"]);
    for &d in &dims {
        for &eps in &epsilons {
            for &c in &constants {
                let q = if exact {
                    resource_estimate_exact(d, eps, c)
                } else {
                    resource_estimate(d, eps, c)
                };
                table.push(vec![(d as i64).into(), eps.into(), c.into(), q.into()]);
            }
        }
    }
    Ok(table)
}

pub const COST_RATIO: &[ParamSpec] = &[
    param("K", "10,20,50,100,200,500", "problem sizes K > 0"),
    param("alpha", "0.1,0.5,1", "growth rates α"),
];

pub fn cost_ratio_table(p: &Params) -> Result<Table, CliError> {
    let ks: Vec<f64> = p.list("K")?;
    let alphas: Vec<f64> = p.list("alpha")?;
    if ks.iter().any(|k| !(*k > 0.0)) {
        return Err(bad("K must be positive"));
    }
    let mut table = Table::new(&["K", "alpha", "ratio"]);
    for &k in &ks {
        for &a in &alphas {
            table.push(vec![k.into(), a.into(), cost_ratio(k, a).into()]);
        }
    }
    Ok(table)
}
