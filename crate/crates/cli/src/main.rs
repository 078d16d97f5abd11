//! `fflcu`: experiment runner for the Fourier-LCU heat-equation library.

// `!(x > 0.0)` is used deliberately so NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;
mod output;
mod params;
mod selftest;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::output::Table;
use crate::params::{ParamSpec, Params};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("{0}")]
    PostSelection(String),
    #[error("{0}")]
    SelfTest(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    fn kind(&self) -> &'static str {
        match self {
            Self::Config(_) => "config",
            Self::PostSelection(_) => "post_selection",
            Self::SelfTest(_) => "self_test",
            Self::Io(_) => "io",
        }
    }

    fn exit_code(&self) -> u8 {
        match self {
            Self::Config(_) => 2,
            Self::PostSelection(_) => 3,
            Self::SelfTest(_) => 4,
            Self::Io(_) => 1,
        }
    }
}

impl From<fflcu::Error> for CliError {
    fn from(e: fflcu::Error) -> Self {
        match e {
            fflcu::Error::PostSelectionImpossible(_) => Self::PostSelection(e.to_string()),
            // every other library error traces back to a parameter choice
            other => Self::Config(other.to_string()),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "fflcu",
    version,
    about = "Fourier-LCU heat-equation experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, clap::Args)]
struct Rest {
    /// Parameters as --key value; run with --help for the list.
    #[arg(trailing_var_arg = true, allow_hyphen_values = true, num_args = 0..)]
    args: Vec<String>,
}

#[derive(Subcommand, Clone)]
#[command(disable_help_flag = false)]
enum Command {
    /// Evolve a 1D heat problem with the LCU circuit and compare with the exact solution.
    #[command(disable_help_flag = true)]
    Heat1d(Rest),
    /// Operator error of the LCU along βP = M^exponent.
    #[command(disable_help_flag = true)]
    SweepLcu(Rest),
    /// Discretization error for a kinked initial condition over grid sizes.
    #[command(disable_help_flag = true)]
    SweepGrid(Rest),
    /// European basket prices against the closed form.
    #[command(disable_help_flag = true)]
    PriceBasket(Rest),
    /// Bermudan prices, optionally with extraction noise.
    #[command(disable_help_flag = true)]
    PriceBermudan(Rest),
    /// Trigonometric Gaussian proxies and their invariants.
    #[command(disable_help_flag = true)]
    TrigGauss(Rest),
    /// Logical-qubit estimates.
    #[command(disable_help_flag = true)]
    Resources(Rest),
    /// Exponential-to-polynomial cost ratios.
    #[command(disable_help_flag = true)]
    CostRatio(Rest),
    /// Quick end-to-end checks; exits 4 if any fails.
    #[command(disable_help_flag = true)]
    SelfTest(Rest),
}

type Runner = fn(&Params) -> Result<Table, CliError>;

fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("FFLCU_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw.trim().parse().ok().filter(|t| *t >= 1).ok_or_else(|| {
        CliError::Config(format!("FFLCU_THREADS must be an integer ≥ 1, got '{raw}'"))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Config(format!("cannot size thread pool: {e}")))
}

fn dispatch(command: Command) -> Result<(), CliError> {
    let basket = commands::price_basket_params();
    let bermudan = commands::price_bermudan_params();
    let (name, about, specs, rest, runner): (&str, &str, &[ParamSpec], Rest, Option<Runner>) =
        match command {
            Command::Heat1d(r) => (
                "heat1d",
                "1D heat evolution vs exact solution",
                commands::HEAT1D,
                r,
                Some(commands::heat1d),
            ),
            Command::SweepLcu(r) => (
                "sweep-lcu",
                "LCU operator-error sweep",
                commands::SWEEP_LCU,
                r,
                Some(commands::sweep_lcu),
            ),
            Command::SweepGrid(r) => (
                "sweep-grid",
                "grid-size discretization sweep",
                commands::SWEEP_GRID,
                r,
                Some(commands::sweep_grid),
            ),
            Command::PriceBasket(r) => (
                "price-basket",
                "European basket pricing",
                &basket,
                r,
                Some(commands::price_basket),
            ),
            Command::PriceBermudan(r) => (
                "price-bermudan",
                "Bermudan pricing",
                &bermudan,
                r,
                Some(commands::price_bermudan),
            ),
            Command::TrigGauss(r) => (
                "trig-gauss",
                "trigonometric Gaussian proxies",
                commands::TRIG_GAUSS,
                r,
                Some(commands::trig_gauss),
            ),
            Command::Resources(r) => (
                "resources",
                "logical-qubit estimates",
                commands::RESOURCES,
                r,
                Some(commands::resources),
            ),
            Command::CostRatio(r) => (
                "cost-ratio",
                "e^(αK)/K^(5/2) table",
                commands::COST_RATIO,
                r,
                Some(commands::cost_ratio_table),
            ),
            Command::SelfTest(r) => (
                "self-test",
                "end-to-end checks",
                selftest::SELF_TEST,
                r,
                None,
            ),
        };
    let (common, params) = params::resolve(specs, &rest.args)?;
    if common.help {
        print!("{}", params::usage(name, about, specs));
        return Ok(());
    }
    configure_threads()?;
    match runner {
        Some(run) => output::emit(&run(&params)?, name, &common),
        None => {
            let (table, pass) = selftest::run()?;
            output::emit(&table, name, &common)?;
            if pass {
                Ok(())
            } else {
                Err(CliError::SelfTest(
                    "one or more self-test checks failed".into(),
                ))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let line = serde_json::json!({ "error": e.kind(), "message": e.to_string() });
            eprintln!("{line}");
            ExitCode::from(e.exit_code())
        }
    }
}
