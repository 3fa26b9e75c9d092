//! `irlfrac`: evaluate, tabulate and verify incomplete fractional operators.
//!
//! Exit codes: 0 success, 1 a verification report had the wrong polarity,
//! 2 configuration error, 3 numerical failure.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use commands::{Failure, Outcome};
use config::{parse_form, Command, ConfigError, FunctionChoice, FunctionParams, Grid, OperatorConfig, OrderArg, RunConfig};

#[derive(Parser)]
#[command(name = "irlfrac", version, about = "Incomplete Riemann-Liouville fractional differintegrals")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// One row per x value.
    Eval(OperatorArgs),
    /// Long-format sweep over the order or the cut ratio.
    Table(OperatorArgs),
    /// Run a verification suite and stream its reports.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct OperatorArgs {
    /// power, exp, sin, power2 or const.
    #[arg(long)]
    function: String,
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    value: Option<String>,
    /// `re[,im]`, or `start:stop:count` over real orders (table only).
    #[arg(long, allow_hyphen_values = true)]
    order: String,
    /// lower, upper, both or classical.
    #[arg(long, default_value = "lower")]
    side: String,
    /// A value or `start:stop:count`.
    #[arg(long, allow_hyphen_values = true)]
    x: String,
    #[arg(long, allow_hyphen_values = true)]
    y: String,
    /// auto, 1, 2 or 3.
    #[arg(long, default_value = "auto")]
    form: String,
    #[arg(long, default_value_t = 1e-11)]
    abs_tol: f64,
    #[arg(long, default_value_t = 1e-10)]
    rel_tol: f64,
    #[command(flatten)]
    sink: Sink,
}

#[derive(Args)]
struct VerifyArgs {
    /// all, forms, bounds, limits, leibniz, chain, counterexamples or composition.
    #[arg(long, default_value = "all")]
    suite: String,
    #[command(flatten)]
    sink: Sink,
}

#[derive(Args)]
struct Sink {
    /// Write to a file instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    /// csv or jsonl.
    #[arg(long, default_value = "csv")]
    format: String,
}

fn operator(a: OperatorArgs) -> Result<(OperatorConfig, Sink), ConfigError> {
    let params = FunctionParams { lambda: a.lambda, alpha: a.alpha, value: a.value };
    let op = OperatorConfig {
        function: FunctionChoice::from_parts(&a.function, &params)?,
        order: OrderArg::parse(&a.order)?,
        side: a.side.parse()?,
        x: Grid::parse(&a.x, "x")?,
        y: Grid::parse(&a.y, "y")?,
        form: parse_form(&a.form)?,
        abs_tol: a.abs_tol,
        rel_tol: a.rel_tol,
    };
    Ok((op, a.sink))
}

fn build(cli: Cli) -> Result<RunConfig, ConfigError> {
    let (command, sink) = match cli.command {
        Sub::Eval(a) => operator(a).map(|(op, s)| (Command::Eval(op), s))?,
        Sub::Table(a) => operator(a).map(|(op, s)| (Command::Table(op), s))?,
        Sub::Verify(a) => {
            let suite = a.suite.parse().map_err(|e: irlfrac::Error| ConfigError(e.to_string()))?;
            (Command::Verify { suite }, a.sink)
        }
    };
    let cfg = RunConfig { command, format: sink.format.parse()?, output: sink.output };
    cfg.validate()?;
    Ok(cfg)
}

fn configure_threads() -> Result<(), ConfigError> {
    let Ok(v) = std::env::var("IRLFRAC_THREADS") else {
        return Ok(());
    };
    match v.trim().parse::<usize>() {
        Ok(n) if n > 0 => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| ConfigError(format!("thread pool: {e}"))),
        _ => Err(ConfigError(format!("IRLFRAC_THREADS must be a positive integer, got '{v}'"))),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match configure_threads().and_then(|_| build(cli)) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match commands::run(&cfg) {
        Ok(Outcome::Success) => ExitCode::SUCCESS,
        Ok(Outcome::Unexpected) => ExitCode::from(1),
        Err(Failure::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Numerical(e)) => {
            eprintln!("numerical failure: {e}");
            ExitCode::from(3)
        }
        Err(Failure::Io(e)) => {
            eprintln!("i/o error: {e}");
            ExitCode::from(3)
        }
    }
}
