use std::io::Write;

use irlfrac::operators::{classical_rl, lower_differint, upper_differint};
use irlfrac::par;
use irlfrac::verify::{format_real, run_suite, to_csv, to_jsonl, Report, Suite};
use irlfrac::{Complex64, CutRatio, Error, Order, QuadResult};

use crate::config::{Command, OperatorConfig, OutputFormat, RunConfig, SideChoice};

/// Exit status of a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Success,
    Unexpected,
}

/// Why a run stopped early.
#[derive(Debug)]
pub enum Failure {
    Config(String),
    Numerical(Error),
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Numerical(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

struct Row {
    sweep: Option<f64>,
    x: f64,
    total: QuadResult,
    parts: Option<(Complex64, Complex64)>,
}

fn evaluate(op: &OperatorConfig, order: Complex64, x: f64, y: f64) -> Result<(QuadResult, Option<(Complex64, Complex64)>), Error> {
    let f = op.function.spec();
    let order = Order::new(order)?;
    let quad = op.quad();
    let cut = CutRatio::new(y)?;
    Ok(match op.side {
        SideChoice::Lower => (lower_differint(&f, order, x, cut, op.form, &quad)?, None),
        SideChoice::Upper => (upper_differint(&f, order, x, cut, op.form, &quad)?, None),
        SideChoice::Classical => (classical_rl(&f, order, 0.0, x, &quad)?, None),
        SideChoice::Both => {
            let lower = lower_differint(&f, order, x, cut, op.form, &quad)?;
            let upper = upper_differint(&f, order, x, cut, op.form, &quad)?;
            (lower.combine(upper), Some((lower.value, upper.value)))
        }
    })
}

fn json_number(v: f64) -> String {
    if v.is_finite() {
        format_real(v)
    } else {
        "null".into()
    }
}

fn write_rows(out: &mut dyn Write, rows: &[Row], format: OutputFormat, table: bool) -> std::io::Result<()> {
    let split = rows.iter().any(|r| r.parts.is_some());
    let mut columns: Vec<&str> = Vec::new();
    if table {
        columns.push("sweep_var");
    }
    columns.extend(["x", "value_re", "value_im", "err_estimate"]);
    if !table {
        columns.push("n_evals");
    }
    if split {
        columns.extend(["lower_re", "lower_im", "upper_re", "upper_im"]);
    }
    if format == OutputFormat::Csv {
        writeln!(out, "{}", columns.join(","))?;
    }
    for r in rows {
        let mut cells: Vec<String> = Vec::new();
        if let Some(s) = r.sweep {
            cells.push(json_number(s));
        }
        cells.extend([r.x, r.total.value.re, r.total.value.im, r.total.err_estimate].map(json_number));
        if !table {
            cells.push(r.total.n_evals.to_string());
        }
        if let Some((lo, up)) = r.parts {
            cells.extend([lo.re, lo.im, up.re, up.im].map(json_number));
        }
        match format {
            OutputFormat::Csv => writeln!(out, "{}", cells.join(","))?,
            OutputFormat::Jsonl => {
                let fields: Vec<String> = columns.iter().zip(&cells).map(|(k, v)| format!("\"{k}\":{v}")).collect();
                writeln!(out, "{{{}}}", fields.join(","))?;
            }
        }
    }
    Ok(())
}

fn cmd_eval(op: &OperatorConfig, table: bool, format: OutputFormat, out: &mut dyn Write) -> Result<Outcome, Failure> {
    let xs = op.x.values();
    let orders = op.order.values();
    let ys = op.y.values();
    let mut points = Vec::new();
    if orders.len() > 1 {
        for &mu in &orders {
            points.extend(xs.iter().map(|&x| (Some(mu.re), mu, x, ys[0])));
        }
    } else if ys.len() > 1 {
        for &y in &ys {
            points.extend(xs.iter().map(|&x| (Some(y), orders[0], x, y)));
        }
    } else {
        points.extend(xs.iter().map(|&x| (None, orders[0], x, ys[0])));
    }
    let results = par::map(&points, |&(sweep, mu, x, y)| {
        evaluate(op, mu, x, y).map(|(total, parts)| Row { sweep, x, total, parts })
    });
    let rows: Vec<Row> = results.into_iter().collect::<Result<_, _>>()?;
    write_rows(out, &rows, format, table)?;
    Ok(Outcome::Success)
}

fn cmd_verify(suite: Suite, format: OutputFormat, out: &mut dyn Write) -> Result<Outcome, Failure> {
    let mut reports: Vec<Report> = Vec::new();
    let members = suite.members();
    for s in &members {
        reports.extend(run_suite(*s, par::Execution::available())?);
    }
    let text = match format {
        OutputFormat::Csv => to_csv(&reports),
        OutputFormat::Jsonl => to_jsonl(&reports),
    };
    out.write_all(text.as_bytes())?;
    let unexpected = reports.iter().filter(|r| !r.as_expected()).count();
    eprintln!("suites={} checks={} unexpected={}", members.len(), reports.len(), unexpected);
    Ok(if unexpected == 0 { Outcome::Success } else { Outcome::Unexpected })
}

pub fn run(cfg: &RunConfig) -> Result<Outcome, Failure> {
    cfg.validate().map_err(|e| Failure::Config(e.0))?;
    let mut buf: Vec<u8> = Vec::new();
    let outcome = match &cfg.command {
        Command::Eval(op) => cmd_eval(op, false, cfg.format, &mut buf)?,
        Command::Table(op) => cmd_eval(op, true, cfg.format, &mut buf)?,
        Command::Verify { suite } => cmd_verify(*suite, cfg.format, &mut buf)?,
    };
    match &cfg.output {
        Some(path) => std::fs::write(path, &buf)?,
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(&buf)?;
            lock.flush()?;
        }
    }
    Ok(outcome)
}
