//! Parsed and validated run configuration.
//!
//! Every configuration has a canonical one-line rendering
//! (`RunConfig::to_string`) that parses back to an equal value.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use irlfrac::verify::Suite;
use irlfrac::{Complex64, Form, FunctionSpec, QuadConfig};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

fn err<T>(msg: impl Into<String>) -> Result<T, ConfigError> {
    Err(ConfigError(msg.into()))
}

fn parse_real(s: &str, what: &str) -> Result<f64, ConfigError> {
    match s.trim().parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => err(format!("{what}: expected a finite number, got '{s}'")),
    }
}

/// `re` or `re,im`.
pub fn parse_complex(s: &str, what: &str) -> Result<Complex64, ConfigError> {
    match s.split_once(',') {
        Some((re, im)) => Ok(Complex64::new(parse_real(re, what)?, parse_real(im, what)?)),
        None => Ok(Complex64::new(parse_real(s, what)?, 0.0)),
    }
}

pub fn format_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else {
        format!("{},{}", z.re, z.im)
    }
}

/// A single value or an inclusive linear range `start:stop:count`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Grid {
    Value(f64),
    Range { start: f64, stop: f64, count: usize },
}

impl Grid {
    pub fn parse(s: &str, what: &str) -> Result<Self, ConfigError> {
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            [v] => Ok(Grid::Value(parse_real(v, what)?)),
            [a, b, n] => {
                let count = n.trim().parse::<usize>().map_err(|_| ConfigError(format!("{what}: bad count '{n}'")))?;
                Ok(Grid::Range { start: parse_real(a, what)?, stop: parse_real(b, what)?, count })
            }
            _ => err(format!("{what}: expected a value or start:stop:count, got '{s}'")),
        }
    }

    pub fn values(&self) -> Vec<f64> {
        match *self {
            Grid::Value(v) => vec![v],
            Grid::Range { start, count: 1, .. } => vec![start],
            Grid::Range { start, stop, count } => {
                let step = (stop - start) / (count - 1) as f64;
                (0..count).map(|i| if i + 1 == count { stop } else { start + step * i as f64 }).collect()
            }
        }
    }

    pub fn is_range(&self) -> bool {
        matches!(self, Grid::Range { .. })
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Grid::Value(v) => write!(f, "{v}"),
            Grid::Range { start, stop, count } => write!(f, "{start}:{stop}:{count}"),
        }
    }
}

/// A complex order, or a range over real orders.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OrderArg {
    Value(Complex64),
    Range { start: f64, stop: f64, count: usize },
}

impl OrderArg {
    pub fn parse(s: &str) -> Result<Self, ConfigError> {
        if !s.contains(':') {
            return Ok(OrderArg::Value(parse_complex(s, "order")?));
        }
        match Grid::parse(s, "order")? {
            Grid::Range { start, stop, count } => Ok(OrderArg::Range { start, stop, count }),
            Grid::Value(_) => err(format!("order: malformed range '{s}'")),
        }
    }

    pub fn values(&self) -> Vec<Complex64> {
        match self {
            OrderArg::Value(z) => vec![*z],
            OrderArg::Range { start, stop, count } => Grid::Range { start: *start, stop: *stop, count: *count }
                .values()
                .into_iter()
                .map(|v| Complex64::new(v, 0.0))
                .collect(),
        }
    }
}

impl fmt::Display for OrderArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderArg::Value(z) => f.write_str(&format_complex(*z)),
            OrderArg::Range { start, stop, count } => write!(f, "{start}:{stop}:{count}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FunctionChoice {
    Power { lambda: Complex64 },
    Exp { alpha: Complex64 },
    Sin,
    Power2 { lambda: Complex64, alpha: Complex64 },
    Const { value: Complex64 },
}

/// Raw `--function` parameters before validation.
#[derive(Debug, Clone, Default)]
pub struct FunctionParams {
    pub lambda: Option<String>,
    pub alpha: Option<String>,
    pub value: Option<String>,
}

impl FunctionChoice {
    pub fn name(&self) -> &'static str {
        match self {
            FunctionChoice::Power { .. } => "power",
            FunctionChoice::Exp { .. } => "exp",
            FunctionChoice::Sin => "sin",
            FunctionChoice::Power2 { .. } => "power2",
            FunctionChoice::Const { .. } => "const",
        }
    }

    pub fn from_parts(name: &str, p: &FunctionParams) -> Result<Self, ConfigError> {
        let get = |v: &Option<String>, what: &str| v.as_deref().map(|s| parse_complex(s, what)).transpose();
        let (lambda, alpha, value) = (get(&p.lambda, "lambda")?, get(&p.alpha, "alpha")?, get(&p.value, "value")?);
        let unused = |allowed: &[&str]| -> Result<(), ConfigError> {
            for (key, present) in [("lambda", lambda.is_some()), ("alpha", alpha.is_some()), ("value", value.is_some())] {
                if present && !allowed.contains(&key) {
                    return err(format!("--{key} does not apply to function '{name}'"));
                }
            }
            Ok(())
        };
        let required = |v: Option<Complex64>, key: &str| v.ok_or_else(|| ConfigError(format!("function '{name}' needs --{key}")));
        let choice = match name {
            "power" => {
                unused(&["lambda"])?;
                FunctionChoice::Power { lambda: required(lambda, "lambda")? }
            }
            "exp" => {
                unused(&["alpha"])?;
                FunctionChoice::Exp { alpha: alpha.unwrap_or(Complex64::new(1.0, 0.0)) }
            }
            "sin" => {
                unused(&[])?;
                FunctionChoice::Sin
            }
            "power2" => {
                unused(&["lambda", "alpha"])?;
                FunctionChoice::Power2 { lambda: required(lambda, "lambda")?, alpha: required(alpha, "alpha")? }
            }
            "const" => {
                unused(&["value"])?;
                FunctionChoice::Const { value: value.unwrap_or(Complex64::new(1.0, 0.0)) }
            }
            "expr" => return err("expression functions are not supported; choose power, exp, sin, power2 or const"),
            other => return err(format!("unknown function '{other}'")),
        };
        choice.check()?;
        Ok(choice)
    }

    fn check(&self) -> Result<(), ConfigError> {
        match *self {
            FunctionChoice::Power { lambda } if lambda.re <= -1.0 => err("power needs Re(lambda) > -1"),
            FunctionChoice::Power2 { lambda, .. } if lambda.re <= 0.0 => err("power2 needs Re(lambda) > 0"),
            FunctionChoice::Exp { alpha } if alpha == Complex64::new(0.0, 0.0) => err("exp needs a nonzero alpha"),
            _ => Ok(()),
        }
    }

    fn params(&self) -> Vec<(&'static str, Complex64)> {
        match *self {
            FunctionChoice::Power { lambda } => vec![("lambda", lambda)],
            FunctionChoice::Exp { alpha } => vec![("alpha", alpha)],
            FunctionChoice::Sin => vec![],
            FunctionChoice::Power2 { lambda, alpha } => vec![("lambda", lambda), ("alpha", alpha)],
            FunctionChoice::Const { value } => vec![("value", value)],
        }
    }

    pub fn spec(&self) -> FunctionSpec {
        match *self {
            FunctionChoice::Power { lambda } => FunctionSpec::power(lambda),
            FunctionChoice::Exp { alpha } => FunctionSpec::exp(alpha),
            FunctionChoice::Sin => FunctionSpec::sin(),
            FunctionChoice::Power2 { lambda, alpha } => FunctionSpec::power2(lambda, alpha),
            FunctionChoice::Const { value } => FunctionSpec::constant(value),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SideChoice {
    Lower,
    Upper,
    Both,
    Classical,
}

impl FromStr for SideChoice {
    type Err = ConfigError;
    fn from_str(s: &str) -> Result<Self, ConfigError> {
        match s {
            "lower" => Ok(SideChoice::Lower),
            "upper" => Ok(SideChoice::Upper),
            "both" => Ok(SideChoice::Both),
            "classical" => Ok(SideChoice::Classical),
            _ => err(format!("unknown side '{s}'")),
        }
    }
}

impl fmt::Display for SideChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SideChoice::Lower => "lower",
            SideChoice::Upper => "upper",
            SideChoice::Both => "both",
            SideChoice::Classical => "classical",
        })
    }
}

pub fn parse_form(s: &str) -> Result<Form, ConfigError> {
    match s {
        "auto" => Ok(Form::Auto),
        "1" => Ok(Form::Form1),
        "2" => Ok(Form::Form2),
        "3" => Ok(Form::Form3),
        _ => err(format!("unknown form '{s}'")),
    }
}

pub fn form_name(form: Form) -> &'static str {
    match form {
        Form::Auto => "auto",
        Form::Form1 => "1",
        Form::Form2 => "2",
        Form::Form3 => "3",
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Csv,
    Jsonl,
}

impl FromStr for OutputFormat {
    type Err = ConfigError;
    fn from_str(s: &str) -> Result<Self, ConfigError> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "jsonl" => Ok(OutputFormat::Jsonl),
            _ => err(format!("unknown format '{s}'")),
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Jsonl => "jsonl",
        })
    }
}

/// Operator evaluation settings shared by `eval` and `table`.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorConfig {
    pub function: FunctionChoice,
    pub order: OrderArg,
    pub side: SideChoice,
    pub x: Grid,
    pub y: Grid,
    pub form: Form,
    pub abs_tol: f64,
    pub rel_tol: f64,
}

impl OperatorConfig {
    pub fn quad(&self) -> QuadConfig {
        QuadConfig::default().with_tolerances(self.abs_tol, self.rel_tol)
    }

    fn validate(&self, table: bool) -> Result<(), ConfigError> {
        for (grid, what) in [(&self.x, "x"), (&self.y, "y")] {
            if let Grid::Range { count: 0, .. } = grid {
                return err(format!("{what}: empty range"));
            }
        }
        if let OrderArg::Range { count: 0, .. } = self.order {
            return err("order: empty range");
        }
        let xs = self.x.values();
        if xs.iter().any(|&x| x <= 0.0) {
            return err("x values must be positive");
        }
        if matches!(self.function, FunctionChoice::Power2 { .. }) && xs.iter().any(|&x| x >= 1.0) {
            return err("power2 is defined for 0 < x < 1");
        }
        if self.y.values().iter().any(|&y| !(y > 0.0 && y < 1.0)) {
            return err("y values must lie in (0, 1)");
        }
        if !(self.abs_tol > 0.0 && self.rel_tol > 0.0) {
            return err("quadrature tolerances must be positive");
        }
        let order_range = matches!(self.order, OrderArg::Range { .. });
        if table {
            if order_range == self.y.is_range() {
                return err("table needs exactly one of --order and --y as a range");
            }
            if self.side == SideChoice::Both {
                return err("table does not support side=both");
            }
            if self.side == SideChoice::Classical && self.y.is_range() {
                return err("the classical operator has no cut ratio to sweep");
            }
        } else if order_range || self.y.is_range() {
            return err("eval takes a single order and a single y; use table to sweep them");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Command {
    Eval(OperatorConfig),
    Table(OperatorConfig),
    Verify { suite: Suite },
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub format: OutputFormat,
    /// `None` writes to stdout.
    pub output: Option<PathBuf>,
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        match &self.command {
            Command::Eval(op) => op.validate(false),
            Command::Table(op) => op.validate(true),
            Command::Verify { .. } => Ok(()),
        }?;
        if let Some(p) = &self.output {
            if p.as_os_str().is_empty() {
                return err("empty output path");
            }
        }
        Ok(())
    }
}

impl fmt::Display for RunConfig {
    /// `subcommand key=value ...`, with `output=` last and taken verbatim.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.command {
            Command::Eval(op) | Command::Table(op) => {
                let name = if matches!(self.command, Command::Eval(_)) { "eval" } else { "table" };
                write!(f, "{name} function={}", op.function.name())?;
                for (key, v) in op.function.params() {
                    write!(f, " {key}={}", format_complex(v))?;
                }
                write!(
                    f,
                    " order={} side={} x={} y={} form={} abs_tol={} rel_tol={}",
                    op.order,
                    op.side,
                    op.x,
                    op.y,
                    form_name(op.form),
                    op.abs_tol,
                    op.rel_tol
                )?;
            }
            Command::Verify { suite } => write!(f, "verify suite={suite}")?,
        }
        write!(f, " format={}", self.format)?;
        if let Some(p) = &self.output {
            write!(f, " output={}", p.display())?;
        }
        Ok(())
    }
}

impl FromStr for RunConfig {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, ConfigError> {
        let (head, output) = match s.split_once(" output=") {
            Some((h, o)) => (h, Some(PathBuf::from(o))),
            None => (s, None),
        };
        let mut tokens = head.split_whitespace();
        let sub = tokens.next().ok_or_else(|| ConfigError("empty configuration".into()))?;
        let mut fields = std::collections::BTreeMap::new();
        for t in tokens {
            let (k, v) = t.split_once('=').ok_or_else(|| ConfigError(format!("malformed token '{t}'")))?;
            if fields.insert(k, v).is_some() {
                return err(format!("duplicate key '{k}'"));
            }
        }
        let mut take = |k: &str| fields.remove(k);
        let format = take("format").map(str::parse).transpose()?.unwrap_or_default();
        let command = match sub {
            "verify" => {
                let suite = take("suite").ok_or_else(|| ConfigError("missing suite".into()))?;
                Command::Verify { suite: suite.parse().map_err(|e: irlfrac::Error| ConfigError(e.to_string()))? }
            }
            "eval" | "table" => {
                let mut need = |k: &str| take(k).ok_or_else(|| ConfigError(format!("missing {k}")));
                let fname = need("function")?;
                let params = FunctionParams {
                    lambda: take("lambda").map(String::from),
                    alpha: take("alpha").map(String::from),
                    value: take("value").map(String::from),
                };
                let mut need = |k: &str| take(k).ok_or_else(|| ConfigError(format!("missing {k}")));
                let op = OperatorConfig {
                    function: FunctionChoice::from_parts(fname, &params)?,
                    order: OrderArg::parse(need("order")?)?,
                    side: need("side")?.parse()?,
                    x: Grid::parse(need("x")?, "x")?,
                    y: Grid::parse(need("y")?, "y")?,
                    form: parse_form(need("form")?)?,
                    abs_tol: parse_real(need("abs_tol")?, "abs_tol")?,
                    rel_tol: parse_real(need("rel_tol")?, "rel_tol")?,
                };
                if sub == "eval" {
                    Command::Eval(op)
                } else {
                    Command::Table(op)
                }
            }
            other => return err(format!("unknown subcommand '{other}'")),
        };
        if let Some(k) = fields.keys().next() {
            return err(format!("unexpected key '{k}'"));
        }
        Ok(RunConfig { command, format, output })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn real() -> impl Strategy<Value = f64> {
        prop_oneof![(-1e3f64..1e3), Just(0.5), Just(-1.0), (1e-9f64..1e-3)]
    }

    fn complex() -> impl Strategy<Value = Complex64> {
        (real(), prop_oneof![Just(0.0), real()]).prop_map(|(re, im)| Complex64::new(re, im))
    }

    fn grid() -> impl Strategy<Value = Grid> {
        prop_oneof![
            real().prop_map(Grid::Value),
            (real(), real(), 0usize..50).prop_map(|(start, stop, count)| Grid::Range { start, stop, count }),
        ]
    }

    fn function() -> impl Strategy<Value = FunctionChoice> {
        prop_oneof![
            complex().prop_map(|lambda| FunctionChoice::Power { lambda }),
            complex().prop_map(|alpha| FunctionChoice::Exp { alpha }),
            Just(FunctionChoice::Sin),
            (complex(), complex()).prop_map(|(lambda, alpha)| FunctionChoice::Power2 { lambda, alpha }),
            complex().prop_map(|value| FunctionChoice::Const { value }),
        ]
        .prop_filter("valid parameters", |f| f.check().is_ok())
    }

    fn operator() -> impl Strategy<Value = OperatorConfig> {
        (
            function(),
            prop_oneof![
                complex().prop_map(OrderArg::Value),
                (real(), real(), 0usize..50).prop_map(|(start, stop, count)| OrderArg::Range { start, stop, count }),
            ],
            prop_oneof![Just(SideChoice::Lower), Just(SideChoice::Upper), Just(SideChoice::Both), Just(SideChoice::Classical)],
            grid(),
            grid(),
            prop_oneof![Just(Form::Auto), Just(Form::Form1), Just(Form::Form2), Just(Form::Form3)],
            (1e-16f64..1.0),
            (1e-16f64..1.0),
        )
            .prop_map(|(function, order, side, x, y, form, abs_tol, rel_tol)| OperatorConfig {
                function,
                order,
                side,
                x,
                y,
                form,
                abs_tol,
                rel_tol,
            })
    }

    fn config() -> impl Strategy<Value = RunConfig> {
        let command = prop_oneof![
            operator().prop_map(Command::Eval),
            operator().prop_map(Command::Table),
            proptest::sample::select(Suite::INDIVIDUAL.to_vec()).prop_map(|suite| Command::Verify { suite }),
        ];
        let output = proptest::option::of("[a-z/_. -]{1,20}".prop_map(PathBuf::from));
        (command, prop_oneof![Just(OutputFormat::Csv), Just(OutputFormat::Jsonl)], output)
            .prop_map(|(command, format, output)| RunConfig { command, format, output })
    }

    proptest! {
        #[test]
        fn canonical_string_round_trips(cfg in config()) {
            let s = cfg.to_string();
            let back: RunConfig = s.parse().unwrap();
            prop_assert_eq!(&back, &cfg);
            prop_assert_eq!(back.to_string(), s);
        }
    }

    #[test]
    fn grid_endpoints() {
        let g = Grid::parse("0.5:2:4", "x").unwrap();
        assert_eq!(g.values(), vec![0.5, 1.0, 1.5, 2.0]);
        assert!(Grid::parse("1:2", "x").is_err());
    }

    #[test]
    fn table_needs_one_range() {
        let cfg: RunConfig =
            "table function=sin order=-0.5 side=lower x=1 y=0.5 form=auto abs_tol=1e-11 rel_tol=1e-10".parse().unwrap();
        assert!(cfg.validate().is_err());
        let cfg: RunConfig =
            "table function=sin order=-0.5 side=lower x=1 y=0.1:0.9:9 form=auto abs_tol=1e-11 rel_tol=1e-10".parse().unwrap();
        assert!(cfg.validate().is_ok());
    }

    #[test]
    fn expression_functions_rejected() {
        assert!(FunctionChoice::from_parts("expr", &FunctionParams::default()).is_err());
        let p = FunctionParams { alpha: Some("2".into()), ..Default::default() };
        assert!(FunctionChoice::from_parts("sin", &p).is_err());
    }
}
