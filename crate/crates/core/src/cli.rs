//! Command-line front end. Every run writes its configuration, seed and crate version into
//! the output so it can be repeated exactly.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::continuous::{
    classify_regions, continuized_k_fit, generalized_mean_ode, mean_continuized, named_constants,
    product_moment_from_state, second_moment_continuized_base, third_moment_continuized_base, GrowthReport,
    RegionLabel,
};
use crate::error::{invalid, Error, Result};
use crate::exact::{
    fourth_moments, k_closed_form, k_limit, mean_exact, product_moment_exact, third_moments, MeanIter, ProductRow,
    SecondMomentIter,
};
use crate::figures::{self, GridSpec};
use crate::martingale::{
    base_martingale, continuized_martingale, diagnose, generalized_discrete_martingale, p_martingale, MartingaleSeries,
};
use crate::output::{flag, meta, write_csv, write_json, Table};
use crate::process::{
    simulate_continuized, simulate_continuized_with, simulate_discrete, simulate_discrete_with, simulate_weighted,
    simulate_weighted_with, DiscreteInit, InitialCondition, PathInit, ProcessSpec, WeightSpec,
};
use crate::stats::{
    ensemble_map, limit_density_samples, limit_moments_2m, loggamma_fit, mc_ensemble, wasserstein2, Target,
};

#[derive(Debug, Parser)]
#[command(name = "ulam", version, about = "Moments, martingales and limit laws of Ulam's adding process")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct Common {
    /// Output encoding; tables default to csv, reports to json.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "lowercase")]
pub enum Command {
    /// Simulate one trajectory, or summarize an ensemble with --reps > 1.
    Simulate(SimulateArgs),
    /// Exact moment sequences from the forward recursions.
    Exact(ExactArgs),
    /// Moments of the continuized processes from their differential equations.
    Continuous(ContinuousArgs),
    /// Sigma roots and growth region of the generalized process.
    Classify(ClassifyArgs),
    /// Martingale values along a trajectory, or ensemble diagnostics with --reps > 1.
    Martingale(MartingaleArgs),
    /// Log-gamma fit to three raw moments.
    Fit(FitArgs),
    /// Wasserstein-2 distances of scaled values to their limit laws.
    Distance(DistanceArgs),
    /// Data behind figures 1 to 6.
    Figures(FiguresArgs),
    /// Headline constants and checks in one JSON document.
    Report(ReportArgs),
    /// Rerun the configuration embedded in an earlier output file.
    Replay(ReplayArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProcessKind {
    Discrete,
    Weighted,
    Continuized,
}

#[derive(Debug, Args, Serialize, Deserialize)]
#[command(allow_negative_numbers = true)]
pub struct SimulateArgs {
    #[arg(long, value_enum, default_value = "discrete")]
    pub process: ProcessKind,
    /// Initial values x_1, .., x_r (continuized: the value on [0, tau]).
    #[arg(long, value_delimiter = ',', default_value = "1")]
    pub init: Vec<f64>,
    #[arg(long, default_value_t = 1.0)]
    pub p: f64,
    #[arg(long = "A", default_value_t = 1.0)]
    pub a: f64,
    #[arg(long = "B", default_value_t = 1.0)]
    pub b: f64,
    #[arg(long, default_value_t = 1.0)]
    pub alpha: f64,
    #[arg(long, default_value_t = 1.0)]
    pub beta: f64,
    #[arg(long, default_value_t = 0.0)]
    pub tau: f64,
    #[arg(long, default_value_t = 1000)]
    pub n: usize,
    #[arg(long, default_value_t = 100.0)]
    pub t_max: f64,
    #[arg(long, default_value_t = 1)]
    pub reps: usize,
    /// Ensemble indices or times; defaults to the final one.
    #[arg(long, value_delimiter = ',')]
    pub grid: Vec<f64>,
}

#[derive(Debug, Args, Serialize, Deserialize)]
pub struct ExactArgs {
    #[arg(long, value_delimiter = ',', default_value = "1")]
    pub init: Vec<f64>,
    #[arg(long, default_value_t = 1.0)]
    pub p: f64,
    /// 1, 2, 3, 4 or product.
    #[arg(long, default_value = "2")]
    pub moment: String,
    #[arg(long, default_value_t = 1000)]
    pub n: usize,
    /// Row index m of the product moment c_{m,n}.
    #[arg(long, default_value_t = 1)]
    pub m: usize,
    /// Emit every stride-th row (the last row is always emitted).
    #[arg(long, default_value_t = 1)]
    pub stride: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Quantity {
    Mean,
    Second,
    Product,
    Third,
    Generalized,
}

#[derive(Debug, Args, Serialize, Deserialize)]
#[command(allow_negative_numbers = true)]
pub struct ContinuousArgs {
    #[arg(long, value_enum, default_value = "second")]
    pub quantity: Quantity,
    /// Explicit time grid; otherwise `steps` equal steps up to `t_max`.
    #[arg(long, value_delimiter = ',')]
    pub t: Vec<f64>,
    #[arg(long, default_value_t = 100.0)]
    pub t_max: f64,
    #[arg(long, default_value_t = 100)]
    pub steps: usize,
    /// Mean: length of the initial interval and the constant value on it.
    #[arg(long, default_value_t = 0.0)]
    pub tau: f64,
    #[arg(long, default_value_t = 1.0)]
    pub init_value: f64,
    /// Product moment: the earlier time s.
    #[arg(long, default_value_t = 1.0)]
    pub s: f64,
    #[arg(long, default_value_t = 1.0)]
    pub alpha: f64,
    #[arg(long, default_value_t = 1.0)]
    pub beta: f64,
    #[arg(long = "A", default_value_t = 1.0)]
    pub a: f64,
    #[arg(long = "B", default_value_t = 1.0)]
    pub b: f64,
}

#[derive(Debug, Args, Serialize, Deserialize)]
#[command(allow_negative_numbers = true)]
pub struct ClassifyArgs {
    #[arg(long)]
    pub alpha: f64,
    #[arg(long)]
    pub beta: f64,
    #[arg(long = "A")]
    pub a: f64,
    #[arg(long = "B")]
    pub b: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    Base,
    PAdding,
    Continuized,
    Generalized,
}

#[derive(Debug, Args, Serialize, Deserialize)]
#[command(allow_negative_numbers = true)]
pub struct MartingaleArgs {
    #[arg(long, value_enum, default_value = "base")]
    pub variant: Variant,
    #[arg(long, value_delimiter = ',', default_value = "1")]
    pub init: Vec<f64>,
    #[arg(long, default_value_t = 0.5)]
    pub p: f64,
    #[arg(long = "A", default_value_t = 1.0)]
    pub a: f64,
    #[arg(long = "B", default_value_t = 2.0)]
    pub b: f64,
    #[arg(long, default_value_t = 1000)]
    pub n: usize,
    /// Continuized: evaluation times (default 1..=100).
    #[arg(long, value_delimiter = ',')]
    pub t: Vec<f64>,
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
    #[arg(long, default_value_t = 1)]
    pub reps: usize,
    /// Ensemble ladder (default dyadic).
    #[arg(long, value_delimiter = ',')]
    pub ladder: Vec<f64>,
}

#[derive(Debug, Args, Serialize, Deserialize)]
pub struct FitArgs {
    #[arg(long, default_value_t = 1.0)]
    pub mu1: f64,
    #[arg(long, default_value_t = 1.225)]
    pub mu2: f64,
    #[arg(long, default_value_t = 1.932)]
    pub mu3: f64,
    /// Use the exact moments of 2 M_n at this n instead of mu2, mu3.
    #[arg(long)]
    pub exact_n: Option<usize>,
}

#[derive(Debug, Args, Serialize, Deserialize)]
pub struct DistanceArgs {
    #[arg(long, value_delimiter = ',', default_value = "100,1000,10000")]
    pub n: Vec<usize>,
    #[arg(long, default_value_t = 10_000)]
    pub reps: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Panel {
    Left,
    Right,
}

#[derive(Debug, Args, Serialize, Deserialize)]
#[command(allow_negative_numbers = true)]
pub struct FiguresArgs {
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=6))]
    pub which: u8,
    /// Figure 1: step n and replicate count.
    #[arg(long, default_value_t = 10_000)]
    pub n: usize,
    #[arg(long, default_value_t = 10_000)]
    pub reps: usize,
    #[arg(long, value_enum, default_value = "right")]
    pub panel: Panel,
    /// Figure 2: p grid and recursion length.
    #[arg(long, value_delimiter = ',', default_value = "0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9,1.0")]
    pub p_grid: Vec<f64>,
    #[arg(long, default_value_t = 1_000_000)]
    pub n_max: usize,
    /// Figure 3: update probability and the n values.
    #[arg(long, default_value_t = 0.2)]
    pub p: f64,
    #[arg(long, value_delimiter = ',')]
    pub ns: Vec<usize>,
    /// Figures 4 and 6: rates.
    #[arg(long, default_value_t = 3.0)]
    pub alpha: f64,
    #[arg(long, default_value_t = 1.0)]
    pub beta: f64,
    /// Figures 4 to 6: square grid.
    #[arg(long, default_value_t = -3.0)]
    pub lo: f64,
    #[arg(long, default_value_t = 3.0)]
    pub hi: f64,
    #[arg(long, default_value_t = 61)]
    pub steps: usize,
}

#[derive(Debug, Args, Serialize, Deserialize)]
pub struct ReportArgs {
    #[arg(long, default_value_t = 100_000)]
    pub n: usize,
    #[arg(long, default_value_t = 1000.0)]
    pub t: f64,
}

#[derive(Debug, Args, Serialize, Deserialize)]
pub struct ReplayArgs {
    /// A CSV or JSON file written by this program.
    #[arg(long)]
    pub from: PathBuf,
}

/// What a command produced.
enum Artifact {
    Table(Table),
    Json(Value),
}

impl Artifact {
    fn json(data: impl Serialize) -> Result<Self> {
        Ok(Artifact::Json(serde_json::to_value(data)?))
    }
}

/// Parses `args` (including the program name), runs the command and returns the exit code:
/// 0 on success, 2 on invalid input, 1 on numerical failure.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    run_with(args, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

pub fn run_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(stderr, "{text}");
                return 2;
            }
            let _ = write!(stdout, "{text}");
            return 0;
        }
    };
    match execute(&cli, stdout) {
        Ok(()) => 0,
        Err(Error::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => 0,
        Err(Error::Json(e)) if e.io_error_kind() == Some(std::io::ErrorKind::BrokenPipe) => 0,
        Err(e) => {
            let (kind, code) = match e {
                Error::InvalidInput(_) => ("invalid_input", 2),
                Error::Numerical(_) => ("numerical", 1),
                Error::Io(_) | Error::Json(_) => ("io", 1),
            };
            let _ = writeln!(stderr, "{}", json!({ "error": e.to_string(), "kind": kind }));
            code
        }
    }
}

/// Reads the `meta` block of an output file written by [`execute`].
pub fn read_meta(text: &str) -> Result<Value> {
    if let Some(line) = text.lines().next().and_then(|l| l.strip_prefix("# meta: ")) {
        return Ok(serde_json::from_str(line)?);
    }
    let doc: Value = serde_json::from_str(text)?;
    doc.get("meta").cloned().ok_or_else(|| invalid("no meta block found"))
}

/// Rebuilds the command line recorded in `meta`.
pub fn from_meta(meta: &Value) -> Result<Cli> {
    let config = meta.get("config").ok_or_else(|| invalid("meta has no config"))?;
    let command: Command = serde_json::from_value(config.get("args").cloned().unwrap_or(Value::Null))?;
    if matches!(command, Command::Replay(_)) {
        return Err(invalid("a replay cannot replay another replay"));
    }
    let format = serde_json::from_value(config.get("format").cloned().unwrap_or(Value::Null))?;
    let seed = meta.get("seed").and_then(Value::as_u64).unwrap_or(1);
    Ok(Cli { common: Common { format, output: None, seed }, command })
}

pub fn execute(cli: &Cli, stdout: &mut dyn Write) -> Result<()> {
    log::info!("running {:?}", cli.command);
    if let Command::Replay(a) = &cli.command {
        let text = std::fs::read_to_string(&a.from)?;
        let mut inner = from_meta(&read_meta(&text)?)?;
        inner.common.output = cli.common.output.clone();
        return execute(&inner, stdout);
    }
    let name = match &cli.command {
        Command::Simulate(_) => "simulate",
        Command::Exact(_) => "exact",
        Command::Continuous(_) => "continuous",
        Command::Classify(_) => "classify",
        Command::Martingale(_) => "martingale",
        Command::Fit(_) => "fit",
        Command::Distance(_) => "distance",
        Command::Figures(_) => "figures",
        Command::Report(_) => "report",
        Command::Replay(_) => "replay",
    };
    let seed = cli.common.seed;
    let artifact = match &cli.command {
        Command::Simulate(a) => simulate(a, seed)?,
        Command::Exact(a) => exact(a)?,
        Command::Continuous(a) => continuous(a)?,
        Command::Classify(a) => Artifact::Json(growth_json(&classify_regions(a.alpha, a.beta, a.a, a.b)?)?),
        Command::Martingale(a) => martingale(a, seed)?,
        Command::Fit(a) => fit(a)?,
        Command::Distance(a) => distance(a, seed)?,
        Command::Figures(a) => figure(a, seed)?,
        Command::Report(a) => report(a)?,
        Command::Replay(_) => unreachable!("handled above"),
    };
    let config = json!({ "args": serde_json::to_value(&cli.command)?, "format": cli.common.format });
    let meta = meta(name, config, Some(seed));
    let mut file;
    let out: &mut dyn Write = match &cli.common.output {
        Some(path) => {
            file = BufWriter::new(File::create(path)?);
            &mut file
        }
        None => stdout,
    };
    match (artifact, cli.common.format) {
        (Artifact::Table(t), Some(Format::Json)) => write_json(out, &meta, &t)?,
        (Artifact::Table(t), _) => write_csv(out, &meta, &t)?,
        (Artifact::Json(v), Some(Format::Csv)) => write_csv(out, &meta, &json_to_table(&v)?)?,
        (Artifact::Json(v), _) => write_json(out, &meta, &v)?,
    }
    out.flush()?;
    Ok(())
}

/// Flattens a JSON object of numbers, booleans and numeric arrays into one CSV row.
fn json_to_table(v: &Value) -> Result<Table> {
    fn walk(prefix: &str, v: &Value, cols: &mut Vec<String>, row: &mut Vec<f64>) {
        match v {
            Value::Number(x) => {
                cols.push(prefix.to_string());
                row.push(x.as_f64().unwrap_or(f64::NAN));
            }
            Value::Bool(b) => {
                cols.push(prefix.to_string());
                row.push(flag(*b));
            }
            Value::Null => {
                cols.push(prefix.to_string());
                row.push(f64::NAN);
            }
            Value::Array(items) => {
                for (i, item) in items.iter().enumerate() {
                    walk(&format!("{prefix}_{i}"), item, cols, row);
                }
            }
            Value::Object(map) => {
                for (k, item) in map {
                    let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}_{k}") };
                    walk(&key, item, cols, row);
                }
            }
            Value::String(_) => {}
        }
    }
    let (mut cols, mut row) = (Vec::new(), Vec::new());
    walk("", v, &mut cols, &mut row);
    if cols.is_empty() {
        return Err(invalid("result has no numeric fields for csv output"));
    }
    let mut t = Table::new(cols);
    t.push(row);
    Ok(t)
}

fn discrete_init(values: &[f64]) -> Result<DiscreteInit> {
    DiscreteInit::new(values.to_vec())
}

fn path_init(values: &[f64], tau: f64) -> Result<PathInit> {
    let v = *values.first().ok_or_else(|| invalid("init needs a value"))?;
    if tau > 0.0 {
        PathInit::constant(tau, v)
    } else {
        PathInit::point(v)
    }
}

fn simulate(a: &SimulateArgs, seed: u64) -> Result<Artifact> {
    let spec = match a.process {
        ProcessKind::Discrete => ProcessSpec::DiscreteAdding { p: a.p },
        ProcessKind::Weighted => ProcessSpec::DiscreteWeighted { a: a.a, b: a.b },
        ProcessKind::Continuized => {
            ProcessSpec::Continuized { alpha: a.alpha, beta: a.beta, weights: WeightSpec::constant(a.a, a.b) }
        }
    };
    spec.validate()?;
    if a.reps > 1 {
        let (init, default) = match a.process {
            ProcessKind::Continuized => (InitialCondition::Path(path_init(&a.init, a.tau)?), a.t_max),
            _ => (InitialCondition::Discrete(discrete_init(&a.init)?), a.n as f64),
        };
        let grid = if a.grid.is_empty() { vec![default] } else { a.grid.clone() };
        let s = mc_ensemble(&spec, &init, &grid, a.reps, seed)?;
        let mut t = Table::new([
            "index", "x_mean", "x_se", "x2_mean", "x2_se", "x3_mean", "x3_se", "m_mean", "m_se", "m2_mean", "m2_se",
        ]);
        for r in &s.rows {
            let (m, m2) = (r.m.unwrap_or(nan_est()), r.m2.unwrap_or(nan_est()));
            t.push(vec![
                r.index, r.x.mean, r.x.se, r.x2.mean, r.x2.se, r.x3.mean, r.x3.se, m.mean, m.se, m2.mean, m2.se,
            ]);
        }
        return Ok(Artifact::Table(t));
    }
    match a.process {
        ProcessKind::Continuized => {
            let tr = simulate_continuized(&path_init(&a.init, a.tau)?, &spec, a.t_max, seed)?;
            let mut t = Table::new(["t", "x", "integral"]);
            let tau = tr.init().tau();
            t.push(vec![tau, tr.value_at(tau), tr.integral_to(tau)]);
            for &s in tr.jump_times() {
                t.push(vec![s, tr.value_at(s), tr.integral_to(s)]);
            }
            t.push(vec![a.t_max, tr.value_at(a.t_max), tr.integral_to(a.t_max)]);
            Ok(Artifact::Table(t))
        }
        kind => {
            let init = discrete_init(&a.init)?;
            let tr = match kind {
                ProcessKind::Weighted => simulate_weighted(&init, a.a, a.b, a.n, seed)?,
                _ => simulate_discrete(&init, a.p, a.n, seed)?,
            };
            let mut t = Table::new(["n", "x", "s"]);
            for n in 1..=tr.len() {
                t.push(vec![n as f64, tr.x(n), tr.s(n)]);
            }
            Ok(Artifact::Table(t))
        }
    }
}

fn nan_est() -> crate::stats::Estimate {
    crate::stats::Estimate { mean: f64::NAN, se: f64::NAN }
}

fn exact(a: &ExactArgs) -> Result<Artifact> {
    let init = discrete_init(&a.init)?;
    if a.stride == 0 {
        return Err(invalid("stride must be positive"));
    }
    crate::process::check_probability(a.p)?;
    if a.n < init.len() {
        return Err(invalid(format!("n = {} is below the initial length {}", a.n, init.len())));
    }
    let base_only = |what: &str| -> Result<()> {
        if init.values() != [1.0] || a.p != 1.0 {
            return Err(invalid(format!("{what} moments are available for init = [1], p = 1 only")));
        }
        Ok(())
    };
    let (power, points): (i32, Vec<(usize, f64)>) = match a.moment.as_str() {
        "1" | "mean" => {
            mean_exact(&init, a.p, a.n)?;
            (1, MeanIter::new(init.values(), a.p).take(a.n - init.len() + 1).collect())
        }
        "2" | "second" => {
            let it = SecondMomentIter::new(init.values(), a.p).take(a.n - init.len() + 1);
            (2, it.map(|s| (s.n, s.q)).collect())
        }
        "3" | "third" => {
            base_only("third")?;
            (3, third_moments::<f64>().take(a.n).collect())
        }
        "4" | "fourth" => {
            base_only("fourth")?;
            (4, fourth_moments::<f64>().take(a.n).collect())
        }
        "product" => {
            product_moment_exact(&init, a.p, a.m, a.n)?;
            (2, ProductRow::new(init.values(), a.p, a.m).take(a.n - a.m + 1).collect())
        }
        other => return Err(invalid(format!("unknown moment '{other}'; use 1, 2, 3, 4 or product"))),
    };
    let mut t = Table::new(["n", "value", "scaled"]);
    let last = points.len().saturating_sub(1);
    for (i, (n, v)) in points.into_iter().enumerate() {
        if n % a.stride == 0 || i == last {
            t.push(vec![n as f64, v, v / (n as f64).powi(power)]);
        }
    }
    Ok(Artifact::Table(t))
}

fn time_grid(explicit: &[f64], t_max: f64, steps: usize) -> Result<Vec<f64>> {
    if !explicit.is_empty() {
        return Ok(explicit.to_vec());
    }
    if !(t_max > 0.0) || steps == 0 {
        return Err(invalid("need t_max > 0 and steps > 0"));
    }
    Ok((1..=steps).map(|i| t_max * i as f64 / steps as f64).collect())
}

fn continuous(a: &ContinuousArgs) -> Result<Artifact> {
    let grid = time_grid(&a.t, a.t_max, a.steps)?;
    let table = match a.quantity {
        Quantity::Mean => {
            let init = path_init(&[a.init_value], a.tau)?;
            let mut t = Table::new(["t", "mean"]);
            for &x in &grid {
                t.push(vec![x, mean_continuized(&init, x)?]);
            }
            t
        }
        Quantity::Second => {
            let mut t = Table::new(["t", "q", "r", "big_q", "big_q_prime", "q_over_t2"]);
            for s in second_moment_continuized_base(&grid)? {
                t.push(vec![s.t, s.q, s.r, s.big_q, s.big_q_prime, s.q / (s.t * s.t)]);
            }
            t
        }
        Quantity::Product => {
            if !(a.s > 0.0) {
                return Err(invalid("s must be positive"));
            }
            let state = second_moment_continuized_base(&[a.s])?[0];
            let mut t = Table::new(["s", "t", "c", "c_over_t2", "c_over_1_plus_t"]);
            for &x in &grid {
                let c = product_moment_from_state(&state, x)?;
                t.push(vec![a.s, x, c, c / (x * x), c / (1.0 + x)]);
            }
            t
        }
        Quantity::Third => {
            let mut t = Table::new(["t", "alpha0", "alpha1", "alpha2", "alpha3", "beta2", "beta3", "gamma1"]);
            for s in third_moment_continuized_base(&grid)? {
                t.push(vec![s.t, s.alpha[0], s.alpha[1], s.alpha[2], s.alpha[3], s.beta2, s.beta3, s.gamma1]);
            }
            t
        }
        Quantity::Generalized => {
            let m = generalized_mean_ode(a.alpha, a.beta, a.a, a.b, &grid)?;
            let mut t = Table::new(["t", "m"]);
            for (x, v) in m.t.iter().zip(&m.m) {
                t.push(vec![*x, *v]);
            }
            t
        }
    };
    Ok(Artifact::Table(table))
}

/// Region label as a number for csv output.
pub fn region_code(label: RegionLabel) -> f64 {
    match label {
        RegionLabel::RealDecaying => 0.0,
        RegionLabel::RealGrowing => 1.0,
        RegionLabel::OscillatoryDecaying => 2.0,
        RegionLabel::OscillatoryGrowing => 3.0,
    }
}

/// Classification as json, with the roots spelled `re+imi` alongside the numeric pairs.
pub fn growth_json(g: &GrowthReport) -> Result<Value> {
    let mut v = serde_json::to_value(g)?;
    v["sigma"] = json!(g.sigma_roots.iter().map(|z| format!("{}{:+}i", z.re, z.im)).collect::<Vec<_>>());
    v["region_code"] = json!(region_code(g.region_label));
    Ok(v)
}

fn martingale_of(a: &MartingaleArgs, seed: u64, stream: u64) -> Result<MartingaleSeries> {
    match a.variant {
        Variant::Continuized => {
            let grid = if a.t.is_empty() { (1..=100).map(f64::from).collect() } else { a.t.clone() };
            let top = grid.iter().copied().fold(0.0, f64::max);
            let tr = simulate_continuized_with(
                &path_init(&a.init, 0.0)?,
                &ProcessSpec::continuized_base(),
                top,
                seed,
                stream,
            )?;
            continuized_martingale(&tr, &grid, a.tol)
        }
        Variant::Base => base_martingale(&simulate_discrete_with(&discrete_init(&a.init)?, 1.0, a.n, seed, stream)?),
        Variant::PAdding => {
            p_martingale(&simulate_discrete_with(&discrete_init(&a.init)?, a.p, a.n, seed, stream)?, a.p, a.tol)
        }
        Variant::Generalized => generalized_discrete_martingale(
            &simulate_weighted_with(&discrete_init(&a.init)?, a.a, a.b, a.n, seed, stream)?,
            a.a,
            a.b,
        ),
    }
}

fn martingale(a: &MartingaleArgs, seed: u64) -> Result<Artifact> {
    if a.reps <= 1 {
        let s = martingale_of(a, seed, 0)?;
        let mut t = Table::new(["index", "value", "coeff_a", "coeff_b"]);
        for (i, (x, v)) in s.index.iter().zip(&s.values).enumerate() {
            let ca = s.coeff_a.as_ref().map_or(f64::NAN, |c| c[i]);
            let cb = s.coeff_b.as_ref().map_or(f64::NAN, |c| c[i]);
            t.push(vec![*x, *v, ca, cb]);
        }
        return Ok(Artifact::Table(t));
    }
    let ladder = if !a.ladder.is_empty() {
        a.ladder.clone()
    } else if a.variant == Variant::Continuized {
        vec![25.0, 50.0, 100.0]
    } else {
        let mut l = vec![a.n as f64];
        while l.len() < 4 && l[0] >= 2.0 * a.init.len().max(1) as f64 {
            l.insert(0, (l[0] / 2.0).floor());
        }
        l
    };
    let mut a_local = MartingaleArgs { t: ladder.clone(), ..clone_args(a) };
    a_local.n = ladder.iter().copied().fold(0.0, f64::max) as usize;
    let samples = ensemble_map(a.reps, |k| {
        let s = martingale_of(&a_local, seed, k)?;
        ladder
            .iter()
            .map(|&x| {
                let i = s
                    .index
                    .iter()
                    .position(|&v| v == x)
                    .ok_or_else(|| invalid(format!("ladder point {x} not on the index grid")))?;
                Ok(s.values[i])
            })
            .collect::<Result<Vec<f64>>>()
    })?;
    Artifact::json(diagnose(&ladder, &samples)?)
}

fn clone_args(a: &MartingaleArgs) -> MartingaleArgs {
    MartingaleArgs {
        variant: a.variant,
        init: a.init.clone(),
        p: a.p,
        a: a.a,
        b: a.b,
        n: a.n,
        t: a.t.clone(),
        tol: a.tol,
        reps: a.reps,
        ladder: a.ladder.clone(),
    }
}

fn fit(a: &FitArgs) -> Result<Artifact> {
    let (mu1, mu2, mu3) = match a.exact_n {
        Some(n) => {
            let m = limit_moments_2m(n)?;
            (1.0, m[0], m[1])
        }
        None => (a.mu1, a.mu2, a.mu3),
    };
    let report = loggamma_fit(mu1, mu2, mu3)?;
    Artifact::json(json!({ "inputs": [mu1, mu2, mu3], "fit": report }))
}

fn distance(a: &DistanceArgs, seed: u64) -> Result<Artifact> {
    let mut t = Table::new(["n", "d2_gamma2", "d2_exp1", "scaled_mean", "single_mean"]);
    for &n in &a.n {
        let s = limit_density_samples(&DiscreteInit::unit(), n, a.reps, seed)?;
        let mean = |xs: &[f64]| xs.iter().sum::<f64>() / xs.len() as f64;
        t.push(vec![
            n as f64,
            wasserstein2(&s.scaled, Target::Gamma2)?,
            wasserstein2(&s.single, Target::Exp1)?,
            mean(&s.scaled),
            mean(&s.single),
        ]);
    }
    Ok(Artifact::Table(t))
}

fn figure(a: &FiguresArgs, seed: u64) -> Result<Artifact> {
    let grid = GridSpec::new(a.lo, a.hi, a.steps)?;
    let table = match a.which {
        1 => {
            let (left, right) = figures::figure1(a.n, a.reps, seed)?;
            if a.panel == Panel::Left {
                left
            } else {
                right
            }
        }
        2 => figures::figure2(&a.p_grid, a.n_max)?,
        3 => {
            let ns = if a.ns.is_empty() { (1..=20).map(|i| 50 * i).collect() } else { a.ns.clone() };
            figures::figure3(a.p, &ns)?
        }
        4 => figures::figure4(a.alpha, a.beta, grid, grid)?,
        5 => figures::figure5(grid, grid)?,
        _ => figures::figure6(a.alpha, grid, grid)?,
    };
    Ok(Artifact::Table(table))
}

fn report(a: &ReportArgs) -> Result<Artifact> {
    let c = named_constants();
    let unit = DiscreteInit::unit();
    let q = crate::exact::second_moment_exact(&unit, 1.0, a.n)?.q;
    let nf = a.n as f64;
    let t3 = crate::exact::third_moment_exact(a.n);
    let f4 = crate::exact::fourth_moment_exact(a.n);
    let cont = second_moment_continuized_base(&[a.t])?[0];
    let limits = limit_moments_2m(a.n)?;
    let classify = growth_json(&classify_regions(2.0, 1.0, 0.5, -1.0)?)?;
    Artifact::json(json!({
        "constants": c,
        "discrete": {
            "n": a.n,
            "q_over_n2": q / (nf * nf),
            "k_closed_form": k_closed_form(&unit),
            "k_extrapolated": k_limit(&unit, 1.0, 4 * a.n.max(100))?.value,
            "t_over_n3": t3 / nf.powi(3),
            "f_over_n4": f4 / nf.powi(4),
        },
        "continuized": {
            "t": a.t,
            "q_over_t2": cont.q / (a.t * a.t),
            "k_fit": continuized_k_fit(a.t.max(50.0))?,
        },
        "limit_moments_2m": { "n": a.n, "mu2": limits[0], "mu3": limits[1], "mu4": limits[2] },
        "loggamma_rounded": loggamma_fit(1.0, 1.225, 1.932)?,
        "loggamma_exact": loggamma_fit(1.0, limits[0], limits[1])?,
        "classify_example": classify,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let mut full = vec!["ulam"];
        full.extend_from_slice(args);
        let code = run_with(full, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn help_and_usage_errors() {
        let (code, out, _) = run_capture(&["simulate", "--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("Usage"));
        assert_eq!(run_capture(&["simulate", "--bogus"]).0, 2);
        assert_eq!(run_capture(&["exact", "--p", "1.5"]).0, 2);
    }

    #[test]
    fn exact_rows() {
        let (code, out, _) = run_capture(&["exact", "--moment", "2", "--n", "100000", "--stride", "50000"]);
        assert_eq!(code, 0);
        let last = out.lines().last().unwrap();
        let scaled: f64 = last.split(',').nth(2).unwrap().parse().unwrap();
        assert!((scaled - 1.838).abs() < 2e-3, "{scaled}");
    }

    #[test]
    fn classify_json() {
        let (code, out, _) = run_capture(&["classify", "--alpha", "2", "--beta", "1", "--A", "0.5", "--B", "-1"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["data"]["oscillatory"], json!(true));
        assert!((v["data"]["sigma_roots"][0][0].as_f64().unwrap() + 1.5).abs() < 1e-12);
        assert!(v["meta"]["version"].is_string());
    }

    #[test]
    fn deterministic_output() {
        let a = run_capture(&["simulate", "--n", "50", "--seed", "7"]).1;
        let b = run_capture(&["simulate", "--n", "50", "--seed", "7"]).1;
        assert_eq!(a, b);
        assert_eq!(a.lines().count(), 52);
    }
}
