//! Command-line front end: argument model, dispatch and table rendering.
//!
//! Every command renders either a CSV table, preceded by `#` comment lines that
//! carry the schema version and the full configuration, or a JSON document with
//! the same values. Execution settings (`--out`, `--threads`) are not part of the
//! configuration, so outputs are identical across thread counts.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Map, Value};

use syk_rank1::ed::{run_ensemble, EnsembleResult, EnsembleSpec, StatisticsOptions};
use syk_rank1::genfunc::{moments_asymptotic, moments_gf};
use syk_rank1::qcomb::qtilde;
use syk_rank1::spectral::{
    classify_regime, density_model, lambda_critical, solve_secular, spectral_edge,
    DeformationParams, QHermiteDensity,
};

pub const SCHEMA_VERSION: u32 = 1;
/// Largest `N` accepted without `--large`.
pub const DESK_SCALE_MAX_N: usize = 26;
pub const EXACT_P_MAX: usize = 30;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] syk_rank1::Error),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Core(syk_rank1::Error::GapAbsent { .. }) => "gap_absent",
            CliError::Core(syk_rank1::Error::SizeLimit { .. }) => "size_limit",
            CliError::Core(syk_rank1::Error::Domain(_)) => "domain",
            CliError::Core(syk_rank1::Error::NonConvergence { .. }) => "non_convergence",
            CliError::Core(syk_rank1::Error::Config(_)) => "config",
            CliError::Core(_) => "numerical",
            CliError::Config(_) => "config",
            CliError::Io(_) => "io",
        }
    }

    /// Single-line JSON error record.
    pub fn record(&self) -> String {
        json!({ "error": { "kind": self.kind(), "message": self.to_string() } }).to_string()
    }
}

pub type CliResult<T> = Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(name = "syk-rank1", version, about = "Moments, phase transition and split eigenvalue of the SYK model with a rank-one source")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Table of subtracted moments m_p: exact, asymptotic and optionally empirical.
    Moments(MomentsArgs),
    /// Phase of the composition scheme and its singular data.
    Regime(CouplingArgs),
    /// Split eigenvalue from the secular equation.
    Split(CouplingArgs),
    /// Q-Hermite bulk density on a grid, with the split marker and an optional histogram.
    Density(DensityArgs),
    /// Sample mean and spread of the split eigenvalue against the analytic value, per N.
    ReproduceTable(TableArgs),
    /// Full ensemble: eigenvalues of every sample plus statistics.
    Ensemble(EnsembleArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Moments(_) => "moments",
            Command::Regime(_) => "regime",
            Command::Split(_) => "split",
            Command::Density(_) => "density",
            Command::ReproduceTable(_) => "reproduce-table",
            Command::Ensemble(_) => "ensemble",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct OutputArgs {
    /// Output file; stdout when omitted.
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

/// Crossing weight: explicit `--q`, or `q̃(N, p)` from `--N`.
#[derive(Debug, Clone, Args, Serialize)]
pub struct WeightArgs {
    #[arg(long)]
    pub q: Option<f64>,
    #[arg(long = "N")]
    #[serde(rename = "N")]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 4)]
    pub p: usize,
}

impl WeightArgs {
    fn resolve(&self) -> CliResult<f64> {
        match (self.q, self.n) {
            (Some(q), _) => Ok(q),
            (None, Some(n)) => Ok(qtilde(n, self.p)?),
            (None, None) => Err(CliError::Config("either --q or --N is required".into())),
        }
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SamplingArgs {
    #[arg(long, default_value_t = 50)]
    pub samples: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Allow N above the desk-scale limit.
    #[arg(long)]
    pub large: bool,
    /// Worker threads for the sample loop; results do not depend on it.
    #[arg(long)]
    #[serde(skip)]
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct MomentsArgs {
    #[arg(long)]
    pub lambda1: f64,
    #[arg(long, default_value_t = 10)]
    pub pmax: usize,
    /// Truncation order of the generating function; defaults to --pmax.
    #[arg(long)]
    pub order: Option<usize>,
    #[command(flatten)]
    #[serde(flatten)]
    pub weight: WeightArgs,
    /// Add empirical moments from an exact-diagonalization ensemble (needs --N).
    #[arg(long)]
    pub ensemble: bool,
    #[command(flatten)]
    #[serde(flatten)]
    pub sampling: SamplingArgs,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CouplingArgs {
    #[arg(long)]
    pub lambda1: f64,
    #[command(flatten)]
    #[serde(flatten)]
    pub weight: WeightArgs,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct DensityArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub weight: WeightArgs,
    /// Source strength; adds the split-eigenvalue marker when supercritical.
    #[arg(long)]
    pub lambda1: Option<f64>,
    /// Grid points across the support.
    #[arg(long, default_value_t = 201)]
    pub points: usize,
    /// Add a histogram of an ensemble (needs --N).
    #[arg(long)]
    pub histogram: bool,
    #[arg(long, default_value_t = 60)]
    pub bins: usize,
    #[command(flatten)]
    #[serde(flatten)]
    pub sampling: SamplingArgs,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct TableArgs {
    /// Comma-separated list of Majorana counts.
    #[arg(long = "N", value_delimiter = ',', default_values_t = [16, 20, 24])]
    #[serde(rename = "N")]
    pub n: Vec<usize>,
    #[arg(long, default_value_t = 4)]
    pub p: usize,
    #[arg(long, default_value_t = 3.0)]
    pub lambda1: f64,
    #[command(flatten)]
    #[serde(flatten)]
    pub sampling: SamplingArgs,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct EnsembleArgs {
    #[arg(long = "N")]
    #[serde(rename = "N")]
    pub n: usize,
    #[arg(long, default_value_t = 4)]
    pub p: usize,
    #[arg(long)]
    pub lambda1: f64,
    #[arg(long, default_value_t = 60)]
    pub bins: usize,
    #[arg(long, default_value_t = 6)]
    pub pmax: usize,
    #[command(flatten)]
    #[serde(flatten)]
    pub sampling: SamplingArgs,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: OutputArgs,
}

/// One table cell; numbers print with 17 significant digits.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(u64),
    Text(String),
    Empty,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(v) => format!("{v:.16e}"),
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(v) => json!(v),
            Cell::Int(v) => json!(v),
            Cell::Text(s) => json!(s),
            Cell::Empty => Value::Null,
        }
    }
}

fn opt(v: Option<f64>) -> Cell {
    v.map_or(Cell::Empty, Cell::Num)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    fn new(columns: &[&'static str]) -> Self {
        Self {
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

fn header(command: &str, config: &Value) -> String {
    format!("# syk-rank1 {command}\n# schema_version={SCHEMA_VERSION}\n# config={config}\n")
}

fn render_table(command: &str, config: &Value, table: &Table, format: Format) -> String {
    match format {
        Format::Csv => {
            let mut out = header(command, config);
            out.push_str(&table.columns.join(","));
            out.push('\n');
            for row in &table.rows {
                let cells: Vec<String> = row.iter().map(Cell::csv).collect();
                out.push_str(&cells.join(","));
                out.push('\n');
            }
            out
        }
        Format::Json => {
            let rows: Vec<Value> = table
                .rows
                .iter()
                .map(|row| {
                    let map: Map<String, Value> = table
                        .columns
                        .iter()
                        .zip(row)
                        .map(|(c, v)| (c.to_string(), v.json()))
                        .collect();
                    Value::Object(map)
                })
                .collect();
            let doc = json!({
                "schema_version": SCHEMA_VERSION,
                "command": command,
                "config": config,
                "rows": rows,
            });
            format!("{doc}\n")
        }
    }
}

fn config_value<T: Serialize>(args: &T) -> Value {
    serde_json::to_value(args).expect("configurations serialize")
}

fn check_n(n: usize, large: bool) -> CliResult<()> {
    if n > DESK_SCALE_MAX_N && !large {
        return Err(CliError::Config(format!(
            "N = {n} exceeds the desk-scale limit {DESK_SCALE_MAX_N}; pass --large to run it"
        )));
    }
    Ok(())
}

fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> CliResult<T> {
    match threads {
        None => Ok(f()),
        Some(0) => Err(CliError::Config("--threads must be at least 1".into())),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| CliError::Config(format!("thread pool: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

fn ensemble(n: usize, p: usize, lambda1: f64, sampling: &SamplingArgs) -> CliResult<EnsembleResult> {
    check_n(n, sampling.large)?;
    let spec = EnsembleSpec {
        n,
        p,
        lambda1,
        sample_count: sampling.samples,
        master_seed: sampling.seed,
    };
    Ok(with_threads(sampling.threads, || run_ensemble(&spec))??)
}

/// Runs the command and returns the rendered output.
pub fn execute(cli: &Cli) -> CliResult<String> {
    let name = cli.command.name();
    match &cli.command {
        Command::Moments(a) => {
            let table = cmd_moments(a)?;
            Ok(render_table(name, &config_value(a), &table, a.output.format))
        }
        Command::Regime(a) => {
            let table = cmd_regime(a)?;
            Ok(render_table(name, &config_value(a), &table, a.output.format))
        }
        Command::Split(a) => {
            let table = cmd_split(a)?;
            Ok(render_table(name, &config_value(a), &table, a.output.format))
        }
        Command::Density(a) => {
            let table = cmd_density(a)?;
            Ok(render_table(name, &config_value(a), &table, a.output.format))
        }
        Command::ReproduceTable(a) => {
            let table = cmd_reproduce_table(a)?;
            Ok(render_table(name, &config_value(a), &table, a.output.format))
        }
        Command::Ensemble(a) => cmd_ensemble(a),
    }
}

/// Output path of the command, if any.
pub fn output_path(cli: &Cli) -> Option<&PathBuf> {
    match &cli.command {
        Command::Moments(a) => a.output.out.as_ref(),
        Command::Regime(a) | Command::Split(a) => a.output.out.as_ref(),
        Command::Density(a) => a.output.out.as_ref(),
        Command::ReproduceTable(a) => a.output.out.as_ref(),
        Command::Ensemble(a) => a.output.out.as_ref(),
    }
}

pub fn cmd_moments(a: &MomentsArgs) -> CliResult<Table> {
    let q = a.weight.resolve()?;
    let params = DeformationParams::new(q, a.lambda1)?;
    if a.pmax == 0 || a.pmax > EXACT_P_MAX {
        return Err(CliError::Config(format!("--pmax must lie in 1..={EXACT_P_MAX}")));
    }
    let order = a.order.unwrap_or(a.pmax);
    if order < a.pmax {
        return Err(CliError::Config("--order must be at least --pmax".into()));
    }
    let e_split = match solve_secular(&params) {
        Ok(e) => Some(e),
        Err(syk_rank1::Error::GapAbsent { .. }) => None,
        Err(e) => return Err(e.into()),
    };
    let empirical = if a.ensemble {
        let n = a
            .weight
            .n
            .ok_or_else(|| CliError::Config("--ensemble needs --N".into()))?;
        let p_max = a.pmax.min(syk_rank1::ed::EMPIRICAL_P_MAX);
        if a.pmax > p_max {
            return Err(CliError::Config(format!(
                "empirical moments are limited to --pmax <= {p_max}"
            )));
        }
        let result = ensemble(n, a.weight.p, a.lambda1, &a.sampling)?;
        Some(syk_rank1::ed::empirical_moments(&result, p_max, q)?)
    } else {
        None
    };

    let gf = moments_gf(order);
    let mut table = Table::new(&["p", "exact", "asymptotic", "empirical", "stderr", "polynomial"]);
    for p in 1..=a.pmax {
        let poly = gf.coeff(p);
        let (emp, err) = match &empirical {
            Some(m) => (Cell::Num(m[p - 1].estimate), opt(m[p - 1].stderr)),
            None => (Cell::Empty, Cell::Empty),
        };
        table.push(vec![
            Cell::Int(p as u64),
            Cell::Num(poly.eval(a.lambda1, q)),
            opt(e_split.map(|e| moments_asymptotic(p, a.lambda1, e))),
            emp,
            err,
            Cell::Text(poly.to_string()),
        ]);
    }
    Ok(table)
}

pub fn cmd_regime(a: &CouplingArgs) -> CliResult<Table> {
    let q = a.weight.resolve()?;
    let r = classify_regime(&DeformationParams::new(q, a.lambda1)?)?;
    let mut table = Table::new(&[
        "q",
        "lambda1",
        "lambda_critical",
        "regime",
        "rho_c",
        "alpha_exponent",
        "tau_g",
        "rho_g",
        "e_split",
    ]);
    table.push(vec![
        Cell::Num(r.q),
        Cell::Num(r.lambda1),
        Cell::Num(r.lambda_critical),
        Cell::Text(r.regime.as_str().into()),
        Cell::Num(r.rho_c),
        Cell::Num(r.alpha_exponent),
        Cell::Num(r.tau_g),
        Cell::Num(r.rho_g),
        opt(r.e_split),
    ]);
    Ok(table)
}

pub fn cmd_split(a: &CouplingArgs) -> CliResult<Table> {
    let q = a.weight.resolve()?;
    let e = solve_secular(&DeformationParams::new(q, a.lambda1)?)?;
    let mut table = Table::new(&["q", "lambda1", "edge", "e_split"]);
    table.push(vec![
        Cell::Num(q),
        Cell::Num(a.lambda1),
        Cell::Num(spectral_edge(q)?),
        Cell::Num(e),
    ]);
    Ok(table)
}

/// Rows `(kind, energy, value, weight)`: `bulk` grid points of `ρ_QH`, one `delta`
/// marker at `E_split` when supercritical, and `histogram` bin centres.
pub fn cmd_density(a: &DensityArgs) -> CliResult<Table> {
    let q = a.weight.resolve()?;
    if a.points < 2 {
        return Err(CliError::Config("--points must be at least 2".into()));
    }
    let bulk = QHermiteDensity::new(q)?;
    let edge = bulk.support_edge;
    let mut table = Table::new(&["kind", "energy", "value", "weight"]);
    for i in 0..a.points {
        let e = -edge + 2.0 * edge * i as f64 / (a.points - 1) as f64;
        table.push(vec![
            Cell::Text("bulk".into()),
            Cell::Num(e),
            Cell::Num(bulk.density(e)),
            Cell::Empty,
        ]);
    }
    if let Some(lambda1) = a.lambda1 {
        let dim = a.weight.n.map_or(1, |n| 1usize << (n / 2));
        let model = density_model(&DeformationParams::new(q, lambda1)?, dim)?;
        if let Some(split) = model.split {
            table.push(vec![
                Cell::Text("delta".into()),
                Cell::Num(split.energy),
                Cell::Empty,
                if a.weight.n.is_some() { Cell::Num(split.weight) } else { Cell::Empty },
            ]);
        }
    }
    if a.histogram {
        let (n, lambda1) = match (a.weight.n, a.lambda1) {
            (Some(n), Some(l)) => (n, l),
            _ => return Err(CliError::Config("--histogram needs --N and --lambda1".into())),
        };
        let result = ensemble(n, a.weight.p, lambda1, &a.sampling)?;
        let h = syk_rank1::ed::histogram(&result, a.bins, None)?;
        for (k, d) in h.density.iter().enumerate() {
            let (lo, hi) = h.bin_edges(k);
            table.push(vec![
                Cell::Text("histogram".into()),
                Cell::Num(0.5 * (lo + hi)),
                Cell::Num(*d),
                Cell::Empty,
            ]);
        }
    }
    Ok(table)
}

pub fn cmd_reproduce_table(a: &TableArgs) -> CliResult<Table> {
    if a.n.is_empty() {
        return Err(CliError::Config("--N needs at least one value".into()));
    }
    for &n in &a.n {
        check_n(n, a.sampling.large)?;
    }
    let mut table = Table::new(&[
        "N",
        "q_eff",
        "mean_split",
        "analytic_split",
        "sigma_split",
        "samples",
        "used",
        "flagged",
        "beyond_threshold",
        "status",
    ]);
    for &n in &a.n {
        let q = qtilde(n, a.p)?;
        let result = ensemble(n, a.p, a.lambda1, &a.sampling)?;
        let threshold = spectral_edge(q)? * (1.0 + syk_rank1::ed::DEFAULT_SPLIT_MARGIN);
        let beyond = syk_rank1::ed::count_beyond(&result, threshold)
            .iter()
            .filter(|&&c| c > 0)
            .count();
        let samples = Cell::Int(result.samples.len() as u64);
        if a.lambda1 > lambda_critical(q)? {
            let s = syk_rank1::ed::split_statistics(&result, q, a.lambda1)?;
            let used = s.per_sample.len();
            table.push(vec![
                Cell::Int(n as u64),
                Cell::Num(q),
                s.mean.map_or(Cell::Empty, Cell::Num),
                Cell::Num(s.analytic),
                s.sigma_split.map_or(Cell::Empty, Cell::Num),
                samples,
                Cell::Int(used as u64),
                Cell::Int(s.flagged.len() as u64),
                Cell::Int(beyond as u64),
                Cell::Text(if s.flagged.is_empty() { "ok" } else { "flagged samples" }.into()),
            ]);
        } else {
            table.push(vec![
                Cell::Int(n as u64),
                Cell::Num(q),
                Cell::Empty,
                Cell::Empty,
                Cell::Empty,
                samples,
                Cell::Int(0),
                Cell::Int(0),
                Cell::Int(beyond as u64),
                Cell::Text("no split eigenvalue".into()),
            ]);
        }
    }
    Ok(table)
}

/// JSON: the full ensemble result with statistics. CSV: the eigenvalue dump.
pub fn cmd_ensemble(a: &EnsembleArgs) -> CliResult<String> {
    let options = StatisticsOptions {
        p_max: a.pmax,
        bins: a.bins,
        ..StatisticsOptions::default()
    };
    let result = ensemble(a.n, a.p, a.lambda1, &a.sampling)?.with_statistics(&options)?;
    let config = config_value(a);
    match a.output.format {
        Format::Json => {
            let doc = json!({
                "schema_version": SCHEMA_VERSION,
                "command": "ensemble",
                "config": config,
                "result": result,
            });
            Ok(format!("{doc}\n"))
        }
        Format::Csv => {
            let mut buf = header("ensemble", &config).into_bytes();
            result
                .write_eigenvalue_csv(&mut buf)
                .map_err(|e| CliError::Io(e.to_string()))?;
            Ok(String::from_utf8(buf).expect("CSV output is ASCII"))
        }
    }
}
