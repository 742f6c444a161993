//! Command-line front end. Every subcommand writes a table as CSV or JSON,
//! to `--out` or to stdout.
//!
//! Exit codes: 0 on success, 2 on invalid arguments or parameters, 3 on I/O
//! failure.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::ser::{SerializeMap, SerializeSeq};
use serde::{Serialize, Serializer};

use crate::analysis::{
    admissible_grid, boundary_curve, clausius_threshold, linspace, max_point, random_states,
    region_map_averaged, region_map_max_point, tightness_surface, CouplingEnsemble,
};
use crate::engine::{uniform_times, Dynamics};
use crate::error::Error;
use crate::model::{
    system_state, EnvironmentParams, InteractionKind, InteractionModel, SystemStateParams,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "landauer",
    version,
    about = "Entropic and thermodynamic Landauer bounds for a qubit coupled to a thermal qubit"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output file; stdout when omitted.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Worker threads; 0 uses the available parallelism.
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Time series of β⟨Q⟩, ΔS and 𝓑.
    Evolve(EvolveArgs),
    /// Closed-form and time-domain values at the XX swap time.
    Maxpoint(MaxpointArgs),
    /// Region label of every admissible (α², δ) grid point.
    Regions(RegionsArgs),
    /// XX maxima divided by β over an (α², β) grid.
    Surface(SurfaceArgs),
    /// Coupling-averaged β⟨Q⟩, ΔS and 𝓑 for one initial state.
    Average(AverageArgs),
    /// Crossover curve 𝓑_max = ΔS_max in the (α², δ) plane.
    Boundary(BoundaryArgs),
    /// Largest α² with non-negative heat.
    Threshold(ThresholdArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelArg {
    Xx,
    Ising,
    Generic,
}

impl From<ModelArg> for InteractionKind {
    fn from(m: ModelArg) -> Self {
        match m {
            ModelArg::Xx => InteractionKind::Xx,
            ModelArg::Ising => InteractionKind::Ising,
            ModelArg::Generic => InteractionKind::Generic,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct StateArgs {
    /// Ground-state population α² of the system.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub alpha_sq: f64,

    /// Coherence as a fraction of its maximum α√(1−α²).
    #[arg(long, conflicts_with = "delta", allow_negative_numbers = true)]
    pub w: Option<f64>,

    /// Coherence δ itself.
    #[arg(long, allow_negative_numbers = true)]
    pub delta: Option<f64>,

    /// Inverse temperature of the environment.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub beta: f64,
}

impl StateArgs {
    fn params(&self) -> crate::Result<SystemStateParams> {
        match self.delta {
            Some(delta) => SystemStateParams::from_coherence(self.alpha_sq, delta),
            None => SystemStateParams::new(self.alpha_sq, self.w.unwrap_or(0.0)),
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct EnsembleArgs {
    /// Couplings are drawn uniformly from (0, j_max).
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub j_max: f64,

    #[arg(long, default_value_t = 500)]
    pub samples: usize,

    /// Evaluation time of every sample.
    #[arg(long, default_value_t = 1000.0, allow_negative_numbers = true)]
    pub t_eval: f64,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Args)]
pub struct EvolveArgs {
    #[arg(long, value_enum, default_value_t = ModelArg::Xx)]
    pub model: ModelArg,

    #[command(flatten)]
    pub state: StateArgs,

    /// Coupling of the XX or Ising model.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub j: f64,

    /// Generic-model couplings.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub jx: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub jy: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub jz: f64,

    /// End of the window; one XX period π/(2J) by default, 10 otherwise.
    #[arg(long, allow_negative_numbers = true)]
    pub t_max: Option<f64>,

    #[arg(long, default_value_t = 400)]
    pub steps: usize,
}

#[derive(Debug, Clone, Args)]
pub struct MaxpointArgs {
    #[command(flatten)]
    pub state: StateArgs,

    /// XX coupling used for the time-domain evaluation.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub j: f64,
}

#[derive(Debug, Clone, Args)]
pub struct RegionsArgs {
    /// `xx` labels the swap-time maxima; other models label averages.
    #[arg(long, value_enum, default_value_t = ModelArg::Xx)]
    pub model: ModelArg,

    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub beta: f64,

    /// Points per axis of the (α², δ) grid.
    #[arg(long, default_value_t = 200)]
    pub grid: usize,

    /// Use this many seeded random states instead of the grid.
    #[arg(long)]
    pub random_states: Option<usize>,

    #[command(flatten)]
    pub ensemble: EnsembleArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SurfaceArgs {
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub w: f64,

    /// Points per axis.
    #[arg(long, default_value_t = 200)]
    pub grid: usize,

    #[arg(long, default_value_t = 0.1, allow_negative_numbers = true)]
    pub beta_min: f64,

    #[arg(long, default_value_t = 10.0, allow_negative_numbers = true)]
    pub beta_max: f64,
}

#[derive(Debug, Clone, Args)]
pub struct AverageArgs {
    #[arg(long, value_enum, default_value_t = ModelArg::Ising)]
    pub model: ModelArg,

    #[command(flatten)]
    pub state: StateArgs,

    #[command(flatten)]
    pub ensemble: EnsembleArgs,
}

#[derive(Debug, Clone, Args)]
pub struct BoundaryArgs {
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub beta: f64,

    /// Number of α² values in [0, 1].
    #[arg(long, default_value_t = 200)]
    pub grid: usize,
}

#[derive(Debug, Clone, Args)]
pub struct ThresholdArgs {
    #[arg(long, value_enum, default_value_t = ModelArg::Xx)]
    pub model: ModelArg,

    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub beta: f64,

    /// Estimate from a coupling ensemble instead of the closed form.
    #[arg(long)]
    pub monte_carlo: bool,

    /// Number of α² values scanned before bisection.
    #[arg(long, default_value_t = 101)]
    pub grid: usize,

    #[command(flatten)]
    pub ensemble: EnsembleArgs,
}

/// One output cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Float(f64),
    Int(u64),
    Text(String),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            // 17 significant digits; −0 prints as 0
            Cell::Float(x) => format!("{:.16e}", if *x == 0.0 { 0.0 } else { *x }),
            Cell::Int(n) => n.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }
}

impl Serialize for Cell {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Cell::Float(x) => s.serialize_f64(if *x == 0.0 { 0.0 } else { *x }),
            Cell::Int(n) => s.serialize_u64(*n),
            Cell::Text(t) => s.serialize_str(t),
        }
    }
}

/// Named columns with rows in output order.
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

    pub fn write_csv(&self, out: &mut impl Write) -> io::Result<()> {
        writeln!(out, "{}", self.columns.join(","))?;
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(Cell::csv).collect();
            writeln!(out, "{}", line.join(","))?;
        }
        Ok(())
    }

    pub fn write_json(&self, out: &mut impl Write) -> io::Result<()> {
        serde_json::to_writer_pretty(&mut *out, self)?;
        writeln!(out)
    }
}

struct RowRef<'a>(&'a [&'static str], &'a [Cell]);

impl Serialize for RowRef<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in self.0.iter().zip(self.1) {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

impl Serialize for Table {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.rows.len()))?;
        for row in &self.rows {
            seq.serialize_element(&RowRef(&self.columns, row))?;
        }
        seq.end()
    }
}

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Io(io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => EXIT_CONFIG,
            CliError::Io(_) => EXIT_IO,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(msg) => write!(f, "invalid configuration: {msg}"),
            CliError::Io(e) => write!(f, "I/O error: {e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Config(e.to_string())
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

fn f(x: f64) -> Cell {
    Cell::Float(x)
}

fn model_for(kind: ModelArg, j: f64, jx: f64, jy: f64, jz: f64) -> crate::Result<InteractionModel> {
    match kind {
        ModelArg::Xx => InteractionModel::xx(j),
        ModelArg::Ising => InteractionModel::ising(j),
        ModelArg::Generic => InteractionModel::generic(jx, jy, jz),
    }
}

pub fn evolve_table(args: &EvolveArgs) -> Result<Table, CliError> {
    let params = args.state.params()?;
    let env = EnvironmentParams::new(args.state.beta)?;
    let model = model_for(args.model, args.j, args.jx, args.jy, args.jz)?;
    let t_max = args
        .t_max
        .unwrap_or_else(|| model.population_period().unwrap_or(10.0));
    if !(t_max.is_finite() && t_max >= 0.0) {
        return Err(Error::param("t_max", t_max, "must be finite and ≥ 0").into());
    }
    let dynamics = Dynamics::new(&model)?;
    let sys0 = system_state(&params);
    let times = uniform_times(t_max, args.steps);
    let records = {
        use rayon::prelude::*;
        times
            .par_iter()
            .map(|&t| dynamics.record(&sys0, &env, t))
            .collect::<crate::Result<Vec<_>>>()?
    };
    let mut table = Table::new(&["t", "beta_q", "delta_s", "thermo_b"]);
    for r in records {
        table.push(vec![f(r.t), f(r.beta_q), f(r.delta_s), f(r.thermo_b)]);
    }
    Ok(table)
}

pub fn maxpoint_table(args: &MaxpointArgs) -> Result<Table, CliError> {
    let params = args.state.params()?;
    let env = EnvironmentParams::new(args.state.beta)?;
    let model = InteractionModel::xx(args.j)?;
    let t_swap = model
        .swap_time()
        .ok_or_else(|| Error::param("j", args.j, "must be non-zero"))?;
    let closed = max_point(&params, env.beta())?;
    let timed = Dynamics::new(&model)?.record(&system_state(&params), &env, t_swap)?;
    let diff = (closed.beta_q_max - timed.beta_q)
        .abs()
        .max((closed.ds_max - timed.delta_s).abs())
        .max((closed.b_max - timed.thermo_b).abs());
    let mut table = Table::new(&[
        "alpha_sq",
        "w",
        "beta",
        "beta_q_max",
        "ds_max",
        "b_max",
        "beta_q_max_time",
        "ds_max_time",
        "b_max_time",
        "max_abs_diff",
    ]);
    table.push(vec![
        f(params.alpha_sq()),
        f(params.w()),
        f(env.beta()),
        f(closed.beta_q_max),
        f(closed.ds_max),
        f(closed.b_max),
        f(timed.beta_q),
        f(timed.delta_s),
        f(timed.thermo_b),
        f(diff),
    ]);
    Ok(table)
}

pub fn regions_table(args: &RegionsArgs) -> Result<Table, CliError> {
    EnvironmentParams::new(args.beta)?;
    if args.grid < 2 {
        return Err(Error::param("grid", args.grid as f64, "must be ≥ 2").into());
    }
    let points = match args.random_states {
        Some(n) => random_states(n, args.ensemble.seed),
        None => admissible_grid(args.grid),
    };
    let labels = match args.model {
        ModelArg::Xx => region_map_max_point(args.beta, &points)?,
        kind => {
            let e = &args.ensemble;
            let ensemble =
                CouplingEnsemble::new(kind.into(), e.j_max, e.samples, e.t_eval, e.seed)?;
            region_map_averaged(&ensemble, args.beta, &points)?
        }
    };
    let mut table = Table::new(&["alpha_sq", "delta", "label"]);
    for (p, l) in points.iter().zip(labels) {
        table.push(vec![f(p.alpha_sq), f(p.delta), Cell::Text(l.to_string())]);
    }
    Ok(table)
}

pub fn surface_table(args: &SurfaceArgs) -> Result<Table, CliError> {
    if args.grid < 2 {
        return Err(Error::param("grid", args.grid as f64, "must be ≥ 2").into());
    }
    EnvironmentParams::new(args.beta_min)?;
    EnvironmentParams::new(args.beta_max)?;
    if args.beta_max < args.beta_min {
        return Err(Error::param("beta_max", args.beta_max, "must be ≥ beta_min").into());
    }
    let alphas = linspace(0.0, 1.0, args.grid);
    let betas = linspace(args.beta_min, args.beta_max, args.grid);
    let surface = tightness_surface(&alphas, &betas, args.w)?;
    let mut table = Table::new(&[
        "alpha_sq",
        "beta",
        "q_max",
        "b_max_over_beta",
        "ds_max_over_beta",
    ]);
    for p in surface {
        table.push(vec![
            f(p.alpha_sq),
            f(p.beta),
            f(p.q_max),
            f(p.b_max_over_beta),
            f(p.ds_max_over_beta),
        ]);
    }
    Ok(table)
}

pub fn average_table(args: &AverageArgs) -> Result<Table, CliError> {
    let params = args.state.params()?;
    let env = EnvironmentParams::new(args.state.beta)?;
    let e = &args.ensemble;
    let rec = CouplingEnsemble::new(args.model.into(), e.j_max, e.samples, e.t_eval, e.seed)?
        .average(&params, &env)?;
    let mut table = Table::new(&[
        "alpha_sq",
        "w",
        "beta",
        "j_max",
        "n",
        "t_eval",
        "seed",
        "mean_beta_q",
        "mean_ds",
        "mean_b",
    ]);
    table.push(vec![
        f(params.alpha_sq()),
        f(params.w()),
        f(env.beta()),
        f(rec.j_max),
        Cell::Int(rec.n_samples as u64),
        f(rec.t_eval),
        Cell::Int(rec.seed),
        f(rec.mean_beta_q),
        f(rec.mean_ds),
        f(rec.mean_b),
    ]);
    Ok(table)
}

pub fn boundary_table(args: &BoundaryArgs) -> Result<Table, CliError> {
    if args.grid < 2 {
        return Err(Error::param("grid", args.grid as f64, "must be ≥ 2").into());
    }
    let curve = boundary_curve(args.beta, &linspace(0.0, 1.0, args.grid))?;
    let mut table = Table::new(&["alpha_sq", "delta"]);
    for p in curve.points {
        table.push(vec![f(p.alpha_sq), f(p.delta)]);
    }
    Ok(table)
}

pub fn threshold_table(args: &ThresholdArgs) -> Result<Table, CliError> {
    let env = EnvironmentParams::new(args.beta)?;
    let kind: InteractionKind = args.model.into();
    let e = &args.ensemble;
    let (value, source) = if args.monte_carlo || kind == InteractionKind::Generic {
        let ensemble = CouplingEnsemble::new(kind, e.j_max, e.samples, e.t_eval, e.seed)?;
        (ensemble.heat_sign_change(&env, args.grid)?, "monte_carlo")
    } else {
        (
            clausius_threshold(kind, args.beta, Some(e.j_max))?,
            "closed_form",
        )
    };
    let mut table = Table::new(&["model", "beta", "j_max", "alpha_sq_max", "source"]);
    table.push(vec![
        Cell::Text(kind.to_string()),
        f(args.beta),
        f(e.j_max),
        f(value),
        Cell::Text(source.to_string()),
    ]);
    Ok(table)
}

pub fn build_table(command: &Command) -> Result<Table, CliError> {
    match command {
        Command::Evolve(a) => evolve_table(a),
        Command::Maxpoint(a) => maxpoint_table(a),
        Command::Regions(a) => regions_table(a),
        Command::Surface(a) => surface_table(a),
        Command::Average(a) => average_table(a),
        Command::Boundary(a) => boundary_table(a),
        Command::Threshold(a) => threshold_table(a),
    }
}

fn write_table(table: &Table, format: Format, out: &mut impl Write) -> io::Result<()> {
    match format {
        Format::Csv => table.write_csv(out)?,
        Format::Json => table.write_json(out)?,
    }
    out.flush()
}

/// Runs a parsed command and writes its output.
pub fn execute(cli: &Cli) -> Result<(), CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads)
        .build()
        .map_err(|e| CliError::Config(format!("threads: {e}")))?;
    let table = pool.install(|| build_table(&cli.command))?;
    match &cli.out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            write_table(&table, cli.format, &mut w)?;
        }
        None => {
            let stdout = io::stdout();
            write_table(&table, cli.format, &mut stdout.lock())?;
        }
    }
    Ok(())
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("landauer: {e}");
            e.exit_code()
        }
    }
}
