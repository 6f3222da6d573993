use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

/// Exact self-similar collapse in the -beta/r^2 potential.
///
/// Numeric flags may also be given as `key = value` lines in a `--config`
/// file (flag names with `_` or `-`); flags on the command line win.
#[derive(Parser, Debug)]
#[command(name = "qcollapse", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Derived constants: chi, gamma, alpha, C_inf and the near-origin amplitudes.
    Params(ParamsArgs),
    /// Tabulate R(xi) and R'(xi) on a log-spaced grid.
    Profile(ProfileArgs),
    /// ODE-residual, asymptote and special-function identity suites.
    Check(CheckArgs),
    /// Moments, C_r, C_p and the energy integral.
    Observables(ObservablesArgs),
    /// Crank-Nicolson run of the radial Schrodinger equation.
    Evolve(EvolveArgs),
    /// Power-law fit of <r> against |t| from a record CSV.
    Fit(FitArgs),
    /// SVG figure from profile or record CSVs.
    Plot(PlotArgs),
}

#[derive(Args, Debug, Clone, Default)]
pub struct Problem {
    /// gamma = beta_tilde - l(l+1), must exceed 1/4 [default: 1]
    #[arg(long, conflicts_with_all = ["beta_tilde", "ell"], allow_negative_numbers = true)]
    pub gamma: Option<f64>,
    /// 2 m beta / hbar^2
    #[arg(long, allow_negative_numbers = true)]
    pub beta_tilde: Option<f64>,
    /// Angular momentum quantum number [default: 0]
    #[arg(long)]
    pub ell: Option<u32>,
    /// [default: 1]
    #[arg(long)]
    pub hbar: Option<f64>,
    /// [default: 1]
    #[arg(long)]
    pub mass: Option<f64>,
    /// Plain-text key=value file
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Run several instances, e.g. `gamma=0.5,1,2` (also beta_tilde, ell)
    #[arg(long)]
    pub sweep: Option<String>,
}

#[derive(Args, Debug)]
pub struct ParamsArgs {
    #[command(flatten)]
    pub problem: Problem,
}

#[derive(Args, Debug)]
pub struct ProfileArgs {
    #[command(flatten)]
    pub problem: Problem,
    /// [default: 0.05]
    #[arg(long)]
    pub xi_min: Option<f64>,
    /// [default: 30]
    #[arg(long)]
    pub xi_max: Option<f64>,
    /// [default: 400]
    #[arg(long)]
    pub points: Option<usize>,
    /// CSV path; stdout when absent (required with --sweep)
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    /// Suites run for every listed gamma unless a single problem is given
    #[command(flatten)]
    pub problem: Problem,
    /// Randomized identity draws [default: 1000]
    #[arg(long)]
    pub draws: Option<usize>,
    /// [default: 1]
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Args, Debug)]
pub struct ObservablesArgs {
    #[command(flatten)]
    pub problem: Problem,
    /// Quadrature cutoff in xi [default: 40]
    #[arg(long)]
    pub xi_max: Option<f64>,
    /// Relative quadrature tolerance [default: 1e-11]
    #[arg(long)]
    pub tol: Option<f64>,
    /// Momentum-space quadrature limit [default: 40]
    #[arg(long)]
    pub q_max: Option<f64>,
    /// xi cutoff of the Bessel transform [default: 60]
    #[arg(long)]
    pub xi_cut: Option<f64>,
    /// CSV path for the report rows
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Initial {
    /// Exact collapsing state at t0 < 0
    SelfSimilar,
    /// Complex-conjugated state at t0 > 0
    Escape,
    /// r exp(-(r-r0)^2/(2 w^2)) at t = 0
    Gaussian,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Boundary {
    SelfSimilar,
    Capped,
}

#[derive(Args, Debug)]
pub struct EvolveArgs {
    #[command(flatten)]
    pub problem: Problem,
    /// [default: self-similar]
    #[arg(long, value_enum)]
    pub initial: Option<Initial>,
    /// Inner boundary [default: self-similar for exact states, capped for gaussians]
    #[arg(long, value_enum)]
    pub boundary: Option<Boundary>,
    /// Start time [default: -1, or 0.1 for escape]
    #[arg(long, allow_negative_numbers = true)]
    pub t0: Option<f64>,
    /// End time [default: -0.1, or 1 for escape and gaussian]
    #[arg(long, allow_negative_numbers = true)]
    pub t_end: Option<f64>,
    /// [default: 2.5e-4]
    #[arg(long)]
    pub dt: Option<f64>,
    /// [default: 40]
    #[arg(long)]
    pub r_max: Option<f64>,
    /// Grid intervals [default: 8192]
    #[arg(long)]
    pub points: Option<usize>,
    /// [default: r_max/2048]
    #[arg(long)]
    pub r_core: Option<f64>,
    /// Steps between records [default: 200]
    #[arg(long)]
    pub record_every: Option<usize>,
    /// Gaussian centre [default: 5]
    #[arg(long)]
    pub r0: Option<f64>,
    /// Gaussian width [default: 1]
    #[arg(long)]
    pub width: Option<f64>,
    /// Print the fitted exponent of <r> against |t|
    #[arg(long)]
    pub fit: bool,
    /// Record CSV [default: record.csv]
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Final-state snapshot CSV
    #[arg(long)]
    pub snapshot: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct FitArgs {
    /// Record CSV written by `evolve`
    #[arg(long)]
    pub input: PathBuf,
    /// Keep rows with |t| >= this
    #[arg(long)]
    pub t_min: Option<f64>,
    /// Keep rows with |t| <= this
    #[arg(long)]
    pub t_max: Option<f64>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Style {
    Default,
    /// Monochrome |R|^2 curves labelled by gamma
    Fig1,
}

#[derive(Args, Debug)]
pub struct PlotArgs {
    /// Profile or record CSVs (repeatable, one kind per plot)
    #[arg(long = "input", required = true)]
    pub inputs: Vec<PathBuf>,
    /// Legend labels, in input order [default: from the file names]
    #[arg(long = "label")]
    pub labels: Vec<String>,
    /// [default: plot.svg]
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Style::Default)]
    pub style: Style,
    #[arg(long)]
    pub title: Option<String>,
    /// [default: 640]
    #[arg(long)]
    pub width: Option<u32>,
    /// [default: 440]
    #[arg(long)]
    pub height: Option<u32>,
}
