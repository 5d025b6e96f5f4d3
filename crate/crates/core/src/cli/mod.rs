//! The `ndim-scatter` command line.
//!
//! ```text
//! ndim-scatter eval    --method ndim|residue|quad [integrand flags]
//! ndim-scatter compare [integrand flags] [--tolerance T] [--parallel]
//! ndim-scatter series  --a A --sigma S --max-terms N
//! ```
//!
//! Exit codes: 0 success, 1 deviation above tolerance, 2 usage or domain
//! error, 3 convergence failure.

pub mod config;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use crate::engine::{
    exponential_integral, exponential_partial_sums, ndim_evaluate, BranchPrescription, EngineError, Integrand,
    SeriesMode,
};
use crate::quadrature::{default_epsilons, epsilon_shift_quadrature, pv_quadrature, QuadratureConfig, QuadratureError};
use crate::report::{ComparisonReport, Format, SeriesRow, SeriesTable, WallTimes};
use crate::residue::{principal_value, shifted_value, ResidueError, Shift};
pub use config::ConfigOverrides;

pub const CONFIG_ENV: &str = "NDIM_SCATTER_CONFIG";

pub const EXIT_OK: i32 = 0;
pub const EXIT_TOLERANCE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NO_CONVERGENCE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "ndim-scatter", version, about = "Evaluate improper integrals with real poles three ways")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate with one method.
    Eval(EvalArgs),
    /// Evaluate with all three methods and report the spread.
    Compare(CompareArgs),
    /// Partial sums of the exponential moment series.
    Series(SeriesArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Ndim,
    Residue,
    Quad,
}

/// `x^r (x²−σ²)^s e^{iax}` and how to evaluate it.
#[derive(Debug, Args)]
pub struct IntegrandArgs {
    #[arg(long, default_value_t = 0)]
    pub r: u32,
    #[arg(long, default_value_t = -1, allow_negative_numbers = true)]
    pub s: i32,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub a: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub sigma: f64,
    #[arg(long, default_value = "outgoing")]
    pub branch: BranchPrescription,
    /// Shorthand for `--r 1 --s -1 --a 1`: `∫ x e^{ix}/(x²−σ²)`, whose
    /// imaginary part on the principal branch is `∫ x sin x/(x²−σ²)`.
    #[arg(long, conflicts_with_all = ["r", "s", "a"])]
    pub scattering: bool,
    /// Number of series terms for the NDIM route.
    #[arg(long)]
    pub terms: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// `key = value` quadrature settings; defaults to $NDIM_SCATTER_CONFIG.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub truncation_radius: Option<f64>,
    #[arg(long)]
    pub segment_tolerance: Option<f64>,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(long, value_enum)]
    pub method: Method,
    #[command(flatten)]
    pub integrand: IntegrandArgs,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub integrand: IntegrandArgs,
    /// Largest acceptable absolute deviation between any two methods.
    #[arg(long, default_value_t = 1e-6)]
    pub tolerance: f64,
    /// Run the three methods on separate threads.
    #[arg(long)]
    pub parallel: bool,
}

#[derive(Debug, Args)]
pub struct SeriesArgs {
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub a: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub sigma: f64,
    #[arg(long, default_value_t = 20)]
    pub max_terms: usize,
    #[arg(long, default_value = "outgoing")]
    pub branch: BranchPrescription,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

/// Why a command failed, with its exit code.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    NoConvergence(String),
    #[error("max pairwise deviation {deviation:e} exceeds tolerance {tolerance:e}")]
    Tolerance { deviation: f64, tolerance: f64 },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::NoConvergence(_) => EXIT_NO_CONVERGENCE,
            CliError::Tolerance { .. } => EXIT_TOLERANCE,
        }
    }
}

impl From<EngineError> for CliError {
    fn from(e: EngineError) -> Self {
        match e {
            EngineError::RouteDisagreement { .. } => CliError::NoConvergence(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<ResidueError> for CliError {
    fn from(e: ResidueError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<QuadratureError> for CliError {
    fn from(e: QuadratureError) -> Self {
        match e {
            QuadratureError::NoConvergence { .. } => CliError::NoConvergence(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

/// A fully resolved evaluation request.
#[derive(Debug, Clone)]
pub struct Request {
    pub integrand: Integrand,
    pub branch: BranchPrescription,
    pub terms: Option<usize>,
    pub overrides: ConfigOverrides,
    pub truncation_radius: Option<f64>,
    pub segment_tolerance: Option<f64>,
}

impl Request {
    pub fn from_args(args: &IntegrandArgs) -> Result<Self, CliError> {
        let (r, s, a) = if args.scattering { (1, -1, 1.0) } else { (args.r, args.s, args.a) };
        let integrand = Integrand::new(r, s, a, args.sigma)?;
        let config_path = args
            .config
            .clone()
            .or_else(|| std::env::var_os(CONFIG_ENV).filter(|v| !v.is_empty()).map(PathBuf::from));
        let overrides = match config_path {
            Some(path) => ConfigOverrides::load(&path).map_err(CliError::Usage)?,
            None => ConfigOverrides::default(),
        };
        Ok(Self {
            integrand,
            branch: args.branch,
            terms: args.terms,
            overrides,
            truncation_radius: args.truncation_radius,
            segment_tolerance: args.segment_tolerance,
        })
    }

    /// Defaults for the integrand, then the config file, then flags.
    pub fn quadrature_config(&self) -> Result<QuadratureConfig, CliError> {
        let f = self.integrand.to_rational();
        let mut cfg = QuadratureConfig::for_integrand(&f)?;
        self.overrides.apply(&mut cfg);
        if let Some(r) = self.truncation_radius {
            cfg.truncation_radius = r;
        }
        if let Some(t) = self.segment_tolerance {
            cfg.segment_tolerance = t;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn run_ndim(&self) -> Result<(Complex64, String), CliError> {
        let v = ndim_evaluate(&self.integrand, self.branch, self.terms)?;
        Ok((v.value, v.exact_form))
    }

    pub fn run_residue(&self) -> Result<Complex64, CliError> {
        let f = self.integrand.to_rational();
        Ok(match Shift::try_from(self.branch) {
            Ok(shift) => shifted_value(&f, shift, 0.0)?,
            Err(_) => principal_value(&f)?,
        })
    }

    pub fn run_quadrature(&self) -> Result<(Complex64, f64), CliError> {
        let f = self.integrand.to_rational();
        let cfg = self.quadrature_config()?;
        let est = match Shift::try_from(self.branch) {
            Ok(shift) => epsilon_shift_quadrature(&f, shift, &default_epsilons(&f)?, &cfg)?,
            Err(_) => pv_quadrature(&f, &cfg)?,
        };
        Ok((est.value, est.error_estimate))
    }

    fn blank_report(&self) -> ComparisonReport {
        ComparisonReport {
            integrand: self.integrand.describe(),
            r: self.integrand.x_power,
            s: self.integrand.prop_power,
            a: self.integrand.osc_freq,
            sigma: self.integrand.sigma,
            branch: self.branch,
            ndim_value: None,
            ndim_exact_form: None,
            residue_value: None,
            quadrature_value: None,
            quadrature_error_estimate: None,
            max_pairwise_deviation: None,
            wall_times_ms: WallTimes::default(),
        }
    }

    /// One method's fields of a report.
    pub fn eval(&self, method: Method) -> Result<ComparisonReport, CliError> {
        let mut report = self.blank_report();
        match method {
            Method::Ndim => {
                let (v, ms) = timed_result(|| self.run_ndim());
                let (value, form) = v?;
                report.ndim_value = Some(value.into());
                report.ndim_exact_form = Some(form);
                report.wall_times_ms.ndim = Some(ms);
            }
            Method::Residue => {
                let (v, ms) = timed_result(|| self.run_residue());
                report.residue_value = Some(v?.into());
                report.wall_times_ms.residue = Some(ms);
            }
            Method::Quad => {
                let (v, ms) = timed_result(|| self.run_quadrature());
                let (value, err) = v?;
                report.quadrature_value = Some(value.into());
                report.quadrature_error_estimate = Some(err);
                report.wall_times_ms.quadrature = Some(ms);
            }
        }
        Ok(report)
    }

    /// All three methods, sequentially or on three threads.
    pub fn compare(&self, parallel: bool) -> Result<ComparisonReport, CliError> {
        type Timed<T> = (Result<T, CliError>, f64);
        let (ndim, residue, quad): (Timed<(Complex64, String)>, Timed<Complex64>, Timed<(Complex64, f64)>) =
            if parallel {
                std::thread::scope(|scope| {
                    let n = scope.spawn(|| timed_result(|| self.run_ndim()));
                    let r = scope.spawn(|| timed_result(|| self.run_residue()));
                    let q = scope.spawn(|| timed_result(|| self.run_quadrature()));
                    (
                        n.join().expect("ndim thread"),
                        r.join().expect("residue thread"),
                        q.join().expect("quadrature thread"),
                    )
                })
            } else {
                (
                    timed_result(|| self.run_ndim()),
                    timed_result(|| self.run_residue()),
                    timed_result(|| self.run_quadrature()),
                )
            };
        let mut report = self.blank_report();
        let (nv, nt) = ndim;
        let (rv, rt) = residue;
        let (qv, qt) = quad;
        let (n_value, form) = nv?;
        let r_value = rv?;
        let (q_value, q_err) = qv?;
        report.ndim_value = Some(n_value.into());
        report.ndim_exact_form = Some(form);
        report.residue_value = Some(r_value.into());
        report.quadrature_value = Some(q_value.into());
        report.quadrature_error_estimate = Some(q_err);
        report.wall_times_ms = WallTimes {
            ndim: Some(nt),
            residue: Some(rt),
            quadrature: Some(qt),
        };
        report.max_pairwise_deviation = report.pairwise_deviation();
        Ok(report)
    }
}

fn timed_result<T>(f: impl FnOnce() -> Result<T, CliError>) -> (Result<T, CliError>, f64) {
    let start = Instant::now();
    let v = f();
    (v, start.elapsed().as_secs_f64() * 1e3)
}

/// Partial sums `S_0 … S_N` of `Σ (ia)^m/m! · I^m(σ)` against the closed form.
pub fn series_table(args: &SeriesArgs) -> Result<SeriesTable, CliError> {
    let closed = exponential_integral(args.a, args.sigma, args.branch, SeriesMode::Closed)?;
    let sums = exponential_partial_sums(args.a, args.sigma, args.branch, args.max_terms)?;
    Ok(SeriesTable {
        a: args.a,
        sigma: args.sigma,
        branch: args.branch,
        closed_form: closed.into(),
        rows: sums
            .into_iter()
            .enumerate()
            .map(|(n, v)| SeriesRow {
                n,
                value: v.into(),
                error: (v - closed).norm(),
            })
            .collect(),
    })
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    let io = |e: std::io::Error| CliError::Usage(format!("write failed: {e}"));
    match cli.command {
        Command::Eval(args) => {
            let request = Request::from_args(&args.integrand)?;
            let report = request.eval(args.method)?;
            report.write(args.integrand.format, true, out).map_err(io)
        }
        Command::Compare(args) => {
            let request = Request::from_args(&args.integrand)?;
            let report = request.compare(args.parallel)?;
            report.write(args.integrand.format, false, out).map_err(io)?;
            let deviation = report.max_pairwise_deviation.unwrap_or(0.0);
            if deviation > args.tolerance {
                return Err(CliError::Tolerance {
                    deviation,
                    tolerance: args.tolerance,
                });
            }
            Ok(())
        }
        Command::Series(args) => series_table(&args)?.write(args.format, out).map_err(io),
    }
}

/// The reason part of a clap message, without the usage block.
fn one_line(rendered: &str) -> String {
    rendered
        .lines()
        .map(str::trim)
        .take_while(|l| !l.starts_with("Usage:") && !l.starts_with("For more information"))
        .filter(|l| !l.is_empty())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = write!(out, "{e}");
            return EXIT_OK;
        }
        Err(e) => {
            let _ = writeln!(err, "{}", one_line(&e.to_string()));
            return EXIT_USAGE;
        }
    };
    match execute(cli, out) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("ndim-scatter").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn eval_ndim_outgoing() {
        let (code, out, _) = run_args(&["eval", "--method", "ndim", "--r", "0", "--s", "-1", "--sigma", "1"]);
        assert_eq!(code, 0);
        assert_eq!(out.trim(), "0.0 + 3.141592653589793i (iπ/σ)");
    }

    #[test]
    fn usage_errors_are_one_line() {
        let (code, _, err) = run_args(&["eval", "--method", "magic"]);
        assert_eq!(code, 2);
        assert_eq!(err.trim().lines().count(), 1);
        let (code, _, err) = run_args(&["eval", "--method", "ndim", "--sigma", "-1"]);
        assert_eq!(code, 2);
        assert!(err.contains("sigma"));
    }

    #[test]
    fn series_rows() {
        let table = series_table(&SeriesArgs {
            a: 1.0,
            sigma: 1.0,
            max_terms: 20,
            branch: BranchPrescription::Outgoing,
            format: Format::Text,
        })
        .unwrap();
        assert_eq!(table.rows.len(), 21);
        assert!(table.rows[20].error <= 1e-12);
    }
}
