//! Command-line front end: argument parsing, validation and deterministic
//! CSV/JSON rendering. Every command validates and computes before a single
//! byte is written, so failures never leave partial output behind.

use std::fmt::Write as _;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::entanglement::{
    effective_temperature, entropy, entropy_from_spectrum, purity, schmidt_spectrum,
    spectrum_with_kmax, DEFAULT_TOL,
};
use crate::error::Error;
use crate::lorentz::BoostedOscillatorState;
use crate::oscillator::Squeeze;
use crate::parton::{
    parton_report, EnergyConvention, PartonKinematics, PROTON_MASS_GEV, REFERENCE_INTERACTION_RATIO,
};
use crate::verify::{all_passed, run_suite, CheckResult, Profile};

pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_VERIFY_FAILED: i32 = 4;

pub const MIN_GRID_POINTS: usize = 5;
pub const MAX_GRID_POINTS: usize = 4096;

#[derive(Debug, Parser)]
#[command(
    name = "covosc",
    version,
    about = "Coupled-oscillator entanglement and Lorentz-squeezed wave functions"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format (csv for tables, json for the parton report by default)
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Write to this file instead of standard output
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Purity, entropy and effective temperature over a grid of η
    EntropySweep(EntropySweepArgs),
    /// Eigenvalues of the reduced density matrix at one η
    Schmidt(SchmidtArgs),
    /// |ψ_η|² or |φ_η|² on a square grid
    SqueezeGrid(SqueezeGridArgs),
    /// Decoherence metrics for a boosted hadron
    PartonReport(PartonReportArgs),
    /// Run the self-verification suite
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct EntropySweepArgs {
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub eta_min: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub eta_max: f64,
    #[arg(long, default_value_t = 101)]
    pub steps: usize,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub omega: f64,
}

#[derive(Debug, Args)]
pub struct SchmidtArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub eta: f64,
    /// Truncation tolerance on the dropped tail
    #[arg(long, conflicts_with = "kmax")]
    pub tol: Option<f64>,
    /// Keep exactly kmax + 1 eigenvalues
    #[arg(long)]
    pub kmax: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Representation {
    Space,
    Momentum,
}

#[derive(Debug, Args)]
pub struct SqueezeGridArgs {
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub eta: f64,
    #[arg(long, default_value_t = 4.0, allow_negative_numbers = true)]
    pub extent: f64,
    #[arg(long, default_value_t = 101)]
    pub points: usize,
    #[arg(long, value_enum, default_value_t = Representation::Space)]
    pub representation: Representation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EnergyConventionArg {
    Total,
    Momentum,
}

#[derive(Debug, Args)]
pub struct PartonReportArgs {
    #[arg(long, default_value_t = 900.0, allow_negative_numbers = true)]
    pub beam_energy_gev: f64,
    #[arg(long, default_value_t = PROTON_MASS_GEV, allow_negative_numbers = true)]
    pub mass_gev: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub omega: f64,
    /// Whether the beam figure is the total energy or the momentum
    #[arg(long, value_enum, default_value_t = EnergyConventionArg::Total)]
    pub energy_convention: EnergyConventionArg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProfileArg {
    Fast,
    Strict,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = ProfileArg::Fast)]
    pub profile: ProfileArg,
    /// Shorthand for --profile strict
    #[arg(long)]
    pub strict: bool,
}

/// Failure of a CLI run, carrying its exit status.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Numeric(#[from] Error),
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Numeric(Error::InvalidParameter { .. }) => EXIT_USAGE,
            CliError::Numeric(_) => EXIT_DOMAIN,
            CliError::Io(_) => 1,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) | CliError::Numeric(Error::InvalidParameter { .. }) => "usage",
            CliError::Numeric(_) => "domain",
            CliError::Io(_) => "io",
        }
    }

    /// `{"error": {"kind", "exit_code", "message"}}`.
    pub fn to_json(&self) -> Value {
        json!({
            "error": {
                "kind": self.kind(),
                "exit_code": self.exit_code(),
                "message": self.to_string(),
            }
        })
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// A table cell; integers are printed without a decimal part.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cell {
    Int(u64),
    Real(f64),
}

impl Cell {
    fn csv(self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            Cell::Real(x) => format_real(x),
        }
    }

    fn json(self) -> Value {
        match self {
            Cell::Int(i) => Value::from(i),
            Cell::Real(x) => Value::from(x),
        }
    }
}

/// 17 significant digits, enough to round-trip any f64.
pub fn format_real(x: f64) -> String {
    format!("{x:.16e}")
}

fn write_csv_row(w: &mut dyn Write, cells: &[Cell]) -> io::Result<()> {
    let line: Vec<String> = cells.iter().map(|c| c.csv()).collect();
    writeln!(w, "{}", line.join(","))
}

fn json_row(header: &[&str], cells: &[Cell]) -> Value {
    let mut m = Map::new();
    for (h, c) in header.iter().zip(cells) {
        m.insert((*h).to_string(), c.json());
    }
    Value::Object(m)
}

/// A fully validated command, ready to be rendered.
#[derive(Debug)]
pub enum Prepared {
    Table {
        header: Vec<&'static str>,
        rows: Vec<Vec<Cell>>,
        format: Format,
    },
    Json(Value),
    Grid {
        state: BoostedOscillatorState,
        extent: f64,
        points: usize,
        representation: Representation,
        format: Format,
    },
    Verify {
        results: Vec<CheckResult>,
        format: Option<Format>,
    },
}

impl Prepared {
    /// Exit status once the output has been written.
    pub fn exit_code(&self) -> i32 {
        match self {
            Prepared::Verify { results, .. } if !all_passed(results) => EXIT_VERIFY_FAILED,
            _ => 0,
        }
    }

    pub fn write_to(&self, w: &mut dyn Write) -> io::Result<()> {
        match self {
            Prepared::Table {
                header,
                rows,
                format,
            } => write_table(w, header, rows, *format),
            Prepared::Json(value) => {
                serde_json::to_writer_pretty(&mut *w, value)?;
                writeln!(w)
            }
            Prepared::Grid {
                state,
                extent,
                points,
                representation,
                format,
            } => {
                let header = match representation {
                    Representation::Space => ["z", "t", "density"],
                    Representation::Momentum => ["qz", "q0", "density"],
                };
                let coords = grid_coordinates(*extent, *points);
                let rows = coords.iter().flat_map(|&a| {
                    coords.iter().map(move |&b| {
                        let amp = match representation {
                            Representation::Space => state.spatial(a, b),
                            Representation::Momentum => state.momentum(a, b),
                        };
                        [Cell::Real(a), Cell::Real(b), Cell::Real(amp * amp)]
                    })
                });
                write_table(w, &header, rows, *format)
            }
            Prepared::Verify { results, format } => write_verify(w, results, *format),
        }
    }
}

fn write_table<R: AsRef<[Cell]>>(
    w: &mut dyn Write,
    header: &[&str],
    rows: impl IntoIterator<Item = R>,
    format: Format,
) -> io::Result<()> {
    match format {
        Format::Csv => {
            writeln!(w, "{}", header.join(","))?;
            for row in rows {
                write_csv_row(w, row.as_ref())?;
            }
            Ok(())
        }
        Format::Json => {
            writeln!(w, "[")?;
            let mut first = true;
            for row in rows {
                if !first {
                    writeln!(w, ",")?;
                }
                first = false;
                write!(w, "  {}", json_row(header, row.as_ref()))?;
            }
            if !first {
                writeln!(w)?;
            }
            writeln!(w, "]")
        }
    }
}

fn write_verify(
    w: &mut dyn Write,
    results: &[CheckResult],
    format: Option<Format>,
) -> io::Result<()> {
    match format {
        Some(Format::Json) => {
            serde_json::to_writer_pretty(
                &mut *w,
                &json!({
                    "passed": all_passed(results),
                    "checks": results,
                }),
            )?;
            writeln!(w)
        }
        Some(Format::Csv) => {
            writeln!(w, "name,measured,bound,status")?;
            for r in results {
                writeln!(
                    w,
                    "{},{},{},{}",
                    r.name.replace(',', ";"),
                    format_real(r.measured),
                    format_real(r.bound),
                    status(r.passed)
                )?;
            }
            Ok(())
        }
        None => {
            let width = results.iter().map(|r| r.name.len()).max().unwrap_or(0);
            let mut text = String::new();
            for r in results {
                let _ = writeln!(
                    text,
                    "{:<width$}  measured {:>10.3e}  bound {:>9.2e}  {}",
                    r.name,
                    r.measured,
                    r.bound,
                    status(r.passed),
                );
            }
            let failed = results.iter().filter(|r| !r.passed).count();
            let _ = writeln!(
                text,
                "{} checks, {} passed, {} failed",
                results.len(),
                results.len() - failed,
                failed
            );
            w.write_all(text.as_bytes())
        }
    }
}

fn status(passed: bool) -> &'static str {
    if passed {
        "PASS"
    } else {
        "FAIL"
    }
}

/// `points` equally spaced coordinates on `[−extent, extent]`, exactly
/// antisymmetric about zero.
pub fn grid_coordinates(extent: f64, points: usize) -> Vec<f64> {
    let last = (points - 1) as f64;
    (0..points)
        .map(|i| extent * (2.0 * i as f64 - last) / last)
        .collect()
}

fn positive(name: &str, v: f64) -> Result<(), CliError> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(usage(format!(
            "--{name} must be a positive finite number, got {v}"
        )))
    }
}

/// Validates the command and computes everything it will print.
pub fn prepare(cli: &Cli) -> Result<Prepared, CliError> {
    match &cli.command {
        Command::EntropySweep(a) => entropy_sweep(a, cli.format.unwrap_or(Format::Csv)),
        Command::Schmidt(a) => schmidt(a, cli.format.unwrap_or(Format::Csv)),
        Command::SqueezeGrid(a) => squeeze_grid(a, cli.format.unwrap_or(Format::Csv)),
        Command::PartonReport(a) => parton(a, cli.format.unwrap_or(Format::Json)),
        Command::Verify(a) => {
            let profile = if a.strict || a.profile == ProfileArg::Strict {
                Profile::Strict
            } else {
                Profile::Fast
            };
            Ok(Prepared::Verify {
                results: run_suite(profile),
                format: cli.format,
            })
        }
    }
}

/// The format errors of this invocation should be reported in.
pub fn error_format(cli: &Cli) -> Format {
    match (&cli.command, cli.format) {
        (_, Some(f)) => f,
        (Command::PartonReport(_), None) => Format::Json,
        _ => Format::Csv,
    }
}

fn entropy_sweep(a: &EntropySweepArgs, format: Format) -> Result<Prepared, CliError> {
    if !(a.eta_min.is_finite() && a.eta_min >= 0.0) {
        return Err(usage(format!("--eta-min must be ≥ 0, got {}", a.eta_min)));
    }
    if !(a.eta_max.is_finite() && a.eta_max > a.eta_min) {
        return Err(usage(format!(
            "--eta-max must exceed --eta-min ({} ≤ {})",
            a.eta_max, a.eta_min
        )));
    }
    if a.steps < 2 {
        return Err(usage(format!(
            "--steps must be at least 2, got {}",
            a.steps
        )));
    }
    positive("omega", a.omega)?;

    let span = a.eta_max - a.eta_min;
    let rows = (0..a.steps)
        .map(|i| {
            let eta = if i == a.steps - 1 {
                a.eta_max
            } else {
                a.eta_min + span * i as f64 / (a.steps - 1) as f64
            };
            let thermal = effective_temperature(eta, a.omega)?;
            Ok(vec![
                Cell::Real(eta),
                Cell::Real(purity(eta)),
                Cell::Real(entropy(eta)),
                Cell::Real(thermal.temperature),
            ])
        })
        .collect::<Result<Vec<_>, Error>>()?;
    Ok(Prepared::Table {
        header: vec!["eta", "purity", "entropy", "temperature"],
        rows,
        format,
    })
}

fn schmidt(a: &SchmidtArgs, format: Format) -> Result<Prepared, CliError> {
    let spectrum = match (a.tol, a.kmax) {
        (_, Some(kmax)) => spectrum_with_kmax(a.eta, kmax)?,
        (tol, None) => schmidt_spectrum(a.eta, tol.unwrap_or(DEFAULT_TOL))?,
    };
    let rows: Vec<Vec<Cell>> = spectrum
        .lambdas()
        .iter()
        .enumerate()
        .map(|(k, &l)| vec![Cell::Int(k as u64), Cell::Real(l)])
        .collect();
    match format {
        Format::Csv => Ok(Prepared::Table {
            header: vec!["k", "lambda"],
            rows,
            format,
        }),
        Format::Json => {
            let value = json!({
                "eta": spectrum.eta(),
                "kmax": spectrum.kmax(),
                "truncation_error": spectrum.truncation_error(),
                "entropy": entropy_from_spectrum(&spectrum),
                "lambdas": spectrum.lambdas(),
            });
            Ok(Prepared::Json(value))
        }
    }
}

fn squeeze_grid(a: &SqueezeGridArgs, format: Format) -> Result<Prepared, CliError> {
    positive("extent", a.extent)?;
    if !(MIN_GRID_POINTS..=MAX_GRID_POINTS).contains(&a.points) {
        return Err(usage(format!(
            "--points must lie in [{MIN_GRID_POINTS}, {MAX_GRID_POINTS}], got {}",
            a.points
        )));
    }
    let squeeze = Squeeze::new(a.eta)?;
    Ok(Prepared::Grid {
        state: BoostedOscillatorState::new(squeeze),
        extent: a.extent,
        points: a.points,
        representation: a.representation,
        format,
    })
}

/// Field order of the parton report document.
pub const PARTON_FIELDS: [&str; 9] = [
    "rapidity",
    "period_dilation",
    "interaction_ratio",
    "entropy",
    "var_z",
    "var_qz",
    "paper_reference_ratio",
    "time_trace_entropy",
    "temperature",
];

fn parton(a: &PartonReportArgs, format: Format) -> Result<Prepared, CliError> {
    positive("omega", a.omega)?;
    let convention = match a.energy_convention {
        EnergyConventionArg::Total => EnergyConvention::Total,
        EnergyConventionArg::Momentum => EnergyConvention::Momentum,
    };
    let kin = PartonKinematics::with_convention(a.beam_energy_gev, a.mass_gev, convention)?;
    let r = parton_report(&kin, a.omega)?;
    let values = [
        r.rapidity,
        r.period_dilation,
        r.interaction_ratio,
        r.entropy,
        r.var_z,
        r.var_qz,
        REFERENCE_INTERACTION_RATIO,
        r.time_trace_entropy,
        r.temperature,
    ];
    let mut m = Map::new();
    for (k, v) in PARTON_FIELDS.iter().zip(values) {
        m.insert((*k).to_string(), Value::from(v));
    }
    Ok(match format {
        Format::Json => Prepared::Json(Value::Object(m)),
        Format::Csv => Prepared::Table {
            header: PARTON_FIELDS.to_vec(),
            rows: vec![values.map(Cell::Real).to_vec()],
            format,
        },
    })
}

/// Parses `args`, runs the command and writes to `out` (or `--output`).
/// Returns the process exit status.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{rendered}")
            } else {
                write!(out, "{rendered}")
            };
            return e.exit_code();
        }
    };
    let code = match prepare(&cli).and_then(|p| emit(&cli, &p, out).map(|_| p.exit_code())) {
        Ok(code) => code,
        Err(e) => {
            let _ = match error_format(&cli) {
                Format::Json => writeln!(out, "{}", e.to_json()),
                Format::Csv => writeln!(err, "error: {e}"),
            };
            e.exit_code()
        }
    };
    let _ = out.flush();
    code
}

fn emit(cli: &Cli, prepared: &Prepared, out: &mut dyn Write) -> Result<(), CliError> {
    match &cli.output {
        Some(path) => {
            let file = std::fs::File::create(path)?;
            let mut w = io::BufWriter::new(file);
            prepared.write_to(&mut w)?;
            w.flush()?;
        }
        None => prepared.write_to(out)?,
    }
    Ok(())
}
