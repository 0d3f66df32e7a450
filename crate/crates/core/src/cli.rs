//! Command-line front end.
//!
//! Exit codes: 0 success, 1 malformed input or usage, 2 domain error
//! (for example nonpositive samples under max-algebra), 3 refusal of an
//! exhaustive search that is too large.

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use crate::dataset::demo_data;
use crate::error::Error;
use crate::fitter::{fit, residuals_of, sweep, FitConfig, FitResult, SampleSet};
use crate::io::{
    read_points, write_curve, write_points, write_sweep_csv, EvalReport, FitReport, OracleReport, SweepReport,
    SweepRow,
};
use crate::oracle::exact_fit;
use crate::semifield::SemifieldTag;

#[derive(Debug, Parser)]
#[command(name = "tropfit", version, about = "Fit tropical Puiseux polynomials to sampled data")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fit a polynomial with a given number of monomials.
    Fit(FitArgs),
    /// Report the squared error for a range of term counts.
    Sweep(SweepArgs),
    /// Evaluate a fitted model from its JSON report.
    Eval(EvalArgs),
    /// Exhaustive partition search (at most 12 samples).
    Oracle(OracleArgs),
    /// Write the bundled 21-sample test problem as CSV.
    Demo(DemoArgs),
}

#[derive(Debug, Args)]
pub struct DataArgs {
    /// CSV file with columns x,y.
    #[arg(short, long)]
    pub input: PathBuf,
    #[arg(short, long, default_value = "max-plus", value_parser = parse_algebra)]
    pub algebra: SemifieldTag,
}

#[derive(Debug, Args)]
pub struct FitArgs {
    #[command(flatten)]
    pub data: DataArgs,
    /// Number of monomials.
    #[arg(short = 'n', long)]
    pub terms: usize,
    /// JSON output path; stdout when omitted.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    /// Also write plot data (x, P*(x), y) to this CSV file.
    #[arg(long)]
    pub curve: Option<PathBuf>,
    #[arg(long, default_value_t = 400)]
    pub curve_samples: usize,
    /// Plot range as MIN,MAX; defaults to the sample range.
    #[arg(long, value_parser = parse_range_f64)]
    pub curve_range: Option<(f64, f64)>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub data: DataArgs,
    /// Term range as MIN..MAX (or a single count).
    #[arg(short = 'n', long, value_parser = parse_terms_range)]
    pub terms: (usize, usize),
    /// JSON output path; stdout when omitted.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    /// Also write the table as CSV.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    /// JSON report written by `fit`.
    #[arg(short, long)]
    pub model: PathBuf,
    /// CSV of abscissas (x) or samples (x,y); with y, residuals are reported.
    #[arg(short, long, required_unless_present = "at", conflicts_with = "at")]
    pub input: Option<PathBuf>,
    /// Comma-separated abscissas.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub at: Option<Vec<f64>>,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[command(flatten)]
    pub data: DataArgs,
    #[arg(short = 'n', long)]
    pub terms: usize,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DemoArgs {
    /// CSV output path; stdout when omitted.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

fn parse_algebra(s: &str) -> Result<SemifieldTag, String> {
    SemifieldTag::from_str(s).map_err(|e| e.to_string())
}

fn parse_terms_range(s: &str) -> Result<(usize, usize), String> {
    let parse = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("'{t}' is not a term count"));
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (parse(a)?, parse(b.trim_start_matches('='))?),
        None => match s.split_once('-') {
            Some((a, b)) => (parse(a)?, parse(b)?),
            None => {
                let n = parse(s)?;
                (n, n)
            }
        },
    };
    if lo == 0 || lo > hi {
        return Err(format!("term range {lo}..{hi} must satisfy 1 <= min <= max"));
    }
    Ok((lo, hi))
}

fn parse_range_f64(s: &str) -> Result<(f64, f64), String> {
    let (a, b) = s.split_once(',').ok_or("expected MIN,MAX")?;
    let lo: f64 = a.trim().parse().map_err(|_| format!("'{a}' is not a number"))?;
    let hi: f64 = b.trim().parse().map_err(|_| format!("'{b}' is not a number"))?;
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(format!("range {lo},{hi} must be finite with MIN < MAX"));
    }
    Ok((lo, hi))
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(Error::Domain(_) | Error::Unbounded) => 2,
            CliError::Core(Error::GuardRefused { .. }) => 3,
            _ => 1,
        }
    }
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> CliError + '_ {
    move |source| CliError::Io { path: path.display().to_string(), source }
}

fn load_samples(data: &DataArgs) -> Result<SampleSet, CliError> {
    let file = File::open(&data.input).map_err(io_err(&data.input))?;
    let points = read_points(BufReader::new(file))?;
    let ys = points
        .ys
        .ok_or_else(|| Error::invalid("sample CSV needs both x and y columns"))?;
    Ok(SampleSet::new(points.xs, ys, data.algebra)?)
}

fn with_output<F>(path: Option<&Path>, stdout: &mut dyn Write, body: F) -> Result<(), CliError>
where
    F: FnOnce(&mut dyn Write) -> io::Result<()>,
{
    match path {
        Some(p) => {
            let file = File::create(p).map_err(io_err(p))?;
            let mut w = BufWriter::new(file);
            body(&mut w).and_then(|_| w.flush()).map_err(io_err(p))
        }
        None => body(stdout).map_err(io_err(Path::new("<stdout>"))),
    }
}

fn write_json<T: serde::Serialize>(path: Option<&Path>, stdout: &mut dyn Write, value: &T) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value)?;
    with_output(path, stdout, |w| writeln!(w, "{text}"))
}

fn curve_rows(result: &FitResult, samples: &SampleSet, count: usize, range: Option<(f64, f64)>) -> Result<Vec<(f64, f64, Option<f64>)>, CliError> {
    let (lo, hi) = match range {
        Some(r) => r,
        None => {
            let lo = samples.xs().iter().copied().fold(f64::INFINITY, f64::min);
            let hi = samples.xs().iter().copied().fold(f64::NEG_INFINITY, f64::max);
            (lo, hi)
        }
    };
    let mut rows = Vec::with_capacity(count + samples.len());
    for k in 0..count {
        let x = if count == 1 { lo } else { lo + (hi - lo) * k as f64 / (count - 1) as f64 };
        if result.algebra == SemifieldTag::MaxTimes && x <= 0.0 {
            continue;
        }
        rows.push((x, result.predict(x)?, None));
    }
    for (&x, &y) in samples.xs().iter().zip(samples.ys()) {
        rows.push((x, result.predict(x)?, Some(y)));
    }
    rows.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(rows)
}

pub fn run(cli: Cli, stdout: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Fit(args) => {
            let samples = load_samples(&args.data)?;
            let result = fit(&samples, &FitConfig::new(args.terms, args.data.algebra))?;
            write_json(args.output.as_deref(), stdout, &FitReport::from(&result))?;
            if let Some(path) = &args.curve {
                let rows = curve_rows(&result, &samples, args.curve_samples, args.curve_range)?;
                with_output(Some(path), stdout, |w| write_curve(w, &rows))?;
            }
        }
        Command::Sweep(args) => {
            let samples = load_samples(&args.data)?;
            let (lo, hi) = args.terms;
            let rows: Vec<SweepRow> = sweep(&samples, lo, hi, args.data.algebra)?
                .into_iter()
                .map(|(n_terms, delta_star)| SweepRow { n_terms, delta_star })
                .collect();
            if let Some(path) = &args.csv {
                with_output(Some(path), stdout, |w| write_sweep_csv(w, &rows))?;
            }
            let report = SweepReport { algebra: args.data.algebra, rows };
            write_json(args.output.as_deref(), stdout, &report)?;
        }
        Command::Eval(args) => {
            let file = File::open(&args.model).map_err(io_err(&args.model))?;
            let report: FitReport = serde_json::from_reader(BufReader::new(file))?;
            let model = report.into_result()?;
            let (xs, ys) = match (&args.input, args.at) {
                (Some(path), _) => {
                    let file = File::open(path).map_err(io_err(path))?;
                    let p = read_points(BufReader::new(file))?;
                    (p.xs, p.ys)
                }
                (None, Some(at)) => (at, None),
                (None, None) => return Err(CliError::Usage("either --input or --at is required".into())),
            };
            let predictions = xs.iter().map(|&x| model.predict(x)).collect::<Result<Vec<_>, _>>()?;
            let residuals = match &ys {
                Some(ys) => {
                    for &y in ys {
                        model.algebra.check(y)?;
                        if model.algebra.is_zero_raw(y) {
                            return Err(Error::domain("observed value is zero").into());
                        }
                    }
                    Some(residuals_of(model.algebra, &model.exponents, &model.coefficients, &xs, ys))
                }
                None => None,
            };
            let out = EvalReport { algebra: model.algebra, xs, predictions, residuals };
            write_json(args.output.as_deref(), stdout, &out)?;
        }
        Command::Oracle(args) => {
            let samples = load_samples(&args.data)?;
            let r = exact_fit(&samples, args.terms)?;
            write_json(args.output.as_deref(), stdout, &OracleReport::new(args.data.algebra, args.terms, &r))?;
        }
        Command::Demo(args) => {
            let (xs, ys) = demo_data();
            with_output(args.output.as_deref(), stdout, |w| write_points(w, &xs, &ys))?;
        }
    }
    Ok(())
}

/// Parse `args` (including the program name), run, and return the exit code.
pub fn main_with_args<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let _ = write!(stderr, "{e}");
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
        }
    };
    match run(cli, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn terms_range_forms() {
        assert_eq!(parse_terms_range("2..12"), Ok((2, 12)));
        assert_eq!(parse_terms_range("2..=12"), Ok((2, 12)));
        assert_eq!(parse_terms_range("3-4"), Ok((3, 4)));
        assert_eq!(parse_terms_range("5"), Ok((5, 5)));
        assert!(parse_terms_range("0..3").is_err());
        assert!(parse_terms_range("4..3").is_err());
        assert!(parse_terms_range("a..3").is_err());
    }

    #[test]
    fn curve_range_forms() {
        assert_eq!(parse_range_f64("1,3"), Ok((1.0, 3.0)));
        assert!(parse_range_f64("3,1").is_err());
        assert!(parse_range_f64("1").is_err());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::from(Error::domain("x")).exit_code(), 2);
        assert_eq!(CliError::from(Error::GuardRefused { samples: 13, limit: 12 }).exit_code(), 3);
        assert_eq!(CliError::from(Error::invalid("x")).exit_code(), 1);
    }
}
