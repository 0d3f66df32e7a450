//! CSV sample files and JSON reports.
//!
//! Sample CSV: two numeric columns `x,y`, an optional `x,y` header row, and
//! `#` comment lines. Evaluation input may omit the `y` column.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fitter::FitResult;
use crate::oracle::OracleResult;
use crate::poly::Bound;
use crate::semifield::SemifieldTag;

/// Parsed CSV rows; `ys` is `None` when the file has a single column.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvPoints {
    pub xs: Vec<f64>,
    pub ys: Option<Vec<f64>>,
}

pub fn read_points<R: Read>(reader: R) -> Result<CsvPoints> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    let mut width = None;
    for (line, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| Error::invalid(format!("CSV: {e}")))?;
        if rec.iter().all(str::is_empty) {
            continue;
        }
        if line == 0 && xs.is_empty() && rec.get(0).is_some_and(|f| f.eq_ignore_ascii_case("x")) {
            let header_ok = match rec.len() {
                1 => true,
                2 => rec.get(1).is_some_and(|f| f.eq_ignore_ascii_case("y")),
                _ => false,
            };
            if !header_ok {
                return Err(Error::invalid("CSV header must be 'x,y' or 'x'"));
            }
            continue;
        }
        let row = rec.position().map_or(line + 1, |p| p.line() as usize);
        if rec.len() > 2 {
            return Err(Error::invalid(format!("CSV line {row}: expected at most two columns")));
        }
        if *width.get_or_insert(rec.len()) != rec.len() {
            return Err(Error::invalid(format!("CSV line {row}: inconsistent column count")));
        }
        let parse = |s: &str| -> Result<f64> {
            let v: f64 = s
                .parse()
                .map_err(|_| Error::invalid(format!("CSV line {row}: '{s}' is not a number")))?;
            if !v.is_finite() {
                return Err(Error::invalid(format!("CSV line {row}: '{s}' is not finite")));
            }
            Ok(v)
        };
        xs.push(parse(&rec[0])?);
        if rec.len() == 2 {
            ys.push(parse(&rec[1])?);
        }
    }
    if xs.is_empty() {
        return Err(Error::invalid("CSV contains no data rows"));
    }
    let ys = (width == Some(2)).then_some(ys);
    Ok(CsvPoints { xs, ys })
}

pub fn write_points<W: Write>(writer: W, xs: &[f64], ys: &[f64]) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["x", "y"])?;
    for (x, y) in xs.iter().zip(ys) {
        w.write_record([x.to_string(), y.to_string()])?;
    }
    w.flush()
}

/// JSON form of a fit. Partition indices are 1-based and coefficients are
/// carrier values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitReport {
    pub algebra: SemifieldTag,
    pub n_terms: usize,
    pub delta_star: f64,
    pub error: f64,
    pub exponents: Vec<f64>,
    pub coefficients: Vec<f64>,
    pub partition: Vec<Vec<usize>>,
    pub residuals: Vec<f64>,
    pub intervals: Vec<[Bound; 2]>,
}

impl From<&FitResult> for FitReport {
    fn from(r: &FitResult) -> Self {
        FitReport {
            algebra: r.algebra,
            n_terms: r.n_terms(),
            delta_star: r.delta_star,
            error: r.error,
            exponents: r.exponents.clone(),
            coefficients: r.coefficients.clone(),
            partition: r.partition.iter().map(|p| p.iter().map(|i| i + 1).collect()).collect(),
            residuals: r.residuals.clone(),
            intervals: r.intervals.iter().map(|&(lo, hi)| [lo, hi]).collect(),
        }
    }
}

impl FitReport {
    /// Rebuild a [`FitResult`]. Per-cluster minima are not part of the
    /// report and come back empty.
    pub fn into_result(self) -> Result<FitResult> {
        let n = self.exponents.len();
        if self.coefficients.len() != n || self.n_terms != n {
            return Err(Error::Dimension { expected: n, found: self.coefficients.len() });
        }
        for &c in &self.coefficients {
            self.algebra.check(c)?;
        }
        if self.exponents.iter().any(|e| !e.is_finite()) {
            return Err(Error::invalid("model exponents must be finite"));
        }
        Ok(FitResult {
            algebra: self.algebra,
            exponents: self.exponents,
            coefficients: self.coefficients,
            delta_star: self.delta_star,
            error: self.error,
            partition: self
                .partition
                .into_iter()
                .map(|p| p.into_iter().map(|i| i.saturating_sub(1)).collect())
                .collect(),
            per_cluster_minima: Vec::new(),
            intervals: self.intervals.into_iter().map(|[lo, hi]| (lo, hi)).collect(),
            residuals: self.residuals,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub n_terms: usize,
    pub delta_star: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub algebra: SemifieldTag,
    pub rows: Vec<SweepRow>,
}

pub fn write_sweep_csv<W: Write>(writer: W, rows: &[SweepRow]) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["n_terms", "delta_star"])?;
    for r in rows {
        w.write_record([r.n_terms.to_string(), r.delta_star.to_string()])?;
    }
    w.flush()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub algebra: SemifieldTag,
    pub n_terms: usize,
    pub delta_exact: f64,
    /// 1-based sample indices.
    pub best_partition: Vec<Vec<usize>>,
    pub evaluations: u64,
}

impl OracleReport {
    pub fn new(algebra: SemifieldTag, n_terms: usize, r: &OracleResult) -> Self {
        OracleReport {
            algebra,
            n_terms,
            delta_exact: r.delta_exact,
            best_partition: r.best_partition.iter().map(|p| p.iter().map(|i| i + 1).collect()).collect(),
            evaluations: r.evaluations,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub algebra: SemifieldTag,
    pub xs: Vec<f64>,
    pub predictions: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub residuals: Option<Vec<f64>>,
}

/// Plot rows: a dense grid of `(x, P*(x))` merged with the samples, whose
/// rows also carry the observed `y`.
pub fn write_curve<W: Write>(writer: W, rows: &[(f64, f64, Option<f64>)]) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["x", "p_star", "y"])?;
    for &(x, p, y) in rows {
        w.write_record([x.to_string(), p.to_string(), y.map(|v| v.to_string()).unwrap_or_default()])?;
    }
    w.flush()
}
