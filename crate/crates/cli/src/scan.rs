//! Parameter sweeps comparing the determinant oracle against the closed-form
//! predictors, with deterministic CSV/JSON reports. The (p, b, c) grid is
//! split into independent cells, evaluated in parallel, and the collected
//! rows are sorted before writing, so the report bytes never depend on the
//! worker count.

use dpsym_core::arith::{odd_primes_in, Prime};
use dpsym_core::detcore::dp_symbol;
use dpsym_core::predict::{self, Predicted, PredictorId};
use dpsym_core::trinom::Convention;
use dpsym_core::LegendreSymbol;
use rayon::prelude::*;
use std::fmt;
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

/// Largest pmax a scan accepts. A single determinant at this size is
/// already hours of work; anything beyond it is a typo, not a sweep.
pub const SCAN_PMAX_LIMIT: u64 = 1_000_000;

#[derive(Debug)]
pub enum ScanError {
    BadRange {
        pmin: u64,
        pmax: u64,
    },
    RangeTooLarge {
        pmax: u64,
    },
    BadJobs,
    NoPredictors,
    EmptySet(&'static str),
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl fmt::Display for ScanError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScanError::BadRange { pmin, pmax } => {
                write!(
                    f,
                    "invalid scan range: need 3 <= pmin <= pmax, got [{pmin}, {pmax}]"
                )
            }
            ScanError::RangeTooLarge { pmax } => {
                write!(f, "pmax {pmax} exceeds the scan limit {SCAN_PMAX_LIMIT}")
            }
            ScanError::BadJobs => f.write_str("jobs must be >= 1"),
            ScanError::NoPredictors => f.write_str("no predictors selected"),
            ScanError::EmptySet(which) => write!(f, "empty {which} set"),
            ScanError::Io { path, source } => {
                write!(f, "cannot write report to {}: {source}", path.display())
            }
        }
    }
}

impl std::error::Error for ScanError {}

/// Values to sweep for one parameter: an explicit list, or every residue
/// [0, p) per prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ValueSet {
    All,
    List(Vec<i64>),
}

impl ValueSet {
    fn expand(&self, p: u64) -> Vec<i64> {
        match self {
            ValueSet::All => (0..p as i64).collect(),
            ValueSet::List(v) => v.clone(),
        }
    }
}

impl FromStr for ValueSet {
    type Err = String;

    fn from_str(s: &str) -> Result<ValueSet, String> {
        if s.trim().eq_ignore_ascii_case("all") {
            return Ok(ValueSet::All);
        }
        let vals: Result<Vec<i64>, _> = s.split(',').map(|t| t.trim().parse::<i64>()).collect();
        match vals {
            Ok(v) if !v.is_empty() => Ok(ValueSet::List(v)),
            _ => Err(format!(
                "expected 'all' or a comma-separated integer list, got '{s}'"
            )),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Json,
}

impl FromStr for ReportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<ReportFormat, String> {
        match s {
            "csv" => Ok(ReportFormat::Csv),
            "json" => Ok(ReportFormat::Json),
            other => Err(format!("unknown format '{other}' (expected csv or json)")),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ScanConfig {
    pub pmin: u64,
    pub pmax: u64,
    pub b_set: ValueSet,
    pub c_set: ValueSet,
    pub predictors: Vec<PredictorId>,
    pub convention: Convention,
    pub jobs: usize,
    pub out_path: PathBuf,
    pub format: ReportFormat,
}

/// One comparison row: a grid cell, the oracle symbol, and one predictor's
/// verdict.
#[derive(Clone, Debug)]
pub struct PredictionRecord {
    pub p: u64,
    pub b: i64,
    pub c: i64,
    pub oracle: LegendreSymbol,
    pub source: PredictorId,
    pub predicted: Predicted,
}

impl PredictionRecord {
    /// True when the verdict admits the oracle value (not-applicable rows
    /// always match).
    pub fn is_match(&self) -> bool {
        self.predicted.admits(self.oracle)
    }

    fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}\n",
            self.p,
            self.b,
            self.c,
            self.oracle,
            self.predicted,
            self.source,
            self.is_match()
        )
    }

    fn json_value(&self) -> serde_json::Value {
        let predicted = match &self.predicted {
            Predicted::Value(s) => serde_json::json!(s.as_int()),
            other => serde_json::json!(other.to_string()),
        };
        serde_json::json!({
            "p": self.p,
            "b": self.b,
            "c": self.c,
            "oracle": self.oracle.as_int(),
            "predicted": predicted,
            "source": self.source.name(),
            "match": self.is_match(),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ScanSummary {
    pub rows: usize,
    pub mismatches: usize,
}

impl fmt::Display for ScanSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} rows, {} match, {} mismatch",
            self.rows,
            self.rows - self.mismatches,
            self.mismatches
        )
    }
}

fn validate(cfg: &ScanConfig) -> Result<(), ScanError> {
    if cfg.pmin < 3 || cfg.pmin > cfg.pmax {
        return Err(ScanError::BadRange {
            pmin: cfg.pmin,
            pmax: cfg.pmax,
        });
    }
    if cfg.pmax > SCAN_PMAX_LIMIT {
        return Err(ScanError::RangeTooLarge { pmax: cfg.pmax });
    }
    if cfg.jobs < 1 {
        return Err(ScanError::BadJobs);
    }
    if cfg.predictors.is_empty() {
        return Err(ScanError::NoPredictors);
    }
    if matches!(&cfg.b_set, ValueSet::List(v) if v.is_empty()) {
        return Err(ScanError::EmptySet("b"));
    }
    if matches!(&cfg.c_set, ValueSet::List(v) if v.is_empty()) {
        return Err(ScanError::EmptySet("c"));
    }
    Ok(())
}

/// Evaluates the whole grid and returns the rows sorted by
/// (p, b, c, source name).
pub fn scan_records(cfg: &ScanConfig) -> Result<Vec<PredictionRecord>, ScanError> {
    validate(cfg)?;
    let mut cells: Vec<(Prime, i64, i64)> = Vec::new();
    for p in odd_primes_in(cfg.pmin, cfg.pmax) {
        for b in cfg.b_set.expand(p.value()) {
            for c in cfg.c_set.expand(p.value()) {
                cells.push((p, b, c));
            }
        }
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .expect("thread pool");
    let mut records: Vec<PredictionRecord> = pool.install(|| {
        cells
            .par_iter()
            .flat_map_iter(|&(p, b, c)| {
                let oracle = dp_symbol(b, c, p);
                cfg.predictors.iter().map(move |&source| {
                    let prediction = predict::evaluate_with(source, b, c, p, cfg.convention);
                    PredictionRecord {
                        p: p.value(),
                        b,
                        c,
                        oracle,
                        source,
                        predicted: prediction.value,
                    }
                })
            })
            .collect()
    });
    records.sort_by(|x, y| (x.p, x.b, x.c, x.source.name()).cmp(&(y.p, y.b, y.c, y.source.name())));
    Ok(records)
}

pub fn render_csv(records: &[PredictionRecord]) -> String {
    let mut out = String::from("p,b,c,oracle,predicted,source,match\n");
    for r in records {
        out.push_str(&r.csv_line());
    }
    out
}

pub fn render_json(records: &[PredictionRecord]) -> String {
    let values: Vec<serde_json::Value> = records.iter().map(|r| r.json_value()).collect();
    let mut out = serde_json::to_string_pretty(&values).expect("static schema");
    out.push('\n');
    out
}

/// Runs the sweep and writes the report file.
pub fn run_scan(cfg: &ScanConfig) -> Result<ScanSummary, ScanError> {
    let records = scan_records(cfg)?;
    let body = match cfg.format {
        ReportFormat::Csv => render_csv(&records),
        ReportFormat::Json => render_json(&records),
    };
    let mut f = fs::File::create(&cfg.out_path).map_err(|source| ScanError::Io {
        path: cfg.out_path.clone(),
        source,
    })?;
    f.write_all(body.as_bytes())
        .map_err(|source| ScanError::Io {
            path: cfg.out_path.clone(),
            source,
        })?;
    let mismatches = records.iter().filter(|r| !r.is_match()).count();
    Ok(ScanSummary {
        rows: records.len(),
        mismatches,
    })
}
