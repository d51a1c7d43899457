//! dpsym: exact determinant Legendre symbols and their closed-form
//! predictors, with sweep and verification front ends.

use clap::{Parser, Subcommand};
use dpsym_cli::scan::{run_scan, ReportFormat, ScanConfig, ValueSet};
use dpsym_cli::suite::{self, Tier};
use dpsym_core::arith::Prime;
use dpsym_core::detcore::{dp_det, dp_symbol};
use dpsym_core::lucas::{lucas_uv, LucasParams};
use dpsym_core::predict::{self, Predicted, PredictorId};
use dpsym_core::trinom::Convention;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "dpsym",
    version,
    about = "Legendre symbols of the determinant det[(i^2 + b*i*j + c*j^2)^(p-2)] over F_p: \
             exact oracle, closed-form predictors, sweeps, and a verification suite"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the symbol of the determinant at one cell (p, b, c)
    Symbol {
        #[arg(long)]
        p: u64,
        #[arg(long, allow_negative_numbers = true)]
        b: i64,
        #[arg(long, allow_negative_numbers = true)]
        c: i64,
        /// oracle (default) or a predictor id: shewu, thm12, cor11, thm13,
        /// cor21, cor22, cor23, lemma11, eq17
        #[arg(long, default_value = "oracle")]
        method: String,
        /// trinomial-coefficient convention for lemma11: central (adopted),
        /// ascending, descending, ascending-minus
        #[arg(long, default_value_t = Convention::adopted().name().to_string())]
        convention: String,
    },
    /// Print the residue of the determinant itself
    Det {
        #[arg(long)]
        p: u64,
        #[arg(long, allow_negative_numbers = true)]
        b: i64,
        #[arg(long, allow_negative_numbers = true)]
        c: i64,
    },
    /// Print the Lucas pair (u_n, v_n) mod p for coefficients (a, bb)
    Lucas {
        #[arg(long, allow_negative_numbers = true)]
        a: i64,
        #[arg(long, allow_negative_numbers = true)]
        bb: i64,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: u64,
    },
    /// Sweep a (p, b, c) grid, compare predictors against the oracle, and
    /// write a CSV/JSON report
    Scan {
        #[arg(long)]
        pmin: u64,
        #[arg(long)]
        pmax: u64,
        /// comma-separated integers, or "all" for every residue in [0, p)
        #[arg(long, default_value = "all")]
        b: String,
        #[arg(long, default_value = "all")]
        c: String,
        /// comma-separated predictor ids, or "all"
        #[arg(long, default_value = "all")]
        predictors: String,
        #[arg(long, default_value_t = Convention::adopted().name().to_string())]
        convention: String,
        /// worker threads (the report bytes do not depend on this)
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value = "csv")]
        format: String,
    },
    /// Run the verification suite (fast or full tier)
    Verify {
        #[arg(long, default_value = "fast")]
        suite: String,
    },
}

fn fail(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn parse_prime(p: u64) -> Result<Prime, String> {
    Prime::new(p).map_err(|e| e.to_string())
}

fn parse_convention(name: &str) -> Result<Convention, String> {
    Convention::parse(name).ok_or_else(|| {
        format!(
            "unknown convention '{name}' (expected one of: {})",
            Convention::ALL
                .iter()
                .map(|c| c.name())
                .collect::<Vec<_>>()
                .join(", ")
        )
    })
}

fn parse_predictors(spec: &str) -> Result<Vec<PredictorId>, String> {
    if spec.trim().eq_ignore_ascii_case("all") {
        return Ok(PredictorId::ALL.to_vec());
    }
    spec.split(',')
        .map(|t| {
            let t = t.trim();
            PredictorId::parse(t).ok_or_else(|| format!("unknown predictor '{t}'"))
        })
        .collect()
}

fn cmd_symbol(p: u64, b: i64, c: i64, method: &str, convention: &str) -> ExitCode {
    let p = match parse_prime(p) {
        Ok(p) => p,
        Err(e) => return fail(e),
    };
    let convention = match parse_convention(convention) {
        Ok(c) => c,
        Err(e) => return fail(e),
    };
    if method == "oracle" {
        println!("{}", dp_symbol(b, c, p));
        return ExitCode::SUCCESS;
    }
    let Some(id) = PredictorId::parse(method) else {
        return fail(format!(
            "unknown method '{method}' (oracle or a predictor id)"
        ));
    };
    let prediction = predict::evaluate_with(id, b, c, p, convention);
    match prediction.value {
        Predicted::NotApplicable { reason } => println!("NA ({reason})"),
        other => println!("{other}"),
    }
    ExitCode::SUCCESS
}

fn cmd_det(p: u64, b: i64, c: i64) -> ExitCode {
    match parse_prime(p) {
        Ok(p) => {
            println!("{}", dp_det(b, c, p));
            ExitCode::SUCCESS
        }
        Err(e) => fail(e),
    }
}

fn cmd_lucas(a: i64, bb: i64, p: u64, n: u64) -> ExitCode {
    match parse_prime(p) {
        Ok(p) => {
            let pair = lucas_uv(LucasParams::new(a, bb), n, p);
            println!("u={} v={}", pair.u, pair.v);
            ExitCode::SUCCESS
        }
        Err(e) => fail(e),
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_scan(
    pmin: u64,
    pmax: u64,
    b: &str,
    c: &str,
    predictors: &str,
    convention: &str,
    jobs: Option<usize>,
    out: PathBuf,
    format: &str,
) -> ExitCode {
    let parsed: Result<ScanConfig, String> = (|| {
        Ok(ScanConfig {
            pmin,
            pmax,
            b_set: b.parse::<ValueSet>()?,
            c_set: c.parse::<ValueSet>()?,
            predictors: parse_predictors(predictors)?,
            convention: parse_convention(convention)?,
            jobs: jobs
                .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get())),
            out_path: out,
            format: format.parse::<ReportFormat>()?,
        })
    })();
    let cfg = match parsed {
        Ok(cfg) => cfg,
        Err(e) => return fail(e),
    };
    match run_scan(&cfg) {
        Ok(summary) => {
            println!("scan: {summary} -> {}", cfg.out_path.display());
            if summary.mismatches == 0 {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => fail(e),
    }
}

fn cmd_verify(suite_name: &str) -> ExitCode {
    let Some(tier) = Tier::parse(suite_name) else {
        return fail(format!(
            "unknown suite '{suite_name}' (expected fast or full)"
        ));
    };
    let reports = suite::run_all(tier);
    for r in &reports {
        println!("{}", r.render(suite::CRITERIA));
    }
    let failed = reports.iter().filter(|r| !r.passed()).count();
    println!(
        "verify ({suite_name}): {}/{} criteria passed",
        reports.len() - failed,
        reports.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Symbol {
            p,
            b,
            c,
            method,
            convention,
        } => cmd_symbol(p, b, c, &method, &convention),
        Command::Det { p, b, c } => cmd_det(p, b, c),
        Command::Lucas { a, bb, p, n } => cmd_lucas(a, bb, p, n),
        Command::Scan {
            pmin,
            pmax,
            b,
            c,
            predictors,
            convention,
            jobs,
            out,
            format,
        } => cmd_scan(
            pmin,
            pmax,
            &b,
            &c,
            &predictors,
            &convention,
            jobs,
            out,
            &format,
        ),
        Command::Verify { suite } => cmd_verify(&suite),
    }
}
