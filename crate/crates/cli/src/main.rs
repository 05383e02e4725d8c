//! Verification harness CLI: run identity suites and parameter sweeps.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use mordell_lab::suite::{self, Suite, SuiteConfig};

#[derive(Parser)]
#[command(
    name = "mordell-lab",
    about = "Numerical verification of Mordell-type integral identities",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite and emit a JSON report.
    Verify {
        /// Suite to run: all, mordell1d, typeii, mordell2d, regularized, appendix.
        #[arg(long)]
        suite: String,
        /// Flat key=value config file (abs_tol, rel_tol, max_refinement,
        /// truncation_margin, tolerance_override, workers).
        #[arg(long)]
        config: Option<PathBuf>,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Worker threads; overrides config file and MORDELL_LAB_WORKERS.
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Evaluate one operation along a parameter grid and emit CSV.
    Sweep {
        /// Operation id, optionally with fixed parameters in brackets,
        /// e.g. mordell2d.reduction_residual[n=3].
        #[arg(long)]
        op: String,
        /// Name of the swept parameter.
        #[arg(long)]
        param: String,
        #[arg(long)]
        lo: f64,
        #[arg(long)]
        hi: f64,
        /// Number of grid points (endpoints included).
        #[arg(long)]
        count: usize,
        /// Output CSV path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

const EXIT_FAILED: u8 = 1;
const EXIT_CONFIG: u8 = 2;

fn env_workers() -> Result<Option<usize>, String> {
    match std::env::var("MORDELL_LAB_WORKERS") {
        Ok(v) => v
            .parse()
            .map(Some)
            .map_err(|_| format!("MORDELL_LAB_WORKERS must be an integer, got {v:?}")),
        Err(_) => Ok(None),
    }
}

fn load_config(
    path: Option<&PathBuf>,
    workers_flag: Option<usize>,
) -> Result<SuiteConfig, String> {
    let mut cfg = match path {
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| format!("cannot read config {}: {e}", p.display()))?;
            suite::parse_config(&text).map_err(|e| format!("{}: {e}", p.display()))?
        }
        None => SuiteConfig::default(),
    };
    // precedence: flag > config file > environment
    if let Some(n) = workers_flag {
        cfg.workers = Some(n);
    } else if cfg.workers.is_none() {
        cfg.workers = env_workers()?;
    }
    Ok(cfg)
}

fn run_verify(
    suite_name: &str,
    config: Option<&PathBuf>,
    report_path: Option<&PathBuf>,
    workers: Option<usize>,
) -> Result<bool, String> {
    let suite = Suite::parse(suite_name).map_err(|e| e.to_string())?;
    let cfg = load_config(config, workers)?;
    let start = std::time::Instant::now();
    let report = suite::run_suite(suite, &cfg).map_err(|e| e.to_string())?;

    for c in &report.cases {
        let status = if c.passed { "pass" } else { "FAIL" };
        let params: Vec<String> = c
            .params
            .iter()
            .map(|(n, v)| format!("{n}={v}"))
            .collect();
        let detail = match (&c.error, c.residual) {
            (Some(e), _) => format!("error: {e}"),
            (None, Some(r)) => format!("residual {r:.3e} (tol {:.1e})", c.tolerance),
            _ => String::new(),
        };
        eprintln!("{status}  {} [{}]  {detail}", c.id, params.join(", "));
    }
    eprintln!(
        "{}: {} passed, {} failed, {} total in {:.1}s",
        suite.name(),
        report.summary.passed,
        report.summary.failed,
        report.summary.total,
        start.elapsed().as_secs_f64()
    );

    let json = report.to_json();
    match report_path {
        Some(p) => std::fs::write(p, &json)
            .map_err(|e| format!("cannot write report {}: {e}", p.display()))?,
        None => print!("{json}"),
    }
    Ok(report.summary.failed == 0)
}

fn run_sweep(
    op: &str,
    param: &str,
    lo: f64,
    hi: f64,
    count: usize,
    out: Option<&PathBuf>,
) -> Result<(), String> {
    let cfg = SuiteConfig::default();
    let rows = suite::sweep(op, param, lo, hi, count, &cfg.quad).map_err(|e| e.to_string())?;
    let csv = suite::sweep_csv(param, &rows);
    match out {
        Some(p) => std::fs::write(p, &csv)
            .map_err(|e| format!("cannot write {}: {e}", p.display()))?,
        None => print!("{csv}"),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify {
            suite,
            config,
            report,
            workers,
        } => match run_verify(&suite, config.as_ref(), report.as_ref(), workers) {
            Ok(true) => ExitCode::SUCCESS,
            Ok(false) => ExitCode::from(EXIT_FAILED),
            Err(msg) => {
                eprintln!("error: {msg}");
                ExitCode::from(EXIT_CONFIG)
            }
        },
        Command::Sweep {
            op,
            param,
            lo,
            hi,
            count,
            out,
        } => match run_sweep(&op, &param, lo, hi, count, out.as_ref()) {
            Ok(()) => ExitCode::SUCCESS,
            Err(msg) => {
                eprintln!("error: {msg}");
                ExitCode::from(EXIT_CONFIG)
            }
        },
    }
}
