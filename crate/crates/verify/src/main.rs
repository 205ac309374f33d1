use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use sov_verify::config::{AlgebraName, SuiteConfig};
use sov_verify::ops::named_operator;
use sov_verify::suites::{run_suites_to, RunError};

#[derive(Parser)]
#[command(name = "sov-verify", version, about = "Exact verification suites for noncompact spin-chain B-operators")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the configured suites and write a JSON-lines report
    Verify {
        #[arg(long)]
        config: PathBuf,
        /// Run only these suites (repeatable); overrides the config list
        #[arg(long = "suite")]
        suites: Vec<String>,
        /// Report path; overrides the config, `-` for stdout
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        /// Worker threads
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Print the canonical form of a named operator
    PrintOp {
        #[arg(long)]
        algebra: AlgebraName,
        #[arg(long, default_value_t = 1)]
        n: usize,
        /// B, A, T<ij>, E<ij>, qdet, t or t2
        #[arg(long)]
        op: String,
    },
}

fn config_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("configuration error: {msg}");
    ExitCode::from(2)
}

fn verify(config: PathBuf, suites: Vec<String>, report: Option<PathBuf>, seed: Option<u64>, jobs: Option<usize>) -> ExitCode {
    let mut cfg = match SuiteConfig::load(&config) {
        Ok(c) => c,
        Err(e) => return config_error(e),
    };
    if !suites.is_empty() {
        cfg.suites = suites;
    }
    if let Some(s) = seed {
        cfg.oracle.seed = s;
    }
    if let Err(e) = cfg.apply_env() {
        return config_error(e);
    }
    if let Some(r) = report {
        cfg.report_path = Some(r);
    }
    if let Err(e) = cfg.validate() {
        return config_error(e);
    }
    let jobs = jobs.unwrap_or_else(|| std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1));
    let sink: Box<dyn Write> = match &cfg.report_path {
        Some(p) if p.as_os_str() != "-" => match File::create(p) {
            Ok(f) => Box::new(BufWriter::new(f)),
            Err(e) => return config_error(format!("cannot create {}: {e}", p.display())),
        },
        _ => Box::new(std::io::stdout().lock()),
    };
    match run_suites_to(&cfg, jobs, sink) {
        Ok((report, mut sink)) => {
            if let Err(e) = sink.flush() {
                eprintln!("writing the report: {e}");
                return ExitCode::from(1);
            }
            let failed = report.failures().count();
            let skipped = report.records.iter().filter(|r| r.status == "skipped").count();
            eprintln!("{} checks, {} failed, {} skipped", report.records.len(), failed, skipped);
            for r in report.failures() {
                eprintln!("FAIL {}/{} [{}]: {}", r.suite, r.check, r.anchor, r.residual.as_deref().unwrap_or(""));
            }
            if failed == 0 {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(RunError::Config(e)) => config_error(e),
        Err(RunError::Io(e)) => {
            eprintln!("writing the report: {e}");
            ExitCode::from(1)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify { config, suites, report, seed, jobs } => verify(config, suites, report, seed, jobs),
        Command::PrintOp { algebra, n, op } => {
            let mut limits = SuiteConfig::new(algebra, n);
            if let Err(e) = limits.apply_env() {
                return config_error(e);
            }
            match named_operator(algebra.algebra(), n, &op, &limits.limits()) {
                Ok(w) => {
                    println!("{w}");
                    ExitCode::SUCCESS
                }
                Err(e) => config_error(e),
            }
        }
    }
}
