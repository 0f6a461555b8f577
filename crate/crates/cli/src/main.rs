use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use tgklo_cli::{run, JobConfig, Suite};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Text,
}

/// Runs relation and identity suites for one shape.
#[derive(Debug, Parser)]
#[command(name = "tgklo", version)]
struct Args {
    /// Job configuration (flat JSON object).
    #[arg(long)]
    config: PathBuf,
    /// Suite to run; repeatable, overrides the config's list.
    #[arg(long = "suite")]
    suites: Vec<String>,
    /// Report destination; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Worker threads; overrides the config's parallelism.
    #[arg(long)]
    jobs: Option<usize>,
}

fn fail(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {}", msg);
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) if e.use_stderr() => {
            let _ = e.print();
            return ExitCode::from(2);
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
    };
    let text = match fs::read_to_string(&args.config) {
        Ok(t) => t,
        Err(e) => return fail(format!("cannot read {}: {}", args.config.display(), e)),
    };
    let mut cfg = match JobConfig::parse(&text) {
        Ok(c) => c,
        Err(e) => return fail(e),
    };
    if !args.suites.is_empty() {
        match args.suites.iter().map(|s| s.parse()).collect::<Result<Vec<Suite>, _>>() {
            Ok(s) => cfg.suites = s,
            Err(e) => return fail(e),
        }
        cfg.normalize_suites();
    }
    if let Some(j) = args.jobs {
        if j == 0 {
            return fail("--jobs must be at least 1");
        }
        cfg.parallelism = j;
    }
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cfg.parallelism).build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {}", e);
            return ExitCode::from(1);
        }
    };
    let report = pool.install(|| run(&cfg));
    let body = match args.format {
        Format::Json => serde_json::to_string_pretty(&report).expect("report serializes") + "\n",
        Format::Text => report.to_text(),
    };
    match &args.out {
        Some(p) => {
            if let Err(e) = fs::write(p, body) {
                eprintln!("error: cannot write {}: {}", p.display(), e);
                return ExitCode::from(1);
            }
        }
        None => print!("{}", body),
    }
    ExitCode::from(report.exit_code() as u8)
}
