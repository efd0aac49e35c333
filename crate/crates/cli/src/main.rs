use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serre_core::oracle::Limits;
use serre_core::verify::VerifyOptions;

mod commands;
mod report;
mod scenario;

use report::{Format, Report};
use scenario::ConfigError;

#[derive(Debug, Parser)]
#[command(name = "serre", version, about = "Serre weights and rank-one Breuil modules with descent data")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// JSON scenario file
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value = "table")]
    format: Format,
    /// write output here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// seed for randomized suites
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// oracle size caps, e.g. --limit max_q=49 --limit max_ep=60
    #[arg(long, global = true, value_parser = parse_limit)]
    limit: Vec<(String, i64)>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Explicit weight set with (J, d) witnesses
    Weights,
    /// Partition of the weight set by the types tau_a
    Partition,
    /// Types tau_a and their Jordan-Hölder constituents
    Types,
    /// Ext^1(M, N) in canonical form, checked against the oracle
    Ext,
    /// Hom(M, N), checked against the oracle
    Hom,
    /// Models of a type with a given generic fibre
    Models,
    /// dim L(chi1, chi2, tau_a) and the intersection table
    Lattice,
    /// The non-generic example with chi1 trivial and f = 2
    Counterexample {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        b: i64,
    },
    /// Run the acceptance suites
    Verify {
        /// run only these criteria
        #[arg(long)]
        criterion: Vec<u8>,
    },
}

fn parse_limit(s: &str) -> Result<(String, i64), String> {
    let (k, v) = s.split_once('=').ok_or("expected KEY=VALUE")?;
    if k != "max_q" && k != "max_ep" {
        return Err(format!("unknown limit {k}; known: max_q, max_ep"));
    }
    let v: i64 = v.parse().map_err(|e| format!("{k}: {e}"))?;
    Ok((k.to_string(), v))
}

#[derive(Debug)]
pub enum CliError {
    Config(ConfigError),
    Domain(serre_core::Error),
    Io(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(e) => e.fmt(f),
            CliError::Domain(e) => e.fmt(f),
            CliError::Io(e) => f.write_str(e),
        }
    }
}

impl From<serre_core::Error> for CliError {
    fn from(e: serre_core::Error) -> Self {
        CliError::Domain(e)
    }
}

fn limits(cli: &Cli, base: Limits) -> Limits {
    let mut l = base;
    for (k, v) in &cli.limit {
        match k.as_str() {
            "max_q" => l.max_q = *v,
            _ => l.max_ep = *v,
        }
    }
    l
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    let scenario = || -> Result<scenario::Scenario, CliError> {
        let path = cli.config.as_ref().ok_or_else(|| CliError::Io("this subcommand needs --config PATH".into()))?;
        scenario::load(path)
    };
    match &cli.command {
        Command::Weights => commands::weights(&scenario()?),
        Command::Partition => commands::partition_cmd(&scenario()?),
        Command::Types => commands::types(&scenario()?),
        Command::Ext => commands::ext(&scenario()?, &limits(cli, Limits::default())),
        Command::Hom => commands::hom(&scenario()?, &limits(cli, Limits::default())),
        Command::Models => commands::models(&scenario()?),
        Command::Lattice => commands::lattice(&scenario()?),
        Command::Counterexample { p, b } => {
            let base = Limits { max_q: 49, ..Limits::default() };
            commands::counterexample(*p, *b, &limits(cli, base))
        }
        Command::Verify { criterion } => {
            let opts = VerifyOptions { seed: cli.seed, limits: limits(cli, Limits::default()) };
            commands::verify(criterion, &opts)
        }
    }
}

fn emit(cli: &Cli, report: &Report) -> Result<(), CliError> {
    let text = report.render(cli.format).map_err(|e| CliError::Io(format!("csv: {e}")))?;
    match &cli.out {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = run(&cli).and_then(|report| emit(&cli, &report).map(|()| report.verified));
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("verification failed");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
