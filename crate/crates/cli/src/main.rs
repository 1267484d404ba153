use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use eit_cli::{
    compare_report, parse_config, parse_override, run_sweep, write_csv, write_scales, ConfigError, SweepConfig,
    SweepError,
};

const EXIT_TOLERANCE: u8 = 1;
const EXIT_CONFIG: u8 = 2;
const EXIT_NUMERICAL: u8 = 3;

#[derive(Parser)]
#[command(name = "eit-sweep", version, about = "Quantum noise spectra of pump/probe beams in an EIT medium")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate spectra over the configured grid and write CSV.
    Sweep(Common),
    /// Compare analytic and numeric spectra; exit 1 when out of tolerance.
    Compare(Common),
    /// Print absorption, oscillation and transfer lengths and peak positions.
    Scales(Common),
}

#[derive(Args)]
struct Common {
    /// Flat `key = value` config file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Override one config key (repeatable).
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
    /// Output path; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// analytic, numeric, compare or decoherence.
    #[arg(long)]
    mode: Option<String>,
}

enum Failure {
    Config(String),
    Numerical(String),
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        Failure::Config(e.to_string())
    }
}

impl From<SweepError> for Failure {
    fn from(e: SweepError) -> Self {
        match e {
            SweepError::Config(m) => Failure::Config(m),
            other => Failure::Numerical(other.to_string()),
        }
    }
}

fn load(common: &Common, forced_mode: Option<&str>) -> Result<SweepConfig, Failure> {
    let mut raw = match &common.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| ConfigError::Io(format!("{}: {e}", path.display())))?;
            parse_config(&text)?
        }
        None => Default::default(),
    };
    for arg in &common.set {
        let (k, v) = parse_override(arg)?;
        raw.insert(k, v);
    }
    if let Some(m) = &common.mode {
        raw.insert("mode".into(), m.clone());
    }
    if let Some(m) = forced_mode {
        match raw.get("mode") {
            Some(given) if given != m => {
                return Err(Failure::Config(format!("this command needs mode {m}, got {given}")));
            }
            _ => {
                raw.insert("mode".into(), m.into());
            }
        }
    }
    if let Some(out) = &common.out {
        raw.insert("out".into(), out.display().to_string());
    }
    Ok(SweepConfig::from_raw(&raw)?)
}

fn open_output(path: Option<&Path>) -> Result<Box<dyn Write>, Failure> {
    match path {
        Some(p) => File::create(p)
            .map(|f| Box::new(BufWriter::new(f)) as Box<dyn Write>)
            .map_err(|e| Failure::Config(format!("cannot create {}: {e}", p.display()))),
        None => Ok(Box::new(BufWriter::new(io::stdout().lock()))),
    }
}

fn write_failed(e: io::Error) -> Failure {
    Failure::Config(format!("cannot write output: {e}"))
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Sweep(common) => {
            let cfg = load(&common, None)?;
            let records = run_sweep(&cfg)?;
            let mut out = open_output(cfg.out.as_deref())?;
            write_csv(&records, &mut out).and_then(|_| out.flush()).map_err(write_failed)?;
            Ok(0)
        }
        Command::Compare(common) => {
            let cfg = load(&common, Some("compare"))?;
            let (report, records) = compare_report(&cfg)?;
            if let Some(path) = &cfg.out {
                let mut out = open_output(Some(path))?;
                write_csv(&records, &mut out).and_then(|_| out.flush()).map_err(write_failed)?;
            }
            let stdout = io::stdout();
            report.write(stdout.lock()).map_err(write_failed)?;
            Ok(if report.within_tolerance() { 0 } else { EXIT_TOLERANCE })
        }
        Command::Scales(common) => {
            let cfg = load(&common, None)?;
            let mut out = open_output(cfg.out.as_deref())?;
            write_scales(&cfg, &mut out)?;
            out.flush().map_err(write_failed)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_CONFIG)
        }
        Err(Failure::Numerical(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_NUMERICAL)
        }
    }
}
