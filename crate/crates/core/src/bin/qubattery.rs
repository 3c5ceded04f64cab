use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use qubattery::scenario::{emit_csv, run_scenario, write_csv, ScenarioConfig, ScenarioKind};
use qubattery::Error;

/// Simulate XXZ spin-chain quantum battery charging and write CSV.
#[derive(Debug, Parser)]
#[command(name = "qubattery", version)]
struct Cli {
    /// parallel | collective2 | delta-scan | sweep2d | collective3 | dephasing
    scenario: String,

    /// Anisotropy values, comma separated.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true, num_args = 1..)]
    delta: Option<Vec<f64>>,

    /// Coupling strengths J/Ω, comma separated.
    #[arg(long = "j-over-omega", value_delimiter = ',', num_args = 1..)]
    j_over_omega: Option<Vec<f64>>,

    /// Dephasing rates γ/Ω, comma separated.
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    gamma: Option<Vec<f64>>,

    /// Time-grid points on [0, t_min]; odd, at least 201.
    #[arg(long)]
    steps: Option<usize>,

    /// Larmor frequency ω0 in units of Ω.
    #[arg(long)]
    omega0: Option<f64>,

    /// Output CSV path; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,

    /// key=value file applied before the flags.
    #[arg(long)]
    config: Option<PathBuf>,
}

fn build_config(cli: Cli) -> Result<ScenarioConfig, Error> {
    let kind: ScenarioKind = cli.scenario.parse()?;
    let mut config = ScenarioConfig::new(kind);
    if let Some(path) = &cli.config {
        config.apply_file(path)?;
    }
    if let Some(v) = cli.delta {
        config.delta_list = v;
    }
    if let Some(v) = cli.j_over_omega {
        config.j_over_omega_list = v;
    }
    if let Some(v) = cli.gamma {
        config.gamma_list = v;
    }
    if let Some(steps) = cli.steps {
        config.params.t_steps = steps;
    }
    if let Some(w) = cli.omega0 {
        config.params.omega0 = w;
    }
    if cli.out.is_some() {
        config.output_path = cli.out;
    }
    config.validate()?;
    Ok(config)
}

fn run(cli: Cli) -> Result<(), Error> {
    let config = build_config(cli)?;
    let result = run_scenario(&config)?;
    match &config.output_path {
        Some(path) => emit_csv(&result, path),
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            write_csv(&result, &mut lock)?;
            lock.flush()?;
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e @ Error::Io(_)) => {
            eprintln!("qubattery: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("qubattery: {e}");
            ExitCode::from(1)
        }
    }
}
