use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use hom_sim::{parse_config, run_scenario, CliError, Scenario, ScenarioConfig};

/// Two-photon beamsplitter interference simulator.
#[derive(Parser, Debug)]
#[command(name = "hom-sim", version)]
struct Args {
    /// Scenario file (`key = value` lines).
    config: PathBuf,
    /// Output directory; overrides `output`.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Random seed; overrides `seed`.
    #[arg(long)]
    seed: Option<u64>,
    /// Significant digits after the decimal point; overrides `precision`.
    #[arg(long)]
    precision: Option<usize>,
}

fn apply_overrides(config: &mut ScenarioConfig, args: &Args) -> Result<(), CliError> {
    if let Some(out) = &args.output {
        config.output_path = out.clone();
    }
    if let Some(p) = args.precision {
        if !(1..=17).contains(&p) {
            return Err(CliError::Validation(format!(
                "precision must be between 1 and 17, got {p}"
            )));
        }
        config.float_precision = p;
    }
    if let Some(seed) = args.seed {
        match config.scenario {
            Scenario::MonteCarlo | Scenario::DelayScan => config.seed = Some(seed),
            other => return Err(CliError::Config(format!("--seed is not used by scenario {other}"))),
        }
    }
    Ok(())
}

fn run(args: &Args) -> Result<(), CliError> {
    let text = fs::read_to_string(&args.config).map_err(|e| CliError::Io {
        path: args.config.clone(),
        source: e,
    })?;
    let mut config = parse_config(&text)?;
    apply_overrides(&mut config, args)?;
    let report = run_scenario(&config)?;
    for w in &report.warnings {
        eprintln!("{w}");
    }
    print!("{}", report.stdout);
    for f in &report.files {
        println!("wrote {}", f.display());
    }
    Ok(())
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(&args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("hom-sim: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
