use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use frostlab_cli::config::{ExperimentConfig, Scenario};
use frostlab_cli::scenario::run;

/// frostlab: reproducible experiments on fractal measures, Fourier decay,
/// additive energies, decoupling ratios, tube incidences and Furstenberg
/// sets. Exit codes: 0 pass, 2 bound violation, 1 error.
#[derive(Parser)]
#[command(name = "frostlab", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonArgs {
    /// Experiment config file (INI-style sections).
    #[arg(long)]
    config: PathBuf,
    /// Output directory override.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Heavy-square exponent override.
    #[arg(long)]
    alpha: Option<f64>,
    /// Seed override.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// L^6 decay scan of a lifted measure against the envelope.
    Decay(CommonArgs),
    /// Discrete/measure energies across a truncation ladder.
    Energy(CommonArgs),
    /// l^2 L^6 decoupling ratios across scales.
    Decouple(CommonArgs),
    /// Tube-square incidence statistics and heavy-square bounds.
    Incidence(CommonArgs),
    /// Heavy-square Furstenberg verification.
    Furstenberg(CommonArgs),
    /// AD-regular decoupling-energy pipeline.
    Pipeline(CommonArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (scenario, args) = match cli.command {
        Command::Decay(a) => (Scenario::Decay, a),
        Command::Energy(a) => (Scenario::Energy, a),
        Command::Decouple(a) => (Scenario::Decouple, a),
        Command::Incidence(a) => (Scenario::Incidence, a),
        Command::Furstenberg(a) => (Scenario::Furstenberg, a),
        Command::Pipeline(a) => (Scenario::Pipeline, a),
    };

    let text = match std::fs::read_to_string(&args.config) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", args.config.display());
            return ExitCode::from(1);
        }
    };
    let cfg = match ExperimentConfig::from_text(&text) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {}: {e}", args.config.display());
            return ExitCode::from(1);
        }
    };
    if cfg.scenario != scenario {
        eprintln!(
            "error: config declares scenario {:?} but the {} subcommand was invoked",
            cfg.scenario.name(),
            scenario.name()
        );
        return ExitCode::from(1);
    }
    let cfg = cfg.with_overrides(args.out, args.alpha, args.seed);

    let outcome = run(&cfg);
    println!(
        "{}: {} ({})",
        scenario.name(),
        match outcome.status {
            frostlab_cli::RunStatus::Pass => "pass",
            frostlab_cli::RunStatus::BoundViolation => "bound violation",
            frostlab_cli::RunStatus::Error => "error",
        },
        outcome.message
    );
    ExitCode::from(outcome.status.exit_code() as u8)
}
