//! `uffsim` — mission-analysis front end: orbit ephemerides, contrast and
//! noise tables, the systematic bias budget, mission-integrated sensitivity,
//! fringe-extraction demos, and the source preparation timeline.

use clap::{Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;
use uffsim_cli::commands::{self, OutputFormat};
use uffsim_cli::report::{fnv1a_hex, RunReport};
use uffsim_cli::scenario::{load_scenario_file, Scenario};

#[derive(Parser)]
#[command(
    name = "uffsim",
    version,
    about = "Dual-species atom-interferometer mission analysis"
)]
struct Cli {
    /// Scenario file (TOML); omitted fields fall back to the nominal values.
    #[arg(long, global = true)]
    scenario: Option<PathBuf>,
    /// Directory for CSV outputs.
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,
    /// Master random seed override.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Exit nonzero when any published-reference tolerance is breached.
    #[arg(long, global = true)]
    strict: bool,
    /// Primary output format on stdout.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Propagate the orbit and export the ephemeris.
    Orbit,
    /// Contrast and shot noise across the perigee pass.
    Contrast,
    /// Systematic differential-acceleration budget.
    Budget,
    /// Per-cycle statistical noise table.
    Noise,
    /// Mission-integrated Eötvös sensitivity over all revolutions.
    Mission,
    /// Monte-Carlo fringe generation and ellipse-fit phase extraction.
    EllipseDemo,
    /// Source preparation timeline and atom budget.
    Timeline,
}

fn run() -> Result<(RunReport, bool), String> {
    let cli = Cli::parse();
    let (mut scenario, warnings) = match &cli.scenario {
        Some(path) => load_scenario_file(path).map_err(|e| e.to_string())?,
        None => (Scenario::default(), Vec::new()),
    };
    if let Some(seed) = cli.seed {
        scenario.seed = seed;
    }
    let digest = fnv1a_hex(scenario.to_toml().as_bytes());
    let format = match cli.format {
        Format::Table => OutputFormat::Table,
        Format::Csv => OutputFormat::Csv,
    };

    let name = match cli.command {
        Command::Orbit => "orbit",
        Command::Contrast => "contrast",
        Command::Budget => "budget",
        Command::Noise => "noise",
        Command::Mission => "mission",
        Command::EllipseDemo => "ellipse-demo",
        Command::Timeline => "timeline",
    };
    let mut report = RunReport::new(name, digest);
    report.warnings.extend(warnings);

    let report = match cli.command {
        Command::Orbit => commands::cmd_orbit(&scenario, &cli.out, format, report),
        Command::Contrast => commands::cmd_contrast(&scenario, &cli.out, format, report),
        Command::Budget => commands::cmd_budget(&scenario, &cli.out, format, report),
        Command::Noise => commands::cmd_noise(&scenario, &cli.out, format, report),
        Command::Mission => commands::cmd_mission(&scenario, &cli.out, format, report),
        Command::EllipseDemo => commands::cmd_ellipse(&scenario, &cli.out, format, report),
        Command::Timeline => commands::cmd_timeline(&scenario, &cli.out, format, report),
    }
    .map_err(|e| e.to_string())?;
    Ok((report, cli.strict))
}

fn main() -> ExitCode {
    match run() {
        Ok((report, strict)) => {
            eprintln!(
                "\ncommand: {}  inputs digest: {}",
                report.command, report.inputs_digest
            );
            for path in &report.outputs {
                eprintln!("wrote {}", path.display());
            }
            for w in &report.warnings {
                eprintln!("warning: {w}");
            }
            if strict && report.violations > 0 {
                eprintln!(
                    "{} tolerance violation(s) under --strict",
                    report.violations
                );
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
