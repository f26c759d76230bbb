use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod angle;
mod commands;
mod config;
mod error;

use angle::parse_angle;

const ANGLE_HELP: &str = "Angles take an optional unit suffix: 1.57, 1.57rad, 90deg. Bare numbers are radians.";

#[derive(Parser)]
#[command(name = "qiopa", version, about = "Quantum-injected parametric amplifier: Wigner grids, correlations and oracle checks", after_help = ANGLE_HELP)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the Wigner function on a 2-D grid and export CSV + JSON.
    WignerGrid(WignerGridArgs),
    /// First/second-order correlations, optionally swept over one variable.
    Correlations(CorrelationArgs),
    /// Run the oracle-equivalence suites and print a pass/fail table.
    Verify(VerifyArgs),
    /// Dump the truncated output state as JSON.
    StateDump(StateDumpArgs),
}

#[derive(Args, Clone, Default)]
pub struct CommonArgs {
    /// TOML scenario file; flags override its values.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// nondegenerate | degenerate
    #[arg(long)]
    pub configuration: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub gain: Option<f64>,
    /// Alternative to --gain: mean photon number per mode, n̄ = sinh²g.
    #[arg(long, conflicts_with = "gain")]
    pub mean_photons: Option<f64>,
    /// Injection phase Φ.
    #[arg(long, value_parser = parse_angle, allow_hyphen_values = true)]
    pub phi: Option<f64>,
}

#[derive(Args, Clone, Default)]
pub struct WignerGridArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Named grid preset (fig4: two-amplifier output, g = 2.5, Re γA+ vs Im γB−).
    #[arg(long)]
    pub preset: Option<String>,
    /// slice | marginal | both
    #[arg(long)]
    pub mode: Option<String>,
    /// e.g. re_gamma_a_plus
    #[arg(long)]
    pub x_axis: Option<String>,
    #[arg(long)]
    pub y_axis: Option<String>,
    /// min,max,count
    #[arg(long, allow_hyphen_values = true)]
    pub x_range: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub y_range: Option<String>,
    /// Pin a non-swept coordinate of a slice: axis=value (repeatable).
    #[arg(long = "fix", allow_hyphen_values = true)]
    pub fixed: Vec<String>,
    #[arg(long)]
    pub max_samples: Option<usize>,
    /// Integrate W over the full phase space and print the result.
    #[arg(long)]
    pub normalize_check: bool,
    /// Print the cat-criteria report as JSON.
    #[arg(long)]
    pub cat_report: bool,
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
    #[arg(long)]
    pub stem: Option<String>,
}

#[derive(Args, Clone, Default)]
pub struct CorrelationArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Rotator angle φ₁ on k₁ (or of the single degenerate analyzer).
    #[arg(long, value_parser = parse_angle, allow_hyphen_values = true)]
    pub phi1: Option<f64>,
    #[arg(long, value_parser = parse_angle, allow_hyphen_values = true)]
    pub phi2: Option<f64>,
    /// Birefringent shift Ψ₁ = ψα − ψβ on k₁.
    #[arg(long, value_parser = parse_angle, allow_hyphen_values = true)]
    pub psi1: Option<f64>,
    #[arg(long, value_parser = parse_angle, allow_hyphen_values = true)]
    pub psi2: Option<f64>,
    /// var=start:stop:count with var one of phi1, phi2, psi1, psi2, Phi, g.
    #[arg(long, allow_hyphen_values = true)]
    pub sweep: Vec<String>,
    /// Print the Cauchy–Schwarz test at the given settings.
    #[arg(long)]
    pub cauchy_schwarz: bool,
    /// Print the fringe visibility.
    #[arg(long)]
    pub visibility: bool,
    /// Compute rates from the Fock-space oracle instead of the closed forms.
    #[arg(long)]
    pub oracle: bool,
    /// Print the full report as JSON.
    #[arg(long)]
    pub json: bool,
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
    #[arg(long)]
    pub stem: Option<String>,
}

#[derive(Args, Clone, Default)]
pub struct VerifyArgs {
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Comma-separated gains (default 0.2,0.5,0.8).
    #[arg(long, value_delimiter = ',')]
    pub gains: Option<Vec<f64>>,
    /// Constant applied to the oracle's Wigner values before comparison.
    #[arg(long, allow_hyphen_values = true)]
    pub convention_scale: Option<f64>,
    /// Write the JSON report here.
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// Print the JSON report instead of the table.
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Clone, Default)]
pub struct StateDumpArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Largest photon number n kept in each sum.
    #[arg(long)]
    pub truncation: Option<usize>,
    /// Apply the polarizing-beam-splitter swap to the degenerate output.
    #[arg(long)]
    pub pbs_swap: bool,
    /// Write here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::WignerGrid(a) => commands::wigner_grid::run(&a),
        Command::Correlations(a) => commands::correlations::run(&a),
        Command::Verify(a) => commands::verify::run(&a),
        Command::StateDump(a) => commands::state_dump::run(&a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
