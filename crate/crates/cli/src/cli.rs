use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

#[derive(Debug, Parser)]
#[command(
    name = "ptfano",
    version,
    about = "Scattering off side-coupled gain/loss defects on a tight-binding chain"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Transmission, reflection and scattering phase over a frequency grid
    #[command(allow_negative_numbers = true)]
    Sweep {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        axis: AxisArgs,
        #[command(flatten)]
        oracle: OracleArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Closed-form perfect-reflection and perfect-transmission frequencies
    #[command(allow_negative_numbers = true)]
    Resonances {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Compare closed-form amplitudes against the direct lattice solve
    #[command(allow_negative_numbers = true)]
    Verify {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        tol: TolArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Largest |R + T - 1| over a frequency grid
    #[command(allow_negative_numbers = true)]
    Conservation {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        oracle: OracleArgs,
        #[command(flatten)]
        tol: TolArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Complex amplitudes at individual frequencies
    #[command(allow_negative_numbers = true)]
    Amplitudes {
        #[command(flatten)]
        model: ModelArgs,
        /// Frequencies to evaluate (comma separated or repeated)
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        omega: Option<Vec<f64>>,
        #[command(flatten)]
        oracle: OracleArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    A,
    B,
    C,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

/// Model selection and parameters. Flags override `--config`, which
/// overrides `--preset`.
#[derive(Debug, Clone, Default, Args)]
pub struct ModelArgs {
    /// Model variant
    #[arg(long, value_enum)]
    pub model: Option<ModelKind>,
    /// Named parameter set (fig2a, fig2c, fig2e, fig3, fig4, fig4c, fig5a..fig5d, fig6)
    #[arg(long)]
    pub preset: Option<String>,
    /// JSON file whose keys mirror the long flag names
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Chain hopping J
    #[arg(long = "J")]
    pub j: Option<f64>,
    /// Defect coupling J_par (model b: sets J1 = J2)
    #[arg(long = "J-par")]
    pub j_par: Option<f64>,
    /// Defect level E_d (model b: sets E_d1 = E_d2)
    #[arg(long = "Ed")]
    pub ed: Option<f64>,
    /// Gain/loss gamma (model b: sets gamma1 = gamma, gamma2 = -gamma)
    #[arg(long)]
    pub gamma: Option<f64>,
    /// Coupling J_perp (model b: between the defects; model c: to the chain)
    #[arg(long = "J-perp")]
    pub j_perp: Option<f64>,
    #[arg(long = "J1")]
    pub j1: Option<f64>,
    #[arg(long = "J2")]
    pub j2: Option<f64>,
    #[arg(long = "Ed1")]
    pub ed1: Option<f64>,
    #[arg(long = "Ed2")]
    pub ed2: Option<f64>,
    #[arg(long)]
    pub gamma1: Option<f64>,
    #[arg(long)]
    pub gamma2: Option<f64>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct GridArgs {
    /// Number of grid points [default: 2001]
    #[arg(long)]
    pub steps: Option<usize>,
    /// Lower end of the frequency grid [default: -2|J|(1 - 1e-6)]
    #[arg(long = "omega-min")]
    pub omega_min: Option<f64>,
    /// Upper end of the frequency grid [default: 2|J|(1 - 1e-6)]
    #[arg(long = "omega-max")]
    pub omega_max: Option<f64>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct AxisArgs {
    /// Secondary parameter to step (gamma, J_perp, J_par, J1, J2, E_d1, E_d2)
    #[arg(long)]
    pub vary: Option<String>,
    /// Values for --vary (comma separated)
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub values: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct OracleArgs {
    /// Also run the direct lattice solve
    #[arg(long)]
    pub oracle: bool,
}

#[derive(Debug, Clone, Default, Args)]
pub struct TolArgs {
    /// Pass/fail tolerance
    #[arg(long)]
    pub tol: Option<f64>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct OutputArgs {
    /// Output format (sweep, resonances, amplitudes default to csv;
    /// verify, conservation print a summary unless set)
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write to this file instead of standard output
    #[arg(long)]
    pub output: Option<PathBuf>,
}
