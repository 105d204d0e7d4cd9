use clap::{Args, Parser, Subcommand, ValueEnum};
use dipolenet_core::{AntennaConfig, SweepKind};
use std::path::PathBuf;

#[derive(Debug, Parser)]
#[command(name = "dipolenet", version, about = "3D IoT interference simulator with dipole antenna selection")]
pub struct Cli {
    /// Worker threads for Monte Carlo trials (defaults to available parallelism).
    #[arg(long, global = true)]
    pub workers: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run an experiment sweep and write one CSV per scheme.
    Sweep(SweepArgs),
    /// Export a power-gain grid for one antenna configuration.
    Pattern(PatternArgs),
    /// Run a single realization and print it as JSON.
    Single(SingleArgs),
    /// Re-run a sweep from a manifest written by `sweep`.
    Replay(ReplayArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepKindArg {
    AirPercentage,
    Height,
    AirTx,
}

impl From<SweepKindArg> for SweepKind {
    fn from(k: SweepKindArg) -> Self {
        match k {
            SweepKindArg::AirPercentage => SweepKind::AirPercentage,
            SweepKindArg::Height => SweepKind::Height,
            SweepKindArg::AirTx => SweepKind::AirTx,
        }
    }
}

/// Scenario overrides; every flag beats the config file, which beats the
/// built-in defaults.
#[derive(Debug, Clone, Default, Args)]
pub struct ScenarioArgs {
    /// TOML config file with [scenario], [radio] and [antenna] sections.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub area_half_width: Option<f64>,
    #[arg(long)]
    pub air_height: Option<f64>,
    #[arg(long)]
    pub air_rx_percentage: Option<f64>,
    #[arg(long)]
    pub air_tx_percentage: Option<f64>,
    /// 1, 2 or 3.
    #[arg(long)]
    pub dipoles: Option<u8>,
    /// fixed, max_power or max_slnr.
    #[arg(long)]
    pub strategy: Option<String>,
    #[arg(long)]
    pub trials: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub tx_power_dbm: Option<f64>,
    #[arg(long)]
    pub carrier_frequency: Option<f64>,
    #[arg(long)]
    pub bandwidth: Option<f64>,
    #[arg(long)]
    pub noise_power_dbm: Option<f64>,
    #[arg(long)]
    pub rx_gain: Option<f64>,
    /// Dipole length in meters (half-wave by default).
    #[arg(long)]
    pub dipole_length: Option<f64>,
    /// Disable small-scale fading (alpha = 1).
    #[arg(long)]
    pub no_fading: bool,
    /// Reuse one device layout for every trial.
    #[arg(long)]
    pub fixed_topology: bool,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(value_enum)]
    pub kind: SweepKindArg,
    #[command(flatten)]
    pub scenario: ScenarioArgs,
    /// Sweep values (percentages or heights in meters), comma separated.
    #[arg(long, value_delimiter = ',')]
    pub values: Option<Vec<f64>>,
    /// Aerial-transmitter shares for `air-tx`.
    #[arg(long, value_delimiter = ',')]
    pub air_tx_values: Option<Vec<f64>>,
    /// Run the four reference schemes instead of the configured one.
    #[arg(long)]
    pub all_schemes: bool,
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct PatternArgs {
    /// x, y, z, xy, yz or xz.
    #[arg(long, value_parser = parse_antenna)]
    pub antenna: AntennaConfig,
    #[arg(long, default_value_t = 1.0)]
    pub azimuth_step_deg: f64,
    #[arg(long, default_value_t = 1.0)]
    pub polar_step_deg: f64,
    #[arg(long)]
    pub carrier_frequency: Option<f64>,
    #[arg(long)]
    pub dipole_length: Option<f64>,
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct SingleArgs {
    #[command(flatten)]
    pub scenario: ScenarioArgs,
    /// Trial index whose substreams are used.
    #[arg(long, default_value_t = 0)]
    pub trial: u64,
}

#[derive(Debug, Args)]
pub struct ReplayArgs {
    pub manifest: PathBuf,
    /// Output directory (defaults to the manifest's directory).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn parse_antenna(s: &str) -> Result<AntennaConfig, String> {
    s.parse().map_err(|e: dipolenet_core::Error| e.to_string())
}
