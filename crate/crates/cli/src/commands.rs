use anyhow::Context;
use serde::Serialize;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use dipolenet_core::scenario::{self, AIR_TX_PERCENTAGES};
use dipolenet_core::units::linear_to_db;
use dipolenet_core::{AntennaConfig, DipoleParams, NetworkRealization, ScenarioConfig, Scheme, SweepKind, SweepResult};

use crate::args::{Cli, Command, PatternArgs, ReplayArgs, SingleArgs, SweepArgs};
use crate::config::resolve_scenario;
use crate::error::CliError;
use crate::manifest::{RunManifest, RunSpec};
use crate::output;

pub fn dispatch(cli: Cli) -> Result<(), CliError> {
    let workers = cli.workers;
    match cli.command {
        Command::Sweep(args) => cmd_sweep(&args, workers),
        Command::Pattern(args) => cmd_pattern(&args),
        Command::Single(args) => cmd_single(&args),
        Command::Replay(args) => cmd_replay(&args, workers),
    }
}

fn cmd_sweep(args: &SweepArgs, workers: Option<usize>) -> Result<(), CliError> {
    let config = resolve_scenario(&args.scenario)?;
    let kind = SweepKind::from(args.kind);
    let schemes = if args.all_schemes {
        Scheme::REFERENCE_SET.to_vec()
    } else {
        vec![config.scheme()]
    };
    let air_tx_values = match kind {
        SweepKind::AirTx => args.air_tx_values.clone().unwrap_or_else(|| AIR_TX_PERCENTAGES.to_vec()),
        _ => Vec::new(),
    };
    let spec = RunSpec::Sweep {
        kind,
        values: args.values.clone().unwrap_or_else(|| kind.default_values()),
        air_tx_values,
        schemes,
        config,
    };
    let written = run_spec(spec, &args.out, workers)?;
    for path in written {
        println!("{}", path.display());
    }
    Ok(())
}

fn cmd_replay(args: &ReplayArgs, workers: Option<usize>) -> Result<(), CliError> {
    let manifest = RunManifest::read(&args.manifest)?;
    let out = match &args.out {
        Some(dir) => dir.clone(),
        None => args.manifest.parent().map(Path::to_path_buf).unwrap_or_default(),
    };
    for path in run_spec(manifest.run, &out, workers)? {
        println!("{}", path.display());
    }
    Ok(())
}

/// Executes a recorded run, writes its files plus a fresh manifest into
/// `out`, and returns the written paths.
pub fn run_spec(spec: RunSpec, out: &Path, workers: Option<usize>) -> Result<Vec<PathBuf>, CliError> {
    let files = match &spec {
        RunSpec::Sweep {
            kind,
            config,
            values,
            air_tx_values,
            schemes,
        } => sweep_files(*kind, config, values, air_tx_values, schemes, workers)?,
        RunSpec::Pattern {
            antenna,
            azimuth_step_deg,
            polar_step_deg,
            dipole,
        } => vec![(
            PathBuf::from(format!("pattern_{antenna}.csv")),
            output::pattern_csv(*antenna, *azimuth_step_deg, *polar_step_deg, dipole)?,
        )],
    };
    std::fs::create_dir_all(out).with_context(|| format!("creating output directory {}", out.display()))?;
    let mut manifest = RunManifest::new(spec);
    let mut written = Vec::with_capacity(files.len());
    for (name, body) in files {
        let path = out.join(&name);
        std::fs::write(&path, body).with_context(|| format!("writing {}", path.display()))?;
        manifest.outputs.push(name);
        written.push(path);
    }
    manifest.write(out)?;
    Ok(written)
}

fn sweep_files(
    kind: SweepKind,
    config: &ScenarioConfig,
    values: &[f64],
    air_tx_values: &[f64],
    schemes: &[Scheme],
    workers: Option<usize>,
) -> Result<Vec<(PathBuf, String)>, CliError> {
    config.validate()?;
    let named = |prefix: String, result: &SweepResult| -> Result<Vec<(PathBuf, String)>, CliError> {
        let bodies = output::sweep_csvs(result)?;
        Ok(result
            .schemes
            .iter()
            .zip(bodies)
            .map(|(s, body)| (PathBuf::from(format!("{prefix}_{s}.csv")), body))
            .collect())
    };
    match kind {
        SweepKind::AirPercentage => {
            let r = scenario::sweep_air_percentage(config, schemes, values, workers)?;
            named(kind.to_string(), &r)
        }
        SweepKind::Height => {
            let r = scenario::sweep_height(config, schemes, values, workers)?;
            named(kind.to_string(), &r)
        }
        SweepKind::AirTx => {
            let results = scenario::sweep_air_tx(config, schemes, values, air_tx_values, workers)?;
            let mut files = Vec::new();
            for (tx, r) in air_tx_values.iter().zip(&results) {
                files.extend(named(format!("{kind}-{}", output::fmt_num(*tx)), r)?);
            }
            Ok(files)
        }
    }
}

fn cmd_pattern(args: &PatternArgs) -> Result<(), CliError> {
    let defaults = DipoleParams::default();
    let carrier_frequency = args.carrier_frequency.unwrap_or(defaults.carrier_frequency);
    let dipole = match args.dipole_length {
        Some(dipole_length) => DipoleParams {
            carrier_frequency,
            dipole_length,
        },
        None => DipoleParams::half_wave(carrier_frequency),
    };
    let spec = RunSpec::Pattern {
        antenna: args.antenna,
        azimuth_step_deg: args.azimuth_step_deg,
        polar_step_deg: args.polar_step_deg,
        dipole,
    };
    for path in run_spec(spec, &args.out, None)? {
        println!("{}", path.display());
    }
    Ok(())
}

#[derive(Debug, Serialize)]
pub struct SingleReport {
    pub seed: u64,
    pub trial: u64,
    pub scheme: String,
    pub config: ScenarioConfig,
    pub network: NetworkRealization,
    pub selected: Vec<AntennaConfig>,
    pub scores: Vec<f64>,
    pub sinr: Vec<f64>,
    pub sinr_db: Vec<f64>,
    pub sum_rate: f64,
}

pub fn single_report(config: &ScenarioConfig, trial: u64) -> Result<SingleReport, CliError> {
    let network = scenario::generate_topology(config, trial)?;
    let scheme = config.scheme();
    let selection = scenario::select_scheme(&network, scheme, &config.radio, &config.dipole_params)?;
    let metrics = dipolenet_core::metrics::compute_metrics(&network, &selection, &config.radio, &config.dipole_params)?;
    Ok(SingleReport {
        seed: config.seed,
        trial,
        scheme: scheme.label(),
        config: config.clone(),
        network,
        selected: selection.per_transmitter_config,
        scores: selection.per_transmitter_score,
        sinr_db: metrics.per_receiver_sinr.iter().map(|&s| linear_to_db(s)).collect(),
        sinr: metrics.per_receiver_sinr,
        sum_rate: metrics.sum_rate,
    })
}

fn cmd_single(args: &SingleArgs) -> Result<(), CliError> {
    let config = resolve_scenario(&args.scenario)?;
    let report = single_report(&config, args.trial)?;
    let text = serde_json::to_string_pretty(&report).map_err(anyhow::Error::from)?;
    let mut stdout = std::io::stdout().lock();
    match writeln!(stdout, "{text}") {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}
