//! Config file schema and flag/file/default precedence.

use serde::{Deserialize, Serialize};
use std::path::Path;

use dipolenet_core::channel::noise_power;
use dipolenet_core::units::dbm_to_watts;
use dipolenet_core::{DipoleCount, DipoleParams, RadioParams, ScenarioConfig, Strategy};

use crate::args::ScenarioArgs;
use crate::error::CliError;

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ConfigFile {
    pub scenario: ScenarioSection,
    pub radio: RadioSection,
    pub antenna: AntennaSection,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScenarioSection {
    pub k: Option<usize>,
    pub area_half_width: Option<f64>,
    pub air_height: Option<f64>,
    pub air_rx_percentage: Option<f64>,
    pub air_tx_percentage: Option<f64>,
    pub dipoles: Option<u8>,
    pub strategy: Option<String>,
    pub trials: Option<u64>,
    pub seed: Option<u64>,
    pub fading_enabled: Option<bool>,
    pub fixed_topology: Option<bool>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RadioSection {
    pub tx_power_dbm: Option<f64>,
    /// Hz.
    pub carrier_frequency: Option<f64>,
    /// Hz.
    pub bandwidth: Option<f64>,
    /// Thermal noise over the bandwidth when absent.
    pub noise_power_dbm: Option<f64>,
    pub rx_gain: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AntennaSection {
    /// Meters; half-wave when absent.
    pub dipole_length: Option<f64>,
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Config(format!("config file: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read config file {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Layers command-line flags over this file.
    pub fn with_flags(mut self, a: &ScenarioArgs) -> Self {
        fn set<T: Clone>(slot: &mut Option<T>, flag: &Option<T>) {
            if flag.is_some() {
                slot.clone_from(flag);
            }
        }
        let s = &mut self.scenario;
        set(&mut s.k, &a.k);
        set(&mut s.area_half_width, &a.area_half_width);
        set(&mut s.air_height, &a.air_height);
        set(&mut s.air_rx_percentage, &a.air_rx_percentage);
        set(&mut s.air_tx_percentage, &a.air_tx_percentage);
        set(&mut s.dipoles, &a.dipoles);
        set(&mut s.strategy, &a.strategy);
        set(&mut s.trials, &a.trials);
        set(&mut s.seed, &a.seed);
        if a.no_fading {
            s.fading_enabled = Some(false);
        }
        if a.fixed_topology {
            s.fixed_topology = Some(true);
        }
        let r = &mut self.radio;
        set(&mut r.tx_power_dbm, &a.tx_power_dbm);
        set(&mut r.carrier_frequency, &a.carrier_frequency);
        set(&mut r.bandwidth, &a.bandwidth);
        set(&mut r.noise_power_dbm, &a.noise_power_dbm);
        set(&mut r.rx_gain, &a.rx_gain);
        set(&mut self.antenna.dipole_length, &a.dipole_length);
        self
    }

    /// Fills every missing value from the defaults and validates the result.
    pub fn resolve(&self) -> Result<ScenarioConfig, CliError> {
        let d = ScenarioConfig::default();
        let s = &self.scenario;
        let dipoles = match s.dipoles {
            Some(n) => DipoleCount::try_from(n)?,
            None => d.dipoles,
        };
        let strategy = match &s.strategy {
            Some(name) => name.parse::<Strategy>()?,
            None if s.dipoles.is_some() => Strategy::default_for(dipoles),
            None => d.strategy,
        };

        let r = &self.radio;
        let bandwidth = r.bandwidth.unwrap_or(d.radio.bandwidth);
        let carrier_frequency = r.carrier_frequency.unwrap_or(d.radio.carrier_frequency);
        let radio = RadioParams {
            tx_power: r.tx_power_dbm.map(dbm_to_watts).unwrap_or(d.radio.tx_power),
            carrier_frequency,
            bandwidth,
            noise_power: r.noise_power_dbm.map(dbm_to_watts).unwrap_or_else(|| noise_power(bandwidth)),
            rx_gain: r.rx_gain.unwrap_or(d.radio.rx_gain),
        };
        let dipole_params = match self.antenna.dipole_length {
            Some(dipole_length) => DipoleParams {
                carrier_frequency,
                dipole_length,
            },
            None => DipoleParams::half_wave(carrier_frequency),
        };

        let cfg = ScenarioConfig {
            k: s.k.unwrap_or(d.k),
            area_half_width: s.area_half_width.unwrap_or(d.area_half_width),
            air_height: s.air_height.unwrap_or(d.air_height),
            air_rx_percentage: s.air_rx_percentage.unwrap_or(d.air_rx_percentage),
            air_tx_percentage: s.air_tx_percentage.unwrap_or(d.air_tx_percentage),
            dipoles,
            strategy,
            trials: s.trials.unwrap_or(d.trials),
            seed: s.seed.unwrap_or(d.seed),
            radio,
            dipole_params,
            fading_enabled: s.fading_enabled.unwrap_or(d.fading_enabled),
            fixed_topology: s.fixed_topology.unwrap_or(d.fixed_topology),
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

/// Resolves a scenario from an optional config file plus flags.
pub fn resolve_scenario(args: &ScenarioArgs) -> Result<ScenarioConfig, CliError> {
    let file = match &args.config {
        Some(path) => ConfigFile::load(path)?,
        None => ConfigFile::default(),
    };
    file.with_flags(args).resolve()
}
