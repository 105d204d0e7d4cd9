//! Transmit-side antenna selection.
//!
//! Each transmitter picks its configuration on its own: either the fixed
//! z-dipole, the candidate maximizing received power at its own receiver,
//! or the candidate maximizing signal-to-leakage-plus-noise ratio. Channel
//! knowledge is ideal and fades are held fixed across candidates.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

use crate::antenna::{AntennaConfig, DipoleParams};
use crate::channel::RadioParams;
use crate::error::{Error, Result};
use crate::scenario::NetworkRealization;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub enum DipoleCount {
    One = 1,
    Two = 2,
    Three = 3,
}

impl TryFrom<u8> for DipoleCount {
    type Error = Error;

    fn try_from(n: u8) -> Result<Self> {
        match n {
            1 => Ok(DipoleCount::One),
            2 => Ok(DipoleCount::Two),
            3 => Ok(DipoleCount::Three),
            _ => Err(Error::config("dipoles", format!("must be 1, 2 or 3, got {n}"))),
        }
    }
}

impl From<DipoleCount> for u8 {
    fn from(d: DipoleCount) -> u8 {
        d as u8
    }
}

impl fmt::Display for DipoleCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", *self as u8)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    /// Always the z-dipole.
    Fixed,
    /// Highest received power at the intended receiver.
    MaxPower,
    /// Highest signal-to-leakage-plus-noise ratio.
    MaxSlnr,
}

impl Strategy {
    pub fn as_str(self) -> &'static str {
        match self {
            Strategy::Fixed => "fixed",
            Strategy::MaxPower => "max_power",
            Strategy::MaxSlnr => "max_slnr",
        }
    }

    /// Default strategy for a dipole count.
    pub fn default_for(dipoles: DipoleCount) -> Self {
        match dipoles {
            DipoleCount::One => Strategy::Fixed,
            _ => Strategy::MaxPower,
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fixed" => Ok(Strategy::Fixed),
            "max_power" => Ok(Strategy::MaxPower),
            "max_slnr" => Ok(Strategy::MaxSlnr),
            _ => Err(Error::config(
                "strategy",
                format!("unknown strategy `{s}` (expected fixed, max_power or max_slnr)"),
            )),
        }
    }
}

/// Configurations a transmitter may choose from, in tie-break order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateSet {
    dipoles: DipoleCount,
}

impl CandidateSet {
    pub fn for_dipoles(dipoles: DipoleCount) -> Self {
        Self { dipoles }
    }

    pub fn dipoles(&self) -> DipoleCount {
        self.dipoles
    }

    pub fn configs(&self) -> &'static [AntennaConfig] {
        use AntennaConfig::*;
        match self.dipoles {
            DipoleCount::One => &[Z],
            DipoleCount::Two => &[Y, Z],
            DipoleCount::Three => &AntennaConfig::ALL,
        }
    }

    pub fn contains(&self, config: AntennaConfig) -> bool {
        self.configs().contains(&config)
    }

    pub fn len(&self) -> usize {
        self.configs().len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SelectionResult {
    pub per_transmitter_config: Vec<AntennaConfig>,
    /// Criterion value at the chosen config: watts for fixed/max-power, a
    /// ratio for SLNR.
    pub per_transmitter_score: Vec<f64>,
}

impl SelectionResult {
    /// Every transmitter on the same configuration, with no scores attached.
    pub fn uniform(config: AntennaConfig, k: usize) -> Self {
        Self {
            per_transmitter_config: vec![config; k],
            per_transmitter_score: vec![f64::NAN; k],
        }
    }
}

/// `|h_ii|²` for transmitter `i` driving `config`.
pub fn received_power(
    tx_index: usize,
    network: &NetworkRealization,
    config: AntennaConfig,
    radio: &RadioParams,
    dipole: &DipoleParams,
) -> Result<f64> {
    Ok(network.channel(tx_index, tx_index, config, radio, dipole)?.power())
}

/// Power transmitter `i` leaks into every other receiver when driving `config`.
pub fn leakage_power(
    tx_index: usize,
    network: &NetworkRealization,
    config: AntennaConfig,
    radio: &RadioParams,
    dipole: &DipoleParams,
) -> Result<f64> {
    let mut leak = 0.0;
    for j in (0..network.k()).filter(|&j| j != tx_index) {
        leak += network.channel(tx_index, j, config, radio, dipole)?.power();
    }
    Ok(leak)
}

pub fn slnr(
    tx_index: usize,
    network: &NetworkRealization,
    config: AntennaConfig,
    radio: &RadioParams,
    dipole: &DipoleParams,
) -> Result<f64> {
    let desired = received_power(tx_index, network, config, radio, dipole)?;
    let leak = leakage_power(tx_index, network, config, radio, dipole)?;
    Ok(desired / (leak + radio.noise_power))
}

/// First candidate with the largest score.
fn argmax<F>(candidates: &CandidateSet, mut score: F) -> Result<(AntennaConfig, f64)>
where
    F: FnMut(AntennaConfig) -> Result<f64>,
{
    let mut best: Option<(AntennaConfig, f64)> = None;
    for &c in candidates.configs() {
        let s = score(c)?;
        if best.is_none_or(|(_, b)| s > b) {
            best = Some((c, s));
        }
    }
    Ok(best.expect("candidate sets are never empty"))
}

pub fn select_fixed(candidates: &CandidateSet) -> Result<AntennaConfig> {
    if candidates.dipoles() != DipoleCount::One {
        return Err(Error::InvalidCandidateSet {
            strategy: Strategy::Fixed.to_string(),
            reason: format!("the fixed z-dipole policy needs the single-dipole set, got {:?}", candidates.configs()),
        });
    }
    Ok(AntennaConfig::Z)
}

pub fn select_max_power(
    tx_index: usize,
    network: &NetworkRealization,
    candidates: &CandidateSet,
    radio: &RadioParams,
    dipole: &DipoleParams,
) -> Result<AntennaConfig> {
    argmax(candidates, |c| received_power(tx_index, network, c, radio, dipole)).map(|(c, _)| c)
}

pub fn select_max_slnr(
    tx_index: usize,
    network: &NetworkRealization,
    candidates: &CandidateSet,
    radio: &RadioParams,
    dipole: &DipoleParams,
) -> Result<AntennaConfig> {
    argmax(candidates, |c| slnr(tx_index, network, c, radio, dipole)).map(|(c, _)| c)
}

/// Applies `strategy` independently at every transmitter.
pub fn select_all(
    network: &NetworkRealization,
    strategy: Strategy,
    candidates: &CandidateSet,
    radio: &RadioParams,
    dipole: &DipoleParams,
) -> Result<SelectionResult> {
    let k = network.k();
    let mut configs = Vec::with_capacity(k);
    let mut scores = Vec::with_capacity(k);
    for i in 0..k {
        let (c, s) = match strategy {
            Strategy::Fixed => {
                let c = select_fixed(candidates)?;
                (c, received_power(i, network, c, radio, dipole)?)
            }
            Strategy::MaxPower => argmax(candidates, |c| received_power(i, network, c, radio, dipole))?,
            Strategy::MaxSlnr => argmax(candidates, |c| slnr(i, network, c, radio, dipole))?,
        };
        configs.push(c);
        scores.push(s);
    }
    Ok(SelectionResult {
        per_transmitter_config: configs,
        per_transmitter_score: scores,
    })
}
