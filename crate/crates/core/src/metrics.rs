//! Per-receiver SINR/SIR, powers and the network sum rate.

use serde::{Deserialize, Serialize};

use crate::antenna::DipoleParams;
use crate::channel::RadioParams;
use crate::error::{Error, Result};
use crate::scenario::NetworkRealization;
use crate::selection::SelectionResult;
use crate::stats::{compensated_sum, MeanStderr};
use crate::units::{linear_to_db, watts_to_dbm};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsRecord {
    pub per_receiver_sinr: Vec<f64>,
    pub per_receiver_sir: Vec<f64>,
    /// Watts.
    pub per_receiver_desired_power: Vec<f64>,
    /// Watts.
    pub per_receiver_interference_power: Vec<f64>,
    pub rx_is_aerial: Vec<bool>,
    /// bits/s/Hz.
    pub sum_rate: f64,
}

/// Receivers that enter a power/ratio average.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReceiverFilter {
    All,
    Aerial,
    Ground,
}

impl ReceiverFilter {
    fn accepts(self, aerial: bool) -> bool {
        match self {
            ReceiverFilter::All => true,
            ReceiverFilter::Aerial => aerial,
            ReceiverFilter::Ground => !aerial,
        }
    }
}

/// Receiver-averaged values of one trial, linear units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReceiverAverages {
    pub desired_power: f64,
    pub interference_power: f64,
    pub sinr: f64,
    pub sir: f64,
}

impl MetricsRecord {
    pub fn k(&self) -> usize {
        self.per_receiver_sinr.len()
    }

    /// Means over the receivers selected by `filter`, or `None` when no
    /// receiver qualifies.
    pub fn receiver_averages(&self, filter: ReceiverFilter) -> Option<ReceiverAverages> {
        let idx: Vec<usize> = (0..self.k()).filter(|&i| filter.accepts(self.rx_is_aerial[i])).collect();
        if idx.is_empty() {
            return None;
        }
        let n = idx.len() as f64;
        let avg = |v: &[f64]| compensated_sum(idx.iter().map(|&i| v[i])) / n;
        Some(ReceiverAverages {
            desired_power: avg(&self.per_receiver_desired_power),
            interference_power: avg(&self.per_receiver_interference_power),
            sinr: avg(&self.per_receiver_sinr),
            sir: avg(&self.per_receiver_sir),
        })
    }
}

/// Desired and interference powers at every receiver under `selection`.
///
/// Interference at receiver `i` sums the column `h_{j,i}` over all other
/// transmitters `j`, each using its own selected configuration.
pub fn compute_metrics(
    network: &NetworkRealization,
    selection: &SelectionResult,
    radio: &RadioParams,
    dipole: &DipoleParams,
) -> Result<MetricsRecord> {
    let k = network.k();
    let configs = &selection.per_transmitter_config;
    if configs.len() != k {
        return Err(Error::LengthMismatch {
            expected: k,
            actual: configs.len(),
        });
    }
    let mut desired = Vec::with_capacity(k);
    let mut interference = Vec::with_capacity(k);
    for i in 0..k {
        desired.push(network.channel(i, i, configs[i], radio, dipole)?.power());
        let mut terms = Vec::with_capacity(k.saturating_sub(1));
        for j in (0..k).filter(|&j| j != i) {
            terms.push(network.channel(j, i, configs[j], radio, dipole)?.power());
        }
        interference.push(compensated_sum(terms));
    }
    let sinr: Vec<f64> = desired
        .iter()
        .zip(&interference)
        .map(|(d, i)| d / (i + radio.noise_power))
        .collect();
    let sir: Vec<f64> = desired.iter().zip(&interference).map(|(d, i)| d / i).collect();
    let sum_rate = compensated_sum(sinr.iter().map(|s| (1.0 + s).log2()));
    Ok(MetricsRecord {
        per_receiver_sinr: sinr,
        per_receiver_sir: sir,
        per_receiver_desired_power: desired,
        per_receiver_interference_power: interference,
        rx_is_aerial: network.rx_is_aerial.clone(),
        sum_rate,
    })
}

/// Monte Carlo averages over trials.
///
/// Per-receiver quantities are first averaged over the receivers admitted by
/// the filter within each trial. The `*_db`/`*_dbm` fields are means of the
/// per-trial values after dB conversion, not conversions of the linear means.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub trials: usize,
    pub filter: ReceiverFilter,
    pub sum_rate: MeanStderr,
    pub desired_power_w: MeanStderr,
    pub interference_power_w: MeanStderr,
    pub sinr: MeanStderr,
    pub sir: MeanStderr,
    pub desired_power_dbm: MeanStderr,
    pub interference_power_dbm: MeanStderr,
    pub sinr_db: MeanStderr,
    pub sir_db: MeanStderr,
}

pub fn aggregate(records: &[MetricsRecord]) -> Result<Summary> {
    aggregate_filtered(records, ReceiverFilter::All)
}

pub fn aggregate_filtered(records: &[MetricsRecord], filter: ReceiverFilter) -> Result<Summary> {
    if records.is_empty() {
        return Err(Error::EmptyInput);
    }
    let rates: Vec<f64> = records.iter().map(|r| r.sum_rate).collect();
    let avgs: Vec<ReceiverAverages> = records.iter().filter_map(|r| r.receiver_averages(filter)).collect();
    let field = |f: fn(&ReceiverAverages) -> f64| MeanStderr::of(&avgs.iter().map(f).collect::<Vec<_>>());
    Ok(Summary {
        trials: records.len(),
        filter,
        sum_rate: MeanStderr::of(&rates),
        desired_power_w: field(|a| a.desired_power),
        interference_power_w: field(|a| a.interference_power),
        sinr: field(|a| a.sinr),
        sir: field(|a| a.sir),
        desired_power_dbm: field(|a| watts_to_dbm(a.desired_power)),
        interference_power_dbm: field(|a| watts_to_dbm(a.interference_power)),
        sinr_db: field(|a| linear_to_db(a.sinr)),
        sir_db: field(|a| linear_to_db(a.sir)),
    })
}
