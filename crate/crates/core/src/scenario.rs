//! Random 3D topologies, Monte Carlo trials and the experiment sweeps.
//!
//! A trial's network is drawn from substreams labeled by purpose (positions,
//! aerial assignment, fading), keyed by the master seed and the trial index.
//! Schemes, heights and aerial percentages never touch those streams, so
//! every scheme and every sweep point sees the same horizontal layout and
//! the same fades for a given trial.

use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

use crate::antenna::{AntennaConfig, DipoleParams};
use crate::channel::{self, ChannelCoefficient, FadingDraw, RadioParams};
use crate::error::{Error, Result};
use crate::geometry::{self, LinkGeometry, Position3D, MIN_DISTANCE};
use crate::metrics::{self, MetricsRecord, ReceiverFilter, Summary};
use crate::rng::{substream, StreamLabel};
use crate::selection::{self, CandidateSet, DipoleCount, SelectionResult, Strategy};

pub const AIR_PERCENTAGES: [f64; 5] = [0.0, 25.0, 50.0, 75.0, 100.0];
pub const HEIGHTS: [f64; 6] = [50.0, 100.0, 150.0, 200.0, 250.0, 300.0];
pub const AIR_TX_PERCENTAGES: [f64; 2] = [100.0, 50.0];

/// Receiver redraws allowed before giving up on a degenerate layout.
const MAX_RESAMPLES: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioConfig {
    /// Number of Tx/Rx pairs.
    pub k: usize,
    /// Devices are uniform in `[-w, w]²` horizontally.
    pub area_half_width: f64,
    /// Altitude of aerial devices, meters.
    pub air_height: f64,
    pub air_rx_percentage: f64,
    pub air_tx_percentage: f64,
    pub dipoles: DipoleCount,
    pub strategy: Strategy,
    pub trials: u64,
    pub seed: u64,
    pub radio: RadioParams,
    pub dipole_params: DipoleParams,
    /// `false` replaces every fade by 1 (pure line of sight).
    pub fading_enabled: bool,
    /// Reuse trial 0's device layout in every trial; fading is still redrawn.
    pub fixed_topology: bool,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        let radio = RadioParams::default();
        Self {
            k: 4,
            area_half_width: 100.0,
            air_height: 150.0,
            air_rx_percentage: 50.0,
            air_tx_percentage: 0.0,
            dipoles: DipoleCount::Three,
            strategy: Strategy::MaxPower,
            trials: 10_000,
            seed: 1,
            dipole_params: DipoleParams::half_wave(radio.carrier_frequency),
            radio,
            fading_enabled: true,
            fixed_topology: false,
        }
    }
}

impl ScenarioConfig {
    pub fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(Error::config("k", "need at least one Tx/Rx pair"));
        }
        if !(self.area_half_width > 0.0 && self.area_half_width.is_finite()) {
            return Err(Error::config("area_half_width", format!("must be positive and finite, got {}", self.area_half_width)));
        }
        if !(self.air_height >= 0.0 && self.air_height.is_finite()) {
            return Err(Error::config("air_height", format!("must be finite and >= 0, got {}", self.air_height)));
        }
        for (field, pct) in [
            ("air_rx_percentage", self.air_rx_percentage),
            ("air_tx_percentage", self.air_tx_percentage),
        ] {
            if !(0.0..=100.0).contains(&pct) {
                return Err(Error::config(field, format!("must be within [0, 100], got {pct}")));
            }
        }
        if self.trials == 0 {
            return Err(Error::config("trials", "must be at least 1"));
        }
        self.radio.validate()?;
        self.dipole_params.validate()?;
        if self.radio.carrier_frequency != self.dipole_params.carrier_frequency {
            return Err(Error::config(
                "carrier_frequency",
                "radio and dipole carrier frequencies differ",
            ));
        }
        self.scheme().validate()
    }

    pub fn scheme(&self) -> Scheme {
        Scheme {
            dipoles: self.dipoles,
            strategy: self.strategy,
        }
    }

    pub fn aerial_rx_count(&self) -> usize {
        aerial_count(self.k, self.air_rx_percentage)
    }

    pub fn aerial_tx_count(&self) -> usize {
        aerial_count(self.k, self.air_tx_percentage)
    }
}

fn aerial_count(k: usize, pct: f64) -> usize {
    ((k as f64 * pct / 100.0).round() as usize).min(k)
}

/// A dipole count paired with a selection strategy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Scheme {
    pub dipoles: DipoleCount,
    pub strategy: Strategy,
}

impl Scheme {
    pub const fn new(dipoles: DipoleCount, strategy: Strategy) -> Self {
        Self { dipoles, strategy }
    }

    /// Fixed single dipole, two dipoles by power, three dipoles by power and by SLNR.
    pub const REFERENCE_SET: [Scheme; 4] = [
        Scheme::new(DipoleCount::One, Strategy::Fixed),
        Scheme::new(DipoleCount::Two, Strategy::MaxPower),
        Scheme::new(DipoleCount::Three, Strategy::MaxPower),
        Scheme::new(DipoleCount::Three, Strategy::MaxSlnr),
    ];

    pub fn candidates(&self) -> CandidateSet {
        CandidateSet::for_dipoles(self.dipoles)
    }

    pub fn validate(&self) -> Result<()> {
        if self.strategy == Strategy::Fixed && self.dipoles != DipoleCount::One {
            return Err(Error::config(
                "strategy",
                format!("`fixed` requires dipoles = 1, got dipoles = {}", self.dipoles),
            ));
        }
        Ok(())
    }

    pub fn label(&self) -> String {
        format!("{}-dipole-{}", self.dipoles, self.strategy)
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// One realized network: positions, aerial flags and the `K × K` fade
/// matrix indexed `[transmitter][receiver]`.
///
/// Link geometries for every Tx/Rx pair are resolved once at construction,
/// which also guarantees that no pair is co-located.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NetworkRealization {
    pub tx_positions: Vec<Position3D>,
    pub rx_positions: Vec<Position3D>,
    pub tx_is_aerial: Vec<bool>,
    pub rx_is_aerial: Vec<bool>,
    fading: Vec<Complex64>,
    #[serde(skip)]
    links: Vec<LinkGeometry>,
}

fn resolve_links(tx: &[Position3D], rx: &[Position3D]) -> Result<Vec<LinkGeometry>> {
    tx.iter()
        .flat_map(|t| rx.iter().map(move |r| geometry::link_geometry(t, r)))
        .collect()
}

impl NetworkRealization {
    /// Builds a network from explicit parts; devices above ground are tagged
    /// aerial. `fading` is row-major with one row per transmitter.
    pub fn new(tx: Vec<Position3D>, rx: Vec<Position3D>, fading: Vec<FadingDraw>) -> Result<Self> {
        let k = tx.len();
        if rx.len() != k {
            return Err(Error::LengthMismatch { expected: k, actual: rx.len() });
        }
        if fading.len() != k * k {
            return Err(Error::LengthMismatch {
                expected: k * k,
                actual: fading.len(),
            });
        }
        if let Some(p) = tx.iter().chain(&rx).find(|p| !p.is_valid()) {
            return Err(Error::config("position", format!("invalid device position {p:?}")));
        }
        Ok(Self {
            links: resolve_links(&tx, &rx)?,
            tx_is_aerial: tx.iter().map(|p| p.z > 0.0).collect(),
            rx_is_aerial: rx.iter().map(|p| p.z > 0.0).collect(),
            tx_positions: tx,
            rx_positions: rx,
            fading: fading.into_iter().map(|f| f.alpha).collect(),
        })
    }

    pub fn k(&self) -> usize {
        self.tx_positions.len()
    }

    /// Fade on the link from transmitter `tx` to receiver `rx`.
    pub fn fading(&self, tx: usize, rx: usize) -> FadingDraw {
        FadingDraw {
            alpha: self.fading[tx * self.k() + rx],
        }
    }

    pub fn link(&self, tx: usize, rx: usize) -> &LinkGeometry {
        &self.links[tx * self.k() + rx]
    }

    pub fn channel(
        &self,
        tx: usize,
        rx: usize,
        config: AntennaConfig,
        radio: &RadioParams,
        dipole: &DipoleParams,
    ) -> Result<ChannelCoefficient> {
        channel::channel_on_link(self.link(tx, rx), config, radio, dipole, self.fading(tx, rx))
    }

    /// Swaps the labels of pairs `a` and `b`.
    pub fn swap_pairs(&mut self, a: usize, b: usize) {
        let k = self.k();
        self.tx_positions.swap(a, b);
        self.rx_positions.swap(a, b);
        self.tx_is_aerial.swap(a, b);
        self.rx_is_aerial.swap(a, b);
        for i in 0..k {
            self.fading.swap(i * k + a, i * k + b);
        }
        for j in 0..k {
            self.fading.swap(a * k + j, b * k + j);
        }
        self.links = resolve_links(&self.tx_positions, &self.rx_positions).expect("swapping keeps links valid");
    }
}

fn aerial_flags<R: Rng>(k: usize, count: usize, rng: &mut R) -> Vec<bool> {
    let mut order: Vec<usize> = (0..k).collect();
    order.shuffle(rng);
    let mut flags = vec![false; k];
    for &i in &order[..count] {
        flags[i] = true;
    }
    flags
}

pub fn generate_topology(config: &ScenarioConfig, trial: u64) -> Result<NetworkRealization> {
    let k = config.k;
    let layout_trial = if config.fixed_topology { 0 } else { trial };
    let w = config.area_half_width;

    let mut pos_rng = substream(config.seed, StreamLabel::Positions, layout_trial);
    let mut draw_xy = || (pos_rng.random_range(-w..=w), pos_rng.random_range(-w..=w));
    let tx_xy: Vec<(f64, f64)> = (0..k).map(|_| draw_xy()).collect();
    let mut rx_xy: Vec<(f64, f64)> = (0..k).map(|_| draw_xy()).collect();

    let tx_is_aerial = aerial_flags(
        k,
        config.aerial_tx_count(),
        &mut substream(config.seed, StreamLabel::AerialTx, layout_trial),
    );
    let rx_is_aerial = aerial_flags(
        k,
        config.aerial_rx_count(),
        &mut substream(config.seed, StreamLabel::AerialRx, layout_trial),
    );
    let z = |aerial: bool| if aerial { config.air_height } else { 0.0 };
    let tx: Vec<Position3D> = tx_xy
        .iter()
        .zip(&tx_is_aerial)
        .map(|(&(x, y), &a)| Position3D::new(x, y, z(a)))
        .collect();

    let mut rx = Vec::with_capacity(k);
    for (j, &aerial) in rx_is_aerial.iter().enumerate() {
        let mut attempts = 0;
        loop {
            let p = Position3D::new(rx_xy[j].0, rx_xy[j].1, z(aerial));
            let closest = tx.iter().map(|t| t.distance_to(&p)).fold(f64::INFINITY, f64::min);
            if closest >= MIN_DISTANCE {
                rx.push(p);
                break;
            }
            attempts += 1;
            if attempts > MAX_RESAMPLES {
                return Err(Error::CoLocatedDevices {
                    distance: closest,
                    min: MIN_DISTANCE,
                });
            }
            rx_xy[j] = draw_xy();
        }
    }

    let fading = if config.fading_enabled {
        let mut rng = substream(config.seed, StreamLabel::Fading, trial);
        (0..k * k).map(|_| channel::draw_fading(&mut rng).alpha).collect()
    } else {
        vec![FadingDraw::UNIT.alpha; k * k]
    };

    Ok(NetworkRealization {
        links: resolve_links(&tx, &rx)?,
        tx_positions: tx,
        rx_positions: rx,
        tx_is_aerial,
        rx_is_aerial,
        fading,
    })
}

pub fn select_scheme(
    network: &NetworkRealization,
    scheme: Scheme,
    radio: &RadioParams,
    dipole: &DipoleParams,
) -> Result<SelectionResult> {
    scheme.validate()?;
    selection::select_all(network, scheme.strategy, &scheme.candidates(), radio, dipole)
}

pub fn evaluate_scheme(
    network: &NetworkRealization,
    scheme: Scheme,
    radio: &RadioParams,
    dipole: &DipoleParams,
) -> Result<MetricsRecord> {
    let sel = select_scheme(network, scheme, radio, dipole)?;
    metrics::compute_metrics(network, &sel, radio, dipole)
}

/// Topology, selection and metrics for one trial under the config's own scheme.
pub fn run_trial(config: &ScenarioConfig, trial: u64) -> Result<MetricsRecord> {
    let net = generate_topology(config, trial)?;
    evaluate_scheme(&net, config.scheme(), &config.radio, &config.dipole_params)
}

/// Every scheme evaluated on the same realized network.
pub fn run_schemes(config: &ScenarioConfig, schemes: &[Scheme], trial: u64) -> Result<Vec<MetricsRecord>> {
    let net = generate_topology(config, trial)?;
    schemes
        .iter()
        .map(|&s| evaluate_scheme(&net, s, &config.radio, &config.dipole_params))
        .collect()
}

/// Runs `config.trials` trials, indexed `[trial][scheme]`.
///
/// `workers` sizes a dedicated thread pool; `None` uses the global pool.
/// Output is independent of the worker count.
pub fn run_trials(
    config: &ScenarioConfig,
    schemes: &[Scheme],
    workers: Option<usize>,
) -> Result<Vec<Vec<MetricsRecord>>> {
    config.validate()?;
    for s in schemes {
        s.validate()?;
    }
    let job = || {
        (0..config.trials)
            .into_par_iter()
            .map(|t| run_schemes(config, schemes, t))
            .collect::<Result<Vec<_>>>()
    };
    match workers {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| Error::config("workers", e.to_string()))?
            .install(job),
        None => job(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SweepKind {
    AirPercentage,
    Height,
    AirTx,
}

impl SweepKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SweepKind::AirPercentage => "air-percentage",
            SweepKind::Height => "height",
            SweepKind::AirTx => "air-tx",
        }
    }

    /// Name of the swept config field.
    pub fn variable(self) -> &'static str {
        match self {
            SweepKind::Height => "air_height",
            _ => "air_rx_percentage",
        }
    }

    /// Receivers entering the reported power averages: aerial receivers for
    /// the height sweep, all receivers otherwise.
    pub fn receiver_filter(self) -> ReceiverFilter {
        match self {
            SweepKind::Height => ReceiverFilter::Aerial,
            _ => ReceiverFilter::All,
        }
    }

    pub fn default_values(self) -> Vec<f64> {
        match self {
            SweepKind::Height => HEIGHTS.to_vec(),
            _ => AIR_PERCENTAGES.to_vec(),
        }
    }
}

impl fmt::Display for SweepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SweepKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "air-percentage" => Ok(SweepKind::AirPercentage),
            "height" => Ok(SweepKind::Height),
            "air-tx" => Ok(SweepKind::AirTx),
            _ => Err(Error::config("sweep", format!("unknown sweep `{s}`"))),
        }
    }
}

/// Raw per-trial output of one sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub kind: SweepKind,
    /// Config the sweep started from; each point overrides one field.
    pub base: ScenarioConfig,
    pub values: Vec<f64>,
    pub schemes: Vec<Scheme>,
    /// Indexed `[value][scheme][trial]`.
    pub records: Vec<Vec<Vec<MetricsRecord>>>,
}

impl SweepResult {
    pub fn records(&self, value: usize, scheme: usize) -> &[MetricsRecord] {
        &self.records[value][scheme]
    }

    pub fn sum_rates(&self, value: usize, scheme: usize) -> Vec<f64> {
        self.records(value, scheme).iter().map(|r| r.sum_rate).collect()
    }

    pub fn scheme_index(&self, scheme: Scheme) -> Option<usize> {
        self.schemes.iter().position(|&s| s == scheme)
    }

    pub fn value_index(&self, value: f64) -> Option<usize> {
        self.values.iter().position(|&v| v == value)
    }

    /// Summaries indexed `[scheme][value]`.
    pub fn summaries(&self) -> Result<Vec<Vec<Summary>>> {
        let filter = self.kind.receiver_filter();
        (0..self.schemes.len())
            .map(|s| {
                (0..self.values.len())
                    .map(|v| metrics::aggregate_filtered(self.records(v, s), filter))
                    .collect()
            })
            .collect()
    }
}

fn run_sweep(
    kind: SweepKind,
    base: &ScenarioConfig,
    schemes: &[Scheme],
    values: &[f64],
    apply: fn(&mut ScenarioConfig, f64),
    workers: Option<usize>,
) -> Result<SweepResult> {
    if values.is_empty() {
        return Err(Error::config(kind.variable(), "sweep needs at least one value"));
    }
    if schemes.is_empty() {
        return Err(Error::config("schemes", "sweep needs at least one scheme"));
    }
    let mut records = Vec::with_capacity(values.len());
    for &v in values {
        let mut cfg = base.clone();
        apply(&mut cfg, v);
        let by_trial = run_trials(&cfg, schemes, workers)?;
        let mut by_scheme: Vec<Vec<MetricsRecord>> = vec![Vec::with_capacity(by_trial.len()); schemes.len()];
        for trial in by_trial {
            for (s, rec) in trial.into_iter().enumerate() {
                by_scheme[s].push(rec);
            }
        }
        records.push(by_scheme);
    }
    Ok(SweepResult {
        kind,
        base: base.clone(),
        values: values.to_vec(),
        schemes: schemes.to_vec(),
        records,
    })
}

pub fn sweep_air_percentage(
    base: &ScenarioConfig,
    schemes: &[Scheme],
    percentages: &[f64],
    workers: Option<usize>,
) -> Result<SweepResult> {
    run_sweep(SweepKind::AirPercentage, base, schemes, percentages, |c, v| c.air_rx_percentage = v, workers)
}

pub fn sweep_height(
    base: &ScenarioConfig,
    schemes: &[Scheme],
    heights: &[f64],
    workers: Option<usize>,
) -> Result<SweepResult> {
    run_sweep(SweepKind::Height, base, schemes, heights, |c, v| c.air_height = v, workers)
}

/// Aerial-percentage sweeps repeated for each aerial-transmitter share.
pub fn sweep_air_tx(
    base: &ScenarioConfig,
    schemes: &[Scheme],
    percentages: &[f64],
    air_tx_percentages: &[f64],
    workers: Option<usize>,
) -> Result<Vec<SweepResult>> {
    air_tx_percentages
        .iter()
        .map(|&tx_pct| {
            let cfg = ScenarioConfig {
                air_tx_percentage: tx_pct,
                ..base.clone()
            };
            let mut res = sweep_air_percentage(&cfg, schemes, percentages, workers)?;
            res.kind = SweepKind::AirTx;
            Ok(res)
        })
        .collect()
}
