//! Simulation of uncoordinated point-to-point IoT links in a 3D topology.
//!
//! Transmitters carry one, two or three orthogonal dipoles and pick a radiation
//! pattern per link (fixed z-dipole, maximum received power, or maximum
//! signal-to-leakage-plus-noise ratio). The crate models the link geometry,
//! the dipole patterns, free-space channels with complex Gaussian fading,
//! the selection rules, per-receiver SINR metrics and the Monte Carlo sweeps
//! built on top of them.
//!
//! Powers are linear watts throughout; dB conversions happen only in
//! [`units`] and at the reporting layer.

pub mod antenna;
pub mod channel;
pub mod error;
pub mod geometry;
pub mod metrics;
pub mod rng;
pub mod scenario;
pub mod selection;
pub mod stats;
pub mod units;

pub use antenna::{AntennaConfig, DipoleParams};
pub use channel::{ChannelCoefficient, FadingDraw, RadioParams};
pub use error::{Error, Result};
pub use geometry::{LinkGeometry, Position3D};
pub use metrics::{MetricsRecord, ReceiverFilter, Summary};
pub use scenario::{NetworkRealization, ScenarioConfig, Scheme, SweepKind, SweepResult};
pub use selection::{CandidateSet, DipoleCount, SelectionResult, Strategy};

/// Speed of light used by the pattern and pathloss models, in m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
