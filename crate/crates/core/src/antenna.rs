//! Far-field patterns of world-axis-aligned dipoles and their pairwise
//! quadrature combinations.
//!
//! Every pattern function returns a field amplitude; the power gain is its
//! squared magnitude. A half-wave dipole has unit amplitude at broadside.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::SPEED_OF_LIGHT;

/// Below this |sin Ψ| the kernel is replaced by its limit.
const POLE_EPSILON: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    fn index(self) -> usize {
        match self {
            Axis::X => 0,
            Axis::Y => 1,
            Axis::Z => 2,
        }
    }
}

/// Which dipoles a transmitter drives.
///
/// Two-letter variants feed both named dipoles with half the power each, the
/// second one in quadrature (`+j`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AntennaConfig {
    X,
    Y,
    Z,
    XY,
    YZ,
    XZ,
}

impl AntennaConfig {
    pub const ALL: [AntennaConfig; 6] = [
        AntennaConfig::X,
        AntennaConfig::Y,
        AntennaConfig::Z,
        AntennaConfig::XY,
        AntennaConfig::YZ,
        AntennaConfig::XZ,
    ];

    /// The driven axes; the second entry is the quadrature arm of a cross-dipole.
    pub fn axes(self) -> (Axis, Option<Axis>) {
        match self {
            AntennaConfig::X => (Axis::X, None),
            AntennaConfig::Y => (Axis::Y, None),
            AntennaConfig::Z => (Axis::Z, None),
            AntennaConfig::XY => (Axis::X, Some(Axis::Y)),
            AntennaConfig::YZ => (Axis::Y, Some(Axis::Z)),
            AntennaConfig::XZ => (Axis::X, Some(Axis::Z)),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            AntennaConfig::X => "x",
            AntennaConfig::Y => "y",
            AntennaConfig::Z => "z",
            AntennaConfig::XY => "xy",
            AntennaConfig::YZ => "yz",
            AntennaConfig::XZ => "xz",
        }
    }
}

impl fmt::Display for AntennaConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for AntennaConfig {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        AntennaConfig::ALL
            .into_iter()
            .find(|c| c.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::config("antenna", format!("unknown antenna configuration `{s}` (expected one of x, y, z, xy, yz, xz)")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DipoleParams {
    /// Hz.
    pub carrier_frequency: f64,
    /// Meters.
    pub dipole_length: f64,
}

impl DipoleParams {
    pub fn half_wave(carrier_frequency: f64) -> Self {
        Self {
            carrier_frequency,
            dipole_length: SPEED_OF_LIGHT / (2.0 * carrier_frequency),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.carrier_frequency > 0.0 && self.carrier_frequency.is_finite()) {
            return Err(Error::config("carrier_frequency", "must be positive and finite"));
        }
        if !(self.dipole_length > 0.0 && self.dipole_length.is_finite()) {
            return Err(Error::config("dipole_length", "must be positive and finite"));
        }
        Ok(())
    }

    /// Electrical half-length `π · L · f0 / c`, equal to π/2 for a half-wave dipole.
    pub fn electrical_length(&self) -> f64 {
        PI * self.dipole_length * self.carrier_frequency / SPEED_OF_LIGHT
    }

    fn is_half_wave(&self) -> bool {
        (self.electrical_length() - FRAC_PI_2).abs() < 1e-12
    }
}

impl Default for DipoleParams {
    fn default() -> Self {
        Self::half_wave(800e6)
    }
}

/// Dipole kernel as a function of the angle Ψ between the departure
/// direction and the dipole axis.
fn kernel(cos_psi: f64, sin_psi: f64, params: &DipoleParams) -> f64 {
    let k = params.electrical_length();
    let (cos_psi, sin_psi) = if sin_psi.abs() < POLE_EPSILON {
        if params.is_half_wave() {
            return 0.0;
        }
        (cos_psi.signum() * (1.0 - POLE_EPSILON * POLE_EPSILON).sqrt(), POLE_EPSILON)
    } else {
        (cos_psi, sin_psi)
    };
    // cos(π/2) is exactly zero for a half-wave dipole but not in f64
    let cos_k = if params.is_half_wave() { 0.0 } else { k.cos() };
    ((k * cos_psi).cos() - cos_k) / sin_psi
}

/// Kernel for the x or y dipole given a unit departure direction.
fn horizontal_axis_field(axis: Axis, dir: &[f64; 3], params: &DipoleParams) -> f64 {
    let i = axis.index();
    let cos_psi = dir[i];
    let sin_psi = dir[(i + 1) % 3].hypot(dir[(i + 2) % 3]);
    kernel(cos_psi, sin_psi, params)
}

fn direction(azimuth: f64, polar: f64) -> [f64; 3] {
    let (sp, cp) = polar.sin_cos();
    let (sa, ca) = azimuth.sin_cos();
    [sp * ca, sp * sa, cp]
}

/// Field of the z-axis dipole; depends on the polar angle only.
pub fn field_z(polar: f64, params: &DipoleParams) -> f64 {
    kernel(polar.cos(), polar.sin().abs(), params)
}

pub fn field_axis(axis: Axis, azimuth: f64, polar: f64, params: &DipoleParams) -> f64 {
    match axis {
        Axis::Z => field_z(polar, params),
        _ => horizontal_axis_field(axis, &direction(azimuth, polar), params),
    }
}

pub fn field_config(config: AntennaConfig, azimuth: f64, polar: f64, params: &DipoleParams) -> Complex64 {
    let dir = direction(azimuth, polar);
    let arm = |axis: Axis| match axis {
        Axis::Z => field_z(polar, params),
        _ => horizontal_axis_field(axis, &dir, params),
    };
    match config.axes() {
        (a, None) => Complex64::new(arm(a), 0.0),
        (a, Some(b)) => Complex64::new(FRAC_1_SQRT_2 * arm(a), FRAC_1_SQRT_2 * arm(b)),
    }
}

pub fn power_gain(config: AntennaConfig, azimuth: f64, polar: f64, params: &DipoleParams) -> f64 {
    field_config(config, azimuth, polar, params).norm_sqr()
}
