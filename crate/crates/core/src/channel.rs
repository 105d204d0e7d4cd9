//! Free-space pathloss, thermal noise, fading draws and complex channel
//! coefficients between a transmitter and a receiver.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_1_SQRT_2, PI};

use crate::antenna::{self, AntennaConfig, DipoleParams};
use crate::error::{Error, Result};
use crate::geometry::{self, LinkGeometry, Position3D, MIN_DISTANCE};
use crate::units::dbm_to_watts;
use crate::SPEED_OF_LIGHT;

/// Thermal noise density in dBm/Hz.
pub const THERMAL_NOISE_DBM_PER_HZ: f64 = -174.0;

/// Complex baseband channel; `|value|²` is the received power in watts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChannelCoefficient {
    pub value: Complex64,
}

impl ChannelCoefficient {
    pub fn power(&self) -> f64 {
        self.value.norm_sqr()
    }
}

/// Small-scale fading gain, `CN(0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FadingDraw {
    pub alpha: Complex64,
}

impl FadingDraw {
    /// Fading disabled: a pure line-of-sight link.
    pub const UNIT: FadingDraw = FadingDraw {
        alpha: Complex64::new(1.0, 0.0),
    };
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadioParams {
    /// Watts.
    pub tx_power: f64,
    /// Hz.
    pub carrier_frequency: f64,
    /// Hz.
    pub bandwidth: f64,
    /// Watts.
    pub noise_power: f64,
    /// Linear.
    pub rx_gain: f64,
}

impl RadioParams {
    /// Transmit power in dBm, thermal noise over `bandwidth`.
    pub fn new(tx_power_dbm: f64, carrier_frequency: f64, bandwidth: f64, rx_gain: f64) -> Self {
        Self {
            tx_power: dbm_to_watts(tx_power_dbm),
            carrier_frequency,
            bandwidth,
            noise_power: noise_power(bandwidth),
            rx_gain,
        }
    }

    pub fn wavelength(&self) -> f64 {
        SPEED_OF_LIGHT / self.carrier_frequency
    }

    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("tx_power", self.tx_power),
            ("carrier_frequency", self.carrier_frequency),
            ("bandwidth", self.bandwidth),
            ("noise_power", self.noise_power),
            ("rx_gain", self.rx_gain),
        ];
        for (name, v) in fields {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::config(name, format!("must be positive and finite, got {v}")));
            }
        }
        Ok(())
    }
}

impl Default for RadioParams {
    /// 23 dBm at 800 MHz over 200 kHz with an isotropic receiver.
    fn default() -> Self {
        Self::new(23.0, 800e6, 200e3, 1.0)
    }
}

/// Free-space pathloss `(λ / 4πd)²`.
pub fn pathloss(distance: f64, carrier_frequency: f64) -> Result<f64> {
    if distance.is_nan() || distance < MIN_DISTANCE {
        return Err(Error::CoLocatedDevices {
            distance,
            min: MIN_DISTANCE,
        });
    }
    let lambda = SPEED_OF_LIGHT / carrier_frequency;
    let r = lambda / (4.0 * PI * distance);
    Ok(r * r)
}

/// Thermal noise power in watts over `bandwidth` Hz.
pub fn noise_power(bandwidth: f64) -> f64 {
    dbm_to_watts(THERMAL_NOISE_DBM_PER_HZ + 10.0 * bandwidth.log10())
}

pub fn draw_fading<R: Rng + ?Sized>(rng: &mut R) -> FadingDraw {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    FadingDraw {
        alpha: Complex64::new(re * FRAC_1_SQRT_2, im * FRAC_1_SQRT_2),
    }
}

/// `√(P · β · G_rx) · g(config, direction) · α` for the link `tx → rx`.
pub fn channel_coefficient(
    tx: &Position3D,
    rx: &Position3D,
    config: AntennaConfig,
    radio: &RadioParams,
    dipole: &DipoleParams,
    fading: FadingDraw,
) -> Result<ChannelCoefficient> {
    let link = geometry::link_geometry(tx, rx)?;
    channel_on_link(&link, config, radio, dipole, fading)
}

/// [`channel_coefficient`] for an already resolved link geometry.
pub fn channel_on_link(
    link: &LinkGeometry,
    config: AntennaConfig,
    radio: &RadioParams,
    dipole: &DipoleParams,
    fading: FadingDraw,
) -> Result<ChannelCoefficient> {
    let beta = pathloss(link.distance, radio.carrier_frequency)?;
    let field = antenna::field_config(config, link.azimuth, link.polar, dipole);
    let scale = (radio.tx_power * beta * radio.rx_gain).sqrt();
    Ok(ChannelCoefficient {
        value: field * fading.alpha * scale,
    })
}
