//! Device positions and Tx→Rx link geometry.
//!
//! Angles follow the physics spherical convention: `polar` is measured from
//! the +z axis (0 = straight up), `azimuth` in the x-y plane from +x.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Links shorter than this are treated as co-located devices.
pub const MIN_DISTANCE: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Position3D {
    pub x: f64,
    pub y: f64,
    /// Altitude above ground.
    pub z: f64,
}

impl Position3D {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    /// Finite coordinates with `z >= 0`.
    pub fn is_valid(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite() && self.z >= 0.0
    }

    pub fn distance_to(&self, other: &Position3D) -> f64 {
        let (dx, dy, dz) = (other.x - self.x, other.y - self.y, other.z - self.z);
        (dx * dx + dy * dy + dz * dz).sqrt()
    }
}

/// Distance and departure direction of a link, as seen from the transmitter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinkGeometry {
    pub distance: f64,
    /// Radians in `[-π, π)`; 0 for vertical links.
    pub azimuth: f64,
    /// Radians in `[0, π]`.
    pub polar: f64,
}

impl LinkGeometry {
    /// Unit vector of the departure direction.
    pub fn direction(&self) -> [f64; 3] {
        let (sp, cp) = self.polar.sin_cos();
        let (sa, ca) = self.azimuth.sin_cos();
        [sp * ca, sp * sa, cp]
    }

    /// Displacement `rx - tx` rebuilt from the spherical coordinates.
    pub fn displacement(&self) -> [f64; 3] {
        let u = self.direction();
        [u[0] * self.distance, u[1] * self.distance, u[2] * self.distance]
    }
}

pub fn link_geometry(tx: &Position3D, rx: &Position3D) -> Result<LinkGeometry> {
    let (dx, dy, dz) = (rx.x - tx.x, rx.y - tx.y, rx.z - tx.z);
    let horizontal = dx.hypot(dy);
    let distance = horizontal.hypot(dz);
    if distance.is_nan() || distance < MIN_DISTANCE {
        return Err(Error::CoLocatedDevices {
            distance,
            min: MIN_DISTANCE,
        });
    }
    let polar = horizontal.atan2(dz);
    let azimuth = if horizontal == 0.0 {
        0.0
    } else {
        let a = dy.atan2(dx);
        // atan2 returns (-π, π]; fold +π onto -π.
        if a >= PI {
            a - 2.0 * PI
        } else {
            a
        }
    };
    Ok(LinkGeometry {
        distance,
        azimuth,
        polar,
    })
}
