//! Test-only oracles, written from the model equations without going
//! through the crate's geometry, antenna or channel code.

#![allow(dead_code)]

use dipolenet_core::{AntennaConfig, NetworkRealization, Position3D, RadioParams};
use num_complex::Complex64;
use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI};

pub const C: f64 = 299_792_458.0;

const EX: [f64; 3] = [1.0, 0.0, 0.0];
const EY: [f64; 3] = [0.0, 1.0, 0.0];
const EZ: [f64; 3] = [0.0, 0.0, 1.0];

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross_norm(a: [f64; 3], b: [f64; 3]) -> f64 {
    let c = [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]];
    dot(c, c).sqrt()
}

/// Half-wave dipole along `axis`, seen from unit direction `dir`.
pub fn half_wave_field(axis: [f64; 3], dir: [f64; 3]) -> f64 {
    let cos_psi = dot(axis, dir);
    let sin_psi = cross_norm(axis, dir);
    if sin_psi < 1e-9 {
        0.0
    } else {
        (FRAC_PI_2 * cos_psi).cos() / sin_psi
    }
}

pub fn oracle_field(config: AntennaConfig, dir: [f64; 3]) -> Complex64 {
    use AntennaConfig::*;
    let f = |a| half_wave_field(a, dir);
    match config {
        X => Complex64::new(f(EX), 0.0),
        Y => Complex64::new(f(EY), 0.0),
        Z => Complex64::new(f(EZ), 0.0),
        XY => Complex64::new(f(EX), f(EY)) * FRAC_1_SQRT_2,
        YZ => Complex64::new(f(EY), f(EZ)) * FRAC_1_SQRT_2,
        XZ => Complex64::new(f(EX), f(EZ)) * FRAC_1_SQRT_2,
    }
}

pub fn oracle_gain_at(config: AntennaConfig, azimuth: f64, polar: f64) -> f64 {
    let dir = [polar.sin() * azimuth.cos(), polar.sin() * azimuth.sin(), polar.cos()];
    oracle_field(config, dir).norm_sqr()
}

/// Received power on `tx → rx`, half-wave dipoles.
pub fn oracle_power(tx: &Position3D, rx: &Position3D, config: AntennaConfig, radio: &RadioParams, alpha: Complex64) -> f64 {
    let v = [rx.x - tx.x, rx.y - tx.y, rx.z - tx.z];
    let d = dot(v, v).sqrt();
    let dir = [v[0] / d, v[1] / d, v[2] / d];
    let lambda = C / radio.carrier_frequency;
    let beta = (lambda / (4.0 * PI * d)).powi(2);
    radio.tx_power * beta * radio.rx_gain * oracle_field(config, dir).norm_sqr() * alpha.norm_sqr()
}

pub fn net_power(net: &NetworkRealization, i: usize, j: usize, config: AntennaConfig, radio: &RadioParams) -> f64 {
    oracle_power(&net.tx_positions[i], &net.rx_positions[j], config, radio, net.fading(i, j).alpha)
}

pub fn brute_argmax(candidates: &[AntennaConfig], score: impl Fn(AntennaConfig) -> f64) -> AntennaConfig {
    let mut best = candidates[0];
    let mut best_score = score(best);
    for &c in &candidates[1..] {
        let s = score(c);
        if s > best_score {
            best = c;
            best_score = s;
        }
    }
    best
}

pub fn brute_slnr(net: &NetworkRealization, i: usize, config: AntennaConfig, radio: &RadioParams) -> f64 {
    let leak: f64 = (0..net.k()).filter(|&j| j != i).map(|j| net_power(net, i, j, config, radio)).sum();
    net_power(net, i, i, config, radio) / (leak + radio.noise_power)
}

/// Per-receiver SINR and sum rate computed directly from the rate formula.
pub fn brute_sum_rate(net: &NetworkRealization, configs: &[AntennaConfig], radio: &RadioParams) -> (Vec<f64>, f64) {
    let k = net.k();
    let sinr: Vec<f64> = (0..k)
        .map(|i| {
            let interference: f64 = (0..k).filter(|&j| j != i).map(|j| net_power(net, j, i, configs[j], radio)).sum();
            net_power(net, i, i, configs[i], radio) / (interference + radio.noise_power)
        })
        .collect();
    let rate = sinr.iter().map(|s| (1.0 + s).log2()).sum();
    (sinr, rate)
}

/// Gauss–Legendre nodes and weights on [-1, 1].
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        nodes[i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    (nodes, weights)
}

/// `∮ f(azimuth, polar) dΩ` with Gauss–Legendre in cos(polar) and a uniform
/// azimuth rule.
pub fn sphere_integral(n_polar: usize, n_azimuth: usize, f: impl Fn(f64, f64) -> f64) -> f64 {
    let (nodes, weights) = gauss_legendre(n_polar);
    let dphi = 2.0 * PI / n_azimuth as f64;
    let mut total = 0.0;
    for (u, w) in nodes.iter().zip(&weights) {
        let polar = u.acos();
        let ring: f64 = (0..n_azimuth).map(|a| f(-PI + a as f64 * dphi, polar)).sum();
        total += w * ring * dphi;
    }
    total
}

/// One-sample Kolmogorov–Smirnov statistic.
pub fn ks_statistic(mut samples: Vec<f64>, cdf: impl Fn(f64) -> f64) -> f64 {
    samples.sort_by(f64::total_cmp);
    let n = samples.len() as f64;
    samples
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            (f - i as f64 / n).max((i + 1) as f64 / n - f)
        })
        .fold(0.0, f64::max)
}

/// Asymptotic KS critical value at the 1% level.
pub fn ks_critical_1pct(n: usize) -> f64 {
    (-(0.01f64 / 2.0).ln() / 2.0).sqrt() / (n as f64).sqrt()
}

/// Mean and standard error of the per-trial differences `a - b`.
pub fn paired_difference(a: &[f64], b: &[f64]) -> (f64, f64) {
    assert_eq!(a.len(), b.len());
    let d: Vec<f64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
    let n = d.len() as f64;
    let mean = d.iter().sum::<f64>() / n;
    let var = d.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// Two-sided 95% normal quantile.
pub const Z95: f64 = 1.959_963_984_540_054;

pub fn significantly_positive(a: &[f64], b: &[f64]) -> bool {
    let (m, se) = paired_difference(a, b);
    m - Z95 * se > 0.0
}

/// Random K-pair network in a 200 m square with every device either on the
/// ground or at `height`, and CN(0,1) fades.
pub fn random_network<R: rand::Rng>(rng: &mut R, k: usize, height: f64) -> NetworkRealization {
    use dipolenet_core::channel::draw_fading;
    let place = |rng: &mut R| {
        let z = if rng.random_bool(0.5) { height } else { 0.0 };
        Position3D::new(rng.random_range(-100.0..100.0), rng.random_range(-100.0..100.0), z)
    };
    let tx: Vec<Position3D> = (0..k).map(|_| place(rng)).collect();
    let rx: Vec<Position3D> = (0..k).map(|_| place(rng)).collect();
    let fading = (0..k * k).map(|_| draw_fading(rng)).collect();
    NetworkRealization::new(tx, rx, fading).expect("continuous draws never coincide")
}
