//! CSV writers. Numbers use 12 significant digits (`%.12g` style) and
//! lines end with `\n`.

use std::fmt::Write as _;

use dipolenet_core::antenna::{power_gain, AntennaConfig, DipoleParams};
use dipolenet_core::{Summary, SweepResult};

use crate::error::CliError;

pub const SWEEP_HEADER: &str =
    "sweep_variable,mean_sum_rate_bps_hz,stderr,mean_desired_dbm,mean_interference_dbm,mean_sir_db,trials,seed";

pub const PATTERN_HEADER: &str = "azimuth_deg,polar_deg,power_gain_linear";

/// `%.12g` formatting.
pub fn fmt_num(v: f64) -> String {
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if v == 0.0 {
        return "0".into();
    }
    let sci = format!("{v:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..12).contains(&exp) {
        format!("{}e{}{:02}", trim_zeros(mantissa), if exp < 0 { '-' } else { '+' }, exp.abs())
    } else {
        let decimals = (11 - exp) as usize;
        trim_zeros(&format!("{v:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// One CSV body per scheme, in the order of `result.schemes`.
pub fn sweep_csvs(result: &SweepResult) -> Result<Vec<String>, CliError> {
    let summaries = result.summaries()?;
    Ok(summaries
        .iter()
        .map(|per_value| {
            let mut out = String::new();
            out.push_str(SWEEP_HEADER);
            out.push('\n');
            for (&value, s) in result.values.iter().zip(per_value) {
                push_row(&mut out, value, s, result.base.seed);
            }
            out
        })
        .collect())
}

fn push_row(out: &mut String, value: f64, s: &Summary, seed: u64) {
    let _ = writeln!(
        out,
        "{},{},{},{},{},{},{},{}",
        fmt_num(value),
        fmt_num(s.sum_rate.mean),
        fmt_num(s.sum_rate.stderr),
        fmt_num(s.desired_power_dbm.mean),
        fmt_num(s.interference_power_dbm.mean),
        fmt_num(s.sir_db.mean),
        s.trials,
        seed
    );
}

/// Power gain over a regular (azimuth, polar) grid in degrees.
///
/// Azimuth covers `[-180, 180)`, polar covers `[0, 180]` inclusive.
pub fn pattern_csv(config: AntennaConfig, az_step_deg: f64, polar_step_deg: f64, dipole: &DipoleParams) -> Result<String, CliError> {
    for (name, step) in [("azimuth_step_deg", az_step_deg), ("polar_step_deg", polar_step_deg)] {
        if !(step > 0.0 && step <= 180.0) {
            return Err(CliError::Config(format!("{name} must be in (0, 180], got {step}")));
        }
    }
    dipole.validate()?;
    let n_az = (360.0 / az_step_deg).ceil() as usize;
    let n_pol = (180.0 / polar_step_deg).floor() as usize + 1;
    let mut out = String::with_capacity(n_az * n_pol * 32);
    out.push_str(PATTERN_HEADER);
    out.push('\n');
    for p in 0..n_pol {
        let polar = (p as f64 * polar_step_deg).min(180.0);
        for a in 0..n_az {
            let az = -180.0 + a as f64 * az_step_deg;
            if az >= 180.0 {
                break;
            }
            let g = power_gain(config, az.to_radians(), polar.to_radians(), dipole);
            let _ = writeln!(out, "{},{},{}", fmt_num(az), fmt_num(polar), fmt_num(g));
        }
    }
    Ok(out)
}
