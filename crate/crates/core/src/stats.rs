//! Order-stable summary statistics.

use serde::{Deserialize, Serialize};

/// Neumaier-compensated sum.
pub fn compensated_sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    let mut sum = 0.0f64;
    let mut carry = 0.0f64;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            carry += (sum - t) + v;
        } else {
            carry += (v - t) + sum;
        }
        sum = t;
    }
    if sum.is_finite() {
        sum + carry
    } else {
        sum
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeanStderr {
    pub mean: f64,
    /// Standard error of the mean; 0 for a single sample.
    pub stderr: f64,
    pub n: usize,
}

impl MeanStderr {
    pub fn of(values: &[f64]) -> Self {
        let n = values.len();
        if n == 0 {
            return Self { mean: f64::NAN, stderr: f64::NAN, n };
        }
        let mean = compensated_sum(values.iter().copied()) / n as f64;
        if n == 1 || !mean.is_finite() {
            let stderr = if n == 1 { 0.0 } else { f64::NAN };
            return Self { mean, stderr, n };
        }
        let ss = compensated_sum(values.iter().map(|v| (v - mean) * (v - mean)));
        let var = ss / (n - 1) as f64;
        Self {
            mean,
            stderr: (var / n as f64).sqrt(),
            n,
        }
    }
}
