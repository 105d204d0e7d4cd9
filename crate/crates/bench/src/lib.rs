//! Fixtures shared by the criterion benchmarks.

use dipolenet_core::{NetworkRealization, ScenarioConfig};

/// Default parameters with a fixed seed.
pub fn bench_config(trials: u64) -> ScenarioConfig {
    ScenarioConfig {
        trials,
        seed: 0x5eed,
        ..ScenarioConfig::default()
    }
}

pub fn bench_network(k: usize) -> NetworkRealization {
    let cfg = ScenarioConfig { k, ..bench_config(1) };
    dipolenet_core::scenario::generate_topology(&cfg, 0).expect("default layout is valid")
}
