//! Shared fixtures for the benchmark targets.

use nfsec_core::{make_config, PolarPosition, RawConfig, Spacing, SystemConfig};

/// The 513-element, 300 GHz reference array.
pub fn reference_config() -> SystemConfig {
    make_config(&RawConfig {
        n_antennas: 513,
        carrier_freq_hz: 300e9,
        spacing: Spacing::OverLambda(0.5),
        tx_power_dbm: 5.0,
        noise_power_dbm: -77.0,
        absorption_per_m: 0.00143,
    })
    .unwrap()
}

pub fn user() -> PolarPosition {
    PolarPosition::new(5.0, 0.0).unwrap()
}

pub fn eve() -> PolarPosition {
    PolarPosition::new(3.5, 0.0).unwrap()
}
