//! Near-field terahertz wiretap simulator: channel model, steering-vector
//! correlations, secrecy-rate engine, beam focusing design, and benchmark
//! schemes.
//!
//! A uniform linear array at the origin serves a legitimate user while an
//! eavesdropper listens. The transmitter splits its power between a signal
//! beam focused at a point `Q_S` and an artificial-noise beam focused at a
//! point `Q_A`; this crate designs those focus points and the power split to
//! maximize the secrecy rate, and evaluates them against baseline schemes
//! and a brute-force grid oracle.
//!
//! All internal math is in SI units (meters, watts, hertz). Every function
//! here is a pure function of its inputs; values are immutable once built
//! and safe to share across threads.

pub mod baselines;
pub mod design;
mod error;
pub mod fresnel;
pub mod model;
pub mod secrecy;

pub use baselines::{
    build_design, design_an_at_eve, design_nullspace_an, design_signal_only, evaluate_scheme,
    oracle_best_at_alpha, oracle_grid_search, OracleGrids, SchemeId,
};
pub use design::{
    an_objective, design_proposed, search_radius, signal_objective, BeamDesign, RadiusSearch,
    SearchSettings,
};
pub use error::{Error, Result};
pub use fresnel::{
    beta_aligned, beta_cross, beta_params, correlation_exact, correlation_set, fresnel_c,
    fresnel_s, rho_aligned_approx, rho_cross_approx, BetaParams, CorrelationMode, CorrelationSet,
};
pub use model::{
    element_distance, element_offsets, full_channel, los_channel, make_config, steering_vector,
    ChannelState, NLoSConfig, PolarPosition, RawConfig, Spacing, SteeringVector, SystemConfig,
};
pub use secrecy::{
    alpha_polynomial, closed_form_secrecy, mrt_beamformers, noise_free_secrecy, optimal_alpha,
    rates_direct, AlphaPolynomial, Beamformer, RateReport,
};

/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
