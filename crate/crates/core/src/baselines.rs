//! Benchmark focusing schemes and a brute-force grid oracle over the
//! MRT family, plus a shared evaluation harness with optional NLoS
//! averaging.
//!
//! The oracle exhaustively scans focus radii and the power split over the
//! near-field annulus; its candidate set always contains the receiver
//! radii and the proposed design's focus radii, and (for non-degenerate
//! alpha grids) the per-pair closed-form optimal split, so it dominates
//! every MRT-family scheme here by construction. It lower-bounds the true
//! optimum over arbitrary beamformers.

use num_complex::Complex64;
use std::fmt;
use std::str::FromStr;

use crate::design::{assemble_design, design_proposed, BeamDesign, SearchSettings};
use crate::error::{Error, Result};
use crate::fresnel::{correlation_exact, CorrelationSet};
use crate::model::{full_channel, los_channel, NLoSConfig, PolarPosition, SystemConfig};
use crate::secrecy::{
    alpha_polynomial, closed_form_secrecy, optimal_alpha, rates_direct, Beamformer, RateReport,
};

/// Closed enumeration of the evaluated schemes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SchemeId {
    /// Decoupled searches plus closed-form power split.
    Proposed,
    /// Signal beam focused at the user, no AN.
    SignalOnly,
    /// MRT to the user plus AN projected onto the null space of the user
    /// channel, split chosen by grid search.
    NullspaceAn,
    /// Signal at the user, AN at the eavesdropper, closed-form split.
    AnAtEve,
    /// Brute-force MRT-family grid search.
    Oracle,
}

impl SchemeId {
    pub const ALL: [SchemeId; 5] = [
        SchemeId::Proposed,
        SchemeId::SignalOnly,
        SchemeId::NullspaceAn,
        SchemeId::AnAtEve,
        SchemeId::Oracle,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            SchemeId::Proposed => "proposed",
            SchemeId::SignalOnly => "signal_only",
            SchemeId::NullspaceAn => "nullspace_an",
            SchemeId::AnAtEve => "an_at_eve",
            SchemeId::Oracle => "oracle",
        }
    }
}

impl fmt::Display for SchemeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SchemeId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "proposed" => Ok(SchemeId::Proposed),
            "signal_only" => Ok(SchemeId::SignalOnly),
            "nullspace_an" => Ok(SchemeId::NullspaceAn),
            "an_at_eve" => Ok(SchemeId::AnAtEve),
            "oracle" => Ok(SchemeId::Oracle),
            other => Err(Error::UnknownScheme(other.to_string())),
        }
    }
}

/// Signal beam focused at the user with all power; no AN is transmitted.
/// The AN focus point is kept at the eavesdropper but carries zero power.
pub fn design_signal_only(
    config: &SystemConfig,
    user: &PolarPosition,
    eve: &PolarPosition,
) -> Result<BeamDesign> {
    assemble_design(config, user, eve, *user, *eve, Some(0.0))
}

/// Signal at the user, AN at the eavesdropper, split from the closed form
/// with the exact correlations of those points.
pub fn design_an_at_eve(
    config: &SystemConfig,
    user: &PolarPosition,
    eve: &PolarPosition,
) -> Result<BeamDesign> {
    assemble_design(config, user, eve, *user, *eve, None)
}

/// Beam directions and per-unit-power couplings of the null-space scheme;
/// the power split only rescales the couplings.
#[derive(Debug, Clone, PartialEq)]
pub struct NullspaceBeams {
    pub signal_dir: Vec<Complex64>,
    /// Zero vector when the two channels are parallel.
    pub noise_dir: Vec<Complex64>,
    pub user_signal: f64,
    pub eve_signal: f64,
    pub user_an: f64,
    pub eve_an: f64,
    pub parallel: bool,
}

/// MRT direction toward the user plus the unit-norm projection of the
/// eavesdropper-MRT direction onto the orthogonal complement of the user
/// channel.
pub fn nullspace_beams(
    config: &SystemConfig,
    user: &PolarPosition,
    eve: &PolarPosition,
) -> NullspaceBeams {
    let user_channel = los_channel(config, user);
    let eve_channel = los_channel(config, eve);

    let norm_sq = |v: &[Complex64]| v.iter().map(|e| e.norm_sqr()).sum::<f64>();
    let inner = |a: &[Complex64], b: &[Complex64]| -> Complex64 {
        a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum()
    };

    let hb_norm_sq = norm_sq(&user_channel.vector);
    let coupling = inner(&user_channel.vector, &eve_channel.vector) / hb_norm_sq;
    let projected: Vec<Complex64> = eve_channel
        .vector
        .iter()
        .zip(user_channel.vector.iter())
        .map(|(he, hb)| he - coupling * hb)
        .collect();
    let proj_norm = norm_sq(&projected).sqrt();
    let parallel = proj_norm <= norm_sq(&eve_channel.vector).sqrt() * 1e-12;

    let signal_dir: Vec<Complex64> = {
        let n = hb_norm_sq.sqrt();
        user_channel.vector.iter().map(|e| e / n).collect()
    };
    let noise_dir: Vec<Complex64> = if parallel {
        vec![Complex64::new(0.0, 0.0); config.n_antennas]
    } else {
        projected.iter().map(|e| e / proj_norm).collect()
    };

    NullspaceBeams {
        user_signal: inner(&user_channel.vector, &signal_dir).norm_sqr(),
        eve_signal: inner(&eve_channel.vector, &signal_dir).norm_sqr(),
        user_an: inner(&user_channel.vector, &noise_dir).norm_sqr(),
        eve_an: inner(&eve_channel.vector, &noise_dir).norm_sqr(),
        signal_dir,
        noise_dir,
        parallel,
    }
}

/// Secrecy rate of the null-space beams at a given split.
pub fn nullspace_rate_at(config: &SystemConfig, beams: &NullspaceBeams, alpha: f64) -> f64 {
    let p = config.tx_power_w;
    let s2 = config.noise_power_w;
    let user =
        (1.0 + (1.0 - alpha) * p * beams.user_signal / (alpha * p * beams.user_an + s2)).log2();
    let eve = (1.0 + (1.0 - alpha) * p * beams.eve_signal / (alpha * p * beams.eve_an + s2)).log2();
    (user - eve).max(0.0)
}

/// MRT to the user plus AN projected onto the null space of the user
/// channel; the split maximizes the secrecy rate over `alpha_grid_steps`
/// uniform points. Falls back to no AN when the channels are parallel.
///
/// The AN beam of this scheme is not focused at a point; the `beamformer`
/// field is authoritative, while `qa` records the eavesdropper position the
/// projection aims at.
pub fn design_nullspace_an(
    config: &SystemConfig,
    user: &PolarPosition,
    eve: &PolarPosition,
    alpha_grid_steps: usize,
) -> Result<BeamDesign> {
    if alpha_grid_steps < 2 {
        return Err(Error::InvalidInput {
            field: "alpha_grid_steps",
            reason: format!("need at least 2, got {alpha_grid_steps}"),
        });
    }
    let beams = nullspace_beams(config, user, eve);
    let alpha = if beams.parallel {
        0.0
    } else {
        let mut best = (f64::NEG_INFINITY, 0.0);
        for i in 0..alpha_grid_steps {
            let a = (1.0 - 1e-9) * i as f64 / (alpha_grid_steps - 1) as f64;
            let secrecy = nullspace_rate_at(config, &beams, a);
            if secrecy > best.0 {
                best = (secrecy, a);
            }
        }
        best.1
    };

    let p = config.tx_power_w;
    let scale = |dir: &[Complex64], power: f64| -> Vec<Complex64> {
        let f = power.sqrt();
        dir.iter().map(|e| f * e).collect()
    };
    let beamformer = Beamformer {
        w_signal: scale(&beams.signal_dir, (1.0 - alpha) * p),
        w_noise: scale(&beams.noise_dir, alpha * p),
        alpha,
    };
    let user_channel = los_channel(config, user);
    let eve_channel = los_channel(config, eve);
    let rate = rates_direct(
        &user_channel,
        &eve_channel,
        &beamformer,
        config.noise_power_w,
    );
    let rhos = CorrelationSet::new(
        1.0,
        correlation_exact(config, user, eve),
        correlation_exact(config, eve, user),
        1.0,
    )?;
    Ok(BeamDesign {
        qs: *user,
        qa: *eve,
        alpha,
        beamformer,
        rhos,
        rate,
    })
}

/// Grid sizes of the brute-force oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleGrids {
    pub r_s_steps: usize,
    pub r_a_steps: usize,
    pub alpha_steps: usize,
}

impl Default for OracleGrids {
    fn default() -> Self {
        Self {
            r_s_steps: 64,
            r_a_steps: 64,
            alpha_steps: 64,
        }
    }
}

fn log_grid(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    let step = (hi / lo).ln() / (steps - 1) as f64;
    (0..steps).map(|i| lo * (step * i as f64).exp()).collect()
}

/// Exhaustive MRT-family search over (r_S, r_A, alpha) with angles pinned to
/// the receiver rays. Deterministic index-ordered tie-break; the candidate
/// radii include the receiver radii and the proposed design's focus radii.
pub fn oracle_grid_search(
    config: &SystemConfig,
    user: &PolarPosition,
    eve: &PolarPosition,
    grids: &OracleGrids,
) -> Result<BeamDesign> {
    oracle_search(config, user, eve, grids, None)
}

/// Brute-force search over the focus radii only, with the power split
/// pinned to `alpha`.
pub fn oracle_best_at_alpha(
    config: &SystemConfig,
    user: &PolarPosition,
    eve: &PolarPosition,
    grids: &OracleGrids,
    alpha: f64,
) -> Result<BeamDesign> {
    oracle_search(config, user, eve, grids, Some(alpha))
}

fn oracle_search(
    config: &SystemConfig,
    user: &PolarPosition,
    eve: &PolarPosition,
    grids: &OracleGrids,
    alpha_override: Option<f64>,
) -> Result<BeamDesign> {
    if grids.r_s_steps < 2 || grids.r_a_steps < 2 || grids.alpha_steps < 1 {
        return Err(Error::InvalidInput {
            field: "oracle_grids",
            reason: format!("grid sizes too small: {grids:?}"),
        });
    }
    let (lo, hi) = (config.fresnel_dist_m, config.rayleigh_dist_m);
    let mut r_s_candidates = log_grid(lo, hi, grids.r_s_steps);
    let mut r_a_candidates = log_grid(lo, hi, grids.r_a_steps);
    r_s_candidates.push(user.radius_m);
    r_a_candidates.push(eve.radius_m);
    let proposed = design_proposed(config, user, eve, &SearchSettings::for_config(config))?;
    r_s_candidates.push(proposed.qs.radius_m);
    r_a_candidates.push(proposed.qa.radius_m);

    let alphas: Vec<f64> = match alpha_override {
        Some(alpha) => vec![alpha],
        None if grids.alpha_steps == 1 => vec![0.0],
        None => (0..grids.alpha_steps)
            .map(|i| (1.0 - 1e-9) * i as f64 / (grids.alpha_steps - 1) as f64)
            .collect(),
    };
    let with_closed_form_alpha = alpha_override.is_none() && grids.alpha_steps >= 2;

    let user_gain = los_channel(config, user).array_gain;
    let eve_gain = los_channel(config, eve).array_gain;
    let signal_rhos: Vec<(f64, f64)> = r_s_candidates
        .iter()
        .map(|&r| {
            let q = PolarPosition::new(r, user.angle_rad)?;
            Ok((
                correlation_exact(config, user, &q),
                correlation_exact(config, eve, &q),
            ))
        })
        .collect::<Result<_>>()?;
    let noise_rhos: Vec<(f64, f64)> = r_a_candidates
        .iter()
        .map(|&r| {
            let q = PolarPosition::new(r, eve.angle_rad)?;
            Ok((
                correlation_exact(config, user, &q),
                correlation_exact(config, eve, &q),
            ))
        })
        .collect::<Result<_>>()?;

    let mut best = (f64::NEG_INFINITY, 0usize, 0usize, 0.0f64);
    for (i, &(rho1, rho3)) in signal_rhos.iter().enumerate() {
        for (j, &(rho2, rho4)) in noise_rhos.iter().enumerate() {
            let rhos = CorrelationSet::new(rho1, rho2, rho3, rho4)?;
            for &alpha in &alphas {
                let rate = closed_form_secrecy(
                    &rhos,
                    user_gain,
                    eve_gain,
                    alpha,
                    config.tx_power_w,
                    config.noise_power_w,
                );
                if rate > best.0 {
                    best = (rate, i, j, alpha);
                }
            }
            if with_closed_form_alpha {
                let poly = alpha_polynomial(
                    &rhos,
                    user_gain,
                    eve_gain,
                    config.tx_power_w,
                    config.noise_power_w,
                );
                if let Ok(alpha) = optimal_alpha(&poly) {
                    let rate = closed_form_secrecy(
                        &rhos,
                        user_gain,
                        eve_gain,
                        alpha,
                        config.tx_power_w,
                        config.noise_power_w,
                    );
                    if rate > best.0 {
                        best = (rate, i, j, alpha);
                    }
                }
            }
        }
    }

    let qs = PolarPosition::new(r_s_candidates[best.1], user.angle_rad)?;
    let qa = PolarPosition::new(r_a_candidates[best.2], eve.angle_rad)?;
    assemble_design(config, user, eve, qs, qa, Some(best.3))
}

/// Builds one scheme's design over LoS channels.
pub fn build_design(
    scheme: SchemeId,
    config: &SystemConfig,
    user: &PolarPosition,
    eve: &PolarPosition,
) -> Result<BeamDesign> {
    match scheme {
        SchemeId::Proposed => {
            design_proposed(config, user, eve, &SearchSettings::for_config(config))
        }
        SchemeId::SignalOnly => design_signal_only(config, user, eve),
        SchemeId::NullspaceAn => design_nullspace_an(config, user, eve, 1001),
        SchemeId::AnAtEve => design_an_at_eve(config, user, eve),
        SchemeId::Oracle => oracle_grid_search(config, user, eve, &OracleGrids::default()),
    }
}

/// Designs the scheme on LoS channels, then averages its direct rates over
/// `num_realizations` seeded channel draws (LoS plus NLoS scatterers).
/// With NLoS disabled every realization is the LoS channel itself and the
/// average equals the design's own rate. Summation is index-ordered, so the
/// result is reproducible to the last bit for a fixed seed.
pub fn evaluate_scheme(
    scheme: SchemeId,
    config: &SystemConfig,
    user: &PolarPosition,
    eve: &PolarPosition,
    nlos: &NLoSConfig,
    num_realizations: usize,
) -> Result<RateReport> {
    if num_realizations == 0 {
        return Err(Error::InvalidInput {
            field: "num_realizations",
            reason: "need at least 1".into(),
        });
    }
    let design = build_design(scheme, config, user, eve)?;
    if nlos.num_paths == 0 {
        return Ok(design.rate);
    }
    let mut sum_user = 0.0;
    let mut sum_eve = 0.0;
    let mut sum_secrecy = 0.0;
    for k in 0..num_realizations as u64 {
        let user_nlos = NLoSConfig {
            rng_seed: nlos.rng_seed.wrapping_add(2 * k),
            ..*nlos
        };
        let eve_nlos = NLoSConfig {
            rng_seed: nlos.rng_seed.wrapping_add(2 * k + 1),
            ..*nlos
        };
        let user_channel = full_channel(config, user, &user_nlos);
        let eve_channel = full_channel(config, eve, &eve_nlos);
        let report = rates_direct(
            &user_channel,
            &eve_channel,
            &design.beamformer,
            config.noise_power_w,
        );
        sum_user += report.rate_user;
        sum_eve += report.rate_eve;
        sum_secrecy += report.secrecy_rate;
    }
    let n = num_realizations as f64;
    Ok(RateReport {
        rate_user: sum_user / n,
        rate_eve: sum_eve / n,
        secrecy_rate: sum_secrecy / n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{make_config, RawConfig, Spacing};
    use approx::assert_relative_eq;

    fn reference_config() -> SystemConfig {
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

    fn positions() -> (PolarPosition, PolarPosition) {
        (
            PolarPosition::new(5.0, 0.0).unwrap(),
            PolarPosition::new(3.5, 0.0).unwrap(),
        )
    }

    #[test]
    fn scheme_ids_round_trip() {
        for id in SchemeId::ALL {
            assert_eq!(id.name().parse::<SchemeId>().unwrap(), id);
        }
        assert!(matches!(
            "beam_hopper".parse::<SchemeId>(),
            Err(Error::UnknownScheme(_))
        ));
    }

    #[test]
    fn signal_only_puts_all_power_on_the_signal() {
        let cfg = reference_config();
        let (user, eve) = positions();
        let design = design_signal_only(&cfg, &user, &eve).unwrap();
        let power: f64 = design
            .beamformer
            .w_signal
            .iter()
            .map(|e| e.norm_sqr())
            .sum();
        assert_relative_eq!(power, cfg.tx_power_w, max_relative = 1e-12);
        assert!(design.beamformer.w_noise.iter().all(|e| e.norm() == 0.0));
        assert_eq!(design.alpha, 0.0);
        assert_eq!(design.rhos.rho1, 1.0);
    }

    #[test]
    fn nullspace_an_is_orthogonal_to_the_user() {
        let cfg = reference_config();
        let (user, eve) = positions();
        let design = design_nullspace_an(&cfg, &user, &eve, 101).unwrap();
        let h = los_channel(&cfg, &user).vector;
        let leak: num_complex::Complex64 = h
            .iter()
            .zip(design.beamformer.w_noise.iter())
            .map(|(a, b)| a.conj() * b)
            .sum();
        let h_norm = h.iter().map(|e| e.norm_sqr()).sum::<f64>().sqrt();
        let wz_norm = design
            .beamformer
            .w_noise
            .iter()
            .map(|e| e.norm_sqr())
            .sum::<f64>()
            .sqrt();
        assert!(wz_norm > 0.0);
        assert!(leak.norm() / (h_norm * wz_norm) < 1e-10);
    }

    #[test]
    fn nullspace_falls_back_when_channels_are_parallel() {
        let cfg = reference_config();
        let user = PolarPosition::new(5.0, 0.0).unwrap();
        let design = design_nullspace_an(&cfg, &user, &user, 101).unwrap();
        assert_eq!(design.alpha, 0.0);
    }

    #[test]
    fn an_at_eve_focuses_on_both_receivers() {
        let cfg = reference_config();
        let (user, eve) = positions();
        let design = design_an_at_eve(&cfg, &user, &eve).unwrap();
        assert_eq!(design.rhos.rho1, 1.0);
        assert_eq!(design.rhos.rho4, 1.0);
        assert_eq!(design.qs, user);
        assert_eq!(design.qa, eve);
    }

    #[test]
    fn oracle_degenerate_alpha_grid_stays_at_zero() {
        let cfg = reference_config();
        let (user, eve) = positions();
        let grids = OracleGrids {
            r_s_steps: 16,
            r_a_steps: 16,
            alpha_steps: 1,
        };
        let design = oracle_grid_search(&cfg, &user, &eve, &grids).unwrap();
        assert_eq!(design.alpha, 0.0);
    }

    #[test]
    fn oracle_dominates_proposed_and_signal_only() {
        let cfg = reference_config();
        let (user, eve) = positions();
        let grids = OracleGrids {
            r_s_steps: 24,
            r_a_steps: 24,
            alpha_steps: 16,
        };
        let oracle = oracle_grid_search(&cfg, &user, &eve, &grids).unwrap();
        let proposed =
            design_proposed(&cfg, &user, &eve, &SearchSettings::for_config(&cfg)).unwrap();
        let signal = design_signal_only(&cfg, &user, &eve).unwrap();
        assert!(oracle.rate.secrecy_rate >= proposed.rate.secrecy_rate - 1e-9);
        assert!(oracle.rate.secrecy_rate >= signal.rate.secrecy_rate - 1e-9);
    }

    #[test]
    fn evaluate_scheme_without_nlos_returns_design_rate() {
        let cfg = reference_config();
        let (user, eve) = positions();
        let design = design_an_at_eve(&cfg, &user, &eve).unwrap();
        let report = evaluate_scheme(
            SchemeId::AnAtEve,
            &cfg,
            &user,
            &eve,
            &NLoSConfig::disabled(),
            1,
        )
        .unwrap();
        assert_eq!(report, design.rate);
    }

    #[test]
    fn evaluate_scheme_is_reproducible_per_seed() {
        let cfg = reference_config();
        let (user, eve) = positions();
        let nlos = NLoSConfig::new(2, 15.0, 1234).unwrap();
        let a = evaluate_scheme(SchemeId::SignalOnly, &cfg, &user, &eve, &nlos, 25).unwrap();
        let b = evaluate_scheme(SchemeId::SignalOnly, &cfg, &user, &eve, &nlos, 25).unwrap();
        assert_eq!(a, b);
        let other_seed = NLoSConfig::new(2, 15.0, 4321).unwrap();
        let c = evaluate_scheme(SchemeId::SignalOnly, &cfg, &user, &eve, &other_seed, 25).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn evaluate_scheme_rejects_zero_realizations() {
        let cfg = reference_config();
        let (user, eve) = positions();
        assert!(evaluate_scheme(
            SchemeId::SignalOnly,
            &cfg,
            &user,
            &eve,
            &NLoSConfig::disabled(),
            0
        )
        .is_err());
    }
}
