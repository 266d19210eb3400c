//! The proposed focusing scheme: decoupled 1-D searches for the signal and
//! AN focus radii along the user and eavesdropper rays, followed by the
//! closed-form power split.
//!
//! Each search maximizes a ratio of approximate correlations: the signal
//! focus maximizes received-signal power at the user relative to the
//! eavesdropper, the AN focus the mirrored ratio. Both searches are
//! independent of each other and of the power split. The final design
//! re-evaluates the four correlations exactly at the chosen points before
//! computing the power split and rates.

use crate::error::{Error, Result};
use crate::fresnel::{
    beta_params, correlation_set, rho_aligned_approx, rho_cross_approx, CorrelationMode,
    CorrelationSet,
};
use crate::model::{los_channel, PolarPosition, SystemConfig};
use crate::secrecy::{
    alpha_polynomial, closed_form_secrecy, mrt_beamformers, optimal_alpha, rates_direct,
    Beamformer, RateReport,
};

/// A complete focusing design: focus points, power split, beamformers,
/// exact correlations, and the resulting rates over LoS channels.
#[derive(Debug, Clone, PartialEq)]
pub struct BeamDesign {
    pub qs: PolarPosition,
    pub qa: PolarPosition,
    pub alpha: f64,
    pub beamformer: Beamformer,
    pub rhos: CorrelationSet,
    pub rate: RateReport,
}

/// Settings of the coarse-plus-golden-section radius search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchSettings {
    /// Coarse grid size M.
    pub grid_points: usize,
    /// Width of the final bracket, m.
    pub refine_tolerance_m: f64,
    /// Search interval, normally the near-field annulus [d_F, d_R].
    pub domain_m: (f64, f64),
}

impl SearchSettings {
    /// Defaults over the near-field annulus of `config`.
    pub fn for_config(config: &SystemConfig) -> Self {
        Self {
            grid_points: 2048,
            refine_tolerance_m: 1e-4,
            domain_m: (config.fresnel_dist_m, config.rayleigh_dist_m),
        }
    }

    fn validate(&self) -> Result<()> {
        if self.grid_points < 16 {
            return Err(Error::InvalidInput {
                field: "grid_points",
                reason: format!("need at least 16, got {}", self.grid_points),
            });
        }
        if self.refine_tolerance_m <= 0.0 || self.refine_tolerance_m.is_nan() {
            return Err(Error::InvalidInput {
                field: "refine_tolerance_m",
                reason: format!("must be positive, got {}", self.refine_tolerance_m),
            });
        }
        if !(self.domain_m.0 > 0.0 && self.domain_m.1 > self.domain_m.0) {
            return Err(Error::InvalidInput {
                field: "domain_m",
                reason: format!("need 0 < lo < hi, got {:?}", self.domain_m),
            });
        }
        Ok(())
    }
}

/// Outcome of a radius search: the argmax and the number of objective
/// evaluations spent (coarse scan plus refinement).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadiusSearch {
    pub radius_m: f64,
    pub evaluations: usize,
}

/// Signal-focus objective at radius `r_s` on the user ray: the squared
/// ratio of the approximate correlations (user, Q_S) over (eve, Q_S).
pub fn signal_objective(
    config: &SystemConfig,
    user: &PolarPosition,
    eve: &PolarPosition,
    r_s: f64,
) -> Result<f64> {
    let betas = beta_params(config, user, eve, r_s)?;
    let rho_user = rho_aligned_approx(betas.beta1);
    let rho_eve = rho_cross_approx(betas.beta2, betas.beta3)?;
    if rho_eve <= 0.0 {
        return Err(Error::DegenerateCorrelation("rho3"));
    }
    Ok((rho_user / rho_eve).powi(2))
}

/// AN-focus objective at radius `r_a` on the eavesdropper ray: the mirrored
/// ratio (eve, Q_A) over (user, Q_A).
pub fn an_objective(
    config: &SystemConfig,
    user: &PolarPosition,
    eve: &PolarPosition,
    r_a: f64,
) -> Result<f64> {
    signal_objective(config, eve, user, r_a)
}

/// Coarse log-spaced scan followed by golden-section refinement of the best
/// bracket. Degenerate objective points are skipped; ties prefer the
/// smallest radius. Deterministic for identical inputs.
pub fn search_radius(
    objective: impl Fn(f64) -> Result<f64>,
    settings: &SearchSettings,
) -> Result<RadiusSearch> {
    settings.validate()?;
    let (lo, hi) = settings.domain_m;
    let m = settings.grid_points;
    let log_step = (hi / lo).ln() / (m - 1) as f64;
    let grid: Vec<f64> = (0..m).map(|i| lo * (log_step * i as f64).exp()).collect();

    let mut evaluations = 0usize;
    let mut eval = |r: f64| -> Option<f64> {
        evaluations += 1;
        match objective(r) {
            Ok(v) if v.is_finite() => Some(v),
            _ => None,
        }
    };

    let mut best: Option<(f64, f64, usize)> = None; // (value, radius, index)
    for (i, &r) in grid.iter().enumerate() {
        if let Some(v) = eval(r) {
            let better = match best {
                None => true,
                Some((bv, _, _)) => v > bv,
            };
            if better {
                best = Some((v, r, i));
            }
        }
    }
    let (mut best_v, mut best_r, idx) = best.ok_or(Error::NoValidRadius)?;

    // Golden-section refinement inside the bracketing interval.
    let mut a = grid[idx.saturating_sub(1)];
    let mut b = grid[(idx + 1).min(m - 1)];
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - ratio * (b - a);
    let mut x2 = a + ratio * (b - a);
    let consider = |r: f64, v: Option<f64>, best_v: &mut f64, best_r: &mut f64| {
        if let Some(v) = v {
            if v > *best_v || (v == *best_v && r < *best_r) {
                *best_v = v;
                *best_r = r;
            }
        }
    };
    let v1 = eval(x1);
    let v2 = eval(x2);
    consider(x1, v1, &mut best_v, &mut best_r);
    consider(x2, v2, &mut best_v, &mut best_r);
    let mut f1 = v1.unwrap_or(f64::NEG_INFINITY);
    let mut f2 = v2.unwrap_or(f64::NEG_INFINITY);
    while b - a > settings.refine_tolerance_m {
        if f1 >= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - ratio * (b - a);
            let v = eval(x1);
            consider(x1, v, &mut best_v, &mut best_r);
            f1 = v.unwrap_or(f64::NEG_INFINITY);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + ratio * (b - a);
            let v = eval(x2);
            consider(x2, v, &mut best_v, &mut best_r);
            f2 = v.unwrap_or(f64::NEG_INFINITY);
        }
    }

    Ok(RadiusSearch {
        radius_m: best_r,
        evaluations,
    })
}

/// Best power split of a correlation set by a grid scan of the closed-form
/// rate; fallback for the non-concave regime.
pub(crate) fn grid_alpha_max(
    rhos: &CorrelationSet,
    g_user: f64,
    g_eve: f64,
    tx_power_w: f64,
    noise_power_w: f64,
    steps: usize,
) -> f64 {
    let steps = steps.max(2);
    let mut best = (f64::NEG_INFINITY, 0.0);
    for i in 0..steps {
        let alpha = (1.0 - 1e-9) * i as f64 / (steps - 1) as f64;
        let rate = closed_form_secrecy(rhos, g_user, g_eve, alpha, tx_power_w, noise_power_w);
        if rate > best.0 {
            best = (rate, alpha);
        }
    }
    best.1
}

/// The proposed design: focus angles pinned to the receiver rays, focus
/// radii from the two independent searches, exact correlations at the
/// chosen points, closed-form power split, MRT beamformers, and rates over
/// LoS channels.
pub fn design_proposed(
    config: &SystemConfig,
    user: &PolarPosition,
    eve: &PolarPosition,
    settings: &SearchSettings,
) -> Result<BeamDesign> {
    let signal = search_radius(|r| signal_objective(config, user, eve, r), settings)?;
    let noise = search_radius(|r| an_objective(config, user, eve, r), settings)?;
    let qs = PolarPosition::new(signal.radius_m, user.angle_rad)?;
    let qa = PolarPosition::new(noise.radius_m, eve.angle_rad)?;
    assemble_design(config, user, eve, qs, qa, None)
}

/// Builds the full [`BeamDesign`] at fixed focus points. When `alpha` is
/// `None` the closed-form optimum is used (grid fallback outside the
/// concave regime).
pub(crate) fn assemble_design(
    config: &SystemConfig,
    user: &PolarPosition,
    eve: &PolarPosition,
    qs: PolarPosition,
    qa: PolarPosition,
    alpha: Option<f64>,
) -> Result<BeamDesign> {
    let rhos = correlation_set(config, user, eve, &qs, &qa, CorrelationMode::Exact)?;
    let user_channel = los_channel(config, user);
    let eve_channel = los_channel(config, eve);
    let alpha = match alpha {
        Some(a) => a,
        None => {
            let poly = alpha_polynomial(
                &rhos,
                user_channel.array_gain,
                eve_channel.array_gain,
                config.tx_power_w,
                config.noise_power_w,
            );
            match optimal_alpha(&poly) {
                Ok(a) => a,
                Err(Error::NonConcaveAlpha { .. }) => grid_alpha_max(
                    &rhos,
                    user_channel.array_gain,
                    eve_channel.array_gain,
                    config.tx_power_w,
                    config.noise_power_w,
                    1001,
                ),
                Err(e) => return Err(e),
            }
        }
    };
    let beamformer = mrt_beamformers(config, &qs, &qa, alpha)?;
    let rate = rates_direct(
        &user_channel,
        &eve_channel,
        &beamformer,
        config.noise_power_w,
    );
    Ok(BeamDesign {
        qs,
        qa,
        alpha,
        beamformer,
        rhos,
        rate,
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

    #[test]
    fn search_finds_synthetic_maximum() {
        let cfg = reference_config();
        let settings = SearchSettings::for_config(&cfg);
        let found = search_radius(|r| Ok(-(r - 7.0) * (r - 7.0)), &settings).unwrap();
        assert!(
            (found.radius_m - 7.0).abs() <= settings.refine_tolerance_m,
            "got {}",
            found.radius_m
        );
    }

    #[test]
    fn search_plateau_returns_smallest_radius() {
        let cfg = reference_config();
        let settings = SearchSettings::for_config(&cfg);
        let plateau = |r: f64| {
            Ok(if r < 7.0 {
                r
            } else if r <= 9.0 {
                7.0
            } else {
                16.0 - r
            })
        };
        let found = search_radius(plateau, &settings).unwrap();
        assert!(
            (found.radius_m - 7.0).abs() < 0.02,
            "expected the left edge of the plateau, got {}",
            found.radius_m
        );
    }

    #[test]
    fn search_rejects_fully_degenerate_objective() {
        let cfg = reference_config();
        let settings = SearchSettings::for_config(&cfg);
        let result = search_radius(|_| Err(Error::DegenerateCorrelation("rho3")), &settings);
        assert!(matches!(result, Err(Error::NoValidRadius)));
    }

    #[test]
    fn objective_prefers_user_radius_when_eve_is_angularly_far() {
        let cfg = reference_config();
        let user = PolarPosition::new(5.0, 0.0).unwrap();
        // Direction-cosine gap of 0.5.
        let eve = PolarPosition::new(5.0, 0.5f64.asin()).unwrap();
        let at_user = signal_objective(&cfg, &user, &eve, 5.0).unwrap();
        let far = signal_objective(&cfg, &user, &eve, 10.0).unwrap();
        assert!(at_user > far, "{at_user} vs {far}");
    }

    #[test]
    fn objective_is_correlation_ratio_squared() {
        let cfg = reference_config();
        let user = PolarPosition::new(5.0, 0.0).unwrap();
        let eve = PolarPosition::new(4.0, 0.001).unwrap();
        let r_s = 5.7;
        let betas = beta_params(&cfg, &user, &eve, r_s).unwrap();
        let rho1 = rho_aligned_approx(betas.beta1);
        let rho3 = rho_cross_approx(betas.beta2, betas.beta3).unwrap();
        assert_relative_eq!(
            signal_objective(&cfg, &user, &eve, r_s).unwrap(),
            (rho1 / rho3).powi(2),
            max_relative = 1e-14
        );
    }

    #[test]
    fn an_objective_is_role_swapped_signal_objective() {
        let cfg = reference_config();
        let user = PolarPosition::new(5.0, 0.0).unwrap();
        let eve = PolarPosition::new(4.0, 0.001).unwrap();
        for r in [3.0, 4.5, 6.0, 9.0] {
            assert_eq!(
                an_objective(&cfg, &user, &eve, r).unwrap(),
                signal_objective(&cfg, &eve, &user, r).unwrap()
            );
        }
    }

    #[test]
    fn signal_argmax_leaves_the_user_radius() {
        let cfg = reference_config();
        let user = PolarPosition::new(5.0, 0.0).unwrap();
        let eve = PolarPosition::new(4.0, 0.0).unwrap();
        let settings = SearchSettings::for_config(&cfg);
        let found = search_radius(|r| signal_objective(&cfg, &user, &eve, r), &settings).unwrap();
        assert!(
            (found.radius_m - 5.0).abs() > 0.05,
            "focus stayed at the user: {}",
            found.radius_m
        );
    }

    #[test]
    fn proposed_design_reference_scenario() {
        let cfg = reference_config();
        let user = PolarPosition::new(5.0, 0.0).unwrap();
        let eve = PolarPosition::new(3.5, 0.0).unwrap();
        let settings = SearchSettings::for_config(&cfg);
        let design = design_proposed(&cfg, &user, &eve, &settings).unwrap();

        assert_eq!(design.qs.angle_rad, user.angle_rad);
        assert_eq!(design.qa.angle_rad, eve.angle_rad);
        assert!(design.qs.radius_m >= cfg.fresnel_dist_m);
        assert!(design.qa.radius_m <= cfg.rayleigh_dist_m);
        assert!(design.alpha > 0.0);

        let user_gain = los_channel(&cfg, &user).array_gain;
        let eve_gain = los_channel(&cfg, &eve).array_gain;
        let at_zero = closed_form_secrecy(
            &design.rhos,
            user_gain,
            eve_gain,
            0.0,
            cfg.tx_power_w,
            cfg.noise_power_w,
        );
        assert!(design.rate.secrecy_rate > at_zero);
    }

    #[test]
    fn far_eavesdropper_gains_little_from_an() {
        let cfg = reference_config();
        let user = PolarPosition::new(5.0, 0.0).unwrap();
        let eve = PolarPosition::new(7.0, 0.0).unwrap();
        let settings = SearchSettings::for_config(&cfg);
        let design = design_proposed(&cfg, &user, &eve, &settings).unwrap();
        let user_gain = los_channel(&cfg, &user).array_gain;
        let eve_gain = los_channel(&cfg, &eve).array_gain;
        let at_zero = closed_form_secrecy(
            &design.rhos,
            user_gain,
            eve_gain,
            0.0,
            cfg.tx_power_w,
            cfg.noise_power_w,
        );
        assert!(design.rate.secrecy_rate - at_zero < 0.2);
    }

    #[test]
    fn colocated_eavesdropper_kills_secrecy() {
        let cfg = reference_config();
        let user = PolarPosition::new(5.0, 0.0).unwrap();
        let settings = SearchSettings::for_config(&cfg);
        let design = design_proposed(&cfg, &user, &user, &settings).unwrap();
        assert_eq!(design.rate.secrecy_rate, 0.0);
    }

    #[test]
    fn design_is_deterministic() {
        let cfg = reference_config();
        let user = PolarPosition::new(5.0, 0.0).unwrap();
        let eve = PolarPosition::new(3.5, 0.0).unwrap();
        let settings = SearchSettings::for_config(&cfg);
        let a = design_proposed(&cfg, &user, &eve, &settings).unwrap();
        let b = design_proposed(&cfg, &user, &eve, &settings).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn searches_are_decoupled() {
        // The signal radius never depends on the AN search or the split.
        let cfg = reference_config();
        let user = PolarPosition::new(5.0, 0.0).unwrap();
        let eve = PolarPosition::new(3.5, 0.0).unwrap();
        let settings = SearchSettings::for_config(&cfg);
        let design = design_proposed(&cfg, &user, &eve, &settings).unwrap();
        let standalone =
            search_radius(|r| signal_objective(&cfg, &user, &eve, r), &settings).unwrap();
        assert_eq!(design.qs.radius_m, standalone.radius_m);
        let standalone_an =
            search_radius(|r| an_objective(&cfg, &user, &eve, r), &settings).unwrap();
        assert_eq!(design.qa.radius_m, standalone_an.radius_m);
    }
}
