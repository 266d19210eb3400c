//! Figure-style sweeps: secrecy rate versus the AN power fraction and
//! versus the eavesdropper radius. Sweep points evaluate in parallel and
//! assemble in axis order, so results are reproducible bit-for-bit.

use rayon::prelude::*;

use nfsec_core::baselines::{nullspace_beams, nullspace_rate_at};
use nfsec_core::{
    alpha_polynomial, closed_form_secrecy, correlation_set, design_proposed, evaluate_scheme,
    los_channel, optimal_alpha, oracle_best_at_alpha, CorrelationMode, CorrelationSet, Error,
    OracleGrids, PolarPosition, Result, SchemeId,
};

use crate::scenario::Scenario;
use crate::{thread_pool, TOOL_VERSION};

/// Provenance carried by every emitted artifact.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepMetadata {
    pub scenario_hash: u64,
    pub seed: u64,
    pub tool_version: String,
    /// Closed-form optimal split of the proposed design, when the sweep
    /// involves one.
    pub closed_form_alpha: Option<f64>,
}

/// A rate table over one swept axis; `rates[i][j]` is the secrecy rate of
/// scheme `j` at axis value `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub axis_name: String,
    pub axis_values: Vec<f64>,
    pub schemes: Vec<SchemeId>,
    pub rates: Vec<Vec<f64>>,
    pub metadata: SweepMetadata,
}

impl SweepResult {
    /// Column of one scheme, in axis order.
    pub fn column(&self, scheme: SchemeId) -> Option<Vec<f64>> {
        let j = self.schemes.iter().position(|&s| s == scheme)?;
        Some(self.rates.iter().map(|row| row[j]).collect())
    }
}

/// Closed-form rate curve of a fixed correlation set as alpha varies.
struct FixedFocusCurve {
    rhos: CorrelationSet,
    g_user: f64,
    g_eve: f64,
}

impl FixedFocusCurve {
    fn rate(&self, scenario: &Scenario, alpha: f64) -> f64 {
        closed_form_secrecy(
            &self.rhos,
            self.g_user,
            self.g_eve,
            alpha,
            scenario.config.tx_power_w,
            scenario.config.noise_power_w,
        )
    }
}

/// Secrecy rate of every requested scheme at each forced power split.
/// Schemes that normally self-select the split are evaluated at the forced
/// value; the signal-only scheme carries no AN beam and is therefore
/// constant in alpha. The proposed design's closed-form optimum lands in
/// the metadata.
pub fn sweep_alpha(
    scenario: &Scenario,
    alpha_grid: &[f64],
    mode: CorrelationMode,
) -> Result<SweepResult> {
    if alpha_grid.is_empty() || alpha_grid.iter().any(|a| !(0.0..1.0).contains(a)) {
        return Err(Error::InvalidInput {
            field: "alpha_grid",
            reason: "need a non-empty grid inside [0, 1)".into(),
        });
    }
    let cfg = &scenario.config;
    let (user, eve) = (&scenario.user, &scenario.eve);
    let g_user = los_channel(cfg, user).array_gain;
    let g_eve = los_channel(cfg, eve).array_gain;

    let proposed = design_proposed(cfg, user, eve, &scenario.search)?;
    let focus_curve = |qs: &PolarPosition, qa: &PolarPosition| -> Result<FixedFocusCurve> {
        Ok(FixedFocusCurve {
            rhos: correlation_set(cfg, user, eve, qs, qa, mode)?,
            g_user,
            g_eve,
        })
    };
    let proposed_curve = focus_curve(&proposed.qs, &proposed.qa)?;
    let closed_form_alpha = optimal_alpha(&alpha_polynomial(
        &proposed_curve.rhos,
        g_user,
        g_eve,
        cfg.tx_power_w,
        cfg.noise_power_w,
    ))
    .unwrap_or(proposed.alpha);

    let an_at_eve_curve = focus_curve(user, eve)?;
    let nullspace = nullspace_beams(cfg, user, eve);

    let rates: Vec<Vec<f64>> = thread_pool().install(|| {
        alpha_grid
            .par_iter()
            .map(|&alpha| {
                scenario
                    .schemes
                    .iter()
                    .map(|&scheme| match scheme {
                        SchemeId::Proposed => Ok(proposed_curve.rate(scenario, alpha)),
                        SchemeId::AnAtEve => Ok(an_at_eve_curve.rate(scenario, alpha)),
                        SchemeId::SignalOnly => Ok(an_at_eve_curve.rate(scenario, 0.0)),
                        SchemeId::NullspaceAn => Ok(nullspace_rate_at(cfg, &nullspace, alpha)),
                        SchemeId::Oracle => {
                            oracle_best_at_alpha(cfg, user, eve, &OracleGrids::default(), alpha)
                                .map(|d| d.rate.secrecy_rate)
                        }
                    })
                    .collect::<Result<Vec<f64>>>()
            })
            .collect::<Result<Vec<_>>>()
    })?;

    Ok(SweepResult {
        axis_name: "alpha".to_string(),
        axis_values: alpha_grid.to_vec(),
        schemes: scenario.schemes.clone(),
        rates,
        metadata: SweepMetadata {
            scenario_hash: scenario.hash(),
            seed: scenario.nlos.rng_seed,
            tool_version: TOOL_VERSION.to_string(),
            closed_form_alpha: Some(closed_form_alpha),
        },
    })
}

/// Secrecy rate of every requested scheme across eavesdropper radii, each
/// scheme applying its own power-split policy. With NLoS paths configured
/// the rates are seeded Monte Carlo averages over `num_realizations` draws.
pub fn sweep_re(
    scenario: &Scenario,
    re_grid: &[f64],
    num_realizations: usize,
) -> Result<SweepResult> {
    if re_grid.is_empty() {
        return Err(Error::InvalidInput {
            field: "re_grid",
            reason: "need at least one radius".into(),
        });
    }
    let cfg = &scenario.config;
    for &r in re_grid {
        if !(r > cfg.fresnel_dist_m && r <= cfg.rayleigh_dist_m) {
            return Err(Error::InvalidInput {
                field: "re_grid",
                reason: format!(
                    "{r} m outside the near-field annulus ({:.4}, {:.4}] m",
                    cfg.fresnel_dist_m, cfg.rayleigh_dist_m
                ),
            });
        }
    }

    let rates: Vec<Vec<f64>> = thread_pool().install(|| {
        re_grid
            .par_iter()
            .map(|&r_eve| {
                let eve = PolarPosition::new(r_eve, scenario.eve.angle_rad)?;
                scenario
                    .schemes
                    .iter()
                    .map(|&scheme| {
                        evaluate_scheme(
                            scheme,
                            cfg,
                            &scenario.user,
                            &eve,
                            &scenario.nlos,
                            num_realizations.max(1),
                        )
                        .map(|r| r.secrecy_rate)
                    })
                    .collect::<Result<Vec<f64>>>()
            })
            .collect::<Result<Vec<_>>>()
    })?;

    Ok(SweepResult {
        axis_name: "r_e_m".to_string(),
        axis_values: re_grid.to_vec(),
        schemes: scenario.schemes.clone(),
        rates,
        metadata: SweepMetadata {
            scenario_hash: scenario.hash(),
            seed: scenario.nlos.rng_seed,
            tool_version: TOOL_VERSION.to_string(),
            closed_form_alpha: None,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::parse_scenario;

    fn scenario() -> Scenario {
        let text = "\
n_antennas = 513
carrier_freq_ghz = 300
element_spacing_over_lambda = 0.5
tx_power_dbm = 5
noise_power_dbm = -77
absorption_per_m = 0.00143
user_radius_m = 5.0
eve_radius_m = 3.5
schemes = proposed,signal_only
";
        parse_scenario(text, "mem").unwrap()
    }

    #[test]
    fn single_point_sweep_has_one_row() {
        let result = sweep_re(&scenario(), &[4.0], 1).unwrap();
        assert_eq!(result.axis_values, vec![4.0]);
        assert_eq!(result.rates.len(), 1);
        assert_eq!(result.rates[0].len(), 2);
        assert!(result.rates[0].iter().all(|r| *r >= 0.0));
    }

    #[test]
    fn sweep_rejects_radii_outside_the_annulus() {
        assert!(sweep_re(&scenario(), &[1.0], 1).is_err());
        assert!(sweep_alpha(&scenario(), &[1.5], CorrelationMode::Exact).is_err());
    }
}
