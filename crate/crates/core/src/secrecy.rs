//! Beamformer construction, exact and closed-form secrecy-rate evaluation,
//! and the closed-form optimal power split between signal and artificial
//! noise.
//!
//! For maximum-ratio-transmission beams focused at `Q_S` and `Q_A` over
//! line-of-sight channels, the secrecy rate collapses to
//! `log2((A + B) / (A + C))` in the four steering-vector correlations and
//! the two array gains; its derivative in the power split `alpha` has a
//! quadratic numerator `F2 a^2 + F1 a + F0`, giving the optimal split in
//! closed form.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fresnel::CorrelationSet;
use crate::model::{los_channel, ChannelState, PolarPosition, SystemConfig};

/// Signal and artificial-noise beamformers with their power split.
#[derive(Debug, Clone, PartialEq)]
pub struct Beamformer {
    pub w_signal: Vec<Complex64>,
    pub w_noise: Vec<Complex64>,
    /// Fraction of transmit power on the AN beam, in [0, 1).
    pub alpha: f64,
}

/// Achievable rates of one scenario, bits/s/Hz.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateReport {
    pub rate_user: f64,
    pub rate_eve: f64,
    /// max(rate_user - rate_eve, 0).
    pub secrecy_rate: f64,
}

impl RateReport {
    pub fn from_rates(rate_user: f64, rate_eve: f64) -> Self {
        Self {
            rate_user,
            rate_eve,
            secrecy_rate: (rate_user - rate_eve).max(0.0),
        }
    }
}

/// Coefficients of the derivative numerator of the secrecy ratio in alpha.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaPolynomial {
    pub f0: f64,
    pub f1: f64,
    pub f2: f64,
}

fn inner(h: &[Complex64], w: &[Complex64]) -> Complex64 {
    debug_assert_eq!(h.len(), w.len());
    h.iter().zip(w.iter()).map(|(a, b)| a.conj() * b).sum()
}

/// Maximum-ratio-transmission beamformers focused at `qs` (signal) and
/// `qa` (AN), with `alpha` of the power on the AN beam.
pub fn mrt_beamformers(
    config: &SystemConfig,
    qs: &PolarPosition,
    qa: &PolarPosition,
    alpha: f64,
) -> Result<Beamformer> {
    if !(0.0..1.0).contains(&alpha) {
        return Err(Error::InvalidInput {
            field: "alpha",
            reason: format!("must lie in [0, 1), got {alpha}"),
        });
    }
    let scale_to = |channel: &ChannelState, power: f64| -> Vec<Complex64> {
        let norm = channel
            .vector
            .iter()
            .map(|e| e.norm_sqr())
            .sum::<f64>()
            .sqrt();
        let factor = power.sqrt() / norm;
        channel.vector.iter().map(|e| factor * e).collect()
    };
    let signal_channel = los_channel(config, qs);
    let noise_channel = los_channel(config, qa);
    Ok(Beamformer {
        w_signal: scale_to(&signal_channel, (1.0 - alpha) * config.tx_power_w),
        w_noise: if alpha == 0.0 {
            vec![Complex64::new(0.0, 0.0); config.n_antennas]
        } else {
            scale_to(&noise_channel, alpha * config.tx_power_w)
        },
        alpha,
    })
}

/// Rates from the actual channel vectors:
/// R = log2(1 + |h^H w_s|^2 / (|h^H w_z|^2 + noise)) per receiver.
pub fn rates_direct(
    channel_user: &ChannelState,
    channel_eve: &ChannelState,
    bf: &Beamformer,
    noise_power_w: f64,
) -> RateReport {
    let rate = |h: &ChannelState| -> f64 {
        let sig = inner(&h.vector, &bf.w_signal).norm_sqr();
        let an = inner(&h.vector, &bf.w_noise).norm_sqr();
        (1.0 + sig / (an + noise_power_w)).log2()
    };
    RateReport::from_rates(rate(channel_user), rate(channel_eve))
}

/// The A, B, C terms of the secrecy ratio (A + B) / (A + C).
pub fn secrecy_ratio_terms(
    rhos: &CorrelationSet,
    g_user: f64,
    g_eve: f64,
    alpha: f64,
    tx_power_w: f64,
    noise_power_w: f64,
) -> (f64, f64, f64) {
    let (r1s, r2s, r3s, r4s) = (
        rhos.rho1 * rhos.rho1,
        rhos.rho2 * rhos.rho2,
        rhos.rho3 * rhos.rho3,
        rhos.rho4 * rhos.rho4,
    );
    let p = tx_power_w;
    let s2 = noise_power_w;
    let a = alpha * alpha * p * p * r2s * r4s * g_user * g_eve
        + alpha * p * s2 * (r2s * g_user + r4s * g_eve)
        + s2 * s2;
    let b = (1.0 - alpha) * p * r1s * g_user * (alpha * p * r4s * g_eve + s2);
    let c = (1.0 - alpha) * p * r3s * g_eve * (alpha * p * r2s * g_user + s2);
    (a, b, c)
}

/// Closed-form secrecy rate log2((A + B) / (A + C)), clamped at zero.
pub fn closed_form_secrecy(
    rhos: &CorrelationSet,
    g_user: f64,
    g_eve: f64,
    alpha: f64,
    tx_power_w: f64,
    noise_power_w: f64,
) -> f64 {
    let (a, b, c) = secrecy_ratio_terms(rhos, g_user, g_eve, alpha, tx_power_w, noise_power_w);
    ((a + b) / (a + c)).log2().max(0.0)
}

/// Noise-free secrecy approximation
/// log2((eta + rho1^2/rho2^2) / (eta + rho3^2/rho4^2)), eta = alpha/(1-alpha).
pub fn noise_free_secrecy(rhos: &CorrelationSet, alpha: f64) -> Result<f64> {
    if rhos.rho2 < 1e-12 {
        return Err(Error::DegenerateCorrelation("rho2"));
    }
    if rhos.rho4 < 1e-12 {
        return Err(Error::DegenerateCorrelation("rho4"));
    }
    let eta = alpha / (1.0 - alpha);
    let user_ratio = (rhos.rho1 / rhos.rho2).powi(2);
    let eve_ratio = (rhos.rho3 / rhos.rho4).powi(2);
    Ok(((eta + user_ratio) / (eta + eve_ratio)).log2().max(0.0))
}

/// Coefficients F0, F1, F2 of the derivative numerator of the secrecy ratio.
pub fn alpha_polynomial(
    rhos: &CorrelationSet,
    g_user: f64,
    g_eve: f64,
    tx_power_w: f64,
    noise_power_w: f64,
) -> AlphaPolynomial {
    let (r1s, r2s, r3s, r4s) = (
        rhos.rho1 * rhos.rho1,
        rhos.rho2 * rhos.rho2,
        rhos.rho3 * rhos.rho3,
        rhos.rho4 * rhos.rho4,
    );
    let (gb, ge) = (g_user, g_eve);
    let p = tx_power_w;
    let s2 = noise_power_w;

    let f0 = p
        * s2
        * (p * p * gb * ge * r1s * r3s * (ge * r4s - gb * r2s)
            + p * s2 * (r3s * r4s * ge * ge - r1s * r2s * gb * gb)
            + s2 * s2 * (r3s * ge - r1s * gb));
    let f1 = 2.0
        * p
        * p
        * gb
        * ge
        * s2
        * (p * gb * r1s * r2s * (r3s - r4s)
            + p * ge * r3s * r4s * (r2s - r1s)
            + s2 * (r2s * r3s - r1s * r4s));
    let f2 = p
        * p
        * p
        * gb
        * ge
        * (p * gb * ge * r2s * r4s * (r2s * r3s - r1s * r4s)
            + gb * r2s * r3s * s2 * (r2s - r1s)
            + ge * r1s * r4s * s2 * (r3s - r4s));
    AlphaPolynomial { f0, f1, f2 }
}

/// Optimal AN power fraction: the positive root of `F2 a^2 + F1 a + F0`
/// when F0 > 0, zero otherwise. Requires the concave regime f2 < 0;
/// callers fall back to a grid search on [`Error::NonConcaveAlpha`].
pub fn optimal_alpha(poly: &AlphaPolynomial) -> Result<f64> {
    if poly.f2 >= 0.0 {
        return Err(Error::NonConcaveAlpha { f2: poly.f2 });
    }
    if poly.f0 <= 0.0 {
        return Ok(0.0);
    }
    let disc = poly.f1 * poly.f1 - 4.0 * poly.f2 * poly.f0;
    // f0 > 0 and f2 < 0 force a positive discriminant.
    debug_assert!(disc >= 0.0);
    let alpha = (-poly.f1 - disc.sqrt()) / (2.0 * poly.f2);
    Ok(alpha.clamp(0.0, 1.0 - 1e-9))
}
