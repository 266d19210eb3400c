//! Array geometry, unit handling, near-field steering vectors, and channel
//! synthesis (line-of-sight plus an optional simplified stochastic
//! non-line-of-sight component).
//!
//! The array is a symmetric uniform linear array along the y-axis centered at
//! the origin; element `n` sits at `(0, delta_n * d)` with
//! `delta_n = n - (N-1)/2` for `n in 0..N`. Receivers and focus points are
//! polar `(radius, angle)` pairs, the angle measured from the x-axis.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::SPEED_OF_LIGHT;

/// Array, carrier, power and absorption parameters plus derived constants.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemConfig {
    /// Number of antenna elements, N >= 2.
    pub n_antennas: usize,
    /// Carrier frequency, Hz.
    pub carrier_freq_hz: f64,
    /// Element spacing, m.
    pub element_spacing_m: f64,
    /// Total transmit power, W.
    pub tx_power_w: f64,
    /// Receiver noise power, W.
    pub noise_power_w: f64,
    /// Molecular absorption coefficient at the carrier, 1/m.
    pub absorption_per_m: f64,
    /// Wavelength, m (derived).
    pub wavelength_m: f64,
    /// Array aperture (N-1)*d, m (derived).
    pub aperture_m: f64,
    /// Fresnel distance 0.62*sqrt(D^3/lambda), m (derived).
    pub fresnel_dist_m: f64,
    /// Rayleigh distance 2*D^2/lambda, m (derived).
    pub rayleigh_dist_m: f64,
    /// Non-fatal conditions noticed while building the config.
    pub warnings: Vec<String>,
}

/// Element spacing given either in absolute meters or as a fraction of the
/// carrier wavelength.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Spacing {
    Meters(f64),
    OverLambda(f64),
}

/// Raw inputs for [`make_config`]; powers in dBm, spacing in either unit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RawConfig {
    pub n_antennas: usize,
    pub carrier_freq_hz: f64,
    pub spacing: Spacing,
    pub tx_power_dbm: f64,
    pub noise_power_dbm: f64,
    pub absorption_per_m: f64,
}

/// dBm to watts.
pub fn dbm_to_watts(dbm: f64) -> f64 {
    10f64.powf((dbm - 30.0) / 10.0)
}

/// Builds a [`SystemConfig`] from raw parameters, converting dBm powers to
/// watts and populating the derived constants.
pub fn make_config(raw: &RawConfig) -> Result<SystemConfig> {
    if raw.n_antennas < 2 {
        return Err(Error::InvalidInput {
            field: "n_antennas",
            reason: format!("need at least 2 elements, got {}", raw.n_antennas),
        });
    }
    if !(raw.carrier_freq_hz.is_finite() && raw.carrier_freq_hz > 0.0) {
        return Err(Error::InvalidInput {
            field: "carrier_freq_hz",
            reason: format!("must be finite and positive, got {}", raw.carrier_freq_hz),
        });
    }
    if !raw.absorption_per_m.is_finite() || raw.absorption_per_m < 0.0 {
        return Err(Error::InvalidInput {
            field: "absorption_per_m",
            reason: format!("must be finite and >= 0, got {}", raw.absorption_per_m),
        });
    }
    if !raw.tx_power_dbm.is_finite() || !raw.noise_power_dbm.is_finite() {
        return Err(Error::InvalidInput {
            field: "power_dbm",
            reason: "tx and noise powers must be finite".into(),
        });
    }
    let wavelength_m = SPEED_OF_LIGHT / raw.carrier_freq_hz;
    let element_spacing_m = match raw.spacing {
        Spacing::Meters(d) => d,
        Spacing::OverLambda(x) => x * wavelength_m,
    };
    if !(element_spacing_m.is_finite() && element_spacing_m > 0.0) {
        return Err(Error::InvalidInput {
            field: "element_spacing",
            reason: format!("must be finite and positive, got {element_spacing_m}"),
        });
    }
    let tx_power_w = dbm_to_watts(raw.tx_power_dbm);
    let noise_power_w = dbm_to_watts(raw.noise_power_dbm);

    let aperture_m = (raw.n_antennas as f64 - 1.0) * element_spacing_m;
    let rayleigh_dist_m = 2.0 * aperture_m * aperture_m / wavelength_m;
    let fresnel_dist_m = 0.62 * (aperture_m.powi(3) / wavelength_m).sqrt();

    let mut warnings = Vec::new();
    if noise_power_w >= tx_power_w {
        warnings.push(format!(
            "noise power {noise_power_w:.3e} W is not below tx power {tx_power_w:.3e} W"
        ));
    }
    if fresnel_dist_m >= rayleigh_dist_m {
        // Happens only for tiny apertures; the near-field annulus is empty.
        warnings.push(format!(
            "Fresnel distance {fresnel_dist_m:.3e} m >= Rayleigh distance {rayleigh_dist_m:.3e} m"
        ));
    }

    Ok(SystemConfig {
        n_antennas: raw.n_antennas,
        carrier_freq_hz: raw.carrier_freq_hz,
        element_spacing_m,
        tx_power_w,
        noise_power_w,
        absorption_per_m: raw.absorption_per_m,
        wavelength_m,
        aperture_m,
        fresnel_dist_m,
        rayleigh_dist_m,
        warnings,
    })
}

/// Polar position of a receiver, focus point, or scatterer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarPosition {
    /// Radial distance from the array center, m. Always > 0.
    pub radius_m: f64,
    /// Physical angle from the x-axis, rad. Always in (-pi/2, pi/2).
    pub angle_rad: f64,
}

impl PolarPosition {
    pub fn new(radius_m: f64, angle_rad: f64) -> Result<Self> {
        if !(radius_m.is_finite() && radius_m > 0.0) {
            return Err(Error::InvalidInput {
                field: "radius_m",
                reason: format!("must be finite and positive, got {radius_m}"),
            });
        }
        if !(angle_rad.is_finite() && angle_rad > -PI / 2.0 && angle_rad < PI / 2.0) {
            return Err(Error::InvalidInput {
                field: "angle_rad",
                reason: format!("must lie in (-pi/2, pi/2), got {angle_rad}"),
            });
        }
        Ok(Self {
            radius_m,
            angle_rad,
        })
    }

    /// Direction cosine along the array axis, sin(angle).
    pub fn direction_cosine(&self) -> f64 {
        self.angle_rad.sin()
    }
}

/// Unit-modulus near-field steering vector of one point.
#[derive(Debug, Clone, PartialEq)]
pub struct SteeringVector {
    pub entries: Vec<Complex64>,
}

impl SteeringVector {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Complex channel of one receiver: the vector itself, the LoS path-loss
/// coefficient, and the array gain g = N*|h_LoS|^2.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelState {
    pub vector: Vec<Complex64>,
    pub los_coeff: Complex64,
    pub array_gain: f64,
}

/// Simplified stochastic NLoS component: `num_paths` scatterers drawn in the
/// near-field annulus, each with a complex gain 10^(-offset/10) below the
/// LoS power on average.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NLoSConfig {
    pub num_paths: usize,
    pub power_offset_db: f64,
    pub rng_seed: u64,
}

impl NLoSConfig {
    /// LoS-only channel: no scatterers.
    pub fn disabled() -> Self {
        Self {
            num_paths: 0,
            power_offset_db: 15.0,
            rng_seed: 0,
        }
    }

    pub fn new(num_paths: usize, power_offset_db: f64, rng_seed: u64) -> Result<Self> {
        if num_paths > 0 && !(power_offset_db.is_finite() && power_offset_db > 0.0) {
            return Err(Error::InvalidInput {
                field: "power_offset_db",
                reason: format!("must be finite and positive, got {power_offset_db}"),
            });
        }
        Ok(Self {
            num_paths,
            power_offset_db,
            rng_seed,
        })
    }
}

/// Signed element offsets along the array axis, `delta_n * d` in meters for
/// `n = 0..N-1`. Symmetric about the array center, so they sum to zero.
pub fn element_offsets(config: &SystemConfig) -> Vec<f64> {
    let half = (config.n_antennas as f64 - 1.0) / 2.0;
    (0..config.n_antennas)
        .map(|n| (n as f64 - half) * config.element_spacing_m)
        .collect()
}

/// Distance from the element at axial offset `offset_m` to the point `pos`:
/// sqrt(r^2 + offset^2 - 2*r*offset*sin(theta)).
pub fn element_distance(pos: &PolarPosition, offset_m: f64) -> f64 {
    let r = pos.radius_m;
    (r * r + offset_m * offset_m - 2.0 * r * offset_m * pos.angle_rad.sin()).sqrt()
}

/// Near-field steering vector of `pos`: entry n is
/// exp(-j * (2*pi/lambda) * r_n) with r_n the element-to-point distance.
pub fn steering_vector(config: &SystemConfig, pos: &PolarPosition) -> SteeringVector {
    let k = 2.0 * PI / config.wavelength_m;
    let entries = element_offsets(config)
        .iter()
        .map(|&off| {
            let phase = -k * element_distance(pos, off);
            Complex64::new(phase.cos(), phase.sin())
        })
        .collect();
    SteeringVector { entries }
}

/// LoS path-loss coefficient lambda/(4*pi*r) * exp(-K*r/2) toward `pos`.
pub fn los_coefficient(config: &SystemConfig, pos: &PolarPosition) -> f64 {
    config.wavelength_m / (4.0 * PI * pos.radius_m)
        * (-0.5 * config.absorption_per_m * pos.radius_m).exp()
}

/// Pure line-of-sight channel toward `pos`.
pub fn los_channel(config: &SystemConfig, pos: &PolarPosition) -> ChannelState {
    let coeff = los_coefficient(config, pos);
    let steering = steering_vector(config, pos);
    let vector = steering.entries.iter().map(|e| coeff * e).collect();
    ChannelState {
        vector,
        los_coeff: Complex64::new(coeff, 0.0),
        array_gain: config.n_antennas as f64 * coeff * coeff,
    }
}

/// Channel toward `pos` with `nlos.num_paths` additional scattered paths.
///
/// Each scatterer is drawn (deterministically from `nlos.rng_seed`) uniformly
/// in angle over (-pi/3, pi/3) and in radius over [d_F, min(d_R, 20 m)]; its
/// complex gain is circularly-symmetric Gaussian with average power
/// 10^(-offset/10) * |h_LoS|^2. The same seed always yields the same vector.
pub fn full_channel(config: &SystemConfig, pos: &PolarPosition, nlos: &NLoSConfig) -> ChannelState {
    let mut channel = los_channel(config, pos);
    if nlos.num_paths == 0 {
        return channel;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(nlos.rng_seed);
    let los_power = channel.los_coeff.norm_sqr();
    // Per-component std dev of CN(0, sigma^2) with sigma^2 the path power.
    let component_std = (10f64.powf(-nlos.power_offset_db / 10.0) * los_power / 2.0).sqrt();
    let r_max = config.rayleigh_dist_m.min(20.0);
    for _ in 0..nlos.num_paths {
        let radius = rng.random_range(config.fresnel_dist_m..r_max);
        let angle = rng.random_range(-PI / 3.0..PI / 3.0);
        let re: f64 = StandardNormal.sample(&mut rng);
        let im: f64 = StandardNormal.sample(&mut rng);
        let gain = Complex64::new(re * component_std, im * component_std);
        let scatterer = PolarPosition {
            radius_m: radius,
            angle_rad: angle,
        };
        let path = steering_vector(config, &scatterer);
        for (v, e) in channel.vector.iter_mut().zip(path.entries.iter()) {
            *v += gain * e;
        }
    }
    channel
}
