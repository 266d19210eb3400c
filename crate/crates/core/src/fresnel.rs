//! Fresnel integrals, exact steering-vector correlations, and the
//! closed-form near-field correlation approximations driven by the
//! beta parameters.
//!
//! The correlation of two near-field points is the normalized inner-product
//! magnitude of their steering vectors, `|h^H(a) h(b)| / N`, always in
//! (0, 1] and equal to 1 only for coincident points. For points whose phase
//! curvature differs, the sum telescopes into Fresnel integrals of the
//! beta parameters; those closed forms drive the 1-D focus searches.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::model::{steering_vector, PolarPosition, SystemConfig};

/// Correlations of user and eavesdropper against the two focus points:
/// rho1 = (user, Q_S), rho2 = (user, Q_A), rho3 = (eve, Q_S),
/// rho4 = (eve, Q_A).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationSet {
    pub rho1: f64,
    pub rho2: f64,
    pub rho3: f64,
    pub rho4: f64,
}

impl CorrelationSet {
    pub fn new(rho1: f64, rho2: f64, rho3: f64, rho4: f64) -> Result<Self> {
        for (name, rho) in [
            ("rho1", rho1),
            ("rho2", rho2),
            ("rho3", rho3),
            ("rho4", rho4),
        ] {
            if !(rho.is_finite() && rho > 0.0 && rho <= 1.0 + 1e-9) {
                return Err(Error::InvalidInput {
                    field: "correlation",
                    reason: format!("{name} = {rho} outside (0, 1]"),
                });
            }
        }
        Ok(Self {
            rho1: rho1.min(1.0),
            rho2: rho2.min(1.0),
            rho3: rho3.min(1.0),
            rho4: rho4.min(1.0),
        })
    }
}

/// Beta parameters of one (reference, other, focus) geometry.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BetaParams {
    pub beta1: f64,
    pub beta2: f64,
    pub beta3: f64,
}

/// Selects exact inner-product correlations or their Fresnel approximations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CorrelationMode {
    Exact,
    Approx,
}

// --- Fresnel integrals -----------------------------------------------------

// Series is used for x^2 <= SERIES_CUTOFF_SQ; beyond it the auxiliary
// functions are evaluated from Chebyshev fits on u = 1/(pi x^2).
const SERIES_CUTOFF_SQ: f64 = 2.5625;
const AUX_UMAX: f64 = 0.12433979929054323;
// Beyond this the phase pi*x^2/2 is unresolvable in f64; C and S have
// settled to within ~1e-5 of 1/2 there.
const LIMIT_CUTOFF: f64 = 36974.0;

// Chebyshev coefficients of pi*x*f(x) over u = 1/(pi x^2) in [0, AUX_UMAX],
// where C(x) = 1/2 + f sin(pi x^2/2) - g cos(pi x^2/2) and
// S(x) = 1/2 - f cos(pi x^2/2) - g sin(pi x^2/2). Max fit error ~3e-15.
#[allow(clippy::excessive_precision)] // generated at full length
const AUX_F: [f64; 25] = [
    9.86336320144088674e-01,
    -1.74347119356678959e-02,
    -3.28433232959921559e-03,
    4.79176000178688222e-04,
    -1.86196198025228150e-05,
    -8.15091854017101774e-06,
    2.58772678888822585e-06,
    -3.92529350037384282e-07,
    -2.15124327902022921e-09,
    2.28368766289444839e-08,
    -8.49972685124449137e-09,
    1.84215176786898930e-09,
    -1.40950911283591975e-10,
    -8.88297142046920802e-11,
    5.47657968903269327e-11,
    -1.87430953727322930e-11,
    4.16375494724679752e-12,
    -2.41537909380075724e-13,
    -3.27850644075751368e-13,
    2.13359368635159195e-13,
    -8.46313432962210622e-14,
    2.36965973590348317e-14,
    -3.56998858633681524e-15,
    -9.08826988360450790e-16,
    9.16708302871478910e-16,
];

// Chebyshev coefficients of pi*x*g(x)/u over the same domain.
#[allow(clippy::excessive_precision)]
const AUX_G: [f64; 25] = [
    9.40999956696428219e-01,
    -7.32380149596534719e-02,
    -1.10808821638529575e-02,
    2.94489948324824259e-03,
    -2.78995179386944082e-04,
    -3.80603343051790034e-05,
    2.31347749560005779e-05,
    -5.40279175216407019e-06,
    5.17417144628055925e-07,
    1.65761373942336172e-07,
    -1.06644475794792033e-07,
    3.31645966830693549e-08,
    -5.96302761051540521e-09,
    -2.18516737284298289e-10,
    7.01203935556456569e-10,
    -3.43459392229796235e-10,
    1.08495872001451310e-10,
    -2.09418288902910516e-11,
    -1.01730594007913614e-12,
    3.21498963048214113e-12,
    -1.80893011290603997e-12,
    6.86439100868604910e-13,
    -1.83343422574786277e-13,
    2.21523882994672962e-14,
    7.74100490267111386e-15,
];

fn clenshaw(coeffs: &[f64], t: f64) -> f64 {
    let mut b1 = 0.0;
    let mut b2 = 0.0;
    for &c in coeffs.iter().skip(1).rev() {
        let next = 2.0 * t * b1 - b2 + c;
        b2 = b1;
        b1 = next;
    }
    t * b1 - b2 + coeffs[0]
}

/// Both Fresnel integrals at once: (C(x), S(x)).
pub fn fresnel(x: f64) -> (f64, f64) {
    if x == 0.0 {
        return (0.0, 0.0);
    }
    let sign = if x < 0.0 { -1.0 } else { 1.0 };
    let ax = x.abs();
    let x2 = ax * ax;

    if x2 <= SERIES_CUTOFF_SQ {
        let (c, s) = fresnel_series(ax, x2);
        return (sign * c, sign * s);
    }
    if ax > LIMIT_CUTOFF {
        return (sign * 0.5, sign * 0.5);
    }
    let u = 1.0 / (PI * x2);
    let t = 2.0 * u / AUX_UMAX - 1.0;
    let f = clenshaw(&AUX_F, t) / (PI * ax);
    let g = u * clenshaw(&AUX_G, t) / (PI * ax);
    let z = 0.5 * PI * x2;
    let (sz, cz) = z.sin_cos();
    (
        sign * (0.5 + f * sz - g * cz),
        sign * (0.5 - f * cz - g * sz),
    )
}

// Maclaurin series with t = pi x^2 / 2:
// C(x) = x sum (-1)^k t^{2k} / ((2k)! (4k+1))
// S(x) = x sum (-1)^k t^{2k+1} / ((2k+1)! (4k+3))
fn fresnel_series(ax: f64, x2: f64) -> (f64, f64) {
    let t = 0.5 * PI * x2;
    let t2 = t * t;
    let mut c_sum = 0.0;
    let mut s_sum = 0.0;
    let mut u = 1.0; // t^{2k} / (2k)!
    let mut v = t; // t^{2k+1} / (2k+1)!
    let mut k = 0usize;
    loop {
        let kc = 4 * k + 1;
        let ks = 4 * k + 3;
        c_sum += u / kc as f64;
        s_sum += v / ks as f64;
        if u.abs().max(v.abs()) < 1e-17 || k > 60 {
            break;
        }
        let k2 = 2.0 * k as f64;
        u *= -t2 / ((k2 + 1.0) * (k2 + 2.0));
        v *= -t2 / ((k2 + 2.0) * (k2 + 3.0));
        k += 1;
    }
    (ax * c_sum, ax * s_sum)
}

/// Fresnel cosine integral C(x) = integral of cos(pi t^2 / 2) over [0, x].
pub fn fresnel_c(x: f64) -> f64 {
    fresnel(x).0
}

/// Fresnel sine integral S(x) = integral of sin(pi t^2 / 2) over [0, x].
pub fn fresnel_s(x: f64) -> f64 {
    fresnel(x).1
}

// --- Exact correlation -----------------------------------------------------

/// Exact normalized correlation `|h^H(a) h(b)| / N` of the steering vectors
/// of two points. Symmetric in its arguments; 1 exactly for equal points.
pub fn correlation_exact(config: &SystemConfig, a: &PolarPosition, b: &PolarPosition) -> f64 {
    if a == b {
        return 1.0;
    }
    let sa = steering_vector(config, a);
    let sb = steering_vector(config, b);
    let mut acc = Complex64::new(0.0, 0.0);
    for (ea, eb) in sa.entries.iter().zip(sb.entries.iter()) {
        acc += ea.conj() * eb;
    }
    (acc.norm() / config.n_antennas as f64).min(1.0)
}

// --- Beta parameters and approximate correlations ---------------------------

/// Beta parameter of an angle-aligned pair: reference radius vs focus radius
/// at a common direction cosine.
pub fn beta_aligned(config: &SystemConfig, r_ref: f64, r_focus: f64, cosine: f64) -> f64 {
    let radicand =
        config.element_spacing_m * ((1.0 - cosine * cosine) * (1.0 / r_ref - 1.0 / r_focus)).abs();
    0.5 * config.n_antennas as f64 * radicand.sqrt()
}

/// Beta parameters (beta2, beta3) of a cross pair: another receiver against
/// a focus point with its own angle.
///
/// Errors with [`Error::CoincidentPoint`] when the curvature term vanishes,
/// where the Fresnel form is inapplicable (for truly coincident points the
/// correlation is 1 by definition).
pub fn beta_cross(
    config: &SystemConfig,
    other: &PolarPosition,
    focus: &PolarPosition,
) -> Result<(f64, f64)> {
    let co = other.direction_cosine();
    let cf = focus.direction_cosine();
    let radicand = config.element_spacing_m
        * ((1.0 - co * co) / other.radius_m - (1.0 - cf * cf) / focus.radius_m).abs();
    if radicand <= 0.0 {
        return Err(Error::CoincidentPoint(format!(
            "({}, {}) and ({}, {}) share the same phase curvature",
            other.radius_m, other.angle_rad, focus.radius_m, focus.angle_rad
        )));
    }
    let root = radicand.sqrt();
    let beta2 = (co - cf) / root;
    let beta3 = 0.5 * config.n_antennas as f64 * root;
    Ok((beta2, beta3))
}

/// Aligned-pair correlation approximation |C(b1) + j S(b1)| / b1, continuous
/// at b1 = 0 with value 1.
pub fn rho_aligned_approx(beta1: f64) -> f64 {
    debug_assert!(beta1 >= 0.0);
    if beta1 < 1e-4 {
        // Leading series term: 1 - (pi^2/45) beta1^4, below 1 ulp here.
        return 1.0;
    }
    let (c, s) = fresnel(beta1);
    (c.hypot(s) / beta1).min(1.0)
}

/// Cross-pair correlation approximation
/// |Ctilde(b2, b3) + j Stilde(b2, b3)| / (2 b3) with
/// Ctilde = C(b2 + b3) - C(b2 - b3) and Stilde likewise.
pub fn rho_cross_approx(beta2: f64, beta3: f64) -> Result<f64> {
    if !(beta3 >= 0.0 && beta3.is_finite() && beta2.is_finite()) {
        return Err(Error::InvalidInput {
            field: "beta",
            reason: format!("beta2 = {beta2}, beta3 = {beta3}"),
        });
    }
    if beta2.abs() > 3.0e4 {
        // The phase pi*beta2^2/2 exceeds f64 resolution; only a vanishing
        // curvature gap produces this.
        return Err(Error::CoincidentPoint(format!(
            "curvature gap unresolvable (beta2 = {beta2:.3e})"
        )));
    }
    if beta3 < 1e-8 {
        // Derivative limit of the Fresnel differences: modulus -> 1.
        return Ok(1.0);
    }
    let (cp, sp) = fresnel(beta2 + beta3);
    let (cm, sm) = fresnel(beta2 - beta3);
    Ok(((cp - cm).hypot(sp - sm) / (2.0 * beta3)).min(1.0))
}

/// The full beta set of one focusing geometry: a focus on the reference
/// receiver's ray at `focus_radius_m`, evaluated against both the reference
/// (beta1) and the other receiver (beta2, beta3).
pub fn beta_params(
    config: &SystemConfig,
    reference: &PolarPosition,
    other: &PolarPosition,
    focus_radius_m: f64,
) -> Result<BetaParams> {
    let focus = PolarPosition::new(focus_radius_m, reference.angle_rad)?;
    let beta1 = beta_aligned(
        config,
        reference.radius_m,
        focus_radius_m,
        reference.direction_cosine(),
    );
    let (beta2, beta3) = beta_cross(config, other, &focus)?;
    Ok(BetaParams {
        beta1,
        beta2,
        beta3,
    })
}

/// Approximate correlation of an arbitrary pair of points, dispatching to
/// the aligned form when the angles coincide.
pub fn correlation_approx(
    config: &SystemConfig,
    a: &PolarPosition,
    b: &PolarPosition,
) -> Result<f64> {
    if a.angle_rad == b.angle_rad {
        Ok(rho_aligned_approx(beta_aligned(
            config,
            a.radius_m,
            b.radius_m,
            a.direction_cosine(),
        )))
    } else {
        let (beta2, beta3) = beta_cross(config, a, b)?;
        rho_cross_approx(beta2, beta3)
    }
}

/// The four correlations of a scenario, in the selected mode.
pub fn correlation_set(
    config: &SystemConfig,
    user: &PolarPosition,
    eve: &PolarPosition,
    qs: &PolarPosition,
    qa: &PolarPosition,
    mode: CorrelationMode,
) -> Result<CorrelationSet> {
    let rho = |a: &PolarPosition, b: &PolarPosition| -> Result<f64> {
        match mode {
            CorrelationMode::Exact => Ok(correlation_exact(config, a, b)),
            CorrelationMode::Approx => correlation_approx(config, a, b),
        }
    };
    CorrelationSet::new(rho(user, qs)?, rho(user, qa)?, rho(eve, qs)?, rho(eve, qa)?)
}
