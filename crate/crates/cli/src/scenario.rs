//! Flat key-value scenario files: parsing, validation, and canonical
//! fingerprinting.
//!
//! The format is one `key = value` pair per line, `#` comments, units baked
//! into key names. Unknown and duplicate keys are rejected so a scenario
//! file never silently drifts from what ran.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use nfsec_core::{
    make_config, NLoSConfig, PolarPosition, RawConfig, SchemeId, SearchSettings, Spacing,
    SystemConfig,
};
use thiserror::Error;

use crate::fnv1a64;

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("{path}:{line}:{column}: {message}")]
    Parse {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid scenario: {field}: {reason}")]
    Validation { field: String, reason: String },
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, ScenarioError>;

const KNOWN_KEYS: &[&str] = &[
    "n_antennas",
    "carrier_freq_ghz",
    "element_spacing_over_lambda",
    "element_spacing_m",
    "tx_power_dbm",
    "noise_power_dbm",
    "absorption_per_m",
    "user_radius_m",
    "user_angle_rad",
    "eve_radius_m",
    "eve_angle_rad",
    "nlos_paths",
    "nlos_offset_db",
    "nlos_seed",
    "search_grid_points",
    "search_refine_tol_m",
    "schemes",
];

/// A fully validated scenario with its derived system constants.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub config: SystemConfig,
    pub user: PolarPosition,
    pub eve: PolarPosition,
    pub nlos: NLoSConfig,
    pub search: SearchSettings,
    pub schemes: Vec<SchemeId>,
}

impl Scenario {
    /// Canonical serialization used for fingerprinting; field order and
    /// formatting are fixed.
    pub fn canonical_string(&self) -> String {
        let mut s = String::new();
        let _ = write!(
            s,
            "n={};f={:.17e};d={:.17e};p={:.17e};s2={:.17e};k={:.17e};",
            self.config.n_antennas,
            self.config.carrier_freq_hz,
            self.config.element_spacing_m,
            self.config.tx_power_w,
            self.config.noise_power_w,
            self.config.absorption_per_m
        );
        let _ = write!(
            s,
            "ur={:.17e};ua={:.17e};er={:.17e};ea={:.17e};",
            self.user.radius_m, self.user.angle_rad, self.eve.radius_m, self.eve.angle_rad
        );
        let _ = write!(
            s,
            "np={};no={:.17e};ns={};sm={};st={:.17e};",
            self.nlos.num_paths,
            self.nlos.power_offset_db,
            self.nlos.rng_seed,
            self.search.grid_points,
            self.search.refine_tolerance_m
        );
        for scheme in &self.schemes {
            let _ = write!(s, "{scheme},");
        }
        s
    }

    /// FNV-1a fingerprint of the canonical serialization.
    pub fn hash(&self) -> u64 {
        fnv1a64(self.canonical_string().as_bytes())
    }
}

fn parse_value<T: std::str::FromStr>(path: &str, line: usize, key: &str, value: &str) -> Result<T> {
    value.parse().map_err(|_| ScenarioError::Parse {
        path: path.to_string(),
        line,
        column: 1,
        message: format!("cannot parse value {value:?} for key {key}"),
    })
}

/// Loads and validates a scenario file.
pub fn load_scenario(path: &Path) -> Result<Scenario> {
    let text = std::fs::read_to_string(path).map_err(|source| ScenarioError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_scenario(&text, &path.display().to_string())
}

/// Parses scenario text; `path` only labels error messages.
pub fn parse_scenario(text: &str, path: &str) -> Result<Scenario> {
    let mut pairs: BTreeMap<String, (usize, String)> = BTreeMap::new();
    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw_line.split_once('#') {
            Some((before, _)) => before,
            None => raw_line,
        };
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| ScenarioError::Parse {
            path: path.to_string(),
            line: line_no,
            column: raw_line.len() + 1,
            message: "expected `key = value`".to_string(),
        })?;
        let key = key.trim();
        let value = value.trim();
        if !KNOWN_KEYS.contains(&key) {
            return Err(ScenarioError::Parse {
                path: path.to_string(),
                line: line_no,
                column: raw_line.find(key).map_or(1, |c| c + 1),
                message: format!("unknown key {key:?}"),
            });
        }
        if pairs
            .insert(key.to_string(), (line_no, value.to_string()))
            .is_some()
        {
            return Err(ScenarioError::Parse {
                path: path.to_string(),
                line: line_no,
                column: 1,
                message: format!("duplicate key {key:?}"),
            });
        }
    }
    if pairs.is_empty() {
        return Err(ScenarioError::Parse {
            path: path.to_string(),
            line: 1,
            column: 1,
            message: "no key = value pairs found".to_string(),
        });
    }

    let take = |pairs: &mut BTreeMap<String, (usize, String)>, key: &str| pairs.remove(key);
    let require = |entry: Option<(usize, String)>, key: &str| {
        entry.ok_or_else(|| ScenarioError::Validation {
            field: key.to_string(),
            reason: "missing required key".to_string(),
        })
    };

    let (line, value) = require(take(&mut pairs, "n_antennas"), "n_antennas")?;
    let n_antennas: usize = parse_value(path, line, "n_antennas", &value)?;
    let (line, value) = require(take(&mut pairs, "carrier_freq_ghz"), "carrier_freq_ghz")?;
    let carrier_freq_ghz: f64 = parse_value(path, line, "carrier_freq_ghz", &value)?;

    let over_lambda = take(&mut pairs, "element_spacing_over_lambda");
    let meters = take(&mut pairs, "element_spacing_m");
    let spacing = match (over_lambda, meters) {
        (Some((line, value)), None) => Spacing::OverLambda(parse_value(
            path,
            line,
            "element_spacing_over_lambda",
            &value,
        )?),
        (None, Some((line, value))) => {
            Spacing::Meters(parse_value(path, line, "element_spacing_m", &value)?)
        }
        (None, None) => {
            return Err(ScenarioError::Validation {
                field: "element_spacing".to_string(),
                reason: "need element_spacing_over_lambda or element_spacing_m".to_string(),
            })
        }
        (Some(_), Some(_)) => {
            return Err(ScenarioError::Validation {
                field: "element_spacing".to_string(),
                reason: "element_spacing_over_lambda and element_spacing_m are exclusive"
                    .to_string(),
            })
        }
    };

    let (line, value) = require(take(&mut pairs, "tx_power_dbm"), "tx_power_dbm")?;
    let tx_power_dbm: f64 = parse_value(path, line, "tx_power_dbm", &value)?;
    let (line, value) = require(take(&mut pairs, "noise_power_dbm"), "noise_power_dbm")?;
    let noise_power_dbm: f64 = parse_value(path, line, "noise_power_dbm", &value)?;
    let (line, value) = require(take(&mut pairs, "absorption_per_m"), "absorption_per_m")?;
    let absorption_per_m: f64 = parse_value(path, line, "absorption_per_m", &value)?;

    let config = make_config(&RawConfig {
        n_antennas,
        carrier_freq_hz: carrier_freq_ghz * 1e9,
        spacing,
        tx_power_dbm,
        noise_power_dbm,
        absorption_per_m,
    })
    .map_err(|e| ScenarioError::Validation {
        field: "system".to_string(),
        reason: e.to_string(),
    })?;

    let position = |radius_key: &str,
                    angle_key: &str,
                    pairs: &mut BTreeMap<String, (usize, String)>|
     -> Result<PolarPosition> {
        let (line, value) = require(take(pairs, radius_key), radius_key)?;
        let radius: f64 = parse_value(path, line, radius_key, &value)?;
        let angle: f64 = match take(pairs, angle_key) {
            Some((line, value)) => parse_value(path, line, angle_key, &value)?,
            None => 0.0,
        };
        let pos = PolarPosition::new(radius, angle).map_err(|e| ScenarioError::Validation {
            field: radius_key.to_string(),
            reason: e.to_string(),
        })?;
        if radius <= config.fresnel_dist_m {
            return Err(ScenarioError::Validation {
                field: radius_key.to_string(),
                reason: format!(
                    "{radius} m is not beyond the Fresnel distance {:.4} m",
                    config.fresnel_dist_m
                ),
            });
        }
        if radius > config.rayleigh_dist_m {
            return Err(ScenarioError::Validation {
                field: radius_key.to_string(),
                reason: format!(
                    "{radius} m is beyond the Rayleigh distance {:.4} m",
                    config.rayleigh_dist_m
                ),
            });
        }
        Ok(pos)
    };
    let user = position("user_radius_m", "user_angle_rad", &mut pairs)?;
    let eve = position("eve_radius_m", "eve_angle_rad", &mut pairs)?;

    let nlos_paths: usize = match take(&mut pairs, "nlos_paths") {
        Some((line, value)) => parse_value(path, line, "nlos_paths", &value)?,
        None => 0,
    };
    let nlos_offset_db: f64 = match take(&mut pairs, "nlos_offset_db") {
        Some((line, value)) => parse_value(path, line, "nlos_offset_db", &value)?,
        None => 15.0,
    };
    let nlos_seed: u64 = match take(&mut pairs, "nlos_seed") {
        Some((line, value)) => parse_value(path, line, "nlos_seed", &value)?,
        None => 1,
    };
    let nlos = NLoSConfig::new(nlos_paths, nlos_offset_db, nlos_seed).map_err(|e| {
        ScenarioError::Validation {
            field: "nlos".to_string(),
            reason: e.to_string(),
        }
    })?;

    let mut search = SearchSettings::for_config(&config);
    if let Some((line, value)) = take(&mut pairs, "search_grid_points") {
        search.grid_points = parse_value(path, line, "search_grid_points", &value)?;
    }
    if let Some((line, value)) = take(&mut pairs, "search_refine_tol_m") {
        search.refine_tolerance_m = parse_value(path, line, "search_refine_tol_m", &value)?;
    }
    if search.grid_points < 16 {
        return Err(ScenarioError::Validation {
            field: "search_grid_points".to_string(),
            reason: format!("need at least 16, got {}", search.grid_points),
        });
    }

    let schemes: Vec<SchemeId> = match take(&mut pairs, "schemes") {
        Some((line, value)) => {
            let mut out = Vec::new();
            for name in value.split(',') {
                let scheme =
                    name.trim()
                        .parse()
                        .map_err(|e: nfsec_core::Error| ScenarioError::Parse {
                            path: path.to_string(),
                            line,
                            column: 1,
                            message: e.to_string(),
                        })?;
                if !out.contains(&scheme) {
                    out.push(scheme);
                }
            }
            out
        }
        None => SchemeId::ALL.to_vec(),
    };
    if schemes.is_empty() {
        return Err(ScenarioError::Validation {
            field: "schemes".to_string(),
            reason: "need at least one scheme".to_string(),
        });
    }

    debug_assert!(pairs.is_empty(), "unhandled keys: {pairs:?}");
    Ok(Scenario {
        config,
        user,
        eve,
        nlos,
        search,
        schemes,
    })
}
