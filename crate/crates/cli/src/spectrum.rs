//! Normalized received-power maps of a design's signal or AN beam over a
//! polar grid, for rendering focus-point figures.

use rayon::prelude::*;

use nfsec_core::{steering_vector, BeamDesign, Error, PolarPosition, Result, SystemConfig};

use crate::sweep::SweepMetadata;
use crate::thread_pool;

/// Which beam of the design to map.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WhichBeam {
    Signal,
    An,
}

impl std::fmt::Display for WhichBeam {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            WhichBeam::Signal => "signal",
            WhichBeam::An => "an",
        })
    }
}

/// Evaluation grid; defaults frame the reference focus geometry.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumGrid {
    pub r_range_m: (f64, f64),
    pub theta_range_rad: (f64, f64),
    pub r_steps: usize,
    pub theta_steps: usize,
}

impl Default for SpectrumGrid {
    fn default() -> Self {
        Self {
            r_range_m: (3.0, 7.0),
            theta_range_rad: (-0.02, 0.02),
            r_steps: 400,
            theta_steps: 200,
        }
    }
}

/// Row-major map of |h_unit(p)^H w|^2, max-normalized to exactly 1.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumResult {
    pub which: WhichBeam,
    pub r_values_m: Vec<f64>,
    pub theta_values_rad: Vec<f64>,
    /// values[i][j] at (r_values_m[i], theta_values_rad[j]).
    pub values: Vec<Vec<f64>>,
    /// Grid point attaining the (pre-normalization) maximum.
    pub peak: (f64, f64),
    pub metadata: SweepMetadata,
}

fn linspace(range: (f64, f64), steps: usize) -> Vec<f64> {
    let (lo, hi) = range;
    (0..steps)
        .map(|i| lo + (hi - lo) * i as f64 / (steps - 1) as f64)
        .collect()
}

/// Maps one beam of a computed design over the grid. The beam must carry
/// power (an all-zero AN beam cannot be normalized).
pub fn power_spectrum(
    config: &SystemConfig,
    design: &BeamDesign,
    which: WhichBeam,
    grid: &SpectrumGrid,
    metadata: SweepMetadata,
) -> Result<SpectrumResult> {
    if grid.r_steps < 2 || grid.theta_steps < 2 {
        return Err(Error::InvalidInput {
            field: "spectrum_grid",
            reason: format!("need at least 2x2 points, got {grid:?}"),
        });
    }
    if !(grid.r_range_m.0 > 0.0 && grid.r_range_m.1 > grid.r_range_m.0) {
        return Err(Error::InvalidInput {
            field: "spectrum_grid",
            reason: format!("bad radius range {:?}", grid.r_range_m),
        });
    }
    let weights = match which {
        WhichBeam::Signal => &design.beamformer.w_signal,
        WhichBeam::An => &design.beamformer.w_noise,
    };
    let beam_power: f64 = weights.iter().map(|e| e.norm_sqr()).sum();
    if beam_power <= 0.0 {
        return Err(Error::InvalidInput {
            field: "beam",
            reason: format!("{which} beam carries no power"),
        });
    }

    let r_values = linspace(grid.r_range_m, grid.r_steps);
    let theta_values = linspace(grid.theta_range_rad, grid.theta_steps);
    let sqrt_n = (config.n_antennas as f64).sqrt();

    let mut values: Vec<Vec<f64>> = thread_pool().install(|| {
        r_values
            .par_iter()
            .map(|&r| {
                theta_values
                    .iter()
                    .map(|&theta| {
                        let pos = PolarPosition::new(r, theta).expect("grid point");
                        let sv = steering_vector(config, &pos);
                        let dot: num_complex::Complex64 = sv
                            .entries
                            .iter()
                            .zip(weights.iter())
                            .map(|(h, w)| h.conj() * w)
                            .sum();
                        (dot / sqrt_n).norm_sqr()
                    })
                    .collect::<Vec<f64>>()
            })
            .collect()
    });

    let mut max = (f64::NEG_INFINITY, 0usize, 0usize);
    for (i, row) in values.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            if v > max.0 {
                max = (v, i, j);
            }
        }
    }
    for row in values.iter_mut() {
        for v in row.iter_mut() {
            *v /= max.0;
        }
    }

    Ok(SpectrumResult {
        which,
        peak: (r_values[max.1], theta_values[max.2]),
        r_values_m: r_values,
        theta_values_rad: theta_values,
        values,
        metadata,
    })
}
