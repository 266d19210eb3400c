use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use nfsec_cli::csvout::{emit_csv, emit_spectrum_csv, format_value, render_csv};
use nfsec_cli::scenario::{load_scenario, Scenario};
use nfsec_cli::spectrum::{power_spectrum, SpectrumGrid, WhichBeam};
use nfsec_cli::sweep::{sweep_alpha, sweep_re, SweepMetadata, SweepResult};
use nfsec_cli::TOOL_VERSION;
use nfsec_core::{
    alpha_polynomial, build_design, closed_form_secrecy, correlation_set, design_proposed,
    los_channel, mrt_beamformers, optimal_alpha, rates_direct, CorrelationMode, CorrelationSet,
    PolarPosition, SchemeId,
};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Near-field terahertz secrecy simulator: focusing design, sweeps, and
/// power-spectrum maps.
#[derive(Parser)]
#[command(name = "nfsec", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Scenario file (flat key = value format).
    #[arg(long)]
    scenario: PathBuf,
    /// Override the scenario's NLoS seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Comma-separated scheme subset (proposed, signal_only, nullspace_an,
    /// an_at_eve, oracle).
    #[arg(long)]
    schemes: Option<String>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum BeamArg {
    Signal,
    An,
}

#[derive(Subcommand)]
enum Command {
    /// Build every requested scheme and report focus points and rates.
    Design {
        #[command(flatten)]
        common: Common,
        /// Write the per-scheme table as CSV.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Evaluate correlations exactly (default).
        #[arg(long, conflicts_with = "approx")]
        exact: bool,
        /// Evaluate correlations with the Fresnel closed forms.
        #[arg(long)]
        approx: bool,
    },
    /// Secrecy rate of each scheme versus the forced AN power fraction.
    SweepAlpha {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        out: PathBuf,
        /// Number of alpha grid points in [0, 1).
        #[arg(long, default_value_t = 101)]
        alpha_steps: usize,
        #[arg(long, conflicts_with = "approx")]
        exact: bool,
        #[arg(long)]
        approx: bool,
    },
    /// Secrecy rate of each scheme versus the eavesdropper radius.
    SweepRe {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 3.0)]
        re_min: f64,
        #[arg(long, default_value_t = 10.0)]
        re_max: f64,
        #[arg(long, default_value_t = 36)]
        re_steps: usize,
        /// Monte Carlo draws per point when the scenario has NLoS paths.
        #[arg(long, default_value_t = 500)]
        realizations: usize,
    },
    /// Normalized power map of the proposed design's signal or AN beam.
    Spectrum {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum)]
        which: BeamArg,
        #[arg(long, default_value_t = 3.0)]
        r_min: f64,
        #[arg(long, default_value_t = 7.0)]
        r_max: f64,
        #[arg(long, default_value_t = -0.02)]
        theta_min: f64,
        #[arg(long, default_value_t = 0.02)]
        theta_max: f64,
        #[arg(long, default_value_t = 400)]
        r_steps: usize,
        #[arg(long, default_value_t = 200)]
        theta_steps: usize,
    },
    /// Run the closed-form/direct equivalence and split-optimality checks.
    Validate {
        #[command(flatten)]
        common: Common,
        /// Random scenarios per check.
        #[arg(long, default_value_t = 200)]
        cases: usize,
    },
}

fn load(common: &Common) -> Result<Scenario, String> {
    let mut scenario = load_scenario(&common.scenario).map_err(|e| e.to_string())?;
    if let Some(seed) = common.seed {
        scenario.nlos.rng_seed = seed;
    }
    if let Some(list) = &common.schemes {
        let mut schemes = Vec::new();
        for name in list.split(',') {
            let scheme: SchemeId = name.trim().parse().map_err(|e| format!("{e}"))?;
            if !schemes.contains(&scheme) {
                schemes.push(scheme);
            }
        }
        if schemes.is_empty() {
            return Err("--schemes must name at least one scheme".to_string());
        }
        scenario.schemes = schemes;
    }
    Ok(scenario)
}

fn mode_of(exact: bool, approx: bool) -> CorrelationMode {
    let _ = exact;
    if approx {
        CorrelationMode::Approx
    } else {
        CorrelationMode::Exact
    }
}

fn run_design(
    scenario: &Scenario,
    out: Option<&PathBuf>,
    mode: CorrelationMode,
) -> Result<(), String> {
    let cfg = &scenario.config;
    println!(
        "scenario {:016x}: N={} f={} GHz d_F={:.4} m d_R={:.4} m",
        scenario.hash(),
        cfg.n_antennas,
        cfg.carrier_freq_hz / 1e9,
        cfg.fresnel_dist_m,
        cfg.rayleigh_dist_m
    );
    for warning in &cfg.warnings {
        eprintln!("warning: {warning}");
    }
    println!(
        "user ({:.4} m, {:.6} rad)  eve ({:.4} m, {:.6} rad)",
        scenario.user.radius_m,
        scenario.user.angle_rad,
        scenario.eve.radius_m,
        scenario.eve.angle_rad
    );
    println!(
        "{:<13} {:>10} {:>10} {:>10} {:>10} {:>10} {:>10}",
        "scheme", "r_s_m", "r_a_m", "alpha", "R_user", "R_eve", "R_secrecy"
    );

    let mut rows = Vec::new();
    for &scheme in &scenario.schemes {
        let design = build_design(scheme, cfg, &scenario.user, &scenario.eve)
            .map_err(|e| format!("{scheme}: {e}"))?;
        let (rate_user, rate_eve, secrecy) = match mode {
            CorrelationMode::Exact => (
                design.rate.rate_user,
                design.rate.rate_eve,
                design.rate.secrecy_rate,
            ),
            CorrelationMode::Approx => {
                // Re-evaluate the rate from Fresnel-approximated correlations.
                let rhos = correlation_set(
                    cfg,
                    &scenario.user,
                    &scenario.eve,
                    &design.qs,
                    &design.qa,
                    CorrelationMode::Approx,
                )
                .map_err(|e| format!("{scheme}: {e}"))?;
                let secrecy = closed_form_secrecy(
                    &rhos,
                    los_channel(cfg, &scenario.user).array_gain,
                    los_channel(cfg, &scenario.eve).array_gain,
                    design.alpha,
                    cfg.tx_power_w,
                    cfg.noise_power_w,
                );
                (f64::NAN, f64::NAN, secrecy)
            }
        };
        println!(
            "{:<13} {:>10.4} {:>10.4} {:>10.6} {:>10.4} {:>10.4} {:>10.4}",
            scheme.name(),
            design.qs.radius_m,
            design.qa.radius_m,
            design.alpha,
            rate_user,
            rate_eve,
            secrecy
        );
        rows.push((scheme, design, secrecy));
    }

    if let Some(path) = out {
        let result = SweepResult {
            axis_name: "scheme_index".to_string(),
            axis_values: (0..rows.len()).map(|i| i as f64).collect(),
            schemes: rows.iter().map(|(s, _, _)| *s).collect(),
            rates: vec![rows.iter().map(|(_, _, r)| *r).collect()],
            metadata: metadata_for(scenario),
        };
        // One row of secrecy rates, scheme per column.
        let mut text = render_csv(&SweepResult {
            axis_values: vec![0.0],
            ..result
        });
        text.push_str("# columns: scheme, r_s_m, r_a_m, alpha, secrecy_rate\n");
        for (scheme, design, secrecy) in &rows {
            text.push_str(&format!(
                "# {},{},{},{},{}\n",
                scheme,
                format_value(design.qs.radius_m),
                format_value(design.qa.radius_m),
                format_value(design.alpha),
                format_value(*secrecy)
            ));
        }
        std::fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display()))?;
    }
    Ok(())
}

fn metadata_for(scenario: &Scenario) -> SweepMetadata {
    SweepMetadata {
        scenario_hash: scenario.hash(),
        seed: scenario.nlos.rng_seed,
        tool_version: TOOL_VERSION.to_string(),
        closed_form_alpha: None,
    }
}

fn run_validate(scenario: &Scenario, cases: usize) -> Result<(), String> {
    let cfg = &scenario.config;
    let mut rng = ChaCha8Rng::seed_from_u64(scenario.nlos.rng_seed);
    let position = |rng: &mut ChaCha8Rng| {
        let r = rng.random_range(cfg.fresnel_dist_m * 1.05..cfg.rayleigh_dist_m.min(30.0));
        let theta = rng.random_range(-0.3..0.3);
        PolarPosition::new(r, theta).unwrap()
    };

    // Closed-form rate against direct beamformer evaluation.
    let mut equiv_pass = 0;
    for _ in 0..cases {
        let user = position(&mut rng);
        let eve = position(&mut rng);
        let qs = position(&mut rng);
        let qa = position(&mut rng);
        let alpha = rng.random_range(0.0..0.95);
        let rhos = correlation_set(cfg, &user, &eve, &qs, &qa, CorrelationMode::Exact)
            .map_err(|e| e.to_string())?;
        let user_channel = los_channel(cfg, &user);
        let eve_channel = los_channel(cfg, &eve);
        let closed = closed_form_secrecy(
            &rhos,
            user_channel.array_gain,
            eve_channel.array_gain,
            alpha,
            cfg.tx_power_w,
            cfg.noise_power_w,
        );
        let bf = mrt_beamformers(cfg, &qs, &qa, alpha).map_err(|e| e.to_string())?;
        let direct = rates_direct(&user_channel, &eve_channel, &bf, cfg.noise_power_w);
        if (closed - direct.secrecy_rate).abs() < 1e-9 {
            equiv_pass += 1;
        }
    }
    println!("closed-form vs direct rates: {equiv_pass}/{cases} within 1e-9");

    // Closed-form split against a dense grid argmax.
    let mut split_total = 0;
    let mut split_pass = 0;
    while split_total < cases {
        let rho1: f64 = rng.random_range(0.1..1.0);
        let rho2 = (rho1 * rng.random_range(0.01..0.999)).max(1e-4);
        let rho4: f64 = rng.random_range(0.1..1.0);
        let rho3 = (rho4 * rng.random_range(0.01..0.999)).max(1e-4);
        let rhos = CorrelationSet::new(rho1, rho2, rho3, rho4).map_err(|e| e.to_string())?;
        let g_user = 10f64.powf(rng.random_range(-9.0..-5.0));
        let g_eve = 10f64.powf(rng.random_range(-9.0..-5.0));
        let poly = alpha_polynomial(&rhos, g_user, g_eve, cfg.tx_power_w, cfg.noise_power_w);
        if poly.f0 <= 0.0 {
            continue;
        }
        let alpha = optimal_alpha(&poly).map_err(|e| e.to_string())?;
        let rate_closed = closed_form_secrecy(
            &rhos,
            g_user,
            g_eve,
            alpha,
            cfg.tx_power_w,
            cfg.noise_power_w,
        );
        if rate_closed <= 0.0 {
            continue;
        }
        split_total += 1;
        let mut best = (f64::NEG_INFINITY, 0.0);
        for i in 0..10_000 {
            let a = (1.0 - 1e-9) * i as f64 / 9_999.0;
            let rate =
                closed_form_secrecy(&rhos, g_user, g_eve, a, cfg.tx_power_w, cfg.noise_power_w);
            if rate > best.0 {
                best = (rate, a);
            }
        }
        if (alpha - best.1).abs() < 1e-3 && best.0 - rate_closed < 1e-6 {
            split_pass += 1;
        }
    }
    println!("closed-form split vs grid argmax: {split_pass}/{split_total} within 1e-3 / 1e-6");

    if equiv_pass == cases && split_pass == split_total {
        println!("validate: all checks passed");
        Ok(())
    } else {
        Err("validation checks failed".to_string())
    }
}

fn run() -> Result<(), String> {
    let cli = Cli::parse();
    match &cli.command {
        Command::Design {
            common,
            out,
            exact,
            approx,
        } => {
            let scenario = load(common)?;
            run_design(&scenario, out.as_ref(), mode_of(*exact, *approx))
        }
        Command::SweepAlpha {
            common,
            out,
            alpha_steps,
            exact,
            approx,
        } => {
            let scenario = load(common)?;
            if *alpha_steps < 2 {
                return Err("--alpha-steps must be at least 2".to_string());
            }
            let grid: Vec<f64> = (0..*alpha_steps)
                .map(|i| (1.0 - 1e-9) * i as f64 / (*alpha_steps - 1) as f64)
                .collect();
            let result = sweep_alpha(&scenario, &grid, mode_of(*exact, *approx))
                .map_err(|e| e.to_string())?;
            emit_csv(&result, out).map_err(|e| e.to_string())?;
            println!(
                "wrote {} ({} alphas x {} schemes)",
                out.display(),
                result.axis_values.len(),
                result.schemes.len()
            );
            Ok(())
        }
        Command::SweepRe {
            common,
            out,
            re_min,
            re_max,
            re_steps,
            realizations,
        } => {
            let scenario = load(common)?;
            if *re_steps < 1 || re_max < re_min {
                return Err("bad r_E grid".to_string());
            }
            let grid: Vec<f64> = if *re_steps == 1 {
                vec![*re_min]
            } else {
                (0..*re_steps)
                    .map(|i| re_min + (re_max - re_min) * i as f64 / (*re_steps - 1) as f64)
                    .collect()
            };
            let result = sweep_re(&scenario, &grid, *realizations).map_err(|e| e.to_string())?;
            emit_csv(&result, out).map_err(|e| e.to_string())?;
            println!(
                "wrote {} ({} radii x {} schemes)",
                out.display(),
                result.axis_values.len(),
                result.schemes.len()
            );
            Ok(())
        }
        Command::Spectrum {
            common,
            out,
            which,
            r_min,
            r_max,
            theta_min,
            theta_max,
            r_steps,
            theta_steps,
        } => {
            let scenario = load(common)?;
            let design = design_proposed(
                &scenario.config,
                &scenario.user,
                &scenario.eve,
                &scenario.search,
            )
            .map_err(|e| e.to_string())?;
            let grid = SpectrumGrid {
                r_range_m: (*r_min, *r_max),
                theta_range_rad: (*theta_min, *theta_max),
                r_steps: *r_steps,
                theta_steps: *theta_steps,
            };
            let beam = match which {
                BeamArg::Signal => WhichBeam::Signal,
                BeamArg::An => WhichBeam::An,
            };
            let result = power_spectrum(
                &scenario.config,
                &design,
                beam,
                &grid,
                metadata_for(&scenario),
            )
            .map_err(|e| e.to_string())?;
            emit_spectrum_csv(&result, out).map_err(|e| e.to_string())?;
            println!(
                "wrote {} ({}x{}); peak at r={:.4} m theta={:.6} rad",
                out.display(),
                result.r_values_m.len(),
                result.theta_values_rad.len(),
                result.peak.0,
                result.peak.1
            );
            Ok(())
        }
        Command::Validate { common, cases } => {
            let scenario = load(common)?;
            run_validate(&scenario, (*cases).max(10))
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::FAILURE
        }
    }
}
