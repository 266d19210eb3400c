//! Scenario configuration, figure-style sweeps, power-spectrum maps, and
//! deterministic CSV emission for the near-field secrecy simulator.
//!
//! Everything here is reproducible: a scenario file plus a seed fully
//! determines every emitted byte. Sweep points evaluate in parallel
//! (capped by the `NFSEC_THREADS` environment variable) and are assembled
//! in axis order, so thread count never changes the output.

pub mod csvout;
pub mod scenario;
pub mod spectrum;
pub mod sweep;

pub use csvout::{emit_csv, emit_spectrum_csv};
pub use scenario::{load_scenario, Scenario};
pub use spectrum::{power_spectrum, SpectrumGrid, SpectrumResult, WhichBeam};
pub use sweep::{sweep_alpha, sweep_re, SweepMetadata, SweepResult};

use std::sync::OnceLock;

/// Version string embedded in emitted artifacts.
pub const TOOL_VERSION: &str = concat!("nfsec ", env!("CARGO_PKG_VERSION"));

/// Shared thread pool honoring `NFSEC_THREADS`; falls back to the rayon
/// default when unset or unparsable.
pub fn thread_pool() -> &'static rayon::ThreadPool {
    static POOL: OnceLock<rayon::ThreadPool> = OnceLock::new();
    POOL.get_or_init(|| {
        let mut builder = rayon::ThreadPoolBuilder::new();
        if let Some(n) = std::env::var("NFSEC_THREADS")
            .ok()
            .and_then(|v| v.parse::<usize>().ok())
            .filter(|&n| n > 0)
        {
            builder = builder.num_threads(n);
        }
        builder.build().expect("thread pool")
    })
}

/// FNV-1a 64-bit hash; used for scenario fingerprints so identical inputs
/// always map to identical artifact headers.
pub fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut hash = 0xcbf29ce484222325u64;
    for &b in bytes {
        hash ^= b as u64;
        hash = hash.wrapping_mul(0x100000001b3);
    }
    hash
}
