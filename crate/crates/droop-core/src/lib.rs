//! Closed-form SNR models for chains of amplified fiber spans.
//!
//! A constant-output-power (COP) amplifier must make room in its fixed power
//! budget for the noise it adds, so the useful signal is "squeezed" by a
//! per-span droop factor. This crate implements the resulting droop algebra:
//! addition and redistribution droops, the generalized droop formula (GDF)
//! for the end-to-end OSNR, the standard incoherent GN-model SNR, upper and
//! lower bounds relating the two, optimal launch powers, and Shannon spectral
//! efficiency with its GN-to-GDF gap.
//!
//! All powers are in mW, nonlinear coefficients in mW⁻², and span losses are
//! linear ratios in (0,1). Decibel conversion happens only at I/O boundaries
//! (see [`units`]).

pub mod droop;
mod error;
pub mod gdf;
pub mod se;
pub mod snr;
pub mod types;
pub mod units;

pub use droop::{
    addition_droop, ase_beta, power_evolution, power_split, redistribution_droop, PowerEvolution,
};
pub use error::{DroopError, Result};
pub use gdf::{
    gdf_bounds, gdf_osnr, gdf_snr_explicit, gdf_snr_single_span, gn_snr, optimal_powers,
    GdfBounds, GnSnr, OptimalPowers,
};
pub use se::{se_gap, spectral_efficiency, SeGap};
pub use snr::{snr_report, Snr, SnrReport};
pub use types::{DroopFactors, HomogeneousChain, PhysicalNoiseSpec, RedistributionSpec};

/// Planck constant [J·s].
pub const PLANCK_JS: f64 = 6.62607015e-34;

/// Default multiplex center frequency [Hz]: 193.41 THz, the 1550 nm C-band center.
pub const DEFAULT_CENTER_FREQUENCY_HZ: f64 = 193.41e12;

/// Decibels per neper, 10·log₁₀(e) ≅ 4.34. Appears when linearizing the
/// logarithm of an SNR ratio.
pub const E_DB: f64 = 10.0 * std::f64::consts::LOG10_E;
