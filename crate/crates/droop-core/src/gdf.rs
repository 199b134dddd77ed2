//! The generalized droop formula, the incoherent GN SNR, bounds between the
//! two, and the optimal launch powers.

use crate::error::{DroopError, Result};
use crate::snr::Snr;
use crate::{units, E_DB};

fn require_spans(n_spans: u32) -> Result<f64> {
    if n_spans < 1 {
        return Err(DroopError::domain(
            "n_spans",
            "at least 1",
            n_spans as f64,
        ));
    }
    Ok(n_spans as f64)
}

/// Evaluate `1/((1+x₁)(1+x₂)...)^N − 1)` in the log domain.
///
/// The per-span inverse SNRs are typically ~1e-4 while N is ~10², so naive
/// powering of `1+x` loses the digits the answer lives in; `ln_1p`/`exp_m1`
/// keep full precision.
fn inverse_droop_power(inverse_snrs: &[f64], n: f64) -> Snr {
    let log_sum: f64 = inverse_snrs.iter().map(|&x| x.ln_1p()).sum();
    if log_sum == 0.0 {
        return Snr::Unbounded;
    }
    Snr::Finite(1.0 / (n * log_sum).exp_m1())
}

/// Generalized droop formula: the OSNR after N spans whose amplifiers degrade
/// the single-span SNR to `SNR_a1` (power addition) and `SNR_r1` (power
/// redistribution):
///
/// `OSNR = 1/([(1+SNR_a1⁻¹)(1+SNR_r1⁻¹)]ᴺ − 1)`
///
/// Absent (unbounded) inputs model noiseless mechanisms; when both are
/// unbounded the OSNR is unbounded too.
pub fn gdf_osnr(snr_a1: Snr, snr_r1: Snr, n_spans: u32) -> Result<Snr> {
    let n = require_spans(n_spans)?;
    Ok(inverse_droop_power(
        &[snr_a1.inverse(), snr_r1.inverse()],
        n,
    ))
}

/// GDF for an ASE+NLI chain written directly in terms of the launch power,
/// the per-span ASE power β and the per-span NLI coefficient:
///
/// `SNR = 1/([(1+β/P)(1+α_NL·P²)]ᴺ − 1)`
pub fn gdf_snr_explicit(p_mw: f64, beta_mw: f64, alpha_nl_mw2: f64, n_spans: u32) -> Result<Snr> {
    let n = require_spans(n_spans)?;
    if !(p_mw > 0.0) {
        return Err(DroopError::domain("p_mw", "positive", p_mw));
    }
    if !(beta_mw >= 0.0) {
        return Err(DroopError::domain("beta_mw", "non-negative", beta_mw));
    }
    if !(alpha_nl_mw2 >= 0.0) {
        return Err(DroopError::domain(
            "alpha_nl_mw2",
            "non-negative",
            alpha_nl_mw2,
        ));
    }
    Ok(inverse_droop_power(
        &[beta_mw / p_mw, alpha_nl_mw2 * p_mw * p_mw],
        n,
    ))
}

/// Single-SNR evaluation mode: merges both mechanisms into `SNR_1` first and
/// drops the cross product `SNR_a1⁻¹·SNR_r1⁻¹`:
///
/// `SNR ≅ 1/((1+SNR_1⁻¹)ᴺ − 1)`
///
/// Practically indistinguishable from [`gdf_osnr`] since the cross term is
/// second order, but it is the form whose bound geometry [`gdf_bounds`]
/// describes, so it is exposed as its own evaluation mode.
pub fn gdf_snr_single_span(snr_1: Snr, n_spans: u32) -> Result<Snr> {
    let n = require_spans(n_spans)?;
    Ok(inverse_droop_power(&[snr_1.inverse()], n))
}

/// The standard SNR pair of the incoherent GN model.
#[derive(Debug, Clone, Copy)]
pub struct GnSnr {
    /// SNR degraded by the total noise of a single span:
    /// `SNR_1 = 1/(β/P + α_NL·P²)`.
    pub snr_1: Snr,
    /// Standard constant-gain accumulation SNR: `SNR_s = SNR_1/N`.
    pub snr_s: Snr,
}

/// Incoherent GN-model SNR: `SNR_s = 1/(N(β/P + α_NL·P²))`.
pub fn gn_snr(p_mw: f64, beta_mw: f64, alpha_nl_mw2: f64, n_spans: u32) -> Result<GnSnr> {
    let n = require_spans(n_spans)?;
    if !(p_mw > 0.0) {
        return Err(DroopError::domain("p_mw", "positive", p_mw));
    }
    if !(beta_mw >= 0.0) {
        return Err(DroopError::domain("beta_mw", "non-negative", beta_mw));
    }
    if !(alpha_nl_mw2 >= 0.0) {
        return Err(DroopError::domain(
            "alpha_nl_mw2",
            "non-negative",
            alpha_nl_mw2,
        ));
    }
    let x = beta_mw / p_mw + alpha_nl_mw2 * p_mw * p_mw;
    if x == 0.0 {
        return Ok(GnSnr {
            snr_1: Snr::Unbounded,
            snr_s: Snr::Unbounded,
        });
    }
    Ok(GnSnr {
        snr_1: Snr::Finite(1.0 / x),
        snr_s: Snr::Finite(1.0 / (n * x)),
    })
}

/// Bounds on the GDF expressed purely in terms of the standard SNR.
#[derive(Debug, Clone, Copy)]
pub struct GdfBounds {
    /// `SNR_s/(1 + ½(1−1/N)·SNR_s⁻¹)`, linear.
    pub upper: f64,
    /// `SNR_s − ½(1−1/N)`, linear; absent once it crosses zero, which is not
    /// physically acceptable as an SNR.
    pub lower: Option<f64>,
    /// The dB-linearized approximation, in dB:
    /// `SNR_s(dB) − e^dB·½(1−1/N)/SNR_s`. Also a (tighter) upper bound.
    pub db_approx: f64,
}

/// Upper bound, lower bound and dB approximation to the GDF from the
/// standard SNR alone.
pub fn gdf_bounds(snr_s: f64, n_spans: u32) -> Result<GdfBounds> {
    let n = require_spans(n_spans)?;
    if !(snr_s > 0.0) {
        return Err(DroopError::domain("snr_s", "positive", snr_s));
    }
    let half_correction = 0.5 * (1.0 - 1.0 / n);
    let upper = snr_s / (1.0 + half_correction / snr_s);
    let lower = snr_s - half_correction;
    let lower = (lower > 0.0).then_some(lower);
    let db_approx = units::db_from_linear(snr_s) - E_DB * half_correction / snr_s;
    Ok(GdfBounds {
        upper,
        lower,
        db_approx,
    })
}

/// Optimal launch powers at maximum SNR for the GN model and the GDF.
#[derive(Debug, Clone, Copy)]
pub struct OptimalPowers {
    /// `P_oGN = (β/(2·α_NL))^{1/3}`.
    pub gn_mw: f64,
    /// Solves `β = (2/χ(P))·α_NL·P³`; always ≤ `gn_mw` since the droop pulls
    /// the optimum slightly down.
    pub gdf_mw: f64,
    pub iterations: usize,
}

const OPTIMAL_POWER_REL_TOL: f64 = 1e-10;
const OPTIMAL_POWER_MAX_ITER: usize = 500;

/// Optimal launch powers for GN and GDF. The GDF optimum maximizes the total
/// per-span droop `χ(P) = [(1+β/P)(1+α_NL·P²)]⁻¹`, found by fixed-point
/// iteration on `P ← P_oGN·χ(P)^{1/3}`.
///
/// The span count drops out: `χ` is a per-span quantity, so the maximizing
/// power is the same for every chain length.
pub fn optimal_powers(beta_mw: f64, alpha_nl_mw2: f64) -> Result<OptimalPowers> {
    if !(beta_mw > 0.0) {
        return Err(DroopError::domain("beta_mw", "positive", beta_mw));
    }
    if !(alpha_nl_mw2 > 0.0) {
        return Err(DroopError::domain("alpha_nl_mw2", "positive", alpha_nl_mw2));
    }
    let gn = (beta_mw / (2.0 * alpha_nl_mw2)).cbrt();
    let chi = |p: f64| 1.0 / ((1.0 + beta_mw / p) * (1.0 + alpha_nl_mw2 * p * p));
    let mut p = gn;
    for iteration in 1..=OPTIMAL_POWER_MAX_ITER {
        let next = gn * chi(p).cbrt();
        let converged = (next - p).abs() <= OPTIMAL_POWER_REL_TOL * next;
        p = next;
        if converged {
            // χ ≤ 1 guarantees the fixed point sits at or below the GN optimum.
            return Ok(OptimalPowers {
                gn_mw: gn,
                gdf_mw: p.min(gn),
                iterations: iteration,
            });
        }
    }
    Err(DroopError::NoConvergence {
        what: "optimal GDF power",
        max_iterations: OPTIMAL_POWER_MAX_ITER,
    })
}
