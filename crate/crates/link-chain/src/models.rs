//! COP-GDF, CG-GDF and the TU/TL constant-gain reference formulas.

use droop_core::Snr;

use crate::error::{LinkError, Result};
use crate::multiplex::MultiplexSpec;

fn require_spans(n_spans: u32) -> Result<usize> {
    if n_spans < 1 {
        return Err(LinkError::domain("n_spans", "at least 1", n_spans as f64));
    }
    Ok(n_spans as usize)
}

fn require_positive(name: &'static str, v: f64) -> Result<()> {
    if !(v > 0.0) {
        return Err(LinkError::domain(name, "positive", v));
    }
    Ok(())
}

fn require_non_negative(name: &'static str, v: f64) -> Result<()> {
    if !(v >= 0.0) {
        return Err(LinkError::domain(name, "non-negative", v));
    }
    Ok(())
}

/// Assemble the partial-fill SNR ratio from a constant addition droop and a
/// per-span redistribution droop sequence:
///
/// `SNR = ∏χ_m / Σ_k [a·χ_rk⁻¹·η_A + (χ_rk⁻¹ − 1)]·∏_{m=k}^N χ_m`
///
/// where `a` is the additive term ((χ_a⁻¹−1) for COP, β/P_t for CG) and
/// `χ_m = χ_a·χ_rm`.
fn assemble_ratio(chi_a: f64, inv_chi_r: &[f64], additive_term: f64, eta_a: f64) -> Snr {
    let mut suffix = 1.0;
    let mut denominator = 0.0;
    for &inv_r in inv_chi_r.iter().rev() {
        suffix *= chi_a / inv_r;
        denominator += (additive_term * inv_r * eta_a + (inv_r - 1.0)) * suffix;
    }
    if denominator == 0.0 {
        Snr::Unbounded
    } else {
        Snr::Finite(suffix / denominator)
    }
}

/// How the out-of-band ASE entering each span is drooped when building the
/// effective NLI-generating power.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CopGdfMode {
    /// Approximate every droop inside the O-ASE accumulation by the ASE
    /// droop alone (χ_j ≅ χ_a), giving the closed geometric-series form.
    ChiAApprox,
    /// Propagate the O-ASE through the full per-span droop χ_j = χ_a·χ_rj.
    /// Comparison mode for quantifying the χ_j ≅ χ_a approximation.
    ExactLedger,
}

/// COP-GDF evaluation output.
#[derive(Debug, Clone)]
pub struct CopGdfResult {
    pub snr: Snr,
    /// Effective per-tributary power P_e(k) generating NLI at each span,
    /// index 0 ↔ span 1. Non-increasing, with P_e(1) = P_t exactly.
    pub effective_power_mw: Vec<f64>,
    /// Set when P_e(k) hit the zero clamp: the operating point is outside
    /// the model's validity and the result is kept only so sweeps complete.
    pub clamped: bool,
}

/// Per-tributary SNR of a COP chain whose amplifiers are only partially
/// filled by the signal (fill-in efficiency η_A < 1).
///
/// The out-of-band ASE consumes part of the constant output power, so the
/// ASE droop is `χ_a⁻¹ = 1 + β/(η_A·P_t)` and the effective power feeding
/// NLI shrinks span by span:
/// `P_e(k) = P_t − β(1/η_A−1)·(1−χ_a^{k−1})/(1−χ_a)`,
/// `χ_rk⁻¹ = 1 + α_NL·P_t²·(P_e(k)/P_t)³`.
pub fn cop_gdf_snr(
    mux: &MultiplexSpec,
    beta_mw: f64,
    alpha_nl_mw2: f64,
    n_spans: u32,
    mode: CopGdfMode,
) -> Result<CopGdfResult> {
    let n = require_spans(n_spans)?;
    require_non_negative("beta_mw", beta_mw)?;
    require_non_negative("alpha_nl_mw2", alpha_nl_mw2)?;
    let eta_a = mux.fill_in_efficiency()?;
    let p_t = mux.per_tributary_power_mw;

    let q = beta_mw / (eta_a * p_t);
    let inv_chi_a = 1.0 + q;
    let chi_a = 1.0 / inv_chi_a;
    // Per-tributary O-ASE generation rate: β(1/η_A − 1).
    let oase_rate = beta_mw * (1.0 / eta_a - 1.0);

    let mut effective = Vec::with_capacity(n);
    let mut inv_chi_r = Vec::with_capacity(n);
    let mut clamped = false;

    match mode {
        CopGdfMode::ChiAApprox => {
            // Geometric series (1−χ_a^{k−1})/(1−χ_a) in expm1/ln1p form; the
            // χ_a → 1 limit is the plain count k−1.
            let ln_chi = -q.ln_1p();
            let series = |k: usize| -> f64 {
                if q == 0.0 {
                    (k - 1) as f64
                } else {
                    ((k - 1) as f64 * ln_chi).exp_m1() / ln_chi.exp_m1()
                }
            };
            for k in 1..=n {
                let pe = p_t - oase_rate * series(k);
                let pe = if pe <= 0.0 {
                    clamped = true;
                    0.0
                } else {
                    pe
                };
                effective.push(pe);
                let ratio = pe / p_t;
                inv_chi_r.push(1.0 + alpha_nl_mw2 * p_t * p_t * ratio.powi(3));
            }
        }
        CopGdfMode::ExactLedger => {
            // O-ASE recursion with the full span droop:
            // P_O(k+1) = P_O(k)·χ_k + β′ per tributary.
            let mut oase = 0.0;
            for _ in 0..n {
                let pe = p_t - oase;
                let pe = if pe <= 0.0 {
                    clamped = true;
                    0.0
                } else {
                    pe
                };
                effective.push(pe);
                let ratio = pe / p_t;
                let inv_r = 1.0 + alpha_nl_mw2 * p_t * p_t * ratio.powi(3);
                inv_chi_r.push(inv_r);
                oase = oase * (chi_a / inv_r) + oase_rate;
            }
        }
    }

    let snr = assemble_ratio(chi_a, &inv_chi_r, inv_chi_a - 1.0, eta_a);
    Ok(CopGdfResult {
        snr,
        effective_power_mw: effective,
        clamped,
    })
}

/// CG-GDF: the constant-gain variant. There is no ASE droop (χ_a = 1); ASE
/// accumulates on top of the signal and feeds extra NLI, so the per-span
/// redistribution droop grows along the chain:
/// `χ_rk⁻¹ = 1 + α_NL·P_t²·(1+(k−1)β/P_t)³`, with the additive term βP_t⁻¹
/// replacing (χ_a⁻¹−1) in the ratio.
pub fn cg_gdf_snr(p_t_mw: f64, beta_mw: f64, alpha_nl_mw2: f64, n_spans: u32) -> Result<Snr> {
    let n = require_spans(n_spans)?;
    require_positive("p_t_mw", p_t_mw)?;
    require_non_negative("beta_mw", beta_mw)?;
    require_non_negative("alpha_nl_mw2", alpha_nl_mw2)?;
    let growth = beta_mw / p_t_mw;
    let inv_chi_r: Vec<f64> = (0..n)
        .map(|k| {
            let boosted = 1.0 + k as f64 * growth;
            1.0 + alpha_nl_mw2 * p_t_mw * p_t_mw * boosted.powi(3)
        })
        .collect();
    Ok(assemble_ratio(1.0, &inv_chi_r, growth, 1.0))
}

/// The TU/TL constant-gain SNR pair.
#[derive(Debug, Clone, Copy)]
pub struct TuTl {
    /// `P_t/(Nβ + P_NLI)`.
    pub upper: Snr,
    /// `(P_t − P_NLI)/(Nβ + P_NLI)`; absent once the NLI power reaches the
    /// signal power, where the depletion picture turns nonphysical.
    pub lower: Option<Snr>,
    /// `P_NLI = α_NL·Σ_{n=0}^{N−1}(P_t+nβ)³`.
    pub nli_mw: f64,
}

/// TU and TL formulas for a constant-gain chain. The launch is ASE-free, so
/// the ASE-boosted NLI sum runs over n = 0..N−1.
pub fn tu_tl_snr(p_t_mw: f64, beta_mw: f64, alpha_nl_mw2: f64, n_spans: u32) -> Result<TuTl> {
    let n = require_spans(n_spans)?;
    require_positive("p_t_mw", p_t_mw)?;
    require_non_negative("beta_mw", beta_mw)?;
    require_non_negative("alpha_nl_mw2", alpha_nl_mw2)?;
    let nli: f64 = alpha_nl_mw2
        * (0..n)
            .map(|k| (p_t_mw + k as f64 * beta_mw).powi(3))
            .sum::<f64>();
    let noise = n as f64 * beta_mw + nli;
    let upper = if noise == 0.0 {
        Snr::Unbounded
    } else {
        Snr::Finite(p_t_mw / noise)
    };
    let lower = if nli >= p_t_mw {
        None
    } else if noise == 0.0 {
        Some(Snr::Unbounded)
    } else {
        Some(Snr::Finite((p_t_mw - nli) / noise))
    };
    Ok(TuTl {
        upper,
        lower,
        nli_mw: nli,
    })
}
