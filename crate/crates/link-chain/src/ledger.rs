//! Signal/additive/redistribution power bookkeeping along the chain.

use droop_core::Snr;

use crate::error::{LinkError, Result};
use crate::stage::{span_droops, SpanStage};

const CONSERVATION_REL_TOL: f64 = 1e-12;

/// Per-span power trajectory, index 0 = launch.
///
/// Invariant: `signal[k] + additive[k] + redistribution[k]` equals the span-k
/// output power for every k (to 1e−12 relative), with
/// `signal[0] = P_0, additive[0] = redistribution[0] = 0`.
#[derive(Debug, Clone)]
pub struct PowerLedger {
    pub signal: Vec<f64>,
    pub additive: Vec<f64>,
    pub redistribution: Vec<f64>,
}

/// The three ledger components at the end of the chain.
#[derive(Debug, Clone, Copy)]
pub struct LedgerTotals {
    pub signal_mw: f64,
    pub additive_mw: f64,
    pub redistribution_mw: f64,
}

impl PowerLedger {
    /// Number of spans covered (entries minus the launch row).
    pub fn spans(&self) -> usize {
        self.signal.len().saturating_sub(1)
    }

    pub fn totals(&self) -> LedgerTotals {
        let last = self.signal.len() - 1;
        LedgerTotals {
            signal_mw: self.signal[last],
            additive_mw: self.additive[last],
            redistribution_mw: self.redistribution[last],
        }
    }

    /// End-of-chain OSNR: signal over all accumulated noise.
    pub fn osnr(&self) -> Snr {
        self.totals().osnr()
    }
}

impl LedgerTotals {
    pub fn osnr(&self) -> Snr {
        let noise = self.additive_mw + self.redistribution_mw;
        if noise == 0.0 {
            Snr::Unbounded
        } else {
            Snr::Finite(self.signal_mw / noise)
        }
    }
}

/// Run the per-span update rules down the chain:
///
/// ```text
/// P_s(k) = P_s(k−1)·χ_k·(P_k/P_{k−1})
/// P_a(k) = (P_a(k−1) + δP_ik·L_k⁻¹·χ_rk⁻¹)·χ_k·(P_k/P_{k−1})
/// P_r(k) = (P_r(k−1) + δP_rk)·χ_k·(P_k/P_{k−1})
/// ```
///
/// The three components must re-sum to the COP target at every span; a
/// residual beyond 1e−12 relative is reported as an internal consistency
/// error.
pub fn propagate_ledger(stages: &[SpanStage], launch_mw: f64) -> Result<PowerLedger> {
    if stages.is_empty() {
        return Err(LinkError::domain("stages", "non-empty", 0.0));
    }
    if !(launch_mw > 0.0) {
        return Err(LinkError::domain("launch_mw", "positive", launch_mw));
    }
    let mut ledger = PowerLedger {
        signal: Vec::with_capacity(stages.len() + 1),
        additive: Vec::with_capacity(stages.len() + 1),
        redistribution: Vec::with_capacity(stages.len() + 1),
    };
    ledger.signal.push(launch_mw);
    ledger.additive.push(0.0);
    ledger.redistribution.push(0.0);

    let mut input = launch_mw;
    for (k, stage) in stages.iter().enumerate() {
        let d = span_droops(stage, input)?;
        let renorm = d.chi * (stage.output_power_mw / input);
        let signal = ledger.signal[k] * renorm;
        let additive =
            (ledger.additive[k] + stage.injected_mw / stage.loss / d.chi_r) * renorm;
        let redistribution =
            (ledger.redistribution[k] + stage.redistributed_mw(input)) * renorm;

        let sum = signal + additive + redistribution;
        let residual = (sum - stage.output_power_mw).abs() / stage.output_power_mw;
        if residual > CONSERVATION_REL_TOL {
            return Err(LinkError::LedgerInconsistent {
                span: k + 1,
                residual,
            });
        }

        ledger.signal.push(signal);
        ledger.additive.push(additive);
        ledger.redistribution.push(redistribution);
        input = stage.output_power_mw;
    }
    Ok(ledger)
}

/// Closed-form solution of the ledger recursions at the final span:
///
/// ```text
/// P_s(N) = P_N·∏χ_m
/// P_a(N) = P_N·Σ_k (χ_ak⁻¹−1)·χ_rk⁻¹·∏_{m=k}^N χ_m
/// P_r(N) = P_N·Σ_k (χ_rk⁻¹−1)·∏_{m=k}^N χ_m
/// ```
pub fn closed_form_ledger(stages: &[SpanStage], launch_mw: f64) -> Result<LedgerTotals> {
    if stages.is_empty() {
        return Err(LinkError::domain("stages", "non-empty", 0.0));
    }
    if !(launch_mw > 0.0) {
        return Err(LinkError::domain("launch_mw", "positive", launch_mw));
    }
    let mut droops = Vec::with_capacity(stages.len());
    let mut input = launch_mw;
    for stage in stages {
        droops.push(span_droops(stage, input)?);
        input = stage.output_power_mw;
    }
    // Suffix products ∏_{m=k}^N χ_m, accumulated backwards.
    let n = stages.len();
    let mut additive_sum = 0.0;
    let mut redistribution_sum = 0.0;
    let mut suffix = 1.0;
    for k in (0..n).rev() {
        let d = &droops[k];
        suffix *= d.chi;
        additive_sum += (1.0 / d.chi_a - 1.0) / d.chi_r * suffix;
        redistribution_sum += (1.0 / d.chi_r - 1.0) * suffix;
    }
    let p_final = stages[n - 1].output_power_mw;
    Ok(LedgerTotals {
        signal_mw: p_final * suffix,
        additive_mw: p_final * additive_sum,
        redistribution_mw: p_final * redistribution_sum,
    })
}

/// Per-tributary SNR when the additive noise spreads over the full amplified
/// occupancy while signal and NLI share the signal occupancy:
/// `SNR = P_s(N)/(P_a(N)·η_A + P_r(N))`.
pub fn tributary_snr(totals: &LedgerTotals, eta_a: f64) -> Result<Snr> {
    if !(eta_a > 0.0 && eta_a <= 1.0) {
        return Err(LinkError::domain("eta_a", "in (0,1]", eta_a));
    }
    let noise = totals.additive_mw * eta_a + totals.redistribution_mw;
    if noise == 0.0 {
        return Ok(Snr::Unbounded);
    }
    Ok(Snr::Finite(totals.signal_mw / noise))
}
