//! Full-link orchestration: transmit, N × (span + amplifier), receive.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::amplifier::{amplify, AmplifierModel};
use crate::error::{Result, SsfmError};
use crate::fft::FftEngine;
use crate::fiber::{FiberPhysical, StepControl};
use crate::propagate::PropagationEngine;
use crate::receiver::{estimate_channel, ReceiverFront};
use crate::seed::derive_seed;
use crate::tx::{generate_multiplex, TransmitterConfig};

/// Seed stream tag for per-span ASE draws.
const ASE_STREAM_BASE: u64 = 0x5EED_0000_0000_0000;

/// One complete transmission scenario.
#[derive(Debug, Clone, Copy)]
pub struct LinkScenario {
    pub fiber: FiberPhysical,
    pub span_count: u32,
    pub amplifier: AmplifierModel,
    pub tx: TransmitterConfig,
    pub step: StepControl,
}

/// Aggregate SNR estimate of one simulated link.
#[derive(Debug, Clone)]
pub struct SnrEstimate {
    /// Center-channel linear SNR (the tributary the analytic models target).
    pub snr: f64,
    /// Per-channel linear SNRs.
    pub per_channel: Vec<f64>,
    pub symbol_count: usize,
    /// Center-channel data-aided gain magnitude per polarization.
    pub scaling: [f64; 2],
    /// Center-channel common-phase rotation per polarization [rad].
    pub residual_phase_rad: [f64; 2],
    pub low_confidence: bool,
    /// Split-step count over the whole link.
    pub total_steps: usize,
}

impl SnrEstimate {
    /// Normalized end-to-end NLI variance 1/SNR, the quantity the
    /// α_NL-estimation protocol consumes (valid for noise-free runs).
    pub fn v_nli(&self) -> f64 {
        1.0 / self.snr
    }
}

impl LinkScenario {
    pub fn validate(&self) -> Result<()> {
        self.fiber.validate()?;
        self.amplifier.validate()?;
        self.tx.validate()?;
        self.step.validate()?;
        if self.span_count == 0 {
            return Err(SsfmError::config("span_count must be at least 1"));
        }
        if self.amplifier.bandwidth_hz > self.tx.sample_rate_hz() * (1.0 + 1e-9) {
            return Err(SsfmError::config(format!(
                "amplifier bandwidth {:.1} GHz exceeds simulated bandwidth {:.1} GHz",
                self.amplifier.bandwidth_hz / 1e9,
                self.tx.sample_rate_hz() / 1e9
            )));
        }
        Ok(())
    }

    /// Accumulated β₂·distance [s²] the receiver must compensate.
    pub fn total_beta2_s2(&self) -> f64 {
        self.fiber.beta2_s2_km(self.tx.center_frequency_hz)
            * self.fiber.length_km
            * self.span_count as f64
    }
}

/// Run one scenario end to end. Deterministic given `scenario.tx.seed`:
/// symbol streams and each span's ASE derive from it through fixed stream
/// tags, so COP and CG runs of the same scenario share every random draw.
pub fn simulate_link(scenario: &LinkScenario) -> Result<SnrEstimate> {
    scenario.validate()?;
    let tx_out = generate_multiplex(&scenario.tx)?;
    let mut field = tx_out.field.clone();
    let n = field.len();

    let mut engine = PropagationEngine::new(n, field.sample_rate_hz);
    let mut total_steps = 0usize;
    for span in 0..scenario.span_count {
        let report = engine.propagate_span(&mut field, &scenario.fiber, &scenario.step)?;
        total_steps += report.steps;
        let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(
            scenario.tx.seed,
            ASE_STREAM_BASE | span as u64,
        ));
        amplify(&mut field, &scenario.amplifier, &mut rng, engine.fft())?;
    }

    let mut rx_fft = FftEngine::new(n);
    let front = ReceiverFront::new(&field, &scenario.tx, scenario.total_beta2_s2(), &mut rx_fft)?;
    let mut per_channel = Vec::with_capacity(scenario.tx.channel_count);
    let mut center = None;
    for channel in 0..scenario.tx.channel_count {
        let est = estimate_channel(&front, &scenario.tx, &tx_out, channel, &mut rx_fft);
        if channel == scenario.tx.center_channel() {
            center = Some(est);
        }
        per_channel.push(est.snr);
    }
    let center = center.expect("center channel estimated");
    Ok(SnrEstimate {
        snr: center.snr,
        per_channel,
        symbol_count: center.symbol_count,
        scaling: center.scaling,
        residual_phase_rad: center.residual_phase_rad,
        low_confidence: center.low_confidence,
        total_steps,
    })
}
