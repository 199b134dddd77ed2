//! End-span amplifier: COP or CG gain, ASE injection, optional in-band filter.

use num_complex::Complex64;
use rand_chacha::ChaCha8Rng;

use crate::error::{Result, SsfmError};
use crate::fft::{bin_frequency, FftEngine};
use crate::field::SampledField;
use crate::seed::complex_standard_gaussian;
use crate::PLANCK_JS;

/// Gain discipline of the amplifier.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GainMode {
    /// Total output power (signal plus local ASE) held at the saturation
    /// power; the gain adapts to the measured input.
    ConstantOutputPower { saturation_mw: f64 },
    /// Fixed gain, normally set to exactly compensate the span loss.
    ConstantGain { gain: f64 },
}

/// Amplifier model shared by every span of a chain.
#[derive(Debug, Clone, Copy)]
pub struct AmplifierModel {
    pub mode: GainMode,
    /// Noise figure, linear (≥ 1).
    pub noise_figure: f64,
    /// Amplification bandwidth B_a [Hz]; ASE is injected over this band.
    pub bandwidth_hz: f64,
    /// Master ASE switch; off for the noise-free calibration runs.
    pub ase_enabled: bool,
    /// Brick-wall filter full width [Hz] applied after amplification,
    /// removing everything (ASE and signal tails) outside ±width/2.
    pub inband_filter_hz: Option<f64>,
}

impl AmplifierModel {
    pub fn validate(&self) -> Result<()> {
        match self.mode {
            GainMode::ConstantOutputPower { saturation_mw } => {
                if !(saturation_mw > 0.0) {
                    return Err(SsfmError::config("COP saturation power must be positive"));
                }
            }
            GainMode::ConstantGain { gain } => {
                if !(gain > 1.0) {
                    return Err(SsfmError::config("CG gain must exceed 1"));
                }
            }
        }
        if !(self.noise_figure >= 1.0) {
            return Err(SsfmError::config("noise figure must be ≥ 1 (linear)"));
        }
        if !(self.bandwidth_hz > 0.0) {
            return Err(SsfmError::config("amplifier bandwidth must be positive"));
        }
        if let Some(w) = self.inband_filter_hz {
            if !(w > 0.0) {
                return Err(SsfmError::config("in-band filter width must be positive"));
            }
        }
        Ok(())
    }

    /// Equivalent input noise power hνFB_a [mW] (single spatial mode).
    pub fn equivalent_input_noise_mw(&self, center_frequency_hz: f64) -> f64 {
        if self.ase_enabled {
            PLANCK_JS * center_frequency_hz * self.noise_figure * self.bandwidth_hz * 1e3
        } else {
            0.0
        }
    }
}

/// What one amplification did, for diagnostics and tests.
#[derive(Debug, Clone, Copy)]
pub struct AmplifyOutcome {
    pub gain: f64,
    /// Total ASE power added over both polarizations [mW].
    pub ase_added_mw: f64,
    /// Power removed by the in-band filter [mW].
    pub filtered_mw: f64,
}

/// Amplify the field in place.
///
/// ASE is white circular Gaussian over the amplifier bandwidth with total
/// power `hνF·B_a·G` across both polarizations — the convention that makes a
/// gain-L⁻¹ amplifier emit exactly the analytic per-span ASE power β over any
/// sub-band B. In COP mode the gain solves `G·(P_in + hνFB_a) = P_sat`, which
/// is precisely the droop-model power balance.
pub fn amplify(
    field: &mut SampledField,
    amp: &AmplifierModel,
    rng: &mut ChaCha8Rng,
    eng: &mut FftEngine,
) -> Result<AmplifyOutcome> {
    amp.validate()?;
    field.validate()?;
    let n = field.len();
    if eng.len() != n {
        return Err(SsfmError::config("FFT engine length mismatch"));
    }
    if amp.bandwidth_hz > field.sample_rate_hz * (1.0 + 1e-9) {
        return Err(SsfmError::config(format!(
            "amplifier bandwidth {:.1} GHz exceeds the simulated bandwidth {:.1} GHz",
            amp.bandwidth_hz / 1e9,
            field.sample_rate_hz / 1e9
        )));
    }

    let delta_p_i = amp.equivalent_input_noise_mw(field.center_frequency_hz);
    let p_in = field.total_power_mw();
    let gain = match amp.mode {
        GainMode::ConstantOutputPower { saturation_mw } => saturation_mw / (p_in + delta_p_i),
        GainMode::ConstantGain { gain } => gain,
    };
    let amplitude = gain.sqrt();
    for v in field.pol_x.iter_mut().chain(field.pol_y.iter_mut()) {
        *v *= amplitude;
    }

    let ase_total_mw = delta_p_i * gain;
    let mut filtered_mw = 0.0;

    if ase_total_mw > 0.0 || amp.inband_filter_hz.is_some() {
        eng.forward(&mut field.pol_x);
        eng.forward(&mut field.pol_y);

        if ase_total_mw > 0.0 {
            let in_band: Vec<bool> = (0..n)
                .map(|k| {
                    bin_frequency(k, n, field.sample_rate_hz).abs()
                        <= amp.bandwidth_hz / 2.0 * (1.0 + 1e-12)
                })
                .collect();
            let bins = in_band.iter().filter(|&&b| b).count();
            // Per polarization, per bin: E|X_k|² = (P_ase/2)·n²/bins so the
            // time-domain power per polarization comes out at P_ase/2.
            let sigma_quad =
                (ase_total_mw / 2.0 * (n as f64 * n as f64) / bins as f64 / 2.0).sqrt();
            for pol in [&mut field.pol_x, &mut field.pol_y] {
                for (k, v) in pol.iter_mut().enumerate() {
                    if in_band[k] {
                        *v += complex_standard_gaussian(rng) * sigma_quad;
                    }
                }
            }
        }

        if let Some(width) = amp.inband_filter_hz {
            let scale = 1.0 / (n as f64 * n as f64);
            for pol in [&mut field.pol_x, &mut field.pol_y] {
                for (k, v) in pol.iter_mut().enumerate() {
                    if bin_frequency(k, n, field.sample_rate_hz).abs() > width / 2.0 {
                        filtered_mw += v.norm_sqr() * scale;
                        *v = Complex64::new(0.0, 0.0);
                    }
                }
            }
        }

        eng.inverse_normalized(&mut field.pol_x);
        eng.inverse_normalized(&mut field.pol_y);
    }

    Ok(AmplifyOutcome {
        gain,
        ase_added_mw: ase_total_mw,
        filtered_mw,
    })
}
