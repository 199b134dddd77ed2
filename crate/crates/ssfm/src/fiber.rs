//! Fiber physical parameters and the split-step controller knobs.

use crate::error::{Result, SsfmError};
use crate::C_M_S;

/// One fiber span's physical description.
#[derive(Debug, Clone, Copy)]
pub struct FiberPhysical {
    /// Attenuation [dB/km].
    pub attenuation_db_per_km: f64,
    /// Chromatic dispersion D [ps/nm/km].
    pub dispersion_ps_nm_km: f64,
    /// Nonlinear index n₂ [m²/W].
    pub nonlinear_index_m2_w: f64,
    /// Effective area A_eff [m²].
    pub effective_area_m2: f64,
    /// Span length ℓ [km].
    pub length_km: f64,
}

impl FiberPhysical {
    pub fn validate(&self) -> Result<()> {
        if !(self.attenuation_db_per_km >= 0.0) {
            return Err(SsfmError::config("attenuation must be non-negative"));
        }
        if !(self.effective_area_m2 > 0.0) {
            return Err(SsfmError::config("effective area must be positive"));
        }
        if !(self.length_km > 0.0) {
            return Err(SsfmError::config("span length must be positive"));
        }
        if !(self.nonlinear_index_m2_w >= 0.0) {
            return Err(SsfmError::config("nonlinear index must be non-negative"));
        }
        Ok(())
    }

    /// Kerr coefficient γ = 2πn₂/(λA_eff) [W⁻¹km⁻¹] at the given carrier.
    pub fn gamma_w_km(&self, center_frequency_hz: f64) -> f64 {
        let lambda_m = C_M_S / center_frequency_hz;
        std::f64::consts::TAU * self.nonlinear_index_m2_w / (lambda_m * self.effective_area_m2)
            * 1e3
    }

    /// Group-velocity dispersion β₂ = −Dλ²/(2πc) [s²/km].
    pub fn beta2_s2_km(&self, center_frequency_hz: f64) -> f64 {
        let lambda_m = C_M_S / center_frequency_hz;
        let d_si = self.dispersion_ps_nm_km * 1e-6; // s/m²
        -d_si * lambda_m * lambda_m / (std::f64::consts::TAU * C_M_S) * 1e3
    }

    /// Power attenuation coefficient [1/km].
    pub fn alpha_per_km(&self) -> f64 {
        self.attenuation_db_per_km * std::f64::consts::LN_10 / 10.0
    }

    /// Linear span loss (output/input power ratio).
    pub fn span_loss_linear(&self) -> f64 {
        10f64.powf(-self.attenuation_db_per_km * self.length_km / 10.0)
    }
}

/// Split-step controller: steps are sized so the peak nonlinear phase
/// rotation per step stays at or below the ceiling.
#[derive(Debug, Clone, Copy)]
pub struct StepControl {
    /// Maximum nonlinear phase per step [rad].
    pub max_nonlinear_phase_rad: f64,
    /// Abort guard against runaway step counts in a single span.
    pub max_steps_per_span: usize,
}

impl Default for StepControl {
    fn default() -> Self {
        StepControl {
            max_nonlinear_phase_rad: 5e-4,
            max_steps_per_span: 2_000_000,
        }
    }
}

impl StepControl {
    pub fn with_phase_ceiling(max_nonlinear_phase_rad: f64) -> Self {
        StepControl {
            max_nonlinear_phase_rad,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.max_nonlinear_phase_rad > 0.0) {
            return Err(SsfmError::config("nonlinear phase ceiling must be positive"));
        }
        if self.max_steps_per_span == 0 {
            return Err(SsfmError::config("step budget must be positive"));
        }
        Ok(())
    }
}
