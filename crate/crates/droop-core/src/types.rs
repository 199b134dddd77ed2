//! Domain types describing one homogeneous amplified chain.

use crate::droop::{addition_droop, redistribution_droop};
use crate::error::{DroopError, Result};
use crate::snr::Snr;
use crate::{DEFAULT_CENTER_FREQUENCY_HZ, PLANCK_JS};

/// Physical parameters of the amplifier noise injection.
///
/// One amplifier adds an equivalent input noise power
/// `δP_i = M·hνFB + α_ex·P` — ASE over `M` modes and bandwidth `B`, plus
/// lumped external crosstalk proportional to the transiting power.
#[derive(Debug, Clone, Copy)]
pub struct PhysicalNoiseSpec {
    /// Planck constant [J·s].
    pub planck_js: f64,
    /// Multiplex center frequency ν [Hz].
    pub center_frequency_hz: f64,
    /// Amplifier noise figure F, linear (≥ 1).
    pub noise_figure: f64,
    /// Amplification bandwidth B [Hz].
    pub bandwidth_hz: f64,
    /// Number of spatial modes M (each carrying two polarizations).
    pub modes: u32,
    /// External crosstalk coefficient α_ex, dimensionless.
    pub external_crosstalk: f64,
}

impl PhysicalNoiseSpec {
    pub fn new(
        center_frequency_hz: f64,
        noise_figure: f64,
        bandwidth_hz: f64,
        modes: u32,
        external_crosstalk: f64,
    ) -> Result<Self> {
        let spec = PhysicalNoiseSpec {
            planck_js: PLANCK_JS,
            center_frequency_hz,
            noise_figure,
            bandwidth_hz,
            modes,
            external_crosstalk,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// ASE-only spec at the default 1550 nm center frequency.
    pub fn ase(noise_figure: f64, bandwidth_hz: f64, modes: u32) -> Result<Self> {
        Self::new(
            DEFAULT_CENTER_FREQUENCY_HZ,
            noise_figure,
            bandwidth_hz,
            modes,
            0.0,
        )
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.planck_js > 0.0) {
            return Err(DroopError::domain("planck_js", "positive", self.planck_js));
        }
        if !(self.center_frequency_hz > 0.0) {
            return Err(DroopError::domain(
                "center_frequency_hz",
                "positive",
                self.center_frequency_hz,
            ));
        }
        if !(self.noise_figure >= 1.0) {
            return Err(DroopError::domain(
                "noise_figure",
                "at least 1 (linear)",
                self.noise_figure,
            ));
        }
        if !(self.bandwidth_hz > 0.0) {
            return Err(DroopError::domain(
                "bandwidth_hz",
                "positive",
                self.bandwidth_hz,
            ));
        }
        if self.modes < 1 {
            return Err(DroopError::domain("modes", "at least 1", self.modes as f64));
        }
        if !(self.external_crosstalk >= 0.0) {
            return Err(DroopError::domain(
                "external_crosstalk",
                "non-negative",
                self.external_crosstalk,
            ));
        }
        Ok(())
    }

    /// Equivalent input noise power [mW] injected at one amplifier for a
    /// transiting power `p_mw`: `M·hνFB + α_ex·P`.
    pub fn injected_power_mw(&self, p_mw: f64) -> f64 {
        self.modes as f64
            * self.planck_js
            * self.center_frequency_hz
            * self.noise_figure
            * self.bandwidth_hz
            * 1e3
            + self.external_crosstalk * p_mw
    }
}

/// In-fiber power redistribution per span: Kerr NLI plus the linear
/// mechanisms (GAWBS, inter-mode crosstalk) that scale with span length.
#[derive(Debug, Clone, Copy)]
pub struct RedistributionSpec {
    /// Per-span NLI coefficient α_NL [mW⁻²].
    pub alpha_nl_mw2: f64,
    /// GAWBS coefficient γ_GAWBS [km⁻¹].
    pub gawbs_per_km: f64,
    /// Inter-mode/core linear crosstalk coefficient γ_X [km⁻¹].
    pub xtalk_per_km: f64,
    /// Span length ℓ [km].
    pub span_length_km: f64,
}

impl RedistributionSpec {
    pub fn new(
        alpha_nl_mw2: f64,
        gawbs_per_km: f64,
        xtalk_per_km: f64,
        span_length_km: f64,
    ) -> Result<Self> {
        let spec = RedistributionSpec {
            alpha_nl_mw2,
            gawbs_per_km,
            xtalk_per_km,
            span_length_km,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// NLI-only redistribution over a span of the given length.
    pub fn nli_only(alpha_nl_mw2: f64, span_length_km: f64) -> Result<Self> {
        Self::new(alpha_nl_mw2, 0.0, 0.0, span_length_km)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha_nl_mw2 >= 0.0) {
            return Err(DroopError::domain(
                "alpha_nl_mw2",
                "non-negative",
                self.alpha_nl_mw2,
            ));
        }
        if !(self.gawbs_per_km >= 0.0) {
            return Err(DroopError::domain(
                "gawbs_per_km",
                "non-negative",
                self.gawbs_per_km,
            ));
        }
        if !(self.xtalk_per_km >= 0.0) {
            return Err(DroopError::domain(
                "xtalk_per_km",
                "non-negative",
                self.xtalk_per_km,
            ));
        }
        if !(self.span_length_km > 0.0) {
            return Err(DroopError::domain(
                "span_length_km",
                "positive",
                self.span_length_km,
            ));
        }
        Ok(())
    }

    /// Redistributed power δP_r [mW] for input power `p_mw`:
    /// `α_NL·P³ + (γ_GAWBS + γ_X)·ℓ·P`.
    pub fn redistributed_power_mw(&self, p_mw: f64) -> f64 {
        self.alpha_nl_mw2 * p_mw.powi(3)
            + (self.gawbs_per_km + self.xtalk_per_km) * self.span_length_km * p_mw
    }
}

/// A chain of N identical spans, each with linear loss L followed by a COP
/// amplifier holding the total output power at the launch power P.
#[derive(Debug, Clone, Copy)]
pub struct HomogeneousChain {
    /// Linear span loss L ∈ (0,1).
    pub span_loss: f64,
    /// Number of spans N.
    pub span_count: u32,
    /// Launch (and per-span output) power P [mW].
    pub launch_power_mw: f64,
    pub noise: PhysicalNoiseSpec,
    pub redistribution: RedistributionSpec,
}

impl HomogeneousChain {
    pub fn new(
        span_loss: f64,
        span_count: u32,
        launch_power_mw: f64,
        noise: PhysicalNoiseSpec,
        redistribution: RedistributionSpec,
    ) -> Result<Self> {
        let chain = HomogeneousChain {
            span_loss,
            span_count,
            launch_power_mw,
            noise,
            redistribution,
        };
        chain.validate()?;
        Ok(chain)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.span_loss > 0.0 && self.span_loss < 1.0) {
            return Err(DroopError::domain(
                "span_loss",
                "a linear ratio in (0,1)",
                self.span_loss,
            ));
        }
        if self.span_count < 1 {
            return Err(DroopError::domain(
                "span_count",
                "at least 1",
                self.span_count as f64,
            ));
        }
        if !(self.launch_power_mw > 0.0) {
            return Err(DroopError::domain(
                "launch_power_mw",
                "positive",
                self.launch_power_mw,
            ));
        }
        self.noise.validate()?;
        self.redistribution.validate()
    }

    /// Per-span droop factors at this chain's operating point.
    pub fn droop_factors(&self) -> Result<DroopFactors> {
        let p = self.launch_power_mw;
        let injected = self.noise.injected_power_mw(p);
        let (chi_a, snr_a1) = addition_droop(p, injected, self.span_loss)?;
        let (chi_r, snr_r1) = redistribution_droop(p, &self.redistribution)?;
        Ok(DroopFactors {
            chi_a,
            chi_r,
            chi: chi_a * chi_r,
            snr_a1,
            snr_r1,
        })
    }
}

/// The per-span droop factors and their associated single-span SNRs.
///
/// `chi` is exactly the product `chi_a·chi_r`: the total power gain seen by
/// the transiting signal across one amplified span.
#[derive(Debug, Clone, Copy)]
pub struct DroopFactors {
    pub chi_a: f64,
    pub chi_r: f64,
    pub chi: f64,
    pub snr_a1: Snr,
    pub snr_r1: Snr,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn noise_spec_validation() {
        assert!(PhysicalNoiseSpec::ase(1.0, 1e9, 1).is_ok());
        assert!(PhysicalNoiseSpec::ase(0.5, 1e9, 1).is_err());
        assert!(PhysicalNoiseSpec::ase(2.0, 0.0, 1).is_err());
        assert!(PhysicalNoiseSpec::ase(2.0, 1e9, 0).is_err());
        assert!(PhysicalNoiseSpec::new(DEFAULT_CENTER_FREQUENCY_HZ, 2.0, 1e9, 1, -0.1).is_err());
    }

    #[test]
    fn injected_power_composition() {
        let spec = PhysicalNoiseSpec::new(DEFAULT_CENTER_FREQUENCY_HZ, 2.0, 50e9, 4, 1e-4).unwrap();
        let base = 4.0 * PLANCK_JS * DEFAULT_CENTER_FREQUENCY_HZ * 2.0 * 50e9 * 1e3;
        assert!((spec.injected_power_mw(2.0) - (base + 2e-4)).abs() < 1e-18);
    }

    #[test]
    fn redistribution_composition() {
        let spec = RedistributionSpec::new(1e-3, 2e-6, 3e-6, 100.0).unwrap();
        let p = 2.0;
        let expect = 1e-3 * 8.0 + 5e-6 * 100.0 * 2.0;
        assert!((spec.redistributed_power_mw(p) - expect).abs() < 1e-15);
    }

    #[test]
    fn chain_droop_product_is_exact() {
        let chain = HomogeneousChain::new(
            0.05,
            100,
            1.0,
            PhysicalNoiseSpec::ase(6.31, 34.17e9, 1).unwrap(),
            RedistributionSpec::nli_only(4.34e-4, 78.0).unwrap(),
        )
        .unwrap();
        let f = chain.droop_factors().unwrap();
        assert_eq!(f.chi, f.chi_a * f.chi_r);
        assert!(f.chi_a > 0.0 && f.chi_a <= 1.0);
        assert!(f.chi_r > 0.0 && f.chi_r <= 1.0);
    }
}
