//! One fiber span plus its end-span COP amplifier, inhomogeneous-capable.

use droop_core::{RedistributionSpec, Snr};

use crate::error::{LinkError, Result};

/// Where a stage's redistribution power comes from: either a fixed per-span
/// value or a physical spec evaluated at the stage input power.
#[derive(Debug, Clone, Copy)]
pub enum RedistributionSource {
    /// Fixed δP_rk [mW].
    Power(f64),
    /// δP_rk = α_NL·P³ + (γ_GAWBS+γ_X)·ℓ·P at the stage input power.
    Spec(RedistributionSpec),
}

/// Span k of an inhomogeneous chain: fiber loss L_k, COP target output power
/// P_k, equivalent input noise δP_ik and redistribution power δP_rk.
#[derive(Debug, Clone, Copy)]
pub struct SpanStage {
    /// Linear span loss L_k ∈ (0,1).
    pub loss: f64,
    /// Amplifier output power target P_k [mW].
    pub output_power_mw: f64,
    /// Equivalent input noise power δP_ik [mW] injected at the amplifier.
    pub injected_mw: f64,
    pub redistribution: RedistributionSource,
}

impl SpanStage {
    pub fn new(
        loss: f64,
        output_power_mw: f64,
        injected_mw: f64,
        redistribution: RedistributionSource,
    ) -> Result<Self> {
        let stage = SpanStage {
            loss,
            output_power_mw,
            injected_mw,
            redistribution,
        };
        stage.validate()?;
        Ok(stage)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.loss > 0.0 && self.loss < 1.0) {
            return Err(LinkError::domain("loss", "a linear ratio in (0,1)", self.loss));
        }
        if !(self.output_power_mw > 0.0) {
            return Err(LinkError::domain(
                "output_power_mw",
                "positive",
                self.output_power_mw,
            ));
        }
        if !(self.injected_mw >= 0.0) {
            return Err(LinkError::domain(
                "injected_mw",
                "non-negative",
                self.injected_mw,
            ));
        }
        if let RedistributionSource::Power(p) = self.redistribution {
            if !(p >= 0.0) {
                return Err(LinkError::domain("redistribution power", "non-negative", p));
            }
        }
        Ok(())
    }

    /// δP_rk [mW] for a given stage input power.
    pub fn redistributed_mw(&self, input_mw: f64) -> f64 {
        match self.redistribution {
            RedistributionSource::Power(p) => p,
            RedistributionSource::Spec(spec) => spec.redistributed_power_mw(input_mw),
        }
    }
}

/// Span-local droop factors evaluated at the stage input power.
#[derive(Debug, Clone, Copy)]
pub struct SpanDroops {
    pub chi_a: f64,
    pub chi_r: f64,
    /// Total span droop χ_k = χ_ak·χ_rk.
    pub chi: f64,
    pub snr_a1: Snr,
    pub snr_r1: Snr,
}

/// Power balances of span k with input power P_{k−1}:
/// `χ_ak = (1 + δP_ik·L_k⁻¹/P_{k−1})⁻¹` at the output sub-block and
/// `χ_rk = (1 + δP_rk/P_{k−1})⁻¹` at the input sub-block.
pub fn span_droops(stage: &SpanStage, input_mw: f64) -> Result<SpanDroops> {
    stage.validate()?;
    if !(input_mw > 0.0) {
        return Err(LinkError::domain("input_mw", "positive", input_mw));
    }
    let amplified_noise = stage.injected_mw / stage.loss;
    let (chi_a, snr_a1) = if amplified_noise == 0.0 {
        (1.0, Snr::Unbounded)
    } else {
        let snr = input_mw / amplified_noise;
        (1.0 / (1.0 + 1.0 / snr), Snr::Finite(snr))
    };
    let redistributed = stage.redistributed_mw(input_mw);
    let (chi_r, snr_r1) = if redistributed == 0.0 {
        (1.0, Snr::Unbounded)
    } else {
        let snr = input_mw / redistributed;
        (1.0 / (1.0 + 1.0 / snr), Snr::Finite(snr))
    };
    Ok(SpanDroops {
        chi_a,
        chi_r,
        chi: chi_a * chi_r,
        snr_a1,
        snr_r1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn noiseless_stage_has_unit_droops() {
        let stage =
            SpanStage::new(0.1, 1.0, 0.0, RedistributionSource::Power(0.0)).unwrap();
        let d = span_droops(&stage, 1.0).unwrap();
        assert_eq!(d.chi_a, 1.0);
        assert_eq!(d.chi_r, 1.0);
        assert_eq!(d.chi, 1.0);
        assert!(d.snr_a1.is_unbounded() && d.snr_r1.is_unbounded());
    }

    #[test]
    fn half_droop_when_noise_equals_signal() {
        // δP_ik·L_k⁻¹ = P_{k−1} → χ_ak = 1/2.
        let stage =
            SpanStage::new(0.25, 1.0, 0.5, RedistributionSource::Power(0.0)).unwrap();
        let d = span_droops(&stage, 2.0).unwrap();
        assert_eq!(d.chi_a, 0.5);
        assert_eq!(d.snr_a1.linear(), Some(1.0));
    }

    #[test]
    fn matches_homogeneous_droops() {
        // Identical stages reduce to the homogeneous addition/redistribution droops.
        let p = 1.5;
        let loss = 0.05;
        let injected = 3e-4;
        let spec = RedistributionSpec::nli_only(4.34e-4, 78.0).unwrap();
        let stage = SpanStage::new(loss, p, injected, RedistributionSource::Spec(spec)).unwrap();
        let d = span_droops(&stage, p).unwrap();
        let (chi_a, snr_a1) = droop_core::addition_droop(p, injected, loss).unwrap();
        let (chi_r, snr_r1) = droop_core::redistribution_droop(p, &spec).unwrap();
        assert_eq!(d.chi_a, chi_a);
        assert_eq!(d.chi_r, chi_r);
        assert_eq!(d.snr_a1.linear(), snr_a1.linear());
        assert_eq!(d.snr_r1.linear(), snr_r1.linear());
    }

    #[test]
    fn rejects_nonpositive_input_power() {
        let stage = SpanStage::new(0.1, 1.0, 0.0, RedistributionSource::Power(0.0)).unwrap();
        assert!(span_droops(&stage, 0.0).is_err());
    }
}
