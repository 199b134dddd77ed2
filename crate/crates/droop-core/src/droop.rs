//! Per-span droop factors and power evolution along the chain.

use crate::error::{DroopError, Result};
use crate::snr::Snr;
use crate::types::{HomogeneousChain, PhysicalNoiseSpec, RedistributionSpec};

/// ASE power β [mW] generated per mode over bandwidth B at the output of an
/// amplifier whose gain exactly compensates the span loss: `β = hνFB·L⁻¹`.
pub fn ase_beta(noise: &PhysicalNoiseSpec, span_loss: f64) -> Result<f64> {
    noise.validate()?;
    if !(span_loss > 0.0 && span_loss < 1.0) {
        return Err(DroopError::domain(
            "span_loss",
            "a linear ratio in (0,1)",
            span_loss,
        ));
    }
    Ok(
        noise.planck_js * noise.center_frequency_hz * noise.noise_figure * noise.bandwidth_hz
            * 1e3
            / span_loss,
    )
}

/// Addition droop of one span: the amplifier injects an equivalent input
/// noise power `δP_i`, so its gain drops by `χ_a = (1 + δP_i·L⁻¹/P)⁻¹` to
/// keep the total output at P. Returns `(χ_a, SNR_a1)` where
/// `SNR_a1 = P/(δP_i·L⁻¹)`.
pub fn addition_droop(p_mw: f64, injected_mw: f64, span_loss: f64) -> Result<(f64, Snr)> {
    if !(p_mw > 0.0) {
        return Err(DroopError::domain("p_mw", "positive", p_mw));
    }
    if !(injected_mw >= 0.0) {
        return Err(DroopError::domain("injected_mw", "non-negative", injected_mw));
    }
    if !(span_loss > 0.0 && span_loss < 1.0) {
        return Err(DroopError::domain(
            "span_loss",
            "a linear ratio in (0,1)",
            span_loss,
        ));
    }
    if injected_mw == 0.0 {
        return Ok((1.0, Snr::Unbounded));
    }
    let snr = p_mw / (injected_mw / span_loss);
    Ok((1.0 / (1.0 + 1.0 / snr), Snr::Finite(snr)))
}

/// Redistribution droop of one span: the fiber moves `δP_r` of signal power
/// into distortion products, and renormalization back to P costs
/// `χ_r = (1 + δP_r/P)⁻¹`. Returns `(χ_r, SNR_r1)` with `SNR_r1 = P/δP_r`.
pub fn redistribution_droop(p_mw: f64, spec: &RedistributionSpec) -> Result<(f64, Snr)> {
    if !(p_mw > 0.0) {
        return Err(DroopError::domain("p_mw", "positive", p_mw));
    }
    spec.validate()?;
    let redistributed = spec.redistributed_power_mw(p_mw);
    if redistributed == 0.0 {
        return Ok((1.0, Snr::Unbounded));
    }
    let snr = p_mw / redistributed;
    Ok((1.0 / (1.0 + 1.0 / snr), Snr::Finite(snr)))
}

/// Signal and accumulated-noise powers after the chain, plus the span count
/// at which signal and ASE powers become equal.
#[derive(Debug, Clone, Copy)]
pub struct PowerEvolution {
    /// Desired signal power at the output of the N-th amplifier: `P·χᴺ`.
    pub signal_mw: f64,
    /// Accumulated noise power: `P·(1−χᴺ)`.
    pub noise_mw: f64,
    /// Spans until signal and ASE powers cross: `ln2·SNR_a1`
    /// (infinite for a noiseless amplifier).
    pub crossover_spans: f64,
}

/// Split the constant total power P between the drooped signal `P·χⁿ` and the
/// accumulated noise `P·(1−χⁿ)` after `n` spans. `n = 0` returns `(P, 0)`.
pub fn power_split(p_mw: f64, chi: f64, n: u32) -> (f64, f64) {
    let drooped = chi.powi(n as i32);
    let signal = p_mw * drooped;
    (signal, p_mw - signal)
}

/// Evaluate the power trajectory of a homogeneous chain under total per-span
/// droop `chi` at the chain's span count.
pub fn power_evolution(chain: &HomogeneousChain, chi: f64) -> Result<PowerEvolution> {
    chain.validate()?;
    if !(chi > 0.0 && chi <= 1.0) {
        return Err(DroopError::domain("chi", "in (0,1]", chi));
    }
    let p = chain.launch_power_mw;
    let (signal_mw, noise_mw) = power_split(p, chi, chain.span_count);
    let injected = chain.noise.injected_power_mw(p);
    let crossover_spans = if injected == 0.0 {
        f64::INFINITY
    } else {
        std::f64::consts::LN_2 * p / (injected / chain.span_loss)
    };
    Ok(PowerEvolution {
        signal_mw,
        noise_mw,
        crossover_spans,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{DEFAULT_CENTER_FREQUENCY_HZ, PLANCK_JS};

    fn case_a_noise() -> PhysicalNoiseSpec {
        // 8 dB noise figure, 34.17 GHz tributary bandwidth, single mode.
        PhysicalNoiseSpec::ase(10f64.powf(0.8), 34.17e9, 1).unwrap()
    }

    fn case_a_loss() -> f64 {
        // 78 km at 0.169 dB/km.
        crate::units::span_loss_from_db(78.0 * 0.169)
    }

    #[test]
    fn beta_case_a_value() {
        let beta = ase_beta(&case_a_noise(), case_a_loss()).unwrap();
        // hνFB·L⁻¹ with the case-A numbers lands at ≈ 5.75e-4 mW.
        assert!(
            (beta - 5.750e-4).abs() < 3e-6,
            "beta = {beta}, expected ≈ 5.75e-4"
        );
    }

    #[test]
    fn beta_linear_in_bandwidth() {
        let loss = 0.1;
        let n1 = PhysicalNoiseSpec::ase(2.0, 10e9, 1).unwrap();
        let n2 = PhysicalNoiseSpec::ase(2.0, 20e9, 1).unwrap();
        let b1 = ase_beta(&n1, loss).unwrap();
        let b2 = ase_beta(&n2, loss).unwrap();
        assert_eq!(b2, 2.0 * b1);
    }

    #[test]
    fn beta_noiseless_limit() {
        // F = 1 with a vanishing bandwidth drives β to zero.
        let n = PhysicalNoiseSpec::ase(1.0, 1e-3, 1).unwrap();
        let beta = ase_beta(&n, 0.1).unwrap();
        assert!(beta > 0.0 && beta < 1e-17);
        let expected = PLANCK_JS * DEFAULT_CENTER_FREQUENCY_HZ * 1e-3 * 1e3 / 0.1;
        assert!((beta - expected).abs() <= 1e-12 * expected);
    }

    #[test]
    fn addition_droop_equal_powers() {
        // δP_i·L⁻¹ = P gives χ_a = 1/2 and unit SNR.
        let (chi, snr) = addition_droop(1.0, 0.5, 0.5).unwrap();
        assert_eq!(chi, 0.5);
        assert_eq!(snr.linear(), Some(1.0));
    }

    #[test]
    fn addition_droop_noiseless() {
        let (chi, snr) = addition_droop(1.0, 0.0, 0.5).unwrap();
        assert_eq!(chi, 1.0);
        assert!(snr.is_unbounded());
    }

    #[test]
    fn addition_droop_hundredth() {
        let (chi, snr) = addition_droop(1.0, 0.005, 0.5).unwrap();
        assert!((snr.linear().unwrap() - 100.0).abs() < 1e-12);
        assert!((chi - 1.0 / 1.01).abs() < 1e-15);
    }

    #[test]
    fn addition_droop_rejects_nonpositive_power() {
        assert!(addition_droop(0.0, 0.1, 0.5).is_err());
        assert!(addition_droop(-1.0, 0.1, 0.5).is_err());
    }

    #[test]
    fn redistribution_droop_ideal_fiber() {
        let spec = RedistributionSpec::new(0.0, 0.0, 0.0, 80.0).unwrap();
        let (chi, snr) = redistribution_droop(3.0, &spec).unwrap();
        assert_eq!(chi, 1.0);
        assert!(snr.is_unbounded());
    }

    #[test]
    fn redistribution_droop_equal_powers() {
        // α_NL·P² = 1 makes δP_r = P.
        let spec = RedistributionSpec::nli_only(0.25, 80.0).unwrap();
        let (chi, snr) = redistribution_droop(2.0, &spec).unwrap();
        assert_eq!(chi, 0.5);
        assert_eq!(snr.linear(), Some(1.0));
    }

    #[test]
    fn redistribution_droop_case_a_power() {
        let spec = RedistributionSpec::nli_only(4.34e-4, 78.0).unwrap();
        let (_, snr) = redistribution_droop(2.0, &spec).unwrap();
        assert!((snr.linear().unwrap() - 576.0369).abs() < 1e-3);
    }

    #[test]
    fn power_split_identities() {
        let (s, n) = power_split(2.0, 1.0, 500);
        assert_eq!(s, 2.0);
        assert_eq!(n, 0.0);
        let (s, n) = power_split(2.0, 0.9, 0);
        assert_eq!(s, 2.0);
        assert_eq!(n, 0.0);
    }

    #[test]
    fn crossover_near_ln2_snr() {
        // SNR_a1 = 100: the signal/ASE crossover sits between spans 69 and 70.
        let p = 1.0;
        let loss = 0.5;
        let injected = 0.005; // δP_i·L⁻¹ = 0.01 → SNR_a1 = 100
        let (chi_a, snr) = addition_droop(p, injected, loss).unwrap();
        let crossover = std::f64::consts::LN_2 * snr.linear().unwrap();
        assert!((crossover - 69.3147).abs() < 1e-3);
        let (s69, n69) = power_split(p, chi_a, 69);
        let (s70, n70) = power_split(p, chi_a, 70);
        assert!(s69 >= n69);
        assert!(s70 < n70);
    }

    #[test]
    fn power_evolution_from_chain() {
        let chain = HomogeneousChain::new(
            0.5,
            70,
            1.0,
            PhysicalNoiseSpec::ase(1.0, 1e9, 1).unwrap(),
            RedistributionSpec::nli_only(0.0, 80.0).unwrap(),
        )
        .unwrap();
        let factors = chain.droop_factors().unwrap();
        let evo = power_evolution(&chain, factors.chi).unwrap();
        assert!((evo.signal_mw + evo.noise_mw - 1.0).abs() < 1e-14);
        assert!(evo.crossover_spans.is_finite());
    }
}
