//! Spectral efficiency per mode and the GN-to-GDF SE gap.

use crate::error::{DroopError, Result};

/// Shannon spectral efficiency per mode for dual-polarization transmission:
/// `SE = 2·log₂(1+SNR)` [b/s/Hz].
pub fn spectral_efficiency(snr_linear: f64) -> Result<f64> {
    if !(snr_linear >= 0.0) {
        return Err(DroopError::domain("snr_linear", "non-negative", snr_linear));
    }
    Ok(2.0 * snr_linear.ln_1p() / std::f64::consts::LN_2)
}

/// Closed-form estimates of the spectral-efficiency loss from using the GN
/// SNR in place of the GDF SNR.
#[derive(Debug, Clone, Copy)]
pub struct SeGap {
    /// Large-N approximation `(2/ln2)·S/(1+2S+2S²)` [b/s/Hz]. A good estimate
    /// at all powers, but neither an upper nor a lower bound on the exact gap.
    pub approx: f64,
    /// Guaranteed large-N upper bound `1/(ln2·(S+½))` [b/s/Hz].
    pub upper_bound: f64,
}

/// SE gap estimates as a function of the GN-model SNR alone.
pub fn se_gap(snr_gn: f64) -> Result<SeGap> {
    if !(snr_gn > 0.0) {
        return Err(DroopError::domain("snr_gn", "positive", snr_gn));
    }
    let s = snr_gn;
    let ln2 = std::f64::consts::LN_2;
    Ok(SeGap {
        approx: (2.0 / ln2) * s / (1.0 + 2.0 * s + 2.0 * s * s),
        upper_bound: 1.0 / (ln2 * (s + 0.5)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn se_anchor_points() {
        assert_eq!(spectral_efficiency(0.0).unwrap(), 0.0);
        assert!((spectral_efficiency(1.0).unwrap() - 2.0).abs() < 1e-14);
        assert!((spectral_efficiency(3.0).unwrap() - 4.0).abs() < 1e-14);
        assert!(spectral_efficiency(-0.1).is_err());
    }

    #[test]
    fn gap_at_unit_snr() {
        let g = se_gap(1.0).unwrap();
        assert!((g.approx - 0.57708).abs() < 1e-4);
        assert!(g.approx <= g.upper_bound);
    }

    #[test]
    fn gap_vanishes_at_high_snr() {
        let g = se_gap(1e6).unwrap();
        assert!(g.approx < 2e-6);
        assert!(g.upper_bound < 2e-6);
    }

    #[test]
    fn approx_below_upper_bound_everywhere() {
        let mut s = 1e-3;
        while s < 1e6 {
            let g = se_gap(s).unwrap();
            assert!(g.approx <= g.upper_bound, "violated at SNR {s}");
            s *= 1.1;
        }
    }
}
