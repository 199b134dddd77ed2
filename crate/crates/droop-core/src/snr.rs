//! SNR value type and the combined per-point model report.

use std::fmt;

use crate::error::{DroopError, Result};
use crate::gdf::{gdf_bounds, gdf_snr_explicit, gn_snr};
use crate::units;

/// A linear signal-to-noise ratio that may be unbounded.
///
/// The noiseless limit is a distinct marker rather than a sentinel float, so
/// it survives arithmetic untouched and formats as `inf`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Snr {
    Finite(f64),
    Unbounded,
}

impl Snr {
    /// Wrap a strictly positive linear SNR.
    pub fn finite(value: f64) -> Result<Self> {
        if value > 0.0 && value.is_finite() {
            Ok(Snr::Finite(value))
        } else {
            Err(DroopError::domain("snr", "positive and finite", value))
        }
    }

    /// Inverse SNR; zero for the unbounded marker.
    pub fn inverse(&self) -> f64 {
        match *self {
            Snr::Finite(v) => 1.0 / v,
            Snr::Unbounded => 0.0,
        }
    }

    /// Linear value, if finite.
    pub fn linear(&self) -> Option<f64> {
        match *self {
            Snr::Finite(v) => Some(v),
            Snr::Unbounded => None,
        }
    }

    /// dB value, if finite.
    pub fn db(&self) -> Option<f64> {
        self.linear().map(units::db_from_linear)
    }

    pub fn is_unbounded(&self) -> bool {
        matches!(self, Snr::Unbounded)
    }

    /// Linear value with the unbounded marker mapped to `f64::INFINITY`.
    /// For formatting and plotting only; model math should use [`Snr::inverse`].
    pub fn linear_or_inf(&self) -> f64 {
        match *self {
            Snr::Finite(v) => v,
            Snr::Unbounded => f64::INFINITY,
        }
    }
}

impl fmt::Display for Snr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Snr::Finite(v) => write!(f, "{v}"),
            Snr::Unbounded => write!(f, "inf"),
        }
    }
}

/// Every closed-form SNR estimate for one (power, chain) operating point.
///
/// Bounds and the dB approximation are absent when undefined: the lower bound
/// crosses zero at `SNR_s = (N−1)/(2N)` and is not reported below that, and
/// none of the three exist when the standard SNR is unbounded.
#[derive(Debug, Clone, Copy)]
pub struct SnrReport {
    pub snr_gdf: Snr,
    pub snr_gn: Snr,
    /// Upper bound to the GDF, linear.
    pub snr_ub: Option<f64>,
    /// Lower bound to the GDF, linear; absent when non-positive.
    pub snr_lb: Option<f64>,
    /// dB-linearized approximation to the GDF, stored linear.
    pub snr_db_approx: Option<f64>,
    /// SNR degraded by the total noise of a single span.
    pub snr_1: Snr,
    /// Standard (constant-gain accumulation) SNR, `SNR_1/N`.
    pub snr_s: Snr,
}

/// Evaluate the full closed-form report for an ASE+NLI span chain.
pub fn snr_report(p_mw: f64, beta_mw: f64, alpha_nl_mw2: f64, n_spans: u32) -> Result<SnrReport> {
    let gdf = gdf_snr_explicit(p_mw, beta_mw, alpha_nl_mw2, n_spans)?;
    let gn = gn_snr(p_mw, beta_mw, alpha_nl_mw2, n_spans)?;
    let (ub, lb, approx) = match gn.snr_s {
        Snr::Finite(s) => {
            let b = gdf_bounds(s, n_spans)?;
            (
                Some(b.upper),
                b.lower,
                Some(units::linear_from_db(b.db_approx)),
            )
        }
        Snr::Unbounded => (None, None, None),
    };
    Ok(SnrReport {
        snr_gdf: gdf,
        snr_gn: gn.snr_s,
        snr_ub: ub,
        snr_lb: lb,
        snr_db_approx: approx,
        snr_1: gn.snr_1,
        snr_s: gn.snr_s,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unbounded_formats_as_inf() {
        assert_eq!(Snr::Unbounded.to_string(), "inf");
        assert_eq!(Snr::Unbounded.inverse(), 0.0);
        assert!(Snr::Unbounded.linear().is_none());
    }

    #[test]
    fn finite_rejects_nonpositive() {
        assert!(Snr::finite(0.0).is_err());
        assert!(Snr::finite(-1.0).is_err());
        assert!(Snr::finite(f64::NAN).is_err());
        assert_eq!(Snr::finite(2.0).unwrap().linear(), Some(2.0));
    }

    #[test]
    fn report_orders_bounds() {
        let r = snr_report(1.0, 5.75e-4, 4.34e-4, 228).unwrap();
        let gdf = r.snr_gdf.linear().unwrap();
        let gn = r.snr_gn.linear().unwrap();
        assert!(r.snr_lb.unwrap() <= gdf);
        assert!(gdf <= r.snr_db_approx.unwrap() * (1.0 + 1e-12));
        assert!(r.snr_db_approx.unwrap() <= r.snr_ub.unwrap());
        assert!(r.snr_ub.unwrap() <= gn);
    }

    #[test]
    fn report_noiseless() {
        let r = snr_report(1.0, 0.0, 0.0, 10).unwrap();
        assert!(r.snr_gdf.is_unbounded());
        assert!(r.snr_gn.is_unbounded());
        assert!(r.snr_ub.is_none());
        assert!(r.snr_lb.is_none());
    }
}
