//! Span-averaged NLI coefficient estimation from noise-free runs.
//!
//! Without ASE the chain has only redistribution droop, so the received
//! constellation scatter directly measures the normalized end-to-end NLI
//! variance `V_NLI(P) = (1+α_NL·P²)ᴺ − 1`. Inverting that at a single low
//! power yields the span-averaged coefficient the closed-form models use;
//! the power-dependent curve `α(P) = V_NLI(P)/(N·P²)` must flatten at low
//! power, and failure to flatten flags an insufficient step size.

use crate::error::{Result, SsfmError};

/// Analytic normalized end-to-end NLI variance `(1+α_NL·P²)ᴺ − 1`.
pub fn v_nli_analytic(alpha_nl_mw2: f64, p_mw: f64, n_spans: u32) -> f64 {
    (n_spans as f64 * (alpha_nl_mw2 * p_mw * p_mw).ln_1p()).exp_m1()
}

/// Analytic span-averaged power-dependent NLI coefficient
/// `V_NLI(P)/(N·P²)` [mW⁻²].
pub fn alpha_curve_analytic(alpha_nl_mw2: f64, p_mw: f64, n_spans: u32) -> f64 {
    v_nli_analytic(alpha_nl_mw2, p_mw, n_spans) / (n_spans as f64 * p_mw * p_mw)
}

/// Invert one measured variance into the span-averaged coefficient:
/// `α_NL = ((V+1)^{1/N} − 1)/P²`.
pub fn span_average_alpha(v_nli: f64, p_mw: f64, n_spans: u32) -> f64 {
    (v_nli.ln_1p() / n_spans as f64).exp_m1() / (p_mw * p_mw)
}

/// One point of the measured curve.
#[derive(Debug, Clone, Copy)]
pub struct AlphaPoint {
    pub power_mw: f64,
    pub v_nli: f64,
    /// Power-dependent coefficient V̂/(N·P²) [mW⁻²].
    pub alpha_mw2: f64,
}

/// Result of the estimation protocol.
#[derive(Debug, Clone)]
pub struct AlphaFit {
    /// Span-averaged coefficient from the lowest-power run [mW⁻²].
    pub alpha_nl_mw2: f64,
    pub fit_power_mw: f64,
    /// Measured α̂(P) curve, sorted by power.
    pub curve: Vec<AlphaPoint>,
    /// The two lowest-power points spread by more than 0.3 dB: the curve has
    /// not flattened, which indicates the split-step size is too coarse.
    pub step_size_warning: bool,
}

/// Flatness tolerance between the two lowest powers [dB].
pub const FLATNESS_TOL_DB: f64 = 0.3;

/// Run the inversion over `(power mW, measured V_NLI)` points from runs with
/// ASE disabled. The span-averaged α_NL is taken from the lowest power.
pub fn estimate_alpha_nl(points: &[(f64, f64)], n_spans: u32) -> Result<AlphaFit> {
    if points.is_empty() {
        return Err(SsfmError::config("no measurement points"));
    }
    if n_spans == 0 {
        return Err(SsfmError::config("span count must be at least 1"));
    }
    for &(p, v) in points {
        if !(p > 0.0) {
            return Err(SsfmError::config(format!("non-positive power {p}")));
        }
        if !(v > 0.0) {
            return Err(SsfmError::config(format!(
                "non-positive NLI variance {v} at {p} mW"
            )));
        }
    }
    let mut curve: Vec<AlphaPoint> = points
        .iter()
        .map(|&(power_mw, v_nli)| AlphaPoint {
            power_mw,
            v_nli,
            alpha_mw2: v_nli / (n_spans as f64 * power_mw * power_mw),
        })
        .collect();
    curve.sort_by(|a, b| a.power_mw.total_cmp(&b.power_mw));

    let fit = &curve[0];
    let alpha_nl_mw2 = span_average_alpha(fit.v_nli, fit.power_mw, n_spans);

    let step_size_warning = if curve.len() >= 2 {
        let spread_db = 10.0 * (curve[0].alpha_mw2 / curve[1].alpha_mw2).log10();
        spread_db.abs() > FLATNESS_TOL_DB
    } else {
        false
    };

    Ok(AlphaFit {
        alpha_nl_mw2,
        fit_power_mw: fit.power_mw,
        curve,
        step_size_warning,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_span_inversion_is_exact() {
        // N = 1: α = V/P².
        let fit = estimate_alpha_nl(&[(2.0, 0.02)], 1).unwrap();
        assert!((fit.alpha_nl_mw2 - 0.005).abs() < 1e-15);
    }

    #[test]
    fn synthetic_roundtrip() {
        let alpha = 7.3e-4;
        let n = 57;
        let points: Vec<(f64, f64)> = [0.3, 0.7, 1.5, 3.0]
            .iter()
            .map(|&p| (p, v_nli_analytic(alpha, p, n)))
            .collect();
        let fit = estimate_alpha_nl(&points, n).unwrap();
        assert!((fit.alpha_nl_mw2 - alpha).abs() <= 1e-12 * alpha);
        assert!(!fit.step_size_warning);
        assert_eq!(fit.fit_power_mw, 0.3);
    }

    #[test]
    fn curve_matches_analytic_shape() {
        let alpha = 4.34e-4;
        let n = 228;
        for &p in &[0.1, 0.5, 1.0, 2.0, 4.0] {
            let v = v_nli_analytic(alpha, p, n);
            let curve = alpha_curve_analytic(alpha, p, n);
            assert!((curve - v / (n as f64 * p * p)).abs() <= 1e-15 * curve);
            // At low power the curve approaches the per-span coefficient.
            if p <= 0.1 {
                assert!((curve - alpha).abs() / alpha < 5e-3);
            }
        }
    }

    #[test]
    fn warning_when_low_powers_disagree() {
        let n = 40;
        let alpha = 1e-3;
        // Fake a spurious numerical floor at the lowest power: 0.5 dB high.
        let boost = 10f64.powf(0.05);
        let points = vec![
            (0.2, v_nli_analytic(alpha, 0.2, n) * boost),
            (0.4, v_nli_analytic(alpha, 0.4, n)),
            (1.0, v_nli_analytic(alpha, 1.0, n)),
        ];
        let fit = estimate_alpha_nl(&points, n).unwrap();
        assert!(fit.step_size_warning);
    }

    #[test]
    fn rejects_bad_points() {
        assert!(estimate_alpha_nl(&[], 10).is_err());
        assert!(estimate_alpha_nl(&[(0.0, 0.1)], 10).is_err());
        assert!(estimate_alpha_nl(&[(1.0, 0.0)], 10).is_err());
    }
}
