//! Invariants of the closed-form droop algebra.

use droop_core::{
    gdf_bounds, gdf_osnr, gdf_snr_explicit, gdf_snr_single_span, gn_snr, power_split, se_gap,
    spectral_efficiency, units, Snr,
};
use proptest::prelude::*;

proptest! {
    /// Signal plus accumulated noise always reconstructs the launch power.
    #[test]
    fn power_conservation(
        p in 1e-3f64..1e2,
        chi in 1e-4f64..=1.0,
        n in 0u32..=10_000,
    ) {
        let (signal, noise) = power_split(p, chi, n);
        prop_assert!((signal + noise - p).abs() <= 1e-14 * p);
        prop_assert!(signal >= 0.0 && noise >= 0.0);
    }

    /// 1 + 1/OSNR = [(1+1/SNR_a1)(1+1/SNR_r1)]^N, the product rule for
    /// inverse droop.
    #[test]
    fn product_rule_identity(
        snr_a in 1f64..1e6,
        snr_r in 1f64..1e6,
        n in 1u32..=300,
    ) {
        let osnr = gdf_osnr(Snr::Finite(snr_a), Snr::Finite(snr_r), n)
            .unwrap()
            .linear()
            .unwrap();
        let lhs = (1.0 / osnr).ln_1p();
        let rhs = n as f64 * ((1.0 / snr_a).ln_1p() + (1.0 / snr_r).ln_1p());
        prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs.abs());
    }

    /// GN never under-estimates: SNR_s ≥ GDF, from (1+x)^N − 1 ≥ Nx.
    #[test]
    fn gn_dominates_gdf(
        p in 0.01f64..10.0,
        beta in 1e-6f64..1e-2,
        alpha in 1e-6f64..1e-2,
        n in 1u32..=300,
    ) {
        let gdf = gdf_snr_explicit(p, beta, alpha, n).unwrap().linear().unwrap();
        let gn = gn_snr(p, beta, alpha, n).unwrap().snr_s.linear().unwrap();
        prop_assert!(gn >= gdf);
    }

    /// The GDF grows with either single-span SNR and shrinks with span count.
    #[test]
    fn gdf_monotonicity(
        snr_a in 1f64..1e5,
        snr_r in 1f64..1e5,
        n in 1u32..=200,
    ) {
        let base = gdf_osnr(Snr::Finite(snr_a), Snr::Finite(snr_r), n)
            .unwrap().linear().unwrap();
        let better_a = gdf_osnr(Snr::Finite(snr_a * 1.5), Snr::Finite(snr_r), n)
            .unwrap().linear().unwrap();
        let better_r = gdf_osnr(Snr::Finite(snr_a), Snr::Finite(snr_r * 1.5), n)
            .unwrap().linear().unwrap();
        let longer = gdf_osnr(Snr::Finite(snr_a), Snr::Finite(snr_r), n + 1)
            .unwrap().linear().unwrap();
        prop_assert!(better_a > base);
        prop_assert!(better_r > base);
        prop_assert!(longer < base);
    }

    /// The SE gap approximation never exceeds its companion upper bound.
    #[test]
    fn se_gap_approx_below_bound(snr in 1e-3f64..1e6) {
        let g = se_gap(snr).unwrap();
        prop_assert!(g.approx <= g.upper_bound);
    }
}

/// LB ≤ GDF ≤ UB ≤ SNR_s on a deterministic (N, SNR_s) grid, with the
/// dB-approximation slotting between GDF and UB.
///
/// The dB-linearized approximation is an upper bound on the GDF only for
/// N ≥ 5 (the 1/SNR_s series coefficient of approx−GDF changes sign at
/// N = 5), so that link of the chain is checked from N = 10 up.
#[test]
fn bound_ordering_grid() {
    for &n in &[2u32, 10, 40, 100, 230] {
        let mut snr_s = 0.1f64;
        while snr_s <= 1e4 {
            let gdf = gdf_snr_single_span(Snr::Finite(snr_s * n as f64), n)
                .unwrap()
                .linear()
                .unwrap();
            let b = gdf_bounds(snr_s, n).unwrap();
            let approx_lin = units::linear_from_db(b.db_approx);
            if let Some(lb) = b.lower {
                assert!(lb <= gdf * (1.0 + 1e-12), "LB>GDF at N={n} S={snr_s}");
            }
            if n >= 10 {
                assert!(
                    gdf <= approx_lin * (1.0 + 1e-12),
                    "GDF>approx at N={n} S={snr_s}"
                );
            }
            assert!(
                approx_lin <= b.upper * (1.0 + 1e-12),
                "approx>UB at N={n} S={snr_s}"
            );
            assert!(gdf <= b.upper * (1.0 + 1e-12), "GDF>UB at N={n} S={snr_s}");
            assert!(b.upper <= snr_s, "UB>SNR_s at N={n} S={snr_s}");
            snr_s *= 1.15;
        }
    }
}

/// SNR_s − GDF converges to ½(1−1/N) from below as SNR_s grows.
#[test]
fn asymptotic_gap() {
    for &n in &[2u32, 10, 40, 100, 230] {
        let asymptote = 0.5 * (1.0 - 1.0 / n as f64);
        let mut last_gap = 0.0;
        let mut snr_s = 0.2f64;
        while snr_s <= 1e6 {
            let gdf = gdf_snr_single_span(Snr::Finite(snr_s * n as f64), n)
                .unwrap()
                .linear()
                .unwrap();
            let gap = snr_s - gdf;
            assert!(gap <= asymptote * (1.0 + 1e-9));
            assert!(gap >= last_gap - 1e-12, "gap not monotone at N={n}");
            last_gap = gap;
            snr_s *= 1.3;
        }
        assert!(
            (last_gap - asymptote).abs() < 1e-3 * asymptote,
            "gap did not converge for N={n}"
        );
    }
}

/// The bound curves are essentially N-independent once N ≥ 40: over the
/// region where the lower bound is healthily positive, N = 40 and N = 1000
/// differ by less than 1% relative.
#[test]
fn bound_curves_n_invariant() {
    let mut snr_s = 2.0f64;
    while snr_s <= 1e4 {
        let b40 = gdf_bounds(snr_s, 40).unwrap();
        let b1000 = gdf_bounds(snr_s, 1000).unwrap();
        let ub_diff = (b40.upper - b1000.upper).abs() / b1000.upper;
        assert!(ub_diff < 0.01, "UB diff {ub_diff} at SNR_s={snr_s}");
        let (l40, l1000) = (b40.lower.unwrap(), b1000.lower.unwrap());
        let lb_diff = (l40 - l1000).abs() / l1000;
        assert!(lb_diff < 0.01, "LB diff {lb_diff} at SNR_s={snr_s}");
        snr_s *= 1.2;
    }
}

/// The exact GN-to-GDF gap in dB stays below 2.5 dB whenever the GN SNR is
/// at least 0 dB, for each case-study NLI coefficient.
#[test]
fn gn_gdf_gap_below_2p5_db() {
    let beta_ex2000 = 5.75e-4;
    let beta_nzdsf = 8.668e-3;
    for &(alpha, beta, n) in &[
        (4.34e-4, beta_ex2000, 228u32),
        (4.63e-4, beta_ex2000, 190),
        (19.01e-4, beta_nzdsf, 40),
    ] {
        let mut p_dbm = -15.0;
        while p_dbm <= 12.0 {
            let p = units::mw_from_dbm(p_dbm);
            let gn = gn_snr(p, beta, alpha, n).unwrap().snr_s.linear().unwrap();
            if gn >= 1.0 {
                let gdf = gdf_snr_explicit(p, beta, alpha, n)
                    .unwrap()
                    .linear()
                    .unwrap();
                let gap_db = 10.0 * (gn / gdf).log10();
                assert!(gap_db <= 2.5, "gap {gap_db} dB at {p_dbm} dBm, N={n}");
            }
            p_dbm += 0.1;
        }
    }
}

/// Spectral efficiency is monotone in SNR.
#[test]
fn se_monotone() {
    let mut last = -1.0;
    let mut snr = 0.0;
    while snr < 100.0 {
        let se = spectral_efficiency(snr).unwrap();
        assert!(se > last);
        last = se;
        snr += 0.37;
    }
}
