//! Decibel and dBm conversions, used only at I/O boundaries.

/// Linear power ratio to dB.
pub fn db_from_linear(x: f64) -> f64 {
    10.0 * x.log10()
}

/// dB to linear power ratio.
pub fn linear_from_db(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// dBm to mW.
pub fn mw_from_dbm(dbm: f64) -> f64 {
    10f64.powf(dbm / 10.0)
}

/// mW to dBm.
pub fn dbm_from_mw(mw: f64) -> f64 {
    10.0 * mw.log10()
}

/// Linear span loss (a ratio in (0,1)) from a total span attenuation in dB.
pub fn span_loss_from_db(total_db: f64) -> f64 {
    10f64.powf(-total_db / 10.0)
}
