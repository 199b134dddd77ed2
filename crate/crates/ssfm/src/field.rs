//! The dual-polarization sampled field and its debug dump format.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use num_complex::Complex64;

use crate::error::{Result, SsfmError};
use crate::fft::{bin_frequency, FftEngine};

/// Dual-polarization complex baseband field. Sample magnitudes squared are
/// instantaneous powers in mW.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledField {
    pub pol_x: Vec<Complex64>,
    pub pol_y: Vec<Complex64>,
    pub sample_rate_hz: f64,
    pub center_frequency_hz: f64,
}

impl SampledField {
    pub fn zeros(len: usize, sample_rate_hz: f64, center_frequency_hz: f64) -> Self {
        SampledField {
            pol_x: vec![Complex64::new(0.0, 0.0); len],
            pol_y: vec![Complex64::new(0.0, 0.0); len],
            sample_rate_hz,
            center_frequency_hz,
        }
    }

    pub fn len(&self) -> usize {
        self.pol_x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pol_x.is_empty()
    }

    pub fn validate(&self) -> Result<()> {
        if self.pol_x.len() != self.pol_y.len() {
            return Err(SsfmError::config(format!(
                "polarization lengths differ: {} vs {}",
                self.pol_x.len(),
                self.pol_y.len()
            )));
        }
        if self.is_empty() {
            return Err(SsfmError::config("empty field"));
        }
        if !(self.sample_rate_hz > 0.0) {
            return Err(SsfmError::config("sample rate must be positive"));
        }
        Ok(())
    }

    /// Mean total instantaneous power over both polarizations [mW].
    pub fn total_power_mw(&self) -> f64 {
        let sum: f64 = self
            .pol_x
            .iter()
            .zip(&self.pol_y)
            .map(|(x, y)| x.norm_sqr() + y.norm_sqr())
            .sum();
        sum / self.len() as f64
    }

    /// Peak instantaneous power over both polarizations [mW].
    pub fn peak_power_mw(&self) -> f64 {
        self.pol_x
            .iter()
            .zip(&self.pol_y)
            .map(|(x, y)| x.norm_sqr() + y.norm_sqr())
            .fold(0.0, f64::max)
    }

    /// Per-bin power spectrum [(frequency Hz, power mW)], both polarizations
    /// combined, normalized so the bins sum to the mean total power.
    /// Diagnostic helper; plans its own transforms.
    pub fn power_spectrum(&self) -> Vec<(f64, f64)> {
        let n = self.len();
        let mut eng = FftEngine::new(n);
        let mut x = self.pol_x.clone();
        let mut y = self.pol_y.clone();
        eng.forward(&mut x);
        eng.forward(&mut y);
        let scale = 1.0 / (n as f64 * n as f64);
        (0..n)
            .map(|k| {
                (
                    bin_frequency(k, n, self.sample_rate_hz),
                    (x[k].norm_sqr() + y[k].norm_sqr()) * scale,
                )
            })
            .collect()
    }
}

const DUMP_MAGIC: &[u8; 4] = b"DKFD";
const DUMP_VERSION: u32 = 1;

/// Write a field as little-endian complex64 (f32 re, f32 im) pol-pairs with
/// a small header: magic, version, sample rate, center frequency, length.
pub fn write_field_dump(field: &SampledField, path: &Path) -> Result<()> {
    field.validate()?;
    let mut w = BufWriter::new(File::create(path)?);
    w.write_all(DUMP_MAGIC)?;
    w.write_all(&DUMP_VERSION.to_le_bytes())?;
    w.write_all(&field.sample_rate_hz.to_le_bytes())?;
    w.write_all(&field.center_frequency_hz.to_le_bytes())?;
    w.write_all(&(field.len() as u64).to_le_bytes())?;
    for (x, y) in field.pol_x.iter().zip(&field.pol_y) {
        w.write_all(&(x.re as f32).to_le_bytes())?;
        w.write_all(&(x.im as f32).to_le_bytes())?;
        w.write_all(&(y.re as f32).to_le_bytes())?;
        w.write_all(&(y.im as f32).to_le_bytes())?;
    }
    w.flush()?;
    Ok(())
}

/// Read a dump produced by [`write_field_dump`].
pub fn read_field_dump(path: &Path) -> Result<SampledField> {
    let mut r = BufReader::new(File::open(path)?);
    let mut magic = [0u8; 4];
    r.read_exact(&mut magic)?;
    if &magic != DUMP_MAGIC {
        return Err(SsfmError::BadDump {
            reason: format!("magic {magic:?}"),
        });
    }
    let mut u32buf = [0u8; 4];
    r.read_exact(&mut u32buf)?;
    let version = u32::from_le_bytes(u32buf);
    if version != DUMP_VERSION {
        return Err(SsfmError::BadDump {
            reason: format!("unsupported version {version}"),
        });
    }
    let mut f64buf = [0u8; 8];
    r.read_exact(&mut f64buf)?;
    let sample_rate_hz = f64::from_le_bytes(f64buf);
    r.read_exact(&mut f64buf)?;
    let center_frequency_hz = f64::from_le_bytes(f64buf);
    r.read_exact(&mut f64buf)?;
    let len = u64::from_le_bytes(f64buf) as usize;
    let mut field = SampledField::zeros(len, sample_rate_hz, center_frequency_hz);
    let mut f32buf = [0u8; 4];
    let mut next = |r: &mut BufReader<File>| -> Result<f64> {
        r.read_exact(&mut f32buf)?;
        Ok(f32::from_le_bytes(f32buf) as f64)
    };
    for i in 0..len {
        field.pol_x[i] = Complex64::new(next(&mut r)?, next(&mut r)?);
        field.pol_y[i] = Complex64::new(next(&mut r)?, next(&mut r)?);
    }
    field.validate()?;
    Ok(field)
}
