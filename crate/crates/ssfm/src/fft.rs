//! Thin FFT wrapper with planned transforms and reusable scratch.

use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

/// Forward/inverse FFT pair for one transform length.
///
/// The inverse is unnormalized (rustfft convention); callers fold the 1/n
/// into whatever operator they multiply in, or use
/// [`FftEngine::inverse_normalized`].
pub struct FftEngine {
    n: usize,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
    scratch: Vec<Complex64>,
}

impl FftEngine {
    pub fn new(n: usize) -> Self {
        let mut planner = FftPlanner::new();
        let forward = planner.plan_fft_forward(n);
        let inverse = planner.plan_fft_inverse(n);
        let scratch_len = forward
            .get_inplace_scratch_len()
            .max(inverse.get_inplace_scratch_len());
        FftEngine {
            n,
            forward,
            inverse,
            scratch: vec![Complex64::new(0.0, 0.0); scratch_len],
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn forward(&mut self, buf: &mut [Complex64]) {
        debug_assert_eq!(buf.len(), self.n);
        self.forward.process_with_scratch(buf, &mut self.scratch);
    }

    /// Unnormalized inverse transform.
    pub fn inverse(&mut self, buf: &mut [Complex64]) {
        debug_assert_eq!(buf.len(), self.n);
        self.inverse.process_with_scratch(buf, &mut self.scratch);
    }

    /// Inverse transform scaled by 1/n, so forward→inverse round-trips.
    pub fn inverse_normalized(&mut self, buf: &mut [Complex64]) {
        self.inverse(buf);
        let scale = 1.0 / self.n as f64;
        for v in buf.iter_mut() {
            *v *= scale;
        }
    }
}

/// FFT bin frequency [Hz] for bin `k` of an `n`-point transform at sample
/// rate `fs`: non-negative frequencies first, then the negative half.
pub fn bin_frequency(k: usize, n: usize, fs: f64) -> f64 {
    let df = fs / n as f64;
    if k < n / 2 {
        k as f64 * df
    } else {
        (k as f64 - n as f64) * df
    }
}
