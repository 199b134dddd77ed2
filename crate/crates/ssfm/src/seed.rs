//! Deterministic seed derivation and Gaussian sampling.

use num_complex::Complex64;
use rand::Rng;

/// Mix a base seed with a stream index into an independent child seed
/// (splitmix64 finalizer). Same inputs, same output, always.
pub fn derive_seed(base: u64, stream: u64) -> u64 {
    let mut z = base ^ stream.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Circular complex Gaussian sample with unit variance per quadrature
/// (E|z|² = 2), via Box-Muller.
pub fn complex_standard_gaussian<R: Rng>(rng: &mut R) -> Complex64 {
    let u1: f64 = rng.random();
    let u2: f64 = rng.random();
    // 1−u1 ∈ (0,1] keeps the log finite.
    let radius = (-2.0 * (1.0 - u1).ln()).sqrt();
    let (s, c) = (std::f64::consts::TAU * u2).sin_cos();
    Complex64::new(radius * c, radius * s)
}
