//! Split-step Fourier simulation of dual-polarization Nyquist-WDM
//! transmission over chains of amplified fiber spans.
//!
//! The simulator serves as numerical ground truth for the closed-form link
//! models: it generates a root-raised-cosine WDM multiplex, propagates it
//! span by span with the Manakov-averaged Kerr nonlinearity, models the
//! end-span amplifiers in constant-output-power or constant-gain mode with
//! circular-Gaussian ASE, and recovers per-tributary SNR with a fully
//! data-aided receiver (channel selection, electronic dispersion
//! compensation, matched filter, least-squares complex scaling).
//!
//! Everything is deterministic given a seed: symbol streams and per-span
//! noise draws derive from the scenario seed through a fixed mixing
//! function, so identical runs are bit-identical.
//!
//! Units: field samples carry |A|² in mW; frequencies in Hz; fiber lengths
//! in km; γ in W⁻¹km⁻¹ (converted internally).

pub mod alpha;
mod amplifier;
mod error;
mod fft;
mod field;
mod fiber;
mod link;
mod propagate;
mod receiver;
pub mod seed;
mod tx;

pub use alpha::{
    alpha_curve_analytic, estimate_alpha_nl, span_average_alpha, v_nli_analytic, AlphaFit,
    AlphaPoint,
};
pub use amplifier::{amplify, AmplifierModel, AmplifyOutcome, GainMode};
pub use error::{Result, SsfmError};
pub use fft::FftEngine;
pub use field::{read_field_dump, write_field_dump, SampledField};
pub use fiber::{FiberPhysical, StepControl};
pub use link::{simulate_link, LinkScenario, SnrEstimate};
pub use propagate::{propagate_span, PropagationEngine, SpanReport};
pub use receiver::{receive_tributary, TributaryEstimate};
pub use tx::{generate_multiplex, Modulation, TransmitterConfig, TxOutput};

/// Planck constant [J·s]; the amplifier noise model needs it directly.
pub const PLANCK_JS: f64 = 6.62607015e-34;

/// Speed of light [m/s].
pub const C_M_S: f64 = 299_792_458.0;
