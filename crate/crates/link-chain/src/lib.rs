//! Per-span power-ledger propagation for inhomogeneous amplified chains, and
//! the SNR model variants built on it.
//!
//! Each span k has its own loss, COP output-power target and noise
//! injections, so the droop factors become span-dependent. The ledger tracks
//! the useful signal, the additive (ASE/crosstalk) noise and the
//! redistribution (NLI/GAWBS) noise separately along the chain — the split
//! the per-tributary SNR needs when the amplifier bandwidth is only
//! partially filled by the signal.
//!
//! On top of the ledger sit the partial-fill COP variant ([`cop_gdf_snr`]),
//! the constant-gain variant ([`cg_gdf_snr`]) and the TU/TL constant-gain
//! reference formulas ([`tu_tl_snr`]).

mod error;
mod ledger;
mod models;
mod multiplex;
mod stage;

pub use error::{LinkError, Result};
pub use ledger::{closed_form_ledger, propagate_ledger, tributary_snr, LedgerTotals, PowerLedger};
pub use models::{cg_gdf_snr, cop_gdf_snr, tu_tl_snr, CopGdfMode, CopGdfResult, TuTl};
pub use multiplex::MultiplexSpec;
pub use stage::{span_droops, RedistributionSource, SpanDroops, SpanStage};
