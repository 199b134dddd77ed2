//! Signal occupancy of the amplified mode-bandwidth product.

use crate::error::{LinkError, Result};

/// Mode and channel plan of the multiplex against the amplifier occupancy.
///
/// The amplifier fills `M_a` modes over bandwidth `B_a`, the signal fills `M`
/// modes with `N_c` tributaries of bandwidth `B_rx` each. Gaps between WDM
/// channels are not counted in the signal occupancy.
#[derive(Debug, Clone, Copy)]
pub struct MultiplexSpec {
    /// Signal spatial modes M.
    pub signal_modes: u32,
    /// WDM channel count N_c.
    pub channel_count: u32,
    /// Amplified spatial modes M_a ≥ M.
    pub amplified_modes: u32,
    /// Per-tributary receiver bandwidth B_rx [Hz].
    pub tributary_bandwidth_hz: f64,
    /// Amplified bandwidth B_a [Hz].
    pub amp_bandwidth_hz: f64,
    /// Per-tributary launch power P_t [mW].
    pub per_tributary_power_mw: f64,
}

impl MultiplexSpec {
    pub fn new(
        signal_modes: u32,
        channel_count: u32,
        amplified_modes: u32,
        tributary_bandwidth_hz: f64,
        amp_bandwidth_hz: f64,
        per_tributary_power_mw: f64,
    ) -> Result<Self> {
        let spec = MultiplexSpec {
            signal_modes,
            channel_count,
            amplified_modes,
            tributary_bandwidth_hz,
            amp_bandwidth_hz,
            per_tributary_power_mw,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.signal_modes < 1 {
            return Err(LinkError::domain(
                "signal_modes",
                "at least 1",
                self.signal_modes as f64,
            ));
        }
        if self.channel_count < 1 {
            return Err(LinkError::domain(
                "channel_count",
                "at least 1",
                self.channel_count as f64,
            ));
        }
        if self.amplified_modes < self.signal_modes {
            return Err(LinkError::domain(
                "amplified_modes",
                "at least the signal mode count",
                self.amplified_modes as f64,
            ));
        }
        if !(self.tributary_bandwidth_hz > 0.0) {
            return Err(LinkError::domain(
                "tributary_bandwidth_hz",
                "positive",
                self.tributary_bandwidth_hz,
            ));
        }
        if !(self.amp_bandwidth_hz > 0.0) {
            return Err(LinkError::domain(
                "amp_bandwidth_hz",
                "positive",
                self.amp_bandwidth_hz,
            ));
        }
        if !(self.per_tributary_power_mw > 0.0) {
            return Err(LinkError::domain(
                "per_tributary_power_mw",
                "positive",
                self.per_tributary_power_mw,
            ));
        }
        Ok(())
    }

    /// Amplified tributary slots `N_a = B_a/B_rx`.
    pub fn amplified_slots(&self) -> f64 {
        self.amp_bandwidth_hz / self.tributary_bandwidth_hz
    }

    /// Amplifier fill-in efficiency `η_A = M·N_c/(M_a·N_a)`.
    ///
    /// Errors when the signal occupancy exceeds the amplified occupancy.
    pub fn fill_in_efficiency(&self) -> Result<f64> {
        self.validate()?;
        let signal_slots = self.signal_modes as f64 * self.channel_count as f64;
        let amplified_slots = self.amplified_modes as f64 * self.amplified_slots();
        let eta = signal_slots / amplified_slots;
        if eta > 1.0 {
            return Err(LinkError::FillInExceedsUnity {
                signal_slots,
                amplified_slots,
            });
        }
        Ok(eta)
    }
}
