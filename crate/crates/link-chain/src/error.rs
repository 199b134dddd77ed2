use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LinkError {
    #[error("{name} must be {requirement} (got {value})")]
    Domain {
        name: &'static str,
        requirement: &'static str,
        value: f64,
    },

    /// Signal occupancy cannot exceed the amplified mode-bandwidth product.
    #[error("fill-in efficiency must not exceed 1: M·N_c = {signal_slots} exceeds M_a·N_a = {amplified_slots}")]
    FillInExceedsUnity {
        signal_slots: f64,
        amplified_slots: f64,
    },

    /// The ledger conservation identity broke beyond tolerance; indicates a
    /// bug, not bad input.
    #[error("ledger conservation violated at span {span}: residual {residual:e} exceeds tolerance")]
    LedgerInconsistent { span: usize, residual: f64 },

    #[error(transparent)]
    Core(#[from] droop_core::DroopError),
}

impl LinkError {
    pub(crate) fn domain(name: &'static str, requirement: &'static str, value: f64) -> Self {
        LinkError::Domain {
            name,
            requirement,
            value,
        }
    }
}

pub type Result<T> = std::result::Result<T, LinkError>;
