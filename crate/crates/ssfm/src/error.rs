use thiserror::Error;

#[derive(Debug, Error)]
pub enum SsfmError {
    /// A scenario parameter combination the simulator cannot represent.
    #[error("config error: {message}")]
    Config { message: String },

    /// The step controller would exceed the per-span step budget.
    #[error("step count exceeded {max_steps} in one span (nonlinear phase ceiling {phi_max} rad)")]
    StepOverflow { max_steps: usize, phi_max: f64 },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    /// A field dump file failed validation.
    #[error("bad field dump: {reason}")]
    BadDump { reason: String },
}

impl SsfmError {
    pub(crate) fn config(message: impl Into<String>) -> Self {
        SsfmError::Config {
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, SsfmError>;
