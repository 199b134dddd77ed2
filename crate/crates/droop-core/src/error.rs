use thiserror::Error;

/// Errors produced by the closed-form model layer.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum DroopError {
    /// An input violated a domain precondition.
    #[error("{name} must be {requirement} (got {value})")]
    Domain {
        name: &'static str,
        requirement: &'static str,
        value: f64,
    },

    /// An iterative solve failed to converge.
    #[error("fixed-point solve for {what} did not converge within {max_iterations} iterations")]
    NoConvergence {
        what: &'static str,
        max_iterations: usize,
    },
}

impl DroopError {
    pub(crate) fn domain(name: &'static str, requirement: &'static str, value: f64) -> Self {
        DroopError::Domain {
            name,
            requirement,
            value,
        }
    }
}

pub type Result<T> = std::result::Result<T, DroopError>;
