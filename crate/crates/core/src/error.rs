use thiserror::Error;

pub type Result<T> = std::result::Result<T, EcsError>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EcsError {
    /// An argument is non-finite or outside the range the operation accepts.
    #[error("domain error: {name} = {value} ({reason})")]
    Domain {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    /// The requested state does not exist (e.g. the odd ECS at zero amplitude).
    #[error("degenerate state: {0}")]
    Degenerate(String),

    /// A matrix failed a density-matrix or structural invariant.
    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// The Fock truncation needed exceeds the configured cap.
    #[error("capacity exceeded: amplitude {alpha} needs Fock dimension {required}, cap is {cap}")]
    Capacity {
        alpha: f64,
        required: usize,
        cap: usize,
    },

    #[error(
        "Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})"
    )]
    Convergence { sweeps: usize, off_norm: f64 },

    /// Trace left outside the projected two-qubit subspace.
    #[error("projection leaked trace {0:e} outside the even/odd coherent span")]
    ProjectionLeak(f64),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for EcsError {
    fn from(err: std::io::Error) -> Self {
        EcsError::Io(err.to_string())
    }
}

pub(crate) fn check_finite(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(EcsError::Domain {
            name,
            value,
            reason: "must be finite",
        })
    }
}

pub(crate) fn check_unit_interval(name: &'static str, value: f64) -> Result<f64> {
    check_finite(name, value)?;
    if (0.0..=1.0).contains(&value) {
        Ok(value)
    } else {
        Err(EcsError::Domain {
            name,
            value,
            reason: "must lie in [0, 1]",
        })
    }
}
