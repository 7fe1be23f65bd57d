use thiserror::Error;

/// Failure modes shared by every evaluation routine.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the routine.
    #[error("domain error: {name} = {value} ({reason})")]
    Domain {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },
    /// The requested value sits on (or inside the guard band of) a genuine singularity.
    #[error("singularity at {name} = {value}: {reason}")]
    Singularity {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },
    /// Arguments are individually valid but inconsistent with each other.
    #[error("argument error: {0}")]
    Argument(String),
    /// A series hit its term cap before meeting the tolerance.
    #[error("series did not converge: {0}")]
    Convergence(String),
    /// No implemented representation covers these parameters.
    #[error("no representation available: {0}")]
    Representation(String),
    /// Quadrature could not produce a finite value.
    #[error("quadrature failure: {0}")]
    Quadrature(String),
}

impl Error {
    pub(crate) fn domain(name: &'static str, value: f64, reason: &'static str) -> Self {
        Error::Domain { name, value, reason }
    }

    pub(crate) fn singular(name: &'static str, value: f64, reason: &'static str) -> Self {
        Error::Singularity { name, value, reason }
    }

    /// True for errors caused by the caller's parameters (as opposed to numerical breakdown).
    pub fn is_domain_like(&self) -> bool {
        matches!(
            self,
            Error::Domain { .. } | Error::Singularity { .. } | Error::Argument(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
