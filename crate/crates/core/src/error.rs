use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("gamma pole at argument {0}")]
    Pole(f64),
    #[error("series did not converge: {0}")]
    Convergence(String),
    #[error("slow convergence: {0}")]
    SlowConvergence(String),
    #[error("overflow: {0}")]
    Overflow(String),
    #[error("coincident or null-separated points: {0}")]
    Coincidence(String),
    #[error("quadrature failed: {0}")]
    Quadrature(String),
    #[error("ODE step control failed: {0}")]
    Stiffness(String),
    #[error("Frobenius start outside series radius: {0}")]
    SeriesRadius(String),
    #[error("invalid mode index: {0}")]
    Index(String),
    #[error("extrapolation failed: {0}")]
    Extrapolation(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// Short machine-readable tag used in reports and by the C ABI.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain(_) => "DomainError",
            Error::Pole(_) => "PoleError",
            Error::Convergence(_) => "ConvergenceError",
            Error::SlowConvergence(_) => "SlowConvergence",
            Error::Overflow(_) => "OverflowError",
            Error::Coincidence(_) => "CoincidenceError",
            Error::Quadrature(_) => "QuadratureError",
            Error::Stiffness(_) => "StiffnessError",
            Error::SeriesRadius(_) => "SeriesRadiusError",
            Error::Index(_) => "IndexError",
            Error::Extrapolation(_) => "ExtrapolationError",
        }
    }
}
