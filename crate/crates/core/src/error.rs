use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported operation: {0}")]
    Unsupported(String),
    #[error("invalid seed: {0}")]
    InvalidSeed(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("quadrature does not resolve the integrand: {0}")]
    QuadratureDivergence(String),
    #[error("overlap column does not decay: |S(0,±L)| = {tail:e} exceeds {tol:e}")]
    NonSummable { tail: f64, tol: f64 },
    #[error("Gram symbol is singular or not positive: min = {min:e}, floor = {floor:e}, imaginary residue = {imag:e}")]
    SingularSymbol { min: f64, floor: f64, imag: f64 },
    #[error("cascade iteration diverged at iteration {iteration}: sup = {sup:e}")]
    Diverged { iteration: usize, sup: f64 },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Stable variant name, printed by the CLI on failure.
    pub fn name(&self) -> &'static str {
        match self {
            Error::Unsupported(_) => "Unsupported",
            Error::InvalidSeed(_) => "InvalidSeed",
            Error::InvalidArgument(_) => "InvalidArgument",
            Error::QuadratureDivergence(_) => "QuadratureDivergence",
            Error::NonSummable { .. } => "NonSummable",
            Error::SingularSymbol { .. } => "SingularSymbol",
            Error::Diverged { .. } => "Diverged",
            Error::Json(_) => "Json",
            Error::Io(_) => "Io",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
