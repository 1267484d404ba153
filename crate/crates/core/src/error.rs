use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("dark state undefined: both Rabi frequencies vanish")]
    UndefinedState,

    #[error("steady state is not unique (numerical null space of dimension {0})")]
    DegenerateSteadyState(usize),

    #[error("mean values are not stationary for this drive (residual {0:.3e})")]
    NotStationary(f64),

    #[error("atomic response matrix is singular at omega = {0}")]
    SingularResponse(f64),

    #[error("integration failed at z = {z}: {reason}")]
    Integration { z: f64, reason: String },

    #[error("spectrum has imaginary residue {0:.3e}")]
    ImaginaryResidue(f64),

    #[error("unsupported feature: {0}")]
    Unsupported(String),
}
