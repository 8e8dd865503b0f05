use thiserror::Error;

/// Errors raised by circuit construction, operator assembly and the solvers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid charge lattice: {0}")]
    InvalidLattice(String),

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("matrix dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("matrix is not Hermitian (max |M - M^H| = {defect:e})")]
    NotHermitian { defect: f64 },

    #[error("eigenproblem on an empty matrix")]
    EmptyMatrix,

    #[error("eigensolver failed to converge")]
    NoConvergence,

    #[error("energy {energy:e} lies outside the band [0, 2eV] = [0, {band_top:e}]")]
    OutOfBand { energy: f64, band_top: f64 },

    #[error("quantization condition has no solution: |I0 e/(beta' V)| = {ratio} > 1")]
    NoSolution { ratio: f64 },

    #[error("operation requires a periodic lattice")]
    RequiresPeriodic,

    #[error(
        "subband cutoff n_max = {n_max} too small: eps(n_max) = {top:e} is below the Fermi kinetic energy {fermi:e}"
    )]
    CutoffTooSmall { n_max: usize, top: f64, fermi: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        name,
        reason: reason.into(),
    }
}
