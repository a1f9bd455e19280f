use thiserror::Error;

/// Errors produced by chain construction, evolution and solvers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("operator is singular or ill-conditioned (rcond = {rcond:.3e})")]
    SingularOperator { rcond: f64 },

    #[error("spectral radius is zero; cannot normalize")]
    ZeroSpectralRadius,

    #[error("matrix has entries that are negative or not finite where a classical (nonnegative) matrix is required")]
    NotClassical,

    #[error("operator spectrum is not real within tolerance (max |Im| = {max_imag:.3e})")]
    ComplexSpectrum { max_imag: f64 },

    #[error("matrix is defective; eigenvector basis is numerically singular")]
    DefectiveMatrix,

    #[error("partition function vanishes; normalization impossible")]
    ZeroPartitionFunction,

    #[error("enumeration size guard exceeded: {0}")]
    SizeGuard(String),

    #[error("unsupported case: {0}")]
    Unsupported(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("linear algebra backend error: {0}")]
    Backend(#[from] ndarray_linalg::error::LinalgError),
}

pub type Result<T> = std::result::Result<T, Error>;
