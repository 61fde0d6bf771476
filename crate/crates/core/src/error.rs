use thiserror::Error;

/// Errors produced by the numerical routines in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (max |A - A^dag| = {0:.3e})")]
    NotHermitian(f64),
    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off:.3e})")]
    NoConvergence { sweeps: usize, off: f64 },
    #[error("matrix has a clearly negative eigenvalue {0:.3e}")]
    NegativeSpectrum(f64),
    #[error("function undefined at {0}")]
    DomainError(f64),
    #[error("state is singular or near-singular (min eigenvalue {0:.3e})")]
    SingularState(f64),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("invalid rank {rank} for dimension {dim}")]
    BadRank { rank: usize, dim: usize },
    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),
    #[error("density matrix invariant violated: {0}")]
    InvariantViolation(String),
    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("generator `{name}` failed registration: {reason}")]
    BadGenerator { name: String, reason: String },
    #[error("reference distribution has non-positive entry q[{0}] = {1}")]
    ZeroReference(usize, f64),
    #[error("generator `{0}` is not operator convex")]
    NotOperatorConvex(String),
    #[error("generator `{0}` has no second derivative")]
    NoSecondDerivative(String),
    #[error("degenerate extremes m = {m}, M = {big_m}")]
    DegenerateExtremes { m: f64, big_m: f64 },
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("adaptive quadrature failed: {0}")]
    QuadratureFailure(String),
}

pub type Result<T> = std::result::Result<T, Error>;
