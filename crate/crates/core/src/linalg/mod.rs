//! Dense complex linear algebra: the matrix type, a Jacobi Hermitian
//! eigensolver, and spectral matrix functions.

mod eigen;
mod functions;
mod matrix;

pub use eigen::{hermitian_eig, HermitianEigen, DEFAULT_EIG_TOL, MAX_SWEEPS};
pub use functions::{
    abs_hermitian, apply_to_psd_eigen, clamp_psd_spectrum, eigh, inv_sqrt_psd, lambda_min,
    loewner_geq, matrix_function_psd, sqrt_psd, trace_norm_hermitian, CLAMP_TOL,
    DEFAULT_SINGULAR_EPS,
};
pub use matrix::ComplexMatrix;
