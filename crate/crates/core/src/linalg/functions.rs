use super::eigen::{hermitian_eig, HermitianEigen, DEFAULT_EIG_TOL};
use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};

/// Eigenvalues in `[-CLAMP_TOL, 0)` are treated as rounding noise and set to zero.
pub const CLAMP_TOL: f64 = 1e-8;
/// Default invertibility threshold for `inv_sqrt_psd`.
pub const DEFAULT_SINGULAR_EPS: f64 = 1e-10;

pub fn eigh(a: &ComplexMatrix) -> Result<HermitianEigen> {
    hermitian_eig(a, DEFAULT_EIG_TOL)
}

/// Clamps rounding-level negative eigenvalues to zero, rejecting real negativity.
pub fn clamp_psd_spectrum(values: &[f64]) -> Result<Vec<f64>> {
    values
        .iter()
        .map(|&l| {
            if l >= 0.0 {
                Ok(l)
            } else if l >= -CLAMP_TOL {
                Ok(0.0)
            } else {
                Err(Error::NegativeSpectrum(l))
            }
        })
        .collect()
}

/// Applies a scalar function to the spectrum of a PSD matrix.
///
/// `f` returning a non-finite value is reported as `DomainError` at the offending eigenvalue.
pub fn matrix_function_psd<F>(a: &ComplexMatrix, f: F) -> Result<ComplexMatrix>
where
    F: Fn(f64) -> f64,
{
    let eig = eigh(a)?;
    apply_to_psd_eigen(&eig, f)
}

pub fn apply_to_psd_eigen<F>(eig: &HermitianEigen, f: F) -> Result<ComplexMatrix>
where
    F: Fn(f64) -> f64,
{
    let clamped = clamp_psd_spectrum(&eig.eigenvalues)?;
    let mapped = clamped
        .iter()
        .map(|&l| {
            let y = f(l);
            if y.is_finite() {
                Ok(y)
            } else {
                Err(Error::DomainError(l))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(eig.reconstruct_with(&mapped))
}

pub fn sqrt_psd(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    matrix_function_psd(a, f64::sqrt)
}

/// `A^{-1/2}` for a positive definite `A` with smallest eigenvalue above `eps`.
pub fn inv_sqrt_psd(a: &ComplexMatrix, eps: f64) -> Result<ComplexMatrix> {
    let eig = eigh(a)?;
    let min = eig.min();
    if min <= eps {
        return Err(Error::SingularState(min));
    }
    let vals: Vec<f64> = eig.eigenvalues.iter().map(|&l| 1.0 / l.sqrt()).collect();
    Ok(eig.reconstruct_with(&vals))
}

/// Operator absolute value `|X| = sum |l_i| |u_i><u_i|`.
pub fn abs_hermitian(x: &ComplexMatrix) -> Result<ComplexMatrix> {
    let eig = eigh(x)?;
    let vals: Vec<f64> = eig.eigenvalues.iter().map(|l| l.abs()).collect();
    Ok(eig.reconstruct_with(&vals))
}

pub fn trace_norm_hermitian(x: &ComplexMatrix) -> Result<f64> {
    let eig = eigh(x)?;
    Ok(eig.eigenvalues.iter().map(|l| l.abs()).sum())
}

/// Smallest eigenvalue of a Hermitian matrix.
pub fn lambda_min(x: &ComplexMatrix) -> Result<f64> {
    Ok(eigh(x)?.min())
}

/// Loewner comparison `X >= Y`, i.e. `lambda_min(X - Y) >= -tol`.
pub fn loewner_geq(x: &ComplexMatrix, y: &ComplexMatrix, tol: f64) -> Result<bool> {
    x.check_same_dim(y)?;
    for m in [x, y] {
        let d = m.hermiticity_defect();
        if d > DEFAULT_EIG_TOL * m.frobenius_norm().max(1.0) {
            return Err(Error::NotHermitian(d));
        }
    }
    Ok(lambda_min(&(x - y))? >= -tol)
}
