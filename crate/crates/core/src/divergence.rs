//! Classical f-divergences and the standard quantum divergences used as reference points.
//!
//! All logarithms are natural (nats).

use crate::error::{Error, Result};
use crate::fgen::FGenerator;
use crate::linalg::{apply_to_psd_eigen, clamp_psd_spectrum, eigh, inv_sqrt_psd, trace_norm_hermitian, DEFAULT_SINGULAR_EPS};
use crate::states::{ClassicalDistribution, DensityMatrix};

/// `sum_i f(p_i / q_i) q_i`, with `f(0+)` used wherever `p_i = 0`.
pub fn classical_f_div(p: &ClassicalDistribution, q: &ClassicalDistribution, f: &FGenerator) -> Result<f64> {
    if p.len() != q.len() {
        return Err(Error::DimensionMismatch(p.len(), q.len()));
    }
    let mut total = 0.0;
    for (i, (&pi, &qi)) in p.probs().iter().zip(q.probs()).enumerate() {
        if qi <= 0.0 {
            return Err(Error::ZeroReference(i, qi));
        }
        total += f.eval(pi / qi) * qi;
    }
    Ok(total)
}

/// `sigma^{-1/2} rho sigma^{-1/2}`, Hermitized, with the singularity check on `sigma`.
pub(crate) fn sandwiched_ratio(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<crate::linalg::ComplexMatrix> {
    rho.matrix().check_same_dim(sigma.matrix())?;
    let s = inv_sqrt_psd(sigma.matrix(), DEFAULT_SINGULAR_EPS)?;
    Ok((&(&s * rho.matrix()) * &s).hermitian_part())
}

/// Umegaki relative entropy `Tr rho (log rho - log sigma)`, with `0 log 0 = 0` on the kernel of `rho`.
pub fn quantum_relative_entropy(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    rho.matrix().check_same_dim(sigma.matrix())?;
    let sig = eigh(sigma.matrix())?;
    if sig.min() <= DEFAULT_SINGULAR_EPS {
        return Err(Error::SingularState(sig.min()));
    }
    let rho_eig = eigh(rho.matrix())?;
    let rho_vals = clamp_psd_spectrum(&rho_eig.eigenvalues)?;
    let entropy_term: f64 = rho_vals
        .iter()
        .filter(|&&l| l > 0.0)
        .map(|&l| l * l.ln())
        .sum();
    let log_sigma = apply_to_psd_eigen(&sig, f64::ln)?;
    let cross = rho.matrix().trace_product(&log_sigma).re;
    Ok(entropy_term - cross)
}

/// `Tr((sigma^{-1/2} rho sigma^{-1/2})^2 sigma) - 1`, equal to `Tr(rho sigma^{-1} rho) - 1`.
pub fn quantum_chi2(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    let x = sandwiched_ratio(rho, sigma)?;
    let x2 = &x * &x;
    Ok(x2.trace_product(sigma.matrix()).re - 1.0)
}

/// `||rho - sigma||_1`, in `[0, 2]`.
pub fn trace_distance(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    rho.matrix().check_same_dim(sigma.matrix())?;
    trace_norm_hermitian(&(rho.matrix() - sigma.matrix()))
}

/// `log lambda_max(sigma^{-1/2} rho sigma^{-1/2})`.
pub fn max_relative_entropy(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    let x = sandwiched_ratio(rho, sigma)?;
    Ok(eigh(&x)?.max().ln())
}
