//! Maximal f-divergence through its classical witness.
//!
//! For a pair `(rho, sigma)` with invertible `sigma`, diagonalize
//! `sigma^{-1/2} rho sigma^{-1/2} = sum_i l_i |u_i><u_i|` and set
//!
//! ```text
//! s_i = <u_i|sigma|u_i>,   r_i = l_i s_i,   A_i = sigma^{1/2} |u_i><u_i| / sqrt(s_i).
//! ```
//!
//! Then `r`, `s` are probability vectors, the Kraus family `{A_i}` is a channel
//! `V` with `V(sum r_i |u_i><u_i|) = rho` and `V(sum s_i |u_i><u_i|) = sigma`, and
//! the maximal f-divergence `Tr(sigma^{1/2} f(sigma^{-1/2} rho sigma^{-1/2}) sigma^{1/2})`
//! equals the classical `D_f(r || s)`. This module computes the maximal divergence
//! through that identity and exposes the witness for checking.

use num_complex::Complex64;

use crate::divergence::{classical_f_div, quantum_chi2, quantum_relative_entropy, sandwiched_ratio, trace_distance};
use crate::error::{Error, Result};
use crate::fgen::FGenerator;
use crate::linalg::{clamp_psd_spectrum, eigh, sqrt_psd, trace_norm_hermitian, ComplexMatrix};
use crate::states::{apply_channel, ClassicalDistribution, DensityMatrix, QuantumChannel};

/// Classical distributions and reconstruction channel achieving the maximal divergence.
#[derive(Debug, Clone)]
pub struct Witness {
    /// Ascending eigenvalues of `sigma^{-1/2} rho sigma^{-1/2}`, clamped at zero.
    pub lambdas: Vec<f64>,
    /// Column `i` is `|u_i>`.
    pub basis: ComplexMatrix,
    pub r: ClassicalDistribution,
    pub s: ClassicalDistribution,
    pub channel: QuantumChannel,
}

impl Witness {
    pub fn dim(&self) -> usize {
        self.lambdas.len()
    }

    /// `sum_i p_i |u_i><u_i|`: a classical distribution embedded in the witness eigenbasis.
    pub fn embed(&self, p: &ClassicalDistribution) -> Result<DensityMatrix> {
        if p.len() != self.dim() {
            return Err(Error::DimensionMismatch(p.len(), self.dim()));
        }
        let n = self.dim();
        let mut m = ComplexMatrix::zeros(n);
        for (k, &w) in p.probs().iter().enumerate() {
            if w == 0.0 {
                continue;
            }
            for i in 0..n {
                for j in 0..n {
                    m[(i, j)] += self.basis[(i, k)] * self.basis[(j, k)].conj() * w;
                }
            }
        }
        DensityMatrix::new(m)
    }

    pub fn embedded_r(&self) -> Result<DensityMatrix> {
        self.embed(&self.r)
    }

    pub fn embedded_s(&self) -> Result<DensityMatrix> {
        self.embed(&self.s)
    }

    pub fn extremes(&self) -> Extremes {
        Extremes {
            min: self.lambdas[0],
            max: self.lambdas[self.dim() - 1],
        }
    }
}

/// Smallest and largest eigenvalue of `sigma^{-1/2} rho sigma^{-1/2}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extremes {
    pub min: f64,
    pub max: f64,
}

pub fn build_witness(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<Witness> {
    let ratio = sandwiched_ratio(rho, sigma)?;
    let eig = eigh(&ratio)?;
    let lambdas = clamp_psd_spectrum(&eig.eigenvalues)?;
    let n = lambdas.len();
    let sqrt_sigma = sqrt_psd(sigma.matrix())?;

    let mut s = Vec::with_capacity(n);
    let mut kraus = Vec::with_capacity(n);
    for i in 0..n {
        let u = eig.vector(i);
        // <u|sigma|u>
        let mut si = Complex64::new(0.0, 0.0);
        for a in 0..n {
            for b in 0..n {
                si += u[a].conj() * sigma.matrix()[(a, b)] * u[b];
            }
        }
        let si = si.re;
        if si <= 0.0 {
            return Err(Error::SingularState(si));
        }
        // sigma^{1/2} |u> <u| / sqrt(s_i)
        let su: Vec<Complex64> = (0..n)
            .map(|a| (0..n).map(|b| sqrt_sigma[(a, b)] * u[b]).sum::<Complex64>() / si.sqrt())
            .collect();
        kraus.push(ComplexMatrix::outer(&su, &u));
        s.push(si);
    }
    let r: Vec<f64> = lambdas.iter().zip(&s).map(|(l, si)| l * si).collect();

    Ok(Witness {
        lambdas,
        basis: eig.vectors,
        r: ClassicalDistribution::from_raw(r),
        s: ClassicalDistribution::from_raw(s),
        channel: QuantumChannel::new(kraus)?,
    })
}

/// `Tr(sigma^{1/2} f(sigma^{-1/2} rho sigma^{-1/2}) sigma^{1/2})`, evaluated as `D_f(r || s)`.
pub fn maximal_f_div(rho: &DensityMatrix, sigma: &DensityMatrix, f: &FGenerator) -> Result<f64> {
    let w = build_witness(rho, sigma)?;
    classical_f_div(&w.r, &w.s, f)
}

pub fn extremes_mm(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<Extremes> {
    Ok(build_witness(rho, sigma)?.extremes())
}

/// Named residuals of the witness construction.
#[derive(Debug, Clone)]
pub struct WitnessReport {
    pub residuals: Vec<(&'static str, f64)>,
    pub divergence: f64,
    pub tol: f64,
}

impl WitnessReport {
    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().map(|(_, r)| *r).fold(0.0, f64::max)
    }

    pub fn passed(&self) -> bool {
        self.residuals.iter().all(|(_, r)| *r <= self.tol)
    }
}

/// Checks normalization, channel reconstruction, completeness and the divergence identity.
///
/// The divergence residual compares `D_f(r || s)` with the direct spectral
/// evaluation `sum_i f(l_i) <u_i|sigma|u_i>`.
pub fn verify_witness(rho: &DensityMatrix, sigma: &DensityMatrix, f: &FGenerator, tol: f64) -> Result<WitnessReport> {
    let w = build_witness(rho, sigma)?;
    let sum_r: f64 = w.r.probs().iter().sum();
    let sum_s: f64 = w.s.probs().iter().sum();
    let v_r = w.channel.apply_operator(&diag_in_basis(&w.basis, w.r.probs()))?;
    let v_s = w.channel.apply_operator(&diag_in_basis(&w.basis, w.s.probs()))?;
    let rec_r = trace_norm_hermitian(&(&v_r - rho.matrix()).hermitian_part())?;
    let rec_s = trace_norm_hermitian(&(&v_s - sigma.matrix()).hermitian_part())?;
    let witness_div = classical_f_div(&w.r, &w.s, f)?;
    let spectral = spectral_maximal(rho, sigma, f)?;
    Ok(WitnessReport {
        residuals: vec![
            ("sum_r", (sum_r - 1.0).abs()),
            ("sum_s", (sum_s - 1.0).abs()),
            ("reconstruct_rho", rec_r),
            ("reconstruct_sigma", rec_s),
            ("kraus_completeness", w.channel.completeness_residual()),
            ("divergence_identity", (witness_div - spectral).abs()),
        ],
        divergence: witness_div,
        tol,
    })
}

/// `Tr(f(X) sigma)` with `X = sigma^{-1/2} rho sigma^{-1/2}`, through the operator `f(X)`.
fn spectral_maximal(rho: &DensityMatrix, sigma: &DensityMatrix, f: &FGenerator) -> Result<f64> {
    let ratio = sandwiched_ratio(rho, sigma)?;
    let eig = eigh(&ratio)?;
    let vals: Vec<f64> = clamp_psd_spectrum(&eig.eigenvalues)?
        .into_iter()
        .map(|l| f.eval(l))
        .collect();
    let fx = eig.reconstruct_with(&vals);
    Ok(fx.trace_product(sigma.matrix()).re)
}

fn diag_in_basis(basis: &ComplexMatrix, p: &[f64]) -> ComplexMatrix {
    let n = basis.dim();
    let mut m = ComplexMatrix::zeros(n);
    for (k, &w) in p.iter().enumerate() {
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] += basis[(i, k)] * basis[(j, k)].conj() * w;
            }
        }
    }
    m
}

/// Maximal divergence before and after a channel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DpiReport {
    pub before: f64,
    pub after: f64,
}

impl DpiReport {
    pub fn violation(&self) -> f64 {
        self.after - self.before
    }
}

/// Evaluates the data processing inequality for the maximal divergence of an operator convex `f`.
pub fn check_dpi_maximal(
    rho: &DensityMatrix,
    sigma: &DensityMatrix,
    channel: &QuantumChannel,
    f: &FGenerator,
) -> Result<DpiReport> {
    if !f.operator_convex() {
        return Err(Error::NotOperatorConvex(f.name().to_string()));
    }
    let before = maximal_f_div(rho, sigma, f)?;
    let rho_out = apply_channel(channel, rho)?;
    let sigma_out = apply_channel(channel, sigma)?;
    let after = maximal_f_div(&rho_out, &sigma_out, f)?;
    Ok(DpiReport { before, after })
}

/// Standard divergences next to their maximal counterparts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaximalityReport {
    pub relative_entropy: f64,
    pub maximal_kl: f64,
    pub chi2: f64,
    pub maximal_chi2: f64,
    pub trace_distance: f64,
    pub maximal_tv: f64,
}

impl MaximalityReport {
    /// Worst signed violation: positive means an ordering or the chi2 identity failed.
    pub fn worst_violation(&self) -> f64 {
        [
            self.relative_entropy - self.maximal_kl,
            (self.chi2 - self.maximal_chi2).abs(),
            self.trace_distance - self.maximal_tv,
        ]
        .into_iter()
        .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn holds(&self, tol: f64) -> bool {
        self.worst_violation() <= tol
    }
}

pub fn check_maximality(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<MaximalityReport> {
    let w = build_witness(rho, sigma)?;
    Ok(MaximalityReport {
        relative_entropy: quantum_relative_entropy(rho, sigma)?,
        maximal_kl: classical_f_div(&w.r, &w.s, &FGenerator::kl())?,
        chi2: quantum_chi2(rho, sigma)?,
        maximal_chi2: classical_f_div(&w.r, &w.s, &FGenerator::chi2())?,
        trace_distance: trace_distance(rho, sigma)?,
        maximal_tv: classical_f_div(&w.r, &w.s, &FGenerator::tv())?,
    })
}
