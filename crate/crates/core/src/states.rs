//! Density matrices, classical distributions, Kraus channels and random sampling.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{abs_hermitian, eigh, loewner_geq, ComplexMatrix, HermitianEigen};
use crate::rng::SampleRng;

/// Tolerance for the Hermiticity, positivity and trace invariants of a state.
pub const STATE_TOL: f64 = 1e-10;
/// Tolerance for channel completeness `sum A^dag A = I`.
pub const CHANNEL_TOL: f64 = 1e-9;

/// A probability vector.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassicalDistribution {
    probs: Vec<f64>,
}

impl ClassicalDistribution {
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::InvalidDistribution("empty".into()));
        }
        if let Some((i, p)) = probs
            .iter()
            .enumerate()
            .find(|(_, p)| !p.is_finite() || **p < 0.0)
        {
            return Err(Error::InvalidDistribution(format!("p[{i}] = {p}")));
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > STATE_TOL {
            return Err(Error::InvalidDistribution(format!("sums to {total}")));
        }
        Ok(Self { probs })
    }

    /// Wraps a vector known to be a distribution up to rounding, e.g. witness marginals.
    pub(crate) fn from_raw(probs: Vec<f64>) -> Self {
        Self { probs }
    }

    pub fn uniform(n: usize) -> Self {
        Self {
            probs: vec![1.0 / n as f64; n],
        }
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }
}

/// Hermitian, positive semidefinite, unit-trace operator.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    mat: ComplexMatrix,
}

impl DensityMatrix {
    /// Validates the state invariants, naming the first one that fails.
    pub fn new(mat: ComplexMatrix) -> Result<Self> {
        let scale = mat.frobenius_norm().max(1.0);
        let defect = mat.hermiticity_defect();
        if defect > STATE_TOL * scale {
            return Err(Error::InvariantViolation(format!(
                "hermiticity: max |A - A^dag| = {defect:.3e}"
            )));
        }
        let tr = mat.trace();
        if (tr.re - 1.0).abs() > STATE_TOL || tr.im.abs() > STATE_TOL {
            return Err(Error::InvariantViolation(format!("trace: tr = {tr}")));
        }
        let min = eigh(&mat.hermitian_part())?.min();
        if min < -STATE_TOL {
            return Err(Error::InvariantViolation(format!(
                "positivity: min eigenvalue {min:.3e}"
            )));
        }
        Ok(Self {
            mat: mat.hermitian_part(),
        })
    }

    /// Maximally mixed state I/n.
    pub fn maximally_mixed(n: usize) -> Self {
        Self {
            mat: ComplexMatrix::identity(n).scale(1.0 / n as f64),
        }
    }

    /// Pure state |psi><psi| for a vector normalized here.
    pub fn pure(psi: &[Complex64]) -> Result<Self> {
        let norm = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if !(norm > 0.0) {
            return Err(Error::InvalidMatrix("zero state vector".into()));
        }
        let v: Vec<Complex64> = psi.iter().map(|z| z / norm).collect();
        Self::new(ComplexMatrix::outer(&v, &v))
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.mat
    }

    pub fn dim(&self) -> usize {
        self.mat.dim()
    }

    pub fn eigen(&self) -> Result<HermitianEigen> {
        eigh(&self.mat)
    }

    pub fn min_eigenvalue(&self) -> Result<f64> {
        Ok(self.eigen()?.min())
    }

    /// `(1 - delta) rho + delta I/n`; always explicit, never applied silently.
    pub fn regularized(&self, delta: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&delta) {
            return Err(Error::OutOfRange(format!("regularization delta {delta}")));
        }
        let n = self.dim();
        let mixed = ComplexMatrix::identity(n).scale(delta / n as f64);
        Ok(Self {
            mat: &self.mat.scale(1.0 - delta) + &mixed,
        })
    }

    pub(crate) fn from_matrix_unchecked(mat: ComplexMatrix) -> Self {
        Self {
            mat: mat.hermitian_part(),
        }
    }
}

/// Completely positive trace-preserving map in Kraus form.
#[derive(Debug, Clone)]
pub struct QuantumChannel {
    kraus: Vec<ComplexMatrix>,
}

impl QuantumChannel {
    /// Validates completeness `sum A_i^dag A_i = I` within [`CHANNEL_TOL`].
    pub fn new(kraus: Vec<ComplexMatrix>) -> Result<Self> {
        let Some(first) = kraus.first() else {
            return Err(Error::InvalidMatrix("channel needs at least one Kraus operator".into()));
        };
        let n = first.dim();
        for k in &kraus {
            first.check_same_dim(k)?;
        }
        let defect = completeness_defect(&kraus);
        if defect > CHANNEL_TOL {
            return Err(Error::InvalidMatrix(format!(
                "Kraus operators are not complete: max |sum A^dag A - I| = {defect:.3e}"
            )));
        }
        debug_assert!(n >= 1);
        Ok(Self { kraus })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            kraus: vec![ComplexMatrix::identity(n)],
        }
    }

    pub fn kraus(&self) -> &[ComplexMatrix] {
        &self.kraus
    }

    pub fn dim(&self) -> usize {
        self.kraus[0].dim()
    }

    /// `max |sum A_i^dag A_i - I|`.
    pub fn completeness_residual(&self) -> f64 {
        completeness_defect(&self.kraus)
    }

    /// `sum_i A_i X A_i^dag` on an arbitrary operator.
    pub fn apply_operator(&self, x: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.kraus[0].check_same_dim(x)?;
        let n = x.dim();
        let mut out = ComplexMatrix::zeros(n);
        for a in &self.kraus {
            let term = &(a * x) * &a.adjoint();
            out = &out + &term;
        }
        Ok(out)
    }
}

fn completeness_defect(kraus: &[ComplexMatrix]) -> f64 {
    let n = kraus[0].dim();
    let mut sum = ComplexMatrix::zeros(n);
    for a in kraus {
        sum = &sum + &(&a.adjoint() * a);
    }
    sum.max_abs_diff(&ComplexMatrix::identity(n))
}

/// Hilbert-Schmidt style sample `G G^dag / tr(G G^dag)` with an `n x rank` complex Gaussian `G`.
pub fn random_density_with(rng: &mut SampleRng, n: usize, rank: usize) -> Result<DensityMatrix> {
    if n == 0 || rank == 0 || rank > n {
        return Err(Error::BadRank { rank, dim: n });
    }
    let g: Vec<Complex64> = (0..n * rank).map(|_| rng.complex_normal()).collect();
    let mut m = ComplexMatrix::zeros(n);
    for i in 0..n {
        for j in i..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..rank {
                acc += g[i * rank + k] * g[j * rank + k].conj();
            }
            m[(i, j)] = acc;
            m[(j, i)] = acc.conj();
        }
    }
    let tr = m.trace().re;
    Ok(DensityMatrix::from_matrix_unchecked(m.scale(1.0 / tr)))
}

pub fn random_density(n: usize, rank: usize, seed: u64) -> Result<DensityMatrix> {
    random_density_with(&mut SampleRng::new(seed), n, rank)
}

/// Embeds a classical distribution as the diagonal state `diag(p)`.
pub fn diagonal_state(p: &ClassicalDistribution) -> DensityMatrix {
    DensityMatrix {
        mat: ComplexMatrix::from_diag(p.probs()),
    }
}

/// Random diagonal state with Dirichlet(1,...,1) weights.
pub fn random_diagonal_with(rng: &mut SampleRng, n: usize) -> DensityMatrix {
    let w: Vec<f64> = (0..n).map(|_| -(1.0 - rng.uniform()).ln()).collect();
    let total: f64 = w.iter().sum();
    let p = w.into_iter().map(|x| x / total).collect();
    diagonal_state(&ClassicalDistribution::from_raw(p))
}

/// Kraus operators from the `k` stacked `n x n` blocks of a Haar-random isometry
/// `C^n -> C^{kn}`, obtained by Gram-Schmidt on a complex Gaussian `kn x n` matrix.
pub fn random_channel_with(rng: &mut SampleRng, n: usize, k: usize) -> Result<QuantumChannel> {
    if n == 0 || k == 0 {
        return Err(Error::OutOfRange(format!("random channel with n = {n}, k = {k}")));
    }
    let rows = k * n;
    let mut cols: Vec<Vec<Complex64>> = (0..n)
        .map(|_| (0..rows).map(|_| rng.complex_normal()).collect())
        .collect();
    // Modified Gram-Schmidt, applied twice for orthogonality at rounding level.
    for j in 0..n {
        for _ in 0..2 {
            for i in 0..j {
                let (done, rest) = cols.split_at_mut(j);
                let qi = &done[i];
                let cj = &mut rest[0];
                let proj: Complex64 = qi.iter().zip(cj.iter()).map(|(a, b)| a.conj() * b).sum();
                for (x, q) in cj.iter_mut().zip(qi) {
                    *x -= proj * q;
                }
            }
        }
        let norm = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for x in cols[j].iter_mut() {
            *x /= norm;
        }
    }
    let kraus = (0..k)
        .map(|b| {
            let mut a = ComplexMatrix::zeros(n);
            for r in 0..n {
                for (c, col) in cols.iter().enumerate() {
                    a[(r, c)] = col[b * n + r];
                }
            }
            a
        })
        .collect();
    QuantumChannel::new(kraus)
}

pub fn random_channel(n: usize, k: usize, seed: u64) -> Result<QuantumChannel> {
    random_channel_with(&mut SampleRng::new(seed), n, k)
}

/// `sum_i A_i rho A_i^dag`.
pub fn apply_channel(w: &QuantumChannel, rho: &DensityMatrix) -> Result<DensityMatrix> {
    let out = w.apply_operator(rho.matrix())?;
    Ok(DensityMatrix::from_matrix_unchecked(out))
}

/// The Loewner condition `|rho - sigma| <= rho + sigma`.
pub fn satisfies_abs_condition(rho: &DensityMatrix, sigma: &DensityMatrix, tol: f64) -> Result<bool> {
    rho.matrix().check_same_dim(sigma.matrix())?;
    let diff = rho.matrix() - sigma.matrix();
    let abs = abs_hermitian(&diff)?;
    let sum = rho.matrix() + sigma.matrix();
    loewner_geq(&sum, &abs, tol)
}
