//! Cyclic Jacobi eigensolver for complex Hermitian matrices.
//!
//! Each rotation first removes the phase of the pivot element with a diagonal
//! unitary, then applies the classical real Jacobi rotation. Sweeps visit
//! pivots in fixed row-major `(p, q)`, `p < q` order and every eigenvector is
//! normalized so its largest-modulus component is real and positive, which
//! makes the decomposition bit-reproducible for a given input.

use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};

/// Off-diagonal Frobenius tolerance used when callers do not supply one.
pub const DEFAULT_EIG_TOL: f64 = 1e-12;
pub const MAX_SWEEPS: usize = 100;

/// Spectral decomposition `A = U diag(eigenvalues) U^dag` with ascending eigenvalues.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub eigenvalues: Vec<f64>,
    /// Column `k` is the eigenvector for `eigenvalues[k]`.
    pub vectors: ComplexMatrix,
}

impl HermitianEigen {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn min(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn max(&self) -> f64 {
        self.eigenvalues[self.dim() - 1]
    }

    pub fn vector(&self, k: usize) -> Vec<Complex64> {
        self.vectors.column(k)
    }

    /// `U diag(values) U^dag` for an arbitrary replacement spectrum.
    pub fn reconstruct_with(&self, values: &[f64]) -> ComplexMatrix {
        let n = self.dim();
        assert_eq!(values.len(), n);
        let u = &self.vectors;
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for j in i..n {
                let mut acc = Complex64::new(0.0, 0.0);
                for (k, &v) in values.iter().enumerate() {
                    if v != 0.0 {
                        acc += u[(i, k)] * u[(j, k)].conj() * v;
                    }
                }
                if i == j {
                    out[(i, i)] = Complex64::new(acc.re, 0.0);
                } else {
                    out[(i, j)] = acc;
                    out[(j, i)] = acc.conj();
                }
            }
        }
        out
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.reconstruct_with(&self.eigenvalues)
    }
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.dim();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += a[(i, j)].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// Decomposes a Hermitian matrix.
///
/// `tol` bounds both the accepted Hermiticity defect and the off-diagonal
/// Frobenius norm at convergence; both are taken relative to `max(1, ||A||_F)`.
pub fn hermitian_eig(a: &ComplexMatrix, tol: f64) -> Result<HermitianEigen> {
    let n = a.dim();
    let scale = a.frobenius_norm().max(1.0);
    let defect = a.hermiticity_defect();
    if defect > tol * scale {
        return Err(Error::NotHermitian(defect));
    }

    let mut w = a.hermitian_part();
    let mut v = ComplexMatrix::identity(n);
    let threshold = tol * scale;

    let mut sweeps = 0;
    let mut off = off_diagonal_norm(&w);
    while off > threshold {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps, off });
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut w, &mut v, p, q);
            }
        }
        sweeps += 1;
        off = off_diagonal_norm(&w);
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag = w.diag_real();
    order.sort_by(|&i, &j| diag[i].total_cmp(&diag[j]));

    let mut vectors = ComplexMatrix::zeros(n);
    let mut eigenvalues = Vec::with_capacity(n);
    for (k, &src) in order.iter().enumerate() {
        eigenvalues.push(diag[src]);
        let col = fix_phase(v.column(src));
        for (i, z) in col.into_iter().enumerate() {
            vectors[(i, k)] = z;
        }
    }
    Ok(HermitianEigen {
        eigenvalues,
        vectors,
    })
}

/// Annihilates `w[p][q]` with the unitary `G = D R` and accumulates `v <- v G`.
fn rotate(w: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = w[(p, q)];
    let mag = apq.norm();
    if mag == 0.0 {
        return;
    }
    let app = w[(p, p)].re;
    let aqq = w[(q, q)].re;
    // Pivot below rounding of both diagonal entries: drop it.
    if mag < 1e-3 * f64::EPSILON * (app.abs() + aqq.abs()) {
        w[(p, q)] = Complex64::new(0.0, 0.0);
        w[(q, p)] = Complex64::new(0.0, 0.0);
        return;
    }
    let phase = apq / mag; // e^{i phi}
    let theta = (aqq - app) / (2.0 * mag);
    let t = if theta >= 0.0 {
        1.0 / (theta + (theta * theta + 1.0).sqrt())
    } else {
        -1.0 / (-theta + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    let e = phase.conj(); // e^{-i phi}
    let g_pp = Complex64::new(c, 0.0);
    let g_pq = Complex64::new(s, 0.0);
    let g_qp = e * (-s);
    let g_qq = e * c;

    let n = w.dim();
    // w <- w G (columns p, q)
    for i in 0..n {
        let wp = w[(i, p)];
        let wq = w[(i, q)];
        w[(i, p)] = wp * g_pp + wq * g_qp;
        w[(i, q)] = wp * g_pq + wq * g_qq;
    }
    // w <- G^dag w (rows p, q)
    for j in 0..n {
        let wp = w[(p, j)];
        let wq = w[(q, j)];
        w[(p, j)] = g_pp.conj() * wp + g_qp.conj() * wq;
        w[(q, j)] = g_pq.conj() * wp + g_qq.conj() * wq;
    }
    w[(p, q)] = Complex64::new(0.0, 0.0);
    w[(q, p)] = Complex64::new(0.0, 0.0);
    w[(p, p)] = Complex64::new(w[(p, p)].re, 0.0);
    w[(q, q)] = Complex64::new(w[(q, q)].re, 0.0);

    for i in 0..n {
        let vp = v[(i, p)];
        let vq = v[(i, q)];
        v[(i, p)] = vp * g_pp + vq * g_qp;
        v[(i, q)] = vp * g_pq + vq * g_qq;
    }
}

/// Rotates a vector so its largest-modulus component (first on ties) is real positive.
fn fix_phase(mut col: Vec<Complex64>) -> Vec<Complex64> {
    let mut best = 0;
    let mut best_mod = -1.0;
    for (i, z) in col.iter().enumerate() {
        let m = z.norm();
        if m > best_mod * (1.0 + 1e-12) {
            best = i;
            best_mod = m;
        }
    }
    if best_mod > 0.0 {
        let ph = col[best].conj() / best_mod;
        for z in col.iter_mut() {
            *z *= ph;
        }
        col[best] = Complex64::new(col[best].re, 0.0);
    }
    col
}
