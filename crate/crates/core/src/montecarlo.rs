//! Seeded Monte Carlo sweeps.
//!
//! Sample `i` always sees the random substream `(seed, i)` and results are
//! returned in index order, so the `parallel` and sequential paths produce
//! identical output.

use crate::rng::SampleRng;

/// Runs `f(i, rng_i)` for `i in 0..count` on the calling thread.
pub fn map_samples_seq<T, F>(seed: u64, count: usize, f: F) -> Vec<T>
where
    F: Fn(usize, &mut SampleRng) -> T,
{
    (0..count)
        .map(|i| f(i, &mut SampleRng::substream(seed, i as u64)))
        .collect()
}

/// Same as [`map_samples_seq`], fanned out over the rayon pool.
#[cfg(feature = "parallel")]
pub fn map_samples_par<T, F>(seed: u64, count: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize, &mut SampleRng) -> T + Sync + Send,
{
    use rayon::prelude::*;
    (0..count)
        .into_par_iter()
        .map(|i| f(i, &mut SampleRng::substream(seed, i as u64)))
        .collect()
}

/// Dispatches to the parallel path when the `parallel` feature is on.
#[cfg(feature = "parallel")]
pub fn map_samples<T, F>(seed: u64, count: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize, &mut SampleRng) -> T + Sync + Send,
{
    map_samples_par(seed, count, f)
}

#[cfg(not(feature = "parallel"))]
pub fn map_samples<T, F>(seed: u64, count: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize, &mut SampleRng) -> T + Sync + Send,
{
    map_samples_seq(seed, count, f)
}

/// Aggregate of a residual-style property over many samples.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSummary {
    pub samples: usize,
    /// Samples whose residual exceeded the tolerance.
    pub violations: usize,
    /// Largest residual seen (NaN-free; errors are counted separately).
    pub max_residual: f64,
    pub errors: usize,
}

impl SweepSummary {
    pub fn passed(&self) -> bool {
        self.violations == 0 && self.errors == 0
    }
}

/// Folds per-sample residuals (`Err` for samples that failed to evaluate) against `tol`.
pub fn summarize<E>(residuals: &[Result<f64, E>], tol: f64) -> SweepSummary {
    let mut s = SweepSummary {
        samples: residuals.len(),
        violations: 0,
        max_residual: f64::NEG_INFINITY,
        errors: 0,
    };
    for r in residuals {
        match r {
            Ok(x) => {
                if !(*x <= tol) {
                    s.violations += 1;
                }
                if x.is_finite() {
                    s.max_residual = s.max_residual.max(*x);
                }
            }
            Err(_) => s.errors += 1,
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sequential_and_dispatch_agree() {
        let seq = map_samples_seq(9, 257, |i, rng| (i, rng.normal()));
        let any = map_samples(9, 257, |i, rng| (i, rng.normal()));
        assert_eq!(seq, any);
        assert!(seq.iter().enumerate().all(|(k, (i, _))| k == *i));
    }

    #[test]
    fn summary_counts() {
        let rs: Vec<Result<f64, ()>> = vec![Ok(1e-12), Ok(2e-8), Err(()), Ok(f64::NAN)];
        let s = summarize(&rs, 1e-8);
        assert_eq!(s.samples, 4);
        assert_eq!(s.violations, 2);
        assert_eq!(s.errors, 1);
        assert_eq!(s.max_residual, 2e-8);
        assert!(!s.passed());
    }
}
