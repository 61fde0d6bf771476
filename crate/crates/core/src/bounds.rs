//! Pinsker-type lower bounds and reverse-Pinsker upper bounds in terms of the trace distance.
//!
//! Trace distances here are full trace norms `||rho - sigma||_1 in [0, 2]`.

use crate::divergence::{classical_f_div, quantum_chi2, trace_distance};
use crate::error::{Error, Result};
use crate::fgen::FGenerator;
use crate::maximal::build_witness;
use crate::quad::adaptive_simpson;
use crate::rng::SampleRng;
use crate::states::{satisfies_abs_condition, ClassicalDistribution, DensityMatrix};

/// Tolerance for the Loewner test of `|rho - sigma| <= rho + sigma`.
pub const CONDITION_TOL: f64 = 1e-9;
/// Below this trace distance a pair is treated as identical.
pub const IDENTICAL_TOL: f64 = 1e-8;
/// `lambda_min(rho)` below this drops the second Audenaert-Eisert term.
pub const AE_ALPHA_CUTOFF: f64 = 1e-12;

/// One evaluated inequality, oriented so `slack >= 0` means it holds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundReport {
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub condition_met: bool,
}

impl BoundReport {
    /// Upper bound `lhs <= rhs`.
    pub fn upper(lhs: f64, rhs: f64, condition_met: bool) -> Self {
        Self {
            lhs,
            rhs,
            slack: rhs - lhs,
            condition_met,
        }
    }

    pub fn holds(&self, tol: f64) -> bool {
        self.slack >= -tol
    }
}

fn check_trace_distance_range(t: f64) -> Result<()> {
    if !(0.0..=2.0).contains(&t) {
        return Err(Error::OutOfRange(format!("trace distance {t} outside [0, 2]")));
    }
    Ok(())
}

/// Lower bound on chi2 from the trace distance: `T^2` on `[0, 1]`, `T / (2 - T)` on `(1, 2]`.
pub fn pinsker_chi2_lower(t: f64) -> Result<f64> {
    check_trace_distance_range(t)?;
    Ok(if t <= 1.0 { t * t } else { t / (2.0 - t) })
}

/// `pinsker_chi2_lower(||rho - sigma||_1) <= chi2(rho || sigma)`; holds for every pair.
pub fn check_quantum_pinsker_chi2(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<BoundReport> {
    let chi2 = quantum_chi2(rho, sigma)?;
    // Rounding can push a trace distance a hair past 2.
    let t = trace_distance(rho, sigma)?.min(2.0);
    let lower = pinsker_chi2_lower(t)?;
    Ok(BoundReport {
        lhs: lower,
        rhs: chi2,
        slack: chi2 - lower,
        condition_met: true,
    })
}

/// Trace-distance bounds for a state relaxing to equilibrium at rate `lambda`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecoherenceBounds {
    /// `exp(-lambda t / 2) sqrt(chi2_0)`
    pub temme: f64,
    /// Improved bound from the sharpened chi2 Pinsker inequality.
    pub improved: f64,
}

pub fn decoherence_bounds(chi2_0: f64, lambda: f64, t: f64) -> Result<DecoherenceBounds> {
    if !(chi2_0 >= 0.0) || !chi2_0.is_finite() {
        return Err(Error::OutOfRange(format!("chi2_0 = {chi2_0}")));
    }
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(Error::OutOfRange(format!("lambda = {lambda}")));
    }
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::OutOfRange(format!("t = {t}")));
    }
    let decay = (-lambda * t).exp();
    let temme = (-0.5 * lambda * t).exp() * chi2_0.sqrt();
    let y = decay * chi2_0;
    let improved = if (lambda * t).exp() < chi2_0 {
        2.0 * y / (1.0 + y)
    } else {
        temme
    };
    Ok(DecoherenceBounds { temme, improved })
}

fn check_extremes(m: f64, big_m: f64) -> Result<()> {
    if m == 1.0 || big_m == 1.0 {
        return Err(Error::DegenerateExtremes { m, big_m });
    }
    if !(0.0..1.0).contains(&m) || !(big_m > 1.0) || !big_m.is_finite() {
        return Err(Error::OutOfRange(format!(
            "extremes must satisfy 0 <= m < 1 < M, got m = {m}, M = {big_m}"
        )));
    }
    Ok(())
}

/// `(T/2) (f(m)/(1-m) + f(M)/(M-1))`, with `f(0+)` at `m = 0`.
pub fn binette_rhs(m: f64, big_m: f64, t: f64, f: &FGenerator) -> Result<f64> {
    check_extremes(m, big_m)?;
    check_trace_distance_range(t)?;
    Ok(0.5 * t * (f.eval(m) / (1.0 - m) + f.eval(big_m) / (big_m - 1.0)))
}

/// Reverse Pinsker check with the maximal divergence on the left.
///
/// The bound is asserted only when `condition_met`; identical pairs report `0 <= 0`.
pub fn check_reverse_pinsker_quantum(rho: &DensityMatrix, sigma: &DensityMatrix, f: &FGenerator) -> Result<BoundReport> {
    let condition_met = satisfies_abs_condition(rho, sigma, CONDITION_TOL)?;
    let t = trace_distance(rho, sigma)?.min(2.0);
    if t < IDENTICAL_TOL {
        return Ok(BoundReport::upper(0.0, 0.0, condition_met));
    }
    let w = build_witness(rho, sigma)?;
    let e = w.extremes();
    let rhs = binette_rhs(e.min, e.max, t, f)?;
    let lhs = classical_f_div(&w.r, &w.s, f)?;
    Ok(BoundReport::upper(lhs, rhs, condition_met))
}

/// `f(M)/(M-1) + f(m)/(1-m)`.
pub fn zeta1_closed(m: f64, big_m: f64, f: &FGenerator) -> Result<f64> {
    check_extremes(m, big_m)?;
    Ok(f.eval(big_m) / (big_m - 1.0) + f.eval(m) / (1.0 - m))
}

/// The integral form of the reverse-Pinsker coefficient,
///
/// ```text
/// int_1^M (M - g)/(M - 1) f''(g) dg + int_1^{1/m} (1/m - g)/(1/m - 1) g^-3 f''(1/g) dg,
/// ```
///
/// by adaptive Simpson with `quad_tol / 2` per integral. Needs `m > 0`.
pub fn zeta1_integral(m: f64, big_m: f64, f: &FGenerator, quad_tol: f64) -> Result<f64> {
    let d2 = f
        .second_derivative()
        .ok_or_else(|| Error::NoSecondDerivative(f.name().to_string()))?
        .clone();
    check_extremes(m, big_m)?;
    if m <= 0.0 {
        return Err(Error::OutOfRange("integral form needs m > 0".into()));
    }
    let upper = {
        let d2 = d2.clone();
        adaptive_simpson(move |g| (big_m - g) / (big_m - 1.0) * d2(g), 1.0, big_m, 0.5 * quad_tol)?
    };
    let inv_m = 1.0 / m;
    let lower = adaptive_simpson(
        move |g| (inv_m - g) / (inv_m - 1.0) * d2(1.0 / g) / (g * g * g),
        1.0,
        inv_m,
        0.5 * quad_tol,
    )?;
    Ok(upper + lower)
}

/// Relative-entropy continuity bound with `T = ||rho - sigma||_1`, `alpha = lambda_min(rho)`,
/// `beta = lambda_min(sigma)`:
/// `(beta + T/2) ln(1 + T/(2 beta)) - alpha ln(1 + T/(2 alpha))`.
pub fn audenaert_eisert_bound(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    let beta = sigma.min_eigenvalue()?;
    if beta <= crate::linalg::DEFAULT_SINGULAR_EPS {
        return Err(Error::SingularState(beta));
    }
    let alpha = rho.min_eigenvalue()?.max(0.0);
    let half_t = 0.5 * trace_distance(rho, sigma)?;
    let first = (beta + half_t) * (half_t / beta).ln_1p();
    let second = if alpha < AE_ALPHA_CUTOFF {
        0.0
    } else {
        alpha * (half_t / alpha).ln_1p()
    };
    Ok(first - second)
}

/// Best ratio `D_f(p || q) / binette_rhs` found over random ternary pairs whose
/// likelihood ratios are `{m, M, t}` with `t` in `[m, M]`.
pub fn binette_sharpness_search(m: f64, big_m: f64, f: &FGenerator, samples: usize, seed: u64) -> Result<f64> {
    check_extremes(m, big_m)?;
    let mut rng = SampleRng::new(seed);
    let mut best = f64::NEG_INFINITY;
    for _ in 0..samples {
        let q3 = rng.uniform();
        let mid = m + (big_m - m) * rng.uniform();
        let q2 = (1.0 - mid * q3 - m * (1.0 - q3)) / (big_m - m);
        let q1 = 1.0 - q3 - q2;
        if q1 <= 0.0 || q2 <= 0.0 || q3 <= 0.0 {
            continue;
        }
        let q = [q1, q2, q3];
        let p = [m * q1, big_m * q2, mid * q3];
        let (Ok(pd), Ok(qd)) = (
            ClassicalDistribution::new(p.to_vec()),
            ClassicalDistribution::new(q.to_vec()),
        ) else {
            continue;
        };
        let div = classical_f_div(&pd, &qd, f)?;
        let tv: f64 = p.iter().zip(&q).map(|(a, b)| (a - b).abs()).sum();
        let rhs = binette_rhs(m, big_m, tv.min(2.0), f)?;
        if rhs > 0.0 {
            best = best.max(div / rhs);
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ComplexMatrix;
    use crate::states::diagonal_state;
    use std::f64::consts::LN_2;

    fn plus() -> DensityMatrix {
        DensityMatrix::new(ComplexMatrix::from_real_rows(2, &[0.5, 0.5, 0.5, 0.5]).unwrap()).unwrap()
    }

    #[test]
    fn pinsker_lower_branches() {
        assert_eq!(pinsker_chi2_lower(0.0).unwrap(), 0.0);
        assert_eq!(pinsker_chi2_lower(1.0).unwrap(), 1.0);
        assert_eq!(1.0 / (2.0 - 1.0), 1.0);
        assert!((pinsker_chi2_lower(1.5).unwrap() - 3.0).abs() < 1e-15);
        assert!(pinsker_chi2_lower(2.5).is_err());
        assert!(pinsker_chi2_lower(-0.1).is_err());
        let mut prev = -1.0;
        for i in 0..=199 {
            let v = pinsker_chi2_lower(i as f64 / 100.0).unwrap();
            assert!(v > prev);
            prev = v;
        }
    }

    #[test]
    fn quantum_pinsker_cases() {
        let sigma = DensityMatrix::maximally_mixed(2);
        let same = check_quantum_pinsker_chi2(&sigma, &sigma).unwrap();
        assert!(same.lhs.abs() < 1e-14 && same.rhs.abs() < 1e-14);
        let rep = check_quantum_pinsker_chi2(&plus(), &sigma).unwrap();
        assert!((rep.rhs - 1.0).abs() < 1e-10);
        assert!((rep.lhs - 1.0).abs() < 1e-10);
        assert!(rep.holds(1e-10));
    }

    #[test]
    fn decoherence_examples() {
        let b = decoherence_bounds(4.0, 0.1, 0.0).unwrap();
        assert!((b.temme - 2.0).abs() < 1e-15);
        assert!((b.improved - 1.6).abs() < 1e-15);
        let t = 10.0 * 4f64.ln();
        let b = decoherence_bounds(4.0, 0.1, t).unwrap();
        assert!((b.temme - 1.0).abs() < 1e-12);
        assert!((b.improved - 1.0).abs() < 1e-12);
        // Just before the crossover the other branch is active and agrees.
        let b2 = decoherence_bounds(4.0, 0.1, t - 1e-9).unwrap();
        assert!((b2.improved - b.improved).abs() < 1e-8);
        assert!(decoherence_bounds(-1.0, 0.1, 0.0).is_err());
        assert!(decoherence_bounds(1.0, 0.0, 0.0).is_err());
        assert!(decoherence_bounds(1.0, 0.1, -1.0).is_err());
    }

    #[test]
    fn binette_examples() {
        let chi2 = FGenerator::chi2();
        let kl = FGenerator::kl();
        assert!((binette_rhs(0.0, 2.0, 1.0, &chi2).unwrap() - 1.0).abs() < 1e-15);
        assert!((binette_rhs(0.0, 2.0, 1.0, &kl).unwrap() - LN_2).abs() < 1e-15);
        assert_eq!(binette_rhs(0.3, 4.0, 0.0, &kl).unwrap(), 0.0);
        assert!(matches!(
            binette_rhs(1.0, 2.0, 1.0, &kl),
            Err(Error::DegenerateExtremes { .. })
        ));
        assert!(matches!(
            binette_rhs(0.5, 1.0, 1.0, &kl),
            Err(Error::DegenerateExtremes { .. })
        ));
    }

    #[test]
    fn reverse_pinsker_equality_cases() {
        let sigma = DensityMatrix::maximally_mixed(2);
        let rep = check_reverse_pinsker_quantum(&plus(), &sigma, &FGenerator::chi2()).unwrap();
        assert!(rep.condition_met);
        assert!((rep.lhs - 1.0).abs() < 1e-10 && (rep.rhs - 1.0).abs() < 1e-10);
        let rep = check_reverse_pinsker_quantum(&plus(), &sigma, &FGenerator::kl()).unwrap();
        assert!((rep.lhs - LN_2).abs() < 1e-10 && (rep.rhs - LN_2).abs() < 1e-10);
        let same = check_reverse_pinsker_quantum(&sigma, &sigma, &FGenerator::kl()).unwrap();
        assert_eq!((same.lhs, same.rhs), (0.0, 0.0));
    }

    #[test]
    fn zeta1_examples() {
        let chi2 = FGenerator::chi2();
        let kl = FGenerator::kl();
        assert!((zeta1_closed(0.0, 2.0, &chi2).unwrap() - 2.0).abs() < 1e-15);
        assert!((zeta1_closed(0.0, 2.0, &kl).unwrap() - 2.0 * LN_2).abs() < 1e-15);
        assert!((zeta1_closed(0.5, 2.0, &chi2).unwrap() - 1.5).abs() < 1e-15);
        assert!((zeta1_closed(0.5, 2.0, &kl).unwrap() - LN_2).abs() < 1e-15);
        for f in [&chi2, &kl] {
            let closed = zeta1_closed(0.3, 3.0, f).unwrap();
            assert_eq!(closed, 2.0 * binette_rhs(0.3, 3.0, 1.0, f).unwrap());
        }
        let i = zeta1_integral(0.5, 2.0, &chi2, 1e-8).unwrap();
        assert!((i - 1.5).abs() < 1e-7);
        let i = zeta1_integral(0.5, 2.0, &kl, 1e-8).unwrap();
        assert!((i - LN_2).abs() < 1e-7);
        assert!(matches!(
            zeta1_integral(0.5, 2.0, &FGenerator::tv(), 1e-8),
            Err(Error::NoSecondDerivative(_))
        ));
        assert!(zeta1_integral(0.0, 2.0, &kl, 1e-8).is_err());
    }

    #[test]
    fn zeta1_quadrature_converges() {
        let kl = FGenerator::kl();
        let closed = zeta1_closed(0.1, 10.0, &kl).unwrap();
        let errs: Vec<f64> = [1e-3, 1e-4, 1e-5, 1e-6]
            .iter()
            .map(|&tol| (zeta1_integral(0.1, 10.0, &kl, tol).unwrap() - closed).abs())
            .collect();
        for w in errs.windows(2) {
            assert!(w[1] <= w[0], "{errs:?}");
        }
    }

    #[test]
    fn audenaert_eisert_cases() {
        let sigma = DensityMatrix::maximally_mixed(2);
        assert!(audenaert_eisert_bound(&sigma, &sigma).unwrap().abs() < 1e-15);
        assert!((audenaert_eisert_bound(&plus(), &sigma).unwrap() - LN_2).abs() < 1e-10);
        let singular = diagonal_state(&ClassicalDistribution::new(vec![1.0, 0.0]).unwrap());
        assert!(audenaert_eisert_bound(&sigma, &singular).is_err());
    }

    #[test]
    fn binette_is_sharp_on_ternary_pairs() {
        for f in [FGenerator::kl(), FGenerator::chi2()] {
            let best = binette_sharpness_search(0.25, 3.0, &f, 20_000, 7).unwrap();
            assert!(best >= 1.0 - 1e-4, "{}: {best}", f.name());
            assert!(best <= 1.0 + 1e-9, "{}: {best}", f.name());
        }
    }
}
