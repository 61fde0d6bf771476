//! Single-pair reports for the `witness` and `compare-bounds` subcommands.

use std::fmt::Write as _;

use qfdiv::bounds::{audenaert_eisert_bound, binette_rhs, check_quantum_pinsker_chi2, CONDITION_TOL, IDENTICAL_TOL};
use qfdiv::divergence::{quantum_chi2, quantum_relative_entropy, trace_distance};
use qfdiv::fgen::{builtin_generator, FGenerator};
use qfdiv::maximal::{build_witness, verify_witness};
use qfdiv::states::{satisfies_abs_condition, DensityMatrix};

use crate::error::Result;

/// Residual tolerance used when reporting witness checks.
pub const REPORT_TOL: f64 = 1e-9;

/// Witness distributions, reconstruction residuals and the maximal divergence for `f_name`.
/// Returns the text and whether every residual is within [`REPORT_TOL`].
pub fn witness_report(rho: &DensityMatrix, sigma: &DensityMatrix, f_name: &str) -> Result<(String, bool)> {
    let f = builtin_generator(f_name)?;
    let w = build_witness(rho, sigma)?;
    let report = verify_witness(rho, sigma, &f, REPORT_TOL)?;
    let mut out = String::new();
    let _ = writeln!(out, "f = {}", f.name());
    let _ = writeln!(out, "lambda = {:?}", w.lambdas);
    let _ = writeln!(out, "r = {:?}", w.r.probs());
    let _ = writeln!(out, "s = {:?}", w.s.probs());
    let _ = writeln!(out, "D_max = {:.16e}", report.divergence);
    for (name, r) in &report.residuals {
        let _ = writeln!(out, "residual {name:<20} {r:.3e}");
    }
    let passed = report.passed();
    let _ = writeln!(out, "{}", if passed { "witness: PASS" } else { "witness: FAIL" });
    Ok((out, passed))
}

/// Pinsker, reverse-Pinsker and Audenaert-Eisert values side by side.
/// Returns the text and whether every asserted bound holds.
pub fn compare_bounds(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<(String, bool)> {
    let t = trace_distance(rho, sigma)?.min(2.0);
    let relent = quantum_relative_entropy(rho, sigma)?;
    let chi2 = quantum_chi2(rho, sigma)?;
    let condition = satisfies_abs_condition(rho, sigma, CONDITION_TOL)?;
    let pinsker = check_quantum_pinsker_chi2(rho, sigma)?;
    let ae = audenaert_eisert_bound(rho, sigma)?;
    let w = build_witness(rho, sigma)?;
    let e = w.extremes();
    let kl = FGenerator::kl();

    let mut out = String::new();
    let mut ok = pinsker.holds(1e-8) && relent <= ae + 1e-8;
    let _ = writeln!(out, "trace_distance          {t:.16e}");
    let _ = writeln!(out, "m, M                    {:.16e} {:.16e}", e.min, e.max);
    let _ = writeln!(out, "condition |rho-sigma| <= rho+sigma: {condition}");
    let _ = writeln!(out, "relative_entropy        {relent:.16e}");
    let _ = writeln!(out, "chi2                    {chi2:.16e}");
    let _ = writeln!(out, "pinsker_chi2_lower      {:.16e}", pinsker.lhs);
    let _ = writeln!(out, "audenaert_eisert        {ae:.16e}");
    if t < IDENTICAL_TOL {
        let _ = writeln!(out, "reverse_pinsker_kl      0 (identical states)");
    } else {
        let rhs = binette_rhs(e.min, e.max, t, &kl)?;
        let dmax = qfdiv::divergence::classical_f_div(&w.r, &w.s, &kl)?;
        let _ = writeln!(out, "reverse_pinsker_kl      {rhs:.16e}");
        let _ = writeln!(out, "max_relent_div          {dmax:.16e}");
        if condition {
            ok &= dmax <= rhs + 1e-8;
        }
    }
    let _ = writeln!(out, "{}", if ok { "bounds: PASS" } else { "bounds: FAIL" });
    Ok((out, ok))
}
