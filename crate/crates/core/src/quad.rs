//! Adaptive Simpson quadrature with an explicit bisection stack.

use crate::error::{Error, Result};

pub const DEFAULT_QUAD_TOL: f64 = 1e-8;
pub const MAX_SUBINTERVALS: usize = 100_000;

struct Panel {
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

/// Integrates `f` over `[a, b]` to absolute tolerance `tol`.
///
/// A panel is accepted when `|S_left + S_right - S_whole| <= 15 tol_panel`;
/// tolerances halve on each bisection. Fails once more than
/// [`MAX_SUBINTERVALS`] panels have been created or the integrand is not finite.
pub fn adaptive_simpson<F>(f: F, a: f64, b: f64, tol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    if !(tol > 0.0) {
        return Err(Error::OutOfRange(format!("quadrature tolerance {tol}")));
    }
    if a == b {
        return Ok(0.0);
    }
    let eval = |x: f64| -> Result<f64> {
        let y = f(x);
        if y.is_finite() {
            Ok(y)
        } else {
            Err(Error::QuadratureFailure(format!("integrand not finite at {x}")))
        }
    };
    let fa = eval(a)?;
    let fb = eval(b)?;
    let m = 0.5 * (a + b);
    let fm = eval(m)?;
    let mut stack = vec![Panel {
        a,
        b,
        fa,
        fm,
        fb,
        whole: simpson(a, b, fa, fm, fb),
        tol,
        depth: 0,
    }];
    let mut panels = 1usize;
    let mut total = 0.0;
    while let Some(p) = stack.pop() {
        let m = 0.5 * (p.a + p.b);
        let lm = 0.5 * (p.a + m);
        let rm = 0.5 * (m + p.b);
        let flm = eval(lm)?;
        let frm = eval(rm)?;
        let left = simpson(p.a, m, p.fa, flm, p.fm);
        let right = simpson(m, p.b, p.fm, frm, p.fb);
        let delta = left + right - p.whole;
        if delta.abs() <= 15.0 * p.tol || p.depth >= 60 {
            total += left + right + delta / 15.0;
            continue;
        }
        panels += 1;
        if panels > MAX_SUBINTERVALS {
            return Err(Error::QuadratureFailure(format!(
                "exceeded {MAX_SUBINTERVALS} subintervals"
            )));
        }
        stack.push(Panel {
            a: m,
            b: p.b,
            fa: p.fm,
            fm: frm,
            fb: p.fb,
            whole: right,
            tol: 0.5 * p.tol,
            depth: p.depth + 1,
        });
        stack.push(Panel {
            a: p.a,
            b: m,
            fa: p.fa,
            fm: flm,
            fb: p.fm,
            whole: left,
            tol: 0.5 * p.tol,
            depth: p.depth + 1,
        });
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomials_are_exact() {
        let v = adaptive_simpson(|x| x * x * x - 2.0 * x, 0.0, 2.0, 1e-12).unwrap();
        assert!((v - 0.0).abs() < 1e-13);
    }

    #[test]
    fn smooth_integrals() {
        let v = adaptive_simpson(f64::exp, 0.0, 1.0, 1e-10).unwrap();
        assert!((v - (std::f64::consts::E - 1.0)).abs() < 1e-10);
        let v = adaptive_simpson(|x| 1.0 / x, 1.0, 10.0, 1e-10).unwrap();
        assert!((v - 10f64.ln()).abs() < 1e-10);
    }

    #[test]
    fn error_shrinks_with_tolerance() {
        let exact = 10f64.ln();
        let errs: Vec<f64> = [1e-4, 1e-5, 1e-6, 1e-7]
            .iter()
            .map(|&t| (adaptive_simpson(|x| 1.0 / x, 1.0, 10.0, t).unwrap() - exact).abs())
            .collect();
        for w in errs.windows(2) {
            assert!(w[1] <= w[0], "{errs:?}");
        }
    }

    #[test]
    fn failures() {
        assert!(adaptive_simpson(|x| 1.0 / x, 0.0, 1.0, 1e-8).is_err());
        assert!(adaptive_simpson(|x| x, 0.0, 1.0, 0.0).is_err());
    }
}
