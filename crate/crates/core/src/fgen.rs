//! Convex generators `f` with `f(1) = 0` and the metadata divergences and bounds need.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

pub type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

const GRID: [f64; 5] = [0.1, 0.5, 1.0, 2.0, 10.0];

/// Names of the built-in generators.
pub const BUILTIN_NAMES: [&str; 3] = ["kl", "chi2", "tv"];

#[derive(Clone)]
pub struct FGenerator {
    name: String,
    value: ScalarFn,
    value_at_zero: f64,
    second_derivative: Option<ScalarFn>,
    operator_convex: bool,
}

impl fmt::Debug for FGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FGenerator")
            .field("name", &self.name)
            .field("value_at_zero", &self.value_at_zero)
            .field("has_second_derivative", &self.second_derivative.is_some())
            .field("operator_convex", &self.operator_convex)
            .finish()
    }
}

/// Builder for user-supplied generators. `operator_convex` defaults to false.
pub struct GeneratorSpec {
    pub name: String,
    pub value: ScalarFn,
    pub value_at_zero: f64,
    pub second_derivative: Option<ScalarFn>,
    pub operator_convex: bool,
}

impl GeneratorSpec {
    pub fn new(name: impl Into<String>, value: ScalarFn, value_at_zero: f64) -> Self {
        Self {
            name: name.into(),
            value,
            value_at_zero,
            second_derivative: None,
            operator_convex: false,
        }
    }

    pub fn with_second_derivative(mut self, d2: ScalarFn) -> Self {
        self.second_derivative = Some(d2);
        self
    }

    pub fn operator_convex(mut self, flag: bool) -> Self {
        self.operator_convex = flag;
        self
    }
}

impl FGenerator {
    /// Registers a generator after the `f(1) = 0`, midpoint-convexity and
    /// second-derivative spot checks.
    pub fn register(spec: GeneratorSpec) -> Result<Self> {
        let bad = |reason: String| Error::BadGenerator {
            name: spec.name.clone(),
            reason,
        };
        let f = &spec.value;
        let at_one = f(1.0);
        if at_one != 0.0 {
            return Err(bad(format!("f(1) = {at_one}, expected 0")));
        }
        if !spec.value_at_zero.is_finite() {
            return Err(bad("f(0+) must be finite".into()));
        }
        for &x in &GRID {
            for &y in &GRID {
                let mid = f(0.5 * (x + y));
                let chord = 0.5 * (f(x) + f(y));
                if mid > chord + 1e-12 {
                    return Err(bad(format!("midpoint convexity fails at ({x}, {y})")));
                }
            }
        }
        if let Some(d2) = &spec.second_derivative {
            for &x in &GRID {
                let h = 1e-4 * x;
                let fd = (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
                let exact = d2(x);
                let rel = (fd - exact).abs() / exact.abs().max(1e-300);
                if rel > 1e-5 && (fd - exact).abs() > 1e-5 {
                    return Err(bad(format!(
                        "second derivative mismatch at {x}: finite difference {fd}, supplied {exact}"
                    )));
                }
            }
        }
        Ok(Self {
            name: spec.name,
            value: spec.value,
            value_at_zero: spec.value_at_zero,
            second_derivative: spec.second_derivative,
            operator_convex: spec.operator_convex,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// `f(x)` for `x > 0`; `x == 0` returns the registered limit `f(0+)`.
    pub fn eval(&self, x: f64) -> f64 {
        if x == 0.0 {
            self.value_at_zero
        } else {
            (self.value)(x)
        }
    }

    pub fn value_at_zero(&self) -> f64 {
        self.value_at_zero
    }

    pub fn second_derivative(&self) -> Option<&ScalarFn> {
        self.second_derivative.as_ref()
    }

    pub fn operator_convex(&self) -> bool {
        self.operator_convex
    }

    pub fn kl() -> Self {
        builtin_generator("kl").expect("builtin")
    }

    pub fn chi2() -> Self {
        builtin_generator("chi2").expect("builtin")
    }

    pub fn tv() -> Self {
        builtin_generator("tv").expect("builtin")
    }
}

pub fn builtin_generator(name: &str) -> Result<FGenerator> {
    let spec = match name {
        "kl" => GeneratorSpec::new("kl", Arc::new(|x: f64| x * x.ln()), 0.0)
            .with_second_derivative(Arc::new(|x: f64| 1.0 / x))
            .operator_convex(true),
        "chi2" => GeneratorSpec::new("chi2", Arc::new(|x: f64| x * x - 1.0), -1.0)
            .with_second_derivative(Arc::new(|_| 2.0))
            .operator_convex(true),
        "tv" => GeneratorSpec::new("tv", Arc::new(|x: f64| (x - 1.0).abs()), 1.0),
        other => return Err(Error::UnknownGenerator(other.to_string())),
    };
    FGenerator::register(spec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::E;

    #[test]
    fn builtin_values() {
        let kl = FGenerator::kl();
        assert_eq!(kl.eval(1.0), 0.0);
        assert!((kl.eval(E) - E).abs() < 1e-15);
        assert_eq!(kl.eval(0.0), 0.0);
        assert!(kl.operator_convex());

        let chi2 = FGenerator::chi2();
        assert_eq!(chi2.eval(2.0), 3.0);
        assert_eq!(chi2.eval(0.0), -1.0);

        let tv = FGenerator::tv();
        assert_eq!(tv.eval(0.0), 1.0);
        assert_eq!(tv.eval(2.0), 1.0);
        assert!(tv.second_derivative().is_none());
        assert!(!tv.operator_convex());
    }

    #[test]
    fn unknown_name() {
        assert!(matches!(
            builtin_generator("hellinger"),
            Err(Error::UnknownGenerator(_))
        ));
    }

    #[test]
    fn registration_checks() {
        let not_normalized = GeneratorSpec::new("shifted", Arc::new(|x: f64| x * x), 0.0);
        assert!(FGenerator::register(not_normalized).is_err());

        let concave = GeneratorSpec::new("concave", Arc::new(|x: f64| -x * x.ln()), 0.0);
        assert!(FGenerator::register(concave).is_err());

        let wrong_d2 = GeneratorSpec::new("kl-bad", Arc::new(|x: f64| x * x.ln()), 0.0)
            .with_second_derivative(Arc::new(|x: f64| 2.0 / x));
        assert!(FGenerator::register(wrong_d2).is_err());

        // Hellinger-type generator passes and defaults to not operator convex.
        let hell = GeneratorSpec::new("hellinger", Arc::new(|x: f64| (x.sqrt() - 1.0).powi(2)), 1.0)
            .with_second_derivative(Arc::new(|x: f64| 0.5 * x.powf(-1.5)));
        let g = FGenerator::register(hell).unwrap();
        assert!(!g.operator_convex());
    }
}
