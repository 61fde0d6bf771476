//! # qfdiv
//!
//! Classical and quantum f-divergences built around the maximal f-divergence
//!
//! ```text
//! D_f^max(rho || sigma) = Tr(sigma^{1/2} f(sigma^{-1/2} rho sigma^{-1/2}) sigma^{1/2})
//! ```
//!
//! and its classical witness: two probability vectors `r`, `s` and a
//! reconstruction channel `V` with `V(r) = rho`, `V(s) = sigma` and
//! `D_f^max(rho || sigma) = D_f(r || s)`. Classical inequalities between
//! f-divergences transfer to the quantum setting through the witness; the
//! [`bounds`] module evaluates the resulting Pinsker and reverse-Pinsker
//! inequalities.
//!
//! | Module | Contents |
//! |--------|----------|
//! | [`linalg`] | complex matrices, Jacobi Hermitian eigensolver, matrix functions |
//! | [`states`] | density matrices, Kraus channels, random sampling |
//! | [`fgen`] | generator registry (`kl`, `chi2`, `tv`) |
//! | [`divergence`] | classical f-divergence, relative entropy, chi2, trace distance, D_max |
//! | [`maximal`] | witness construction, maximal divergence, DPI and maximality checks |
//! | [`bounds`] | chi2 Pinsker, decoherence bounds, reverse Pinsker, zeta_1, Audenaert-Eisert |
//! | [`montecarlo`] | seeded sample sweeps, rayon-parallel behind the `parallel` feature |
//!
//! All logarithms are natural.
//!
//! ```rust
//! use qfdiv::{fgen::FGenerator, maximal::maximal_f_div, states::random_density};
//!
//! let rho = random_density(3, 3, 1).unwrap();
//! let sigma = random_density(3, 3, 2).unwrap();
//! let d = maximal_f_div(&rho, &sigma, &FGenerator::kl()).unwrap();
//! assert!(d >= 0.0);
//! ```

// `!(x > 0.0)` style checks are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod divergence;
pub mod error;
pub mod fgen;
pub mod linalg;
pub mod maximal;
pub mod montecarlo;
pub mod quad;
pub mod rng;
pub mod states;

pub use error::{Error, Result};
