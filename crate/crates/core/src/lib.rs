//! Numerical laboratory for the one-dimensional nonlinear Schrödinger equation
//!
//! ```text
//! i u_t + u_xx + Z δ(x) u + λ₁ u |u|^{p-1} + λ₂ u |u|^{2p-2} = 0
//! ```
//!
//! with an attractive point interaction (`Z > 0`) and a defocusing
//! double-power nonlinearity (`λ₁ ≤ 0`, `λ₂ < 0`).
//!
//! The crate builds the explicit peaked standing-wave profiles `φ_ω`
//! (`ω < 0`) and the rational equilibrium profile `φ₀` (`ω = 0`), checks
//! them against the stationary problem, integrates the evolution equation
//! with a charge-conserving split-step Crank–Nicolson scheme, and probes the
//! variational and orbital-stability properties of the profiles.
//!
//! Module map:
//!
//! * [`model`]: equation coefficients and the existence/nonexistence classifier.
//! * [`profiles`]: closed-form profiles and the shift maps `R₁`, `R₂`.
//! * [`grid`] / [`functionals`]: discretisation and quadrature of the
//!   conserved and variational functionals.
//! * [`stationary`]: residual checks, peak polynomial and shooting oracle.
//! * [`phaseplane`]: Hamiltonian phase-plane orbits and the jump map.
//! * [`evolution`]: time integration and diagnostics.
//! * [`minimize`]: discrete gradient flows for the action and the energy.
//! * [`stability`]: perturbation experiments around the profiles.
//!
//! Sweeps over independent runs use rayon when the `parallel` feature is on
//! (the default) and fall back to plain iterators otherwise.

// `!(x > 0.0)` is used on purpose so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod evolution;
pub mod functionals;
pub mod grid;
pub mod io;
pub mod minimize;
pub mod model;
pub mod ode;
pub mod par;
pub mod phaseplane;
pub mod profiles;
pub mod roots;
pub mod stability;
pub mod stationary;
pub mod tridiag;

pub use error::{Error, Result};
pub use grid::{ComplexField, Grid};
pub use model::{classify_regime, ModelParams, RegimeTag, RegimeVerdict};
pub use profiles::{Profile, ProfileKind, Side};

pub use num_complex::Complex64;
