//! Checks that a profile solves the stationary problem, the peak polynomial
//! and its root, and an independent shooting reconstruction of the profile.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::model::{classify_regime, pow_real, ModelParams};
use crate::ode::rk4_step;
use crate::profiles::{Profile, Side};
use crate::roots::bisect_newton;

/// A residual sampled on a subset of grid nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeResidual {
    pub x: Vec<f64>,
    pub r: Vec<f64>,
}

impl NodeResidual {
    pub fn max_abs(&self) -> f64 {
        self.r.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

/// Summary of the three stationarity checks for one profile.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    pub max_interior_residual: f64,
    pub jump_residual: f64,
    /// `jump_residual / (Zφ(0))`.
    pub jump_relative: f64,
    pub first_integral_max: f64,
    /// `first_integral_max` divided by the size of the largest term at the peak.
    pub first_integral_relative: f64,
    pub grid: Grid,
}

/// Runs all checks of this module on `profile`.
pub fn verify(profile: &Profile, grid: &Grid) -> ResidualReport {
    let jump = jump_residual(profile);
    let first = first_integral_residual(profile, grid).max_abs();
    ResidualReport {
        max_interior_residual: interior_residual(profile, grid).max_abs(),
        jump_residual: jump,
        jump_relative: jump / (profile.params.z * profile.peak),
        first_integral_max: first,
        first_integral_relative: first / first_integral_scale(profile),
        grid: *grid,
    }
}

/// `φ'' + ωφ + λ₁φ^p + λ₂φ^{2p-1}` with a five-point stencil, on nodes at
/// least two cells away from the kink and from the domain ends.
pub fn interior_residual(profile: &Profile, grid: &Grid) -> NodeResidual {
    interior_residual_of(|x| profile.eval(x), &profile.params, profile.omega, grid)
}

/// As [`interior_residual`] for an arbitrary real even function `f`.
pub fn interior_residual_of(f: impl Fn(f64) -> f64, params: &ModelParams, omega: f64, grid: &Grid) -> NodeResidual {
    let h = grid.h();
    let c = grid.center();
    let mut x = Vec::new();
    let mut r = Vec::new();
    for j in 2..grid.len().saturating_sub(2) {
        if j.abs_diff(c) < 2 {
            continue;
        }
        let xj = grid.x(j);
        let f0 = f(xj);
        let d2 =
            (-f(xj - 2.0 * h) + 16.0 * f(xj - h) - 30.0 * f0 + 16.0 * f(xj + h) - f(xj + 2.0 * h)) / (12.0 * h * h);
        x.push(xj);
        r.push(d2 + omega * f0 + params.nonlinearity(f0 * f0) * f0);
    }
    NodeResidual { x, r }
}

/// `|φ'(0+) - φ'(0-) + Zφ(0)|` from the closed-form one-sided slopes.
pub fn jump_residual(profile: &Profile) -> f64 {
    let right = profile.derivative(0.0, Side::Right);
    let left = profile.derivative(0.0, Side::Left);
    (right - left + profile.params.z * profile.eval(0.0)).abs()
}

/// `|φ'|² + ωφ² + 2αφ^{p+1} + βφ^{2p}` at every node (right slope at 0).
pub fn first_integral_residual(profile: &Profile, grid: &Grid) -> NodeResidual {
    let p = profile.params.p;
    let x: Vec<f64> = grid.nodes().collect();
    let r = x
        .iter()
        .map(|&xj| {
            let phi = profile.eval(xj);
            let d = profile.derivative(xj, Side::Right);
            d * d
                + profile.omega * phi * phi
                + 2.0 * profile.alpha * pow_real(phi, p + 1.0)
                + profile.beta * pow_real(phi, 2.0 * p)
        })
        .collect();
    NodeResidual { x, r }
}

/// Sum of the magnitudes of the first-integral terms at the peak.
pub fn first_integral_scale(profile: &Profile) -> f64 {
    let p = profile.params.p;
    let c = profile.peak;
    let slope = 0.5 * profile.params.z * c;
    slope * slope
        + profile.omega.abs() * c * c
        + 2.0 * profile.alpha.abs() * pow_real(c, p + 1.0)
        + profile.beta.abs() * pow_real(c, 2.0 * p)
}

/// `F(c) = ωc²/2 + λ₁c^{p+1}/(p+1) + λ₂c^{2p}/(2p)`, the antiderivative of
/// the stationary nonlinearity.
pub fn peak_antiderivative(params: &ModelParams, omega: f64, c: f64) -> f64 {
    let p = params.p;
    0.5 * omega * c * c
        + params.lambda1 / (p + 1.0) * pow_real(c, p + 1.0)
        + params.lambda2 / (2.0 * p) * pow_real(c, 2.0 * p)
}

/// `P(c) = ½(Z²/4 + ω)c² + λ₁c^{p+1}/(p+1) + λ₂c^{2p}/(2p)`.
pub fn peak_polynomial(params: &ModelParams, omega: f64, c: f64) -> f64 {
    0.5 * params.bound_state_depth() * c * c + peak_antiderivative(params, omega, c)
}

/// `P'(c) = c(κ + λ₁c^{p-1} + λ₂c^{2p-2})` with `κ = Z²/4 + ω`.
pub fn peak_polynomial_derivative(params: &ModelParams, omega: f64, c: f64) -> f64 {
    let m = pow_real(c, params.p - 1.0);
    c * (params.bound_state_depth() + omega + params.lambda1 * m + params.lambda2 * m * m)
}

/// The unique positive root `c₀` of `P`, which equals the peak `φ(0)`.
///
/// `P` increases up to its only critical point `a` and then decreases to
/// `-∞`, so `c₀` is bracketed by `[a, a·2^k]`.
pub fn find_c0(params: &ModelParams, omega: f64) -> Result<f64> {
    let verdict = classify_regime(params, omega)?;
    if !verdict.tag.has_profile() {
        return Err(Error::regime(format!("{}: {}", verdict.tag, verdict.detail)));
    }
    let kappa = params.bound_state_depth() + omega;
    let (l1, l2) = (params.lambda1, params.lambda2);
    let r0 = 2.0 * kappa / (-l1 + (l1 * l1 - 4.0 * l2 * kappa).sqrt());
    let a = r0.powf(1.0 / (params.p - 1.0));
    let poly = |c: f64| peak_polynomial(params, omega, c);
    let mut hi = 2.0 * a;
    let mut doublings = 0;
    while poly(hi) >= 0.0 {
        hi *= 2.0;
        doublings += 1;
        if doublings > 200 {
            return Err(Error::numerical("peak polynomial does not change sign"));
        }
    }
    bisect_newton(poly, |c| peak_polynomial_derivative(params, omega, c), a, hi, 0.0)
}

/// Samples of the half-line solution produced by [`shoot_ivp`].
#[derive(Debug, Clone, PartialEq)]
pub struct HalfProfile {
    pub x: Vec<f64>,
    pub psi: Vec<f64>,
    pub dpsi: Vec<f64>,
}

impl HalfProfile {
    /// Largest `|ψ(x) - f(x)|` over the samples with `x ≤ x_max`.
    pub fn sup_distance(&self, f: impl Fn(f64) -> f64, x_max: f64) -> f64 {
        self.x.iter().zip(&self.psi).filter(|(x, _)| **x <= x_max).map(|(x, v)| (v - f(*x)).abs()).fold(0.0, f64::max)
    }
}

/// Integrates `ψ'' = -ωψ - λ₁ψ^p - λ₂ψ^{2p-1}` outward from
/// `ψ(0) = c₀, ψ'(0) = -Zc₀/2` with RK4.
///
/// The decaying solution sits on the stable manifold of the origin, so
/// rounding errors grow like `e^{√(-ω) x}`; the run is aborted once the
/// trajectory leaves `(0, 2c₀)`.
pub fn shoot_ivp(params: &ModelParams, omega: f64, x_max: f64, h_ode: f64) -> Result<HalfProfile> {
    if !(x_max > 0.0 && h_ode > 0.0 && h_ode <= x_max) {
        return Err(Error::domain(format!("need 0 < h_ode <= x_max (h_ode = {h_ode}, x_max = {x_max})")));
    }
    let c0 = find_c0(params, omega)?;
    let steps = (x_max / h_ode).round() as usize;
    let h = x_max / steps as f64;
    let p = params.p;
    let field = |y: [f64; 2]| {
        let v = y[0];
        let m = pow_real(v.abs(), p - 1.0);
        [y[1], -omega * v - (params.lambda1 * m + params.lambda2 * m * m) * v]
    };
    let mut out = HalfProfile {
        x: Vec::with_capacity(steps + 1),
        psi: Vec::with_capacity(steps + 1),
        dpsi: Vec::with_capacity(steps + 1),
    };
    let mut y = [c0, -0.5 * params.z * c0];
    out.x.push(0.0);
    out.psi.push(y[0]);
    out.dpsi.push(y[1]);
    for k in 1..=steps {
        y = rk4_step(&field, y, h);
        if !(y[0] > 0.0 && y[0] < 2.0 * c0) {
            return Err(Error::numerical(format!("shooting left (0, 2c0) at x = {}: psi = {}", k as f64 * h, y[0])));
        }
        out.x.push(k as f64 * h);
        out.psi.push(y[0]);
        out.dpsi.push(y[1]);
    }
    Ok(out)
}
