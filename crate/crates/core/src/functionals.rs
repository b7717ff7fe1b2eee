//! Quadrature of the conserved and variational functionals.
//!
//! Integrals use the trapezoid rule on the grid. Gradient terms are sums of
//! squared forward differences over cells, so the kink of a profile at the
//! center node falls on a cell boundary and the two half-lines are integrated
//! separately. The discrete energy below is exactly the quadratic form whose
//! Hessian the evolution and minimization modules use.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{ComplexField, Grid};
use crate::model::{pow_real, ModelParams};
use crate::Complex64;

/// `h Σ w_j |v_j|^q`.
pub fn lp_integral(v: &ComplexField, q: f64) -> f64 {
    let half = 0.5 * q;
    v.grid().integrate(v.values().iter().map(|z| pow_real(z.norm_sqr(), half)))
}

/// Discrete `L^q` norm, `q ≥ 1`.
pub fn lp_norm(v: &ComplexField, q: f64) -> Result<f64> {
    if !(q >= 1.0) {
        return Err(Error::domain(format!("L^q norm needs q >= 1, got {q}")));
    }
    Ok(lp_integral(v, q).powf(1.0 / q))
}

/// `‖v‖²_{L²}`.
pub fn charge(v: &ComplexField) -> f64 {
    lp_integral(v, 2.0)
}

/// Pointwise derivative: centered differences inside, second-order one-sided
/// differences at the two ends. At the center node this is the average of the
/// two one-sided slopes, which is meaningless for a kinked profile; quadratures
/// use [`gradient_sq`] instead.
pub fn h1_deriv(v: &ComplexField) -> ComplexField {
    let h = v.grid().h();
    let u = v.values();
    let n = u.len();
    let mut d = vec![Complex64::new(0.0, 0.0); n];
    for j in 1..n - 1 {
        d[j] = (u[j + 1] - u[j - 1]) / (2.0 * h);
    }
    if n >= 3 {
        d[0] = (-3.0 * u[0] + 4.0 * u[1] - u[2]) / (2.0 * h);
        d[n - 1] = (3.0 * u[n - 1] - 4.0 * u[n - 2] + u[n - 3]) / (2.0 * h);
    }
    ComplexField::new(*v.grid(), d).expect("differences of finite values are finite")
}

/// `Σ_cells h |(v_{j+1} - v_j)/h|²`, the discrete `‖v_x‖²_{L²}`.
pub fn gradient_sq(v: &ComplexField) -> f64 {
    let h = v.grid().h();
    v.values().windows(2).map(|w| (w[1] - w[0]).norm_sqr()).sum::<f64>() / h
}

/// `‖v_x‖² - Z|v(0)|²`.
pub fn delta_form(v: &ComplexField, z: f64) -> f64 {
    gradient_sq(v) - z * v.at_origin().norm_sqr()
}

/// `λ₁|v|^{p+1}/(p+1) + λ₂|v|^{2p}/(2p)` as a function of `m = |v|²`.
#[inline]
fn potential_density(params: &ModelParams, m: f64) -> f64 {
    let p = params.p;
    let low = pow_real(m, 0.5 * (p + 1.0));
    let high = pow_real(m, p);
    params.lambda1 / (p + 1.0) * low + params.lambda2 / (2.0 * p) * high
}

fn potential(v: &ComplexField, params: &ModelParams) -> f64 {
    v.grid().integrate(v.values().iter().map(|z| potential_density(params, z.norm_sqr())))
}

/// `E(v) = ½‖v_x‖² - (Z/2)|v(0)|² - ∫ λ₁|v|^{p+1}/(p+1) + λ₂|v|^{2p}/(2p)`.
pub fn energy(v: &ComplexField, params: &ModelParams) -> f64 {
    0.5 * delta_form(v, params.z) - potential(v, params)
}

/// `G_ω(v) = E(v) - (ω/2)‖v‖²`.
pub fn action_g(v: &ComplexField, params: &ModelParams, omega: f64) -> f64 {
    energy(v, params) - 0.5 * omega * charge(v)
}

/// `R(v) = ½‖v_x‖² - (Z/2)|v(0)|² - (λ₂/(2p))‖v‖^{2p}_{L^{2p}}`.
pub fn functional_r(v: &ComplexField, params: &ModelParams) -> f64 {
    let p = params.p;
    0.5 * delta_form(v, params.z) - params.lambda2 / (2.0 * p) * lp_integral(v, 2.0 * p)
}

/// `R̃(v) = ½‖v_x‖² - (Z/2)|v(0)|² - (λ₁/(p+1))‖v‖^{p+1}_{L^{p+1}}`.
pub fn functional_rtilde(v: &ComplexField, params: &ModelParams) -> f64 {
    let p = params.p;
    0.5 * delta_form(v, params.z) - params.lambda1 / (p + 1.0) * lp_integral(v, p + 1.0)
}

/// `I_ω(v) = ½‖v_x‖² - (ω/2)‖v‖²`.
pub fn functional_i(v: &ComplexField, omega: f64) -> f64 {
    0.5 * gradient_sq(v) - 0.5 * omega * charge(v)
}

/// `‖v‖_X = (‖v‖^{p+1}_{L^{p+1}} + ‖v‖^{2p}_{L^{2p}} + ‖v_x‖²)^{1/2}`.
pub fn x_space_norm(v: &ComplexField, params: &ModelParams) -> f64 {
    let p = params.p;
    (lp_integral(v, p + 1.0) + lp_integral(v, 2.0 * p) + gradient_sq(v)).sqrt()
}

/// Discrete `H¹` pairing `∫ u φ̄ + u_x φ̄_x`.
pub fn h1_pairing(u: &ComplexField, phi: &ComplexField) -> Result<Complex64> {
    u.same_grid(phi)?;
    let grid = u.grid();
    let (a, b) = (u.values(), phi.values());
    let mass: Complex64 = a.iter().zip(b).enumerate().map(|(j, (x, y))| grid.weight(j) * x * y.conj()).sum();
    let grad: Complex64 = a.windows(2).zip(b.windows(2)).map(|(x, y)| (x[1] - x[0]) * (y[1] - y[0]).conj()).sum();
    Ok(mass * grid.h() + grad / grid.h())
}

pub fn h1_norm(v: &ComplexField) -> f64 {
    (charge(v) + gradient_sq(v)).sqrt()
}

/// `inf_θ ‖u - e^{iθ}φ‖_{H¹}` and the minimizing phase `θ* ∈ (-π, π]`.
///
/// The minimizing phase is `arg⟨u, φ⟩_{H¹}`; the distance is then evaluated
/// directly rather than through the expanded quadratic, which would lose all
/// digits for nearby fields.
pub fn orbital_distance(u: &ComplexField, phi: &ComplexField) -> Result<(f64, f64)> {
    let pairing = h1_pairing(u, phi)?;
    let theta = if pairing.norm() > 0.0 { pairing.arg() } else { 0.0 };
    let rotated = Complex64::from_polar(1.0, theta);
    let diff = u.add_scaled(-rotated, phi)?;
    Ok((h1_norm(&diff), theta))
}

/// The normalized bound state `Ψ_Z(x) = √(Z/2) e^{-Z|x|/2}` of the point
/// interaction, with eigenvalue `-Z²/4`.
pub fn delta_eigenfunction(z: f64, grid: &Grid) -> Result<ComplexField> {
    if !(z > 0.0) {
        return Err(Error::domain(format!("bound state needs Z > 0, got {z}")));
    }
    let amp = (0.5 * z).sqrt();
    ComplexField::from_real(*grid, |x| amp * (-0.5 * z * x.abs()).exp())
}

/// Constant `C` with `(Z/2)|v(0)|² ≤ R(v) + C` for every `v ∈ H¹`.
///
/// Built from `Z|v(0)|² ≤ ½‖v_x‖² + (2Z² + Z/2)‖v‖²_{L²(-1,1)}`, Hölder on
/// `(-1, 1)` and Young's inequality against the `L^{2p}` term of `R`.
pub fn coercivity_constant(params: &ModelParams) -> Result<f64> {
    params.validate()?;
    if !(params.lambda2 < 0.0) {
        return Err(Error::regime("coercivity of R needs lambda2 < 0"));
    }
    let q = 2.0 * params.p;
    Ok(young_constant(params.z, q, -params.lambda2 / q))
}

/// Constant `C` with `(Z/2)|v(0)|² ≤ R̃(v) + C` for every `v ∈ X`; same chain
/// as [`coercivity_constant`] against the `L^{p+1}` term.
pub fn coercivity_constant_tilde(params: &ModelParams) -> Result<f64> {
    params.validate()?;
    if !(params.lambda1 < 0.0) {
        return Err(Error::regime("coercivity of R-tilde needs lambda1 < 0"));
    }
    let q = params.p + 1.0;
    Ok(young_constant(params.z, q, -params.lambda1 / q))
}

/// `C₁ K` where `C₁‖v‖²_{L²(-1,1)} ≤ coef·∫|v|^q + C₁K`.
fn young_constant(z: f64, q: f64, coef: f64) -> f64 {
    let z = z.max(0.0);
    let c1 = 2.0 * z * z + 0.5 * z;
    if c1 == 0.0 {
        return 0.0;
    }
    // ‖v‖²_{L²(-1,1)} ≤ c·A^s with A = ∫|v|^q
    let s = 2.0 / q;
    let c = 2f64.powf(1.0 - s);
    let delta = coef / c1;
    let a_star = (c * s / delta).powf(1.0 / (1.0 - s));
    c1 * delta * a_star * (1.0 / s - 1.0)
}

/// Conserved and variational quantities at one time.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    pub t: f64,
    pub charge: f64,
    pub energy: f64,
    pub action: f64,
    /// Distance to the reference orbit, when a reference is tracked.
    pub orbital_dist: Option<f64>,
}

impl Diagnostics {
    pub fn measure(
        t: f64,
        u: &ComplexField,
        params: &ModelParams,
        omega: f64,
        reference: Option<&ComplexField>,
    ) -> Result<Self> {
        let charge = charge(u);
        let energy = energy(u, params);
        let orbital_dist = reference.map(|phi| orbital_distance(u, phi).map(|(d, _)| d)).transpose()?;
        let diag = Diagnostics { t, charge, energy, action: energy - 0.5 * omega * charge, orbital_dist };
        if !(charge.is_finite() && energy.is_finite() && orbital_dist.is_none_or(f64::is_finite)) {
            return Err(Error::numerical(format!("non-finite diagnostics at t = {t}")));
        }
        Ok(diag)
    }
}
