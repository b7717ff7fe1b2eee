//! Closed-form standing-wave (`ω < 0`) and equilibrium (`ω = 0`) profiles.
//!
//! Both profiles are obtained by shifting a half-line solution of the
//! stationary equation without point interaction, `φ(-|x| - d)`, with the
//! shift `d` fixed by the jump condition `φ'(0+) - φ'(0-) = -Zφ(0)`. The
//! jump condition reduces to `R₁(d) = Z/(2√-ω)` for standing waves and to
//! `R₂(d) = Z/4` for equilibria; both maps are decreasing diffeomorphisms
//! and are inverted numerically.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{ComplexField, Grid};
use crate::model::{classify_regime, ModelParams, RegimeTag};
use crate::roots::bisect_newton;
use crate::stationary::find_c0;
use crate::Complex64;

/// Above this argument hyperbolic functions are evaluated in log form.
const LOG_FORM_THRESHOLD: f64 = 30.0;
const PEAK_CONSISTENCY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ProfileKind {
    StandingWave,
    Equilibrium,
}

/// Selects the one-sided limit of the derivative at the kink `x = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// `(α, β) = (λ₁/(p+1), λ₂/p)`.
pub fn alpha_beta(params: &ModelParams) -> (f64, f64) {
    (params.lambda1 / (params.p + 1.0), params.lambda2 / params.p)
}

/// `√(ωβ - α²)`, the coefficient of the hyperbolic sine in `φ_ω`.
fn sinh_coefficient(params: &ModelParams, omega: f64) -> Result<f64> {
    let (alpha, beta) = alpha_beta(params);
    let disc = omega * beta - alpha * alpha;
    if !(omega < 0.0) || !(disc > 0.0) {
        return Err(Error::regime(format!(
            "standing-wave formula needs omega < 0 and omega*beta - alpha^2 > 0 (omega = {omega}, value = {disc})"
        )));
    }
    Ok(disc.sqrt())
}

/// Blow-up point `l_ω ≤ 0` of the unshifted half-line profile.
pub fn l_omega(params: &ModelParams, omega: f64) -> Result<f64> {
    params.validate()?;
    let root = sinh_coefficient(params, omega)?;
    let (alpha, _) = alpha_beta(params);
    Ok((alpha / root).asinh() / ((params.p - 1.0) * (-omega).sqrt()))
}

/// `S cosh a / (S sinh a + α)` written with `e^{-a}` so it stays finite for
/// large `a > 0`.
#[inline]
fn cosh_over_sinh_shifted(root: f64, alpha: f64, a: f64) -> f64 {
    let e1 = (-a).exp();
    let e2 = e1 * e1;
    root * (1.0 + e2) / (-root * (-2.0 * a).exp_m1() + 2.0 * alpha * e1)
}

/// The shift map `R₁(d)` on `(-l_ω, ∞)`; decreasing onto `(1, ∞)`.
pub fn r1_eval(params: &ModelParams, omega: f64, d: f64) -> Result<f64> {
    let l = l_omega(params, omega)?;
    if !(d > -l) {
        return Err(Error::domain(format!("R1 is defined for d > -l_omega = {}, got {d}", -l)));
    }
    let root = sinh_coefficient(params, omega)?;
    let (alpha, _) = alpha_beta(params);
    let a = (params.p - 1.0) * (-omega).sqrt() * d;
    let value = cosh_over_sinh_shifted(root, alpha, a);
    if !(value.is_finite() && value > 0.0) {
        return Err(Error::domain(format!("R1 denominator vanishes at d = {d}")));
    }
    Ok(value)
}

fn r1_slope(root: f64, alpha: f64, rate: f64, d: f64) -> f64 {
    let a = rate * d;
    let e1 = (-a).exp();
    let num = alpha * (-(-2.0 * a).exp_m1()) - 2.0 * root * e1;
    let den = -root * (-2.0 * a).exp_m1() + 2.0 * alpha * e1;
    rate * root * 2.0 * e1 * num / (den * den)
}

/// Inverts `R₁`: the unique `d > -l_ω` with `R₁(d) = y`, for `y > 1`.
pub fn r1_inverse(params: &ModelParams, omega: f64, y: f64) -> Result<f64> {
    if !(y > 1.0) || !y.is_finite() {
        return Err(Error::domain(format!("R1 maps onto (1, inf); cannot invert y = {y}")));
    }
    let l = l_omega(params, omega)?;
    let root = sinh_coefficient(params, omega)?;
    let (alpha, _) = alpha_beta(params);
    let rate = (params.p - 1.0) * (-omega).sqrt();
    let eval = |d: f64| cosh_over_sinh_shifted(root, alpha, rate * d);

    let scale = l.abs().max(1.0);
    let mut eps = 1e-9 * scale;
    let mut left = -l + eps;
    let mut tries = 0;
    while !(eval(left) > y) {
        eps *= 1e-3;
        left = -l + eps;
        tries += 1;
        if tries > 6 || left <= -l {
            return Err(Error::numerical(format!("cannot bracket R1^-1({y}) from the left")));
        }
    }
    let mut width = scale;
    let mut right = left + width;
    while eval(right) >= y {
        width *= 2.0;
        right = left + width;
        if !right.is_finite() || width > 1e12 {
            return Err(Error::numerical(format!("cannot bracket R1^-1({y}) from the right")));
        }
    }
    let d = bisect_newton(|d| eval(d) - y, |d| r1_slope(root, alpha, rate, d), left, right, 1e-14 * y)?;
    let residual = (eval(d) - y).abs();
    if residual > 1e-13 * y {
        return Err(Error::numerical(format!("R1 inversion residual {residual:e} at y = {y}")));
    }
    Ok(d)
}

/// Blow-up point `l₀ < 0` of the unshifted rational profile.
pub fn l0(params: &ModelParams) -> Result<f64> {
    params.validate()?;
    let ModelParams { p, lambda1, lambda2, .. } = *params;
    if !(lambda1 < 0.0 && lambda2 < 0.0) {
        return Err(Error::regime(format!(
            "rational profile needs lambda1 < 0 and lambda2 < 0 (got {lambda1}, {lambda2})"
        )));
    }
    Ok(lambda2.abs().sqrt() * (p + 1.0) / (p.sqrt() * (p - 1.0) * lambda1))
}

/// The shift map `R₂(d) = d / ((p-1)(d² - l₀²))` on `(-l₀, ∞)`.
pub fn r2_eval(params: &ModelParams, d: f64) -> Result<f64> {
    let l = l0(params)?;
    if !(d > -l) {
        return Err(Error::domain(format!("R2 is defined for d > -l0 = {}, got {d}", -l)));
    }
    Ok(r2_unchecked(params.p, l, d))
}

#[inline]
fn r2_unchecked(p: f64, l: f64, d: f64) -> f64 {
    d / ((p - 1.0) * (d - l.abs()) * (d + l.abs()))
}

/// Inverts `R₂`: the unique `d > -l₀` with `R₂(d) = y`, for `y > 0`.
pub fn r2_inverse(params: &ModelParams, y: f64) -> Result<f64> {
    if !(y > 0.0) || !y.is_finite() {
        return Err(Error::domain(format!("R2 maps onto (0, inf); cannot invert y = {y}")));
    }
    let l = l0(params)?;
    let p = params.p;
    let scale = l.abs();
    let eval = |d: f64| r2_unchecked(p, l, d);
    let slope = |d: f64| {
        let q = (d - scale) * (d + scale);
        -(d * d + scale * scale) / ((p - 1.0) * q * q)
    };
    let mut eps = 1e-9 * scale.max(1.0);
    let mut left = scale + eps;
    let mut tries = 0;
    while !(eval(left) > y) {
        eps *= 1e-3;
        left = scale + eps;
        tries += 1;
        if tries > 6 || left <= scale {
            return Err(Error::numerical(format!("cannot bracket R2^-1({y}) from the left")));
        }
    }
    let mut width = scale.max(1.0);
    let mut right = left + width;
    while eval(right) >= y {
        width *= 2.0;
        right = left + width;
        if !right.is_finite() || width > 1e15 {
            return Err(Error::numerical(format!("cannot bracket R2^-1({y}) from the right")));
        }
    }
    let d = bisect_newton(|d| eval(d) - y, slope, left, right, 1e-14 * y)?;
    let residual = (eval(d) - y).abs();
    if residual > 1e-13 * y {
        return Err(Error::numerical(format!("R2 inversion residual {residual:e} at y = {y}")));
    }
    Ok(d)
}

/// Explicit standing waves of `iu_t + u_xx + Zδu - |u|^{r-1}u = 0`.
///
/// This is the `λ₁ = 0, λ₂ = -1, p = (r+1)/2` member of the family and is
/// used as an independent check on [`Profile`].
pub fn kaminaga_ohta_profile(r: f64, omega: f64, z: f64, x: f64) -> Result<f64> {
    if !(r > 1.0) {
        return Err(Error::domain(format!("exponent r must exceed 1, got {r}")));
    }
    if !(z > 0.0 && omega < 0.0 && -omega < 0.25 * z * z) {
        return Err(Error::regime(format!("need Z > 0 and 0 < -omega < Z^2/4 (Z = {z}, omega = {omega})")));
    }
    let k = (-omega).sqrt();
    let amplitude = (-omega * (r + 1.0) / 2.0).powf(1.0 / (r - 1.0));
    let arg = 0.5 * (r - 1.0) * k * x.abs() + (2.0 * k / z).atanh();
    let ln_sinh = if arg > LOG_FORM_THRESHOLD {
        arg - std::f64::consts::LN_2 + (-(-2.0 * arg).exp()).ln_1p()
    } else {
        arg.sinh().ln()
    };
    Ok(amplitude * (-2.0 / (r - 1.0) * ln_sinh).exp())
}

/// A closed-form stationary profile, `φ_ω` or `φ₀`.
///
/// Immutable once built; evaluation is pure.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Profile {
    pub params: ModelParams,
    pub omega: f64,
    pub alpha: f64,
    pub beta: f64,
    /// Shift `d` solving the jump condition.
    pub shift_d: f64,
    pub kind: ProfileKind,
    /// Blow-up point `l_ω` or `l₀` of the unshifted profile.
    pub blowup: f64,
    /// Peak value `φ(0)`.
    pub peak: f64,
    /// `√(ωβ - α²)` for standing waves, 0 for equilibria.
    sinh_coef: f64,
    /// `(p-1)√(-ω)` for standing waves, 0 for equilibria.
    rate: f64,
}

impl Profile {
    /// Builds whichever profile the regime admits.
    pub fn new(params: &ModelParams, omega: f64) -> Result<Self> {
        let verdict = classify_regime(params, omega)?;
        match verdict.tag {
            RegimeTag::StandingWaveExists => Self::standing_wave(params, omega),
            RegimeTag::EquilibriumExists => Self::equilibrium(params),
            tag => Err(Error::regime(format!("{tag}: {}", verdict.detail))),
        }
    }

    /// The standing-wave profile `φ_ω`.
    pub fn standing_wave(params: &ModelParams, omega: f64) -> Result<Self> {
        let verdict = classify_regime(params, omega)?;
        if verdict.tag != RegimeTag::StandingWaveExists {
            return Err(Error::regime(format!("{}: {}", verdict.tag, verdict.detail)));
        }
        let (alpha, beta) = alpha_beta(params);
        let sinh_coef = sinh_coefficient(params, omega)?;
        let blowup = l_omega(params, omega)?;
        let shift_d = r1_inverse(params, omega, params.z / (2.0 * (-omega).sqrt()))?;
        let mut profile = Profile {
            params: *params,
            omega,
            alpha,
            beta,
            shift_d,
            kind: ProfileKind::StandingWave,
            blowup,
            peak: f64::NAN,
            sinh_coef,
            rate: (params.p - 1.0) * (-omega).sqrt(),
        };
        profile.peak = profile.eval(0.0);
        profile.check_peak()?;
        Ok(profile)
    }

    /// The rational equilibrium profile `φ₀`.
    pub fn equilibrium(params: &ModelParams) -> Result<Self> {
        let verdict = classify_regime(params, 0.0)?;
        if verdict.tag != RegimeTag::EquilibriumExists {
            return Err(Error::regime(format!("{}: {}", verdict.tag, verdict.detail)));
        }
        let (alpha, beta) = alpha_beta(params);
        let blowup = l0(params)?;
        let shift_d = r2_inverse(params, params.z / 4.0)?;
        let mut profile = Profile {
            params: *params,
            omega: 0.0,
            alpha,
            beta,
            shift_d,
            kind: ProfileKind::Equilibrium,
            blowup,
            peak: f64::NAN,
            sinh_coef: 0.0,
            rate: 0.0,
        };
        profile.peak = profile.eval(0.0);
        profile.check_peak()?;
        Ok(profile)
    }

    /// The peak value must coincide with the positive root of the peak
    /// polynomial; a mismatch means a sign or branch error in the closed form.
    fn check_peak(&self) -> Result<()> {
        let c0 = find_c0(&self.params, self.omega)?;
        if !((self.peak - c0).abs() <= PEAK_CONSISTENCY_TOL * c0.max(1.0)) {
            return Err(Error::numerical(format!(
                "profile peak {} disagrees with peak-polynomial root {c0}",
                self.peak
            )));
        }
        Ok(())
    }

    /// `φ(x)`; positive and even.
    pub fn eval(&self, x: f64) -> f64 {
        let s = x.abs() + self.shift_d;
        let inv = 1.0 / (self.params.p - 1.0);
        match self.kind {
            ProfileKind::StandingWave => {
                let a = self.rate * s;
                let ln_bracket = if a > LOG_FORM_THRESHOLD {
                    let e1 = (-a).exp();
                    a + (0.5 * self.sinh_coef).ln() + (2.0 * self.alpha * e1 / self.sinh_coef - e1 * e1).ln_1p()
                } else {
                    (self.alpha + self.sinh_coef * a.sinh()).ln()
                };
                (-(ln_bracket - (-self.omega).ln()) * inv).exp()
            }
            ProfileKind::Equilibrium => {
                let ModelParams { p, lambda1, .. } = self.params;
                let l = self.blowup.abs();
                let num = -2.0 * p * (p + 1.0) * lambda1;
                let den = p * (p - 1.0) * (p - 1.0) * lambda1 * lambda1 * (s - l) * (s + l);
                (num / den).powf(inv)
            }
        }
    }

    /// `φ'(x)`. At `x = 0` the one-sided limit selected by `side` is returned;
    /// elsewhere `side` is ignored.
    pub fn derivative(&self, x: f64, side: Side) -> f64 {
        let sign = if x > 0.0 || (x == 0.0 && side == Side::Right) { 1.0 } else { -1.0 };
        -sign * self.log_slope(x.abs()) * self.eval(x)
    }

    /// `-φ'(|x|)/φ(|x|)` for the right branch.
    fn log_slope(&self, xa: f64) -> f64 {
        let s = xa + self.shift_d;
        match self.kind {
            ProfileKind::StandingWave => {
                (-self.omega).sqrt() * cosh_over_sinh_shifted(self.sinh_coef, self.alpha, self.rate * s)
            }
            ProfileKind::Equilibrium => 2.0 * r2_unchecked(self.params.p, self.blowup, s),
        }
    }

    /// The distance `|x| ≥ 0` at which `φ(|x|) = amplitude`, or `None` if the
    /// amplitude is not attained (`amplitude ≤ 0` or above the peak).
    pub fn position_of(&self, amplitude: f64) -> Option<f64> {
        if !(amplitude > 0.0) || amplitude > self.peak {
            return None;
        }
        let p = self.params.p;
        let s = match self.kind {
            ProfileKind::StandingWave => {
                let ln_amp = amplitude.ln();
                let target = (-self.omega) * (-(p - 1.0) * ln_amp).exp();
                ((target - self.alpha) / self.sinh_coef).asinh() / self.rate
            }
            ProfileKind::Equilibrium => {
                let lambda1 = self.params.lambda1;
                let num = -2.0 * p * (p + 1.0) * lambda1;
                let l = self.blowup;
                (l * l + num / (amplitude.powf(p - 1.0) * p * (p - 1.0) * (p - 1.0) * lambda1 * lambda1)).sqrt()
            }
        };
        Some((s - self.shift_d).max(0.0))
    }

    pub fn sample_real(&self, grid: &Grid) -> Vec<f64> {
        grid.nodes().map(|x| self.eval(x)).collect()
    }

    pub fn sample(&self, grid: &Grid) -> ComplexField {
        ComplexField::new(*grid, grid.nodes().map(|x| Complex64::new(self.eval(x), 0.0)).collect())
            .expect("sample length matches grid")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn figure_params() -> ModelParams {
        ModelParams::new(3.0, -1.0, -1.0, 2.0).unwrap()
    }

    fn no_cubic() -> ModelParams {
        ModelParams::new(3.0, 0.0, -1.0, 2.0).unwrap()
    }

    #[test]
    fn alpha_beta_examples() {
        let (a, b) = alpha_beta(&figure_params());
        assert_eq!((a, b), (-0.25, -1.0 / 3.0));
        let (a, b) = alpha_beta(&no_cubic());
        assert_eq!((a, b), (0.0, -1.0 / 3.0));
        let (a, b) = alpha_beta(&ModelParams::new(2.0, -3.0, -2.0, 1.0).unwrap());
        assert_eq!((a, b), (-1.0, -1.0));
    }

    #[test]
    fn l_omega_examples() {
        assert_eq!(l_omega(&no_cubic(), -0.25).unwrap(), 0.0);
        let l = l_omega(&figure_params(), -0.25).unwrap();
        assert!((l - (-3f64.sqrt()).asinh()).abs() < 1e-14);
        assert!((l + 1.316_957_896_924_816_6).abs() < 1e-12);
        let l_deeper = l_omega(&figure_params(), -0.5).unwrap();
        assert!(l_deeper < 0.0 && l_deeper > l);
        assert!(l_omega(&figure_params(), -0.1).is_err());
    }

    #[test]
    fn r1_reduces_to_coth_without_cubic_term() {
        let v = r1_eval(&no_cubic(), -0.25, 1.0).unwrap();
        assert!((v - 1.0 / 1f64.tanh()).abs() < 1e-14);
        let far = r1_eval(&no_cubic(), -0.25, 40.0).unwrap();
        assert!(far >= 1.0 && far - 1.0 < 1e-15);
        assert!(r1_eval(&no_cubic(), -0.25, 0.0).is_err());
    }

    #[test]
    fn r1_inverse_examples() {
        let d = r1_inverse(&no_cubic(), -0.25, 2.0).unwrap();
        assert!((d - 0.5f64.atanh()).abs() < 1e-13);
        let far = r1_inverse(&no_cubic(), -0.25, 1.0 + 1e-6).unwrap();
        assert!(far > 10.0 / 1.0 * 0.5, "d = {far}");
        for y in [1.5, 3.0, 10.0, 4.0] {
            let d = r1_inverse(&figure_params(), -0.25, y).unwrap();
            let back = r1_eval(&figure_params(), -0.25, d).unwrap();
            assert!((back - y).abs() <= 1e-12 * y, "y = {y}, back = {back}");
        }
        assert!(r1_inverse(&figure_params(), -0.25, 1.0).is_err());
    }

    #[test]
    fn r1_is_decreasing_and_above_one() {
        let p = figure_params();
        let l = l_omega(&p, -0.25).unwrap();
        let mut prev = f64::INFINITY;
        for i in 1..400 {
            let d = -l + 0.05 * i as f64;
            let v = r1_eval(&p, -0.25, d).unwrap();
            assert!(v > 1.0 && v < prev);
            prev = v;
        }
    }

    #[test]
    fn equilibrium_shift_examples() {
        let p = ModelParams::new(3.0, -1.0, -1.0, 1.25).unwrap();
        let l = l0(&p).unwrap();
        assert!((l + 2.0 / 3f64.sqrt()).abs() < 1e-15);
        for z in [0.5, 1.25, 4.0] {
            let d = r2_inverse(&p, z / 4.0).unwrap();
            let back = r2_eval(&p, d).unwrap();
            assert!((back - z / 4.0).abs() <= 1e-12 * z / 4.0);
            // quadratic-formula root of y(p-1)d² - d - y(p-1)l₀² = 0
            let y = z / 4.0;
            let q = y * 2.0;
            let closed = (1.0 + (1.0 + 4.0 * q * q * l * l).sqrt()) / (2.0 * q);
            assert!((d - closed).abs() < 1e-12 * closed);
        }
    }

    #[test]
    fn standing_wave_peak_without_cubic_term() {
        let prof = Profile::standing_wave(&no_cubic(), -0.25).unwrap();
        assert!((prof.eval(0.0) - 2.25f64.powf(0.25)).abs() < 1e-13);
        let ko = kaminaga_ohta_profile(5.0, -0.25, 2.0, 0.0).unwrap();
        assert!((ko - 2.25f64.powf(0.25)).abs() < 1e-13);
    }

    #[test]
    fn profile_is_even_and_decreasing() {
        let prof = Profile::standing_wave(&figure_params(), -0.25).unwrap();
        for x in [0.3, 1.7, 9.0] {
            assert_eq!(prof.eval(x), prof.eval(-x));
            assert!(prof.derivative(x, Side::Right) < 0.0);
        }
        for x in [0.1, 1.0, 5.0] {
            assert!(prof.derivative(x, Side::Right) < 0.0);
        }
    }

    #[test]
    fn one_sided_slopes_at_the_kink() {
        let prof = Profile::standing_wave(&figure_params(), -0.25).unwrap();
        let right = prof.derivative(0.0, Side::Right);
        let left = prof.derivative(0.0, Side::Left);
        assert!((right + prof.params.z / 2.0 * prof.peak).abs() < 1e-12);
        assert!((left - prof.params.z / 2.0 * prof.peak).abs() < 1e-12);
    }

    #[test]
    fn derivative_matches_central_difference() {
        let prof = Profile::standing_wave(&figure_params(), -0.25).unwrap();
        let h = 1e-5;
        let fd = (prof.eval(0.7 + h) - prof.eval(0.7 - h)) / (2.0 * h);
        assert!((prof.derivative(0.7, Side::Right) - fd).abs() < 1e-7);

        let eq = Profile::equilibrium(&ModelParams::new(3.0, -1.0, -1.0, 1.25).unwrap()).unwrap();
        let fd = (eq.eval(2.3 + h) - eq.eval(2.3 - h)) / (2.0 * h);
        assert!((eq.derivative(2.3, Side::Right) - fd).abs() < 1e-7);
    }

    #[test]
    fn equilibrium_decays_algebraically() {
        let eq = Profile::equilibrium(&ModelParams::new(3.0, -1.0, -1.0, 1.25).unwrap()).unwrap();
        let ratio = eq.eval(100.0) / eq.eval(50.0);
        assert!((ratio / 0.5 - 1.0).abs() < 0.05, "ratio {ratio}");
        // φ₀(x) x^{2/(p-1)} → [-2p(p+1)λ₁ / (p(p-1)²λ₁²)]^{1/(p-1)}
        let limit: f64 = (24.0f64 / 12.0).sqrt();
        assert!((eq.eval(1e3) * 1e3 / limit - 1.0).abs() < 0.01);
    }

    #[test]
    fn deep_tail_does_not_overflow() {
        let prof = Profile::standing_wave(&figure_params(), -0.25).unwrap();
        let far = prof.eval(2000.0);
        assert!(far > 0.0 && far < 1e-300 || far == 0.0);
        let d = prof.derivative(500.0, Side::Right);
        assert!(d.is_finite() && d <= 0.0);
    }

    #[test]
    fn position_inverts_the_profile() {
        let prof = Profile::standing_wave(&figure_params(), -0.25).unwrap();
        for x in [0.0, 0.4, 3.0, 12.0] {
            let back = prof.position_of(prof.eval(x)).unwrap();
            assert!((back - x).abs() < 1e-9, "x = {x}, back = {back}");
        }
        let eq = Profile::equilibrium(&ModelParams::new(3.0, -1.0, -1.0, 1.25).unwrap()).unwrap();
        for x in [0.2, 5.0, 80.0] {
            let back = eq.position_of(eq.eval(x)).unwrap();
            assert!((back - x).abs() < 1e-8 * x.max(1.0));
        }
        assert!(prof.position_of(2.0 * prof.peak).is_none());
    }

    #[test]
    fn wrong_regime_is_rejected() {
        assert!(matches!(Profile::new(&figure_params(), -2.0), Err(Error::Regime(_))));
        assert!(matches!(
            Profile::equilibrium(&ModelParams::new(6.0, -1.0, -1.0, 1.0).unwrap()),
            Err(Error::Regime(_))
        ));
    }
}
