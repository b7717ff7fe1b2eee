//! Equation coefficients and the existence/nonexistence classifier.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Static coefficients `(p, λ₁, λ₂, Z)` of the equation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    /// Nonlinearity exponent, `p > 1`.
    pub p: f64,
    /// Coefficient of `u|u|^{p-1}`.
    pub lambda1: f64,
    /// Coefficient of `u|u|^{2p-2}`.
    pub lambda2: f64,
    /// Strength of the point interaction.
    #[serde(rename = "Z")]
    pub z: f64,
}

impl ModelParams {
    pub fn new(p: f64, lambda1: f64, lambda2: f64, z: f64) -> Result<Self> {
        let params = ModelParams { p, lambda1, lambda2, z };
        params.validate()?;
        Ok(params)
    }

    /// Checks `p > 1` and that every coefficient is finite.
    pub fn validate(&self) -> Result<()> {
        if !(self.p.is_finite() && self.lambda1.is_finite() && self.lambda2.is_finite() && self.z.is_finite()) {
            return Err(Error::domain(format!("non-finite coefficient in {self}")));
        }
        if self.p <= 1.0 {
            return Err(Error::domain(format!("exponent p must exceed 1, got {}", self.p)));
        }
        Ok(())
    }

    /// Lower end of the admissible `-ω` range, `-pλ₁²/((p+1)²λ₂)`.
    ///
    /// Only meaningful for `λ₂ < 0`.
    pub fn frequency_threshold(&self) -> f64 {
        let p = self.p;
        -p * self.lambda1 * self.lambda1 / ((p + 1.0) * (p + 1.0) * self.lambda2)
    }

    /// `Z²/4`, the depth of the bound state of the point interaction.
    pub fn bound_state_depth(&self) -> f64 {
        0.25 * self.z * self.z
    }

    /// The local nonlinearity `λ₁|u|^{p-1} + λ₂|u|^{2p-2}` as a function of `|u|²`.
    #[inline]
    pub fn nonlinearity(&self, modulus_sq: f64) -> f64 {
        if modulus_sq <= 0.0 {
            return 0.0;
        }
        let half = 0.5 * (self.p - 1.0);
        let m = pow_real(modulus_sq, half);
        self.lambda1 * m + self.lambda2 * m * m
    }
}

impl fmt::Display for ModelParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p={}, lambda1={}, lambda2={}, Z={}", self.p, self.lambda1, self.lambda2, self.z)
    }
}

/// `x^e` for `x ≥ 0`, using `powi` when the exponent is integral.
#[inline]
pub(crate) fn pow_real(x: f64, e: f64) -> f64 {
    if e == e.trunc() && e.abs() < 64.0 {
        x.powi(e as i32)
    } else {
        x.powf(e)
    }
}

/// Outcome of [`classify_regime`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RegimeTag {
    StandingWaveExists,
    EquilibriumExists,
    EmptyOmegaPlusZSquaredOver4Nonpositive,
    EmptyOmegaPositive,
    EmptyZNonpositive,
    EmptyOmegaBelowThreshold,
    EmptyNotSquareIntegrable,
}

impl RegimeTag {
    pub fn has_profile(self) -> bool {
        matches!(self, RegimeTag::StandingWaveExists | RegimeTag::EquilibriumExists)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            RegimeTag::StandingWaveExists => "StandingWaveExists",
            RegimeTag::EquilibriumExists => "EquilibriumExists",
            RegimeTag::EmptyOmegaPlusZSquaredOver4Nonpositive => "EmptyOmegaPlusZSquaredOver4Nonpositive",
            RegimeTag::EmptyOmegaPositive => "EmptyOmegaPositive",
            RegimeTag::EmptyZNonpositive => "EmptyZNonpositive",
            RegimeTag::EmptyOmegaBelowThreshold => "EmptyOmegaBelowThreshold",
            RegimeTag::EmptyNotSquareIntegrable => "EmptyNotSquareIntegrable",
        }
    }
}

impl fmt::Display for RegimeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegimeVerdict {
    pub tag: RegimeTag,
    pub detail: String,
}

impl RegimeVerdict {
    fn new(tag: RegimeTag, detail: String) -> Self {
        RegimeVerdict { tag, detail }
    }
}

/// Decides whether a standing wave (`ω < 0`) or an equilibrium (`ω = 0`)
/// exists for the given coefficients, or which nonexistence condition rules
/// it out.
///
/// Nonexistence conditions are tested in a fixed order: `ω > 0`, then
/// `Z ≤ 0`, then `ω + Z²/4 ≤ 0`, then `p ≥ 5` at `ω = 0`; anything else that
/// fails is reported as `EmptyOmegaBelowThreshold`. All inequalities are
/// strict, so the endpoints of the admissible interval have no profile.
pub fn classify_regime(params: &ModelParams, omega: f64) -> Result<RegimeVerdict> {
    params.validate()?;
    if !omega.is_finite() {
        return Err(Error::domain(format!("frequency must be finite, got {omega}")));
    }
    let ModelParams { p, lambda1, lambda2, z } = *params;

    if omega > 0.0 {
        return Ok(RegimeVerdict::new(
            RegimeTag::EmptyOmegaPositive,
            format!("omega = {omega} > 0: a decaying profile would need |phi'|^2 < 0 far out"),
        ));
    }
    if z <= 0.0 {
        return Ok(RegimeVerdict::new(
            RegimeTag::EmptyZNonpositive,
            format!("Z = {z} <= 0: a repulsive or absent point interaction cannot trap a defocusing wave"),
        ));
    }
    let gap = omega + params.bound_state_depth();
    if gap <= 0.0 {
        return Ok(RegimeVerdict::new(
            RegimeTag::EmptyOmegaPlusZSquaredOver4Nonpositive,
            format!("omega + Z^2/4 = {gap} <= 0: omega lies at or below the bound state -Z^2/4"),
        ));
    }
    if omega == 0.0 {
        if p >= 5.0 {
            return Ok(RegimeVerdict::new(
                RegimeTag::EmptyNotSquareIntegrable,
                format!(
                    "p = {p} >= 5: the rational equilibrium decays like |x|^(-2/(p-1)) and is not square integrable"
                ),
            ));
        }
        if lambda1 < 0.0 && lambda2 < 0.0 {
            return Ok(RegimeVerdict::new(
                RegimeTag::EquilibriumExists,
                format!("omega = 0, Z = {z} > 0, lambda1 = {lambda1} < 0, lambda2 = {lambda2} < 0, 1 < p = {p} < 5"),
            ));
        }
        return Ok(RegimeVerdict::new(
            RegimeTag::EmptyOmegaBelowThreshold,
            format!("omega = 0 needs lambda1 < 0 and lambda2 < 0 (got lambda1 = {lambda1}, lambda2 = {lambda2})"),
        ));
    }

    if lambda1 > 0.0 || lambda2 >= 0.0 {
        return Ok(RegimeVerdict::new(
            RegimeTag::EmptyOmegaBelowThreshold,
            format!(
                "no explicit profile outside lambda1 <= 0, lambda2 < 0 (got lambda1 = {lambda1}, lambda2 = {lambda2})"
            ),
        ));
    }
    let threshold = params.frequency_threshold();
    if -omega > threshold {
        Ok(RegimeVerdict::new(
            RegimeTag::StandingWaveExists,
            format!("{threshold} < -omega = {} < Z^2/4 = {}", -omega, params.bound_state_depth()),
        ))
    } else {
        Ok(RegimeVerdict::new(
            RegimeTag::EmptyOmegaBelowThreshold,
            format!("-omega = {} <= p*lambda1^2/((p+1)^2*|lambda2|) = {threshold}", -omega),
        ))
    }
}

/// Open interval `(ω_low, ω_high)` of frequencies with a standing wave, or
/// `None` when it is empty.
///
/// Nonempty requires `Z > 0`, `λ₁ ≤ 0`, `λ₂ < 0` and
/// `-pλ₁²/((p+1)²λ₂) < Z²/4`.
pub fn admissible_omega_interval(params: &ModelParams) -> Result<Option<(f64, f64)>> {
    params.validate()?;
    if params.z <= 0.0 || params.lambda1 > 0.0 || params.lambda2 >= 0.0 {
        return Ok(None);
    }
    let low = -params.bound_state_depth();
    let high = -params.frequency_threshold();
    if low < high {
        Ok(Some((low, high)))
    } else {
        Ok(None)
    }
}
