//! Finite-horizon orbital-stability experiments around a profile.
//!
//! Each experiment perturbs the profile, integrates to the horizon and
//! records the largest distance to the phase orbit `{e^{iθ}φ}` seen at the
//! recorded times. "For all times" is approximated by the horizon, which is
//! reported with every result.

use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evolution::{evolve, EvolutionConfig};
use crate::functionals::{h1_norm, orbital_distance};
use crate::grid::{ComplexField, Grid};
use crate::par::prelude::*;
use crate::profiles::Profile;
use crate::Complex64;

/// Support half-width of the bump perturbation.
const BUMP_RADIUS: f64 = 2.0;
/// Correlation length and window width of the noise perturbation.
const NOISE_CORRELATION: f64 = 0.5;
const NOISE_WINDOW: f64 = 4.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PerturbationKind {
    /// `φ + ε w` with `w` an even `C¹` bump of compact support.
    Bump,
    /// `e^{iεx} φ`; breaks evenness.
    PhaseRamp,
    /// `φ + ε w` with `w` smoothed, windowed complex Gaussian noise.
    Noise,
}

impl PerturbationKind {
    pub const ALL: [PerturbationKind; 3] =
        [PerturbationKind::Bump, PerturbationKind::PhaseRamp, PerturbationKind::Noise];

    pub fn as_str(self) -> &'static str {
        match self {
            PerturbationKind::Bump => "bump",
            PerturbationKind::PhaseRamp => "phase-ramp",
            PerturbationKind::Noise => "noise",
        }
    }
}

impl fmt::Display for PerturbationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PerturbationKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bump" => Ok(PerturbationKind::Bump),
            "phase-ramp" | "ramp" => Ok(PerturbationKind::PhaseRamp),
            "noise" => Ok(PerturbationKind::Noise),
            other => Err(Error::domain(format!("unknown perturbation kind '{other}' (bump, phase-ramp, noise)"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StabilityReport {
    pub eps: f64,
    /// Largest `inf_θ ‖u(t) - e^{iθ}φ‖_{H¹}` over the recorded times.
    pub max_orbital_dist: f64,
    pub horizon: f64,
    pub perturbation_kind: PerturbationKind,
    pub seed: u64,
    /// `inf_θ ‖u(0) - e^{iθ}φ‖_{H¹}`.
    pub initial_dist: f64,
    /// Largest relative charge change over the run.
    pub charge_drift: f64,
}

/// Unit-`H¹` perturbation direction of the given additive kind.
pub fn perturbation_direction(kind: PerturbationKind, grid: &Grid, seed: u64) -> Result<ComplexField> {
    let raw = match kind {
        PerturbationKind::Bump => ComplexField::from_real(*grid, |x| {
            if x.abs() < BUMP_RADIUS {
                (std::f64::consts::FRAC_PI_2 * x / BUMP_RADIUS).cos().powi(2)
            } else {
                0.0
            }
        })?,
        PerturbationKind::Noise => smoothed_noise(grid, seed)?,
        PerturbationKind::PhaseRamp => {
            return Err(Error::domain("the phase ramp is multiplicative and has no additive direction"));
        }
    };
    let norm = h1_norm(&raw);
    if !(norm > 0.0) {
        return Err(Error::numerical("perturbation direction vanishes on this grid"));
    }
    Ok(raw.scaled(Complex64::new(1.0 / norm, 0.0)))
}

/// Complex white noise convolved with a Gaussian of width
/// `NOISE_CORRELATION` and windowed by `exp(-x²/(2·NOISE_WINDOW²))`.
fn smoothed_noise(grid: &Grid, seed: u64) -> Result<ComplexField> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = grid.len();
    let white: Vec<Complex64> =
        (0..n).map(|_| Complex64::new(StandardNormal.sample(&mut rng), StandardNormal.sample(&mut rng))).collect();
    let h = grid.h();
    let reach = ((4.0 * NOISE_CORRELATION / h).ceil() as usize).max(1);
    let kernel: Vec<f64> = (0..=reach).map(|k| (-0.5 * (k as f64 * h / NOISE_CORRELATION).powi(2)).exp()).collect();
    let values = (0..n)
        .map(|j| {
            let lo = j.saturating_sub(reach);
            let hi = (j + reach).min(n - 1);
            let smooth: Complex64 = (lo..=hi).map(|i| white[i] * kernel[i.abs_diff(j)]).sum();
            let x = grid.x(j);
            smooth * (-0.5 * (x / NOISE_WINDOW).powi(2)).exp()
        })
        .collect();
    ComplexField::new(*grid, values)
}

/// The perturbed initial data of an experiment.
pub fn perturbed_initial_data(
    profile: &Profile,
    grid: &Grid,
    eps: f64,
    kind: PerturbationKind,
    seed: u64,
) -> Result<ComplexField> {
    if !(eps >= 0.0 && eps.is_finite()) {
        return Err(Error::domain(format!("perturbation size must be nonnegative, got {eps}")));
    }
    let phi = profile.sample(grid);
    match kind {
        PerturbationKind::PhaseRamp => {
            ComplexField::from_fn(*grid, |x| Complex64::from_polar(profile.eval(x), eps * x))
        }
        _ => phi.add_scaled(Complex64::new(eps, 0.0), &perturbation_direction(kind, grid, seed)?),
    }
}

/// Evolves the unperturbed profile; the result is the scheme's error floor.
pub fn standing_wave_check(profile: &Profile, config: &EvolutionConfig) -> Result<StabilityReport> {
    perturbation_experiment(profile, 0.0, PerturbationKind::Bump, 0, config)
}

pub fn perturbation_experiment(
    profile: &Profile,
    eps: f64,
    kind: PerturbationKind,
    seed: u64,
    config: &EvolutionConfig,
) -> Result<StabilityReport> {
    let config = config.with_snapshots(false);
    let u0 = perturbed_initial_data(profile, &config.grid, eps, kind, seed)?;
    let (initial_dist, _) = orbital_distance(&u0, &profile.sample(&config.grid))?;
    let traj = evolve(&u0, &config, &profile.params, Some(profile))?;
    Ok(StabilityReport {
        eps,
        max_orbital_dist: traj.max_orbital_dist().unwrap_or(0.0),
        horizon: config.steps() as f64 * config.dt,
        perturbation_kind: kind,
        seed,
        initial_dist,
        charge_drift: traj.charge_drift(),
    })
}

/// One experiment per `(kind, eps)` pair, run in parallel; results are in
/// kind-major, `eps_list` order.
pub fn stability_curve(
    profile: &Profile,
    eps_list: &[f64],
    kinds: &[PerturbationKind],
    seed: u64,
    config: &EvolutionConfig,
) -> Result<Vec<StabilityReport>> {
    let jobs: Vec<(PerturbationKind, f64)> =
        kinds.iter().flat_map(|&k| eps_list.iter().map(move |&e| (k, e))).collect();
    jobs.par_iter()
        .map(|&(kind, eps)| perturbation_experiment(profile, eps, kind, seed, config))
        .collect::<Vec<_>>()
        .into_iter()
        .collect()
}

/// A tested `δ` such that every report with `initial_dist < δ` stayed within
/// `target` of the orbit, and at least one such report exists.
///
/// Returns the smallest initial distance among the failing reports, or just
/// above the largest tested one if none failed.
pub fn epsilon_delta(reports: &[StabilityReport], target: f64) -> Option<f64> {
    let delta = reports
        .iter()
        .filter(|r| r.max_orbital_dist >= target)
        .map(|r| r.initial_dist)
        .fold(None, |m: Option<f64>, d| Some(m.map_or(d, |m| m.min(d))))
        .unwrap_or_else(|| {
            reports.iter().map(|r| r.initial_dist).fold(0.0, f64::max) * (1.0 + 1e-12) + f64::MIN_POSITIVE
        });
    reports.iter().any(|r| r.initial_dist < delta).then_some(delta)
}
