//! Phase-plane view of the stationary equation `φ'' = -ωφ - λ₁φ^p - λ₂φ^{2p-1}`.
//!
//! The profile for `x < 0` runs along the unstable manifold of the origin up
//! to `(c₀, Zc₀/2)`, the point interaction kicks the slope down by `Zc₀`, and
//! the profile for `x > 0` returns to the origin along the stable manifold.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{pow_real, ModelParams};
use crate::ode::rk4_step;
use crate::profiles::{Profile, ProfileKind, Side};
use crate::roots::bisect_newton;
use crate::stationary::find_c0;

/// Seed offset of the unstable branch relative to the peak, for `ω < 0`.
const SEED_OFFSET: f64 = 1e-8;
/// Distance from the origin where equilibrium orbits are seeded.
const EQUILIBRIUM_SEED_X: f64 = 50.0;
/// The stable branch is transversally unstable in forward `x`; stop it at this
/// fraction of the peak, before rounding errors from the peak are amplified
/// to the size of the solution.
const STABLE_FLOOR: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhasePoint {
    pub phi: f64,
    pub dphi: f64,
}

impl PhasePoint {
    pub fn new(phi: f64, dphi: f64) -> Self {
        PhasePoint { phi, dphi }
    }

    pub fn norm(&self) -> f64 {
        self.phi.hypot(self.dphi)
    }

    fn to_array(self) -> [f64; 2] {
        [self.phi, self.dphi]
    }

    fn from_array(a: [f64; 2]) -> Self {
        PhasePoint { phi: a[0], dphi: a[1] }
    }
}

/// `Φ_ω(x, y) = y² + ωx² + 2α|x|^{p+1} + β|x|^{2p}`.
pub fn hamiltonian(params: &ModelParams, omega: f64, pt: PhasePoint) -> f64 {
    let p = params.p;
    let a = pt.phi.abs();
    pt.dphi * pt.dphi
        + omega * a * a
        + 2.0 * params.lambda1 / (p + 1.0) * pow_real(a, p + 1.0)
        + params.lambda2 / p * pow_real(a, 2.0 * p)
}

/// `∇Φ_ω` for `x ≥ 0`.
pub fn hamiltonian_gradient(params: &ModelParams, omega: f64, pt: PhasePoint) -> (f64, f64) {
    let p = params.p;
    let a = pt.phi.abs();
    let m = pow_real(a, p - 1.0);
    (2.0 * a * (omega + params.lambda1 * m + params.lambda2 * m * m), 2.0 * pt.dphi)
}

/// `(φ, φ')' = (φ', -ωφ - λ₁|φ|^{p-1}φ - λ₂|φ|^{2p-2}φ)`.
pub fn vector_field(params: &ModelParams, omega: f64, pt: PhasePoint) -> PhasePoint {
    let m = pow_real(pt.phi.abs(), params.p - 1.0);
    PhasePoint::new(pt.dphi, -(omega + params.lambda1 * m + params.lambda2 * m * m) * pt.phi)
}

/// The slope jump `(φ, φ') ↦ (φ, φ' - Zφ)` imposed by the point interaction.
pub fn jump_map(pt: PhasePoint, z: f64) -> PhasePoint {
    PhasePoint::new(pt.phi, pt.dphi - z * pt.phi)
}

/// A sampled orbit; `x[k]` is the value of the independent variable at
/// `points[k]`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Orbit {
    pub x: Vec<f64>,
    pub points: Vec<PhasePoint>,
}

impl Orbit {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn last(&self) -> Option<(f64, PhasePoint)> {
        Some((*self.x.last()?, *self.points.last()?))
    }

    /// Largest `|Φ(pt) - Φ(start)|` along the orbit.
    pub fn hamiltonian_drift(&self, params: &ModelParams, omega: f64) -> f64 {
        let Some(first) = self.points.first() else { return 0.0 };
        let h0 = hamiltonian(params, omega, *first);
        self.points.iter().map(|&pt| (hamiltonian(params, omega, pt) - h0).abs()).fold(0.0, f64::max)
    }
}

/// Step control and stopping rules for [`trace_orbit_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceOptions {
    /// Target phase-plane arclength per step.
    pub ds: f64,
    /// Upper bound on the step in the independent variable.
    pub h_max: f64,
    /// Stop exactly when `φ` reaches this value from below.
    pub stop_phi_above: Option<f64>,
    /// Stop as soon as `φ` drops below this value.
    pub stop_phi_below: Option<f64>,
    /// Abort when `|pt|` exceeds this bound.
    pub divergence_bound: f64,
}

impl TraceOptions {
    pub fn for_peak(c0: f64) -> Self {
        TraceOptions {
            ds: 1e-3 * c0,
            h_max: 1e-2,
            stop_phi_above: None,
            stop_phi_below: None,
            divergence_bound: 1e3 * c0,
        }
    }
}

/// Integrates the phase-plane flow from `start` for the given arclength with
/// default step control; the divergence guard uses the peak `c₀` of the
/// regime.
pub fn trace_orbit(params: &ModelParams, omega: f64, start: PhasePoint, arclength: f64) -> Result<Orbit> {
    let c0 = find_c0(params, omega)?;
    trace_orbit_with(params, omega, start, 0.0, arclength, &TraceOptions::for_peak(c0))
}

/// RK4 in the independent variable `x` with step `min(ds/|F|, h_max)`.
pub fn trace_orbit_with(
    params: &ModelParams,
    omega: f64,
    start: PhasePoint,
    x0: f64,
    arclength: f64,
    opts: &TraceOptions,
) -> Result<Orbit> {
    if !(opts.ds > 0.0 && opts.h_max > 0.0 && arclength >= 0.0) {
        return Err(Error::domain("trace needs ds > 0, h_max > 0 and arclength >= 0"));
    }
    let field = |y: [f64; 2]| vector_field(params, omega, PhasePoint::from_array(y)).to_array();
    let mut orbit = Orbit { x: vec![x0], points: vec![start] };
    let mut y = start;
    let mut x = x0;
    let mut travelled = 0.0;
    let max_steps = 10_000_000usize;
    for _ in 0..max_steps {
        if travelled >= arclength {
            break;
        }
        let speed = vector_field(params, omega, y).norm();
        let h = if speed > 0.0 { (opts.ds / speed).min(opts.h_max) } else { opts.h_max };
        let mut next = PhasePoint::from_array(rk4_step(&field, y.to_array(), h));
        let mut step = h;
        let mut stop = false;
        if let Some(target) = opts.stop_phi_above {
            if next.phi >= target && y.phi < target {
                let hit = |s: f64| rk4_step(&field, y.to_array(), s)[0] - target;
                let slope = |s: f64| rk4_step(&field, y.to_array(), s)[1];
                step = bisect_newton(hit, slope, 0.0, h, 0.0)?;
                next = PhasePoint::from_array(rk4_step(&field, y.to_array(), step));
                next.phi = target;
                stop = true;
            }
        }
        if !(next.norm() <= opts.divergence_bound) {
            return Err(Error::numerical(format!("orbit diverged at x = {}: {next:?}", x + step)));
        }
        travelled += (next.phi - y.phi).hypot(next.dphi - y.dphi);
        x += step;
        y = next;
        orbit.x.push(x);
        orbit.points.push(y);
        if stop || opts.stop_phi_below.is_some_and(|low| y.phi < low) {
            break;
        }
    }
    Ok(orbit)
}

/// The profile drawn as two manifold branches joined by the slope jump.
#[derive(Debug, Clone, PartialEq)]
pub struct CompositePath {
    /// `x ≤ 0`: from near the origin up to `(c₀, Zc₀/2)`, shifted so the
    /// last point sits at `x = 0`.
    pub unstable: Orbit,
    /// `(c₀, Zc₀/2)` and its image under the jump map.
    pub jump: [PhasePoint; 2],
    /// `x ≥ 0`: from `(c₀, -Zc₀/2)` back towards the origin.
    pub stable: Orbit,
}

/// Traces both branches for the regime of `profile`, independently of its
/// closed form except for the `ω = 0` seed (the origin is degenerate there
/// and offers no eigendirection to start along).
pub fn composite_path(profile: &Profile) -> Result<CompositePath> {
    let params = &profile.params;
    let omega = profile.omega;
    let c0 = find_c0(params, omega)?;
    let (seed, x_seed, floor) = match profile.kind {
        ProfileKind::StandingWave => {
            let eps = SEED_OFFSET * c0;
            (PhasePoint::new(eps, (-omega).sqrt() * eps), 0.0, STABLE_FLOOR * c0)
        }
        ProfileKind::Equilibrium => {
            let x = -EQUILIBRIUM_SEED_X;
            let pt = PhasePoint::new(profile.eval(x), profile.derivative(x, Side::Left));
            (pt, x, pt.phi)
        }
    };
    let mut opts = TraceOptions::for_peak(c0);
    opts.stop_phi_above = Some(c0);
    let mut unstable = trace_orbit_with(params, omega, seed, x_seed, f64::INFINITY, &opts)?;
    let (x_top, top) = unstable.last().expect("orbit holds its seed");
    if top.phi != c0 {
        return Err(Error::numerical("unstable branch did not reach the peak"));
    }
    for x in &mut unstable.x {
        *x -= x_top;
    }
    let landing = jump_map(top, params.z);
    let mut opts = TraceOptions::for_peak(c0);
    opts.stop_phi_below = Some(floor);
    let stable = trace_orbit_with(params, omega, landing, 0.0, f64::INFINITY, &opts)?;
    Ok(CompositePath { unstable, jump: [top, landing], stable })
}

impl CompositePath {
    /// Largest deviation of the branches from `(φ(x), φ'(x))` at the same `x`.
    pub fn parametric_mismatch(&self, profile: &Profile) -> f64 {
        let branch = |orbit: &Orbit, side: Side| {
            orbit
                .x
                .iter()
                .zip(&orbit.points)
                .map(|(&x, pt)| {
                    let dphi = profile.derivative(x, side);
                    (pt.phi - profile.eval(x)).abs().max((pt.dphi - dphi).abs())
                })
                .fold(0.0, f64::max)
        };
        branch(&self.unstable, Side::Left).max(branch(&self.stable, Side::Right))
    }

    pub fn hamiltonian_drift(&self, params: &ModelParams, omega: f64) -> f64 {
        self.unstable.hamiltonian_drift(params, omega).max(self.stable.hamiltonian_drift(params, omega))
    }
}
