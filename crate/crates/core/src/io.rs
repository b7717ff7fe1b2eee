//! CSV output in the formats the command-line driver emits.
//!
//! Every file starts with `#` comment lines (parameters, column units),
//! followed by a plain header row and data rows. Floats are written with 15
//! significant digits.

use std::io::{self, Write};

use crate::functionals::Diagnostics;
use crate::grid::ComplexField;
use crate::minimize::DescentRecord;
use crate::model::ModelParams;
use crate::phaseplane::{CompositePath, PhasePoint};
use crate::profiles::{Profile, Side};
use crate::stability::StabilityReport;

/// `x` with 15 significant digits.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.14e}")
}

/// `p=..., lambda1=..., lambda2=..., Z=...[, omega=...]`.
pub fn param_line(params: &ModelParams, omega: Option<f64>) -> String {
    let mut line = format!(
        "p={}, lambda1={}, lambda2={}, Z={}",
        fmt_f64(params.p),
        fmt_f64(params.lambda1),
        fmt_f64(params.lambda2),
        fmt_f64(params.z)
    );
    if let Some(w) = omega {
        line.push_str(&format!(", omega={}", fmt_f64(w)));
    }
    line
}

fn comments<W: Write>(w: &mut W, lines: &[String]) -> io::Result<()> {
    for line in lines {
        writeln!(w, "# {line}")?;
    }
    Ok(())
}

/// Columns `x, phi, dphi`; at `x = 0` the right slope is written.
pub fn write_profile_csv<W: Write>(w: &mut W, profile: &Profile, xs: &[f64], extra: &[String]) -> io::Result<()> {
    let mut head = vec![param_line(&profile.params, Some(profile.omega))];
    head.push(format!("kind={:?}, shift_d={}, peak={}", profile.kind, fmt_f64(profile.shift_d), fmt_f64(profile.peak)));
    head.extend_from_slice(extra);
    head.push("units: x [length], phi [amplitude], dphi [amplitude/length]".into());
    comments(w, &head)?;
    writeln!(w, "x,phi,dphi")?;
    for &x in xs {
        writeln!(w, "{},{},{}", fmt_f64(x), fmt_f64(profile.eval(x)), fmt_f64(profile.derivative(x, Side::Right)))?;
    }
    Ok(())
}

/// Columns `t, charge, energy, action, orbital_dist`; the last column is
/// empty when no reference orbit was tracked.
pub fn write_diagnostics_csv<W: Write>(w: &mut W, diagnostics: &[Diagnostics], head: &[String]) -> io::Result<()> {
    let mut head = head.to_vec();
    head.push(
        "units: t [time], charge [amplitude^2 length], energy and action [amplitude^2/length], orbital_dist [H1 norm]"
            .into(),
    );
    comments(w, &head)?;
    writeln!(w, "t,charge,energy,action,orbital_dist")?;
    for d in diagnostics {
        let dist = d.orbital_dist.map(fmt_f64).unwrap_or_default();
        writeln!(w, "{},{},{},{},{}", fmt_f64(d.t), fmt_f64(d.charge), fmt_f64(d.energy), fmt_f64(d.action), dist)?;
    }
    Ok(())
}

/// Columns `t, x, re_u, im_u`, one row per node per snapshot.
pub fn write_snapshots_csv<W: Write>(w: &mut W, snapshots: &[(f64, ComplexField)], head: &[String]) -> io::Result<()> {
    let mut head = head.to_vec();
    head.push("units: t [time], x [length], re_u and im_u [amplitude]".into());
    comments(w, &head)?;
    writeln!(w, "t,x,re_u,im_u")?;
    for (t, u) in snapshots {
        let t = fmt_f64(*t);
        for (x, z) in u.grid().nodes().zip(u.values()) {
            writeln!(w, "{t},{},{},{}", fmt_f64(x), fmt_f64(z.re), fmt_f64(z.im))?;
        }
    }
    Ok(())
}

/// Columns `phi, dphi, branch` with `branch ∈ {unstable, jump, stable}`.
pub fn write_phaseplane_csv<W: Write>(w: &mut W, path: &CompositePath, head: &[String]) -> io::Result<()> {
    let mut head = head.to_vec();
    head.push("units: phi [amplitude], dphi [amplitude/length]".into());
    comments(w, &head)?;
    writeln!(w, "phi,dphi,branch")?;
    let mut row = |pt: &PhasePoint, branch: &str| writeln!(w, "{},{},{branch}", fmt_f64(pt.phi), fmt_f64(pt.dphi));
    for pt in &path.unstable.points {
        row(pt, "unstable")?;
    }
    for pt in &path.jump {
        row(pt, "jump")?;
    }
    for pt in &path.stable.points {
        row(pt, "stable")?;
    }
    Ok(())
}

/// Columns `iter, value, grad_norm`.
pub fn write_descent_csv<W: Write>(w: &mut W, history: &[DescentRecord], head: &[String]) -> io::Result<()> {
    let mut head = head.to_vec();
    head.push("units: iter [count], value [action], grad_norm [weighted L2 norm]".into());
    comments(w, &head)?;
    writeln!(w, "iter,value,grad_norm")?;
    for r in history {
        writeln!(w, "{},{},{}", r.iter, fmt_f64(r.value), fmt_f64(r.grad_norm))?;
    }
    Ok(())
}

/// Columns `eps, kind, max_orbital_dist, T, seed`.
pub fn write_stability_csv<W: Write>(w: &mut W, reports: &[StabilityReport], head: &[String]) -> io::Result<()> {
    let mut head = head.to_vec();
    head.push("finite horizon: stability is only observed up to time T".into());
    head.push("units: eps [perturbation size], max_orbital_dist [H1 norm], T [time], seed [integer]".into());
    comments(w, &head)?;
    writeln!(w, "eps,kind,max_orbital_dist,T,seed")?;
    for r in reports {
        writeln!(
            w,
            "{},{},{},{},{}",
            fmt_f64(r.eps),
            r.perturbation_kind,
            fmt_f64(r.max_orbital_dist),
            fmt_f64(r.horizon),
            r.seed
        )?;
    }
    Ok(())
}
