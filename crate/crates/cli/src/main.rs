//! `nlsdp`: command-line driver writing CSV/JSON outputs plus a run manifest.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use nlsdp::evolution::{evolve, EvolutionConfig};
use nlsdp::functionals::{action_g, delta_eigenfunction, orbital_distance};
use nlsdp::io::{
    param_line, write_descent_csv, write_diagnostics_csv, write_phaseplane_csv, write_profile_csv, write_snapshots_csv,
    write_stability_csv,
};
use nlsdp::minimize::{estimate_m, gradient_flow, random_bump, FlowConfig, FlowScheme};
use nlsdp::phaseplane::composite_path;
use nlsdp::stability::{
    epsilon_delta, perturbation_direction, perturbed_initial_data, stability_curve, PerturbationKind,
};
use nlsdp::stationary::verify;
use nlsdp::{classify_regime, Complex64, Error, Grid, ModelParams, Profile, ProfileKind};
use serde::Serialize;
use serde_json::{json, Value};

const EXIT_VALIDATION: u8 = 1;
const EXIT_NUMERICAL: u8 = 2;
const EXIT_USAGE: u8 = 64;
const EXIT_IO: u8 = 74;

#[derive(Parser, Debug)]
#[command(name = "nlsdp", version, about = "Standing waves of the double-power NLS with a delta point interaction")]
struct Cli {
    /// Seed for randomized perturbations and restarts.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Output directory (created if missing).
    #[arg(long, global = true, env = "NLSDP_OUT")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify (p, lambda1, lambda2, Z, omega); exit 1 when no profile exists.
    Regime(PointArgs),
    /// Sample the closed-form profile to profile.csv.
    Profile {
        #[command(flatten)]
        point: PointArgs,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Stationarity residuals of the closed-form profile, as JSON.
    Verify {
        #[command(flatten)]
        point: PointArgs,
        /// Half-width of the check grid.
        #[arg(long = "L", default_value_t = 10.0)]
        half_width: f64,
        #[arg(long, default_value_t = 1e-3)]
        h: f64,
    },
    /// Unstable branch, jump and stable branch in the (phi, phi') plane.
    Phaseplane(PointArgs),
    /// Time evolution from the (optionally perturbed) profile.
    Evolve {
        #[command(flatten)]
        point: PointArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        time: TimeArgs,
        /// Perturbation `kind:amplitude`, kind in {bump, phase-ramp, noise}.
        #[arg(long, value_parser = parse_perturbation)]
        perturb: Option<(PerturbationKind, f64)>,
        /// Also write snapshots.csv.
        #[arg(long)]
        snapshots: bool,
    },
    /// Gradient flow of the action (energy at omega = 0).
    Minimize {
        #[command(flatten)]
        point: PointArgs,
        #[command(flatten)]
        grid: GridArgs,
        /// Initial data: profile (plus amplitude times a bump), delta (amplitude times the
        /// bound state) or random (unit bump from the seed).
        #[arg(long, default_value = "profile", value_parser = ["profile", "delta", "random"])]
        start: String,
        #[arg(long, default_value_t = 0.1)]
        amplitude: f64,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long, default_value_t = 20_000)]
        max_iter: usize,
        /// Use the explicit L2 descent instead of the semi-implicit one.
        #[arg(long)]
        explicit: bool,
        /// Additional randomized restarts for estimating inf G.
        #[arg(long, default_value_t = 0)]
        restarts: usize,
    },
    /// Orbital-distance response to perturbations of size eps.
    Stability {
        #[command(flatten)]
        point: PointArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        time: TimeArgs,
        #[arg(long, value_delimiter = ',', default_value = "0,1e-3,1e-2,1e-1")]
        eps: Vec<f64>,
        #[arg(long, value_delimiter = ',', default_value = "bump")]
        kinds: Vec<PerturbationKind>,
    },
}

#[derive(Args, Debug, Clone, Copy)]
struct PointArgs {
    #[arg(long, allow_negative_numbers = true)]
    p: f64,
    #[arg(long, allow_negative_numbers = true)]
    lambda1: f64,
    #[arg(long, allow_negative_numbers = true)]
    lambda2: f64,
    #[arg(long = "Z", allow_negative_numbers = true)]
    z: f64,
    #[arg(long, allow_negative_numbers = true)]
    omega: f64,
}

impl PointArgs {
    fn params(&self) -> Result<ModelParams, Failure> {
        Ok(ModelParams::new(self.p, self.lambda1, self.lambda2, self.z)?)
    }

    fn profile(&self) -> Result<Profile, Failure> {
        Ok(Profile::new(&self.params()?, self.omega)?)
    }
}

#[derive(Args, Debug, Clone, Copy)]
struct GridArgs {
    /// Half-width of the computational box [default: 40, or 400 at omega = 0].
    #[arg(long = "L")]
    half_width: Option<f64>,
    #[arg(long, default_value_t = 1e-2)]
    h: f64,
}

impl GridArgs {
    fn grid(&self, profile: &Profile) -> Result<Grid, Failure> {
        let default = match profile.kind {
            ProfileKind::StandingWave => 40.0,
            ProfileKind::Equilibrium => 400.0,
        };
        Ok(Grid::with_spacing(self.half_width.unwrap_or(default), self.h)?)
    }
}

#[derive(Args, Debug, Clone, Copy)]
struct TimeArgs {
    #[arg(long, default_value_t = 1e-3)]
    dt: f64,
    /// Final time [default: 10 for evolve, 20 for stability].
    #[arg(long = "T")]
    t_final: Option<f64>,
    #[arg(long, default_value_t = 100)]
    record_every: usize,
}

fn parse_perturbation(s: &str) -> Result<(PerturbationKind, f64), String> {
    let (kind, amp) = s.split_once(':').ok_or_else(|| format!("expected kind:amplitude, got `{s}`"))?;
    let kind: PerturbationKind = kind.parse().map_err(|e: Error| e.to_string())?;
    let amp: f64 = amp.parse().map_err(|_| format!("invalid amplitude `{amp}`"))?;
    if !(amp >= 0.0 && amp.is_finite()) {
        return Err(format!("amplitude must be nonnegative, got {amp}"));
    }
    Ok((kind, amp))
}

#[derive(Debug)]
enum Failure {
    Model(Error),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Model(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Io(e.into())
    }
}

/// Record of one run, written as manifest.json next to the outputs.
#[derive(Serialize)]
struct RunManifest {
    subcommand: &'static str,
    params: ModelParams,
    omega: f64,
    config: Value,
    seed: u64,
    tool_version: &'static str,
    outputs: Vec<String>,
    args: Vec<String>,
}

/// Where outputs go and what has been written so far.
struct Run {
    dir: PathBuf,
    seed: u64,
    outputs: Vec<String>,
}

impl Run {
    fn new(dir: Option<PathBuf>, seed: u64) -> Result<Self, Failure> {
        let dir = dir.unwrap_or_else(|| PathBuf::from("."));
        fs::create_dir_all(&dir)?;
        Ok(Run { dir, seed, outputs: Vec::new() })
    }

    fn write(&mut self, name: &str, body: impl FnOnce(&mut BufWriter<File>) -> io::Result<()>) -> Result<(), Failure> {
        let mut w = BufWriter::new(File::create(self.dir.join(name))?);
        body(&mut w)?;
        w.flush()?;
        self.outputs.push(name.to_string());
        Ok(())
    }

    fn write_json(&mut self, name: &str, value: &Value) -> Result<(), Failure> {
        let text = serde_json::to_string_pretty(&round_floats(value))?;
        self.write(name, |w| writeln!(w, "{text}"))
    }

    fn finish(mut self, subcommand: &'static str, point: &PointArgs, config: Value) -> Result<(), Failure> {
        self.outputs.push("manifest.json".into());
        let manifest = RunManifest {
            subcommand,
            params: point.params()?,
            omega: point.omega,
            config,
            seed: self.seed,
            tool_version: env!("CARGO_PKG_VERSION"),
            outputs: self.outputs.clone(),
            args: std::env::args().skip(1).collect(),
        };
        let value = serde_json::to_value(&manifest)?;
        self.outputs.pop();
        self.write_json("manifest.json", &value)
    }
}

/// Rounds every float in `v` to 15 significant digits.
fn round_floats(v: &Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().unwrap_or(f64::NAN);
            let r: f64 = format!("{x:.14e}").parse().unwrap_or(x);
            json!(r)
        }
        Value::Array(items) => Value::Array(items.iter().map(round_floats).collect()),
        Value::Object(map) => Value::Object(map.iter().map(|(k, v)| (k.clone(), round_floats(v))).collect()),
        other => other.clone(),
    }
}

fn header(point: &PointArgs, extra: &[String]) -> Result<Vec<String>, Failure> {
    let mut lines = vec![param_line(&point.params()?, Some(point.omega))];
    lines.extend_from_slice(extra);
    Ok(lines)
}

fn run(cli: Cli) -> Result<(), Failure> {
    let seed = cli.seed;
    match cli.command {
        Command::Regime(point) => {
            let verdict = classify_regime(&point.params()?, point.omega)?;
            println!("{}", verdict.tag);
            println!("{}", verdict.detail);
            if let Some(dir) = cli.out {
                let mut run = Run::new(Some(dir), seed)?;
                run.write_json("regime.json", &serde_json::to_value(&verdict)?)?;
                run.finish("regime", &point, json!({}))?;
            }
            if verdict.tag.has_profile() {
                Ok(())
            } else {
                Err(Failure::Model(Error::Regime(format!("{}: {}", verdict.tag, verdict.detail))))
            }
        }
        Command::Profile { point, grid } => {
            let profile = point.profile()?;
            let grid = grid.grid(&profile)?;
            let xs: Vec<f64> = grid.nodes().collect();
            let mut run = Run::new(cli.out, seed)?;
            run.write("profile.csv", |w| write_profile_csv(w, &profile, &xs, &[]))?;
            run.finish("profile", &point, json!({ "grid": grid }))
        }
        Command::Verify { point, half_width, h } => {
            let profile = point.profile()?;
            let grid = Grid::with_spacing(half_width, h)?;
            let report = round_floats(&serde_json::to_value(verify(&profile, &grid))?);
            println!("{}", serde_json::to_string_pretty(&report)?);
            let mut run = Run::new(cli.out, seed)?;
            run.write_json("verify.json", &report)?;
            run.finish("verify", &point, json!({ "grid": grid }))
        }
        Command::Phaseplane(point) => {
            let profile = point.profile()?;
            let path = composite_path(&profile)?;
            let extra = vec![
                format!("parametric_mismatch={:.14e}", path.parametric_mismatch(&profile)),
                format!("hamiltonian_drift={:.14e}", path.hamiltonian_drift(&profile.params, profile.omega)),
            ];
            let head = header(&point, &extra)?;
            let mut run = Run::new(cli.out, seed)?;
            run.write("phaseplane.csv", |w| write_phaseplane_csv(w, &path, &head))?;
            run.finish("phaseplane", &point, json!({}))
        }
        Command::Evolve { point, grid, time, perturb, snapshots } => {
            let profile = point.profile()?;
            let grid = grid.grid(&profile)?;
            let t_final = time.t_final.unwrap_or(10.0);
            let config = EvolutionConfig::new(grid, time.dt, t_final, time.record_every)?.with_snapshots(snapshots);
            let (kind, eps) = perturb.unwrap_or((PerturbationKind::Bump, 0.0));
            let u0 = perturbed_initial_data(&profile, &grid, eps, kind, seed)?;
            let traj = evolve(&u0, &config, &profile.params, Some(&profile))?;
            let head = header(&point, &[format!("perturbation={kind}:{eps}, dt={}, T={t_final}", time.dt)])?;
            let mut run = Run::new(cli.out, seed)?;
            run.write("diagnostics.csv", |w| write_diagnostics_csv(w, &traj.diagnostics, &head))?;
            if snapshots {
                run.write("snapshots.csv", |w| write_snapshots_csv(w, &traj.snapshots, &head))?;
            }
            let summary = json!({
                "charge_drift": traj.charge_drift(),
                "energy_drift": traj.energy_drift(),
                "max_orbital_dist": traj.max_orbital_dist(),
            });
            println!("{}", serde_json::to_string_pretty(&round_floats(&summary))?);
            run.finish("evolve", &point, json!({ "evolution": config, "perturbation": { "kind": kind, "eps": eps } }))
        }
        Command::Minimize { point, grid, start, amplitude, tol, max_iter, explicit, restarts } => {
            let profile = point.profile()?;
            let grid = grid.grid(&profile)?;
            let params = profile.params;
            let phi = profile.sample(&grid);
            let v0 = match start.as_str() {
                "profile" => phi.add_scaled(
                    Complex64::new(amplitude, 0.0),
                    &perturbation_direction(PerturbationKind::Bump, &grid, seed)?,
                )?,
                "delta" => delta_eigenfunction(params.z, &grid)?.scaled(Complex64::new(amplitude, 0.0)),
                _ => random_bump(&grid, seed),
            };
            let config = FlowConfig {
                scheme: if explicit { FlowScheme::Explicit } else { FlowScheme::SemiImplicit },
                tol,
                max_iter,
                ..FlowConfig::default()
            };
            let flow = gradient_flow(&v0, &params, point.omega, &config)?;
            let mut report = json!({
                "value": flow.value,
                "iterations": flow.iterations,
                "final_gradient_norm": flow.final_gradient_norm,
                "converged": flow.converged,
                "profile_value": action_g(&phi, &params, point.omega),
                "orbital_dist_to_profile": orbital_distance(&flow.minimizer, &phi)?.0,
            });
            if restarts > 0 {
                let est = estimate_m(&params, point.omega, &grid, restarts, seed, &config)?;
                report["estimate_m"] = serde_json::to_value(&est)?;
            }
            let head = header(&point, &[format!("start={start}, amplitude={amplitude}")])?;
            let mut run = Run::new(cli.out, seed)?;
            run.write_json("flow.json", &report)?;
            run.write("descent.csv", |w| write_descent_csv(w, &flow.history, &head))?;
            run.finish(
                "minimize",
                &point,
                json!({ "grid": grid, "flow": config, "start": start, "amplitude": amplitude, "restarts": restarts }),
            )
        }
        Command::Stability { point, grid, time, eps, kinds } => {
            let profile = point.profile()?;
            let grid = grid.grid(&profile)?;
            let t_final = time.t_final.unwrap_or(20.0);
            let config = EvolutionConfig::new(grid, time.dt, t_final, time.record_every)?;
            let reports = stability_curve(&profile, &eps, &kinds, seed, &config)?;
            let head = header(&point, &[])?;
            let realized: Vec<Value> = [0.1, 0.05]
                .iter()
                .map(|&target| json!({ "eps": target, "delta": epsilon_delta(&reports, target) }))
                .collect();
            let mut run = Run::new(cli.out, seed)?;
            run.write("stability_curve.csv", |w| write_stability_csv(w, &reports, &head))?;
            run.write_json(
                "stability.json",
                &json!({ "reports": reports, "epsilon_delta": realized, "horizon_note": "stability observed on [0, T] only" }),
            )?;
            run.finish("stability", &point, json!({ "evolution": config, "eps": eps, "kinds": kinds }))
        }
    }
}

fn exit_code(failure: &Failure) -> u8 {
    match failure {
        Failure::Model(Error::Domain(_) | Error::Regime(_)) => EXIT_VALIDATION,
        Failure::Model(Error::Numerical(_)) => EXIT_NUMERICAL,
        Failure::Io(_) => EXIT_IO,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            let code = exit_code(&failure);
            match failure {
                // The verdict has already been printed.
                Failure::Model(Error::Regime(_)) => {}
                Failure::Model(e) => eprintln!("nlsdp: {e}"),
                Failure::Io(e) => eprintln!("nlsdp: i/o error: {e}"),
            }
            ExitCode::from(code)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perturbation_flag_parses() {
        assert_eq!(parse_perturbation("bump:0.01").unwrap(), (PerturbationKind::Bump, 0.01));
        assert_eq!(parse_perturbation("phase-ramp:1e-2").unwrap().0, PerturbationKind::PhaseRamp);
        assert!(parse_perturbation("bump").is_err());
        assert!(parse_perturbation("bump:-1").is_err());
        assert!(parse_perturbation("wave:1").is_err());
    }

    #[test]
    fn json_floats_are_rounded() {
        let v = round_floats(&json!({ "a": [1.0 / 3.0], "b": 2 }));
        assert_eq!(v["a"][0].as_f64().unwrap(), 0.333333333333333);
        assert_eq!(v["b"], 2);
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }

    #[test]
    fn exit_codes_follow_error_class() {
        assert_eq!(exit_code(&Failure::Model(Error::Domain(String::new()))), 1);
        assert_eq!(exit_code(&Failure::Model(Error::Regime(String::new()))), 1);
        assert_eq!(exit_code(&Failure::Model(Error::Numerical(String::new()))), 2);
    }
}
