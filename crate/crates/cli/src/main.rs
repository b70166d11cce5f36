//! `casimir` — semiclassical Casimir energies and piston forces.
//!
//! Subcommands: `energy` (cavity energies), `force` (piston forces and
//! curves), `verify` (the acceptance table), `oracle` (mode-sum ground
//! truth). Exit codes: 0 success, 1 verification failure, 2 usage or
//! domain error.

use casimir_cli::config::FileConfig;
use casimir_cli::record::{curve_csv, CurveRow, RecordConfig, ResultRow, RunRecord};
use casimir_core::model::{
    force_to_si, BoundaryCondition, EnergyResult, PistonConfig, SeriesControl,
};
use casimir_core::oracle::{oracle_piston_energy, regularized_energy, OracleControl, Regulator};
use casimir_core::piston::{halfcyl_force_profile, piston_force, subtracted_energy, ForceMethod};
use casimir_core::verify::{self, Group};
use casimir_core::{energy_cylinder, energy_halfcylinder, energy_hemisphere, energy_sphere, exec};
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "casimir",
    version,
    about = "Semiclassical Casimir energies and piston forces"
)]
struct Cli {
    /// Write the run record as JSON to this path.
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,
    /// TOML file with `[series]` and `[oracle]` defaults.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Periodic-orbit Casimir energy of a single cavity.
    Energy(EnergyArgs),
    /// Force on the piston; optionally a d-grid curve as CSV.
    Force(ForceArgs),
    /// Run the acceptance checks and print a pass/fail table.
    Verify(VerifyArgs),
    /// Damped eigenmode sums: the independent box ground truth.
    Oracle(OracleArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Bc {
    Dirichlet,
    Neumann,
    Em,
}

impl From<Bc> for BoundaryCondition {
    fn from(b: Bc) -> Self {
        match b {
            Bc::Dirichlet => BoundaryCondition::Dirichlet,
            Bc::Neumann => BoundaryCondition::Neumann,
            Bc::Em => BoundaryCondition::Em,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Cavity {
    Cylinder,
    HalfCylinder,
    Sphere,
    Hemisphere,
}

impl Cavity {
    fn name(self) -> &'static str {
        match self {
            Cavity::Cylinder => "cylinder",
            Cavity::HalfCylinder => "half-cylinder",
            Cavity::Sphere => "sphere",
            Cavity::Hemisphere => "hemisphere",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum HeadGeometry {
    Box,
    HalfCylinderHead,
    HemisphereHead,
}

#[derive(Clone, Copy, ValueEnum)]
enum CurveQuantity {
    Force,
    Energy,
}

#[derive(Args)]
struct SeriesArgs {
    /// Outer series cutoff.
    #[arg(long)]
    k_max: Option<u32>,
    /// Inner series cutoff.
    #[arg(long)]
    m_max: Option<u32>,
    /// Target relative accuracy of the series.
    #[arg(long)]
    tol: Option<f64>,
}

impl SeriesArgs {
    fn resolve(&self, file: &FileConfig) -> SeriesControl {
        let base = file.series(SeriesControl::default());
        SeriesControl {
            k_max: self.k_max.unwrap_or(base.k_max),
            m_max: self.m_max.unwrap_or(base.m_max),
            tol: self.tol.unwrap_or(base.tol),
        }
    }
}

#[derive(Args)]
struct EnergyArgs {
    #[arg(long, value_enum)]
    geometry: Cavity,
    #[arg(long, value_enum, default_value = "em")]
    bc: Bc,
    /// Cavity radius R.
    #[arg(long)]
    radius: f64,
    /// Transverse extent L (cylinder family).
    #[arg(long, default_value_t = 1.0)]
    length: f64,
    #[command(flatten)]
    series: SeriesArgs,
}

#[derive(Args)]
struct ForceArgs {
    #[arg(long, value_enum)]
    geometry: HeadGeometry,
    #[arg(long, value_enum, default_value = "em")]
    bc: Bc,
    /// Piston height.
    #[arg(long)]
    d: Option<f64>,
    /// Place the piston at the contact point d = R (curved heads).
    #[arg(long)]
    at_contact: bool,
    /// Head radius R (curved heads).
    #[arg(long)]
    radius: Option<f64>,
    /// Transverse extent L (half-cylinder head).
    #[arg(long, default_value_t = 1.0)]
    length: f64,
    /// Box cross-section.
    #[arg(long)]
    l2: Option<f64>,
    #[arg(long)]
    l3: Option<f64>,
    /// Casing length (box requires it; curved heads are open-ended).
    #[arg(long = "H")]
    big_h: Option<f64>,
    /// Also report the force in piconewtons.
    #[arg(long)]
    si: bool,
    /// Physical head radius in nanometers for --si.
    #[arg(long)]
    radius_nm: Option<f64>,
    /// Emit a CSV profile over d in MIN:MAX:STEPS.
    #[arg(long, value_name = "MIN:MAX:STEPS")]
    curve: Option<String>,
    /// Curve content: the force, or the subtracted-energy anchors.
    #[arg(long, value_enum, default_value = "force")]
    quantity: CurveQuantity,
    /// Write the curve to this path instead of stdout.
    #[arg(long, value_name = "PATH")]
    csv: Option<PathBuf>,
    #[command(flatten)]
    series: SeriesArgs,
}

#[derive(Args)]
struct VerifyArgs {
    /// Restrict to one group: constants, zeros, decomposition, plates,
    /// oracle, signs, properties.
    #[arg(long)]
    only: Option<String>,
}

#[derive(Args)]
struct OracleArgs {
    /// Raw damped sum over a 1-3 length box (comma separated).
    #[arg(long, value_delimiter = ',')]
    lengths: Option<Vec<f64>>,
    /// Damping scale for --lengths mode.
    #[arg(long)]
    lambda: Option<f64>,
    /// Piston height for the subtracted-energy mode.
    #[arg(long)]
    d: Option<f64>,
    #[arg(long = "H")]
    big_h: Option<f64>,
    #[arg(long, default_value_t = 1.0)]
    l2: f64,
    #[arg(long, default_value_t = 1.0)]
    l3: f64,
    #[arg(long, value_enum, default_value = "dirichlet")]
    bc: Bc,
    #[arg(long)]
    lambda0_factor: Option<f64>,
    #[arg(long)]
    levels: Option<u32>,
    #[arg(long)]
    ratio: Option<f64>,
    #[arg(long, value_enum)]
    regulator: Option<RegulatorArg>,
}

#[derive(Clone, Copy, ValueEnum)]
enum RegulatorArg {
    Abel,
    Gauss,
}

fn main() -> ExitCode {
    let threads = std::env::var("CASIMIR_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok());
    exec::configure_threads(threads);

    let cli = Cli::parse();
    let file = match &cli.config {
        Some(path) => match FileConfig::load(path) {
            Ok(c) => c,
            Err(e) => return usage_error(&e),
        },
        None => FileConfig::default(),
    };

    let outcome = match &cli.command {
        Command::Energy(args) => cmd_energy(args, &file),
        Command::Force(args) => cmd_force(args, &file),
        Command::Verify(args) => return cmd_verify(args, &cli),
        Command::Oracle(args) => cmd_oracle(args, &file),
    };

    match outcome {
        Ok((record, csv)) => {
            print!("{}", record.render_text());
            if let Some(path) = &cli.json {
                if let Err(e) = std::fs::write(path, record.to_json()) {
                    return usage_error(&format!("cannot write {}: {e}", path.display()));
                }
            }
            if let Some(text) = csv {
                print!("{text}");
            }
            ExitCode::SUCCESS
        }
        Err(e) => usage_error(&e),
    }
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn provenance_of(e: &EnergyResult) -> &'static str {
    if e.truncation_error == 0.0 {
        "exact"
    } else {
        "series-truncated"
    }
}

fn cmd_energy(args: &EnergyArgs, file: &FileConfig) -> Result<(RunRecord, Option<String>), String> {
    let ctl = args.series.resolve(file);
    let bc: BoundaryCondition = args.bc.into();
    let (r, l) = (args.radius, args.length);
    let res = match args.geometry {
        Cavity::Cylinder => energy_cylinder(r, l, bc, &ctl),
        Cavity::HalfCylinder => energy_halfcylinder(r, l, bc, &ctl),
        Cavity::Sphere => energy_sphere(r, bc, &ctl),
        Cavity::Hemisphere => energy_hemisphere(r, bc, &ctl),
    }
    .map_err(|e| e.to_string())?;

    let uses_length = matches!(args.geometry, Cavity::Cylinder | Cavity::HalfCylinder);
    let record = RunRecord {
        command: "energy".into(),
        config: RecordConfig {
            cavity: Some(args.geometry.name().into()),
            bc: Some(bc.to_string()),
            radius: Some(r),
            length: uses_length.then_some(l),
            series: Some(ctl),
            ..RecordConfig::default()
        },
        results: vec![ResultRow::new(
            args.geometry.name(),
            res.coefficient,
            &res.scale.to_string(),
            res.truncation_error,
            provenance_of(&res),
        )],
    };
    Ok((record, None))
}

fn build_piston(args: &ForceArgs, d: f64) -> Result<PistonConfig, String> {
    match args.geometry {
        HeadGeometry::Box => {
            let (Some(l2), Some(l3), Some(h)) = (args.l2, args.l3, args.big_h) else {
                return Err("box geometry needs --l2, --l3 and --H".into());
            };
            Ok(PistonConfig::BoxFlatHead { d, h, l2, l3 })
        }
        HeadGeometry::HalfCylinderHead => {
            let r = args.radius.ok_or("curved heads need --radius")?;
            Ok(PistonConfig::HalfCylinderHead {
                d,
                h: args.big_h,
                r,
                l: args.length,
            })
        }
        HeadGeometry::HemisphereHead => {
            let r = args.radius.ok_or("curved heads need --radius")?;
            Ok(PistonConfig::HemisphereHead {
                d,
                h: args.big_h,
                r,
            })
        }
    }
}

fn method_name(m: ForceMethod) -> &'static str {
    match m {
        ForceMethod::Analytic => "exact",
        ForceMethod::CentralDifference => "series-truncated",
        ForceMethod::ScalingModel => "scaling-model",
    }
}

fn parse_curve(spec: &str) -> Result<Vec<f64>, String> {
    let parts: Vec<&str> = spec.split(':').collect();
    let [min, max, steps] = parts.as_slice() else {
        return Err(format!("curve spec `{spec}` is not MIN:MAX:STEPS"));
    };
    let (min, max): (f64, f64) = (
        min.parse().map_err(|_| "bad curve minimum")?,
        max.parse().map_err(|_| "bad curve maximum")?,
    );
    let steps: usize = steps.parse().map_err(|_| "bad curve step count")?;
    if steps < 2 || !min.is_finite() || !max.is_finite() || max <= min {
        return Err("curve needs max > min and at least two steps".into());
    }
    Ok((0..steps)
        .map(|i| min + (max - min) * i as f64 / (steps - 1) as f64)
        .collect())
}

fn cmd_force(args: &ForceArgs, file: &FileConfig) -> Result<(RunRecord, Option<String>), String> {
    let ctl = args.series.resolve(file);
    let bc: BoundaryCondition = args.bc.into();
    let d = match (args.d, args.at_contact) {
        (Some(d), false) => d,
        (None, true) => args.radius.ok_or("--at-contact needs --radius")?,
        (None, false) => return Err("give --d or --at-contact".into()),
        (Some(_), true) => return Err("--d conflicts with --at-contact".into()),
    };
    let cfg = build_piston(args, d)?;
    let force = piston_force(&cfg, bc, &ctl).map_err(|e| e.to_string())?;

    let mut results = vec![ResultRow::new(
        "force",
        force.coefficient,
        "hbar*c/length^2",
        force.error,
        method_name(force.method),
    )];
    results.push(ResultRow::new(
        "direction",
        match force.direction {
            casimir_core::Direction::Attractive => -1.0,
            casimir_core::Direction::Zero => 0.0,
            casimir_core::Direction::Repulsive => 1.0,
        },
        "sign",
        0.0,
        method_name(force.method),
    ));

    if args.si {
        if matches!(args.geometry, HeadGeometry::Box) {
            return Err("SI conversion applies to the curved-head geometries".into());
        }
        let r_nm = args.radius_nm.ok_or("--si needs --radius-nm")?;
        let r = args
            .radius
            .ok_or("SI output is defined for the curved heads (needs --radius)")?;
        let per_r2 = force.coefficient * r * r;
        let pn = force_to_si(per_r2, r_nm).map_err(|e| e.to_string())?;
        results.push(ResultRow::new(
            "force-si",
            pn,
            "pN",
            0.0,
            method_name(force.method),
        ));
    }

    let csv = match &args.curve {
        None => None,
        Some(spec) => {
            let grid = parse_curve(spec)?;
            let rows = curve_rows(args, bc, &ctl, &grid)?;
            let text = curve_csv(&rows);
            match &args.csv {
                Some(path) => {
                    std::fs::write(path, &text)
                        .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
                    None
                }
                None => Some(text),
            }
        }
    };

    let record = RunRecord {
        command: "force".into(),
        config: RecordConfig {
            piston: Some(cfg),
            bc: Some(bc.to_string()),
            series: Some(ctl),
            ..RecordConfig::default()
        },
        results,
    };
    Ok((record, csv))
}

fn curve_rows(
    args: &ForceArgs,
    bc: BoundaryCondition,
    ctl: &SeriesControl,
    grid: &[f64],
) -> Result<Vec<CurveRow>, String> {
    match args.quantity {
        CurveQuantity::Force => grid
            .iter()
            .map(|&d| {
                let cfg = build_piston(args, d)?;
                let f = piston_force(&cfg, bc, ctl).map_err(|e| e.to_string())?;
                Ok(CurveRow {
                    d,
                    coefficient: f.coefficient,
                    scale: "hbar*c/length^2".into(),
                    error: f.error,
                    provenance: method_name(f.method).into(),
                })
            })
            .collect(),
        CurveQuantity::Energy => match args.geometry {
            HeadGeometry::HalfCylinderHead => {
                let cfg = build_piston(args, grid[0])?;
                let pts = halfcyl_force_profile(&cfg, bc, ctl, grid).map_err(|e| e.to_string())?;
                Ok(pts
                    .into_iter()
                    .map(|p| CurveRow {
                        d: p.d,
                        coefficient: p.energy.coefficient,
                        scale: p.energy.scale.to_string(),
                        error: p.energy.truncation_error,
                        provenance: p.provenance.to_string(),
                    })
                    .collect())
            }
            _ => grid
                .iter()
                .map(|&d| {
                    let cfg = build_piston(args, d)?;
                    let e = subtracted_energy(&cfg, bc, ctl).map_err(|e| e.to_string())?;
                    Ok(CurveRow {
                        d,
                        coefficient: e.energy.coefficient,
                        scale: e.energy.scale.to_string(),
                        error: e.energy.truncation_error,
                        provenance: e.provenance.to_string(),
                    })
                })
                .collect(),
        },
    }
}

fn cmd_verify(args: &VerifyArgs, cli: &Cli) -> ExitCode {
    let only = match &args.only {
        None => None,
        Some(name) => match Group::parse(name) {
            Some(g) => Some(g),
            None => return usage_error(&format!("unknown check group `{name}`")),
        },
    };
    let checks = verify::run(only);
    let mut failed = 0;
    println!(
        "{:<4} {:<45} {:>15} {:>15} {:>10} {:>8}",
        "", "check", "measured", "target", "tol", "time"
    );
    for c in &checks {
        if !c.passed {
            failed += 1;
        }
        println!(
            "{:<4} {:<45} {:>15.6e} {:>15.6e} {:>10.2e} {:>7.2}s",
            if c.passed { "PASS" } else { "FAIL" },
            c.id,
            c.measured,
            c.target,
            c.tolerance,
            c.seconds
        );
    }
    println!("{} checks, {} failed", checks.len(), failed);

    if let Some(path) = &cli.json {
        #[derive(serde::Serialize)]
        struct VerifyRecord<'a> {
            command: &'static str,
            only: Option<&'a str>,
            checks: &'a [verify::CheckResult],
        }
        let rec = VerifyRecord {
            command: "verify",
            only: args.only.as_deref(),
            checks: &checks,
        };
        let mut body = serde_json::to_string_pretty(&rec).expect("serializable");
        body.push('\n');
        if let Err(e) = std::fs::write(path, body) {
            return usage_error(&format!("cannot write {}: {e}", path.display()));
        }
    }
    if failed > 0 {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

fn cmd_oracle(args: &OracleArgs, file: &FileConfig) -> Result<(RunRecord, Option<String>), String> {
    let bc: BoundaryCondition = args.bc.into();
    let base = file.oracle(OracleControl::default())?;
    let octl = OracleControl {
        lambda0_factor: args.lambda0_factor.unwrap_or(base.lambda0_factor),
        levels: args.levels.unwrap_or(base.levels),
        ratio: args.ratio.unwrap_or(base.ratio),
        regulator: match args.regulator {
            None => base.regulator,
            Some(RegulatorArg::Abel) => Regulator::Abel,
            Some(RegulatorArg::Gauss) => Regulator::Gauss,
        },
    };

    if let Some(lengths) = &args.lengths {
        let lambda = args.lambda.ok_or("--lengths mode needs --lambda")?;
        let e =
            regularized_energy(lengths, bc, octl.regulator, lambda).map_err(|e| e.to_string())?;
        let record = RunRecord {
            command: "oracle".into(),
            config: RecordConfig {
                bc: Some(bc.to_string()),
                oracle: Some(octl),
                ..RecordConfig::default()
            },
            results: vec![ResultRow::new(
                "damped-mode-sum",
                e,
                "hbar*c/length",
                0.0,
                "oracle",
            )],
        };
        return Ok((record, None));
    }

    let (Some(d), Some(h)) = (args.d, args.big_h) else {
        return Err("oracle needs either --lengths/--lambda or --d/--H".into());
    };
    let est = oracle_piston_energy(d, h, args.l2, args.l3, bc, &octl).map_err(|e| e.to_string())?;
    let cfg = PistonConfig::BoxFlatHead {
        d,
        h,
        l2: args.l2,
        l3: args.l3,
    };
    let record = RunRecord {
        command: "oracle".into(),
        config: RecordConfig {
            piston: Some(cfg),
            bc: Some(bc.to_string()),
            oracle: Some(octl),
            ..RecordConfig::default()
        },
        results: vec![ResultRow::new(
            "subtracted-energy",
            est.value,
            "hbar*c/length",
            est.error_bar,
            "oracle",
        )],
    };
    Ok((record, None))
}
