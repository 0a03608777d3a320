//! Argument parsing and the `ospring` subcommands.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use origami_spring::ejector::{calibrate_friction, ejection_distance, Ejector};
use origami_spring::fitting::{fit_series, FitOptions, FreeExtension, MeasurementSeries, TensionRange};
use origami_spring::geometry::{sample, total_twist};
use origami_spring::mechanics::force;
use origami_spring::pattern::{build_spring_pattern, validate_pattern, Chirality};
use origami_spring::{ExtensionRatio, FacetFamily, SpringSpec, Variant};
use serde::Serialize;

use crate::constants::{resolve_params, Constants, Overrides};
use crate::error::{CliError, Result};
use crate::{fold, measurements, svg};

#[derive(Debug, Parser)]
#[command(name = "ospring", version, about = "Interleaved origami spring model")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Kinematic quantities over an extension-ratio grid.
    Geometry(GeometryArgs),
    /// Normalized force-extension curve.
    Force(ForceArgs),
    /// Fit z0, k_c, k_F and k_B to a `z_mm,force_N` file.
    Fit(FitArgs),
    /// Predict or calibrate the ejection distance of a payload.
    Eject(EjectArgs),
    /// Write FOLD and SVG crease patterns.
    Pattern(PatternArgs),
    /// Print the built-in constant set.
    Constants(ConstantsArgs),
}

fn parse_family(s: &str) -> std::result::Result<FacetFamily, String> {
    s.parse::<usize>()
        .ok()
        .and_then(FacetFamily::from_edge_count)
        .ok_or_else(|| format!("`{s}` is not one of 4, 6, 8"))
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum VariantArg {
    Ios,
    Rios,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Ios => Variant::Ios,
            VariantArg::Rios => Variant::Rios,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ChiralityArg {
    Right,
    Left,
}

#[derive(Debug, Args)]
pub struct SpringArgs {
    /// Facet edge count.
    #[arg(long, default_value = "4", value_parser = parse_family)]
    pub family: FacetFamily,
    #[arg(long, value_enum, default_value_t = VariantArg::Ios)]
    pub variant: VariantArg,
    /// Facet circumradius, mm.
    #[arg(long, default_value_t = 10.0)]
    pub r0: f64,
    /// Unit cells.
    #[arg(long, default_value_t = 8)]
    pub cells: u32,
    /// Helix-length coefficient; defaults to the constant set.
    #[arg(long)]
    pub lambda: Option<f64>,
    /// JSON constant set replacing the built-in one.
    #[arg(long)]
    pub constants: Option<PathBuf>,
}

impl SpringArgs {
    fn resolve(&self) -> Result<(SpringSpec, Constants)> {
        let constants = Constants::load(self.constants.as_deref())?;
        let usage = |e: origami_spring::Error| CliError::Usage(e.to_string());
        let spec = SpringSpec::new(self.family, self.variant.into(), self.r0, self.cells).map_err(usage)?;
        let lambda = self.lambda.or_else(|| constants.lambda(self.family));
        let spec = match lambda {
            Some(l) => spec.with_lambda(l).map_err(usage)?,
            None => spec,
        };
        Ok((spec, constants))
    }
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// `min:max:steps` over the extension ratio.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl FromStr for Grid {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let parts: Vec<_> = s.split(':').collect();
        let [min, max, steps] = parts[..] else {
            return Err(format!("`{s}` is not min:max:steps"));
        };
        let num = |t: &str| t.trim().parse::<f64>().map_err(|_| format!("`{t}` is not a number"));
        let (min, max) = (num(min)?, num(max)?);
        let steps: usize = steps.trim().parse().map_err(|_| format!("`{steps}` is not a step count"))?;
        if !(min >= 0.0) || !(max < 1.0) || !(min < max) {
            return Err(format!("grid needs 0 <= min < max < 1, got {min}:{max}"));
        }
        if steps < 2 {
            return Err(format!("grid needs at least 2 steps, got {steps}"));
        }
        Ok(Self { min, max, steps })
    }
}

impl Grid {
    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        let step = (self.max - self.min) / (self.steps - 1) as f64;
        (0..self.steps).map(move |i| {
            if i + 1 == self.steps {
                self.max
            } else {
                self.min + i as f64 * step
            }
        })
    }
}

#[derive(Debug, Args)]
pub struct GeometryArgs {
    #[command(flatten)]
    pub spring: SpringArgs,
    #[arg(long, default_value = "0:0.99:100")]
    pub grid: Grid,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct StiffnessOverrides {
    /// Free extension ratio.
    #[arg(long)]
    pub z0: Option<f64>,
    /// Compression constant, N/mm.
    #[arg(long)]
    pub kc: Option<f64>,
    /// Folding stiffness.
    #[arg(long)]
    pub kf: Option<f64>,
    /// Buckling stiffness (IOS).
    #[arg(long)]
    pub kb: Option<f64>,
}

impl From<&StiffnessOverrides> for Overrides {
    fn from(o: &StiffnessOverrides) -> Self {
        Self {
            z_tilde_0: o.z0,
            k_c: o.kc,
            k_f: o.kf,
            k_b: o.kb,
        }
    }
}

#[derive(Debug, Args)]
pub struct ForceArgs {
    #[command(flatten)]
    pub spring: SpringArgs,
    #[arg(long, default_value = "0:0.95:96")]
    pub grid: Grid,
    #[command(flatten)]
    pub stiffness: StiffnessOverrides,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct FitArgs {
    #[command(flatten)]
    pub spring: SpringArgs,
    /// Measurement file with header `z_mm,force_N`.
    pub input: PathBuf,
    /// Fix the free extension ratio instead of locating the zero crossing.
    #[arg(long)]
    pub z0: Option<f64>,
    /// Gap above z0 before tension points are used.
    #[arg(long, default_value_t = 0.02)]
    pub tension_offset: f64,
    /// Largest extension ratio used in the tension fit.
    #[arg(long, default_value_t = 0.95)]
    pub tension_max: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct EjectArgs {
    #[command(flatten)]
    pub spring: SpringArgs,
    /// Friction coefficient.
    #[arg(long)]
    pub mu: Option<f64>,
    /// Solve for the friction coefficient from --observed.
    #[arg(long, requires = "observed", conflicts_with = "mu")]
    pub calibrate: bool,
    /// Observed ejection distance, mm.
    #[arg(long)]
    pub observed: Option<f64>,
    /// Spring mass, g; defaults to the constant set.
    #[arg(long)]
    pub spring_mass: Option<f64>,
    /// Payload mass, g; defaults to the hexagram.
    #[arg(long)]
    pub payload_mass: Option<f64>,
    /// Gravitational acceleration, m/s^2.
    #[arg(long, default_value_t = origami_spring::reference::GRAVITY)]
    pub g: f64,
    #[command(flatten)]
    pub stiffness: StiffnessOverrides,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct PatternArgs {
    #[command(flatten)]
    pub spring: SpringArgs,
    #[arg(long, value_enum, default_value_t = ChiralityArg::Right)]
    pub chirality: ChiralityArg,
    /// Base name of the output files; derived from the spring when absent.
    #[arg(long)]
    pub name: Option<String>,
    /// Output directory.
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct ConstantsArgs {
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn emit(out: Option<&Path>, text: &str, stdout: &mut dyn Write) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn table<T: Serialize>(rows: &[T], format: Format) -> Result<String> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for r in rows {
                w.serialize(r)?;
            }
            let bytes = w.into_inner().map_err(|e| CliError::Internal(e.to_string()))?;
            Ok(String::from_utf8(bytes).expect("CSV output is UTF-8"))
        }
        Format::Json => {
            let mut s = serde_json::to_string_pretty(rows)?;
            s.push('\n');
            Ok(s)
        }
    }
}

fn key_values(rows: &[(&str, String)], header: [&str; 2]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for (k, v) in rows {
        w.write_record([*k, v.as_str()]).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("UTF-8")
}

#[derive(Serialize)]
struct GeometryRow {
    z_tilde: f64,
    phi: f64,
    phi_prime: f64,
    r_ratio: f64,
    theta_cell: f64,
    theta_total: f64,
    omega1: f64,
    #[serde(rename = "omegaB")]
    omega_b: f64,
    omega2: f64,
    phi_deg: f64,
    phi_prime_deg: f64,
    theta_cell_deg: f64,
    theta_total_deg: f64,
    omega1_deg: f64,
    #[serde(rename = "omegaB_deg")]
    omega_b_deg: f64,
    omega2_deg: f64,
}

pub fn cmd_geometry(args: &GeometryArgs, stdout: &mut dyn Write) -> Result<()> {
    let (spec, _) = args.spring.resolve()?;
    let mut rows = Vec::with_capacity(args.grid.steps);
    for z in args.grid.points() {
        let zt = ExtensionRatio::new(z)?;
        let s = sample(spec.family(), zt)?;
        let theta_total = total_twist(&spec, zt)?;
        rows.push(GeometryRow {
            z_tilde: z,
            phi: s.phi,
            phi_prime: s.phi_prime,
            r_ratio: s.r_ratio,
            theta_cell: s.theta_cell,
            theta_total,
            omega1: s.omega1,
            omega_b: s.omega_b,
            omega2: s.omega2,
            phi_deg: s.phi.to_degrees(),
            phi_prime_deg: s.phi_prime.to_degrees(),
            theta_cell_deg: s.theta_cell.to_degrees(),
            theta_total_deg: theta_total.to_degrees(),
            omega1_deg: s.omega1.to_degrees(),
            omega_b_deg: s.omega_b.to_degrees(),
            omega2_deg: s.omega2.to_degrees(),
        });
    }
    emit(args.output.out.as_deref(), &table(&rows, args.output.format)?, stdout)
}

#[derive(Serialize)]
struct ForceRow {
    z_tilde: f64,
    #[serde(rename = "F_tilde")]
    f_tilde: f64,
    region: &'static str,
}

pub fn cmd_force(args: &ForceArgs, stdout: &mut dyn Write) -> Result<()> {
    let (spec, constants) = args.spring.resolve()?;
    let params = resolve_params(&constants, &spec, (&args.stiffness).into())?;
    let mut rows = Vec::with_capacity(args.grid.steps);
    for z in args.grid.points() {
        let (f, region) = force(&spec, ExtensionRatio::new(z)?, &params)?;
        rows.push(ForceRow {
            z_tilde: z,
            f_tilde: f,
            region: region.as_str(),
        });
    }
    emit(args.output.out.as_deref(), &table(&rows, args.output.format)?, stdout)
}

#[derive(Serialize)]
struct FitReport {
    family: usize,
    variant: String,
    z_tilde_0: f64,
    #[serde(rename = "xi_F")]
    xi_f: f64,
    #[serde(rename = "xi_B", skip_serializing_if = "Option::is_none")]
    xi_b: Option<f64>,
    k_c: f64,
    #[serde(rename = "k_F")]
    k_f: f64,
    #[serde(rename = "k_B", skip_serializing_if = "Option::is_none")]
    k_b: Option<f64>,
    residual_rms: f64,
    n_compression: usize,
    n_tension: usize,
    clamped: Vec<&'static str>,
}

pub fn cmd_fit(args: &FitArgs, stdout: &mut dyn Write) -> Result<()> {
    let (spec, _) = args.spring.resolve()?;
    let text = fs::read_to_string(&args.input).map_err(|e| {
        CliError::Usage(format!("cannot read {}: {e}", args.input.display()))
    })?;
    let points = measurements::read_measurements(&text)?;
    let series = MeasurementSeries::new(spec, points)?;
    let options = FitOptions {
        tension_range: TensionRange {
            offset_above_free: args.tension_offset,
            upper: args.tension_max,
        },
        free_extension: args.z0.map_or(FreeExtension::CompressionIntercept, FreeExtension::Fixed),
    };
    let fit = fit_series(&series, &options)?;
    for name in &fit.clamped {
        eprintln!("warning: unconstrained estimate of {name} was negative; clamped to 0");
    }
    let p = fit.params;
    let report = FitReport {
        family: spec.family().edge_count(),
        variant: spec.variant().to_string(),
        z_tilde_0: p.z_tilde_0,
        xi_f: p.xi_f,
        xi_b: p.xi_b,
        k_c: p.k_c,
        k_f: p.k_f,
        k_b: p.k_b,
        residual_rms: fit.residual_rms,
        n_compression: fit.region_counts.0,
        n_tension: fit.region_counts.1,
        clamped: fit.clamped.clone(),
    };
    let text = match args.output.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report)?;
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut rows = vec![("z_tilde_0", p.z_tilde_0.to_string()), ("xi_F", p.xi_f.to_string())];
            if let Some(x) = p.xi_b {
                rows.push(("xi_B", x.to_string()));
            }
            rows.push(("k_c", p.k_c.to_string()));
            rows.push(("k_F", p.k_f.to_string()));
            if let Some(k) = p.k_b {
                rows.push(("k_B", k.to_string()));
            }
            rows.push(("residual_rms", fit.residual_rms.to_string()));
            rows.push(("n_compression", fit.region_counts.0.to_string()));
            rows.push(("n_tension", fit.region_counts.1.to_string()));
            key_values(&rows, ["param", "value"])
        }
    };
    emit(args.output.out.as_deref(), &text, stdout)
}

#[derive(Serialize)]
struct EjectReport {
    mu: f64,
    calibrated: bool,
    z0_mm: f64,
    x_ej_mm: f64,
    x_ej_over_z0: f64,
}

pub fn cmd_eject(args: &EjectArgs, stdout: &mut dyn Write) -> Result<()> {
    let (spec, constants) = args.spring.resolve()?;
    let params = resolve_params(&constants, &spec, (&args.stiffness).into())?;
    let spring_mass = match args.spring_mass {
        Some(g) => g * 1e-3,
        None => constants.spring_mass_kg(spec.family())?,
    };
    let payload_mass = match args.payload_mass {
        Some(g) => g * 1e-3,
        None => constants.mass_kg("hexagram")?,
    };
    let ejector = Ejector::for_spring(&spec, &params, spring_mass, payload_mass)
        .and_then(|e| e.with_gravity(args.g))
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let (mu, calibrated) = match (args.mu, args.calibrate, args.observed) {
        (Some(mu), false, _) => (mu, false),
        (None, true, Some(x)) => (calibrate_friction(&ejector, x)?, true),
        _ => {
            return Err(CliError::Usage(
                "missing --mu; the friction coefficient has no default. \
                 To infer it from a measured distance run `ospring eject --calibrate --observed <mm>`"
                    .into(),
            ))
        }
    };
    let x = ejection_distance(&ejector, mu).map_err(|e| CliError::Usage(e.to_string()))?;
    if calibrated {
        let observed = args.observed.unwrap_or_default();
        if ((x - observed) / observed).abs() > 1e-9 {
            return Err(CliError::Internal(format!(
                "calibrated friction reproduces {x} mm instead of {observed} mm"
            )));
        }
    }
    let report = EjectReport {
        mu,
        calibrated,
        z0_mm: ejector.z0(),
        x_ej_mm: x,
        x_ej_over_z0: x / ejector.z0(),
    };
    let text = match args.output.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report)?;
            s.push('\n');
            s
        }
        Format::Csv => key_values(
            &[
                ("mu", report.mu.to_string()),
                ("calibrated", report.calibrated.to_string()),
                ("z0_mm", report.z0_mm.to_string()),
                ("x_ej_mm", report.x_ej_mm.to_string()),
                ("x_ej_over_z0", report.x_ej_over_z0.to_string()),
            ],
            ["quantity", "value"],
        ),
    };
    emit(args.output.out.as_deref(), &text, stdout)
}

pub fn cmd_pattern(args: &PatternArgs, stdout: &mut dyn Write) -> Result<()> {
    let (spec, _) = args.spring.resolve()?;
    let chirality = match args.chirality {
        ChiralityArg::Right => Chirality::Right,
        ChiralityArg::Left => Chirality::Left,
    };
    let pattern = build_spring_pattern(&spec, chirality)?;
    let violations = validate_pattern(&pattern);
    let name = args.name.clone().unwrap_or_else(|| {
        format!("{}-{}-n{}", spec.variant().to_string().to_lowercase(), spec.family(), spec.cells())
    });
    if !violations.is_empty() {
        writeln!(stdout, "{}: {} violation(s)", name, violations.len())?;
        for v in &violations {
            writeln!(stdout, "  {v:?}")?;
        }
        return Err(CliError::Data(format!("pattern {name} failed validation")));
    }
    if !args.out.is_dir() {
        return Err(CliError::Usage(format!("{} is not a directory", args.out.display())));
    }
    let slice = std::slice::from_ref(&pattern);
    let fold_path = args.out.join(format!("{name}.fold"));
    let svg_path = args.out.join(format!("{name}.svg"));
    fs::write(&fold_path, fold::export_fold(slice))?;
    fs::write(&svg_path, svg::export_svg(slice))?;
    writeln!(
        stdout,
        "{name}: {} ribbons, {} edges, 0 violations\nwrote {}\nwrote {}",
        pattern.ribbon_count(),
        pattern.edges.len(),
        fold_path.display(),
        svg_path.display()
    )?;
    Ok(())
}

pub fn cmd_constants(args: &ConstantsArgs, stdout: &mut dyn Write) -> Result<()> {
    emit(args.out.as_deref(), crate::constants::EMBEDDED, stdout)
}

pub fn run(cli: &Cli, stdout: &mut dyn Write) -> Result<()> {
    match &cli.command {
        Command::Geometry(a) => cmd_geometry(a, stdout),
        Command::Force(a) => cmd_force(a, stdout),
        Command::Fit(a) => cmd_fit(a, stdout),
        Command::Eject(a) => cmd_eject(a, stdout),
        Command::Pattern(a) => cmd_pattern(a, stdout),
        Command::Constants(a) => cmd_constants(a, stdout),
    }
}
