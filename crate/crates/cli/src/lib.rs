//! The `neumann` command line: argument types, the six subcommands and
//! their JSON reports. `main.rs` only parses, dispatches and maps the
//! outcome to an exit code.

pub mod crossval;
pub mod shapes;

use std::f64::consts::PI;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use neumann_core::bounds::{bound_set, midrange_certificate, width_condition, TARGET};
use neumann_core::certify::{self, small_a_certificate, write_csv, BracketRule, LipSource, SweepConfig, ZoneName};
use neumann_core::fem::{self, conjecture_scan, mu1_fem, triangulate};
use neumann_core::geometry::{perimeter_of, polygon_from_json, signed_area, zigzag_domain, ConvexPolygon, Point2};
use neumann_core::{FullVerdict, GeometryError};
use serde_json::{json, Value};
use thiserror::Error;

pub use shapes::Shape;

/// Exit code for a failed verdict or tolerance.
pub const EXIT_VERDICT: i32 = 2;
/// Exit code for an operational error.
pub const EXIT_ERROR: i32 = 1;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] neumann_core::Error),
    #[error("{0} is not convex")]
    NotConvex(String),
    #[error("{0}")]
    Usage(String),
}

impl From<GeometryError> for CliError {
    fn from(e: GeometryError) -> Self {
        CliError::Core(e.into())
    }
}

impl From<neumann_core::FemError> for CliError {
    fn from(e: neumann_core::FemError) -> Self {
        CliError::Core(e.into())
    }
}

impl From<neumann_core::CertifyError> for CliError {
    fn from(e: neumann_core::CertifyError) -> Self {
        CliError::Core(e.into())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Core(e.into())
    }
}

#[derive(Debug, Parser)]
#[command(name = "neumann", version, about = "Neumann eigenvalue certificate, bounds and FEM oracle")]
pub struct Cli {
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Grid certification of F < 0 plus the small-a and midrange certificates.
    Verify(VerifyArgs),
    /// Metrics and the closed-form eigenvalue bounds of a convex polygon.
    Bounds(BoundsArgs),
    /// Cross-check every closed form against adaptive quadrature.
    Crossval(CrossvalArgs),
    /// First nonzero Neumann eigenvalue by P1 finite elements.
    Fem(FemArgs),
    /// FEM scan of P²μ₁ over random shapes with two symmetry axes.
    Sweep(SweepArgs),
    /// P²μ₁ of the non-convex zigzag square, which beats 16π².
    DemoNonexistence(DemoArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ZoneSel {
    All,
    #[value(name = "I")]
    I,
    #[value(name = "II")]
    II,
    #[value(name = "III")]
    III,
}

impl ZoneSel {
    fn includes(self, z: ZoneName) -> bool {
        match self {
            ZoneSel::All => true,
            ZoneSel::I => z == ZoneName::I,
            ZoneSel::II => z == ZoneName::II,
            ZoneSel::III => z == ZoneName::III,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LipArg {
    #[value(name = "paper")]
    Reference,
    Computed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BracketArg {
    IntervalSum,
    Separated,
}

impl From<BracketArg> for BracketRule {
    fn from(b: BracketArg) -> Self {
        match b {
            BracketArg::IntervalSum => BracketRule::IntervalSum,
            BracketArg::Separated => BracketRule::SeparatedBrackets,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    pub zone: ZoneSel,
    /// Lipschitz constants: the published table or the interval assembly.
    #[arg(long, value_enum, default_value = "paper")]
    pub lip: LipArg,
    /// How the computed constants combine the bracketed terms.
    #[arg(long, value_enum, default_value = "interval-sum")]
    pub bracket: BracketArg,
    /// Worker threads, 0 for one per core.
    #[arg(long, env = "NEUMANN_CERT_WORKERS", default_value_t = 0)]
    pub workers: usize,
    /// Write every grid value as "a,c,F" rows, zones in order.
    #[arg(long)]
    pub dump_grid: Option<PathBuf>,
    #[arg(long, default_value_t = 1e-9)]
    pub slack: f64,
}

impl Default for VerifyArgs {
    fn default() -> Self {
        Self {
            zone: ZoneSel::All,
            lip: LipArg::Reference,
            bracket: BracketArg::IntervalSum,
            workers: 0,
            dump_grid: None,
            slack: 1e-9,
        }
    }
}

#[derive(Debug, Clone, Args)]
#[group(id = "source", required = true, multiple = false)]
pub struct ShapeSource {
    /// JSON file {"vertices": [[x, y], ...]} in counter-clockwise order.
    #[arg(long, group = "source")]
    pub polygon: Option<PathBuf>,
    /// square, triangle, disk, rectangle:L:W, regular:N, hexagon:A, omega:A,
    /// trapezoid:A:C or zigzag:A:N.
    #[arg(long, group = "source")]
    pub shape: Option<Shape>,
}

impl ShapeSource {
    pub fn shape(s: Shape) -> Self {
        Self {
            polygon: None,
            shape: Some(s),
        }
    }

    fn label(&self) -> String {
        match (&self.polygon, &self.shape) {
            (Some(p), _) => p.display().to_string(),
            (None, Some(s)) => format!("{s:?}"),
            (None, None) => String::new(),
        }
    }

    fn vertices(&self) -> Result<Vec<Point2>, CliError> {
        match (&self.polygon, &self.shape) {
            (Some(p), _) => read_vertices(p),
            (None, Some(s)) => s.vertices(),
            (None, None) => Err(CliError::Usage("one of --polygon or --shape is required".into())),
        }
    }

    fn convex(&self) -> Result<ConvexPolygon, CliError> {
        match (&self.polygon, &self.shape) {
            (Some(p), _) => Ok(ConvexPolygon::new(read_vertices(p)?)?),
            (None, Some(s)) => s.convex(),
            (None, None) => Err(CliError::Usage("one of --polygon or --shape is required".into())),
        }
    }
}

fn read_vertices(path: &Path) -> Result<Vec<Point2>, CliError> {
    let text = std::fs::read_to_string(path)?;
    Ok(polygon_from_json(&text)?)
}

#[derive(Debug, Clone, Args)]
pub struct BoundsArgs {
    #[command(flatten)]
    pub source: ShapeSource,
    /// Also compute μ₁ by FEM and check the sandwich.
    #[arg(long)]
    pub fem: bool,
    /// FEM mesh size; defaults to 2% of the diameter.
    #[arg(long)]
    pub h: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct CrossvalArgs {
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    /// Extra points within 1e-4 of each removable singularity.
    #[arg(long, default_value_t = crossval::NEAR_PER_LINE)]
    pub near: usize,
}

#[derive(Debug, Clone, Args)]
pub struct FemArgs {
    #[command(flatten)]
    pub source: ShapeSource,
    #[arg(long, default_value_t = 0.02)]
    pub h: f64,
    /// Refine once and extrapolate in h².
    #[arg(long)]
    pub richardson: bool,
    /// Write the mesh as {"nodes": [...], "elements": [...]}.
    #[arg(long)]
    pub dump_mesh: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[arg(long, default_value_t = 100)]
    pub count: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Mesh size relative to each shape's diameter.
    #[arg(long, default_value_t = 0.05)]
    pub h_rel: f64,
}

#[derive(Debug, Clone, Args)]
pub struct DemoArgs {
    #[arg(long, default_value_t = 0.2)]
    pub a: f64,
    #[arg(long, default_value_t = 40)]
    pub n: usize,
    /// Mesh size; defaults to a/(4n), the coarsest that resolves the teeth.
    #[arg(long)]
    pub h: Option<f64>,
    #[arg(long)]
    pub richardson: bool,
}

/// A JSON report and whether every verdict and tolerance in it holds.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub json: Value,
    pub pass: bool,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        if self.pass {
            0
        } else {
            EXIT_VERDICT
        }
    }
}

pub fn run(cli: &Cli) -> Result<Report, CliError> {
    match &cli.command {
        Command::Verify(a) => cmd_verify(a),
        Command::Bounds(a) => cmd_bounds(a),
        Command::Crossval(a) => cmd_crossval(a),
        Command::Fem(a) => cmd_fem(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::DemoNonexistence(a) => cmd_demo_nonexistence(a),
    }
}

/// Runs the selected zone sweeps; the small-a and midrange certificates are
/// always included since they are cheap.
pub fn cmd_verify(args: &VerifyArgs) -> Result<Report, CliError> {
    let lip_source = match args.lip {
        LipArg::Reference => LipSource::Reference,
        LipArg::Computed => LipSource::Computed(args.bracket.into()),
    };
    let cfg = SweepConfig {
        lip_source,
        workers: args.workers,
        slack: args.slack,
        keep_values: args.dump_grid.is_some(),
        ..SweepConfig::default()
    };
    let outs = certify::zones()
        .iter()
        .filter(|z| args.zone.includes(z.name))
        .map(|z| certify::sweep(z, &cfg))
        .collect::<Result<Vec<_>, _>>()?;
    if let Some(path) = &args.dump_grid {
        write_csv(path, &outs)?;
    }
    let small_a = small_a_certificate();
    let midrange = midrange_certificate();
    let zones: Vec<_> = outs.into_iter().map(|o| o.report).collect();
    let verdict = small_a.verdict && midrange.verdict && zones.iter().all(|z| z.verdict);
    let full = FullVerdict {
        small_a,
        zones,
        midrange,
        verdict,
    };
    let mut json = serde_json::to_value(&full).map_err(neumann_core::Error::from)?;
    json["failures"] = json!(full.failures());
    json["lip_source"] = json!(match args.lip {
        LipArg::Reference => "paper",
        LipArg::Computed => "computed",
    });
    Ok(Report { json, pass: verdict })
}

pub fn cmd_bounds(args: &BoundsArgs) -> Result<Report, CliError> {
    let poly = args.source.convex()?;
    let m = poly.metrics();
    let mut b = bound_set(&m);
    let mut pass = b.is_ordered();
    let mut fem_json = Value::Null;
    if args.fem {
        let h = args.h.unwrap_or(0.02 * m.diameter);
        let r = mu1_fem(poly.vertices(), h, true)?;
        let mu = r.best();
        b = b.with_fem(mu);
        let sandwich = b.pw_lower <= 1.01 * mu && mu <= 1.01 * b.min_upper();
        pass &= sandwich;
        fem_json = json!({ "result": r, "mu1": mu, "p2_mu1": b.scaled(mu), "sandwich": sandwich });
    }
    let json = json!({
        "source": args.source.label(),
        "metrics": m,
        "bounds": b,
        "scaled": {
            "pw_lower": b.scaled(b.pw_lower),
            "sw_upper": b.scaled(b.sw_upper),
            "cheng_upper": b.scaled(b.cheng_upper),
            "width_upper": b.scaled(b.width_upper),
        },
        "target": TARGET,
        "p2_over_area": m.perimeter * m.perimeter / m.area,
        "width_condition": width_condition(&m),
        "ordered": b.is_ordered(),
        "fem": fem_json,
    });
    Ok(Report { json, pass })
}

pub fn cmd_crossval(args: &CrossvalArgs) -> Result<Report, CliError> {
    let r = crossval::crossval(args.samples, args.near, args.seed)?;
    let pass = r.pass;
    let json = serde_json::to_value(&r).map_err(neumann_core::Error::from)?;
    Ok(Report { json, pass })
}

pub fn cmd_fem(args: &FemArgs) -> Result<Report, CliError> {
    let vertices = args.source.vertices()?;
    if let Some(path) = &args.dump_mesh {
        triangulate(&vertices, args.h)?.write_json(path)?;
    }
    let r = mu1_fem(&vertices, args.h, args.richardson)?;
    let p = perimeter_of(&vertices);
    let area = signed_area(&vertices);
    let pass = r.zero_mode <= 1e-9 * r.mu1 && r.residual <= fem::RESIDUAL_TOL;
    let json = json!({
        "source": args.source.label(),
        "h_target": args.h,
        "result": r,
        "mu1": r.best(),
        "perimeter": p,
        "area": area,
        "p2_mu1": p * p * r.best(),
        "target": TARGET,
    });
    Ok(Report { json, pass })
}

pub fn cmd_sweep(args: &SweepArgs) -> Result<Report, CliError> {
    let rows = conjecture_scan(args.count, args.seed, args.h_rel)?;
    let max = rows.iter().map(|r| r.p2_mu1).fold(f64::NEG_INFINITY, f64::max);
    let violations: Vec<usize> = rows.iter().filter(|r| r.p2_mu1 > 1.01 * TARGET).map(|r| r.id).collect();
    let json = json!({
        "seed": args.seed,
        "count": args.count,
        "h_rel": args.h_rel,
        "target": TARGET,
        "max_p2_mu1": max,
        "violations": violations,
        "rows": rows,
    });
    Ok(Report {
        json,
        pass: violations.is_empty(),
    })
}

pub fn cmd_demo_nonexistence(args: &DemoArgs) -> Result<Report, CliError> {
    let h = args.h.unwrap_or(args.a / (4.0 * args.n as f64));
    let poly = zigzag_domain(args.a, args.n)?;
    let r = fem::mu1_zigzag(args.a, args.n, h, args.richardson)?;
    let p = poly.perimeter();
    let p2mu = p * p * r.best();
    let exceeds = p2mu > TARGET;
    let json = json!({
        "a": args.a,
        "n": args.n,
        "h": h,
        "result": r,
        "perimeter": p,
        "area": poly.area(),
        "p2_mu1": p2mu,
        "limit": PI * PI / (args.a * args.a),
        "target": TARGET,
        "exceeds_target": exceeds,
    });
    Ok(Report { json, pass: exceeds })
}

/// Writes the report to `output`, or pretty-prints it to stdout.
pub fn emit(report: &Report, output: Option<&Path>) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(&report.json).map_err(neumann_core::Error::from)?;
    match output {
        Some(path) => std::fs::write(path, text + "\n")?,
        None => println!("{text}"),
    }
    Ok(())
}
