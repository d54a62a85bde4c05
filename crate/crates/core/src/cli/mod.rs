//! The `blaschke-pm` command line: product specs in, JSON reports (and SVG plots) out.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::barcode::{theorem_a_barcode, Barcode};
use crate::blaschke::{theta_of_t, time_of_threshold, BlaschkeProduct};
use crate::critical::critical_points;
use crate::distance::{interleaving_distance_with_witness, order2_distance};
use crate::error::Error;
use crate::hyperbolic::{rho_unchecked, ComplexPoint};
use crate::levelset::{
    build_grid, component_diameter, euler_characteristic, grid_sweep, sublevel_components, write_grid_dump,
};
use crate::verify::{run_verify, Fault, VerifyConfig};

pub mod spec;
pub mod svg;

pub use spec::{parse_product, product_to_json, read_product};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

/// Thresholds scanned when `--thresholds` is not given.
pub const DEFAULT_THRESHOLDS: [f64; 11] = [0.02, 0.05, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9];

#[derive(Debug, Parser)]
#[command(name = "blaschke-pm", version, about = "Persistence of level sets of finite Blaschke products")]
pub struct Cli {
    #[command(flatten)]
    pub config: RunConfig,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct RunConfig {
    /// Grid resolution N of the level-set oracle.
    #[arg(long, global = true, default_value_t = 1024)]
    pub grid: usize,
    /// Boundary samples for sup-norm estimates.
    #[arg(long, global = true, default_value_t = 16384)]
    pub samples: usize,
    /// Root-finding tolerance.
    #[arg(long, global = true, default_value_t = 1e-10)]
    pub tol: f64,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Also write every report (and plot) into this directory.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Write SVG plots (requires --out).
    #[arg(long, global = true)]
    pub svg: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Barcode of the sublevel filtration of a product.
    Barcode { spec: PathBuf },
    /// Interleaving distance of two products, with a matching witness.
    Distance { first: PathBuf, second: PathBuf },
    /// Grid scan of the sublevel sets {|B| < theta}.
    Scan {
        spec: PathBuf,
        /// Comma-separated thresholds in (0, 1).
        #[arg(long, value_delimiter = ',')]
        thresholds: Option<Vec<f64>>,
        /// Also write the grid as a binary dump (requires --out).
        #[arg(long)]
        dump: bool,
    },
    /// Run the property suites.
    Verify {
        /// Run only the named suites (repeatable).
        #[arg(long = "suite")]
        suites: Vec<String>,
        /// Deliberately perturb a formula constant, to check that the suites notice.
        #[arg(long, value_name = "FAULT")]
        inject_fault: Option<String>,
        /// List the suite names and exit.
        #[arg(long)]
        list: bool,
    },
    /// Critical points of a product.
    Critical { spec: PathBuf },
    /// Evaluate a product at points given as `re,im`.
    Eval {
        spec: PathBuf,
        #[arg(long = "at", value_name = "RE,IM", required = true)]
        points: Vec<String>,
    },
}

/// A failed command and its exit code.
#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    Input(String),
    Numerical(String),
    /// A property check failed; the report is still emitted.
    Violation(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Violation(_) => EXIT_VIOLATION,
            CliError::Input(_) => EXIT_INPUT,
            CliError::Numerical(_) => EXIT_NUMERICAL,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Numerical(m) | CliError::Violation(m) => m,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain(_) | Error::Precondition(_) | Error::LengthMismatch { .. } => CliError::Input(e.to_string()),
            Error::Singularity(_)
            | Error::Pole(_)
            | Error::NonConvergence { .. }
            | Error::IllConditioned(_)
            | Error::InvalidBar { .. } => CliError::Numerical(e.to_string()),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

/// Parses the process arguments, runs the command and returns the exit code.
pub fn main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    let stdout = std::io::stdout();
    match run(&cli, &mut stdout.lock()) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {}", e.message());
            e.exit_code()
        }
    }
}

pub fn run(cli: &Cli, stdout: &mut dyn Write) -> CliResult<()> {
    let config = &cli.config;
    if config.grid < crate::levelset::MIN_RESOLUTION {
        return Err(CliError::Input(format!("--grid must be at least {}", crate::levelset::MIN_RESOLUTION)));
    }
    if config.samples < 256 {
        return Err(CliError::Input("--samples must be at least 256".into()));
    }
    if !(config.tol > 1e-14 && config.tol < 1e-3) {
        return Err(CliError::Input(format!("--tol {} not in (1e-14, 1e-3)", config.tol)));
    }
    if config.svg && config.out.is_none() {
        return Err(CliError::Input("--svg requires --out".into()));
    }
    let load = |path: &Path| read_product(path).map_err(CliError::Input);
    match &cli.command {
        Command::Barcode { spec } => {
            let b = load(spec)?;
            let barcode = theorem_a_barcode(&b, config.tol)?;
            emit(config, stdout, "barcode", &barcode_report(&b, &barcode))?;
            if config.svg {
                write_artifact(config, "barcode.svg", svg::barcode_svg(&barcode).as_bytes())?;
            }
            Ok(())
        }
        Command::Distance { first, second } => {
            let (b1, b2) = (load(first)?, load(second)?);
            emit(config, stdout, "distance", &distance_report(&b1, &b2, config.tol)?)
        }
        Command::Scan { spec, thresholds, dump } => {
            let b = load(spec)?;
            let thresholds = thresholds.clone().unwrap_or_else(|| DEFAULT_THRESHOLDS.to_vec());
            if *dump && config.out.is_none() {
                return Err(CliError::Input("--dump requires --out".into()));
            }
            let (report, holes) = scan_report(&b, &thresholds, config, *dump)?;
            emit(config, stdout, "scan", &report)?;
            if config.svg {
                write_artifact(config, "scan.svg", svg::scan_svg(&b, &thresholds, config.grid.min(128)).as_bytes())?;
            }
            if holes {
                return Err(CliError::Violation("Euler characteristic differs from the component count".into()));
            }
            Ok(())
        }
        Command::Verify { suites, inject_fault, list } => {
            if *list {
                let names = crate::verify::suite_names();
                return write_json(stdout, &json!({ "suites": names }));
            }
            let fault = inject_fault.as_deref().map(str::parse::<Fault>).transpose()?;
            let verify = VerifyConfig {
                seed: config.seed,
                suites: suites.clone(),
                grid: config.grid,
                samples: config.samples,
                tol: config.tol,
                fault,
            };
            let report = run_verify(&verify)?;
            let mut value = json!({ "schema": "verify/v1" });
            merge(&mut value, serde_json::to_value(&report).expect("serializable"));
            emit(config, stdout, "verify", &value)?;
            if !report.passed {
                let failed: Vec<&str> = report.suites.iter().filter(|s| !s.passed).map(|s| s.name).collect();
                return Err(CliError::Violation(format!("failing suites: {}", failed.join(", "))));
            }
            Ok(())
        }
        Command::Critical { spec } => {
            let b = load(spec)?;
            emit(config, stdout, "critical", &critical_report(&b, config.tol)?)
        }
        Command::Eval { spec, points } => {
            let b = load(spec)?;
            let points = points.iter().enumerate().map(|(i, p)| parse_point(p, i)).collect::<CliResult<Vec<_>>>()?;
            emit(config, stdout, "eval", &eval_report(&b, &points)?)
        }
    }
}

fn merge(target: &mut Value, extra: Value) {
    if let (Value::Object(t), Value::Object(e)) = (target, extra) {
        t.extend(e);
    }
}

fn parse_point(text: &str, index: usize) -> CliResult<ComplexPoint> {
    let parts: Vec<&str> = text.split(',').collect();
    let parse = |s: &str| s.trim().parse::<f64>().ok().filter(|x| x.is_finite());
    match parts.as_slice() {
        [re, im] => match (parse(re), parse(im)) {
            (Some(re), Some(im)) => Ok(ComplexPoint::new(re, im)),
            _ => Err(CliError::Input(format!("--at[{index}]: expected RE,IM, found `{text}`"))),
        },
        _ => Err(CliError::Input(format!("--at[{index}]: expected RE,IM, found `{text}`"))),
    }
}

fn write_json(out: &mut dyn Write, value: &Value) -> CliResult<()> {
    let mut text = serde_json::to_string_pretty(value).expect("serializable");
    text.push('\n');
    out.write_all(text.as_bytes()).map_err(|e| CliError::Input(format!("writing output: {e}")))
}

fn write_artifact(config: &RunConfig, name: &str, bytes: &[u8]) -> CliResult<()> {
    let dir = config.out.as_ref().expect("checked by caller");
    std::fs::create_dir_all(dir).map_err(|e| CliError::Input(format!("{}: {e}", dir.display())))?;
    let path = dir.join(name);
    std::fs::write(&path, bytes).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// Prints the report and, with `--out`, writes it to `<out>/<name>.json`.
fn emit(config: &RunConfig, stdout: &mut dyn Write, name: &str, value: &Value) -> CliResult<()> {
    write_json(stdout, value)?;
    if config.out.is_some() {
        let mut buffer = Vec::new();
        write_json(&mut buffer, value)?;
        write_artifact(config, &format!("{name}.json"), &buffer)?;
    }
    Ok(())
}

fn bars_json(barcode: &Barcode) -> Value {
    Value::Array(
        barcode
            .bars()
            .iter()
            .map(|bar| {
                let (death, theta) = if bar.is_infinite() {
                    (json!("inf"), Value::Null)
                } else {
                    (json!(bar.death), json!(theta_of_t(bar.death).map(|f| f.theta).unwrap_or(0.0)))
                };
                json!({ "birth": bar.birth, "death": death, "mult": bar.multiplicity, "death_theta": theta })
            })
            .collect(),
    )
}

pub fn barcode_report(b: &BlaschkeProduct, barcode: &Barcode) -> Value {
    json!({
        "schema": "barcode/v1",
        "product": product_to_json(b),
        "degree": b.degree(),
        "bars": bars_json(barcode),
    })
}

pub fn distance_report(b1: &BlaschkeProduct, b2: &BlaschkeProduct, tol: f64) -> CliResult<Value> {
    let (result, bc1, bc2) = interleaving_distance_with_witness(b1, b2, tol)?;
    let separation = |b: &BlaschkeProduct| match b.zeros() {
        [only] if only.multiplicity == 2 => Some(0.0),
        [a, c] if a.multiplicity == 1 && c.multiplicity == 1 => Some(rho_unchecked(a.location, c.location)),
        _ => None,
    };
    let closed_form = match (separation(b1), separation(b2)) {
        (Some(w1), Some(w2)) => {
            let value = order2_distance(w1, w2)?;
            json!({ "w1": w1, "w2": w2, "value": value, "difference": (value - result.value).abs() })
        }
        _ => Value::Null,
    };
    Ok(json!({
        "schema": "distance/v1",
        "products": [product_to_json(b1), product_to_json(b2)],
        "barcodes": [bars_json(&bc1), bars_json(&bc2)],
        "value": result.value,
        "witness": result.witness,
        "closed_form": closed_form,
    }))
}

pub fn critical_report(b: &BlaschkeProduct, tol: f64) -> CliResult<Value> {
    let points = critical_points(b, tol)?;
    let order_sum: u32 = points.iter().map(|p| p.order).sum();
    Ok(json!({
        "schema": "critical/v1",
        "product": product_to_json(b),
        "critical_points": points.iter().map(|p| json!({
            "location": [p.location.re, p.location.im],
            "order": p.order,
            "critical_value": p.critical_value,
            "death_time": p.death_time,
            "at_zero": p.at_zero,
        })).collect::<Vec<_>>(),
        "order_sum": order_sum,
    }))
}

pub fn eval_report(b: &BlaschkeProduct, points: &[ComplexPoint]) -> CliResult<Value> {
    let mut rows = Vec::new();
    for &z in points {
        let value = b.eval(z)?;
        // The logarithmic derivative has a pole at each zero.
        let log_derivative = match b.log_derivative(z) {
            Ok(w) => json!([w.re, w.im]),
            Err(Error::Pole(_)) => Value::Null,
            Err(e) => return Err(e.into()),
        };
        rows.push(json!({ "z": [z.re, z.im], "value": [value.re, value.im], "modulus": value.norm(), "log_derivative": log_derivative }));
    }
    Ok(json!({ "schema": "eval/v1", "product": product_to_json(b), "points": rows }))
}

#[derive(Serialize)]
struct ThresholdRow {
    theta: f64,
    t: f64,
    component_count: usize,
    euler_characteristic: i64,
    holes_detected: bool,
    /// Grid estimate of the largest component's pseudo-hyperbolic diameter.
    diameter: Option<f64>,
    zero_assignment: Vec<Option<u32>>,
}

/// Scan report, and whether any threshold showed a hole.
pub fn scan_report(b: &BlaschkeProduct, thresholds: &[f64], config: &RunConfig, dump: bool) -> CliResult<(Value, bool)> {
    for (i, &theta) in thresholds.iter().enumerate() {
        if !(theta > 0.0 && theta < 1.0) {
            return Err(CliError::Input(format!("thresholds[{i}] = {theta} not in (0, 1)")));
        }
    }
    let grid = build_grid(b, config.grid)?;
    if dump {
        let mut bytes = Vec::new();
        write_grid_dump(&grid, &mut bytes).expect("writing to memory");
        write_artifact(config, "grid.bin", &bytes)?;
    }
    let mut rows = Vec::new();
    for &theta in thresholds {
        let snapshot = sublevel_components(&grid, theta)?;
        let chi = euler_characteristic(&grid, theta)?;
        let diameter = if snapshot.component_count > 0 { Some(component_diameter(&snapshot, &grid)?) } else { None };
        rows.push(ThresholdRow {
            theta,
            t: time_of_threshold(theta),
            component_count: snapshot.component_count,
            euler_characteristic: chi,
            holes_detected: chi != snapshot.component_count as i64,
            diameter,
            zero_assignment: snapshot.zero_assignment,
        });
    }
    let sweep = grid_sweep(&grid);
    let holes = rows.iter().any(|r| r.holes_detected);
    let report = json!({
        "schema": "scan/v1",
        "product": product_to_json(b),
        "resolution": grid.resolution(),
        "cell_count": grid.cell_count(),
        "noise_floor": sweep.noise_floor,
        "thresholds": rows,
        "merge_events": sweep.merge_events.iter().map(|e| json!({
            "theta_merge": e.theta_merge,
            "t_merge": time_of_threshold(e.theta_merge),
            "components_absorbed": e.components_absorbed,
        })).collect::<Vec<_>>(),
        "grid_bars": bars_json(&sweep.barcode()),
    });
    Ok((report, holes))
}
