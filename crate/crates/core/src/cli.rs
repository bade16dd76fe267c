//! The `landau` command line.
//!
//! [`run`] takes the full argument vector and returns the exit code with
//! everything that would be written to stdout, so it is testable without a
//! process. Exit codes: 0 success, 1 verification failure, 2 bad arguments.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::basis::{MagneticField, Point};
use crate::census::{census, census_csv, coupling_lower_bounds, eta_csv, gap_constants};
use crate::curve::{load_weight, JordanCurve, WeightSource, WeightedCurve, DEFAULT_NODES};
use crate::error::{invalid, Result};
use crate::galerkin::{self, assemble_model_with, cluster_report, persistence_check, CouplingSign};
use crate::special::{orthogonality_defect, LaguerreSpec};
use crate::toeplitz::{self, assemble_with, kernel_dim_estimate, AssemblyOptions, ToeplitzMatrix};
use crate::verify;

/// Overrides the default quadrature size when set.
pub const QUAD_ENV: &str = "LANDAU_QUAD_N";

#[derive(Parser, Debug)]
#[command(name = "landau", version, about = "Landau levels, Laguerre zeros and Toeplitz operators on curves")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Zeros, values and orthogonality of generalized Laguerre polynomials.
    Laguerre(LaguerreArgs),
    /// Assemble a truncated Toeplitz matrix on a curve and print its spectrum.
    Toeplitz(ToeplitzArgs),
    /// Resonant radii of circles, zero curves and scalar constants.
    Census(CensusArgs),
    /// Finite sections of the perturbed Hamiltonian.
    Galerkin(GalerkinArgs),
    /// Run the invariant suite of every module.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum LaguerreAction {
    Zeros,
    Eval,
    Derivative,
    Orthogonality,
}

#[derive(Args, Debug)]
struct LaguerreArgs {
    #[arg(value_enum)]
    action: LaguerreAction,
    #[arg(long)]
    q: usize,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    alpha: f64,
    /// Evaluation point for `eval` and `derivative`.
    #[arg(long, allow_hyphen_values = true)]
    t: Option<f64>,
    /// Second degree for `orthogonality`.
    #[arg(long)]
    p: Option<usize>,
    /// Gauss-Laguerre nodes for `orthogonality`.
    #[arg(long, default_value_t = 32)]
    nodes: usize,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args, Debug)]
struct CurveArgs {
    #[arg(long, default_value_t = 2.0)]
    b: f64,
    /// `circle:R`, `ellipse:A,B` or `file:PATH`.
    #[arg(long, default_value = "circle:1")]
    curve: String,
    /// `const:V` or `file:PATH`.
    #[arg(long, default_value = "const:1")]
    weight: String,
    /// Quadrature nodes on the curve (default: $LANDAU_QUAD_N, else 1024).
    #[arg(long)]
    n: Option<usize>,
    /// Centre `X,Y` of the magnetic translation applied to the basis.
    #[arg(long, allow_hyphen_values = true)]
    center: Option<String>,
}

#[derive(Args, Debug)]
struct ToeplitzArgs {
    #[command(flatten)]
    curve: CurveArgs,
    #[arg(long, default_value_t = 0)]
    q: usize,
    /// Angular truncation (default: tail rule of the curve).
    #[arg(long = "K")]
    k: Option<usize>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[arg(long, default_value_t = toeplitz::DEFAULT_KERNEL_TOL)]
    kernel_tol: f64,
    /// Write the assembled matrix as JSON.
    #[arg(long)]
    export: Option<PathBuf>,
    /// Read a matrix written by `--export` instead of assembling.
    #[arg(long, conflicts_with = "export")]
    import: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct CensusArgs {
    #[arg(long, default_value_t = 2.0)]
    b: f64,
    #[arg(long, default_value_t = 1)]
    q: usize,
    #[arg(long, default_value_t = 3.0)]
    rmax: f64,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Print the zero curves `η_ℓ(α)` instead of the census.
    #[arg(long)]
    eta: bool,
    #[arg(long, allow_hyphen_values = true)]
    alpha_min: Option<f64>,
    #[arg(long, default_value_t = 10.0)]
    alpha_max: f64,
    #[arg(long, default_value_t = 0.25)]
    alpha_step: f64,
    /// Also report the gap constants at this spectral parameter.
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<f64>,
    /// Also report the coupling lower bounds for this trace constant.
    #[arg(long)]
    c: Option<f64>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GalerkinAction {
    Report,
    Persistence,
}

#[derive(Args, Debug)]
struct GalerkinArgs {
    #[arg(value_enum, default_value = "report")]
    action: GalerkinAction,
    #[command(flatten)]
    curve: CurveArgs,
    /// Level under study; sets the default cutoffs.
    #[arg(long, default_value_t = 0)]
    q: usize,
    /// Level cutoff (default q+2).
    #[arg(long = "Q")]
    levels: Option<usize>,
    /// Angular cutoff.
    #[arg(long = "K")]
    k: Option<usize>,
    #[arg(long, allow_hyphen_values = true, default_value = "+1")]
    sign: String,
    /// Circle radius for `persistence`.
    #[arg(long)]
    r: Option<f64>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, default_value_t = verify::DEFAULT_SEED)]
    seed: u64,
}

/// Runs the CLI on `argv` (including the program name).
pub fn run<I, S>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (code, e.render().to_string());
        }
    };
    let result = match cli.command {
        Command::Laguerre(a) => laguerre(a),
        Command::Toeplitz(a) => toeplitz_cmd(a),
        Command::Census(a) => census_cmd(a),
        Command::Galerkin(a) => galerkin_cmd(a),
        Command::Verify(a) => {
            let report = verify::run_suite(a.seed);
            return (if report.passed() { 0 } else { 1 }, report.to_string());
        }
    };
    match result {
        Ok(out) => (0, out),
        Err(e) => (2, format!("error: {e}\n\nRun `landau --help` for usage.\n")),
    }
}

fn f17(x: f64) -> String {
    format!("{x:.16e}")
}

fn to_json(value: &impl Serialize) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn laguerre(a: LaguerreArgs) -> Result<String> {
    let spec = LaguerreSpec::new(a.q, a.alpha);
    let point = || a.t.ok_or_else(|| invalid("this action needs --t"));
    match a.action {
        LaguerreAction::Zeros => {
            let zeros = spec.zeros()?;
            match a.format {
                Format::Csv => {
                    let mut out = String::from("zero,multiplicity\n");
                    for z in &zeros {
                        writeln!(out, "{},{}", f17(z.value), z.multiplicity).unwrap();
                    }
                    Ok(out)
                }
                Format::Json => to_json(&json!({ "q": a.q, "alpha": a.alpha, "zeros": zeros })),
            }
        }
        LaguerreAction::Eval => {
            let t = point()?;
            scalar_output(a.format, "value", json!({ "q": a.q, "alpha": a.alpha, "t": t, "value": spec.eval(t) }))
        }
        LaguerreAction::Derivative => {
            let t = point()?;
            let d = spec.derivative(t)?;
            scalar_output(a.format, "derivative", json!({ "q": a.q, "alpha": a.alpha, "t": t, "derivative": d }))
        }
        LaguerreAction::Orthogonality => {
            let p = a.p.ok_or_else(|| invalid("orthogonality needs --p"))?;
            let defect = orthogonality_defect(a.q, p, a.alpha, a.nodes)?;
            scalar_output(
                a.format,
                "defect",
                json!({ "q": a.q, "p": p, "alpha": a.alpha, "nodes": a.nodes, "defect": defect }),
            )
        }
    }
}

fn scalar_output(format: Format, key: &str, value: serde_json::Value) -> Result<String> {
    match format {
        Format::Json => to_json(&value),
        Format::Csv => {
            let obj = value.as_object().expect("object");
            let header: Vec<&str> = obj.keys().map(String::as_str).collect();
            let row: Vec<String> = obj
                .values()
                .map(|v| match v.as_f64() {
                    Some(x) if !v.is_u64() => f17(x),
                    _ => v.to_string(),
                })
                .collect();
            debug_assert!(obj.contains_key(key));
            Ok(format!("{}\n{}\n", header.join(","), row.join(",")))
        }
    }
}

fn quadrature_nodes(explicit: Option<usize>) -> Result<usize> {
    if let Some(n) = explicit {
        return Ok(n);
    }
    match std::env::var(QUAD_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| invalid(format!("{QUAD_ENV} must be a positive integer, got {v:?}"))),
        Err(_) => Ok(DEFAULT_NODES),
    }
}

fn parse_numbers(text: &str, count: usize, what: &str) -> Result<Vec<f64>> {
    let values: std::result::Result<Vec<f64>, _> = text.split(',').map(|s| s.trim().parse::<f64>()).collect();
    match values {
        Ok(v) if v.len() == count => Ok(v),
        _ => Err(invalid(format!("{what}: expected {count} comma-separated numbers, got {text:?}"))),
    }
}

fn parse_curve(spec: &str) -> Result<JordanCurve> {
    let (kind, rest) = spec.split_once(':').ok_or_else(|| invalid(format!("curve spec {spec:?}: expected KIND:VALUE")))?;
    match kind {
        "circle" => JordanCurve::circle(parse_numbers(rest, 1, "circle radius")?[0]),
        "ellipse" => {
            let v = parse_numbers(rest, 2, "ellipse semi-axes")?;
            JordanCurve::ellipse(v[0], v[1])
        }
        "file" => JordanCurve::from_file(rest),
        other => Err(invalid(format!("unknown curve kind {other:?}; use circle, ellipse or file"))),
    }
}

fn parse_weight(spec: &str) -> Result<WeightSource> {
    let (kind, rest) = spec.split_once(':').ok_or_else(|| invalid(format!("weight spec {spec:?}: expected KIND:VALUE")))?;
    match kind {
        "const" => Ok(WeightSource::Constant(parse_numbers(rest, 1, "constant weight")?[0])),
        "file" => WeightSource::from_file(rest),
        other => Err(invalid(format!("unknown weight kind {other:?}; use const or file"))),
    }
}

/// Parsed settings shared by the curve-based subcommands.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub field: MagneticField,
    pub weighted_curve: WeightedCurve,
    pub nodes: usize,
    pub center: Point,
}

fn run_config(a: &CurveArgs) -> Result<RunConfig> {
    let field = MagneticField::new(a.b)?;
    let nodes = quadrature_nodes(a.n)?;
    let curve = parse_curve(&a.curve)?;
    let weighted_curve = load_weight(&curve, parse_weight(&a.weight)?, nodes)?;
    let center = match &a.center {
        Some(c) => {
            let v = parse_numbers(c, 2, "center")?;
            Point::new(v[0], v[1])
        }
        None => Point::ORIGIN,
    };
    Ok(RunConfig { field, weighted_curve, nodes, center })
}

fn toeplitz_cmd(a: ToeplitzArgs) -> Result<String> {
    let matrix = match &a.import {
        Some(path) => ToeplitzMatrix::from_json(&std::fs::read_to_string(path)?)?,
        None => {
            let cfg = run_config(&a.curve)?;
            let k = match a.k {
                Some(k) => k,
                None => toeplitz::default_truncation(&cfg.field, a.q, cfg.weighted_curve.curve(), cfg.center),
            };
            let opts = AssemblyOptions { center: cfg.center, check_resolution: true };
            assemble_with(&cfg.field, a.q, &cfg.weighted_curve, k, &opts)?
        }
    };
    if let Some(path) = &a.export {
        std::fs::write(path, matrix.to_json()?)?;
    }
    let spec = matrix.spectrum()?;
    match a.format {
        Format::Csv => Ok(spec.to_csv()),
        Format::Json => {
            let kernel = kernel_dim_estimate(&matrix, a.kernel_tol)?;
            to_json(&json!({
                "level": matrix.level(),
                "truncation": matrix.truncation(),
                "b": matrix.field().strength(),
                "provenance": matrix.provenance(),
                "eigenvalues": spec.values,
                "residuals": spec.residuals,
                "kernel": kernel,
            }))
        }
    }
}

fn census_cmd(a: CensusArgs) -> Result<String> {
    let field = MagneticField::new(a.b)?;
    if a.eta {
        let alpha_min = a.alpha_min.unwrap_or(1.0 - a.q as f64);
        return eta_csv(&field, a.q, alpha_min, a.alpha_max, a.alpha_step);
    }
    let entries = census(&field, a.q, a.rmax)?;
    let gaps = a.lambda.map(|l| gap_constants(&field, a.q, l)).transpose()?;
    let bounds = a.c.map(|c| coupling_lower_bounds(&field, a.q, c)).transpose()?;
    match a.format {
        Format::Csv => {
            if gaps.is_some() || bounds.is_some() {
                return Err(invalid("--lambda and --c are reported in JSON output only"));
            }
            Ok(census_csv(&entries))
        }
        Format::Json => to_json(&json!({
            "b": a.b,
            "q": a.q,
            "rmax": a.rmax,
            "entries": entries,
            "gap_constants": gaps,
            "coupling_lower_bounds": bounds,
        })),
    }
}

fn galerkin_cmd(a: GalerkinArgs) -> Result<String> {
    let sign: CouplingSign = a.sign.parse()?;
    match a.action {
        GalerkinAction::Persistence => {
            let r = a.r.ok_or_else(|| invalid("persistence needs --r"))?;
            let field = MagneticField::new(a.curve.b)?;
            let weight = parse_weight(&a.curve.weight)?;
            to_json(&persistence_check(&field, a.q, r, a.k, a.levels, weight)?)
        }
        GalerkinAction::Report => {
            let cfg = run_config(&a.curve)?;
            let levels = a.levels.unwrap_or(a.q + 2);
            let k = match a.k {
                Some(k) => k,
                None => galerkin::default_truncation(&cfg.field, a.q, cfg.weighted_curve.curve(), cfg.center)?,
            };
            let opts = AssemblyOptions { center: cfg.center, check_resolution: true };
            let model = assemble_model_with(&cfg.field, levels, k, &cfg.weighted_curve, sign, &opts)?;
            let report = cluster_report(&model)?;
            to_json(&json!({
                "b": cfg.field.strength(),
                "Q": levels,
                "K": k,
                "sign": sign.to_string(),
                "nodes": cfg.nodes,
                "underresolved": model.underresolved(),
                "levels": report.levels,
            }))
        }
    }
}
