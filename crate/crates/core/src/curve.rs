//! Closed planar curves, the periodic trapezoid rule for arclength, and the
//! coupling weight `υ` sampled at the quadrature nodes.
//!
//! Curves are parametrized over `[0, 2π)`. Regularity (`|γ'| > 0`) and
//! closure are checked; simplicity and `C^{1,1}` smoothness of sampled curves
//! are assumed, not verified.

use std::f64::consts::TAU;
use std::fmt;
use std::path::Path;
use std::sync::Arc;

use num_complex::Complex64;
use serde::Serialize;

use crate::basis::Point;
use crate::error::{Error, Result};

pub const DEFAULT_NODES: usize = 1024;
pub const MIN_NODES: usize = 16;
pub const CURVE_HEADER: &str = "# jordan-curve v1";
pub const WEIGHT_HEADER: &str = "# weight v1";

const CLOSURE_TOL: f64 = 1e-9;
const SIGN_ZERO_TOL: f64 = 1e-14;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CurveSample {
    pub t: f64,
    pub point: Point,
    pub tangent: Point,
}

#[derive(Clone, Debug, PartialEq)]
pub enum CurveKind {
    Circle { radius: f64, center: Point },
    Ellipse { semi_x: f64, semi_y: f64, center: Point },
    Sampled(SampledCurve),
}

/// A closed regular curve `γ: [0, 2π) → ℝ²`.
#[derive(Clone, Debug, PartialEq)]
pub struct JordanCurve {
    kind: CurveKind,
}

/// Uniform samples of a curve together with the trigonometric interpolant of
/// each coordinate, used when a rule with a different node count is requested.
#[derive(Clone, Debug, PartialEq)]
pub struct SampledCurve {
    samples: Vec<CurveSample>,
    // Fourier coefficients of x, y, x', y' for modes -M/2..=M/2
    modes: Vec<i64>,
    coeffs: [Vec<Complex64>; 4],
}

impl SampledCurve {
    fn new(samples: Vec<CurveSample>) -> Self {
        let m = samples.len();
        let half = (m / 2) as i64;
        let modes: Vec<i64> = (-half..=half).collect();
        let channels: [Vec<f64>; 4] = [
            samples.iter().map(|s| s.point.x).collect(),
            samples.iter().map(|s| s.point.y).collect(),
            samples.iter().map(|s| s.tangent.x).collect(),
            samples.iter().map(|s| s.tangent.y).collect(),
        ];
        let coeffs = channels.map(|vals| {
            modes
                .iter()
                .map(|&mode| {
                    let mut c: Complex64 = vals
                        .iter()
                        .enumerate()
                        .map(|(j, &v)| Complex64::from_polar(v, -(mode as f64) * TAU * j as f64 / m as f64))
                        .sum::<Complex64>()
                        / m as f64;
                    // split the Nyquist mode evenly between ±M/2
                    if m % 2 == 0 && mode.unsigned_abs() as usize == m / 2 {
                        c *= 0.5;
                    }
                    c
                })
                .collect()
        });
        Self { samples, modes, coeffs }
    }

    fn interpolate(&self, channel: usize, t: f64) -> f64 {
        self.modes
            .iter()
            .zip(&self.coeffs[channel])
            .map(|(&mode, c)| (c * Complex64::from_polar(1.0, mode as f64 * t)).re)
            .sum()
    }

    pub fn samples(&self) -> &[CurveSample] {
        &self.samples
    }
}

impl JordanCurve {
    /// Circle of radius `r` centred at the origin.
    pub fn circle(r: f64) -> Result<Self> {
        Self::circle_at(r, Point::ORIGIN)
    }

    pub fn circle_at(r: f64, center: Point) -> Result<Self> {
        if !(r > 0.0 && r.is_finite()) {
            return Err(Error::Curve(format!("circle radius must be positive, got {r}")));
        }
        Ok(Self { kind: CurveKind::Circle { radius: r, center } })
    }

    /// Axis-aligned ellipse `(a cos t, b sin t)` centred at the origin.
    pub fn ellipse(semi_x: f64, semi_y: f64) -> Result<Self> {
        if !(semi_x > 0.0 && semi_y > 0.0 && semi_x.is_finite() && semi_y.is_finite()) {
            return Err(Error::Curve(format!("ellipse semi-axes must be positive, got {semi_x}, {semi_y}")));
        }
        Ok(Self { kind: CurveKind::Ellipse { semi_x, semi_y, center: Point::ORIGIN } })
    }

    /// Curve from uniform samples `t_j = 2πj/M`. A trailing sample at `t = 2π`
    /// is accepted as a closure check and dropped.
    pub fn sampled(mut samples: Vec<CurveSample>) -> Result<Self> {
        if samples.len() < 2 {
            return Err(Error::Curve("need at least two samples".into()));
        }
        if samples.iter().any(|s| {
            ![s.t, s.point.x, s.point.y, s.tangent.x, s.tangent.y].iter().all(|v| v.is_finite())
        }) {
            return Err(Error::Curve("non-finite sample".into()));
        }
        let last = *samples.last().unwrap();
        if (last.t - TAU).abs() <= CLOSURE_TOL {
            let first = samples[0];
            let gap = (last.point - first.point).norm().max((last.tangent - first.tangent).norm());
            if gap > CLOSURE_TOL {
                return Err(Error::Curve(format!("curve is not closed: endpoint mismatch {gap:e}")));
            }
            samples.pop();
        }
        let m = samples.len();
        if m < 2 {
            return Err(Error::Curve("need at least two distinct samples".into()));
        }
        for (j, s) in samples.iter().enumerate() {
            let expected = TAU * j as f64 / m as f64;
            if (s.t - expected).abs() > CLOSURE_TOL {
                return Err(Error::Curve(format!(
                    "parameters must be uniform on [0, 2π): sample {j} has t = {}, expected {expected}",
                    s.t
                )));
            }
            if s.tangent.norm() <= 0.0 {
                return Err(Error::Curve(format!("curve is not regular at t = {}", s.t)));
            }
        }
        Ok(Self { kind: CurveKind::Sampled(SampledCurve::new(samples)) })
    }

    /// Samples the given parametrization and derivative at `m` uniform parameters.
    pub fn from_parametrization(
        m: usize,
        gamma: impl Fn(f64) -> Point,
        dgamma: impl Fn(f64) -> Point,
    ) -> Result<Self> {
        let samples = (0..m)
            .map(|j| {
                let t = TAU * j as f64 / m as f64;
                CurveSample { t, point: gamma(t), tangent: dgamma(t) }
            })
            .collect();
        Self::sampled(samples)
    }

    pub fn kind(&self) -> &CurveKind {
        &self.kind
    }

    /// Radius and centre if the curve is an analytic circle.
    pub fn as_circle(&self) -> Option<(f64, Point)> {
        match self.kind {
            CurveKind::Circle { radius, center } => Some((radius, center)),
            _ => None,
        }
    }

    pub fn point(&self, t: f64) -> Point {
        match &self.kind {
            CurveKind::Circle { radius, center } => {
                *center + Point::new(radius * t.cos(), radius * t.sin())
            }
            CurveKind::Ellipse { semi_x, semi_y, center } => {
                *center + Point::new(semi_x * t.cos(), semi_y * t.sin())
            }
            CurveKind::Sampled(s) => Point::new(s.interpolate(0, t), s.interpolate(1, t)),
        }
    }

    pub fn tangent(&self, t: f64) -> Point {
        match &self.kind {
            CurveKind::Circle { radius, .. } => Point::new(-radius * t.sin(), radius * t.cos()),
            CurveKind::Ellipse { semi_x, semi_y, .. } => Point::new(-semi_x * t.sin(), semi_y * t.cos()),
            CurveKind::Sampled(s) => Point::new(s.interpolate(2, t), s.interpolate(3, t)),
        }
    }

    fn sample_at(&self, n: usize, j: usize) -> CurveSample {
        if let CurveKind::Sampled(s) = &self.kind {
            if s.samples.len() == n {
                return s.samples[j];
            }
        }
        let t = TAU * j as f64 / n as f64;
        CurveSample { t, point: self.point(t), tangent: self.tangent(t) }
    }

    /// Short human-readable description used in export metadata.
    pub fn describe(&self) -> String {
        match &self.kind {
            CurveKind::Circle { radius, center } => {
                format!("circle r={radius} center=({}, {})", center.x, center.y)
            }
            CurveKind::Ellipse { semi_x, semi_y, .. } => format!("ellipse a={semi_x} b={semi_y}"),
            CurveKind::Sampled(s) => format!("sampled curve ({} samples)", s.samples.len()),
        }
    }

    /// Largest distance from `center` over the nodes of an `n`-point rule.
    pub fn max_distance(&self, center: Point, n: usize) -> f64 {
        (0..n).map(|j| (self.sample_at(n, j).point - center).norm()).fold(0.0, f64::max)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let rows = parse_table(text, CURVE_HEADER, 5)?;
        let samples = rows
            .into_iter()
            .map(|r| CurveSample { t: r[0], point: Point::new(r[1], r[2]), tangent: Point::new(r[3], r[4]) })
            .collect();
        Self::sampled(samples)
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    /// Writes `n` uniform samples in the curve file format.
    pub fn to_file_string(&self, n: usize) -> String {
        let mut out = String::from(CURVE_HEADER);
        out.push('\n');
        for j in 0..n {
            let s = self.sample_at(n, j);
            out.push_str(&format!(
                "{:.17e} {:.17e} {:.17e} {:.17e} {:.17e}\n",
                s.t, s.point.x, s.point.y, s.tangent.x, s.tangent.y
            ));
        }
        out
    }
}

/// Creates the analytic circle of radius `r` about the origin. Any other
/// centre is unitarily equivalent under magnetic translations.
pub fn make_circle(r: f64) -> Result<JordanCurve> {
    JordanCurve::circle(r)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CurveNode {
    pub t: f64,
    pub point: Point,
    pub tangent: Point,
    /// Arclength weight `(2π/N)|γ'(t)|`.
    pub ds: f64,
}

/// Periodic trapezoid rule for `∫_Γ f ds`.
#[derive(Clone, Debug, PartialEq)]
pub struct ArclengthRule {
    nodes: Vec<CurveNode>,
}

impl ArclengthRule {
    pub fn nodes(&self) -> &[CurveNode] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn length(&self) -> f64 {
        self.nodes.iter().map(|n| n.ds).sum()
    }

    pub fn integrate(&self, f: impl Fn(&CurveNode) -> f64) -> f64 {
        self.nodes.iter().map(|n| f(n) * n.ds).sum()
    }

    pub fn integrate_complex(&self, f: impl Fn(&CurveNode) -> Complex64) -> Complex64 {
        self.nodes.iter().map(|n| f(n) * n.ds).sum()
    }
}

pub fn arclength_rule(curve: &JordanCurve, n: usize) -> Result<ArclengthRule> {
    if n < MIN_NODES {
        return Err(Error::Curve(format!("arclength rule needs at least {MIN_NODES} nodes, got {n}")));
    }
    let h = TAU / n as f64;
    let nodes = (0..n)
        .map(|j| {
            let s = curve.sample_at(n, j);
            CurveNode { t: s.t, point: s.point, tangent: s.tangent, ds: h * s.tangent.norm() }
        })
        .collect::<Vec<_>>();
    if let Some(bad) = nodes.iter().find(|n| !(n.ds > 0.0)) {
        return Err(Error::Curve(format!("curve is not regular at t = {}", bad.t)));
    }
    Ok(ArclengthRule { nodes })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SignClass {
    Nonnegative,
    Nonpositive,
    Indefinite,
}

impl SignClass {
    pub fn of(values: &[f64]) -> Self {
        let pos = values.iter().any(|&v| v > SIGN_ZERO_TOL);
        let neg = values.iter().any(|&v| v < -SIGN_ZERO_TOL);
        match (pos, neg) {
            (true, true) => SignClass::Indefinite,
            (false, true) => SignClass::Nonpositive,
            _ => SignClass::Nonnegative,
        }
    }
}

impl fmt::Display for SignClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SignClass::Nonnegative => "nonnegative",
            SignClass::Nonpositive => "nonpositive",
            SignClass::Indefinite => "indefinite",
        };
        f.write_str(s)
    }
}

/// Where the coupling strength `υ(t)` comes from.
#[derive(Clone)]
pub enum WeightSource {
    Constant(f64),
    /// `(t, υ)` pairs with increasing `t` in `[0, 2π)`, interpolated linearly
    /// and periodically.
    Table(Vec<(f64, f64)>),
    Function { label: String, f: Arc<dyn Fn(f64) -> f64 + Send + Sync> },
}

impl fmt::Debug for WeightSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightSource::Constant(v) => write!(f, "Constant({v})"),
            WeightSource::Table(rows) => write!(f, "Table({} rows)", rows.len()),
            WeightSource::Function { label, .. } => write!(f, "Function({label})"),
        }
    }
}

impl WeightSource {
    pub fn function(label: impl Into<String>, f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        WeightSource::Function { label: label.into(), f: Arc::new(f) }
    }

    pub fn describe(&self) -> String {
        match self {
            WeightSource::Constant(v) => format!("constant {v}"),
            WeightSource::Table(rows) => format!("table ({} rows)", rows.len()),
            WeightSource::Function { label, .. } => label.clone(),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let rows = parse_table(text, WEIGHT_HEADER, 2)?;
        let table = rows.into_iter().map(|r| (r[0], r[1])).collect();
        let source = WeightSource::Table(table);
        source.validate()?;
        Ok(source)
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    fn validate(&self) -> Result<()> {
        match self {
            WeightSource::Constant(v) if !v.is_finite() => {
                Err(Error::Weight(format!("constant weight must be finite, got {v}")))
            }
            WeightSource::Table(rows) => {
                if rows.is_empty() {
                    return Err(Error::Weight("empty weight table".into()));
                }
                for (i, &(t, v)) in rows.iter().enumerate() {
                    if !t.is_finite() || !v.is_finite() {
                        return Err(Error::Weight(format!("non-finite entry in row {i}")));
                    }
                    if !(0.0..TAU).contains(&t) {
                        return Err(Error::Weight(format!("parameter {t} in row {i} outside [0, 2π)")));
                    }
                    if i > 0 && t <= rows[i - 1].0 {
                        return Err(Error::Weight(format!("parameter column not increasing at row {i}")));
                    }
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    fn value(&self, t: f64) -> f64 {
        match self {
            WeightSource::Constant(v) => *v,
            WeightSource::Function { f, .. } => f(t),
            WeightSource::Table(rows) => periodic_linear(rows, t),
        }
    }
}

fn periodic_linear(rows: &[(f64, f64)], t: f64) -> f64 {
    if rows.len() == 1 {
        return rows[0].1;
    }
    let t = t.rem_euclid(TAU);
    // index of the first row with parameter > t
    let hi = rows.partition_point(|&(s, _)| s <= t);
    let (lo_row, hi_row) = if hi == 0 {
        let (s, v) = rows[rows.len() - 1];
        ((s - TAU, v), rows[0])
    } else if hi == rows.len() {
        let (s, v) = rows[0];
        (rows[hi - 1], (s + TAU, v))
    } else {
        (rows[hi - 1], rows[hi])
    };
    let w = (t - lo_row.0) / (hi_row.0 - lo_row.0);
    lo_row.1 + w * (hi_row.1 - lo_row.1)
}

/// A curve with its quadrature rule and the weight sampled at the nodes.
#[derive(Clone, Debug)]
pub struct WeightedCurve {
    curve: JordanCurve,
    rule: ArclengthRule,
    source: WeightSource,
    values: Vec<f64>,
    sign: SignClass,
}

impl WeightedCurve {
    pub fn curve(&self) -> &JordanCurve {
        &self.curve
    }

    pub fn rule(&self) -> &ArclengthRule {
        &self.rule
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn sign_class(&self) -> SignClass {
        self.sign
    }

    pub fn source(&self) -> &WeightSource {
        &self.source
    }

    /// Same curve and weight on a rule with `n` nodes.
    pub fn with_nodes(&self, n: usize) -> Result<Self> {
        load_weight(&self.curve, self.source.clone(), n)
    }

    /// `υ ← c υ`.
    pub fn scaled(&self, c: f64) -> Self {
        let values: Vec<f64> = self.values.iter().map(|v| c * v).collect();
        let f = self.source.clone();
        let source = WeightSource::function(format!("{} x {c}", self.source.describe()), move |t| c * f.value(t));
        Self { curve: self.curve.clone(), rule: self.rule.clone(), sign: SignClass::of(&values), values, source }
    }

    /// `sup |υ|` over the nodes.
    pub fn sup_norm(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

/// Samples `source` at the nodes of an `n`-point arclength rule on `curve`.
pub fn load_weight(curve: &JordanCurve, source: WeightSource, n: usize) -> Result<WeightedCurve> {
    source.validate()?;
    let rule = arclength_rule(curve, n)?;
    let values: Vec<f64> = rule.nodes().iter().map(|node| source.value(node.t)).collect();
    if let Some(i) = values.iter().position(|v| !v.is_finite()) {
        return Err(Error::Weight(format!("weight is not finite at node {i}")));
    }
    let sign = SignClass::of(&values);
    Ok(WeightedCurve { curve: curve.clone(), rule, source, values, sign })
}

fn parse_table(text: &str, header: &str, columns: usize) -> Result<Vec<Vec<f64>>> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, first)) if first.trim() == header => {}
        _ => return Err(Error::Parse { line: 1, message: format!("expected header `{header}`") }),
    }
    let mut rows = Vec::new();
    for (i, line) in lines {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let vals = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<f64>()
                    .map_err(|e| Error::Parse { line: i + 1, message: format!("`{tok}`: {e}") })
            })
            .collect::<Result<Vec<f64>>>()?;
        if vals.len() != columns {
            return Err(Error::Parse {
                line: i + 1,
                message: format!("expected {columns} columns, found {}", vals.len()),
            });
        }
        if vals.iter().any(|v| !v.is_finite()) {
            return Err(Error::Parse { line: i + 1, message: "non-finite value".into() });
        }
        rows.push(vals);
    }
    Ok(rows)
}

/// Perimeter of the ellipse with semi-axes `a`, `b` by a fine trapezoid sum;
/// only used as a reference value.
pub fn ellipse_perimeter_reference(a: f64, b: f64, samples: usize) -> f64 {
    let h = TAU / samples as f64;
    (0..samples).map(|j| (a * (j as f64 * h).sin()).hypot(b * (j as f64 * h).cos())).sum::<f64>() * h
}
