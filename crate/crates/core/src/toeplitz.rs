//! Truncated singular Berezin-Toeplitz matrices `T_q(υδ_Γ)` in the
//! angular-momentum basis of the Landau level `q`.
//!
//! Entries are the quadratic form `∫_Γ υ |u|² ds` on `span{φ_{0,q}, …, φ_{K,q}}`:
//! with `Φ_{jk} = φ_{k,q}(γ(t_j))` and `W = diag(υ_j ds_j)` the matrix is
//! `M = Φ^* W Φ`, so `M_{kl} = Σ_j υ_j conj(φ_{k,q}) φ_{l,q} ds_j`. An
//! eigenvector `v` corresponds to the function `Σ_k v_k φ_{k,q}`.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::basis::{log_polar, BasisIndex, MagneticField, Point};
use crate::census;
use crate::curve::{JordanCurve, WeightedCurve};
use crate::error::{invalid, Error, Result};
use crate::special::{ln_factorial, LaguerreSpec};

/// Doubling the node count may change `max |M_kl|` by at most this much.
pub const RESOLUTION_TOL: f64 = 1e-7;
pub const DEFAULT_KERNEL_TOL: f64 = 1e-10;
const CIRCLE_TAIL_TOL: f64 = 1e-16;
const CURVE_TAIL_TOL: f64 = 1e-12;
const RESIDUAL_TOL: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub curve: String,
    pub weight: String,
    pub nodes: usize,
    /// Centre of the magnetic translation applied to the basis.
    pub center: Point,
    /// Radius of the curve when it is a circle about `center`.
    pub circle_radius: Option<f64>,
    /// `max |M(2N) - M(N)|`, when the resolution check ran.
    pub resolution_defect: Option<f64>,
    pub underresolved: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ToeplitzMatrix {
    entries: DMatrix<Complex64>,
    level: usize,
    truncation: usize,
    field: MagneticField,
    provenance: Provenance,
}

#[derive(Clone, Copy, Debug)]
pub struct AssemblyOptions {
    /// Basis functions are replaced by their magnetic translates `T_c φ_{k,q}`.
    pub center: Point,
    /// Re-assemble with twice the nodes and record the change.
    pub check_resolution: bool,
}

impl Default for AssemblyOptions {
    fn default() -> Self {
        Self { center: Point::ORIGIN, check_resolution: true }
    }
}

/// `(T_c φ_{k,q})(x)` at every node, one column per basis index.
pub(crate) fn basis_matrix(
    field: &MagneticField,
    indices: &[BasisIndex],
    points: &[Point],
    center: Point,
) -> DMatrix<Complex64> {
    let b = field.strength();
    let rows: Vec<Vec<Complex64>> = points
        .par_iter()
        .map(|&x| {
            let rel = x - center;
            let rho = rel.norm();
            let theta = rel.y.atan2(rel.x);
            let gauge = -0.5 * b * x.wedge(center);
            indices
                .iter()
                .map(|&idx| match log_polar(field, idx, rho, theta) {
                    Some((ln_mag, phase)) => Complex64::from_polar(ln_mag.exp(), phase + gauge),
                    None => Complex64::new(0.0, 0.0),
                })
                .collect()
        })
        .collect();
    DMatrix::from_fn(points.len(), indices.len(), |i, j| rows[i][j])
}

/// `Φ^* diag(w) Φ`, Hermitian-symmetrized.
pub(crate) fn weighted_gram(phi: &DMatrix<Complex64>, weights: &[f64]) -> DMatrix<Complex64> {
    let mut scaled = phi.clone();
    for (mut row, &w) in scaled.row_iter_mut().zip(weights) {
        row *= Complex64::new(w, 0.0);
    }
    let m = phi.ad_mul(&scaled);
    (&m + m.adjoint()) * Complex64::new(0.5, 0.0)
}

pub(crate) fn node_weights(wc: &WeightedCurve) -> Vec<f64> {
    wc.rule().nodes().iter().zip(wc.values()).map(|(n, v)| n.ds * v).collect()
}

pub(crate) fn node_points(wc: &WeightedCurve) -> Vec<Point> {
    wc.rule().nodes().iter().map(|n| n.point).collect()
}

fn level_indices(q: usize, k_max: usize) -> Vec<BasisIndex> {
    (0..=k_max).map(|k| BasisIndex::new(k, q)).collect()
}

fn raw_assemble(field: &MagneticField, q: usize, wc: &WeightedCurve, k_max: usize, center: Point) -> DMatrix<Complex64> {
    let phi = basis_matrix(field, &level_indices(q, k_max), &node_points(wc), center);
    weighted_gram(&phi, &node_weights(wc))
}

pub(crate) fn max_abs_diff(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

pub(crate) fn circle_about(curve: &JordanCurve, center: Point) -> Option<f64> {
    curve.as_circle().and_then(|(r, c)| ((c - center).norm() <= 1e-14 * r.max(1.0)).then_some(r))
}

/// Assembles `T_q(υδ_Γ)` on `k = 0..=k_max` with the default options.
pub fn assemble(field: &MagneticField, q: usize, wc: &WeightedCurve, k_max: usize) -> Result<ToeplitzMatrix> {
    assemble_with(field, q, wc, k_max, &AssemblyOptions::default())
}

pub fn assemble_with(
    field: &MagneticField,
    q: usize,
    wc: &WeightedCurve,
    k_max: usize,
    opts: &AssemblyOptions,
) -> Result<ToeplitzMatrix> {
    let entries = raw_assemble(field, q, wc, k_max, opts.center);
    let (resolution_defect, underresolved) = if opts.check_resolution {
        let fine = raw_assemble(field, q, &wc.with_nodes(2 * wc.rule().len())?, k_max, opts.center);
        let defect = max_abs_diff(&entries, &fine);
        (Some(defect), defect > RESOLUTION_TOL)
    } else {
        (None, false)
    };
    Ok(ToeplitzMatrix {
        entries,
        level: q,
        truncation: k_max,
        field: *field,
        provenance: Provenance {
            curve: wc.curve().describe(),
            weight: wc.source().describe(),
            nodes: wc.rule().len(),
            center: opts.center,
            circle_radius: circle_about(wc.curve(), opts.center),
            resolution_defect,
            underresolved,
        },
    })
}

impl ToeplitzMatrix {
    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn field(&self) -> MagneticField {
        self.field
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn spectrum(&self) -> Result<Spectrum> {
        hermitian_spectrum(&self.entries)
    }

    pub fn to_json(&self) -> Result<String> {
        let n = self.dim();
        let export = MatrixExport {
            meta: MatrixMeta {
                level: self.level,
                truncation: self.truncation,
                b: self.field.strength(),
                provenance: self.provenance.clone(),
            },
            re: (0..n).map(|i| (0..n).map(|j| self.entries[(i, j)].re).collect()).collect(),
            im: (0..n).map(|i| (0..n).map(|j| self.entries[(i, j)].im).collect()).collect(),
        };
        Ok(serde_json::to_string_pretty(&export)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let export: MatrixExport = serde_json::from_str(text)?;
        let n = export.re.len();
        if export.im.len() != n || export.re.iter().chain(&export.im).any(|row| row.len() != n) {
            return Err(invalid("matrix export: real and imaginary parts must be square and of equal size"));
        }
        if export.meta.truncation + 1 != n {
            return Err(invalid(format!(
                "matrix export: truncation {} does not match dimension {n}",
                export.meta.truncation
            )));
        }
        let entries = DMatrix::from_fn(n, n, |i, j| Complex64::new(export.re[i][j], export.im[i][j]));
        Ok(Self {
            entries,
            level: export.meta.level,
            truncation: export.meta.truncation,
            field: MagneticField::new(export.meta.b)?,
            provenance: export.meta.provenance,
        })
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixMeta {
    level: usize,
    truncation: usize,
    b: f64,
    provenance: Provenance,
}

#[derive(Serialize, Deserialize)]
struct MatrixExport {
    meta: MatrixMeta,
    re: Vec<Vec<f64>>,
    im: Vec<Vec<f64>>,
}

/// Eigenpairs of a Hermitian matrix, eigenvalues in descending order.
#[derive(Clone, Debug)]
pub struct Spectrum {
    pub values: Vec<f64>,
    /// Orthonormal eigenvectors as columns, in the order of `values`.
    pub vectors: DMatrix<Complex64>,
    /// `‖M v - λ v‖` per pair.
    pub residuals: Vec<f64>,
}

impl Spectrum {
    pub fn min(&self) -> Option<f64> {
        self.values.last().copied()
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("index,eigenvalue,residual\n");
        for (i, (v, r)) in self.values.iter().zip(&self.residuals).enumerate() {
            out.push_str(&format!("{i},{v:.16e},{r:.16e}\n"));
        }
        out
    }
}

pub fn hermitian_spectrum(m: &DMatrix<Complex64>) -> Result<Spectrum> {
    let n = m.nrows();
    if n != m.ncols() {
        return Err(invalid("spectrum: matrix is not square"));
    }
    if n == 0 {
        return Ok(Spectrum { values: Vec::new(), vectors: DMatrix::zeros(0, 0), residuals: Vec::new() });
    }
    let eig = SymmetricEigen::try_new(m.clone(), f64::EPSILON, 0)
        .ok_or_else(|| Error::NoConvergence("hermitian eigensolver".into()))?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let values: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = DMatrix::from_fn(n, n, |i, j| eig.eigenvectors[(i, order[j])]);
    let scale = values.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    let mut residuals = Vec::with_capacity(n);
    for (j, &lambda) in values.iter().enumerate() {
        let v = vectors.column(j);
        let r = (m * v - v * Complex64::new(lambda, 0.0)).norm();
        let bound = RESIDUAL_TOL * scale;
        if r > bound && r > f64::MIN_POSITIVE {
            return Err(Error::Residual { residual: r, bound });
        }
        residuals.push(r);
    }
    Ok(Spectrum { values, vectors, residuals })
}

/// `ln λ_{k,q}(r)` with
/// `λ_{k,q}(r) = ∫_{C_r} |φ_{k,q}|² ds = b r (q!/k!) t^{k-q} L_q^{(k-q)}(t)² e^{-t}`,
/// `t = br²/2`; `-∞` at an exact zero.
pub fn circle_diagonal_ln(field: &MagneticField, q: usize, k: usize, r: f64) -> f64 {
    let b = field.strength();
    let t = field.radius_to_t(r);
    let (ln_ratio, power, poly) = if k >= q {
        (ln_factorial(q) - ln_factorial(k), (k - q) as f64, LaguerreSpec::new(q, (k - q) as f64).eval(t))
    } else {
        // reflection: (q!/k!) t^{k-q} ((k!/q!) t^{q-k} L_k^{(q-k)})² = (k!/q!) t^{q-k} L_k^{(q-k)}²
        (ln_factorial(k) - ln_factorial(q), (q - k) as f64, LaguerreSpec::new(k, (q - k) as f64).eval(t))
    };
    if poly == 0.0 || (power > 0.0 && t == 0.0) {
        return f64::NEG_INFINITY;
    }
    let ln_power = if power > 0.0 { power * t.ln() } else { 0.0 };
    b.ln() + r.ln() + ln_ratio + ln_power + 2.0 * poly.abs().ln() - t
}

/// `λ_{k,q}(r) = ⟨T_q(δ_{C_r}) φ_{k,q}, φ_{k,q}⟩`, the eigenvalues of the
/// Toeplitz operator of the unit-weight circle.
pub fn circle_diagonal(field: &MagneticField, q: usize, k: usize, r: f64) -> f64 {
    circle_diagonal_ln(field, q, k, r).exp()
}

/// Natural-log envelope `b (q!/k!) t^{k-q} scale(t)² e^{-t}` of `λ_{k,q} / r`,
/// free of the oscillations of the Laguerre factor. Requires `k >= q`.
fn circle_envelope_ln(b: f64, q: usize, k: usize, t: f64) -> f64 {
    let scale = LaguerreSpec::new(q, (k - q) as f64).scale(t);
    b.ln() + ln_factorial(q) - ln_factorial(k) + (k - q) as f64 * t.ln() + 2.0 * scale.ln() - t
}

/// Default truncation for level `q` on `curve` with the basis centred at `center`.
///
/// For a circle about the centre: the smallest `K` past the peak of the
/// Poisson-type profile of `λ_{k,q}(r)` whose envelope is below
/// `1e-16 · max_k λ_{k,q}(r)`. Otherwise: the smallest such `K` for which the
/// envelope of `|φ_{K,q}|` on the curve is below `1e-12 · √(b/2π)`.
pub fn default_truncation(field: &MagneticField, q: usize, curve: &JordanCurve, center: Point) -> usize {
    let b = field.strength();
    if let Some(r) = circle_about(curve, center) {
        let t = field.radius_to_t(r);
        let start = t.ceil() as usize + 2 * q + 1;
        let peak = (0..=start).map(|k| circle_diagonal_ln(field, q, k, r)).fold(f64::NEG_INFINITY, f64::max) - r.ln();
        let mut k = start;
        while circle_envelope_ln(b, q, k, t) >= peak + CIRCLE_TAIL_TOL.ln() {
            k += 1;
        }
        k
    } else {
        let rmax = curve.max_distance(center, crate::curve::DEFAULT_NODES);
        let t = field.radius_to_t(rmax).max(f64::MIN_POSITIVE);
        let start = t.ceil() as usize + 2 * q + 1;
        let target = CURVE_TAIL_TOL.ln();
        let mut k = start;
        // ln(|φ_{k,q}| / √(b/2π)) envelope at the outermost node
        while 0.5 * circle_envelope_ln(b, q, k, t) - 0.5 * b.ln() >= target {
            k += 1;
        }
        k
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KernelEstimate {
    /// Eigenvalues with `|λ| <= rel_tol · max|λ|`.
    pub dimension: usize,
    pub threshold: f64,
    /// The matrix vanishes identically; every eigenvalue was counted.
    pub degenerate: bool,
    /// Exact kernel dimension from the resonant-radius census, for circles.
    pub census: Option<usize>,
    pub caveat: &'static str,
}

pub const TRUNCATION_CAVEAT: &str = "truncation keeps basis functions whose coupling λ_{k,q} decays to zero with k; \
    small eigenvalues of the section may be truncation artifacts, so for circles the census value is authoritative";

/// Numerical kernel dimension of the truncated matrix.
pub fn kernel_dim_estimate(m: &ToeplitzMatrix, rel_tol: f64) -> Result<KernelEstimate> {
    if m.dim() == 0 {
        return Err(invalid("kernel estimate of an empty matrix"));
    }
    if !(rel_tol > 0.0 && rel_tol <= 1e-3) {
        return Err(invalid(format!("kernel tolerance must lie in (0, 1e-3], got {rel_tol}")));
    }
    let spec = m.spectrum()?;
    let scale = spec.max_abs();
    let threshold = rel_tol * scale.max(f64::MIN_POSITIVE);
    let dimension = spec.values.iter().filter(|v| v.abs() <= threshold).count();
    let census = match m.provenance.circle_radius {
        Some(_) if m.level == 0 => Some(0),
        Some(r) => Some(census::multiplicity(&m.field, m.level, r)?.multiplicity),
        None => None,
    };
    Ok(KernelEstimate { dimension, threshold, degenerate: scale == 0.0, census, caveat: TRUNCATION_CAVEAT })
}
