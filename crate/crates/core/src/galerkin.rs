//! Finite sections of `H_υ = H_0 + υδ_Γ` on `span{φ_{k,j} : j <= Q, k <= K}`.
//!
//! The section is `H = diag(Λ_j ⊗ I) + s B` with
//! `B_{(j,k),(j',k')} = Σ υ conj(φ_{k,j}) φ_{k',j'} ds`, the same convention as
//! [`crate::toeplitz`], so the `(q,q)` block of `B` is the level-`q` Toeplitz
//! matrix. Index `(j,k)` sits at `j(K+1) + k`.
//!
//! Only statements that are exact in finite sections are made here: a basis
//! vector whose function vanishes on `Γ` stays an eigenvector at `Λ_j`, and
//! a semidefinite coupling moves eigenvalues monotonically.

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::basis::{BasisIndex, MagneticField, Point};
use crate::census;
use crate::curve::{load_weight, make_circle, JordanCurve, WeightSource, WeightedCurve, DEFAULT_NODES};
use crate::error::{invalid, Result};
use crate::toeplitz::{
    self, basis_matrix, circle_about, hermitian_spectrum, max_abs_diff, node_points, node_weights, weighted_gram,
    AssemblyOptions, Spectrum,
};

/// `|λ - Λ_j|` below this counts as an exact hit.
pub const EXACT_HIT_TOL: f64 = 1e-9;
/// Largest weight an eigenvector may carry outside the witness coordinates.
pub const SUPPORT_TOL: f64 = 1e-8;
/// Basis functions whose curve mass `Σ|φ_{k,q}|² ds` falls below this fraction
/// of the largest one are dropped from the default section.
pub const VISIBILITY_TOL: f64 = 1e-4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CouplingSign {
    #[serde(rename = "+1")]
    Plus,
    #[serde(rename = "-1")]
    Minus,
}

impl CouplingSign {
    pub const BOTH: [CouplingSign; 2] = [CouplingSign::Plus, CouplingSign::Minus];

    pub fn value(self) -> f64 {
        match self {
            CouplingSign::Plus => 1.0,
            CouplingSign::Minus => -1.0,
        }
    }
}

impl fmt::Display for CouplingSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CouplingSign::Plus => "+1",
            CouplingSign::Minus => "-1",
        })
    }
}

impl FromStr for CouplingSign {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "+1" | "1" | "+" | "plus" => Ok(CouplingSign::Plus),
            "-1" | "-" | "minus" => Ok(CouplingSign::Minus),
            other => Err(invalid(format!("coupling sign must be +1 or -1, got {other:?}"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct GalerkinModel {
    field: MagneticField,
    levels: usize,
    truncation: usize,
    sign: CouplingSign,
    weighted_curve: WeightedCurve,
    center: Point,
    coupling: DMatrix<Complex64>,
    matrix: DMatrix<Complex64>,
    resolution_defect: Option<f64>,
    underresolved: bool,
}

fn model_indices(levels: usize, truncation: usize) -> Vec<BasisIndex> {
    (0..=levels).flat_map(|j| (0..=truncation).map(move |k| BasisIndex::new(k, j))).collect()
}

fn coupling_matrix(field: &MagneticField, levels: usize, truncation: usize, wc: &WeightedCurve, center: Point) -> DMatrix<Complex64> {
    let phi = basis_matrix(field, &model_indices(levels, truncation), &node_points(wc), center);
    weighted_gram(&phi, &node_weights(wc))
}

pub fn assemble_model(
    field: &MagneticField,
    levels: usize,
    truncation: usize,
    wc: &WeightedCurve,
    sign: CouplingSign,
) -> Result<GalerkinModel> {
    assemble_model_with(field, levels, truncation, wc, sign, &AssemblyOptions::default())
}

pub fn assemble_model_with(
    field: &MagneticField,
    levels: usize,
    truncation: usize,
    wc: &WeightedCurve,
    sign: CouplingSign,
    opts: &AssemblyOptions,
) -> Result<GalerkinModel> {
    let coupling = coupling_matrix(field, levels, truncation, wc, opts.center);
    let (resolution_defect, underresolved) = if opts.check_resolution {
        let fine = coupling_matrix(field, levels, truncation, &wc.with_nodes(2 * wc.rule().len())?, opts.center);
        let defect = max_abs_diff(&coupling, &fine);
        (Some(defect), defect > toeplitz::RESOLUTION_TOL)
    } else {
        (None, false)
    };
    let block = truncation + 1;
    let s = Complex64::new(sign.value(), 0.0);
    let mut matrix = &coupling * s;
    for i in 0..matrix.nrows() {
        matrix[(i, i)] += field.landau_level(i / block);
    }
    Ok(GalerkinModel {
        field: *field,
        levels,
        truncation,
        sign,
        weighted_curve: wc.clone(),
        center: opts.center,
        coupling,
        matrix,
        resolution_defect,
        underresolved,
    })
}

impl GalerkinModel {
    pub fn field(&self) -> MagneticField {
        self.field
    }

    /// Level cutoff `Q`.
    pub fn levels(&self) -> usize {
        self.levels
    }

    /// Angular cutoff `K`.
    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn sign(&self) -> CouplingSign {
        self.sign
    }

    pub fn weighted_curve(&self) -> &WeightedCurve {
        &self.weighted_curve
    }

    pub fn center(&self) -> Point {
        self.center
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn index(&self, j: usize, k: usize) -> usize {
        j * (self.truncation + 1) + k
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    /// The cross-level form matrix `B`.
    pub fn coupling(&self) -> &DMatrix<Complex64> {
        &self.coupling
    }

    /// The `(j, j')` block of `B`.
    pub fn coupling_block(&self, j: usize, jp: usize) -> DMatrix<Complex64> {
        let n = self.truncation + 1;
        self.coupling.view((j * n, jp * n), (n, n)).into_owned()
    }

    pub fn resolution_defect(&self) -> Option<f64> {
        self.resolution_defect
    }

    pub fn underresolved(&self) -> bool {
        self.underresolved
    }

    /// Unperturbed diagonal, ascending.
    pub fn unperturbed(&self) -> Vec<f64> {
        (0..self.dim()).map(|i| self.field.landau_level(i / (self.truncation + 1))).collect()
    }

    pub fn spectrum(&self) -> Result<Spectrum> {
        hermitian_spectrum(&self.matrix)
    }
}

/// Mass of each level-`q` basis function on the curve, `Σ |φ_{k,q}|² ds`.
fn curve_mass(field: &MagneticField, q: usize, curve: &JordanCurve, k_max: usize, center: Point) -> Result<Vec<f64>> {
    let wc = load_weight(curve, WeightSource::Constant(1.0), DEFAULT_NODES)?;
    let indices: Vec<BasisIndex> = (0..=k_max).map(|k| BasisIndex::new(k, q)).collect();
    let phi = basis_matrix(field, &indices, &node_points(&wc), center);
    let ds = node_weights(&wc);
    Ok((0..=k_max).map(|k| phi.column(k).iter().zip(&ds).map(|(z, w)| z.norm_sqr() * w).sum()).collect())
}

/// Default angular cutoff for a section studying level `q`.
///
/// Starts from the Toeplitz default and keeps the largest `k` whose curve mass
/// is at least `VISIBILITY_TOL` times the largest one. Functions that barely
/// see the curve would otherwise contribute eigenvalues indistinguishable from
/// `Λ_q`. For a circle about `center` the cutoff is raised to include every
/// census witness.
pub fn default_truncation(field: &MagneticField, q: usize, curve: &JordanCurve, center: Point) -> Result<usize> {
    let top = toeplitz::default_truncation(field, q, curve, center);
    let mass = curve_mass(field, q, curve, top, center)?;
    let peak = mass.iter().copied().fold(0.0, f64::max);
    let mut k = mass.iter().rposition(|&m| m >= VISIBILITY_TOL * peak).unwrap_or(0).max(q);
    if q >= 1 {
        if let Some(r) = circle_about(curve, center) {
            let m = census::multiplicity(field, q, r)?;
            k = m.witnesses.iter().map(|w| w.k).fold(k, usize::max);
        }
    }
    Ok(k)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LevelCluster {
    pub level: usize,
    #[serde(rename = "Lambda")]
    pub lambda: f64,
    /// Eigenvalues nearest to `Λ_j`, ascending.
    pub eigenvalues: Vec<f64>,
    /// Signed offsets `λ - Λ_j`.
    pub offsets: Vec<f64>,
    pub count: usize,
    pub min_offset: Option<f64>,
    pub max_offset: Option<f64>,
    /// Eigenvalues with `|λ - Λ_j| < EXACT_HIT_TOL`.
    pub exact_hits: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClusterReport {
    pub levels: Vec<LevelCluster>,
}

impl ClusterReport {
    pub fn level(&self, j: usize) -> Option<&LevelCluster> {
        self.levels.get(j)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

/// Groups the eigenvalues by nearest Landau level (ties go to the lower one).
pub fn cluster_report(model: &GalerkinModel) -> Result<ClusterReport> {
    let spec = model.spectrum()?;
    Ok(cluster_values(&model.field, model.levels, &spec.values))
}

fn cluster_values(field: &MagneticField, levels: usize, values: &[f64]) -> ClusterReport {
    let mut groups: Vec<Vec<f64>> = vec![Vec::new(); levels + 1];
    for &v in values {
        let j = (0..=levels)
            .min_by(|&a, &b| (v - field.landau_level(a)).abs().total_cmp(&(v - field.landau_level(b)).abs()))
            .unwrap_or(0);
        groups[j].push(v);
    }
    let levels = groups
        .into_iter()
        .enumerate()
        .map(|(j, mut eigenvalues)| {
            eigenvalues.sort_by(f64::total_cmp);
            let lambda = field.landau_level(j);
            let offsets: Vec<f64> = eigenvalues.iter().map(|v| v - lambda).collect();
            let exact_hits = eigenvalues.iter().copied().filter(|v| (v - lambda).abs() < EXACT_HIT_TOL).collect();
            LevelCluster {
                level: j,
                lambda,
                count: eigenvalues.len(),
                min_offset: offsets.iter().copied().reduce(f64::min),
                max_offset: offsets.iter().copied().reduce(f64::max),
                eigenvalues,
                offsets,
                exact_hits,
            }
        })
        .collect();
    ClusterReport { levels }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PersistenceWitness {
    /// Angular index of the dominant witness coordinate.
    pub k: usize,
    pub eigenvalue: f64,
    /// Norm of the eigenvector outside the witness coordinates.
    pub leakage: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SignOutcome {
    pub sign: CouplingSign,
    /// `min |λ - Λ_q|` over the section.
    pub nearest: f64,
    pub witness: Option<PersistenceWitness>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PersistenceReport {
    pub persists: bool,
    pub level: usize,
    pub radius: f64,
    pub truncation: usize,
    pub levels: usize,
    /// Census witnesses `k` with `φ_{k,q} = 0` on the circle.
    pub census_ks: Vec<usize>,
    pub outcomes: Vec<SignOutcome>,
}

/// Checks that `Λ_q` survives as an eigenvalue of the section on the circle of
/// radius `r`, for both coupling signs, with an eigenvector carried by the
/// census witnesses. `K` and `Q` default to [`default_truncation`] and `q+2`.
pub fn persistence_check(
    field: &MagneticField,
    q: usize,
    r: f64,
    truncation: Option<usize>,
    levels: Option<usize>,
    weight: WeightSource,
) -> Result<PersistenceReport> {
    let curve = make_circle(r)?;
    let census_ks: Vec<usize> = if q == 0 {
        Vec::new()
    } else {
        census::multiplicity(field, q, r)?.witnesses.iter().map(|w| w.k).collect()
    };
    let truncation = match truncation {
        Some(k) => k,
        None => default_truncation(field, q, &curve, Point::ORIGIN)?,
    };
    let levels = levels.unwrap_or(q + 2);
    if levels < q {
        return Err(invalid(format!("level cutoff Q = {levels} is below the studied level {q}")));
    }
    let wc = load_weight(&curve, weight, DEFAULT_NODES)?;
    let lambda_q = field.landau_level(q);
    let opts = AssemblyOptions { center: Point::ORIGIN, check_resolution: false };
    let mut outcomes = Vec::with_capacity(2);
    for sign in CouplingSign::BOTH {
        let model = assemble_model_with(field, levels, truncation, &wc, sign, &opts)?;
        let spec = model.spectrum()?;
        let support: Vec<usize> = census_ks.iter().filter(|&&k| k <= truncation).map(|&k| model.index(q, k)).collect();
        let nearest = spec.values.iter().map(|v| (v - lambda_q).abs()).fold(f64::INFINITY, f64::min);
        let mut witness: Option<PersistenceWitness> = None;
        for (col, &v) in spec.values.iter().enumerate() {
            if (v - lambda_q).abs() >= EXACT_HIT_TOL || support.is_empty() {
                continue;
            }
            let vec = spec.vectors.column(col);
            let inside: f64 = support.iter().map(|&i| vec[i].norm_sqr()).sum();
            let leakage = (vec.norm_squared() - inside).max(0.0).sqrt();
            let dominant = *support.iter().max_by(|&&a, &&b| vec[a].norm().total_cmp(&vec[b].norm())).unwrap();
            let candidate = PersistenceWitness { k: dominant % (truncation + 1), eigenvalue: v, leakage };
            if witness.as_ref().is_none_or(|w| leakage < w.leakage) {
                witness = Some(candidate);
            }
        }
        outcomes.push(SignOutcome { sign, nearest, witness });
    }
    let persists = outcomes.iter().all(|o| o.witness.as_ref().is_some_and(|w| w.leakage < SUPPORT_TOL));
    Ok(PersistenceReport { persists, level: q, radius: r, truncation, levels, census_ks, outcomes })
}
