//! Resonant radii of circles.
//!
//! The circle `C_r` about the origin is invisible to `φ_{k,q}` exactly when
//! `t = br²/2` is a zero of `L_q^{(k-q)}`. The multiplicity `m_q(r)` counts
//! such `k`, and `D_q` is the set of radii with `m_q(r) >= 1`. All work is done
//! in the `t` variable; radii are produced at the end.
//!
//! The enumeration over `k` stops once the smallest zero of `L_q^{(k-q)}`
//! exceeds the target, which is sound because each zero increases with the
//! parameter.

use serde::Serialize;

use crate::basis::MagneticField;
use crate::error::{invalid, Error, Result};
use crate::special::LaguerreSpec;

/// Relative tolerance for identifying zeros and merging radii, in `t`.
pub const ZERO_REL_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Witness {
    /// Angular index of the basis function vanishing on the circle.
    pub k: usize,
    /// The Laguerre zero `t` of `L_q^{(k-q)}`.
    pub t: f64,
}

/// Multiplicity `m_q(r)` at a given radius with its witnesses.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Multiplicity {
    pub t: f64,
    pub multiplicity: usize,
    pub witnesses: Vec<Witness>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CensusEntry {
    pub radius: f64,
    pub t: f64,
    pub multiplicity: usize,
    pub witnesses: Vec<Witness>,
}

fn check_level(q: usize) -> Result<()> {
    if q == 0 {
        return Err(invalid(
            "resonant radii are only defined for q >= 1: the lowest-level Toeplitz kernel is trivial for every curve",
        ));
    }
    Ok(())
}

/// Positive zeros of `L_q^{(k-q)}`.
fn level_zeros(q: usize, k: usize) -> Result<Vec<f64>> {
    LaguerreSpec::new(q, k as f64 - q as f64).positive_zeros()
}

/// Sweeps `k = 0, 1, …` and hands every positive zero `<= t_max` to `visit`.
fn sweep(q: usize, t_max: f64, mut visit: impl FnMut(usize, f64)) -> Result<()> {
    let limit = t_max * (1.0 + ZERO_REL_TOL);
    for k in 0.. {
        let zeros = level_zeros(q, k)?;
        for &z in &zeros {
            if z <= limit {
                visit(k, z);
            }
        }
        if k >= q && zeros.first().is_none_or(|&z| z > limit) {
            break;
        }
    }
    Ok(())
}

/// `m_q(r) = #{k : L_q^{(k-q)}(br²/2) = 0}`.
pub fn multiplicity(field: &MagneticField, q: usize, r: f64) -> Result<Multiplicity> {
    check_level(q)?;
    if !(r > 0.0 && r.is_finite()) {
        return Err(invalid(format!("radius must be positive, got {r}")));
    }
    let t = field.radius_to_t(r);
    let mut witnesses = Vec::new();
    sweep(q, t, |k, z| {
        if (z - t).abs() <= ZERO_REL_TOL * t {
            witnesses.push(Witness { k, t: z });
        }
    })?;
    Ok(Multiplicity { t, multiplicity: witnesses.len(), witnesses })
}

/// All resonant radii in `(0, r_max]` with their multiplicities, increasing.
pub fn census(field: &MagneticField, q: usize, r_max: f64) -> Result<Vec<CensusEntry>> {
    check_level(q)?;
    if !(r_max > 0.0 && r_max.is_finite()) {
        return Err(invalid(format!("r_max must be positive, got {r_max}")));
    }
    let mut hits: Vec<Witness> = Vec::new();
    sweep(q, field.radius_to_t(r_max), |k, t| hits.push(Witness { k, t }))?;
    hits.sort_by(|a, b| a.t.total_cmp(&b.t).then(a.k.cmp(&b.k)));

    let mut entries: Vec<CensusEntry> = Vec::new();
    for w in hits {
        match entries.last_mut() {
            Some(e) if (w.t - e.t).abs() <= ZERO_REL_TOL * e.t => {
                e.witnesses.push(w);
                e.multiplicity += 1;
            }
            _ => entries.push(CensusEntry { radius: 0.0, t: w.t, multiplicity: 1, witnesses: vec![w] }),
        }
    }
    for e in &mut entries {
        e.t = e.witnesses.iter().map(|w| w.t).sum::<f64>() / e.witnesses.len() as f64;
        e.radius = field.t_to_radius(e.t);
    }
    Ok(entries)
}

pub fn census_csv(entries: &[CensusEntry]) -> String {
    let mut out = String::from("r,t,multiplicity,witness_ks\n");
    for e in entries {
        let ks: Vec<String> = e.witnesses.iter().map(|w| w.k.to_string()).collect();
        out.push_str(&format!("{:.16e},{:.16e},{},{}\n", e.radius, e.t, e.multiplicity, ks.join(";")));
    }
    out
}

/// Closed-form resonant sets for the first two excited levels.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExplicitSets {
    /// `D_1 = √((2/b)ℕ)`.
    pub d1: Vec<f64>,
    /// `D_2 = √((2/b)((ℕ+1) - √(ℕ+1))) ∪ √((2/b)(ℕ + √ℕ))`.
    pub d2: Vec<f64>,
    /// `D_{2,2} = √((2/b)(ℕ² + ℕ))`, where the multiplicity is two.
    pub d22: Vec<f64>,
    /// `D_{2,1} = D_2 \ D_{2,2}`.
    pub d21: Vec<f64>,
}

impl ExplicitSets {
    /// Keeps only radii `<= r_max`.
    pub fn up_to(&self, r_max: f64) -> Self {
        let cut = |v: &Vec<f64>| v.iter().copied().filter(|&r| r <= r_max * (1.0 + 1e-12)).collect();
        Self { d1: cut(&self.d1), d2: cut(&self.d2), d22: cut(&self.d22), d21: cut(&self.d21) }
    }
}

fn sorted_unique(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(f64::total_cmp);
    v.dedup_by(|a, b| (*a - *b).abs() <= ZERO_REL_TOL * b.abs());
    v
}

/// The sets `D_1`, `D_2`, `D_{2,2}`, `D_{2,1}` generated by `n = 1..=n_max`.
pub fn explicit_d12(field: &MagneticField, n_max: usize) -> Result<ExplicitSets> {
    if n_max == 0 {
        return Err(invalid("n_max must be at least 1"));
    }
    let s = 2.0 / field.strength();
    let radius = |t: f64| (s * t).sqrt();
    let ns = || (1..=n_max).map(|n| n as f64);
    let d1 = ns().map(radius).collect();
    let d2 = sorted_unique(
        ns().map(|n| radius((n + 1.0) - (n + 1.0).sqrt()))
            .chain(ns().map(|n| radius(n + n.sqrt())))
            .collect(),
    );
    let d22: Vec<f64> = ns().map(|n| radius(n * n + n)).collect();
    let d21 = d2
        .iter()
        .copied()
        .filter(|r| !d22.iter().any(|x| (x - r).abs() <= ZERO_REL_TOL * r))
        .collect();
    Ok(ExplicitSets { d1, d2, d22, d21 })
}

/// The ℓ-th largest zero `ζ_ℓ(α)` of `L_q^{(α)}`, extended to
/// `α ∈ [ℓ - q, 0)` by `ζ_ℓ(-n) = z_{ℓ,q-n}` at negative integers and linear
/// interpolation in between. `z_{m,k}` is the m-th largest positive zero of
/// `L_q^{(k-q)}`.
pub fn zeta_curve(q: usize, ell: usize, alpha: f64) -> Result<f64> {
    if ell == 0 || ell > q {
        return Err(invalid(format!("zero index ℓ = {ell} must lie in 1..={q}")));
    }
    let lower = ell as f64 - q as f64;
    if !(alpha >= lower) || !alpha.is_finite() {
        return Err(invalid(format!("alpha = {alpha} outside the domain [{lower}, ∞) of ζ_{ell} for q = {q}")));
    }
    let ell_th_largest = |zeros: Vec<f64>| -> Result<f64> {
        zeros
            .iter()
            .rev()
            .nth(ell - 1)
            .copied()
            .ok_or_else(|| Error::InvalidArgument(format!("no zero ζ_{ell}")))
    };
    let at_integer = |j: i64| -> Result<f64> {
        if j >= 0 {
            ell_th_largest(LaguerreSpec::new(q, j as f64).positive_zeros()?)
        } else {
            let k = (q as i64 + j) as usize;
            ell_th_largest(level_zeros(q, k)?)
        }
    };
    if alpha >= 0.0 {
        return ell_th_largest(LaguerreSpec::new(q, alpha).positive_zeros()?);
    }
    let lo = alpha.floor();
    let frac = alpha - lo;
    let z_lo = at_integer(lo as i64)?;
    if frac == 0.0 {
        return Ok(z_lo);
    }
    let z_hi = at_integer(lo as i64 + 1)?;
    Ok(z_lo + frac * (z_hi - z_lo))
}

/// `η_ℓ(α) = √(2 ζ_ℓ(α) / b)`.
pub fn eta_curve(field: &MagneticField, q: usize, ell: usize, alpha: f64) -> Result<f64> {
    Ok(field.t_to_radius(zeta_curve(q, ell, alpha)?))
}

/// CSV `alpha,eta_1,…,eta_q` on the grid `alpha_min, alpha_min + step, …`;
/// cells outside a curve's domain are left empty.
pub fn eta_csv(field: &MagneticField, q: usize, alpha_min: f64, alpha_max: f64, step: f64) -> Result<String> {
    check_level(q)?;
    if !(step > 0.0) || !(alpha_max >= alpha_min) {
        return Err(invalid("eta grid needs step > 0 and alpha_max >= alpha_min"));
    }
    let mut out = String::from("alpha");
    for ell in 1..=q {
        out.push_str(&format!(",eta_{ell}"));
    }
    out.push('\n');
    let count = ((alpha_max - alpha_min) / step + 1e-9).floor() as usize;
    for i in 0..=count {
        let alpha = alpha_min + i as f64 * step;
        out.push_str(&format!("{alpha:.16e}"));
        for ell in 1..=q {
            out.push(',');
            if alpha >= ell as f64 - q as f64 {
                out.push_str(&format!("{:.16e}", eta_curve(field, q, ell, alpha)?));
            }
        }
        out.push('\n');
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GapConstants {
    /// `m_q^+(λ) = 2b/((Λ_q+λ)(Λ_{q-1}+λ))`; absent for `q = 0`.
    pub plus: Option<f64>,
    /// `m_q^-(λ) = 2b/((Λ_q+λ)(Λ_{q+1}+λ))`.
    pub minus: f64,
}

pub fn gap_constants(field: &MagneticField, q: usize, lambda: f64) -> Result<GapConstants> {
    let b = field.strength();
    if !(lambda > -b) {
        return Err(invalid(format!("spectral parameter must exceed -b = {}, got {lambda}", -b)));
    }
    let lq = field.landau_level(q) + lambda;
    let plus = (q >= 1).then(|| 2.0 * b / (lq * (field.landau_level(q - 1) + lambda)));
    let minus = 2.0 * b / (lq * (field.landau_level(q + 1) + lambda));
    Ok(GapConstants { plus, minus })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CouplingBounds {
    /// Lower bound `2bc/((Λ_q+1)(Λ_{q-1}+1))` for the admissible coupling of
    /// `H_υ`; infinite for `q = 0`.
    pub plus: f64,
    /// Lower bound `2bc/(2b + (Λ_q+1)(Λ_{q+1}+1))` for `H_{-υ}`.
    pub minus: f64,
}

/// Lower bounds on the coupling sizes below which the Landau-level kernel of
/// the perturbed operator coincides with the Toeplitz kernel. `c` is the
/// (not computed) trace constant and must be supplied.
pub fn coupling_lower_bounds(field: &MagneticField, q: usize, c: f64) -> Result<CouplingBounds> {
    if !(c > 0.0 && c.is_finite()) {
        return Err(invalid(format!("trace constant c must be positive, got {c}")));
    }
    let b = field.strength();
    let lq = field.landau_level(q) + 1.0;
    let plus = if q == 0 { f64::INFINITY } else { 2.0 * b * c / (lq * (field.landau_level(q - 1) + 1.0)) };
    let minus = 2.0 * b * c / (2.0 * b + lq * (field.landau_level(q + 1) + 1.0));
    Ok(CouplingBounds { plus, minus })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(v: f64) -> MagneticField {
        MagneticField::new(v).unwrap()
    }

    #[test]
    fn multiplicity_examples() {
        let m = multiplicity(&b(2.0), 1, 1.0).unwrap();
        assert_eq!(m.multiplicity, 1);
        assert_eq!(m.witnesses[0].k, 1);
        let m = multiplicity(&b(2.0), 2, 2f64.sqrt()).unwrap();
        assert_eq!(m.multiplicity, 2);
        assert_eq!(m.witnesses.iter().map(|w| w.k).collect::<Vec<_>>(), vec![1, 4]);
        assert_eq!(multiplicity(&b(2.0), 1, 0.5f64.sqrt()).unwrap().multiplicity, 0);
        assert!(multiplicity(&b(2.0), 0, 1.0).is_err());
        assert!(multiplicity(&b(2.0), 1, 0.0).is_err());
    }

    #[test]
    fn first_level_census() {
        let entries = census(&b(2.0), 1, 3.0).unwrap();
        let radii: Vec<f64> = entries.iter().map(|e| e.radius).collect();
        let expected: Vec<f64> = (1..=9).map(|n| (n as f64).sqrt()).collect();
        assert_eq!(radii.len(), expected.len());
        for (r, e) in radii.iter().zip(&expected) {
            assert!((r - e).abs() < 1e-12);
        }
        assert!(entries.iter().all(|e| e.multiplicity == 1));
        assert!(census(&b(2.0), 0, 3.0).is_err());
    }

    #[test]
    fn second_level_small_census() {
        let entries = census(&b(2.0), 2, 1.5).unwrap();
        let ts: Vec<(f64, usize)> = entries.iter().map(|e| (e.t, e.multiplicity)).collect();
        // zeros k ± √k below t = 2.25: 2 - √2, 3 - √3, 2 (k = 1 and k = 4)
        let expected = [(2.0 - 2f64.sqrt(), 1), (3.0 - 3f64.sqrt(), 1), (2.0, 2)];
        assert_eq!(ts.len(), expected.len());
        for ((t, m), (et, em)) in ts.iter().zip(&expected) {
            assert!((t - et).abs() < 1e-12, "{t} vs {et}");
            assert_eq!(m, em);
        }
    }

    #[test]
    fn explicit_sets() {
        let s = explicit_d12(&b(2.0), 3).unwrap();
        assert_eq!(s.d1.len(), 3);
        for (r, n) in s.d1.iter().zip(1..) {
            assert!((r - (n as f64).sqrt()).abs() < 1e-15);
        }
        assert!((s.d22[0] - 2f64.sqrt()).abs() < 1e-15);
        assert!((explicit_d12(&b(8.0), 1).unwrap().d1[0] - 0.5).abs() < 1e-15);
        assert!(explicit_d12(&b(1.0), 0).is_err());
    }

    #[test]
    fn eta_examples() {
        let f = b(2.0);
        for k in 1..8usize {
            let eta = eta_curve(&f, 1, 1, k as f64 - 1.0).unwrap();
            assert!((eta - (2.0 * k as f64 / 2.0).sqrt()).abs() < 1e-12);
        }
        let eta = eta_curve(&f, 2, 1, 0.0).unwrap();
        assert!((eta - (2.0 * (2.0 + 2f64.sqrt()) / 2.0).sqrt()).abs() < 1e-12);
        // ζ_1(-1) = z_{1,1}, the positive zero of L_2^{(-1)}, i.e. of L_1^{(1)}: 2
        let eta = eta_curve(&f, 2, 1, -1.0).unwrap();
        assert!((eta - (4.0f64 / 2.0).sqrt()).abs() < 1e-12);
        assert!(eta_curve(&f, 2, 2, -1.0).is_err());
        assert!(eta_curve(&f, 2, 3, 0.0).is_err());
        // linear interpolation on (-1, 0)
        let mid = zeta_curve(2, 1, -0.5).unwrap();
        assert!((mid - 0.5 * (2.0 + 2.0 + 2f64.sqrt())).abs() < 1e-12);
    }

    #[test]
    fn gap_and_coupling_values() {
        let f = b(1.0);
        let g = gap_constants(&f, 1, 0.0).unwrap();
        assert_eq!(g.plus, Some(2.0 / 3.0));
        assert_eq!(g.minus, 2.0 / 15.0);
        assert!(gap_constants(&f, 0, 0.0).unwrap().plus.is_none());
        assert!(gap_constants(&f, 1, -1.0).is_err());
        let c = coupling_lower_bounds(&f, 1, 1.0).unwrap();
        assert_eq!(c.plus, 0.25);
        assert_eq!(c.minus, 2.0 / 26.0);
        assert!(coupling_lower_bounds(&f, 0, 1.0).unwrap().plus.is_infinite());
        assert!(coupling_lower_bounds(&f, 1, 0.0).is_err());
    }

    #[test]
    fn csv_shapes() {
        let entries = census(&b(2.0), 2, 1.5).unwrap();
        let csv = census_csv(&entries);
        assert!(csv.starts_with("r,t,multiplicity,witness_ks\n"));
        assert!(csv.lines().last().unwrap().ends_with(",2,1;4"));
        let eta = eta_csv(&b(2.0), 2, -1.0, 1.0, 0.5).unwrap();
        let lines: Vec<&str> = eta.lines().collect();
        assert_eq!(lines[0], "alpha,eta_1,eta_2");
        assert_eq!(lines.len(), 6);
        assert!(lines[1].ends_with(','));
    }
}
