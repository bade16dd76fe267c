//! Deterministic self-check suite behind `landau verify`.
//!
//! Each check recomputes a known identity at small sizes; random sample points
//! come from a seeded ChaCha generator so the output is reproducible.

use std::f64::consts::{PI, TAU};
use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::basis::{
    annihilation_residual, basis_eval, translated_inner_product, BasisIndex, MagneticField, Point, PolarRule,
    DEFAULT_FD_STEP,
};
use crate::census::{census, coupling_lower_bounds, explicit_d12, gap_constants, multiplicity};
use crate::curve::{arclength_rule, ellipse_perimeter_reference, load_weight, JordanCurve, WeightSource};
use crate::galerkin::{assemble_model, persistence_check, CouplingSign};
use crate::special::{orthogonality_defect, GaussLaguerre, LaguerreSpec};
use crate::toeplitz::{self, assemble, assemble_with, circle_diagonal, hermitian_spectrum, AssemblyOptions};
use crate::Result;

pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.pass).count()
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{} {}: {}", if c.pass { "ok  " } else { "FAIL" }, c.name, c.detail)?;
        }
        writeln!(f, "{} checks, {} failed (seed {})", self.checks.len(), self.failures(), self.seed)
    }
}

type CheckFn = fn(&mut ChaCha8Rng) -> Result<(bool, String)>;

pub fn run_suite(seed: u64) -> VerifyReport {
    let checks: [(&'static str, CheckFn); 16] = [
        ("laguerre zeros", laguerre_zeros),
        ("laguerre interlacing", laguerre_interlacing),
        ("laguerre reflection", laguerre_reflection),
        ("laguerre orthogonality", laguerre_orthogonality),
        ("basis orthonormality", basis_gram),
        ("basis rotation covariance", basis_rotation),
        ("basis nodal radii", basis_nodal_radii),
        ("basis annihilation", basis_annihilation),
        ("magnetic translation", basis_translation),
        ("curve arclength", curve_arclength),
        ("toeplitz circle diagonal", toeplitz_circle),
        ("toeplitz sign and linearity", toeplitz_sign),
        ("toeplitz recentring", toeplitz_recentring),
        ("census closed forms and bound", census_checks),
        ("scalar constants", scalar_constants),
        ("galerkin sections", galerkin_checks),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let checks = checks
        .iter()
        .map(|&(name, run)| match run(&mut rng) {
            Ok((pass, detail)) => Check { name, pass, detail },
            Err(e) => Check { name, pass: false, detail: format!("error: {e}") },
        })
        .collect();
    VerifyReport { seed, checks }
}

fn field(b: f64) -> MagneticField {
    MagneticField::new(b).expect("positive field")
}

fn laguerre_zeros(_: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let mut worst = 0.0f64;
    let mut alternates = true;
    for q in 1..=8 {
        for alpha in [0.0, 0.5, 3.0, 7.25] {
            let spec = LaguerreSpec::new(q, alpha);
            let zeros = spec.positive_zeros()?;
            for &z in &zeros {
                worst = worst.max(spec.eval(z).abs() / spec.scale(z));
            }
            // sign alternates between consecutive zeros
            let mids: Vec<f64> = zeros.windows(2).map(|w| spec.eval(0.5 * (w[0] + w[1]))).collect();
            alternates &= mids.windows(2).all(|w| w[0] * w[1] < 0.0);
        }
    }
    Ok((worst < 1e-10 && alternates, format!("max |L(z)|/scale {worst:.2e}, alternation {alternates}")))
}

fn laguerre_interlacing(_: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let mut ok = true;
    for q in 1..=8usize {
        let z = |k: usize| -> Result<Vec<f64>> {
            let mut v = LaguerreSpec::new(q, k as f64 - q as f64).positive_zeros()?;
            v.reverse();
            Ok(v)
        };
        for k in 2..=q {
            let (hi, lo) = (z(k)?, z(k - 1)?);
            for m in 0..k - 1 {
                ok &= hi[m + 1] < lo[m] && lo[m] < hi[m];
            }
        }
    }
    Ok((ok, format!("z_(m+1,k) < z_(m,k-1) < z_(m,k) for 1 <= k <= q <= 8: {ok}")))
}

fn laguerre_reflection(rng: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let mut worst = 0.0f64;
    for _ in 0..500 {
        let q = rng.random_range(2..=8usize);
        let k = rng.random_range(1..q);
        let t: f64 = rng.random_range(1e-3..30.0);
        let lhs = LaguerreSpec::new(q, k as f64 - q as f64).eval(t);
        // explicit coefficients of the reflected polynomial
        let inner: f64 = LaguerreSpec::new(k, (q - k) as f64)
            .coefficients()
            .iter()
            .enumerate()
            .map(|(j, c)| c * t.powi(j as i32))
            .sum();
        let ratio: f64 = (k + 1..=q).map(|i| 1.0 / i as f64).product();
        let rhs = ratio * (-t).powi((q - k) as i32) * inner;
        worst = worst.max((lhs - rhs).abs() / rhs.abs());
    }
    Ok((worst < 1e-10, format!("max relative error {worst:.2e} on 500 points")))
}

fn laguerre_orthogonality(_: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let mut worst = 0.0f64;
    for alpha in [0.0, 0.5, 3.0] {
        for q in 0..=12 {
            for p in 0..=12 {
                worst = worst.max(orthogonality_defect(q, p, alpha, 16)?);
            }
        }
    }
    let rule = GaussLaguerre::new(20, 0.5)?;
    let mass: f64 = rule.weights.iter().sum();
    let mass_err = (mass - PI.sqrt() / 2.0).abs();
    Ok((worst < 1e-10 && mass_err < 1e-13, format!("max defect {worst:.2e}, weight mass error {mass_err:.2e}")))
}

fn basis_gram(_: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let rule = PolarRule::standard();
    let mut worst = 0.0f64;
    for b in [0.5, 2.0] {
        let f = field(b);
        for q in 0..=2 {
            for k in 0..=6 {
                for l in k..=6 {
                    let g = rule.inner_product(&f, BasisIndex::new(k, q), BasisIndex::new(l, q));
                    worst = worst.max((g - if k == l { 1.0 } else { 0.0 }).norm());
                }
            }
        }
    }
    Ok((worst < 1e-8, format!("max Gram defect {worst:.2e} (K=6, q<=2)")))
}

fn basis_rotation(rng: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let f = field(1.7);
    let mut worst = 0.0f64;
    for _ in 0..200 {
        let idx = BasisIndex::new(rng.random_range(0..12), rng.random_range(0..5));
        let x = Point::new(rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0));
        let a = basis_eval(&f, idx, x).norm();
        let c = basis_eval(&f, idx, x.rotated(rng.random_range(0.0..TAU))).norm();
        worst = worst.max((a - c).abs() / f.basis_scale());
    }
    Ok((worst < 1e-12, format!("max modulus change under rotation {worst:.2e}")))
}

fn basis_nodal_radii(_: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let f = field(2.0);
    let mut worst = 0.0f64;
    for q in 1..=3 {
        for k in q..q + 5 {
            for z in LaguerreSpec::new(q, (k - q) as f64).positive_zeros()? {
                let r = f.t_to_radius(z);
                for j in 0..64 {
                    let th = TAU * j as f64 / 64.0;
                    let v = basis_eval(&f, BasisIndex::new(k, q), Point::new(r * th.cos(), r * th.sin()));
                    worst = worst.max(v.norm() / f.basis_scale());
                }
            }
        }
    }
    Ok((worst < 1e-10, format!("max |φ| / scale on nodal circles {worst:.2e}")))
}

fn basis_annihilation(rng: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let mut worst = 0.0f64;
    for b in [0.5, 2.0, 4.0] {
        let f = field(b);
        for k in 0..=10 {
            let rho = rng.random_range(0.0..3.0);
            let th = rng.random_range(0.0..TAU);
            worst = worst.max(annihilation_residual(&f, BasisIndex::new(k, 0), Point::new(rho * th.cos(), rho * th.sin()), DEFAULT_FD_STEP)?);
        }
    }
    Ok((worst <= 1e-6, format!("max residual {worst:.2e}")))
}

fn basis_translation(_: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let f = field(2.0);
    let y = Point::new(0.5, -1.2);
    let mut worst = 0.0f64;
    for q in 0..=2 {
        for k in 0..=3 {
            for l in k..=3 {
                let g = translated_inner_product(&f, y, BasisIndex::new(k, q), BasisIndex::new(l, q), 160, 256)?;
                worst = worst.max((g - if k == l { 1.0 } else { 0.0 }).norm());
            }
        }
    }
    Ok((worst < 1e-8, format!("max translated Gram defect {worst:.2e}")))
}

fn curve_arclength(_: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let circle = arclength_rule(&JordanCurve::circle(1.7)?, 256)?.length();
    let circle_err = (circle - TAU * 1.7).abs();
    let ellipse = arclength_rule(&JordanCurve::ellipse(2.0, 0.5)?, 1024)?.length();
    let ellipse_err = (ellipse - ellipse_perimeter_reference(2.0, 0.5, 1 << 16)).abs();
    Ok((
        circle_err < 1e-12 && ellipse_err < 1e-10,
        format!("circle error {circle_err:.2e}, ellipse error {ellipse_err:.2e}"),
    ))
}

fn toeplitz_circle(_: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let f = field(2.0);
    let mut worst_off = 0.0f64;
    let mut worst_diag = 0.0f64;
    for q in 0..=3 {
        for r in [0.7, 1.0, 2f64.sqrt()] {
            let wc = load_weight(&JordanCurve::circle(r)?, WeightSource::Constant(1.0), 512)?;
            let m = assemble(&f, q, &wc, 8)?;
            let e = m.entries();
            let scale = m.max_abs();
            for i in 0..=8 {
                for j in 0..=8 {
                    if i != j {
                        worst_off = worst_off.max(e[(i, j)].norm() / scale);
                    }
                }
                let d = circle_diagonal(&f, q, i, r);
                worst_diag = worst_diag.max((e[(i, i)].re - d).abs() / d.max(1e-12 * scale));
            }
        }
    }
    Ok((
        worst_off < 1e-11 && worst_diag < 1e-8,
        format!("off-diagonal {worst_off:.2e}, diagonal relative error {worst_diag:.2e}"),
    ))
}

fn toeplitz_sign(_: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let f = field(1.5);
    let curve = JordanCurve::ellipse(1.4, 0.8)?;
    let pos = load_weight(&curve, WeightSource::function("2+sin", |t: f64| 2.0 + t.sin()), 512)?;
    let m = assemble(&f, 1, &pos, 8)?;
    let spec = m.spectrum()?;
    let psd = spec.min().unwrap_or(0.0) >= -1e-12 * spec.max_abs();
    let neg = assemble(&f, 1, &pos.scaled(-1.0), 8)?.spectrum()?;
    let nsd = neg.values[0] <= 1e-12 * neg.max_abs();
    let m3 = assemble(&f, 1, &pos.scaled(3.0), 8)?;
    let linear = toeplitz::max_abs_diff(&(m.entries() * Complex64::new(3.0, 0.0)), m3.entries()) <= 1e-14 * m3.max_abs();
    let hermitian = toeplitz::max_abs_diff(m.entries(), &m.entries().adjoint()) == 0.0;
    Ok((
        psd && nsd && linear && hermitian,
        format!("PSD {psd}, NSD {nsd}, linear {linear}, Hermitian {hermitian}"),
    ))
}

fn toeplitz_recentring(_: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let f = field(2.0);
    let c = Point::new(0.6, -0.4);
    let here = load_weight(&JordanCurve::circle(1.2)?, WeightSource::Constant(1.0), 1024)?;
    let there = load_weight(&JordanCurve::circle_at(1.2, c)?, WeightSource::Constant(1.0), 1024)?;
    let a = assemble(&f, 1, &here, 10)?.spectrum()?;
    let opts = AssemblyOptions { center: c, check_resolution: false };
    let b = assemble_with(&f, 1, &there, 10, &opts)?.spectrum()?;
    let worst = a.values.iter().zip(&b.values).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
    Ok((worst < 1e-8, format!("max eigenvalue change {worst:.2e}")))
}

fn census_checks(rng: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let f = field(2.0);
    let d1 = census(&f, 1, 3.0)?;
    let d1_ok = d1.len() == 9
        && d1.iter().zip(1..).all(|(e, n)| ((e.radius - (n as f64).sqrt()) / e.radius).abs() < 1e-10 && e.multiplicity == 1);
    let d2 = census(&f, 2, 3.0)?;
    let sets = explicit_d12(&f, 16)?.up_to(3.0);
    let d2_ok = d2.len() == sets.d2.len()
        && d2.iter().zip(&sets.d2).all(|(e, r)| ((e.radius - r) / r).abs() < 1e-10)
        && d2.iter().all(|e| (e.multiplicity == 2) == sets.d22.iter().any(|r| ((e.radius - r) / r).abs() < 1e-10));
    let mut violations = 0;
    for q in 1..=6 {
        for e in census(&f, q, 3.0)? {
            violations += usize::from(e.multiplicity > q);
        }
        for _ in 0..200 {
            violations += usize::from(multiplicity(&f, q, rng.random_range(0.01..3.0))?.multiplicity > q);
        }
    }
    Ok((d1_ok && d2_ok && violations == 0, format!("D_1 {d1_ok}, D_2 {d2_ok}, bound violations {violations}")))
}

fn scalar_constants(_: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let f = field(1.0);
    let g = gap_constants(&f, 1, 0.0)?;
    let c = coupling_lower_bounds(&f, 1, 1.0)?;
    let exact = g.plus == Some(2.0 / 3.0) && g.minus == 2.0 / 15.0 && c.plus == 0.25 && c.minus == 2.0 / 26.0;
    let mut monotone = true;
    for q in 1..10 {
        let (a, b) = (coupling_lower_bounds(&f, q, 1.0)?, coupling_lower_bounds(&f, q + 1, 1.0)?);
        let (ga, gb) = (gap_constants(&f, q, 0.0)?, gap_constants(&f, q + 1, 0.0)?);
        monotone &= b.plus < a.plus && b.minus < a.minus && gb.plus < ga.plus && gb.minus < ga.minus;
    }
    Ok((exact && monotone, format!("hand values {exact}, decreasing in q {monotone}")))
}

fn ascending(m: &DMatrix<Complex64>) -> Result<Vec<f64>> {
    let mut v = hermitian_spectrum(m)?.values;
    v.reverse();
    Ok(v)
}

fn galerkin_checks(_: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let f = field(2.0);
    let curve = JordanCurve::ellipse(1.3, 0.9)?;
    let wc = load_weight(&curve, WeightSource::function("2+sin", |t: f64| 2.0 + t.sin()), 512)?;
    let plus = assemble_model(&f, 2, 6, &wc, CouplingSign::Plus)?;
    let minus = assemble_model(&f, 2, 6, &wc, CouplingSign::Minus)?;
    let block = toeplitz::max_abs_diff(&plus.coupling_block(1, 1), assemble(&f, 1, &wc, 6)?.entries()) < 1e-12;
    let base = plus.unperturbed();
    let up = ascending(plus.matrix())?;
    let down = ascending(minus.matrix())?;
    let weyl = up.iter().zip(&base).all(|(a, b)| *a >= b - 1e-12) && down.iter().zip(&base).all(|(a, b)| *a <= b + 1e-12);
    let order = up.iter().zip(&down).all(|(a, b)| a >= b);
    let persists = persistence_check(&f, 1, 1.0, None, None, WeightSource::Constant(1.0))?.persists;
    let not_resonant = !persistence_check(&f, 1, 1.3, None, None, WeightSource::Constant(1.0))?.persists;
    Ok((
        block && weyl && order && persists && not_resonant,
        format!("block {block}, Weyl {weyl}, sign order {order}, persistence {persists}/{not_resonant}"),
    ))
}
