//! The angular-momentum orthonormal basis `φ_{k,q}` of the Landau level
//! `ker(H_0 - Λ_q)` in the symmetric gauge `A(x) = (b/2)(-x₂, x₁)`:
//!
//! ```text
//! φ_{k,q}(x) = i^{-q} √(b/2π) √(q!/k!) (√(b/2) z)^{k-q} L_q^{(k-q)}(b|x|²/2) e^{-b|x|²/4}
//! ```
//!
//! with `z = x₁ + i x₂`. Values are assembled in log space so that large
//! angular indices and radii neither overflow nor underflow prematurely. For
//! `k < q` the reflection identity turns `z^{k-q} L_q^{(k-q)}` into
//! `(k!/q!) (-z̄)^{q-k} L_k^{(q-k)}`, which is finite at the origin.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::special::{ln_factorial, GaussLaguerre, GaussLegendre, LaguerreSpec};

pub const DEFAULT_RADIAL_NODES: usize = 128;
pub const DEFAULT_ANGULAR_NODES: usize = 256;
pub const DEFAULT_FD_STEP: f64 = 1e-4;

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn norm_sqr(self) -> f64 {
        self.x * self.x + self.y * self.y
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    /// `x ∧ y = x₁y₂ - x₂y₁`.
    pub fn wedge(self, other: Point) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn rotated(self, angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        Self::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }
}

impl std::ops::Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl std::ops::Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

/// Constant magnetic field of strength `b > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MagneticField {
    b: f64,
}

impl MagneticField {
    pub fn new(b: f64) -> Result<Self> {
        if !(b > 0.0 && b.is_finite()) {
            return Err(invalid(format!("magnetic field must be positive and finite, got {b}")));
        }
        Ok(Self { b })
    }

    pub fn strength(&self) -> f64 {
        self.b
    }

    /// `Λ_q = b(2q + 1)`.
    pub fn landau_level(&self, q: usize) -> f64 {
        self.b * (2 * q + 1) as f64
    }

    /// `φ(x) = b|x|²/4`.
    pub fn magnetic_phase(&self, x: Point) -> f64 {
        self.b * x.norm_sqr() / 4.0
    }

    /// `t = b r²/2`, the argument of the Laguerre factor on the circle of radius `r`.
    pub fn radius_to_t(&self, r: f64) -> f64 {
        self.b * r * r / 2.0
    }

    pub fn t_to_radius(&self, t: f64) -> f64 {
        (2.0 * t / self.b).sqrt()
    }

    /// Sup-norm scale `√(b/2π)` of the basis functions.
    pub fn basis_scale(&self) -> f64 {
        (self.b / (2.0 * PI)).sqrt()
    }
}

/// Angular index `k` and Landau level `q` of `φ_{k,q}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BasisIndex {
    pub k: usize,
    pub q: usize,
}

impl BasisIndex {
    pub fn new(k: usize, q: usize) -> Self {
        Self { k, q }
    }
}

/// `(ln|φ|, arg φ)` at polar coordinates `(ρ, θ)`, or `None` where `φ` vanishes
/// identically (removable singularity at the origin, or an exact Laguerre zero).
pub(crate) fn log_polar(field: &MagneticField, idx: BasisIndex, rho: f64, theta: f64) -> Option<(f64, f64)> {
    let BasisIndex { k, q } = idx;
    let b = field.strength();
    let t = b * rho * rho / 2.0;
    let base = 0.5 * (b / (2.0 * PI)).ln() - t / 2.0;
    let mut phase = -(q as f64) * FRAC_PI_2;
    let (ln_mag, poly) = if k >= q {
        let d = (k - q) as f64;
        if d > 0.0 && t == 0.0 {
            return None;
        }
        let power = if d > 0.0 { 0.5 * d * t.ln() } else { 0.0 };
        phase += d * theta;
        let poly = LaguerreSpec::new(q, d).eval(t);
        (base + 0.5 * (ln_factorial(q) - ln_factorial(k)) + power, poly)
    } else {
        let d = (q - k) as f64;
        if t == 0.0 {
            return None;
        }
        phase += d * (PI - theta);
        let poly = LaguerreSpec::new(k, d).eval(t);
        (base + 0.5 * (ln_factorial(k) - ln_factorial(q)) + 0.5 * d * t.ln(), poly)
    };
    if poly == 0.0 {
        return None;
    }
    if poly < 0.0 {
        phase += PI;
    }
    Some((ln_mag + poly.abs().ln(), phase))
}

/// `φ_{k,q}(x)`.
pub fn basis_eval(field: &MagneticField, idx: BasisIndex, x: Point) -> Complex64 {
    match log_polar(field, idx, x.norm(), x.y.atan2(x.x)) {
        Some((ln_mag, phase)) => Complex64::from_polar(ln_mag.exp(), phase),
        None => Complex64::new(0.0, 0.0),
    }
}

/// Product quadrature in polar coordinates: Gauss-Laguerre in `t = bρ²/2`
/// (weight `e^{-t}`) times the uniform rule in the angle.
#[derive(Clone, Debug)]
pub struct PolarRule {
    radial: GaussLaguerre,
    angular: usize,
}

impl PolarRule {
    pub fn new(radial_nodes: usize, angular_nodes: usize) -> Result<Self> {
        if angular_nodes == 0 {
            return Err(invalid("polar rule needs at least one angular node"));
        }
        Ok(Self { radial: GaussLaguerre::new(radial_nodes, 0.0)?, angular: angular_nodes })
    }

    pub fn standard() -> Self {
        Self::new(DEFAULT_RADIAL_NODES, DEFAULT_ANGULAR_NODES).expect("default polar rule")
    }

    /// `⟨φ₁, φ₂⟩ = ∫ φ₁ conj(φ₂) dx`.
    pub fn inner_product(&self, field: &MagneticField, a: BasisIndex, c: BasisIndex) -> Complex64 {
        let b = field.strength();
        let dtheta = 2.0 * PI / self.angular as f64;
        let mut acc = Complex64::new(0.0, 0.0);
        for (&t, &w) in self.radial.nodes.iter().zip(&self.radial.weights) {
            let rho = (2.0 * t / b).sqrt();
            let mut ring = Complex64::new(0.0, 0.0);
            for m in 0..self.angular {
                let theta = m as f64 * dtheta;
                if let (Some((l1, p1)), Some((l2, p2))) =
                    (log_polar(field, a, rho, theta), log_polar(field, c, rho, theta))
                {
                    // e^{t} undoes the Gauss-Laguerre weight; ρ dρ = dt / b
                    ring += Complex64::from_polar((l1 + l2 + t).exp(), p1 - p2);
                }
            }
            acc += ring * (w * dtheta / b);
        }
        acc
    }
}

/// `⟨φ_{k₁,q}, φ_{k₂,q}⟩_{L²(ℝ²)}` by polar quadrature.
pub fn basis_inner_product(
    field: &MagneticField,
    a: BasisIndex,
    c: BasisIndex,
    radial_nodes: usize,
    angular_nodes: usize,
) -> Result<Complex64> {
    if a.q != c.q {
        return Err(invalid(format!(
            "inner products are only computed within one Landau level (got q = {} and q = {})",
            a.q, c.q
        )));
    }
    Ok(PolarRule::new(radial_nodes, angular_nodes)?.inner_product(field, a, c))
}

/// `|(a φ_{k,0})(x)|` with `a = Π₁(A) + iΠ₂(A) = -i∂₁ + ∂₂ + (b/2)(x₂ - i x₁)`
/// applied by central differences of step `h`.
pub fn annihilation_residual(field: &MagneticField, idx: BasisIndex, x: Point, h: f64) -> Result<f64> {
    if idx.q != 0 {
        return Err(invalid("annihilation residual is defined for the lowest Landau level only"));
    }
    if !(h > 0.0) {
        return Err(invalid(format!("finite-difference step must be positive, got {h}")));
    }
    let f = |p: Point| basis_eval(field, idx, p);
    let d1 = (f(x + Point::new(h, 0.0)) - f(x - Point::new(h, 0.0))) / (2.0 * h);
    let d2 = (f(x + Point::new(0.0, h)) - f(x - Point::new(0.0, h))) / (2.0 * h);
    let i = Complex64::i();
    let b = field.strength();
    let potential = Complex64::new(b / 2.0 * x.y, -b / 2.0 * x.x);
    Ok((-i * d1 + d2 + potential * f(x)).norm())
}

/// `(T_y f)(x) = e^{-i(b/2)(x∧y)} f(x - y)`.
pub fn magnetic_translate(field: &MagneticField, y: Point, f: impl Fn(Point) -> Complex64, x: Point) -> Complex64 {
    let phase = -0.5 * field.strength() * x.wedge(y);
    Complex64::from_polar(1.0, phase) * f(x - y)
}

/// `⟨T_y φ₁, T_y φ₂⟩` evaluated on an origin-centred polar grid (Gauss-Legendre
/// in the radius, uniform in the angle), so that the translated functions are
/// genuinely off-centre with respect to the quadrature.
pub fn translated_inner_product(
    field: &MagneticField,
    y: Point,
    a: BasisIndex,
    c: BasisIndex,
    radial_nodes: usize,
    angular_nodes: usize,
) -> Result<Complex64> {
    if angular_nodes == 0 {
        return Err(invalid("need at least one angular node"));
    }
    let t_cut = 60.0 + 2.0 * (a.k.max(c.k) + a.q.max(c.q)) as f64;
    let outer = y.norm() + field.t_to_radius(t_cut);
    let radial = GaussLegendre::new(radial_nodes)?;
    let dtheta = 2.0 * PI / angular_nodes as f64;
    let fa = |p: Point| basis_eval(field, a, p);
    let fc = |p: Point| basis_eval(field, c, p);
    let mut acc = Complex64::new(0.0, 0.0);
    for (rho, w) in radial.mapped(0.0, outer) {
        let mut ring = Complex64::new(0.0, 0.0);
        for m in 0..angular_nodes {
            let (s, cth) = (m as f64 * dtheta).sin_cos();
            let x = Point::new(rho * cth, rho * s);
            let u = magnetic_translate(field, y, fa, x);
            let v = magnetic_translate(field, y, fc, x);
            ring += u * v.conj();
        }
        acc += ring * (w * rho * dtheta);
    }
    Ok(acc)
}
