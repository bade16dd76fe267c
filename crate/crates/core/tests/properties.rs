mod common;

use std::f64::consts::TAU;

use landau_spectra::basis::{basis_eval, basis_inner_product, BasisIndex, MagneticField, Point};
use landau_spectra::census::{census, eta_curve, multiplicity};
use landau_spectra::curve::{load_weight, JordanCurve, SignClass, WeightSource};
use landau_spectra::galerkin::{assemble_model, CouplingSign};
use landau_spectra::special::LaguerreSpec;
use landau_spectra::toeplitz::{assemble, assemble_with, circle_diagonal, hermitian_spectrum, AssemblyOptions};
use proptest::prelude::*;

use common::laguerre_explicit;

fn field(b: f64) -> MagneticField {
    MagneticField::new(b).unwrap()
}

fn ascending(values: &[f64]) -> Vec<f64> {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn laguerre_matches_explicit_sum(q in 0usize..12, alpha in -0.9f64..8.0, t in 0.0f64..25.0) {
        let spec = LaguerreSpec::new(q, alpha);
        let scale = spec.scale(t);
        prop_assert!((spec.eval(t) - laguerre_explicit(q, alpha, t)).abs() <= 1e-12 * scale);
    }

    #[test]
    fn reflection_identity(q in 2usize..=8, k_frac in 0.0f64..1.0, t in 1e-3f64..30.0) {
        let k = 1 + ((q - 1) as f64 * k_frac) as usize % (q - 1);
        let lhs = LaguerreSpec::new(q, k as f64 - q as f64).eval(t);
        let ratio = common::factorial(k) / common::factorial(q);
        let rhs = ratio * (-t).powi((q - k) as i32) * laguerre_explicit(k, (q - k) as f64, t);
        prop_assert!((lhs - rhs).abs() <= 1e-10 * rhs.abs());
    }

    #[test]
    fn zeta_curves_increase_and_stay_ordered(q in 1usize..=8, a in -0.5f64..20.0, step in 0.01f64..1.0) {
        for ell in 1..=q {
            let lo = ell as f64 - q as f64;
            let a0 = a.max(lo);
            let z0 = eta_curve(&field(2.0), q, ell, a0).unwrap();
            let z1 = eta_curve(&field(2.0), q, ell, a0 + step).unwrap();
            prop_assert!(z1 > z0);
            if ell < q && a0 >= lo + 1.0 {
                prop_assert!(eta_curve(&field(2.0), q, ell + 1, a0).unwrap() < z0);
            }
        }
    }

    #[test]
    fn basis_modulus_is_radial(b in 0.3f64..4.0, k in 0usize..40, q in 0usize..6,
                               x in -4.0f64..4.0, y in -4.0f64..4.0, angle in 0.0f64..TAU) {
        let f = field(b);
        let p = Point::new(x, y);
        let a = basis_eval(&f, BasisIndex::new(k, q), p).norm();
        let c = basis_eval(&f, BasisIndex::new(k, q), p.rotated(angle)).norm();
        prop_assert!((a - c).abs() <= 1e-12 * f.basis_scale());
    }

    #[test]
    fn basis_vanishes_on_nodal_circles(b in 0.5f64..3.0, q in 1usize..5, d in 0usize..8, angle in 0.0f64..TAU) {
        let f = field(b);
        for z in LaguerreSpec::new(q, d as f64).positive_zeros().unwrap() {
            let r = f.t_to_radius(z);
            let v = basis_eval(&f, BasisIndex::new(q + d, q), Point::new(r * angle.cos(), r * angle.sin()));
            prop_assert!(v.norm() < 1e-10 * f.basis_scale());
        }
    }

    #[test]
    fn multiplicity_never_exceeds_level(b in 0.5f64..2.5, q in 1usize..=6, r in 0.01f64..5.0) {
        prop_assert!(multiplicity(&field(b), q, r).unwrap().multiplicity <= q);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn gram_identity_at_random_indices(b in prop::sample::select(vec![0.5, 2.0]), q in 0usize..=4,
                                        k in 0usize..=12, l in 0usize..=12) {
        let g = basis_inner_product(&field(b), BasisIndex::new(k, q), BasisIndex::new(l, q), 128, 256).unwrap();
        let target = if k == l { 1.0 } else { 0.0 };
        prop_assert!((g - target).norm() < 1e-8);
    }

    #[test]
    fn circle_matrices_are_diagonal(q in 0usize..=3, r in 0.3f64..2.5) {
        let f = field(2.0);
        let wc = load_weight(&JordanCurve::circle(r).unwrap(), WeightSource::Constant(1.0), 1024).unwrap();
        let m = assemble(&f, q, &wc, 10).unwrap();
        let scale = m.max_abs();
        for i in 0..=10 {
            for j in 0..=10 {
                let z = m.entries()[(i, j)];
                if i == j {
                    let d = circle_diagonal(&f, q, i, r);
                    prop_assert!((z.re - d).abs() <= 1e-8 * d.max(1e-12 * scale));
                } else {
                    prop_assert!(z.norm() < 1e-11 * scale);
                }
            }
        }
    }

    #[test]
    fn sign_class_fixes_definiteness(a in 0.6f64..1.6, c in 0.6f64..1.6, amp in 0.0f64..0.9, q in 0usize..3) {
        let f = field(1.5);
        let curve = JordanCurve::ellipse(a, c).unwrap();
        let wc = load_weight(&curve, WeightSource::function("1+amp sin", move |t: f64| 1.0 + amp * t.sin()), 512).unwrap();
        prop_assert_eq!(wc.sign_class(), SignClass::Nonnegative);
        let pos = assemble(&f, q, &wc, 8).unwrap().spectrum().unwrap();
        prop_assert!(pos.min().unwrap() >= -1e-12 * pos.max_abs());
        let neg = assemble(&f, q, &wc.scaled(-1.0), 8).unwrap().spectrum().unwrap();
        prop_assert!(neg.values[0] <= 1e-12 * neg.max_abs());
    }

    #[test]
    fn recentring_preserves_spectrum(cx in -1.0f64..1.0, cy in -1.0f64..1.0, q in 0usize..3) {
        let f = field(2.0);
        let center = Point::new(cx, cy);
        let wc = |c: Point| load_weight(&JordanCurve::circle_at(1.1, c).unwrap(), WeightSource::Constant(1.0), 1024).unwrap();
        let origin = assemble(&f, q, &wc(Point::ORIGIN), 8).unwrap().spectrum().unwrap();
        let opts = AssemblyOptions { center, check_resolution: false };
        let moved = assemble_with(&f, q, &wc(center), 8, &opts).unwrap().spectrum().unwrap();
        for (x, y) in origin.values.iter().zip(&moved.values) {
            prop_assert!((x - y).abs() < 1e-8);
        }
    }

    #[test]
    fn weyl_ordering_and_sign_monotonicity(a in 0.7f64..1.5, c in 0.7f64..1.5, amp in 0.0f64..1.0) {
        let f = field(2.0);
        let curve = JordanCurve::ellipse(a, c).unwrap();
        let wc = load_weight(&curve, WeightSource::function("1+amp cos", move |t: f64| 1.0 + amp * t.cos()), 512).unwrap();
        let plus = assemble_model(&f, 2, 5, &wc, CouplingSign::Plus).unwrap();
        let minus = assemble_model(&f, 2, 5, &wc, CouplingSign::Minus).unwrap();
        let base = ascending(&plus.unperturbed());
        let up = ascending(&plus.spectrum().unwrap().values);
        let down = ascending(&minus.spectrum().unwrap().values);
        for i in 0..base.len() {
            prop_assert!(up[i] >= base[i] - 1e-12);
            prop_assert!(down[i] <= base[i] + 1e-12);
        }
    }

    #[test]
    fn galerkin_diagonal_blocks_are_toeplitz(a in 0.7f64..1.5, c in 0.7f64..1.5) {
        let f = field(2.0);
        let wc = load_weight(&JordanCurve::ellipse(a, c).unwrap(), WeightSource::function("2+sin", |t: f64| 2.0 + t.sin()), 512).unwrap();
        let model = assemble_model(&f, 2, 5, &wc, CouplingSign::Plus).unwrap();
        for q in 0..=2 {
            let t = assemble(&f, q, &wc, 5).unwrap();
            let block = model.coupling_block(q, q);
            let diff = block.iter().zip(t.entries().iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
            prop_assert!(diff < 1e-12);
        }
    }
}

#[test]
fn interlacing_of_zero_ladders() {
    for q in 1..=8usize {
        let z = |k: usize| {
            let mut v = LaguerreSpec::new(q, k as f64 - q as f64).positive_zeros().unwrap();
            v.reverse();
            v
        };
        for k in 2..=q {
            let (hi, lo) = (z(k), z(k - 1));
            for m in 0..k - 1 {
                assert!(hi[m + 1] < lo[m] && lo[m] < hi[m], "q={q} k={k} m={m}");
            }
        }
    }
}

#[test]
fn census_radii_are_toeplitz_kernels() {
    let f = field(2.0);
    for q in 1..=3 {
        for e in census(&f, q, 3.0).unwrap() {
            let k_max = e.witnesses.iter().map(|w| w.k).max().unwrap() + 2;
            let wc = load_weight(&JordanCurve::circle(e.radius).unwrap(), WeightSource::Constant(1.0), 1024).unwrap();
            let m = assemble(&f, q, &wc, k_max).unwrap();
            let spec = hermitian_spectrum(m.entries()).unwrap();
            let small = spec.values.iter().filter(|v| v.abs() < 1e-10 * m.max_abs()).count();
            assert!(small >= e.multiplicity, "q={q} r={}", e.radius);
            for w in &e.witnesses {
                assert!(circle_diagonal(&f, q, w.k, e.radius) < 1e-12);
            }
        }
    }
}

#[test]
fn nodal_characterization_of_kernels() {
    // a kernel vector of the unit-weight circle matrix is a basis function
    // vanishing on the circle, and its diagonal entry is zero
    let f = field(2.0);
    let r = 2f64.sqrt();
    let wc = load_weight(&JordanCurve::circle(r).unwrap(), WeightSource::Constant(1.0), 1024).unwrap();
    let m = assemble(&f, 2, &wc, 8).unwrap();
    let spec = m.spectrum().unwrap();
    let n = spec.values.len();
    for col in [n - 2, n - 1] {
        let v = spec.vectors.column(col);
        for j in 0..32 {
            let th = TAU * j as f64 / 32.0;
            let x = Point::new(r * th.cos(), r * th.sin());
            let u: num_complex::Complex64 = (0..=8).map(|k| v[k] * basis_eval(&f, BasisIndex::new(k, 2), x)).sum();
            assert!(u.norm() < 1e-10);
        }
    }
}

#[test]
fn census_grows_without_bound() {
    let f = field(2.0);
    assert!(census(&f, 1, 20f64.sqrt()).unwrap().len() >= 20);
    assert!(census(&f, 2, 6.0).unwrap().len() > census(&f, 2, 3.0).unwrap().len());
}
