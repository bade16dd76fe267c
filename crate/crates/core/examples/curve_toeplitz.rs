//! A Toeplitz matrix on a sampled curve read from a file, with a tabulated
//! coupling weight; prints the spectrum as CSV.

use std::f64::consts::TAU;

use landau_spectra::basis::{MagneticField, Point};
use landau_spectra::curve::{load_weight, JordanCurve, WeightSource};
use landau_spectra::toeplitz::{assemble, default_truncation};

fn main() -> landau_spectra::Result<()> {
    // a smooth star-shaped curve, written in the plain-text curve format
    let star = JordanCurve::from_parametrization(
        256,
        |t| {
            let r = 1.0 + 0.2 * (3.0 * t).cos();
            Point::new(r * t.cos(), r * t.sin())
        },
        |t| {
            let r = 1.0 + 0.2 * (3.0 * t).cos();
            let dr = -0.6 * (3.0 * t).sin();
            Point::new(dr * t.cos() - r * t.sin(), dr * t.sin() + r * t.cos())
        },
    )?;
    let text = star.to_file_string(256);
    let curve = JordanCurve::parse(&text)?;

    let mut weights = String::from(landau_spectra::curve::WEIGHT_HEADER);
    weights.push('\n');
    for j in 0..64 {
        let t = TAU * j as f64 / 64.0;
        weights.push_str(&format!("{t} {}\n", 1.0 + 0.5 * t.sin()));
    }
    let wc = load_weight(&curve, WeightSource::parse(&weights)?, 1024)?;

    let field = MagneticField::new(2.0)?;
    let k = default_truncation(&field, 1, &curve, Point::ORIGIN);
    let m = assemble(&field, 1, &wc, k)?;
    println!("# K = {k}, underresolved = {}", m.provenance().underresolved);
    print!("{}", m.spectrum()?.to_csv());
    Ok(())
}
