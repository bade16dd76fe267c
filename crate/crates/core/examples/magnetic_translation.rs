//! Magnetic translations preserve inner products and commute with the level
//! projections: an off-centre circle has the spectrum of the centred one once
//! the basis is translated along.

use landau_spectra::basis::{translated_inner_product, BasisIndex, MagneticField, Point};
use landau_spectra::curve::{load_weight, JordanCurve, WeightSource};
use landau_spectra::toeplitz::{assemble, assemble_with, AssemblyOptions};

fn main() -> landau_spectra::Result<()> {
    let field = MagneticField::new(2.0)?;
    let y = Point::new(0.5, -1.2);
    for (k, l) in [(0, 0), (2, 2), (1, 3)] {
        let g = translated_inner_product(&field, y, BasisIndex::new(k, 1), BasisIndex::new(l, 1), 160, 256)?;
        println!("<T_y φ_{{{k},1}}, T_y φ_{{{l},1}}> = {g:.3e}");
    }

    let center = Point::new(0.7, 0.4);
    let centred = load_weight(&JordanCurve::circle(1.0)?, WeightSource::Constant(1.0), 1024)?;
    let moved = load_weight(&JordanCurve::circle_at(1.0, center)?, WeightSource::Constant(1.0), 1024)?;
    let a = assemble(&field, 1, &centred, 6)?.spectrum()?;
    let opts = AssemblyOptions { center, ..Default::default() };
    let b = assemble_with(&field, 1, &moved, 6, &opts)?.spectrum()?;
    for (x, z) in a.values.iter().zip(&b.values) {
        println!("{x:.15e}  {z:.15e}");
    }
    Ok(())
}
