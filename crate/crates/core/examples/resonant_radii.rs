//! Resonant radii: the census of circles on which some level-q eigenfunction
//! vanishes, the closed forms for q = 1, 2, the zero curves and the scalar
//! constants.

use landau_spectra::basis::MagneticField;
use landau_spectra::census::{census, coupling_lower_bounds, eta_csv, explicit_d12, gap_constants};

fn main() -> landau_spectra::Result<()> {
    let field = MagneticField::new(2.0)?;
    for q in 1..=3 {
        println!("q={q}");
        for e in census(&field, q, 2.5)? {
            let ks: Vec<usize> = e.witnesses.iter().map(|w| w.k).collect();
            println!("  r={:.12} t={:.12} m={} k={ks:?}", e.radius, e.t, e.multiplicity);
        }
    }
    let sets = explicit_d12(&field, 6)?.up_to(2.5);
    println!("D_2 closed form: {:?}", sets.d2);
    println!("D_22 (multiplicity two): {:?}", sets.d22);

    print!("{}", eta_csv(&field, 3, -2.0, 2.0, 0.5)?);

    let f1 = MagneticField::new(1.0)?;
    for q in 1..=4 {
        let g = gap_constants(&f1, q, 0.0)?;
        let c = coupling_lower_bounds(&f1, q, 1.0)?;
        println!("q={q}: m+={:?} m-={:.6} υ+>={:.6} υ->={:.6}", g.plus, g.minus, c.plus, c.minus);
    }
    Ok(())
}
