//! The angular-momentum basis `φ_{k,q}` of a Landau level: values, the Gram
//! matrix by polar quadrature, and the lowest-level annihilation identity.

use landau_spectra::basis::{
    annihilation_residual, basis_eval, BasisIndex, MagneticField, Point, PolarRule, DEFAULT_FD_STEP,
};

fn main() -> landau_spectra::Result<()> {
    let field = MagneticField::new(2.0)?;
    println!("Λ_0..Λ_3 = {:?}", (0..4).map(|q| field.landau_level(q)).collect::<Vec<_>>());

    let x = Point::new(0.8, -0.3);
    for (k, q) in [(0, 0), (3, 1), (1, 3), (200, 3)] {
        println!("φ_{{{k},{q}}}({x:?}) = {:.6e}", basis_eval(&field, BasisIndex::new(k, q), x));
    }

    let rule = PolarRule::standard();
    let q = 2;
    let mut worst: f64 = 0.0;
    for k in 0..=8 {
        for l in 0..=8 {
            let g = rule.inner_product(&field, BasisIndex::new(k, q), BasisIndex::new(l, q));
            worst = worst.max((g - if k == l { 1.0 } else { 0.0 }).norm());
        }
    }
    println!("Gram matrix of level {q}, k <= 8: max deviation from identity {worst:.2e}");

    for k in [0, 4, 9] {
        let r = annihilation_residual(&field, BasisIndex::new(k, 0), Point::new(1.0, 1.0), DEFAULT_FD_STEP)?;
        println!("|a φ_{{{k},0}}(1,1)| = {r:.2e}");
    }
    Ok(())
}
