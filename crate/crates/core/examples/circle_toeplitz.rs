//! Toeplitz matrices of circles are diagonal with entries `λ_{k,q}(r)`; at a
//! resonant radius some of them vanish and the kernel is non-trivial.

use landau_spectra::basis::MagneticField;
use landau_spectra::curve::{load_weight, make_circle, WeightSource};
use landau_spectra::toeplitz::{assemble, circle_diagonal, kernel_dim_estimate, DEFAULT_KERNEL_TOL};

fn main() -> landau_spectra::Result<()> {
    let field = MagneticField::new(2.0)?;
    for (q, r) in [(0, 1.0), (1, 1.0), (2, 2f64.sqrt()), (2, 1.1)] {
        let wc = load_weight(&make_circle(r)?, WeightSource::Constant(1.0), 1024)?;
        let m = assemble(&field, q, &wc, 8)?;
        println!("q={q} r={r:.6}");
        for k in 0..=8 {
            println!("  k={k}: assembled {:+.10e}  closed form {:.10e}", m.entries()[(k, k)].re, circle_diagonal(&field, q, k, r));
        }
        let est = kernel_dim_estimate(&m, DEFAULT_KERNEL_TOL)?;
        println!("  numerical kernel {} (census {:?})", est.dimension, est.census);
    }
    Ok(())
}
