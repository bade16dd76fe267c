//! Zeros of generalized Laguerre polynomials, including the degenerate
//! parameters `α = k - q` where the origin becomes a multiple root.

use landau_spectra::special::{orthogonality_defect, GaussLaguerre, LaguerreSpec};

fn main() -> landau_spectra::Result<()> {
    for (q, alpha) in [(4, 0.0), (4, 2.5), (3, -1.0), (4, -4.0)] {
        let spec = LaguerreSpec::new(q, alpha);
        let zeros: Vec<String> = spec
            .zeros()?
            .iter()
            .map(|z| format!("{:.12} (x{})", z.value, z.multiplicity))
            .collect();
        println!("L_{q}^({alpha}) zeros: {}", zeros.join(", "));
    }

    // q = 2: the positive zeros are k ± √k
    for k in 1..=4usize {
        let z = LaguerreSpec::new(2, k as f64 - 2.0).positive_zeros()?;
        let kf = k as f64;
        println!("k={k}: {z:?}  vs  k-√k={:.12}, k+√k={:.12}", kf - kf.sqrt(), kf + kf.sqrt());
    }

    let rule = GaussLaguerre::new(10, 0.5)?;
    println!("Gauss-Laguerre(10, 0.5) first node {:.15}, weight {:.15}", rule.nodes[0], rule.weights[0]);
    println!("orthogonality defect (q=5, p=5, α=3): {:.3e}", orthogonality_defect(5, 5, 3.0, 16)?);
    Ok(())
}
