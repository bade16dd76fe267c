//! Finite sections of the perturbed Hamiltonian: eigenvalue clusters around
//! the Landau levels, and Λ_q surviving exactly at resonant radii.

use landau_spectra::basis::MagneticField;
use landau_spectra::curve::{load_weight, make_circle, WeightSource};
use landau_spectra::galerkin::{assemble_model, cluster_report, persistence_check, CouplingSign};

fn main() -> landau_spectra::Result<()> {
    let field = MagneticField::new(2.0)?;
    let wc = load_weight(&make_circle(1.0)?, WeightSource::Constant(1.0), 1024)?;
    let model = assemble_model(&field, 2, 8, &wc, CouplingSign::Plus)?;
    for c in cluster_report(&model)?.levels {
        println!(
            "Λ_{} = {}: {} eigenvalues, offsets in [{:.3e}, {:.3e}], exact hits {}",
            c.level,
            c.lambda,
            c.count,
            c.min_offset.unwrap_or(0.0),
            c.max_offset.unwrap_or(0.0),
            c.exact_hits.len()
        );
    }

    let weight = || WeightSource::function("5+cos", |t: f64| 5.0 + t.cos());
    for (q, r) in [(1, 1.0), (1, 1.3), (2, 2f64.sqrt()), (2, (3.0 - 3f64.sqrt()).sqrt())] {
        let p = persistence_check(&field, q, r, None, None, weight())?;
        let hits: Vec<String> = p
            .outcomes
            .iter()
            .map(|o| format!("{}: nearest {:.2e}", o.sign, o.nearest))
            .collect();
        println!("q={q} r={r:.6} K={} persists={} witnesses={:?} [{}]", p.truncation, p.persists, p.census_ks, hits.join(", "));
    }
    Ok(())
}
