//! Special functions: generalized Laguerre polynomials and their zeros,
//! log-gamma helpers and Gauss-type quadrature rules.

mod gamma;
mod laguerre;
mod quadrature;
mod tridiag;

pub use gamma::{ln_factorial, ln_gamma, rising_ratio};
pub use laguerre::{orthogonality_defect, LaguerreSpec, Zero};
pub use quadrature::{GaussLaguerre, GaussLegendre};
pub use tridiag::symmetric_tridiagonal_eigen;
