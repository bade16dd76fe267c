use super::gamma::rising_ratio;
use super::laguerre::{jacobi_matrix, LaguerreSpec};
use super::tridiag::symmetric_tridiagonal_eigen;
use crate::error::{invalid, Result};

/// Gauss rule for `∫₀^∞ t^α e^{-t} f(t) dt`.
#[derive(Clone, Debug)]
pub struct GaussLaguerre {
    pub alpha: f64,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLaguerre {
    pub fn new(n: usize, alpha: f64) -> Result<Self> {
        if n == 0 {
            return Err(invalid("Gauss-Laguerre rule needs at least one node"));
        }
        if alpha <= -1.0 {
            return Err(invalid(format!("Gauss-Laguerre weight needs alpha > -1, got {alpha}")));
        }
        let (diag, off) = jacobi_matrix(n, alpha);
        let (mut nodes, _) = symmetric_tridiagonal_eigen(&diag, &off)?;
        let poly = LaguerreSpec::new(n, alpha);
        let dpoly = LaguerreSpec::new(n - 1, alpha + 1.0);
        for t in nodes.iter_mut() {
            let step = poly.eval(*t) / -dpoly.eval(*t);
            if step.is_finite() {
                *t -= step;
            }
        }
        // w_i = Γ(n+α+1) / (n! t_i L_n'(t_i)^2), with L_n' = -L_{n-1}^{(α+1)}
        let norm = rising_ratio(n, alpha);
        let weights = nodes
            .iter()
            .map(|&t| {
                let d = dpoly.eval(t);
                norm / t / d / d
            })
            .collect();
        Ok(Self { alpha, nodes, weights })
    }

    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&t, &w)| w * f(t)).sum()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// Gauss-Legendre rule on `[-1, 1]` (Golub-Welsch).
#[derive(Clone, Debug)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(invalid("Gauss-Legendre rule needs at least one node"));
        }
        let diag = vec![0.0; n];
        let off: Vec<f64> = (1..n)
            .map(|k| {
                let k = k as f64;
                k / (4.0 * k * k - 1.0).sqrt()
            })
            .collect();
        let (nodes, first) = symmetric_tridiagonal_eigen(&diag, &off)?;
        let weights = first.iter().map(|z| 2.0 * z * z).collect();
        Ok(Self { nodes, weights })
    }

    /// `∫_a^b f(x) dx`.
    pub fn integrate(&self, a: f64, b: f64, f: impl Fn(f64) -> f64) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (b + a);
        half * self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(mid + half * x)).sum::<f64>()
    }

    /// Nodes and weights mapped onto `[a, b]`.
    pub fn mapped(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (b + a);
        self.nodes.iter().zip(&self.weights).map(move |(&x, &w)| (mid + half * x, half * w))
    }
}
