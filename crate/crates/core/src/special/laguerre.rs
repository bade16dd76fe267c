//! Generalized Laguerre polynomials `L_q^{(α)}`.
//!
//! Evaluation uses the three-term recurrence in the degree, which is valid for
//! every real `α`. Zeros for `α > -1` come from the Jacobi matrix of the weight
//! `t^α e^{-t}` followed by a Newton step; for the degenerate parameters
//! `α = k - q` with `0 <= k < q` they are read off the reflection identity
//! `L_q^{(k-q)}(t) = (k!/q!) (-t)^{q-k} L_k^{(q-k)}(t)`.

use serde::Serialize;

use super::gamma::rising_ratio;
use super::quadrature::GaussLaguerre;
use super::tridiag::symmetric_tridiagonal_eigen;
use crate::error::{invalid, Error, Result};

/// Degree and parameter of a generalized Laguerre polynomial.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LaguerreSpec {
    pub degree: usize,
    pub alpha: f64,
}

/// A zero of a Laguerre polynomial with its multiplicity.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Zero {
    pub value: f64,
    pub multiplicity: usize,
}

const INTEGER_TOL: f64 = 1e-12;

impl LaguerreSpec {
    pub fn new(degree: usize, alpha: f64) -> Self {
        Self { degree, alpha }
    }

    /// `L_q^{(α)}(t)`.
    pub fn eval(&self, t: f64) -> f64 {
        if let Some(k) = self.reflection_index() {
            // L_q^{(k-q)}(t) = (k!/q!) (-t)^{q-k} L_k^{(q-k)}(t); the plain recurrence
            // loses the t^{q-k} factor to cancellation near t = 0
            let q = self.degree;
            let ratio: f64 = (k + 1..=q).map(|i| 1.0 / i as f64).product();
            return ratio * (-t).powi((q - k) as i32) * LaguerreSpec::new(k, (q - k) as f64).recurrence(t);
        }
        self.recurrence(t)
    }

    fn recurrence(&self, t: f64) -> f64 {
        let a = self.alpha;
        let mut prev = 1.0;
        if self.degree == 0 {
            return prev;
        }
        let mut cur = 1.0 + a - t;
        for n in 1..self.degree {
            let nf = n as f64;
            let next = ((2.0 * nf + 1.0 + a - t) * cur - (nf + a) * prev) / (nf + 1.0);
            prev = cur;
            cur = next;
        }
        cur
    }

    /// `d/dt L_q^{(α)}(t) = -L_{q-1}^{(α+1)}(t)`.
    pub fn derivative(&self, t: f64) -> Result<f64> {
        if self.degree == 0 {
            return Err(invalid("laguerre derivative needs degree >= 1"));
        }
        Ok(-LaguerreSpec::new(self.degree - 1, self.alpha + 1.0).eval(t))
    }

    /// Coefficients `c_j` of `L_q^{(α)}(t) = Σ c_j t^j`.
    pub fn coefficients(&self) -> Vec<f64> {
        let q = self.degree;
        (0..=q)
            .map(|j| {
                // (-1)^j binom(q + α, q - j) / j!
                let mut c = 1.0;
                for i in 1..=(q - j) {
                    c *= (self.alpha + (j + i) as f64) / i as f64;
                }
                for i in 1..=j {
                    c /= i as f64;
                }
                if j % 2 == 1 {
                    -c
                } else {
                    c
                }
            })
            .collect()
    }

    /// Sum of the absolute monomial contributions at `|t|`: the natural
    /// magnitude against which a computed value at `t` is compared.
    pub fn scale(&self, t: f64) -> f64 {
        let at = t.abs();
        self.coefficients().iter().rev().fold(0.0, |acc, c| acc * at + c.abs())
    }

    /// If `α = k - q` for an integer `0 <= k < q`, returns `k`.
    pub fn reflection_index(&self) -> Option<usize> {
        let q = self.degree as f64;
        let k = self.alpha + q;
        let rounded = k.round();
        if (k - rounded).abs() <= INTEGER_TOL && rounded >= 0.0 && rounded < q {
            Some(rounded as usize)
        } else {
            None
        }
    }

    /// The zeros in increasing order.
    ///
    /// For `α > -1` there are exactly `q` simple positive zeros. For
    /// `α = k - q` the origin is a zero of multiplicity `q - k`, followed by the
    /// `k` simple positive zeros of `L_k^{(q-k)}`.
    pub fn zeros(&self) -> Result<Vec<Zero>> {
        if self.alpha > -1.0 {
            return Ok(self
                .regular_zeros()?
                .into_iter()
                .map(|value| Zero { value, multiplicity: 1 })
                .collect());
        }
        let Some(k) = self.reflection_index() else {
            return Err(Error::InadmissibleAlpha { degree: self.degree, alpha: self.alpha });
        };
        let q = self.degree;
        let mut zeros = vec![Zero { value: 0.0, multiplicity: q - k }];
        let reduced = LaguerreSpec::new(k, (q - k) as f64);
        zeros.extend(reduced.regular_zeros()?.into_iter().map(|value| Zero { value, multiplicity: 1 }));
        Ok(zeros)
    }

    /// Strictly positive zeros, increasing.
    pub fn positive_zeros(&self) -> Result<Vec<f64>> {
        Ok(self.zeros()?.into_iter().map(|z| z.value).filter(|&t| t > 0.0).collect())
    }

    fn regular_zeros(&self) -> Result<Vec<f64>> {
        debug_assert!(self.alpha > -1.0);
        let q = self.degree;
        if q == 0 {
            return Ok(Vec::new());
        }
        let (diag, off) = jacobi_matrix(q, self.alpha);
        let (mut nodes, _) = symmetric_tridiagonal_eigen(&diag, &off)?;
        for t in nodes.iter_mut() {
            let d = self.derivative(*t)?;
            if d != 0.0 {
                let step = self.eval(*t) / d;
                if step.is_finite() {
                    *t -= step;
                }
            }
        }
        Ok(nodes)
    }
}

/// Diagonal `2i + α + 1` and off-diagonal `√(i(i + α))` of the Jacobi matrix
/// for the weight `t^α e^{-t}`.
pub(crate) fn jacobi_matrix(n: usize, alpha: f64) -> (Vec<f64>, Vec<f64>) {
    let diag = (0..n).map(|i| 2.0 * i as f64 + alpha + 1.0).collect();
    let off = (1..n).map(|i| (i as f64 * (i as f64 + alpha)).sqrt()).collect();
    (diag, off)
}

/// `|∫₀^∞ e^{-t} t^α L_q L_p dt - Γ(α+1) binom(q+α, q) δ_qp|` with the
/// integral evaluated by an `nodes`-point Gauss-Laguerre rule.
pub fn orthogonality_defect(q: usize, p: usize, alpha: f64, nodes: usize) -> Result<f64> {
    if alpha <= -1.0 {
        return Err(Error::InadmissibleAlpha { degree: q, alpha });
    }
    let needed = (q + p).div_ceil(2) + 1;
    if nodes < needed {
        return Err(invalid(format!(
            "orthogonality of degrees {q} and {p} needs at least {needed} quadrature nodes, got {nodes}"
        )));
    }
    let rule = GaussLaguerre::new(nodes, alpha)?;
    let lq = LaguerreSpec::new(q, alpha);
    let lp = LaguerreSpec::new(p, alpha);
    let integral = rule.integrate(|t| lq.eval(t) * lp.eval(t));
    let target = if q == p { rising_ratio(q, alpha) } else { 0.0 };
    Ok((integral - target).abs())
}
