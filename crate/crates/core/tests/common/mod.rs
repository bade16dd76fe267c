//! Closed-form oracles shared by the integration tests. These avoid the
//! library's recurrences on purpose.
#![allow(dead_code)]

pub fn factorial(n: usize) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

/// Generalized binomial `(x choose j)` for integer `j >= 0`.
pub fn binom(x: f64, j: usize) -> f64 {
    (0..j).map(|i| (x - i as f64) / (i as f64 + 1.0)).product()
}

/// `L_n^{(α)}(t) = Σ_j (-1)^j binom(n+α, n-j) t^j / j!`.
pub fn laguerre_explicit(n: usize, alpha: f64, t: f64) -> f64 {
    (0..=n)
        .map(|j| {
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            sign * binom(n as f64 + alpha, n - j) * t.powi(j as i32) / factorial(j)
        })
        .sum()
}

/// `∫_{C_r} |φ_{k,q}|² ds = 2πr · (b/2π)(q!/k!) t^{k-q} L_q^{(k-q)}(t)² e^{-t}`,
/// `t = br²/2`, summed directly.
pub fn circle_diagonal_oracle(b: f64, q: usize, k: usize, r: f64) -> f64 {
    let t = b * r * r / 2.0;
    let l = laguerre_explicit(q, k as f64 - q as f64, t);
    b * r * factorial(q) / factorial(k) * t.powi(k as i32 - q as i32) * l * l * (-t).exp()
}
