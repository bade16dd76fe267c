/// `ln Γ(x)` for `x > 0`.
pub fn ln_gamma(x: f64) -> f64 {
    if x > 0.0 && x.fract() == 0.0 && x <= 171.0 {
        return ln_factorial(x as usize - 1);
    }
    statrs::function::gamma::ln_gamma(x)
}

/// `ln n!`, exact product up to 170 and log-gamma beyond.
pub fn ln_factorial(n: usize) -> f64 {
    if n <= 170 {
        let mut acc = 1.0f64;
        for i in 2..=n {
            acc *= i as f64;
        }
        acc.ln()
    } else {
        statrs::function::gamma::ln_gamma(n as f64 + 1.0)
    }
}

/// `Γ(q + α + 1) / q!`, which equals `Γ(α + 1)·binom(q + α, q)`.
///
/// Exact product when `α` is a non-negative integer.
pub fn rising_ratio(q: usize, alpha: f64) -> f64 {
    if alpha >= 0.0 && alpha.fract() == 0.0 && alpha <= 64.0 {
        let mut acc = 1.0f64;
        for i in 1..=(alpha as usize) {
            acc *= (q + i) as f64;
        }
        acc
    } else {
        let mut acc = statrs::function::gamma::gamma(alpha + 1.0);
        for i in 1..=q {
            acc *= 1.0 + alpha / i as f64;
        }
        acc
    }
}
