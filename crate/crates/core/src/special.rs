//! Factorial and Poisson helpers shared by the closed forms and the oracle.

use statrs::function::factorial;

pub(crate) fn ln_factorial(n: usize) -> f64 {
    factorial::ln_factorial(n as u64)
}

/// `x^{(m+n)/2} e^{-x} / sqrt(m! n!)`, the magnitude shared by every
/// coherent-state Fock element of per-head mean `x`.
///
/// Products are evaluated directly while `m + n <= 60` and in log space above.
pub(crate) fn poisson_amplitude_product(x: f64, m: usize, n: usize) -> f64 {
    if x == 0.0 {
        return if m == 0 && n == 0 { 1.0 } else { 0.0 };
    }
    if m + n <= 60 {
        let fm = factorial::factorial(m as u64);
        let fn_ = factorial::factorial(n as u64);
        x.powf(0.5 * (m + n) as f64) * (-x).exp() / (fm * fn_).sqrt()
    } else {
        (0.5 * (m + n) as f64 * x.ln() - x - 0.5 * (ln_factorial(m) + ln_factorial(n))).exp()
    }
}

/// Poisson weight `mean^n e^{-mean} / n!`.
#[cfg(test)]
pub(crate) fn poisson_pmf(mean: f64, n: usize) -> f64 {
    poisson_amplitude_product(mean, n, n)
}

/// Probability mass of Poisson(`mean`) at or above `d`, summed directly over the tail.
pub(crate) fn poisson_tail(mean: f64, d: usize) -> f64 {
    if d == 0 {
        return 1.0;
    }
    if mean == 0.0 {
        return 0.0;
    }
    let ln_mean = mean.ln();
    let mut total = 0.0;
    let mut n = d;
    loop {
        let term = (n as f64 * ln_mean - mean - ln_factorial(n)).exp();
        total += term;
        // past the mode terms only shrink, ratio mean/(n+1) < 1
        if n as f64 > mean && term <= total * 1e-18 {
            break;
        }
        if term == 0.0 && n as f64 > mean {
            break;
        }
        n += 1;
    }
    total
}
