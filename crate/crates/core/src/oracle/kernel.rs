//! Displaced-parity kernel `K_nm(β) = ⟨n| D(β) Π D†(β) |m⟩` in closed form.
//!
//! For `m = n + k`,
//! `K_nm = (-1)^n (2β*)^k e^{-2|β|²} sqrt(n!/m!) L_n^{(k)}(4|β|²)`,
//! and the lower triangle follows from hermiticity. The Laguerre factor is
//! carried in the normalized form
//! `u_n^{(k)}(x) = sqrt(n!/(n+k)!) x^{k/2} e^{-x/2} L_n^{(k)}(x)`,
//! which is bounded by one, and generated by the three-term recurrence in `n`.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use crate::special::ln_factorial;

/// Normalized associated-Laguerre values `u_n^{(k)}(x)` for `n = 0..len`.
pub(crate) fn normalized_laguerre(k: usize, x: f64, len: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(len);
    if len == 0 {
        return out;
    }
    let u0 = if x == 0.0 {
        if k == 0 {
            1.0
        } else {
            0.0
        }
    } else {
        (0.5 * k as f64 * x.ln() - 0.5 * x - 0.5 * ln_factorial(k)).exp()
    };
    out.push(u0);
    if len == 1 {
        return out;
    }
    let kf = k as f64;
    out.push(u0 * (1.0 + kf - x) / (kf + 1.0).sqrt());
    for n in 1..len - 1 {
        let nf = n as f64;
        let next = ((2.0 * nf + 1.0 + kf - x) * out[n] - (nf * (nf + kf)).sqrt() * out[n - 1])
            / ((nf + 1.0) * (nf + kf + 1.0)).sqrt();
        out.push(next);
    }
    out
}

/// The `dim × dim` block of the displaced parity operator at `β`.
pub(crate) fn displaced_parity(beta: C64, dim: usize) -> DMatrix<C64> {
    let x = 4.0 * beta.norm_sqr();
    let phase = beta.conj().arg();
    let mut k_mat = DMatrix::<C64>::zeros(dim, dim);
    for k in 0..dim {
        let u = normalized_laguerre(k, x, dim - k);
        let rot = C64::from_polar(1.0, k as f64 * phase);
        for (n, &un) in u.iter().enumerate() {
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            let v = rot * (sign * un);
            k_mat[(n, n + k)] = v;
            if k > 0 {
                k_mat[(n + k, n)] = v.conj();
            }
        }
    }
    k_mat
}
