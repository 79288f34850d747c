use num_complex::Complex64 as C64;

use super::{moments::normalization, phase_sum, Family, StateSpec};
use crate::error::Result;
use crate::special::poisson_amplitude_product;

/// Fock matrix element `p_mn = ⟨m|ρ|n⟩`.
///
/// Both families share the magnitude `x^{(m+n)/2} e^{-x}/sqrt(m! n!)` with
/// `x = r^{2/N}`; the root-of-unity sums then select which entries survive.
pub fn fock_element(spec: &StateSpec, m: usize, n: usize) -> Result<C64> {
    let alpha = spec.alpha();
    let heads = spec.n_heads();
    let x = spec.head_mean();
    let theta = alpha.theta_p();
    let mag = poisson_amplitude_product(x, m, n);
    let (mi, ni) = (m as i64, n as i64);
    let value = match spec.family() {
        Family::Incoherent => phase_sum(theta, heads, mi - ni) * (mag / heads as f64),
        Family::Coherent => {
            let nc = normalization(&alpha, heads)?;
            // Σ_{k1,k2} e^{i m φ_k1 - i n φ_k2} factorizes into two single sums
            let rows = phase_sum(theta, heads, mi);
            let cols = phase_sum(theta, heads, -ni);
            rows * cols * (mag / nc)
        }
    };
    Ok(value)
}

/// Photon-number distribution `p_mm`.
pub fn pnd(spec: &StateSpec, m: usize) -> Result<f64> {
    let heads = spec.n_heads();
    let x = spec.head_mean();
    match spec.family() {
        Family::Incoherent => Ok(poisson_amplitude_product(x, m, m)),
        Family::Coherent => {
            if m % heads != 0 {
                return Ok(0.0);
            }
            let nc = normalization(&spec.alpha(), heads)?;
            let n_sq = (heads * heads) as f64;
            Ok(n_sq * poisson_amplitude_product(x, m, m) / nc)
        }
    }
}
