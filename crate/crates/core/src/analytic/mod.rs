//! Closed-form statistics, Fock matrix elements and Wigner functions of the
//! incoherent (mixture) and coherent (superposition) multi-headed states.

mod fock;
mod moments;
mod wigner;

use std::fmt;

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::roots::{nth_roots, root_phase, PolarAmplitude, RootSet};

pub use fock::{fock_element, pnd};
pub use moments::{
    mandel_q, mean_photon, moment, moment_c, moment_ic, moment_table, normalization,
    quadrature_variances, MomentTable, QuadratureVariances,
};
pub use wigner::{parity, wigner, wigner_two_head, WignerEvaluator};

/// Imaginary residues of real quantities must stay below this (relative to
/// `max(1, |value|)`).
pub const IMAG_RESIDUE_LIMIT: f64 = 1e-10;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// Equal-weight statistical mixture of the N coherent states.
    Incoherent,
    /// Equal-weight normalized superposition of the N coherent states.
    Coherent,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Incoherent => f.write_str("incoherent"),
            Family::Coherent => f.write_str("coherent"),
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq)]
pub struct StateSpec {
    alpha: PolarAmplitude,
    n_heads: usize,
    family: Family,
}

impl StateSpec {
    pub fn new(alpha: PolarAmplitude, n_heads: usize, family: Family) -> Result<Self> {
        if n_heads < 1 {
            return Err(Error::invalid("number of heads must be at least 1"));
        }
        Ok(Self {
            alpha,
            n_heads,
            family,
        })
    }

    pub fn alpha(&self) -> PolarAmplitude {
        self.alpha
    }

    pub fn n_heads(&self) -> usize {
        self.n_heads
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn with_alpha(&self, alpha: PolarAmplitude) -> Self {
        Self { alpha, ..*self }
    }

    pub fn roots(&self) -> RootSet {
        nth_roots(&self.alpha, self.n_heads).expect("n_heads validated at construction")
    }

    /// Mean photon number of each component coherent state, `r^{2/N}`.
    pub fn head_mean(&self) -> f64 {
        head_mean(&self.alpha, self.n_heads)
    }
}

pub(crate) fn head_mean(alpha: &PolarAmplitude, n_heads: usize) -> f64 {
    alpha.r().powf(2.0 / n_heads as f64)
}

/// `Σ_k exp(i·j·(2kπ + θ_p)/N)`, which is `N·e^{ijθ_p/N}` when `N | j` and zero otherwise.
pub(crate) fn phase_sum(theta_p: f64, n_heads: usize, j: i64) -> C64 {
    let n = n_heads as i64;
    if j.rem_euclid(n) != 0 {
        return C64::new(0.0, 0.0);
    }
    C64::from_polar(n_heads as f64, j as f64 * theta_p / n_heads as f64)
}

/// Overlap exponents `r^{2/N}(e^{2πi d/N} - 1)` indexed by `d = (k1 - k2) mod N`.
pub(crate) fn overlap_exponents(alpha: &PolarAmplitude, n_heads: usize) -> Vec<C64> {
    let x = head_mean(alpha, n_heads);
    (0..n_heads)
        .map(|d| {
            let w = C64::from_polar(1.0, std::f64::consts::TAU * d as f64 / n_heads as f64);
            x * (w - 1.0)
        })
        .collect()
}

/// Coherent-state overlaps `⟨z_k2|z_k1⟩`, same indexing as [`overlap_exponents`].
pub(crate) fn overlap_weights(alpha: &PolarAmplitude, n_heads: usize) -> Vec<C64> {
    overlap_exponents(alpha, n_heads).into_iter().map(|e| e.exp()).collect()
}

pub(crate) fn phases(alpha: &PolarAmplitude, n_heads: usize) -> Vec<f64> {
    (0..n_heads)
        .map(|k| root_phase(alpha.theta_p(), n_heads, k))
        .collect()
}

/// Discards the imaginary part of a quantity that must be real, after
/// checking the residue.
pub(crate) fn real_part(quantity: &'static str, z: C64) -> Result<f64> {
    let limit = IMAG_RESIDUE_LIMIT * z.re.abs().max(1.0);
    if z.im.abs() > limit || !z.re.is_finite() {
        return Err(Error::Inconsistent {
            quantity,
            residue: z.im.abs(),
            limit,
        });
    }
    Ok(z.re)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phase_sum_matches_literal_sum() {
        let theta = 0.7;
        for n in 1..7usize {
            for j in -9..10i64 {
                let literal: C64 = (0..n)
                    .map(|k| C64::from_polar(1.0, j as f64 * root_phase(theta, n, k)))
                    .sum();
                assert!((literal - phase_sum(theta, n, j)).norm() < 1e-13, "n={n} j={j}");
            }
        }
    }

    #[test]
    fn spec_rejects_zero_heads() {
        assert!(StateSpec::new(PolarAmplitude::zero(), 0, Family::Coherent).is_err());
    }

    #[test]
    fn residue_check() {
        assert_eq!(real_part("t", C64::new(2.0, 1e-12)).unwrap(), 2.0);
        assert!(matches!(
            real_part("t", C64::new(2.0, 1e-6)),
            Err(Error::Inconsistent { .. })
        ));
    }
}
