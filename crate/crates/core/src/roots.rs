//! Polar amplitudes and the N-th roots that seed every superposition.

use std::f64::consts::TAU;

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// A complex amplitude stored as modulus and principal argument in `[0, 2π)`.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct PolarAmplitude {
    r: f64,
    theta_p: f64,
}

/// Maps any finite angle into `[0, 2π)`.
pub fn principal_angle(theta: f64) -> f64 {
    let t = theta.rem_euclid(TAU);
    // rem_euclid can round up to exactly TAU for tiny negative inputs
    if t >= TAU {
        0.0
    } else {
        t
    }
}

impl PolarAmplitude {
    pub fn new(r: f64, theta: f64) -> Result<Self> {
        if !r.is_finite() || !theta.is_finite() {
            return Err(Error::invalid(format!("non-finite polar amplitude ({r}, {theta})")));
        }
        if r < 0.0 {
            return Err(Error::invalid(format!("negative modulus {r}")));
        }
        if r == 0.0 {
            return Ok(Self::zero());
        }
        Ok(Self {
            r,
            theta_p: principal_angle(theta),
        })
    }

    pub fn zero() -> Self {
        Self { r: 0.0, theta_p: 0.0 }
    }

    pub fn from_cartesian(x: f64, y: f64) -> Result<Self> {
        if !x.is_finite() || !y.is_finite() {
            return Err(Error::invalid(format!("non-finite amplitude ({x}, {y})")));
        }
        let r = x.hypot(y);
        if r == 0.0 {
            return Ok(Self::zero());
        }
        Ok(Self {
            r,
            theta_p: principal_angle(y.atan2(x)),
        })
    }

    pub fn from_complex(z: C64) -> Result<Self> {
        Self::from_cartesian(z.re, z.im)
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn theta_p(&self) -> f64 {
        self.theta_p
    }

    /// Same argument, different modulus. Used by modulus sweeps.
    pub fn with_modulus(&self, r: f64) -> Result<Self> {
        Self::new(r, self.theta_p)
    }

    pub fn to_complex(&self) -> C64 {
        C64::from_polar(self.r, self.theta_p)
    }

    pub fn re(&self) -> f64 {
        self.r * self.theta_p.cos()
    }

    pub fn im(&self) -> f64 {
        self.r * self.theta_p.sin()
    }
}

/// The N-th roots of an amplitude, ordered by `k = 0..N-1`.
#[derive(Clone, Debug, PartialEq)]
pub struct RootSet {
    n_heads: usize,
    roots: Vec<C64>,
}

impl RootSet {
    pub fn n_heads(&self) -> usize {
        self.n_heads
    }

    pub fn roots(&self) -> &[C64] {
        &self.roots
    }

    /// Common modulus `r^{1/N}` of every root.
    pub fn modulus(&self) -> f64 {
        self.roots.first().map(|z| z.norm()).unwrap_or(0.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = &C64> {
        self.roots.iter()
    }
}

/// Phase of the k-th root, `(2kπ + θ_p)/N`.
pub(crate) fn root_phase(theta_p: f64, n_heads: usize, k: usize) -> f64 {
    (TAU * k as f64 + theta_p) / n_heads as f64
}

pub fn nth_roots(alpha: &PolarAmplitude, n_heads: usize) -> Result<RootSet> {
    if n_heads < 1 {
        return Err(Error::invalid("number of heads must be at least 1"));
    }
    if n_heads == 1 {
        return Ok(RootSet {
            n_heads,
            roots: vec![alpha.to_complex()],
        });
    }
    let modulus = alpha.r.powf(1.0 / n_heads as f64);
    let roots = (0..n_heads)
        .map(|k| C64::from_polar(modulus, root_phase(alpha.theta_p, n_heads, k)))
        .collect();
    Ok(RootSet { n_heads, roots })
}

pub fn root_sum(rs: &RootSet) -> C64 {
    rs.roots.iter().sum()
}
