use std::f64::consts::{FRAC_2_PI, FRAC_PI_2, PI};

use num_complex::Complex64 as C64;

use super::{moments::normalization, overlap_exponents, real_part, Family, StateSpec};
use crate::error::{Error, Result};

/// Precomputed roots and overlap weights for repeated Wigner evaluation.
///
/// Build once per state, then call [`WignerEvaluator::eval`] for every grid point.
#[derive(Clone, Debug)]
pub struct WignerEvaluator {
    family: Family,
    roots: Vec<C64>,
    /// overlap exponents, indexed by `d = (k1 - k2) mod N`
    log_weights: Vec<C64>,
    prefactor: f64,
}

impl WignerEvaluator {
    pub fn new(spec: &StateSpec) -> Result<Self> {
        let n = spec.n_heads();
        let roots = spec.roots().roots().to_vec();
        let (log_weights, prefactor) = match spec.family() {
            Family::Incoherent => (Vec::new(), FRAC_2_PI / n as f64),
            Family::Coherent => {
                let nc = normalization(&spec.alpha(), n)?;
                (overlap_exponents(&spec.alpha(), n), FRAC_2_PI / nc)
            }
        };
        Ok(Self {
            family: spec.family(),
            roots,
            log_weights,
            prefactor,
        })
    }

    pub fn eval(&self, beta: C64) -> Result<f64> {
        if !beta.re.is_finite() || !beta.im.is_finite() {
            return Err(Error::invalid(format!("non-finite phase-space point {beta}")));
        }
        match self.family {
            Family::Incoherent => {
                let s: f64 = self.roots.iter().map(|z| (-2.0 * (z - beta).norm_sqr()).exp()).sum();
                Ok(self.prefactor * s)
            }
            Family::Coherent => {
                let n = self.roots.len();
                let mut s = C64::new(0.0, 0.0);
                for (k1, z1) in self.roots.iter().enumerate() {
                    let d1 = z1 - beta;
                    for (k2, z2) in self.roots.iter().enumerate() {
                        let d2 = z2.conj() - beta.conj();
                        // overlap and displaced-parity exponent combined so that
                        // neither factor can overflow on its own
                        let e = self.log_weights[(k1 + n - k2) % n] - 2.0 * d2 * d1;
                        s += e.exp();
                    }
                }
                real_part("Wigner function", s * self.prefactor)
            }
        }
    }
}

/// Wigner function `W(β)` from the closed-form sums.
pub fn wigner(spec: &StateSpec, beta: C64) -> Result<f64> {
    WignerEvaluator::new(spec)?.eval(beta)
}

/// Two-headed Wigner functions written out term by term (mixture: two
/// Gaussians; superposition: two Gaussians plus two interference terms).
pub fn wigner_two_head(spec: &StateSpec, beta: C64) -> Result<f64> {
    if spec.n_heads() != 2 {
        return Err(Error::invalid(format!(
            "two-headed form requested for {} heads",
            spec.n_heads()
        )));
    }
    let r = spec.alpha().r();
    let half = spec.alpha().theta_p() / 2.0;
    let z = C64::from_polar(r.sqrt(), half);
    let g_plus = (-2.0 * (z - beta).norm_sqr()).exp();
    let g_minus = (-2.0 * (-z - beta).norm_sqr()).exp();
    match spec.family() {
        Family::Incoherent => Ok(g_plus / PI + g_minus / PI),
        Family::Coherent => {
            let denom = PI * (1.0 + (-2.0 * r).exp());
            let bb = beta.norm_sqr();
            let zc = z.conj();
            let i1 = (-2.0 * zc * beta + 2.0 * z * beta.conj() - 2.0 * bb).exp();
            let i2 = (2.0 * zc * beta - 2.0 * z * beta.conj() - 2.0 * bb).exp();
            let total = C64::new(g_plus / denom + g_minus / denom, 0.0) + i1 / denom + i2 / denom;
            real_part("two-headed Wigner function", total)
        }
    }
}

/// Photon-number parity `⟨(-1)^{a†a}⟩ = (π/2) W(0)`.
pub fn parity(spec: &StateSpec) -> Result<f64> {
    Ok(FRAC_PI_2 * wigner(spec, C64::new(0.0, 0.0))?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::PolarAmplitude;

    fn spec(x: f64, y: f64, n: usize, family: Family) -> StateSpec {
        StateSpec::new(PolarAmplitude::from_cartesian(x, y).unwrap(), n, family).unwrap()
    }

    #[test]
    fn coherent_state_peak() {
        for family in [Family::Incoherent, Family::Coherent] {
            let s = spec(1.0, 1.0, 1, family);
            let w = wigner(&s, C64::new(1.0, 1.0)).unwrap();
            assert!((w - FRAC_2_PI).abs() < 1e-15);
        }
    }

    #[test]
    fn incoherent_origin_value() {
        let a = PolarAmplitude::from_cartesian(1.0, 1.0).unwrap();
        for n in 1..7 {
            let s = StateSpec::new(a, n, Family::Incoherent).unwrap();
            let x = s.head_mean();
            let w = wigner(&s, C64::new(0.0, 0.0)).unwrap();
            assert!((w - FRAC_2_PI * (-2.0 * x).exp()).abs() < 1e-15);
        }
    }

    #[test]
    fn cat_has_negative_fringes() {
        // the interference fringes sit on the axis normal to the two lobes
        let s = spec(1.0, 1.0, 2, Family::Coherent);
        let normal = C64::from_polar(1.0, PI / 8.0 + FRAC_PI_2);
        let min = (0..400)
            .map(|i| wigner(&s, normal * (-2.0 + 0.01 * i as f64)).unwrap())
            .fold(f64::INFINITY, f64::min);
        assert!(min < -0.1, "min {min}");
    }

    #[test]
    fn parity_examples() {
        let a = PolarAmplitude::new(1.0, 0.4).unwrap();
        for n in 1..7 {
            let p = parity(&StateSpec::new(a, n, Family::Incoherent).unwrap()).unwrap();
            assert!((p - (-2f64).exp()).abs() < 1e-12);
        }
        for n in [2, 4, 6] {
            let p = parity(&spec(1.3, -0.2, n, Family::Coherent)).unwrap();
            assert!((p - 1.0).abs() < 1e-10);
        }
        for family in [Family::Incoherent, Family::Coherent] {
            let p = parity(&StateSpec::new(PolarAmplitude::zero(), 3, family).unwrap()).unwrap();
            assert!((p - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn two_head_forms_match_general_sums() {
        for family in [Family::Incoherent, Family::Coherent] {
            let s = spec(1.0, 1.0, 2, family);
            for i in -10..=10 {
                for j in -10..=10 {
                    let beta = C64::new(0.2 * i as f64, 0.2 * j as f64);
                    let a = wigner(&s, beta).unwrap();
                    let b = wigner_two_head(&s, beta).unwrap();
                    assert!((a - b).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn rejects_non_finite_points() {
        let s = spec(1.0, 1.0, 2, Family::Coherent);
        assert!(wigner(&s, C64::new(f64::NAN, 0.0)).is_err());
    }
}
