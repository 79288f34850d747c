//! Truncated Fock-space construction of the same states, used as an
//! independent check on every closed form.
//!
//! Nothing here calls into the closed-form sums: the superposition is
//! normalized numerically, moments come from ladder-operator action, and the
//! Wigner function from the displaced-parity kernel.

mod kernel;

use std::f64::consts::FRAC_2_PI;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64 as C64;

use crate::analytic::{head_mean, real_part, Family, StateSpec};
use crate::error::{Error, Result};
use crate::roots::{nth_roots, PolarAmplitude};
use crate::special::{ln_factorial, poisson_tail};

/// Default truncated-mass target for [`choose_cutoff`].
pub const DEFAULT_EPS: f64 = 1e-12;
/// Largest Fock dimension the oracle will allocate.
pub const MAX_CUTOFF: usize = 4096;
/// Smallest cutoff handed out by [`choose_cutoff`].
pub const MIN_CUTOFF: usize = 32;
/// Truncated probability mass tolerated in a constructed state.
pub const MAX_TAIL: f64 = 1e-10;

/// Pure state amplitudes `c_m = ⟨m|ψ⟩` for `m < cutoff`.
#[derive(Clone, Debug, PartialEq)]
pub struct FockVector {
    amplitudes: Vec<C64>,
    tail_bound: f64,
}

impl FockVector {
    pub fn cutoff(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    /// Upper estimate of the probability mass beyond the cutoff.
    pub fn tail_bound(&self) -> f64 {
        self.tail_bound
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn inner(&self, other: &FockVector) -> C64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn density(&self) -> FockDensity {
        let v = DVector::from_column_slice(&self.amplitudes);
        FockDensity {
            matrix: &v * v.adjoint(),
            tail_bound: self.tail_bound,
        }
    }

    /// Probability mass held in the top `width` levels.
    fn edge_mass(&self, width: usize) -> f64 {
        let d = self.cutoff();
        self.amplitudes[d.saturating_sub(width)..]
            .iter()
            .map(|c| c.norm_sqr())
            .sum()
    }
}

/// Density matrix `ρ_mn = ⟨m|ρ|n⟩` for `m, n < cutoff`.
#[derive(Clone, Debug, PartialEq)]
pub struct FockDensity {
    matrix: DMatrix<C64>,
    tail_bound: f64,
}

impl FockDensity {
    pub fn cutoff(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.matrix
    }

    pub fn tail_bound(&self) -> f64 {
        self.tail_bound
    }

    pub fn trace(&self) -> f64 {
        self.matrix.diagonal().iter().map(|c| c.re).sum()
    }

    pub fn hermiticity_defect(&self) -> f64 {
        (&self.matrix - self.matrix.adjoint())
            .iter()
            .map(|c| c.norm())
            .fold(0.0, f64::max)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        SymmetricEigen::new(self.matrix.clone())
            .eigenvalues
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min)
    }

    fn edge_mass(&self, width: usize) -> f64 {
        let d = self.cutoff();
        (d.saturating_sub(width)..d).map(|m| self.matrix[(m, m)].re).sum()
    }
}

/// A truncated state: pure for the superposition, mixed for the mixture.
#[derive(Clone, Debug, PartialEq)]
pub enum OracleState {
    Pure(FockVector),
    Mixed(FockDensity),
}

impl OracleState {
    pub fn cutoff(&self) -> usize {
        match self {
            OracleState::Pure(v) => v.cutoff(),
            OracleState::Mixed(d) => d.cutoff(),
        }
    }

    pub fn tail_bound(&self) -> f64 {
        match self {
            OracleState::Pure(v) => v.tail_bound(),
            OracleState::Mixed(d) => d.tail_bound(),
        }
    }

    /// `⟨m|ρ|n⟩`, zero outside the truncated block.
    pub fn element(&self, m: usize, n: usize) -> C64 {
        if m >= self.cutoff() || n >= self.cutoff() {
            return C64::new(0.0, 0.0);
        }
        match self {
            OracleState::Pure(v) => v.amplitudes[m] * v.amplitudes[n].conj(),
            OracleState::Mixed(d) => d.matrix[(m, n)],
        }
    }

    pub fn population(&self, m: usize) -> f64 {
        self.element(m, m).re
    }

    fn edge_mass(&self, width: usize) -> f64 {
        match self {
            OracleState::Pure(v) => v.edge_mass(width),
            OracleState::Mixed(d) => d.edge_mass(width),
        }
    }
}

/// Smallest admissible cutoff for the states built from `alpha` and `n_heads`.
///
/// Starts from the Poisson tail of the per-head mean `r^{2/N}`, rounds up to a
/// multiple of `N` and adds a margin of `4N` levels, never going below
/// [`MIN_CUTOFF`].
pub fn choose_cutoff(alpha: &PolarAmplitude, n_heads: usize, eps: f64) -> Result<usize> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::invalid(format!("tail target {eps} outside (0, 1)")));
    }
    if n_heads < 1 {
        return Err(Error::invalid("number of heads must be at least 1"));
    }
    let mean = head_mean(alpha, n_heads);
    // mass at or above the mean never drops below eps, so start there
    let mut d = (mean.floor() as usize).max(1);
    while poisson_tail(mean, d) >= eps {
        d += 1;
        if d > MAX_CUTOFF {
            return Err(Error::Capacity {
                required: d,
                max: MAX_CUTOFF,
            });
        }
    }
    let d = d.div_ceil(n_heads) * n_heads + 4 * n_heads;
    let d = d.max(MIN_CUTOFF);
    if d > MAX_CUTOFF {
        return Err(Error::Capacity {
            required: d,
            max: MAX_CUTOFF,
        });
    }
    Ok(d)
}

fn check_cutoff(cutoff: usize) -> Result<()> {
    if cutoff == 0 {
        return Err(Error::invalid("cutoff must be at least 1"));
    }
    if cutoff > MAX_CUTOFF {
        return Err(Error::Capacity {
            required: cutoff,
            max: MAX_CUTOFF,
        });
    }
    Ok(())
}

fn coherent_amplitudes(gamma: C64, cutoff: usize) -> Vec<C64> {
    let mean = gamma.norm_sqr();
    if mean == 0.0 {
        let mut v = vec![C64::new(0.0, 0.0); cutoff];
        v[0] = C64::new(1.0, 0.0);
        return v;
    }
    let (ln_mod, phase) = (gamma.norm().ln(), gamma.arg());
    (0..cutoff)
        .map(|m| {
            let ln_mag = -0.5 * mean + m as f64 * ln_mod - 0.5 * ln_factorial(m);
            C64::from_polar(ln_mag.exp(), m as f64 * phase)
        })
        .collect()
}

/// Coherent state `|γ⟩` truncated to `cutoff` levels.
pub fn build_coherent(gamma: C64, cutoff: usize) -> Result<FockVector> {
    check_cutoff(cutoff)?;
    if !gamma.re.is_finite() || !gamma.im.is_finite() {
        return Err(Error::invalid(format!("non-finite coherent amplitude {gamma}")));
    }
    let tail = poisson_tail(gamma.norm_sqr(), cutoff);
    if tail >= MAX_TAIL {
        return Err(Error::Truncation {
            cutoff,
            tail,
            limit: MAX_TAIL,
        });
    }
    Ok(FockVector {
        amplitudes: coherent_amplitudes(gamma, cutoff),
        tail_bound: tail,
    })
}

/// Unnormalized sum of the N coherent states and its squared norm.
fn unnormalized_superposition(spec: &StateSpec, cutoff: usize) -> Result<(Vec<C64>, f64, f64)> {
    check_cutoff(cutoff)?;
    let roots = nth_roots(&spec.alpha(), spec.n_heads())?;
    let mut sum = vec![C64::new(0.0, 0.0); cutoff];
    for z in roots.iter() {
        for (s, c) in sum.iter_mut().zip(coherent_amplitudes(*z, cutoff)) {
            *s += c;
        }
    }
    let norm_sq: f64 = sum.iter().map(|c| c.norm_sqr()).sum();
    // |v_m| <= N |c_m| for each component, so the discarded mass of v is at
    // most N² times the single-component Poisson tail
    let heads = spec.n_heads() as f64;
    let tail = heads * heads * poisson_tail(spec.head_mean(), cutoff) / norm_sq;
    Ok((sum, norm_sq, tail))
}

/// Squared norm of the unnormalized sum `Σ_k |z_k⟩` in the truncated basis.
pub fn superposition_norm_sqr(spec: &StateSpec, cutoff: usize) -> Result<f64> {
    Ok(unnormalized_superposition(spec, cutoff)?.1)
}

pub fn build_state(spec: &StateSpec, cutoff: usize) -> Result<OracleState> {
    match spec.family() {
        Family::Coherent => {
            let (sum, norm_sq, tail) = unnormalized_superposition(spec, cutoff)?;
            if tail >= MAX_TAIL {
                return Err(Error::Truncation {
                    cutoff,
                    tail,
                    limit: MAX_TAIL,
                });
            }
            let scale = norm_sq.sqrt().recip();
            Ok(OracleState::Pure(FockVector {
                amplitudes: sum.into_iter().map(|c| c * scale).collect(),
                tail_bound: tail,
            }))
        }
        Family::Incoherent => {
            let roots = nth_roots(&spec.alpha(), spec.n_heads())?;
            let weight = 1.0 / spec.n_heads() as f64;
            let mut matrix = DMatrix::<C64>::zeros(cutoff, cutoff);
            let mut tail: f64 = 0.0;
            for z in roots.iter() {
                let v = build_coherent(*z, cutoff)?;
                tail = tail.max(v.tail_bound);
                let col = DVector::from_column_slice(v.amplitudes());
                matrix += (&col * col.adjoint()) * C64::new(weight, 0.0);
            }
            Ok(OracleState::Mixed(FockDensity {
                matrix,
                tail_bound: tail,
            }))
        }
    }
}

/// Builds the state at the cutoff picked by [`choose_cutoff`].
pub fn build_state_auto(spec: &StateSpec, eps: f64) -> Result<OracleState> {
    let d = choose_cutoff(&spec.alpha(), spec.n_heads(), eps)?;
    build_state(spec, d)
}

/// One application of the annihilation operator: `(a c)_m = sqrt(m+1) c_{m+1}`.
fn lower(amps: &[C64]) -> Vec<C64> {
    let d = amps.len();
    (0..d)
        .map(|m| {
            if m + 1 < d {
                amps[m + 1] * ((m + 1) as f64).sqrt()
            } else {
                C64::new(0.0, 0.0)
            }
        })
        .collect()
}

fn lower_times(amps: &[C64], times: u32) -> Vec<C64> {
    let mut v = amps.to_vec();
    for _ in 0..times {
        v = lower(&v);
    }
    v
}

/// Truncated annihilation operator as a matrix.
fn annihilation_matrix(dim: usize) -> DMatrix<C64> {
    DMatrix::from_fn(dim, dim, |m, n| {
        if n == m + 1 {
            C64::new((n as f64).sqrt(), 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    })
}

fn check_headroom(state: &OracleState, width: usize) -> Result<()> {
    let d = state.cutoff();
    if width >= d {
        return Err(Error::CutoffInsufficient {
            cutoff: d,
            reason: format!("operator order {width} reaches the cutoff"),
        });
    }
    let edge = state.edge_mass(width);
    if edge > MAX_TAIL {
        return Err(Error::CutoffInsufficient {
            cutoff: d,
            reason: format!("mass {edge:e} within {width} levels of the cutoff"),
        });
    }
    Ok(())
}

/// `⟨a†ʰ aˡ⟩` by ladder-operator action in the truncated basis.
pub fn oracle_moment(state: &OracleState, h: u32, l: u32) -> Result<C64> {
    check_headroom(state, (h + l) as usize)?;
    match state {
        OracleState::Pure(v) => {
            let left = lower_times(v.amplitudes(), h);
            let right = lower_times(v.amplitudes(), l);
            Ok(left.iter().zip(&right).map(|(a, b)| a.conj() * b).sum())
        }
        OracleState::Mixed(rho) => {
            // Tr[ρ a†ʰ aˡ] = Tr[aˡ ρ (aʰ)†]
            let a = annihilation_matrix(rho.cutoff());
            let a_l = matrix_power(&a, l);
            let a_h = matrix_power(&a, h);
            Ok((a_l * rho.matrix() * a_h.adjoint()).trace())
        }
    }
}

fn matrix_power(a: &DMatrix<C64>, p: u32) -> DMatrix<C64> {
    let mut out = DMatrix::<C64>::identity(a.nrows(), a.ncols());
    for _ in 0..p {
        out = &out * a;
    }
    out
}

/// `aᴺ|ψ⟩`, unnormalized.
pub fn apply_annihilation_power(state: &FockVector, n_heads: usize) -> Result<FockVector> {
    let wrapped = OracleState::Pure(state.clone());
    check_headroom(&wrapped, n_heads)?;
    Ok(FockVector {
        amplitudes: lower_times(state.amplitudes(), n_heads as u32),
        tail_bound: state.tail_bound,
    })
}

/// `‖aᴺψ − αψ‖` over the levels `m < D − N`, where truncation does not touch
/// the lowered amplitudes.
pub fn eigen_residual(state: &FockVector, n_heads: usize, alpha: C64) -> Result<f64> {
    let lowered = apply_annihilation_power(state, n_heads)?;
    let exact = state.cutoff() - n_heads;
    Ok(lowered.amplitudes[..exact]
        .iter()
        .zip(&state.amplitudes[..exact])
        .map(|(a, c)| (a - alpha * c).norm_sqr())
        .sum::<f64>()
        .sqrt())
}

/// Wigner function as `(2/π) Tr[ρ D(β) Π D†(β)]` with the closed-form kernel.
///
/// Valid while `|β|²` stays below half the cutoff.
pub fn oracle_wigner(state: &OracleState, beta: C64) -> Result<f64> {
    if !beta.re.is_finite() || !beta.im.is_finite() {
        return Err(Error::invalid(format!("non-finite phase-space point {beta}")));
    }
    let d = state.cutoff();
    if 2.0 * beta.norm_sqr() >= d as f64 {
        return Err(Error::CutoffInsufficient {
            cutoff: d,
            reason: format!("|β|² = {} outside the kernel's validity region", beta.norm_sqr()),
        });
    }
    let k = kernel::displaced_parity(beta, d);
    let tr = match state {
        OracleState::Pure(v) => {
            let c = DVector::from_column_slice(v.amplitudes());
            (c.adjoint() * &k * &c)[(0, 0)]
        }
        OracleState::Mixed(rho) => (rho.matrix() * &k).trace(),
    };
    real_part("oracle Wigner function", tr * FRAC_2_PI)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::PolarAmplitude;

    fn spec(x: f64, y: f64, n: usize, family: Family) -> StateSpec {
        StateSpec::new(PolarAmplitude::from_cartesian(x, y).unwrap(), n, family).unwrap()
    }

    #[test]
    fn cutoff_policy() {
        let a = PolarAmplitude::from_cartesian(1.0, 1.0).unwrap();
        assert!(choose_cutoff(&a, 2, 1e-12).unwrap() >= 32);
        assert_eq!(choose_cutoff(&PolarAmplitude::zero(), 3, 1e-12).unwrap(), 32);
        let big = PolarAmplitude::new(100.0, 0.0).unwrap();
        assert!(matches!(choose_cutoff(&big, 1, 1e-12), Err(Error::Capacity { .. })));
        assert!(choose_cutoff(&a, 2, 0.0).is_err());
        assert!(choose_cutoff(&a, 2, 1.0).is_err());

        let mid = PolarAmplitude::new(6.0, 0.0).unwrap();
        let d = choose_cutoff(&mid, 1, 1e-12).unwrap();
        assert!(d > 36 && poisson_tail(36.0, d - 4) < 1e-12);
        let d3 = choose_cutoff(&PolarAmplitude::new(40.0, 0.0).unwrap(), 3, 1e-12).unwrap();
        assert_eq!(d3 % 3, 0);
    }

    #[test]
    fn coherent_vector_basics() {
        let vac = build_coherent(C64::new(0.0, 0.0), 32).unwrap();
        assert_eq!(vac.amplitudes()[0], C64::new(1.0, 0.0));
        assert!(vac.amplitudes()[1..].iter().all(|c| c.norm() == 0.0));

        let one = build_coherent(C64::new(1.0, 0.0), 32).unwrap();
        assert!((one.amplitudes()[0].re - (-0.5f64).exp()).abs() < 1e-16);
        assert!((one.norm_sqr() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn coherent_overlap_closed_form() {
        let g1 = C64::new(0.8, -0.3);
        let g2 = C64::new(-1.1, 0.9);
        let v1 = build_coherent(g1, 48).unwrap();
        let v2 = build_coherent(g2, 48).unwrap();
        let expect = (-(g1.norm_sqr() + g2.norm_sqr()) / 2.0 + g1.conj() * g2).exp();
        assert!((v1.inner(&v2) - expect).norm() < 1e-10);
    }

    #[test]
    fn coherent_truncation_detected() {
        assert!(matches!(
            build_coherent(C64::new(5.0, 0.0), 20),
            Err(Error::Truncation { .. })
        ));
    }

    #[test]
    fn single_head_is_the_coherent_state() {
        let g = C64::new(1.0, 1.0);
        let direct = build_coherent(g, 40).unwrap();
        match build_state(&spec(1.0, 1.0, 1, Family::Coherent), 40).unwrap() {
            OracleState::Pure(v) => {
                for (a, b) in v.amplitudes().iter().zip(direct.amplitudes()) {
                    assert!((a - b).norm() < 1e-14);
                }
            }
            _ => panic!("expected a pure state"),
        }
        let mixed = build_state(&spec(1.0, 1.0, 1, Family::Incoherent), 40).unwrap();
        let rho = direct.density();
        for m in 0..40 {
            for n in 0..40 {
                assert!((mixed.element(m, n) - rho.matrix()[(m, n)]).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn superposition_support() {
        let st = build_state(&spec(1.0, 1.0, 3, Family::Coherent), 48).unwrap();
        if let OracleState::Pure(v) = &st {
            for (m, c) in v.amplitudes().iter().enumerate() {
                if m % 3 != 0 {
                    assert!(c.norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn mixture_diagonal_is_poisson() {
        let s = spec(1.0, 1.0, 3, Family::Incoherent);
        let st = build_state(&s, 48).unwrap();
        let x = s.head_mean();
        for m in 0..48 {
            let expect = (m as f64 * x.ln() - x - ln_factorial(m)).exp();
            assert!((st.population(m) - expect).abs() < 1e-12);
        }
    }

    #[test]
    fn mixture_is_a_density() {
        if let OracleState::Mixed(rho) = build_state(&spec(0.9, -1.4, 4, Family::Incoherent), 40).unwrap() {
            assert!(rho.hermiticity_defect() < 1e-12);
            assert!(rho.trace() <= 1.0 + 1e-12 && rho.trace() >= 1.0 - rho.tail_bound() - 1e-12);
            assert!(rho.min_eigenvalue() > -1e-10);
        } else {
            panic!("expected a mixed state");
        }
    }

    #[test]
    fn moments_of_simple_states() {
        let vac = OracleState::Pure(build_coherent(C64::new(0.0, 0.0), 32).unwrap());
        assert_eq!(oracle_moment(&vac, 1, 1).unwrap(), C64::new(0.0, 0.0));
        let g = C64::new(1.2, -0.4);
        let coh = OracleState::Pure(build_coherent(g, 48).unwrap());
        assert!((oracle_moment(&coh, 1, 1).unwrap().re - g.norm_sqr()).abs() < 1e-10);
        assert!((oracle_moment(&coh, 0, 2).unwrap() - g * g).norm() < 1e-10);
        let mixed = OracleState::Mixed(build_coherent(g, 48).unwrap().density());
        assert!((oracle_moment(&mixed, 2, 1).unwrap() - g.conj() * g.conj() * g).norm() < 1e-10);
    }

    #[test]
    fn two_head_cat_mean() {
        let s = spec(1.0, 1.0, 2, Family::Coherent);
        let st = build_state_auto(&s, DEFAULT_EPS).unwrap();
        let r = s.alpha().r();
        assert!((oracle_moment(&st, 1, 1).unwrap().re - r * r.tanh()).abs() < 1e-8);
    }

    #[test]
    fn moment_headroom_error() {
        let st = OracleState::Pure(build_coherent(C64::new(1.0, 0.0), 32).unwrap());
        assert!(matches!(oracle_moment(&st, 20, 20), Err(Error::CutoffInsufficient { .. })));
    }

    #[test]
    fn annihilation_power_eigenvalues() {
        let vac = build_coherent(C64::new(0.0, 0.0), 32).unwrap();
        let out = apply_annihilation_power(&vac, 1).unwrap();
        assert!(out.amplitudes().iter().all(|c| c.norm() == 0.0));

        let g = C64::new(-0.7, 1.3);
        let coh = build_coherent(g, 48).unwrap();
        let out = apply_annihilation_power(&coh, 1).unwrap();
        for (a, c) in out.amplitudes().iter().zip(coh.amplitudes()) {
            assert!((a - g * c).norm() < 1e-10);
        }

        let s = spec(1.0, 1.0, 3, Family::Coherent);
        if let OracleState::Pure(v) = build_state_auto(&s, DEFAULT_EPS).unwrap() {
            let out = apply_annihilation_power(&v, 3).unwrap();
            let alpha = s.alpha().to_complex();
            let resid: f64 = out
                .amplitudes()
                .iter()
                .zip(v.amplitudes())
                .map(|(a, c)| (a - alpha * c).norm_sqr())
                .sum::<f64>()
                .sqrt();
            assert!(resid < 1e-8, "residual {resid}");
        }
    }

    #[test]
    fn wigner_of_vacuum_and_coherent_state() {
        let vac = OracleState::Pure(build_coherent(C64::new(0.0, 0.0), 32).unwrap());
        assert!((oracle_wigner(&vac, C64::new(0.0, 0.0)).unwrap() - FRAC_2_PI).abs() < 1e-15);

        let g = C64::new(1.0, 1.0);
        let coh = OracleState::Pure(build_coherent(g, 40).unwrap());
        assert!((oracle_wigner(&coh, g).unwrap() - FRAC_2_PI).abs() < 1e-8);
        for (bx, by) in [(0.3, -0.2), (-1.0, 0.5), (2.0, 2.0), (1.5, -2.5)] {
            let beta = C64::new(bx, by);
            let expect = FRAC_2_PI * (-2.0 * (g - beta).norm_sqr()).exp();
            let got = oracle_wigner(&coh, beta).unwrap();
            assert!((got - expect).abs() < 1e-10, "β={beta}: {got} vs {expect}");
        }
    }

    #[test]
    fn wigner_validity_region() {
        let vac = OracleState::Pure(build_coherent(C64::new(0.0, 0.0), 32).unwrap());
        assert!(matches!(
            oracle_wigner(&vac, C64::new(4.0, 0.0)),
            Err(Error::CutoffInsufficient { .. })
        ));
    }
}
