//! Analytic-vs-oracle comparison for a single state.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64 as C64;

use crate::analytic::{self, Family, StateSpec};
use crate::error::Result;
use crate::oracle::{self, OracleState};

/// Agreement required between the two paths.
pub const VALIDATION_TOLERANCE: f64 = 1e-8;
/// Fock matrix elements are compared for `m, n <= FME_MAX`.
pub const FME_MAX: usize = 20;
/// Photon-number distribution is compared for `m <= PND_MAX`.
pub const PND_MAX: usize = 40;
/// Wigner subgrid: `WIGNER_POINTS²` points over `[-WIGNER_EXTENT, WIGNER_EXTENT]²` in `(x, y)`.
pub const WIGNER_POINTS: usize = 21;
pub const WIGNER_EXTENT: f64 = 3.0;

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub quantity: &'static str,
    /// Largest `|analytic - oracle| / max(1, |analytic|)` over the compared entries.
    pub max_diff: f64,
    pub tolerance: f64,
    pub compared: usize,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.max_diff.is_finite() && self.max_diff < self.tolerance
    }
}

#[derive(Clone, Debug)]
pub struct ValidationReport {
    pub spec: StateSpec,
    pub cutoff: usize,
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }
}

fn scaled_diff(analytic: C64, oracle: C64) -> f64 {
    (analytic - oracle).norm() / analytic.norm().max(1.0)
}

struct Accumulator {
    quantity: &'static str,
    max_diff: f64,
    compared: usize,
}

impl Accumulator {
    fn new(quantity: &'static str) -> Self {
        Self {
            quantity,
            max_diff: 0.0,
            compared: 0,
        }
    }

    fn push(&mut self, analytic: C64, oracle: C64) {
        let d = scaled_diff(analytic, oracle);
        // NaN must fail the check
        if d.is_nan() || self.max_diff.is_nan() {
            self.max_diff = f64::NAN;
        } else {
            self.max_diff = self.max_diff.max(d);
        }
        self.compared += 1;
    }

    fn finish(self) -> Check {
        Check {
            quantity: self.quantity,
            max_diff: self.max_diff,
            tolerance: VALIDATION_TOLERANCE,
            compared: self.compared,
        }
    }
}

fn real(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// Runs every comparison for `spec` at the cutoff chosen for `eps`.
pub fn validate(spec: &StateSpec, eps: f64) -> Result<ValidationReport> {
    let cutoff = oracle::choose_cutoff(&spec.alpha(), spec.n_heads(), eps)?
        .max(PND_MAX + 8);
    let state = oracle::build_state(spec, cutoff)?;
    let mut checks = Vec::new();

    let table = analytic::moment_table(spec)?;
    let mut acc = Accumulator::new("moments");
    for ((h, l), value) in table.entries() {
        acc.push(value, oracle::oracle_moment(&state, h, l)?);
    }
    checks.push(acc.finish());

    let mut acc = Accumulator::new("fock elements");
    for m in 0..=FME_MAX {
        for n in 0..=FME_MAX {
            acc.push(analytic::fock_element(spec, m, n)?, state.element(m, n));
        }
    }
    checks.push(acc.finish());

    let mut acc = Accumulator::new("photon distribution");
    for m in 0..=PND_MAX {
        acc.push(real(analytic::pnd(spec, m)?), real(state.population(m)));
    }
    checks.push(acc.finish());

    let evaluator = analytic::WignerEvaluator::new(spec)?;
    let mut acc = Accumulator::new("wigner");
    let step = 2.0 * WIGNER_EXTENT / (WIGNER_POINTS - 1) as f64;
    for j in 0..WIGNER_POINTS {
        for i in 0..WIGNER_POINTS {
            let x = -WIGNER_EXTENT + step * i as f64;
            let y = -WIGNER_EXTENT + step * j as f64;
            let beta = C64::new(x, y) * FRAC_1_SQRT_2;
            acc.push(
                real(evaluator.eval(beta)?),
                real(oracle::oracle_wigner(&state, beta)?),
            );
        }
    }
    checks.push(acc.finish());

    let mut acc = Accumulator::new("parity");
    let oracle_parity: f64 = (0..cutoff)
        .map(|m| if m % 2 == 0 { 1.0 } else { -1.0 } * state.population(m))
        .sum();
    acc.push(real(analytic::parity(spec)?), real(oracle_parity));
    checks.push(acc.finish());

    if spec.family() == Family::Coherent {
        let mut acc = Accumulator::new("normalization");
        acc.push(
            real(analytic::normalization(&spec.alpha(), spec.n_heads())?),
            real(oracle::superposition_norm_sqr(spec, cutoff)?),
        );
        checks.push(acc.finish());

        if let OracleState::Pure(psi) = &state {
            let residual = oracle::eigen_residual(psi, spec.n_heads(), spec.alpha().to_complex())?;
            let mut acc = Accumulator::new("eigenstate residual");
            acc.push(real(0.0), real(residual));
            checks.push(acc.finish());
        }
    }

    Ok(ValidationReport {
        spec: *spec,
        cutoff,
        checks,
    })
}
