use num_complex::Complex64 as C64;

use super::{head_mean, overlap_weights, phase_sum, phases, real_part, Family, StateSpec};
use crate::error::{Error, Result};
use crate::roots::PolarAmplitude;

fn check_heads(n_heads: usize) -> Result<()> {
    if n_heads < 1 {
        return Err(Error::invalid("number of heads must be at least 1"));
    }
    Ok(())
}

/// Normalization factor `N_c` of the coherent superposition: the squared norm
/// of the unnormalized sum of the N coherent states.
pub fn normalization(alpha: &PolarAmplitude, n_heads: usize) -> Result<f64> {
    check_heads(n_heads)?;
    let w = overlap_weights(alpha, n_heads);
    let mut sum = C64::new(0.0, 0.0);
    for k1 in 0..n_heads {
        for k2 in 0..n_heads {
            sum += w[(k1 + n_heads - k2) % n_heads];
        }
    }
    let nc = real_part("normalization", sum)?;
    debug_assert!(nc > 0.0);
    Ok(nc)
}

/// `⟨a†ʰ aˡ⟩` of the incoherent mixture.
pub fn moment_ic(alpha: &PolarAmplitude, n_heads: usize, h: u32, l: u32) -> Result<C64> {
    check_heads(n_heads)?;
    let scale = alpha.r().powf((h + l) as f64 / n_heads as f64);
    let avg = phase_sum(alpha.theta_p(), n_heads, l as i64 - h as i64) / n_heads as f64;
    Ok(avg * scale)
}

/// `⟨a†ʰ aˡ⟩` of the coherent superposition, from the overlap-weighted double sum.
pub fn moment_c(alpha: &PolarAmplitude, n_heads: usize, h: u32, l: u32) -> Result<C64> {
    check_heads(n_heads)?;
    let nc = normalization(alpha, n_heads)?;
    let w = overlap_weights(alpha, n_heads);
    let phi = phases(alpha, n_heads);
    let (h_f, l_f) = (h as f64, l as f64);
    let mut sum = C64::new(0.0, 0.0);
    for k1 in 0..n_heads {
        for k2 in 0..n_heads {
            let phase = C64::from_polar(1.0, l_f * phi[k1] - h_f * phi[k2]);
            sum += w[(k1 + n_heads - k2) % n_heads] * phase;
        }
    }
    let scale = alpha.r().powf((h + l) as f64 / n_heads as f64);
    Ok(sum * (scale / nc))
}

pub fn moment(spec: &StateSpec, h: u32, l: u32) -> Result<C64> {
    match spec.family() {
        Family::Incoherent => moment_ic(&spec.alpha(), spec.n_heads(), h, l),
        Family::Coherent => moment_c(&spec.alpha(), spec.n_heads(), h, l),
    }
}

/// The six low-order normally ordered moments.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct MomentTable {
    pub a_dag: C64,
    pub a: C64,
    pub n_mean: C64,
    pub a_dag2: C64,
    pub a2: C64,
    pub a_dag2_a2: C64,
}

impl MomentTable {
    /// Entries paired with their `(h, l)` exponents, in table order.
    pub fn entries(&self) -> [((u32, u32), C64); 6] {
        [
            ((1, 0), self.a_dag),
            ((0, 1), self.a),
            ((1, 1), self.n_mean),
            ((2, 0), self.a_dag2),
            ((0, 2), self.a2),
            ((2, 2), self.a_dag2_a2),
        ]
    }
}

pub fn moment_table(spec: &StateSpec) -> Result<MomentTable> {
    Ok(MomentTable {
        a_dag: moment(spec, 1, 0)?,
        a: moment(spec, 0, 1)?,
        n_mean: moment(spec, 1, 1)?,
        a_dag2: moment(spec, 2, 0)?,
        a2: moment(spec, 0, 2)?,
        a_dag2_a2: moment(spec, 2, 2)?,
    })
}

pub fn mean_photon(spec: &StateSpec) -> Result<f64> {
    if spec.family() == Family::Incoherent {
        return Ok(head_mean(&spec.alpha(), spec.n_heads()));
    }
    real_part("mean photon number", moment(spec, 1, 1)?)
}

/// Mandel Q parameter `⟨a†²a²⟩/⟨a†a⟩ - ⟨a†a⟩`.
pub fn mandel_q(spec: &StateSpec) -> Result<f64> {
    let n = mean_photon(spec)?;
    if n == 0.0 {
        return Err(Error::UndefinedStatistic(
            "Mandel Q is undefined at zero mean photon number".into(),
        ));
    }
    let n2 = real_part("second factorial moment", moment(spec, 2, 2)?)?;
    Ok(n2 / n - n)
}

/// Variances of `X1 = (a + a†)/√2` and `X2 = (a - a†)/(√2 i)`.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct QuadratureVariances {
    pub var_x1: f64,
    pub var_x2: f64,
}

impl QuadratureVariances {
    pub fn min(&self) -> f64 {
        self.var_x1.min(self.var_x2)
    }

    pub fn get(&self, j: u8) -> f64 {
        match j {
            1 => self.var_x1,
            2 => self.var_x2,
            _ => panic!("quadrature index must be 1 or 2, got {j}"),
        }
    }
}

pub fn quadrature_variances(spec: &StateSpec) -> Result<QuadratureVariances> {
    let t = moment_table(spec)?;
    let n = real_part("mean photon number", t.n_mean)?;
    let base = n - t.a_dag.norm_sqr() + 0.5;
    let cross = (t.a_dag2 - t.a_dag * t.a_dag).re;
    Ok(QuadratureVariances {
        var_x1: base + cross,
        var_x2: base - cross,
    })
}
