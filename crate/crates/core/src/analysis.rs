//! Sweeps over the modulus `|α|` at fixed argument and head count, and the
//! threshold crossings extracted from them.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::analytic::{self, Family, StateSpec};
use crate::error::{Error, Result};
use crate::roots::PolarAmplitude;

pub const DEFAULT_STEP: f64 = 0.01;
/// Bisection stops once the bracket is narrower than this.
pub const BISECTION_TOL: f64 = 1e-7;
/// Samples within this distance of the threshold carry no sign.
pub const SIGN_DEADBAND: f64 = 1e-12;
/// Variance margin below 0.5 required to call a sample squeezed.
pub const SQUEEZE_TOL: f64 = 1e-10;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Quantity {
    MeanPhoton,
    MandelQ,
    VarX1,
    VarX2,
    Parity,
}

impl Quantity {
    pub const ALL: [Quantity; 5] = [
        Quantity::MeanPhoton,
        Quantity::MandelQ,
        Quantity::VarX1,
        Quantity::VarX2,
        Quantity::Parity,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Quantity::MeanPhoton => "mean-photon",
            Quantity::MandelQ => "mandel-q",
            Quantity::VarX1 => "var-x1",
            Quantity::VarX2 => "var-x2",
            Quantity::Parity => "parity",
        }
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Quantity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Quantity::ALL
            .into_iter()
            .find(|q| q.name() == s)
            .ok_or_else(|| Error::invalid(format!("unknown quantity '{s}'")))
    }
}

/// A state specification with the modulus left open.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct SweepTemplate {
    pub theta_p: f64,
    pub n_heads: usize,
    pub family: Family,
}

impl SweepTemplate {
    pub fn new(theta_p: f64, n_heads: usize, family: Family) -> Result<Self> {
        let alpha = PolarAmplitude::new(1.0, theta_p)?;
        StateSpec::new(alpha, n_heads, family)?;
        Ok(Self {
            theta_p: alpha.theta_p(),
            n_heads,
            family,
        })
    }

    pub fn at(&self, r: f64) -> Result<StateSpec> {
        StateSpec::new(PolarAmplitude::new(r, self.theta_p)?, self.n_heads, self.family)
    }
}

impl From<&StateSpec> for SweepTemplate {
    fn from(spec: &StateSpec) -> Self {
        Self {
            theta_p: spec.alpha().theta_p(),
            n_heads: spec.n_heads(),
            family: spec.family(),
        }
    }
}

/// Value of `quantity` for the template at modulus `r`.
pub fn evaluate(template: &SweepTemplate, quantity: Quantity, r: f64) -> Result<f64> {
    let spec = template.at(r)?;
    match quantity {
        Quantity::MeanPhoton => analytic::mean_photon(&spec),
        Quantity::MandelQ => analytic::mandel_q(&spec),
        Quantity::VarX1 => Ok(analytic::quadrature_variances(&spec)?.var_x1),
        Quantity::VarX2 => Ok(analytic::quadrature_variances(&spec)?.var_x2),
        Quantity::Parity => analytic::parity(&spec),
    }
}

#[derive(Copy, Clone, Debug, PartialEq)]
pub struct Sample {
    pub r: f64,
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepResult {
    pub quantity: Quantity,
    pub template: SweepTemplate,
    pub step: f64,
    /// Strictly increasing in `r`.
    pub samples: Vec<Sample>,
    /// Moduli where the quantity is undefined (e.g. Mandel Q at `r = 0`).
    pub gaps: Vec<f64>,
}

impl SweepResult {
    pub fn min_value(&self) -> Option<f64> {
        self.samples.iter().map(|s| s.value).reduce(f64::min)
    }

    pub fn max_value(&self) -> Option<f64> {
        self.samples.iter().map(|s| s.value).reduce(f64::max)
    }

    /// Sample closest to `r`.
    pub fn nearest(&self, r: f64) -> Option<Sample> {
        self.samples
            .iter()
            .copied()
            .min_by(|a, b| (a.r - r).abs().total_cmp(&(b.r - r).abs()))
    }
}

fn grid(r_min: f64, r_max: f64, step: f64) -> Vec<f64> {
    let count = ((r_max - r_min) / step + 1e-9).floor() as usize;
    let mut rs: Vec<f64> = (0..=count).map(|i| r_min + step * i as f64).collect();
    if r_max - rs[rs.len() - 1] > step * 1e-9 {
        rs.push(r_max);
    }
    rs
}

pub fn sweep(
    template: &SweepTemplate,
    quantity: Quantity,
    r_min: f64,
    r_max: f64,
    step: f64,
) -> Result<SweepResult> {
    if !(r_min.is_finite() && r_max.is_finite() && step.is_finite()) {
        return Err(Error::invalid("sweep range must be finite"));
    }
    if r_min < 0.0 || r_min >= r_max {
        return Err(Error::invalid(format!("bad sweep range [{r_min}, {r_max}]")));
    }
    if step <= 0.0 {
        return Err(Error::invalid(format!("sweep step {step} must be positive")));
    }
    let rs = grid(r_min, r_max, step);
    let evaluated: Vec<(f64, Result<f64>)> = rs
        .par_iter()
        .map(|&r| {
            if r == 0.0 && quantity == Quantity::MandelQ {
                (r, Err(Error::UndefinedStatistic("Mandel Q at r = 0".into())))
            } else {
                (r, evaluate(template, quantity, r))
            }
        })
        .collect();
    let mut samples = Vec::with_capacity(evaluated.len());
    let mut gaps = Vec::new();
    for (r, value) in evaluated {
        match value {
            Ok(value) => samples.push(Sample { r, value }),
            Err(Error::UndefinedStatistic(_)) => gaps.push(r),
            Err(e) => return Err(e),
        }
    }
    Ok(SweepResult {
        quantity,
        template: *template,
        step,
        samples,
        gaps,
    })
}

fn side(value: f64, threshold: f64) -> i8 {
    let d = value - threshold;
    if d > SIGN_DEADBAND * threshold.abs().max(1.0) {
        1
    } else if d < -SIGN_DEADBAND * threshold.abs().max(1.0) {
        -1
    } else {
        0
    }
}

/// Bisection for the boundary of `pred` in `[lo, hi]`, given `pred(lo) != pred(hi)`.
fn bisect<F>(mut lo: f64, mut hi: f64, pred: F) -> Result<f64>
where
    F: Fn(f64) -> Result<bool>,
{
    let lo_side = pred(lo)?;
    while hi - lo > BISECTION_TOL {
        let mid = 0.5 * (lo + hi);
        if pred(mid)? == lo_side {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Refined moduli where the swept quantity crosses `threshold`, ascending.
///
/// Samples inside the [`SIGN_DEADBAND`] are skipped when bracketing, so
/// values that merely touch the threshold (or hover at round-off level around
/// it) are not reported.
pub fn find_crossings(sweep: &SweepResult, threshold: f64) -> Result<Vec<f64>> {
    let signed: Vec<(Sample, i8)> = sweep
        .samples
        .iter()
        .map(|s| (*s, side(s.value, threshold)))
        .filter(|(_, sd)| *sd != 0)
        .collect();
    let mut out = Vec::new();
    for w in signed.windows(2) {
        let ((a, sa), (b, sb)) = (w[0], w[1]);
        if sa == sb {
            continue;
        }
        let root = bisect(a.r, b.r, |r| {
            Ok(evaluate(&sweep.template, sweep.quantity, r)? > threshold)
        })?;
        out.push(root);
    }
    Ok(out)
}

#[derive(Copy, Clone, Debug, PartialEq)]
pub struct SqueezingWindow {
    /// 1 for `X1`, 2 for `X2`.
    pub quadrature: u8,
    pub start: f64,
    pub end: f64,
    /// Smallest sampled variance inside the window.
    pub min_variance: f64,
}

/// Maximal intervals of `r ∈ [0, r_max]` where a quadrature variance of the
/// template drops below 0.5.
pub fn squeezing_windows_for(
    template: &SweepTemplate,
    r_max: f64,
    step: f64,
) -> Result<Vec<SqueezingWindow>> {
    if !(r_max > 0.0) {
        return Err(Error::invalid(format!("r_max {r_max} must be positive")));
    }
    let limit = 0.5 - SQUEEZE_TOL;
    let mut windows = Vec::new();
    for (j, quantity) in [(1u8, Quantity::VarX1), (2u8, Quantity::VarX2)] {
        let sw = sweep(template, quantity, 0.0, r_max, step)?;
        let inside = |r: f64| -> Result<bool> { Ok(evaluate(template, quantity, r)? < limit) };
        let samples = &sw.samples;
        let mut i = 0;
        while i < samples.len() {
            if samples[i].value >= limit {
                i += 1;
                continue;
            }
            let first = i;
            while i < samples.len() && samples[i].value < limit {
                i += 1;
            }
            let last = i - 1;
            let start = if first == 0 {
                samples[0].r
            } else {
                bisect(samples[first - 1].r, samples[first].r, inside)?
            };
            let end = if last + 1 == samples.len() {
                samples[last].r
            } else {
                bisect(samples[last].r, samples[last + 1].r, inside)?
            };
            let min_variance = samples[first..=last]
                .iter()
                .map(|s| s.value)
                .fold(f64::INFINITY, f64::min);
            windows.push(SqueezingWindow {
                quadrature: j,
                start,
                end,
                min_variance,
            });
        }
    }
    Ok(windows)
}

/// Squeezing windows of the two-headed superposition at argument `theta_p`.
pub fn squeezing_window(theta_p: f64, r_max: f64) -> Result<Vec<SqueezingWindow>> {
    let template = SweepTemplate::new(theta_p, 2, Family::Coherent)?;
    squeezing_windows_for(&template, r_max, DEFAULT_STEP)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    fn tmpl(n: usize, family: Family) -> SweepTemplate {
        SweepTemplate::new(FRAC_PI_4, n, family).unwrap()
    }

    #[test]
    fn rejects_bad_ranges() {
        let t = tmpl(2, Family::Coherent);
        assert!(sweep(&t, Quantity::Parity, 1.0, 0.5, 0.1).is_err());
        assert!(sweep(&t, Quantity::Parity, -1.0, 0.5, 0.1).is_err());
        assert!(sweep(&t, Quantity::Parity, 0.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn grid_is_strictly_increasing_and_closed() {
        let rs = grid(0.0, 1.0, 0.3);
        assert_eq!(rs.len(), 5);
        assert_eq!(*rs.last().unwrap(), 1.0);
        assert!(rs.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(grid(0.0, 1.0, 0.25).len(), 5);
    }

    #[test]
    fn mandel_q_gap_at_zero() {
        let s = sweep(&tmpl(2, Family::Coherent), Quantity::MandelQ, 0.0, 1.0, 0.1).unwrap();
        assert_eq!(s.gaps, vec![0.0]);
        assert_eq!(s.samples.len(), 10);
    }

    #[test]
    fn incoherent_mean_photon_is_one_at_unit_modulus() {
        for n in 1..7 {
            let s = sweep(&tmpl(n, Family::Incoherent), Quantity::MeanPhoton, 0.0, 2.0, 0.25).unwrap();
            let at_one = s.nearest(1.0).unwrap();
            assert_eq!(at_one.r, 1.0);
            assert!((at_one.value - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn incoherent_mandel_q_has_no_crossings() {
        for n in 1..7 {
            let s = sweep(&tmpl(n, Family::Incoherent), Quantity::MandelQ, 0.0, 10.0, 0.05).unwrap();
            assert!(find_crossings(&s, 0.0).unwrap().is_empty());
        }
    }

    #[test]
    fn crossing_of_a_known_curve() {
        // incoherent mean photon r^{2/N} crosses 2 at r = 2^{N/2}
        let s = sweep(&tmpl(3, Family::Incoherent), Quantity::MeanPhoton, 0.0, 5.0, 0.01).unwrap();
        let c = find_crossings(&s, 2.0).unwrap();
        assert_eq!(c.len(), 1);
        assert!((c[0] - 2f64.powf(1.5)).abs() < 1e-6);
    }

    #[test]
    fn two_head_cat_windows() {
        // X2 squeezes while tanh r < cos θ_p
        let w = squeezing_window(FRAC_PI_4, 10.0).unwrap();
        assert_eq!(w.len(), 1);
        assert_eq!(w[0].quadrature, 2);
        assert!(w[0].start < 1e-6);
        assert!((w[0].end - FRAC_PI_4.cos().atanh()).abs() < 1e-6);

        assert!(squeezing_window(FRAC_PI_2, 10.0).unwrap().is_empty());

        let w = squeezing_window(PI, 5.0).unwrap();
        assert_eq!(w.len(), 1);
        assert_eq!((w[0].quadrature, w[0].end), (1, 5.0));
    }

    #[test]
    fn no_windows_without_interference() {
        for theta in [0.0, FRAC_PI_4, FRAC_PI_2, PI] {
            let t = SweepTemplate::new(theta, 2, Family::Incoherent).unwrap();
            assert!(squeezing_windows_for(&t, 10.0, 0.05).unwrap().is_empty());
            let t = SweepTemplate::new(theta, 3, Family::Coherent).unwrap();
            assert!(squeezing_windows_for(&t, 10.0, 0.05).unwrap().is_empty());
        }
    }

    #[test]
    fn quantity_names_round_trip() {
        for q in Quantity::ALL {
            assert_eq!(q.name().parse::<Quantity>().unwrap(), q);
        }
        assert!("nope".parse::<Quantity>().is_err());
    }
}
