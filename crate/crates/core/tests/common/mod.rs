#![allow(dead_code)]

use multihead::{Family, PolarAmplitude, StateSpec};

pub const FAMILIES: [Family; 2] = [Family::Incoherent, Family::Coherent];

pub fn cart(x: f64, y: f64) -> PolarAmplitude {
    PolarAmplitude::from_cartesian(x, y).unwrap()
}

pub fn polar(r: f64, theta: f64) -> PolarAmplitude {
    PolarAmplitude::new(r, theta).unwrap()
}

pub fn spec(alpha: PolarAmplitude, n: usize, family: Family) -> StateSpec {
    StateSpec::new(alpha, n, family).unwrap()
}
