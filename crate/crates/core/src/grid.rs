//! Rectangular phase-space grids of the Wigner function.
//!
//! Grid coordinates are `(x, y)` with `β = (x + iy)/√2`. Values are stored
//! y-major: row `j` holds every `x` at `y_j`.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64 as C64;
use rayon::prelude::*;

use crate::analytic::{StateSpec, WignerEvaluator};
use crate::error::{Error, Result};

pub const MAX_GRID_POINTS: usize = 4_000_000;
pub const DEFAULT_EXTENT: f64 = 4.0;
pub const DEFAULT_POINTS: usize = 201;

#[derive(Copy, Clone, Debug, PartialEq)]
pub struct GridRequest {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
    pub nx: usize,
    pub ny: usize,
    pub spec: StateSpec,
}

impl GridRequest {
    pub fn new(
        spec: StateSpec,
        (x_min, x_max): (f64, f64),
        (y_min, y_max): (f64, f64),
        nx: usize,
        ny: usize,
    ) -> Result<Self> {
        let req = Self {
            x_min,
            x_max,
            y_min,
            y_max,
            nx,
            ny,
            spec,
        };
        req.check()?;
        Ok(req)
    }

    /// `[-4, 4]²` at 201 × 201.
    pub fn default_for(spec: StateSpec) -> Self {
        Self {
            x_min: -DEFAULT_EXTENT,
            x_max: DEFAULT_EXTENT,
            y_min: -DEFAULT_EXTENT,
            y_max: DEFAULT_EXTENT,
            nx: DEFAULT_POINTS,
            ny: DEFAULT_POINTS,
            spec,
        }
    }

    pub fn check(&self) -> Result<()> {
        let bounds = [self.x_min, self.x_max, self.y_min, self.y_max];
        if bounds.iter().any(|b| !b.is_finite()) {
            return Err(Error::invalid("grid bounds must be finite"));
        }
        if self.x_min >= self.x_max || self.y_min >= self.y_max {
            return Err(Error::invalid("grid bounds must satisfy min < max"));
        }
        if self.nx < 2 || self.ny < 2 {
            return Err(Error::invalid("grid needs at least 2 points per axis"));
        }
        let points = self.nx.saturating_mul(self.ny);
        if points > MAX_GRID_POINTS {
            return Err(Error::Capacity {
                required: points,
                max: MAX_GRID_POINTS,
            });
        }
        Ok(())
    }

    pub fn dx(&self) -> f64 {
        (self.x_max - self.x_min) / (self.nx - 1) as f64
    }

    pub fn dy(&self) -> f64 {
        (self.y_max - self.y_min) / (self.ny - 1) as f64
    }

    pub fn x(&self, i: usize) -> f64 {
        self.x_min + self.dx() * i as f64
    }

    pub fn y(&self, j: usize) -> f64 {
        self.y_min + self.dy() * j as f64
    }
}

/// Phase-space point for grid coordinates `(x, y)`.
pub fn beta_at(x: f64, y: f64) -> C64 {
    C64::new(x, y) * FRAC_1_SQRT_2
}

#[derive(Clone, Debug, PartialEq)]
pub struct WignerGrid {
    pub request: GridRequest,
    values: Vec<f64>,
}

impl WignerGrid {
    pub fn from_values(request: GridRequest, values: Vec<f64>) -> Result<Self> {
        request.check()?;
        if values.len() != request.nx * request.ny {
            return Err(Error::invalid(format!(
                "expected {} grid values, got {}",
                request.nx * request.ny,
                values.len()
            )));
        }
        Ok(Self { request, values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.values[j * self.request.nx + i]
    }

    /// `(x, y, W)` in y-major order.
    pub fn rows(&self) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        let nx = self.request.nx;
        self.values
            .iter()
            .enumerate()
            .map(move |(idx, &w)| (self.request.x(idx % nx), self.request.y(idx / nx), w))
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    /// Riemann sum of `W d²β` with `d²β = dx dy / 2`.
    pub fn integral(&self) -> f64 {
        let cell = self.request.dx() * self.request.dy() / 2.0;
        self.values.iter().sum::<f64>() * cell
    }
}

/// Evaluates the closed-form Wigner function on every grid point.
///
/// Rows are computed in parallel; the result does not depend on the number
/// of worker threads.
pub fn evaluate(request: &GridRequest) -> Result<WignerGrid> {
    request.check()?;
    let evaluator = WignerEvaluator::new(&request.spec)?;
    let rows: Vec<Vec<f64>> = (0..request.ny)
        .into_par_iter()
        .map(|j| {
            let y = request.y(j);
            (0..request.nx)
                .map(|i| evaluator.eval(beta_at(request.x(i), y)))
                .collect::<Result<Vec<f64>>>()
        })
        .collect::<Result<_>>()?;
    WignerGrid::from_values(*request, rows.concat())
}
