//! Uniform symmetric grid with a node at the origin, and complex fields on it.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::Complex64;

/// Nodes `x_j = (j - (n-1)/2)·h`, `j = 0..n`, on `[-L, L]`.
///
/// `n` is odd so the point interaction sits exactly on the center node.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    half_width: f64,
    n_points: usize,
    spacing: f64,
}

impl Grid {
    pub fn new(half_width: f64, n_points: usize) -> Result<Self> {
        if !(half_width > 0.0 && half_width.is_finite()) {
            return Err(Error::domain(format!("half-width must be positive, got {half_width}")));
        }
        if n_points < 3 || n_points.is_multiple_of(2) {
            return Err(Error::domain(format!("grid needs an odd number (>= 3) of points, got {n_points}")));
        }
        Ok(Grid { half_width, n_points, spacing: 2.0 * half_width / (n_points - 1) as f64 })
    }

    /// Grid on `[-L, L]` whose spacing is `h` rounded so that `L/h` is an integer.
    pub fn with_spacing(half_width: f64, h: f64) -> Result<Self> {
        if !(h > 0.0 && h.is_finite()) {
            return Err(Error::domain(format!("spacing must be positive, got {h}")));
        }
        let cells = (half_width / h).round().max(1.0);
        if cells > 1e8 {
            return Err(Error::domain(format!("grid too fine: L/h = {cells}")));
        }
        Self::new(half_width, 2 * cells as usize + 1)
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn len(&self) -> usize {
        self.n_points
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn h(&self) -> f64 {
        self.spacing
    }

    /// Index of the node at `x = 0`.
    pub fn center(&self) -> usize {
        (self.n_points - 1) / 2
    }

    pub fn x(&self, j: usize) -> f64 {
        (j as f64 - self.center() as f64) * self.spacing
    }

    pub fn nodes(&self) -> impl ExactSizeIterator<Item = f64> + '_ {
        (0..self.n_points).map(move |j| self.x(j))
    }

    /// Trapezoid weight of node `j` relative to `h` (½ at the two ends).
    #[inline]
    pub fn weight(&self, j: usize) -> f64 {
        if j == 0 || j + 1 == self.n_points {
            0.5
        } else {
            1.0
        }
    }

    /// `h · Σ w_j f_j`.
    pub fn integrate(&self, values: impl IntoIterator<Item = f64>) -> f64 {
        let sum: f64 = values.into_iter().enumerate().map(|(j, v)| self.weight(j) * v).sum();
        self.spacing * sum
    }
}

/// A complex function sampled on a [`Grid`].
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexField {
    grid: Grid,
    values: Vec<Complex64>,
}

impl ComplexField {
    pub fn new(grid: Grid, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::domain(format!(
                "field has {} values for a grid of {} points",
                values.len(),
                grid.len()
            )));
        }
        if let Some(j) = values.iter().position(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(Error::domain(format!("non-finite value at node {j}")));
        }
        Ok(ComplexField { grid, values })
    }

    pub fn zeros(grid: Grid) -> Self {
        ComplexField { grid, values: vec![Complex64::new(0.0, 0.0); grid.len()] }
    }

    pub fn from_fn(grid: Grid, f: impl Fn(f64) -> Complex64) -> Result<Self> {
        Self::new(grid, grid.nodes().map(f).collect())
    }

    pub fn from_real(grid: Grid, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::from_fn(grid, |x| Complex64::new(f(x), 0.0))
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// Mutable access; callers are responsible for keeping entries finite.
    pub fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    /// Value at the center node `x = 0`.
    pub fn at_origin(&self) -> Complex64 {
        self.values[self.grid.center()]
    }

    pub fn is_finite(&self) -> bool {
        self.values.iter().all(|v| v.re.is_finite() && v.im.is_finite())
    }

    pub fn scaled(&self, s: Complex64) -> Self {
        ComplexField { grid: self.grid, values: self.values.iter().map(|v| v * s).collect() }
    }

    /// `self + s·other`.
    pub fn add_scaled(&self, s: Complex64, other: &ComplexField) -> Result<Self> {
        self.same_grid(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a + s * b).collect();
        Ok(ComplexField { grid: self.grid, values })
    }

    pub fn same_grid(&self, other: &ComplexField) -> Result<()> {
        if self.grid != other.grid {
            return Err(Error::domain("fields live on different grids"));
        }
        Ok(())
    }

    pub fn max_abs_diff(&self, other: &ComplexField) -> Result<f64> {
        self.same_grid(other)?;
        Ok(self.values.iter().zip(&other.values).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max))
    }
}
