//! Symmetric tridiagonal matrices: products, Sturm counts and a prefactored
//! complex Thomas solver.

use crate::error::{Error, Result};
use crate::Complex64;

/// Real symmetric tridiagonal matrix stored by diagonals.
#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiag {
    pub diag: Vec<f64>,
    /// `off[i]` couples rows `i` and `i+1`.
    pub off: Vec<f64>,
}

impl SymTridiag {
    pub fn new(diag: Vec<f64>, off: Vec<f64>) -> Result<Self> {
        if diag.is_empty() || off.len() + 1 != diag.len() {
            return Err(Error::domain(format!(
                "tridiagonal shape mismatch: {} diagonal, {} off-diagonal entries",
                diag.len(),
                off.len()
            )));
        }
        Ok(SymTridiag { diag, off })
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    /// `out = A x`.
    pub fn apply_into(&self, x: &[Complex64], out: &mut [Complex64]) {
        let n = self.len();
        debug_assert!(x.len() == n && out.len() == n);
        if n == 1 {
            out[0] = x[0] * self.diag[0];
            return;
        }
        out[0] = x[0] * self.diag[0] + x[1] * self.off[0];
        for i in 1..n - 1 {
            out[i] = x[i - 1] * self.off[i - 1] + x[i] * self.diag[i] + x[i + 1] * self.off[i];
        }
        out[n - 1] = x[n - 2] * self.off[n - 2] + x[n - 1] * self.diag[n - 1];
    }

    pub fn apply(&self, x: &[Complex64]) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); x.len()];
        self.apply_into(x, &mut out);
        out
    }

    /// Number of eigenvalues strictly below `shift` (Sturm sequence).
    pub fn count_below(&self, shift: f64) -> usize {
        let mut count = 0;
        let mut q = self.diag[0] - shift;
        if q < 0.0 {
            count += 1;
        }
        for i in 1..self.len() {
            let denom = if q == 0.0 { f64::EPSILON * self.off[i - 1].abs().max(1.0) } else { q };
            q = self.diag[i] - shift - self.off[i - 1] * self.off[i - 1] / denom;
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// Gershgorin enclosure of the spectrum.
    pub fn gershgorin(&self) -> (f64, f64) {
        let n = self.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let r = if i > 0 { self.off[i - 1].abs() } else { 0.0 } + if i + 1 < n { self.off[i].abs() } else { 0.0 };
            lo = lo.min(self.diag[i] - r);
            hi = hi.max(self.diag[i] + r);
        }
        (lo, hi)
    }

    /// Smallest eigenvalue by bisection on the Sturm count, to absolute
    /// accuracy `tol`.
    pub fn smallest_eigenvalue(&self, tol: f64) -> f64 {
        let (mut lo, mut hi) = self.gershgorin();
        while hi - lo > tol {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.count_below(mid) >= 1 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }
}

/// LU factors of a complex tridiagonal matrix with symmetric off-diagonals,
/// reused across many right-hand sides.
#[derive(Debug, Clone)]
pub struct ComplexTridiagSolver {
    off: Vec<Complex64>,
    /// Reciprocal pivots.
    inv_pivot: Vec<Complex64>,
    /// Eliminated super-diagonal `c'_i`.
    upper: Vec<Complex64>,
}

impl ComplexTridiagSolver {
    pub fn new(diag: &[Complex64], off: &[Complex64]) -> Result<Self> {
        let n = diag.len();
        if n == 0 || off.len() + 1 != n {
            return Err(Error::domain("tridiagonal shape mismatch"));
        }
        let mut inv_pivot = Vec::with_capacity(n);
        let mut upper = Vec::with_capacity(n.saturating_sub(1));
        let mut prev_upper = Complex64::new(0.0, 0.0);
        for i in 0..n {
            let pivot = if i == 0 { diag[0] } else { diag[i] - off[i - 1] * prev_upper };
            let scale = diag[i].norm().max(if i > 0 { off[i - 1].norm() } else { 0.0 });
            if !(pivot.norm() > 1e-14 * scale) {
                return Err(Error::numerical(format!("singular tridiagonal pivot at row {i}")));
            }
            let inv = pivot.inv();
            inv_pivot.push(inv);
            if i + 1 < n {
                prev_upper = off[i] * inv;
                upper.push(prev_upper);
            }
        }
        Ok(ComplexTridiagSolver { off: off.to_vec(), inv_pivot, upper })
    }

    /// Factors `A` with real symmetric tridiagonal entries.
    pub fn from_real(matrix: &SymTridiag) -> Result<Self> {
        let diag: Vec<Complex64> = matrix.diag.iter().map(|&d| Complex64::new(d, 0.0)).collect();
        let off: Vec<Complex64> = matrix.off.iter().map(|&o| Complex64::new(o, 0.0)).collect();
        Self::new(&diag, &off)
    }

    pub fn len(&self) -> usize {
        self.inv_pivot.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inv_pivot.is_empty()
    }

    /// Overwrites `rhs` with the solution of `A x = rhs`.
    pub fn solve_in_place(&self, rhs: &mut [Complex64]) {
        let n = self.len();
        debug_assert_eq!(rhs.len(), n);
        rhs[0] *= self.inv_pivot[0];
        for i in 1..n {
            rhs[i] = (rhs[i] - self.off[i - 1] * rhs[i - 1]) * self.inv_pivot[i];
        }
        for i in (0..n - 1).rev() {
            rhs[i] -= self.upper[i] * rhs[i + 1];
        }
    }
}
