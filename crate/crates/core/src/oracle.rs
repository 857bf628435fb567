//! Finite-difference check of the real-variant spectrum through the
//! Sturm–Liouville problem −ψ″ + (S² + 2mS)ψ = Λψ, Λ = E² − m², with
//! Dirichlet ends, Sturm-sequence bisection and Richardson extrapolation.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{potential_value, PotentialParams, Variant};
use crate::spectra::real_hulthen_level;

/// Interior-node grid: `n_points` unknowns strictly inside [x_left, x_right].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Grid {
    pub x_left: f64,
    pub x_right: f64,
    pub n_points: usize,
}

impl Grid {
    pub fn new(x_left: f64, x_right: f64, n_points: usize) -> Result<Self> {
        if n_points < 3 {
            return Err(Error::Contract(format!(
                "n_points = {n_points} must be >= 3"
            )));
        }
        if !(x_right > x_left) || !x_left.is_finite() || !x_right.is_finite() {
            return Err(Error::Contract(format!(
                "grid bounds [{x_left}, {x_right}] must be finite and increasing"
            )));
        }
        Ok(Grid {
            x_left,
            x_right,
            n_points,
        })
    }

    pub fn h(&self) -> f64 {
        (self.x_right - self.x_left) / (self.n_points + 1) as f64
    }

    pub fn node(&self, i: usize) -> f64 {
        self.x_left + self.h() * (i + 1) as f64
    }

    /// The grid with exactly half the spacing.
    pub fn refined(&self) -> Grid {
        Grid {
            n_points: 2 * self.n_points + 1,
            ..*self
        }
    }
}

/// Symmetric tridiagonal matrix with constant off-diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagonalOperator {
    pub diag: Vec<f64>,
    pub offdiag: f64,
    pub h: f64,
}

impl TridiagonalOperator {
    /// −d²/dx² + w(x) on the grid.
    pub fn from_weight<F: Fn(f64) -> f64>(grid: &Grid, w: F) -> Self {
        let h = grid.h();
        let h2 = h * h;
        let diag = (0..grid.n_points)
            .map(|i| w(grid.node(i)) + 2.0 / h2)
            .collect();
        TridiagonalOperator {
            diag,
            offdiag: -1.0 / h2,
            h,
        }
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    /// Element (i, j) of the matrix.
    pub fn entry(&self, i: usize, j: usize) -> f64 {
        match i.abs_diff(j) {
            0 => self.diag[i],
            1 => self.offdiag,
            _ => 0.0,
        }
    }

    /// Number of eigenvalues strictly below `lambda`.
    pub fn count_below(&self, lambda: f64) -> usize {
        let off2 = self.offdiag * self.offdiag;
        let tiny = f64::MIN_POSITIVE.sqrt() * (1.0 + self.offdiag.abs());
        let mut count = 0;
        let mut d = 1.0;
        for (i, &a) in self.diag.iter().enumerate() {
            d = if i == 0 {
                a - lambda
            } else {
                a - lambda - off2 / d
            };
            if d == 0.0 {
                d = -tiny;
            }
            if d < 0.0 {
                count += 1;
            }
        }
        count
    }

    fn gershgorin(&self) -> (f64, f64) {
        let r = 2.0 * self.offdiag.abs();
        let lo = self.diag.iter().copied().fold(f64::INFINITY, f64::min) - r;
        let hi = self.diag.iter().copied().fold(f64::NEG_INFINITY, f64::max) + r;
        (lo, hi)
    }

    /// The k-th smallest eigenvalue (0-based) by bisection on the Sturm count.
    pub fn eigenvalue(&self, k: usize) -> Result<f64> {
        if k >= self.dim() {
            return Err(Error::Contract(format!(
                "eigenvalue index {k} exceeds matrix size {}",
                self.dim()
            )));
        }
        let (mut lo, mut hi) = self.gershgorin();
        let tol = 1e-12 * lo.abs().max(hi.abs());
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.count_below(mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
            if hi - lo <= tol * 1e-4 {
                break;
            }
        }
        Ok(0.5 * (lo + hi))
    }
}

/// The `count` smallest eigenvalues in ascending order.
pub fn lowest_eigenvalues(op: &TridiagonalOperator, count: usize) -> Result<Vec<f64>> {
    if count == 0 || count > op.dim() {
        return Err(Error::Contract(format!(
            "requested {count} eigenvalues of a {}x{} matrix",
            op.dim(),
            op.dim()
        )));
    }
    (0..count).map(|k| op.eigenvalue(k)).collect()
}

/// W(x) = S² + 2mS for the real well.
pub fn weight(params: &PotentialParams, x: f64) -> Result<f64> {
    let s = potential_value(params, x)?.re;
    Ok(s * s + 2.0 * params.m() * s)
}

/// Discretizes the real-variant problem. The left end may sit exactly at the
/// pole, which is a Dirichlet node and never sampled.
pub fn discretize(params: &PotentialParams, grid: &Grid) -> Result<TridiagonalOperator> {
    if params.variant() != Variant::RealHulthen {
        return Err(Error::Contract("discretize needs the real variant".into()));
    }
    if let Some(pole) = params.physical_left_edge() {
        if grid.x_left < pole && grid.x_right > pole {
            return Err(Error::Domain(format!(
                "pole x = {pole} lies inside the grid [{}, {}]",
                grid.x_left, grid.x_right
            )));
        }
        if grid.x_right <= pole {
            return Err(Error::Domain(format!(
                "grid [{}, {}] lies left of the pole x = {pole}",
                grid.x_left, grid.x_right
            )));
        }
    }
    let weights = (0..grid.n_points)
        .map(|i| weight(params, grid.node(i)))
        .collect::<Result<Vec<_>>>()?;
    let h = grid.h();
    let h2 = h * h;
    Ok(TridiagonalOperator {
        diag: weights.into_iter().map(|w| w + 2.0 / h2).collect(),
        offdiag: -1.0 / h2,
        h,
    })
}

/// Where to put the grid for [`verify_closed_form`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VerifyConfig {
    /// Defaults to the pole for q > 0; required for q < 0.
    pub x_left: Option<f64>,
    pub x_right: f64,
    /// Interior points of the coarse grid; the fine grid has 2N + 1.
    pub n_points: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            x_left: None,
            x_right: 80.0,
            n_points: 8000,
        }
    }
}

/// Ratio window outside which a refinement is reported as unconverged.
pub const CONVERGED_RATIO: (f64, f64) = (2.5, 6.0);

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridMeta {
    pub x_left: f64,
    pub x_right: f64,
    pub n_points_coarse: usize,
    pub n_points_fine: usize,
    pub h_coarse: f64,
    pub h_fine: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub params: PotentialParams,
    pub n: usize,
    /// Richardson value (4Λ_{h/2} − Λ_h)/3.
    pub lambda_fd: f64,
    pub lambda_h: f64,
    pub lambda_h2: f64,
    pub lambda_closed: f64,
    pub abs_diff: f64,
    pub rel_diff: f64,
    /// (Λ_h − Λ_closed)/(Λ_{h/2} − Λ_closed), ≈ 4 for a second-order scheme.
    pub convergence_ratio: f64,
    pub converged: bool,
    pub grid: GridMeta,
    /// Shift of the extrapolated Λ when the left wall moves from the pole to
    /// pole + 10⁻³/α (q > 0 only).
    pub delta_sensitivity: Option<f64>,
}

fn extrapolated(params: &PotentialParams, grid: &Grid, n: usize) -> Result<(f64, f64, f64)> {
    let fine = grid.refined();
    let lh = discretize(params, grid)?.eigenvalue(n)?;
    let lh2 = discretize(params, &fine)?.eigenvalue(n)?;
    Ok(((4.0 * lh2 - lh) / 3.0, lh, lh2))
}

/// Compares the n-th FD eigenvalue with E_n² − m² from the closed form.
pub fn verify_closed_form(
    params: &PotentialParams,
    n: usize,
    cfg: &VerifyConfig,
) -> Result<VerifyReport> {
    let level = real_hulthen_level(params, n)?;
    let m = params.m();
    let lambda_closed = level.energy() * level.energy() - m * m;
    let pole = params.physical_left_edge();
    let x_left = match (cfg.x_left, pole) {
        (Some(x), _) => x,
        (None, Some(p)) => p,
        (None, None) => {
            return Err(Error::Contract(
                "x_left is required when the well has no pole (q < 0)".into(),
            ))
        }
    };
    let grid = Grid::new(x_left, cfg.x_right, cfg.n_points)?;
    let (lambda_fd, lambda_h, lambda_h2) = extrapolated(params, &grid, n)?;
    let convergence_ratio = (lambda_h - lambda_closed) / (lambda_h2 - lambda_closed);
    let converged = (CONVERGED_RATIO.0..=CONVERGED_RATIO.1).contains(&convergence_ratio);
    let delta_sensitivity = match pole {
        Some(p) if x_left == p => {
            let shifted = Grid::new(p + 1e-3 / params.alpha(), cfg.x_right, cfg.n_points)?;
            Some(extrapolated(params, &shifted, n)?.0 - lambda_fd)
        }
        _ => None,
    };
    let fine = grid.refined();
    let abs_diff = (lambda_fd - lambda_closed).abs();
    Ok(VerifyReport {
        params: *params,
        n,
        lambda_fd,
        lambda_h,
        lambda_h2,
        lambda_closed,
        abs_diff,
        rel_diff: abs_diff / lambda_closed.abs(),
        convergence_ratio,
        converged,
        grid: GridMeta {
            x_left,
            x_right: cfg.x_right,
            n_points_coarse: grid.n_points,
            n_points_fine: fine.n_points,
            h_coarse: grid.h(),
            h_fine: fine.h(),
        },
        delta_sensitivity,
    })
}
