//! Jacobi polynomials with complex parameters, the Kummer function 1F1 and
//! the Whittaker function M, all on complex arguments.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Stopping rule for the Maclaurin series.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesControl {
    pub rel_tol: f64,
    pub max_terms: usize,
}

impl Default for SeriesControl {
    fn default() -> Self {
        SeriesControl {
            rel_tol: 1e-14,
            max_terms: 10_000,
        }
    }
}

impl SeriesControl {
    pub fn new(rel_tol: f64, max_terms: usize) -> Result<Self> {
        if !(rel_tol > 0.0) || max_terms == 0 {
            return Err(Error::Contract(format!(
                "series control needs rel_tol > 0 and max_terms >= 1, got {rel_tol}, {max_terms}"
            )));
        }
        Ok(SeriesControl { rel_tol, max_terms })
    }

    /// The same control with a tolerance `factor` times tighter.
    pub fn tightened(&self, factor: f64) -> Self {
        SeriesControl {
            rel_tol: self.rel_tol / factor,
            max_terms: self.max_terms,
        }
    }
}

/// A series value with the magnitude of the last term added.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesValue {
    pub value: Complex64,
    pub error_estimate: f64,
    pub terms: usize,
}

/// P_n^{(a, b)}(x) by the three-term recurrence in n.
pub fn jacobi_p(n: usize, a: Complex64, b: Complex64, x: Complex64) -> Result<Complex64> {
    let one = Complex64::from(1.0);
    let two = Complex64::from(2.0);
    let mut prev = one;
    if n == 0 {
        return Ok(prev);
    }
    let mut cur = (a + 1.0) + (a + b + 2.0) * (x - 1.0) / two;
    let ab = a + b;
    for k in 2..=n {
        let kf = k as f64;
        let s = ab + 2.0 * kf;
        let denom = 2.0 * kf * (ab + kf) * (s - 2.0);
        if denom.norm() <= f64::EPSILON * (1.0 + s.norm() * s.norm()) {
            return Err(Error::Domain(format!(
                "Jacobi recurrence denominator vanishes at n = {k} (a + b = {ab})"
            )));
        }
        let c1 = (s - 1.0) * (s * (s - 2.0) * x + a * a - b * b);
        let c2 = 2.0 * (a + kf - 1.0) * (b + kf - 1.0) * s;
        let next = (c1 * cur - c2 * prev) / denom;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

fn nonpositive_integer(b: Complex64) -> bool {
    b.im == 0.0 && b.re <= 0.0 && b.re == b.re.round()
}

/// 1F1(a; b; z) = Σ (a)ₖ/(b)ₖ zᵏ/k!, summed until two successive terms are
/// below `rel_tol · |sum|`.
pub fn kummer_1f1(
    a: Complex64,
    b: Complex64,
    z: Complex64,
    ctrl: &SeriesControl,
) -> Result<SeriesValue> {
    if nonpositive_integer(b) {
        return Err(Error::SeriesPole { b });
    }
    let mut term = Complex64::from(1.0);
    let mut sum = term;
    let mut small_run = 0;
    for k in 0..ctrl.max_terms {
        let kf = k as f64;
        term *= (a + kf) / (b + kf) * z / (kf + 1.0);
        sum += term;
        if term.norm() <= ctrl.rel_tol * sum.norm() {
            small_run += 1;
            if small_run == 2 {
                return Ok(SeriesValue {
                    value: sum,
                    error_estimate: term.norm(),
                    terms: k + 2,
                });
            }
        } else {
            small_run = 0;
        }
    }
    Err(Error::Convergence {
        terms: ctrl.max_terms,
        partial: sum,
    })
}

/// M_{μ,ν}(z) = e^{−z/2} z^{ν+1/2} 1F1(1/2 + ν − μ; 1 + 2ν; z), principal branch.
pub fn whittaker_m(
    mu: Complex64,
    nu: Complex64,
    z: Complex64,
    ctrl: &SeriesControl,
) -> Result<Complex64> {
    let b = 1.0 + 2.0 * nu;
    if nonpositive_integer(b) {
        return Err(Error::SeriesPole { b });
    }
    let power = nu + 0.5;
    if z == Complex64::from(0.0) {
        if power.re > 0.0 {
            return Ok(Complex64::from(0.0));
        }
        return Err(Error::Singular(format!(
            "M at z = 0 with Re(nu + 1/2) = {} <= 0",
            power.re
        )));
    }
    let f = kummer_1f1(0.5 + nu - mu, b, z, ctrl)?;
    Ok((-z / 2.0).exp() * (power * z.ln()).exp() * f.value)
}
