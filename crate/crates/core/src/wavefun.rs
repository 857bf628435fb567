//! Eigenfunctions of all variants, numerical normalization, node counting
//! and residuals of ψ'' + [−S² − 2mS − (m² − E²)]ψ = 0.
//!
//! The q ≠ 0 eigenfunctions share one closed form in z = S0' e^{−α'x}:
//!
//! ```text
//! ψ = z^ε (S0' − q'z)^{(a+q')/2q'} P_n^{(2ε, a/q')}(1 − 2q'z/S0')
//! ```
//!
//! with (S0', q', α') the complexified parameters of the variant. z^ε is
//! taken on the continuous branch log z = log S0' − α'x; the base
//! (S0' − q'z) uses the principal branch.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{potential_value, PotentialParams, Variant};
use crate::specfun::{jacobi_p, kummer_1f1, SeriesControl};

/// Endpoint |ψ|² (relative to the peak) above which a grid is too short.
pub const ENDPOINT_MASS_LIMIT: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WavefunctionSample {
    pub x_grid: Vec<f64>,
    pub values: Vec<Complex64>,
    pub variant: Variant,
    pub n: Option<usize>,
    pub energy: f64,
    /// Constant the raw values were multiplied by (1 before normalization).
    pub normalization: f64,
}

impl WavefunctionSample {
    pub fn new(
        x_grid: Vec<f64>,
        values: Vec<Complex64>,
        variant: Variant,
        n: Option<usize>,
        energy: f64,
    ) -> Result<Self> {
        if x_grid.len() != values.len() {
            return Err(Error::Contract("grid and values differ in length".into()));
        }
        if x_grid.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::Contract("grid must be strictly increasing".into()));
        }
        Ok(WavefunctionSample {
            x_grid,
            values,
            variant,
            n,
            energy,
            normalization: 1.0,
        })
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    fn uniform_step(&self) -> Result<f64> {
        let n = self.x_grid.len();
        if n < 3 {
            return Err(Error::Contract("need at least 3 grid points".into()));
        }
        let h = (self.x_grid[n - 1] - self.x_grid[0]) / (n - 1) as f64;
        let uniform = self
            .x_grid
            .windows(2)
            .all(|w| ((w[1] - w[0]) - h).abs() <= 1e-9 * h.abs().max(1e-300));
        if !uniform {
            return Err(Error::Contract("grid is not uniform".into()));
        }
        Ok(h)
    }
}

/// `points` equally spaced values from `lo` to `hi` inclusive.
pub fn uniform_grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    let step = (hi - lo) / (points.max(2) - 1) as f64;
    (0..points).map(|i| lo + step * i as f64).collect()
}

/// Complexified generalized Hulthén eigenfunction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HulthenForm {
    pub s0: Complex64,
    pub q: Complex64,
    pub alpha: Complex64,
    /// Exponent of z.
    pub eps: Complex64,
    /// Root a with a² = q² + 4S0²/α².
    pub a: Complex64,
}

impl HulthenForm {
    pub fn z(&self, x: f64) -> Complex64 {
        self.log_z(x).exp()
    }

    fn log_z(&self, x: f64) -> Complex64 {
        self.s0.ln() - self.alpha * x
    }

    pub fn base(&self, x: f64) -> Complex64 {
        self.s0 - self.q * self.z(x)
    }

    pub fn eval(&self, n: usize, x: f64) -> Result<Complex64> {
        let log_z = self.log_z(x);
        let z = log_z.exp();
        let base = self.s0 - self.q * z;
        let power = (self.a + self.q) / (2.0 * self.q);
        let base_factor = if base.norm() == 0.0 {
            if power.re > 0.0 {
                Complex64::from(0.0)
            } else {
                return Err(Error::Singular(format!("base vanishes at x = {x}")));
            }
        } else {
            (power * base.ln()).exp()
        };
        let jacobi = jacobi_p(
            n,
            2.0 * self.eps,
            self.a / self.q,
            1.0 - 2.0 * self.q * z / self.s0,
        )?;
        Ok((self.eps * log_z).exp() * base_factor * jacobi)
    }
}

fn real_form(params: &PotentialParams, energy: f64) -> HulthenForm {
    let s = params.symbols();
    HulthenForm {
        s0: params.s0().into(),
        q: params.q().into(),
        alpha: params.alpha().into(),
        eps: s.eps_of(energy).into(),
        a: s.a.into(),
    }
}

/// Real-variant eigenfunction at x.
pub fn eval_real(params: &PotentialParams, n: usize, energy: f64, x: f64) -> Result<Complex64> {
    if params.variant() != Variant::RealHulthen {
        return Err(Error::Contract("eval_real needs the real variant".into()));
    }
    let form = real_form(params, energy);
    if form.base(x).re < 0.0 {
        return Err(Error::Domain(format!(
            "x = {x} lies left of the pole x = {}",
            params.q().ln() / params.alpha()
        )));
    }
    form.eval(n, x)
}

/// Samples the real eigenfunction on a grid.
pub fn sample_real(
    params: &PotentialParams,
    n: usize,
    energy: f64,
    grid: &[f64],
) -> Result<WavefunctionSample> {
    let values = grid
        .iter()
        .map(|&x| eval_real(params, n, energy, x))
        .collect::<Result<Vec<_>>>()?;
    WavefunctionSample::new(grid.to_vec(), values, params.variant(), Some(n), energy)
}

/// One candidate exponent/root pair with its probe residual.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BranchResidual {
    pub label: &'static str,
    pub eps: Complex64,
    pub a: Complex64,
    pub residual: f64,
}

/// Eigenfunction of the PT-symmetric or pseudo-Hermitian well, with the
/// exponent branch chosen by the smallest ODE residual.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComplexEigenfunction {
    pub variant: Variant,
    pub n: usize,
    pub energy: f64,
    pub form: HulthenForm,
    pub winner: BranchResidual,
    pub candidates: Vec<BranchResidual>,
    params: PotentialParams,
}

const PROBE_H: f64 = 1e-3;

impl ComplexEigenfunction {
    pub fn new(params: &PotentialParams, n: usize, energy: f64) -> Result<Self> {
        if !matches!(
            params.variant(),
            Variant::PtSymmetric | Variant::PseudoHermitian
        ) {
            return Err(Error::Contract(
                "complex eigenfunctions need the pt or pseudo variant".into(),
            ));
        }
        if !params.complex_levels_exist() {
            return Err(Error::NoBoundStates("q^2 alpha^2 < 4 S0^2".into()));
        }
        let (s0, q, alpha) = params.complexified();
        let eps_hat = params.symbols().eps_of(energy);
        let a_root = (q * q + 4.0 * s0 * s0 / (alpha * alpha)).sqrt();
        let i = Complex64::i();
        let exponents = [
            ("-eps", Complex64::from(-eps_hat)),
            ("+eps", Complex64::from(eps_hat)),
            ("-i*eps", -i * eps_hat),
            ("+i*eps", i * eps_hat),
        ];
        let probe = uniform_grid(-1.0 / params.alpha(), 1.0 / params.alpha(), 41)
            .into_iter()
            .map(|x| x + 0.5 * PROBE_H)
            .collect::<Vec<_>>();
        let mut candidates = Vec::with_capacity(8);
        for (label, eps) in exponents {
            for a in [a_root, -a_root] {
                let form = HulthenForm {
                    s0,
                    q,
                    alpha,
                    eps,
                    a,
                };
                let residual =
                    probe_residual(params, energy, &form, n, &probe).unwrap_or(f64::INFINITY);
                let label = match (label, a == a_root) {
                    ("-eps", true) => "-eps,+a",
                    ("-eps", false) => "-eps,-a",
                    ("+eps", true) => "+eps,+a",
                    ("+eps", false) => "+eps,-a",
                    ("-i*eps", true) => "-i*eps,+a",
                    ("-i*eps", false) => "-i*eps,-a",
                    ("+i*eps", true) => "+i*eps,+a",
                    _ => "+i*eps,-a",
                };
                candidates.push(BranchResidual {
                    label,
                    eps,
                    a,
                    residual,
                });
            }
        }
        let winner = *candidates
            .iter()
            .min_by(|x, y| x.residual.total_cmp(&y.residual))
            .expect("eight candidates");
        if !winner.residual.is_finite() {
            return Err(Error::Domain(
                "no exponent branch could be evaluated on the probe grid".into(),
            ));
        }
        Ok(ComplexEigenfunction {
            variant: params.variant(),
            n,
            energy,
            form: HulthenForm {
                s0,
                q,
                alpha,
                eps: winner.eps,
                a: winner.a,
            },
            winner,
            candidates,
            params: *params,
        })
    }

    pub fn eval(&self, x: f64) -> Result<Complex64> {
        self.form.eval(self.n, x)
    }

    /// Residual of the best losing candidate over that of the winner.
    pub fn discrimination(&self) -> f64 {
        let runner_up = self
            .candidates
            .iter()
            .filter(|c| c.label != self.winner.label)
            .map(|c| c.residual)
            .fold(f64::INFINITY, f64::min);
        runner_up / self.winner.residual
    }

    /// Samples on a grid, refusing grids on which the power base crosses the
    /// negative real axis.
    pub fn sample(&self, grid: &[f64]) -> Result<WavefunctionSample> {
        for w in grid.windows(2) {
            let (b0, b1) = (self.form.base(w[0]), self.form.base(w[1]));
            if b0.re < 0.0 && b1.re < 0.0 && (b0.im >= 0.0) != (b1.im >= 0.0) {
                return Err(Error::BranchCrossing {
                    from: w[0],
                    to: w[1],
                });
            }
        }
        let values = grid
            .iter()
            .map(|&x| self.eval(x))
            .collect::<Result<Vec<_>>>()?;
        WavefunctionSample::new(
            grid.to_vec(),
            values,
            self.variant,
            Some(self.n),
            self.energy,
        )
    }

    pub fn params(&self) -> &PotentialParams {
        &self.params
    }
}

fn probe_residual(
    params: &PotentialParams,
    energy: f64,
    form: &HulthenForm,
    n: usize,
    probe: &[f64],
) -> Result<f64> {
    let m = params.m();
    let mut worst = 0.0_f64;
    let mut peak = 0.0_f64;
    let mut scale = 0.0_f64;
    for &x in probe {
        let psi = form.eval(n, x)?;
        let d2 = (form.eval(n, x + PROBE_H)? - 2.0 * psi + form.eval(n, x - PROBE_H)?)
            / (PROBE_H * PROBE_H);
        let s = potential_value(params, x)?;
        let w = -s * s - 2.0 * m * s - (m * m - energy * energy);
        worst = worst.max((d2 + w * psi).norm());
        peak = peak.max(psi.norm());
        scale = scale.max(w.norm());
    }
    if !(peak > 0.0) || !worst.is_finite() {
        return Err(Error::Degenerate("probe wavefunction vanishes".into()));
    }
    Ok(worst / (peak * scale))
}

/// PT-symmetric or pseudo-Hermitian eigenfunction at x.
pub fn eval_complex(params: &PotentialParams, n: usize, energy: f64, x: f64) -> Result<Complex64> {
    ComplexEigenfunction::new(params, n, energy)?.eval(x)
}

/// S0^{−i𝓔} exp(−i(S0/α) e^{−iαx} − α𝓔x): everything but the Kummer factor.
pub fn q0_prefactor(params: &PotentialParams, script_e: f64, x: f64) -> Complex64 {
    let i = Complex64::i();
    let (s0, alpha) = (params.s0(), params.alpha());
    let phase = (-i * script_e * s0.ln()).exp();
    phase * (-i * (s0 / alpha) * (-i * alpha * x).exp() - alpha * script_e * x).exp()
}

/// q = 0 eigenfunction with unit amplitude.
pub fn eval_q0(
    params: &PotentialParams,
    script_e: f64,
    x: f64,
    ctrl: &SeriesControl,
) -> Result<Complex64> {
    if params.variant() != Variant::PtExponential {
        return Err(Error::Contract("eval_q0 needs the pt-exp variant".into()));
    }
    let i = Complex64::i();
    let alpha = params.alpha();
    let a = 0.5 - i * script_e - i * params.m() / alpha;
    let b = 1.0 - 2.0 * i * script_e;
    let z = 2.0 * i / alpha * params.s0() * (-i * alpha * x).exp();
    let kummer = kummer_1f1(a, b, z, ctrl)?;
    Ok(q0_prefactor(params, script_e, x) * kummer.value)
}

pub fn sample_q0(
    params: &PotentialParams,
    script_e: f64,
    grid: &[f64],
    ctrl: &SeriesControl,
) -> Result<WavefunctionSample> {
    let values = grid
        .iter()
        .map(|&x| eval_q0(params, script_e, x, ctrl))
        .collect::<Result<Vec<_>>>()?;
    let am = params.alpha() * script_e;
    let energy = (params.m() * params.m() - am * am).max(0.0).sqrt();
    WavefunctionSample::new(grid.to_vec(), values, params.variant(), None, energy)
}

/// |z^{2i𝓔}| of the discarded second solution, z = (2i/α) S0 e^{−iαx}, on
/// the branch continued along x.
pub fn q0_rejected_factor_modulus(params: &PotentialParams, script_e: f64, x: f64) -> f64 {
    let i = Complex64::i();
    let log_z = Complex64::new(
        (2.0 * params.s0() / params.alpha()).ln(),
        std::f64::consts::FRAC_PI_2 - params.alpha() * x,
    );
    (2.0 * i * script_e * log_z).exp().norm()
}

/// Composite Simpson's rule on a uniform grid; an even point count closes
/// with Simpson's 3/8 rule on the last four points.
pub fn simpson(values: &[f64], h: f64) -> f64 {
    let n = values.len();
    match n {
        0 | 1 => 0.0,
        2 => 0.5 * h * (values[0] + values[1]),
        3 => h / 3.0 * (values[0] + 4.0 * values[1] + values[2]),
        _ => {
            let (body, tail) = if n % 2 == 1 { (n, 0) } else { (n - 3, 4) };
            let mut sum = values[0] + values[body - 1];
            for (i, v) in values.iter().enumerate().take(body - 1).skip(1) {
                sum += if i % 2 == 1 { 4.0 * v } else { 2.0 * v };
            }
            let mut total = h / 3.0 * sum;
            if tail == 4 {
                let t = &values[n - 4..];
                total += 3.0 * h / 8.0 * (t[0] + 3.0 * t[1] + 3.0 * t[2] + t[3]);
            }
            total
        }
    }
}

fn norm_integral(sample: &WavefunctionSample) -> Result<f64> {
    let h = sample.uniform_step()?;
    let density: Vec<f64> = sample.values.iter().map(|v| v.norm_sqr()).collect();
    Ok(simpson(&density, h))
}

fn rescale(sample: &WavefunctionSample, integral: f64) -> Result<WavefunctionSample> {
    if !(integral > 0.0) {
        return Err(Error::Degenerate(
            "wavefunction vanishes on the grid".into(),
        ));
    }
    let factor = 1.0 / integral.sqrt();
    let mut out = sample.clone();
    out.values.iter_mut().for_each(|v| *v *= factor);
    out.normalization = sample.normalization * factor;
    Ok(out)
}

/// Rescales so that ∫|ψ|² = 1, after checking that both endpoints carry
/// negligible density.
pub fn normalize(sample: &WavefunctionSample) -> Result<WavefunctionSample> {
    let peak = sample.max_abs();
    if !(peak > 0.0) {
        return Err(Error::Degenerate(
            "wavefunction vanishes on the grid".into(),
        ));
    }
    let peak2 = peak * peak;
    let ends = [sample.values[0], sample.values[sample.values.len() - 1]];
    let fraction = ends
        .iter()
        .map(|v| v.norm_sqr() / peak2)
        .fold(0.0, f64::max);
    if fraction > ENDPOINT_MASS_LIMIT {
        return Err(Error::GridSpan {
            fraction,
            limit: ENDPOINT_MASS_LIMIT,
        });
    }
    rescale(sample, norm_integral(sample)?)
}

/// Box normalization over the sampled window, without the decay check. Used
/// for the non-decaying complex-variant eigenfunctions.
pub fn normalize_window(sample: &WavefunctionSample) -> Result<WavefunctionSample> {
    rescale(sample, norm_integral(sample)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ResidualReport {
    /// max |ψ'' + Wψ| / (max|ψ| · max|W|) over interior points.
    pub max_relative: f64,
    /// Residual at h over residual at h/2, when a refinement was run.
    pub convergence_ratio: Option<f64>,
    pub degenerate: bool,
}

/// Central-difference residual of the sampled ψ against the KG equation.
pub fn ode_residual(
    params: &PotentialParams,
    energy: f64,
    sample: &WavefunctionSample,
) -> Result<ResidualReport> {
    let h = sample.uniform_step()?;
    let peak = sample.max_abs();
    if peak == 0.0 {
        return Ok(ResidualReport {
            max_relative: 0.0,
            convergence_ratio: None,
            degenerate: true,
        });
    }
    let m = params.m();
    let v = &sample.values;
    let mut worst = 0.0_f64;
    let mut scale = 0.0_f64;
    for i in 1..v.len() - 1 {
        let s = potential_value(params, sample.x_grid[i])?;
        let w = -s * s - 2.0 * m * s - (m * m - energy * energy);
        let d2 = (v[i + 1] - 2.0 * v[i] + v[i - 1]) / (h * h);
        worst = worst.max((d2 + w * v[i]).norm());
        scale = scale.max(w.norm());
    }
    Ok(ResidualReport {
        max_relative: worst / (peak * scale),
        convergence_ratio: None,
        degenerate: false,
    })
}

/// Residual at spacing h and h/2 over [lo, hi]; the ratio should approach 4.
pub fn ode_residual_refined<F>(
    params: &PotentialParams,
    energy: f64,
    psi: F,
    lo: f64,
    hi: f64,
    h: f64,
    variant: Variant,
) -> Result<ResidualReport>
where
    F: Fn(f64) -> Result<Complex64>,
{
    let sample_at = |step: f64| -> Result<WavefunctionSample> {
        let points = ((hi - lo) / step).round() as usize + 1;
        let grid = uniform_grid(lo, hi, points);
        let values = grid.iter().map(|&x| psi(x)).collect::<Result<Vec<_>>>()?;
        WavefunctionSample::new(grid, values, variant, None, energy)
    };
    let coarse = ode_residual(params, energy, &sample_at(h)?)?;
    let fine = ode_residual(params, energy, &sample_at(h / 2.0)?)?;
    Ok(ResidualReport {
        max_relative: coarse.max_relative,
        convergence_ratio: Some(coarse.max_relative / fine.max_relative),
        degenerate: coarse.degenerate,
    })
}

fn peak_phase(sample: &WavefunctionSample) -> Complex64 {
    let peak = sample
        .values
        .iter()
        .copied()
        .max_by(|a, b| a.norm().total_cmp(&b.norm()))
        .unwrap_or(Complex64::from(1.0));
    if peak.norm() == 0.0 {
        Complex64::from(1.0)
    } else {
        peak.conj() / peak.norm()
    }
}

/// Sign changes of the phase-aligned real part, ignoring points below
/// 1e-8 of the peak.
pub fn count_nodes(sample: &WavefunctionSample) -> usize {
    let phase = peak_phase(sample);
    let cutoff = 1e-8 * sample.max_abs();
    let mut last_sign = 0i8;
    let mut nodes = 0;
    for v in &sample.values {
        let aligned = (v * phase).re;
        if aligned.abs() <= cutoff {
            continue;
        }
        let sign = if aligned > 0.0 { 1 } else { -1 };
        if last_sign != 0 && sign != last_sign {
            nodes += 1;
        }
        last_sign = sign;
    }
    nodes
}

/// max |Im(e^{−iθ}ψ)| / max|ψ| for the phase θ of the peak.
pub fn phase_alignment_deviation(sample: &WavefunctionSample) -> f64 {
    let phase = peak_phase(sample);
    let worst = sample
        .values
        .iter()
        .map(|v| (v * phase).im.abs())
        .fold(0.0, f64::max);
    worst / sample.max_abs()
}

/// Least-squares slope of ln|ψ| against x over the grid points in [lo, hi].
pub fn log_slope(sample: &WavefunctionSample, lo: f64, hi: f64) -> Result<f64> {
    let pts: Vec<(f64, f64)> = sample
        .x_grid
        .iter()
        .zip(&sample.values)
        .filter(|(x, v)| **x >= lo && **x <= hi && v.norm() > 0.0)
        .map(|(x, v)| (*x, v.norm().ln()))
        .collect();
    if pts.len() < 2 {
        return Err(Error::Contract(
            "fewer than two points in the fit window".into(),
        ));
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    Ok(sxy / sxx)
}
