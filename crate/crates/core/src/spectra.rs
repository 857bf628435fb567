//! Closed-form bound-state energies for the q ≠ 0 variants, level counting,
//! and the numerical search for the q = 0 eigencondition
//! 1F1(1/2 − i𝓔 − im/α; 1 − 2i𝓔; 2iS0/α) = 0.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{LevelParameter, PotentialParams, Variant};
use crate::specfun::{kummer_1f1, SeriesControl};

/// Levels above this index are returned but tagged as unvalidated.
pub const VALIDATED_MAX_N: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LevelFlag {
    /// n beyond the range covered by any published plot or table.
    Unvalidated,
}

/// One level: ±Eₙ, the level parameter and the matching ε (or ε̂).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundState {
    pub n: usize,
    pub energy_pair: (f64, f64),
    pub level_param: LevelParameter,
    pub epsilon: f64,
    pub flags: Vec<LevelFlag>,
}

impl BoundState {
    fn new(n: usize, energy: f64, level_param: LevelParameter, epsilon: f64) -> Self {
        let e = energy.abs();
        let flags = if n > VALIDATED_MAX_N {
            vec![LevelFlag::Unvalidated]
        } else {
            Vec::new()
        };
        BoundState {
            n,
            energy_pair: (e, -e),
            level_param,
            epsilon,
            flags,
        }
    }

    /// The positive member of the pair.
    pub fn energy(&self) -> f64 {
        self.energy_pair.0
    }
}

fn require(params: &PotentialParams, variant: Variant) -> Result<()> {
    if params.variant() != variant {
        return Err(Error::Contract(format!(
            "operation needs variant {variant}, got {}",
            params.variant()
        )));
    }
    Ok(())
}

/// ε from λ(ε) = λₙ(ε):
/// ε = [β² − ½(a(2n+1) + q(2n²+2n+1))] / (a + q(2n+1)).
pub fn epsilon_route(params: &PotentialParams, n: usize) -> Result<f64> {
    require(params, Variant::RealHulthen)?;
    let eps = epsilon_unchecked(params, n);
    if !(eps > 0.0) {
        return Err(Error::NoBoundState {
            n,
            reason: format!("epsilon = {eps} is not positive"),
        });
    }
    Ok(eps)
}

fn epsilon_unchecked(params: &PotentialParams, n: usize) -> f64 {
    let s = params.symbols();
    let q = params.q();
    let nf = n as f64;
    let num = s.beta2 - 0.5 * (s.a * (2.0 * nf + 1.0) + q * (2.0 * nf * nf + 2.0 * nf + 1.0));
    num / (s.a + q * (2.0 * nf + 1.0))
}

/// Why level n of the real well is not a bound state, if it is not.
fn real_level_defect(params: &PotentialParams, n: usize, eps: f64) -> Option<String> {
    if !(eps > 0.0) {
        return Some(format!("epsilon = {eps} is not positive"));
    }
    if params.alpha() * eps > params.m() {
        return Some(format!(
            "alpha * epsilon = {} exceeds m (E^2 < 0)",
            params.alpha() * eps
        ));
    }
    let q = params.q();
    if q < 0.0 {
        // ψ ~ z^{ε + (a+q)/2q + n} as x → −∞ must decay.
        let a = params.symbols().a;
        if a + q * (2.0 * n as f64 + 1.0) + 2.0 * q * eps <= 0.0 {
            return Some("wavefunction does not decay as x -> -infinity".into());
        }
    }
    None
}

/// Eₙ = ±(1/(4qκₙ)) √((κₙ² − 4S0²)((2S0 + 4qm)² − κₙ²)).
pub fn real_hulthen_level(params: &PotentialParams, n: usize) -> Result<BoundState> {
    require(params, Variant::RealHulthen)?;
    let eps = epsilon_unchecked(params, n);
    if let Some(reason) = real_level_defect(params, n, eps) {
        return Err(Error::NoBoundState { n, reason });
    }
    let (q, m, s0) = (params.q(), params.m(), params.s0());
    let kappa = LevelParameter::kappa(params, n);
    let k2 = kappa.value * kappa.value;
    let outer = 2.0 * s0 + 4.0 * q * m;
    let radicand = (k2 - 4.0 * s0 * s0) * (outer * outer - k2);
    if radicand < 0.0 {
        return Err(Error::NoBoundState {
            n,
            reason: format!("energy radicand {radicand} is negative"),
        });
    }
    let energy = radicand.sqrt() / (4.0 * q * kappa.value).abs();
    if energy * energy > m * m * (1.0 + 1e-12) {
        return Err(Error::NoBoundState {
            n,
            reason: format!("|E| = {energy} exceeds m"),
        });
    }
    let epsilon = params.symbols().eps_of(energy);
    Ok(BoundState::new(n, energy, kappa, epsilon))
}

/// All n for which the real well has a bound level.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LevelCount {
    pub valid: Vec<usize>,
}

impl LevelCount {
    pub fn n_max(&self) -> Option<usize> {
        self.valid.last().copied()
    }
}

pub fn count_real_levels(params: &PotentialParams) -> Result<LevelCount> {
    require(params, Variant::RealHulthen)?;
    let q = params.q();
    let a = params.symbols().a;
    let mut valid = Vec::new();
    for n in 0.. {
        let eps = epsilon_unchecked(params, n);
        if q > 0.0 && !(eps > 0.0) {
            // The numerator decreases and the denominator grows with n.
            break;
        }
        if q < 0.0 && a + q * (2.0 * n as f64 + 1.0) <= 0.0 {
            // Left decay a + q(2n+1) + 2qε > 0 is impossible from here on.
            break;
        }
        if real_level_defect(params, n, eps).is_none() {
            valid.push(n);
        }
    }
    Ok(LevelCount { valid })
}

fn complex_energy(level: f64, s0: f64, q: f64, m: f64) -> f64 {
    let l2 = level * level;
    let outer = 2.0 * s0 + 4.0 * q * m;
    ((l2 + 4.0 * s0 * s0) * (outer * outer + l2)).sqrt() / (4.0 * q * level).abs()
}

/// Eₙ = ±(1/(4qμₙ)) √((μₙ² + 4S0²)((2S0 + 4qm)² + μₙ²)).
pub fn pt_level(params: &PotentialParams, n: usize) -> Result<BoundState> {
    require(params, Variant::PtSymmetric)?;
    let mu = LevelParameter::mu(params, n).ok_or_else(no_complex_levels)?;
    if mu.value == 0.0 {
        return Err(Error::LevelPole { n });
    }
    let energy = complex_energy(mu.value, params.s0(), params.q(), params.m());
    let epsilon = params.symbols().eps_of(energy);
    Ok(BoundState::new(n, energy, mu, epsilon))
}

/// Eₙ = ±(1/(4qδₙ)) √((δₙ² + 4S0²)((2S0 + 4qm)² + δₙ²)).
pub fn pseudo_level(params: &PotentialParams, n: usize) -> Result<BoundState> {
    require(params, Variant::PseudoHermitian)?;
    let delta = LevelParameter::delta(params, n).ok_or_else(no_complex_levels)?;
    if delta.value == 0.0 {
        return Err(Error::LevelPole { n });
    }
    let energy = complex_energy(delta.value, params.s0(), params.q(), params.m());
    let epsilon = params.symbols().eps_of(energy);
    Ok(BoundState::new(n, energy, delta, epsilon))
}

fn no_complex_levels() -> Error {
    Error::NoBoundStates("q^2 alpha^2 < 4 S0^2".into())
}

/// Level n of any q ≠ 0 variant.
pub fn level(params: &PotentialParams, n: usize) -> Result<BoundState> {
    match params.variant() {
        Variant::RealHulthen => real_hulthen_level(params, n),
        Variant::PtSymmetric => pt_level(params, n),
        Variant::PseudoHermitian => pseudo_level(params, n),
        Variant::PtExponential => Err(Error::Contract(
            "q = 0 levels come from the transcendental search".into(),
        )),
    }
}

/// Scan and acceptance settings for the q = 0 eigenvalue search.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Q0ScanConfig {
    pub points: usize,
    /// Bracket width at which minimum refinement stops.
    pub tol: f64,
    /// A refined minimum is a root iff |F| ≤ accept_rel · max|F| over the scan.
    pub accept_rel: f64,
    pub series: SeriesControl,
}

impl Default for Q0ScanConfig {
    fn default() -> Self {
        Q0ScanConfig {
            points: 2001,
            tol: 1e-10,
            accept_rel: 1e-8,
            series: SeriesControl::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Q0Root {
    /// 𝓔 = √(m² − E²)/α.
    pub script_e: f64,
    /// |F(𝓔)| at the refined point.
    pub residual: f64,
    pub bracket: (f64, f64),
    pub accepted: bool,
}

impl Q0Root {
    /// ±√(m² − α²𝓔²).
    pub fn energy_pair(&self, params: &PotentialParams) -> (f64, f64) {
        let a = params.alpha() * self.script_e;
        let e = (params.m() * params.m() - a * a).max(0.0).sqrt();
        (e, -e)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Q0Scan {
    pub roots: Vec<Q0Root>,
    pub rejected: Vec<Q0Root>,
    pub max_abs: f64,
    pub accept_threshold: f64,
}

/// F(𝓔) = 1F1(1/2 − i𝓔 − im/α; 1 − 2i𝓔; 2iS0/α).
pub fn q0_eigenfunction_value(
    params: &PotentialParams,
    script_e: f64,
    ctrl: &SeriesControl,
) -> Result<Complex64> {
    let i = Complex64::i();
    let ratio = params.m() / params.alpha();
    let a = 0.5 - i * script_e - i * ratio;
    let b = 1.0 - 2.0 * i * script_e;
    let z = 2.0 * i * params.s0() / params.alpha();
    Ok(kummer_1f1(a, b, z, ctrl)?.value)
}

const GOLDEN: f64 = 0.618_033_988_749_894_8;

/// Golden-section minimisation of a unimodal `f` on [lo, hi] down to width `tol`.
pub fn refine_minimum<F>(f: F, mut lo: f64, mut hi: f64, tol: f64) -> Result<(f64, f64)>
where
    F: Fn(f64) -> Result<f64>,
{
    let mut x1 = hi - GOLDEN * (hi - lo);
    let mut x2 = lo + GOLDEN * (hi - lo);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    while hi - lo > tol {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - GOLDEN * (hi - lo);
            f1 = f(x1)?;
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + GOLDEN * (hi - lo);
            f2 = f(x2)?;
        }
        if x2 <= x1 {
            break;
        }
    }
    let x = 0.5 * (lo + hi);
    Ok((x, f(x)?))
}

/// Scans |F| on a uniform grid, refines every local minimum and classifies
/// it as a root or a rejected near-zero.
pub fn scan_minima<F>(f: F, lo: f64, hi: f64, cfg: &Q0ScanConfig) -> Result<Q0Scan>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    if cfg.points < 3 {
        return Err(Error::Contract("scan needs at least 3 points".into()));
    }
    let step = (hi - lo) / (cfg.points - 1) as f64;
    let xs: Vec<f64> = (0..cfg.points).map(|i| lo + step * i as f64).collect();
    let values = xs.par_iter().map(|&x| f(x)).collect::<Result<Vec<f64>>>()?;
    let max_abs = values.iter().copied().fold(0.0, f64::max);
    let threshold = cfg.accept_rel * max_abs;
    let last = values.len() - 1;
    let mut roots = Vec::new();
    let mut rejected = Vec::new();
    for i in 0..=last {
        let left = if i == 0 { f64::INFINITY } else { values[i - 1] };
        let right = if i == last {
            f64::INFINITY
        } else {
            values[i + 1]
        };
        if !(values[i] < left && values[i] <= right) {
            continue;
        }
        let bracket = (xs[i.saturating_sub(1)], xs[(i + 1).min(last)]);
        let (x, fx) = refine_minimum(&f, bracket.0, bracket.1, cfg.tol)?;
        let root = Q0Root {
            script_e: x,
            residual: fx,
            bracket,
            accepted: fx <= threshold,
        };
        if root.accepted {
            roots.push(root);
        } else {
            rejected.push(root);
        }
    }
    Ok(Q0Scan {
        roots,
        rejected,
        max_abs,
        accept_threshold: threshold,
    })
}

/// Real roots 𝓔 ∈ [0, m/α] of the q = 0 eigencondition.
pub fn q0_pt_eigenvalues(params: &PotentialParams, cfg: &Q0ScanConfig) -> Result<Q0Scan> {
    require(params, Variant::PtExponential)?;
    let ctrl = cfg.series;
    scan_minima(
        |e| Ok(q0_eigenfunction_value(params, e, &ctrl)?.norm()),
        0.0,
        params.m() / params.alpha(),
        cfg,
    )
}
