//! Physical parameters, derived symbols and the scalar potential in its four
//! forms: the real generalized Hulthén well, its PT-symmetric (α → iα) and
//! pseudo-Hermitian (S0, q, α → iS0, iq, iα) complexifications, and the
//! q = 0 PT-symmetric exponential.
//!
//! Natural units ħ = c = 1 throughout. Values are carried as `Complex64`
//! even for the real variant so that a single evaluation path serves all
//! variants.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Denominators below this magnitude are treated as a pole of the potential.
pub const POLE_GUARD: f64 = 1e-12;

const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    /// S(x) = −S0 e^{−αx} / (1 − q e^{−αx}).
    RealHulthen,
    /// α → iα: S(−x) = S*(x).
    PtSymmetric,
    /// S0, q, α → iS0, iq, iα.
    PseudoHermitian,
    /// q = 0 with α → iα: S(x) = −S0 e^{−iαx}.
    PtExponential,
}

impl Variant {
    pub const ALL: [Variant; 4] = [
        Variant::RealHulthen,
        Variant::PtSymmetric,
        Variant::PseudoHermitian,
        Variant::PtExponential,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Variant::RealHulthen => "real",
            Variant::PtSymmetric => "pt",
            Variant::PseudoHermitian => "pseudo",
            Variant::PtExponential => "pt-exp",
        }
    }

    pub fn is_complex(self) -> bool {
        !matches!(self, Variant::RealHulthen)
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "real" | "real-hulthen" => Ok(Variant::RealHulthen),
            "pt" | "pt-symmetric" => Ok(Variant::PtSymmetric),
            "pseudo" | "pseudo-hermitian" => Ok(Variant::PseudoHermitian),
            "pt-exp" | "pt-exponential" | "q0" => Ok(Variant::PtExponential),
            other => Err(Error::InvalidParams(format!("unknown variant '{other}'"))),
        }
    }
}

/// Validated physical inputs. Construct through [`PotentialParams::new`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PotentialParams {
    m: f64,
    alpha: f64,
    s0: f64,
    q: f64,
    variant: Variant,
}

impl PotentialParams {
    pub fn new(variant: Variant, m: f64, alpha: f64, s0: f64, q: f64) -> Result<Self> {
        let params = PotentialParams {
            m,
            alpha,
            s0,
            q,
            variant,
        };
        params.validate()?;
        Ok(params)
    }

    pub fn real(m: f64, alpha: f64, s0: f64, q: f64) -> Result<Self> {
        Self::new(Variant::RealHulthen, m, alpha, s0, q)
    }

    pub fn pt(m: f64, alpha: f64, s0: f64, q: f64) -> Result<Self> {
        Self::new(Variant::PtSymmetric, m, alpha, s0, q)
    }

    pub fn pseudo(m: f64, alpha: f64, s0: f64, q: f64) -> Result<Self> {
        Self::new(Variant::PseudoHermitian, m, alpha, s0, q)
    }

    pub fn exponential(m: f64, alpha: f64, s0: f64) -> Result<Self> {
        Self::new(Variant::PtExponential, m, alpha, s0, 0.0)
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.m, self.alpha, self.s0, self.q]
            .iter()
            .all(|v| v.is_finite());
        if !finite {
            return Err(Error::InvalidParams("parameters must be finite".into()));
        }
        if self.m <= 0.0 {
            return Err(Error::InvalidParams(format!("m = {} must be > 0", self.m)));
        }
        if self.alpha <= 0.0 {
            return Err(Error::InvalidParams(format!(
                "alpha = {} must be > 0",
                self.alpha
            )));
        }
        if self.s0 <= 0.0 {
            return Err(Error::InvalidParams(format!(
                "s0 = {} must be > 0",
                self.s0
            )));
        }
        match (self.variant, self.q == 0.0) {
            (Variant::PtExponential, false) => Err(Error::InvalidParams(format!(
                "variant pt-exp requires q = 0, got q = {}",
                self.q
            ))),
            (Variant::PtExponential, true) => Ok(()),
            (_, true) => Err(Error::InvalidParams(format!(
                "variant {} requires q != 0 (use pt-exp for q = 0)",
                self.variant
            ))),
            (_, false) => Ok(()),
        }
    }

    pub fn m(&self) -> f64 {
        self.m
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn s0(&self) -> f64 {
        self.s0
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn with_s0(&self, s0: f64) -> Result<Self> {
        Self::new(self.variant, self.m, self.alpha, s0, self.q)
    }

    pub fn with_alpha(&self, alpha: f64) -> Result<Self> {
        Self::new(self.variant, self.m, alpha, self.s0, self.q)
    }

    pub fn with_variant(&self, variant: Variant) -> Result<Self> {
        Self::new(variant, self.m, self.alpha, self.s0, self.q)
    }

    pub fn symbols(&self) -> DerivedSymbols {
        DerivedSymbols::new(self)
    }

    /// Existence condition q²α² ≥ 4S0² shared by the two complex q ≠ 0 variants.
    pub fn complex_levels_exist(&self) -> bool {
        let qa = self.q * self.alpha;
        qa * qa >= 4.0 * self.s0 * self.s0
    }

    /// The (S0, q, α) triple after complexification, such that every variant
    /// is −S0' e^{−α'x} / (1 − q' e^{−α'x}).
    pub fn complexified(&self) -> (Complex64, Complex64, Complex64) {
        let s0 = Complex64::from(self.s0);
        let q = Complex64::from(self.q);
        let alpha = Complex64::from(self.alpha);
        match self.variant {
            Variant::RealHulthen => (s0, q, alpha),
            Variant::PtSymmetric | Variant::PtExponential => (s0, q, I * alpha),
            Variant::PseudoHermitian => (I * s0, I * q, I * alpha),
        }
    }

    /// Left edge of the physical domain: the pole x = ln(q)/α for the real
    /// variant with q > 0, otherwise `None` (full line).
    pub fn physical_left_edge(&self) -> Option<f64> {
        match self.variant {
            Variant::RealHulthen if self.q > 0.0 => Some(self.q.ln() / self.alpha),
            _ => None,
        }
    }
}

/// Dimensionless combinations entering the closed-form spectra.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DerivedSymbols {
    /// γ² = S0²/α².
    pub gamma2: f64,
    /// β² = 2mS0/α².
    pub beta2: f64,
    /// a = √(q² + 4γ²).
    pub a: f64,
    /// b = √(q² − 4γ²), present only when q²α² ≥ 4S0².
    pub b: Option<f64>,
    m: f64,
    alpha: f64,
}

impl DerivedSymbols {
    pub fn new(params: &PotentialParams) -> Self {
        let alpha = params.alpha();
        let gamma2 = params.s0() * params.s0() / (alpha * alpha);
        let beta2 = 2.0 * params.m() * params.s0() / (alpha * alpha);
        let q2 = params.q() * params.q();
        let a = (q2 + 4.0 * gamma2).sqrt();
        let b = params
            .complex_levels_exist()
            .then(|| (q2 - 4.0 * gamma2).max(0.0).sqrt());
        DerivedSymbols {
            gamma2,
            beta2,
            a,
            b,
            m: params.m(),
            alpha,
        }
    }

    /// ε = √(m² − E²)/α for |E| ≤ m, ε̂ = √(E² − m²)/α above threshold.
    pub fn eps_of(&self, energy: f64) -> f64 {
        (self.m * self.m - energy * energy).abs().sqrt() / self.alpha
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LevelKind {
    Kappa,
    Mu,
    Delta,
}

impl LevelKind {
    pub fn as_str(self) -> &'static str {
        match self {
            LevelKind::Kappa => "kappa",
            LevelKind::Mu => "mu",
            LevelKind::Delta => "delta",
        }
    }
}

/// κₙ, μₙ or δₙ: the variant-specific combination √(q²α² ± 4S0²) ± qα(2n+1).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LevelParameter {
    pub kind: LevelKind,
    pub n: usize,
    pub value: f64,
}

impl LevelParameter {
    pub fn kappa(params: &PotentialParams, n: usize) -> Self {
        let (q, alpha, s0) = (params.q(), params.alpha(), params.s0());
        let value = (q * q * alpha * alpha + 4.0 * s0 * s0).sqrt() + q * alpha * odd(n);
        LevelParameter {
            kind: LevelKind::Kappa,
            n,
            value,
        }
    }

    pub fn mu(params: &PotentialParams, n: usize) -> Option<Self> {
        let root = complex_root(params)?;
        Some(LevelParameter {
            kind: LevelKind::Mu,
            n,
            value: root + params.q() * params.alpha() * odd(n),
        })
    }

    pub fn delta(params: &PotentialParams, n: usize) -> Option<Self> {
        let root = complex_root(params)?;
        Some(LevelParameter {
            kind: LevelKind::Delta,
            n,
            value: root - params.q() * params.alpha() * odd(n),
        })
    }
}

fn odd(n: usize) -> f64 {
    (2 * n + 1) as f64
}

fn complex_root(params: &PotentialParams) -> Option<f64> {
    let qa = params.q() * params.alpha();
    let d = qa * qa - 4.0 * params.s0() * params.s0();
    (d >= 0.0).then(|| d.sqrt())
}

/// S(x) for the selected variant, using the explicit trigonometric forms for
/// the complex variants.
pub fn potential_value(params: &PotentialParams, x: f64) -> Result<Complex64> {
    let (s0, q, alpha) = (params.s0(), params.q(), params.alpha());
    match params.variant() {
        Variant::RealHulthen => {
            let decay = (-alpha * x).exp();
            let denom = 1.0 - q * decay;
            if denom.abs() < POLE_GUARD {
                return Err(Error::Pole {
                    x,
                    pole: q.ln() / alpha,
                });
            }
            Ok(Complex64::from(-s0 * decay / denom))
        }
        Variant::PtSymmetric => {
            let (sin, cos) = (alpha * x).sin_cos();
            let d = q * q - 2.0 * q * cos + 1.0;
            guard_periodic(d, x, alpha, 0.0)?;
            Ok(Complex64::new(q - cos, sin) * (s0 / d))
        }
        Variant::PseudoHermitian => {
            let (sin, cos) = (alpha * x).sin_cos();
            let d = q * q - 2.0 * q * sin + 1.0;
            guard_periodic(d, x, alpha, FRAC_PI_2)?;
            Ok(Complex64::new(q - sin, -cos) * (s0 / d))
        }
        Variant::PtExponential => Ok(-s0 * (-I * alpha * x).exp()),
    }
}

// Complex variants have |1 − q' e^{−α'x}|² = d; poles only at q = 1, at
// αx = phase + 2πk.
fn guard_periodic(d: f64, x: f64, alpha: f64, phase: f64) -> Result<()> {
    if d.max(0.0).sqrt() < POLE_GUARD {
        let k = ((alpha * x - phase) / (2.0 * PI)).round();
        return Err(Error::Pole {
            x,
            pole: (phase + 2.0 * PI * k) / alpha,
        });
    }
    Ok(())
}

/// −S0' e^{−α'x} / (1 − q' e^{−α'x}) with complex parameters.
pub fn hulthen_complexified(s0: Complex64, q: Complex64, alpha: Complex64, x: f64) -> Complex64 {
    let decay = (-alpha * x).exp();
    -s0 * decay / (1.0 - q * decay)
}

/// S(x) by direct complex substitution into the real Hulthén formula; an
/// independent route to [`potential_value`] for the complex variants.
pub fn potential_by_substitution(params: &PotentialParams, x: f64) -> Complex64 {
    let (s0, q, alpha) = params.complexified();
    hulthen_complexified(s0, q, alpha, x)
}

/// Small-αx expansion S0/(q−1) + S0 αx/(q−1)² of the real well.
pub fn linearized_potential(params: &PotentialParams, x: f64) -> Result<f64> {
    if params.variant() != Variant::RealHulthen {
        return Err(Error::Contract(
            "linearized potential is defined for the real variant only".into(),
        ));
    }
    let qm1 = params.q() - 1.0;
    if qm1.abs() < POLE_GUARD {
        return Err(Error::Domain("linearization has a pole at q = 1".into()));
    }
    let s0 = params.s0();
    Ok(s0 / qm1 + s0 * params.alpha() * x / (qm1 * qm1))
}

/// Schrödinger-like effective energy and potential (E_eff, U_eff).
pub fn effective_quantities(params: &PotentialParams, energy: f64, x: f64) -> Result<(f64, f64)> {
    if params.variant() != Variant::RealHulthen {
        return Err(Error::Contract(
            "effective quantities are defined for the real variant only".into(),
        ));
    }
    let m = params.m();
    let s = potential_value(params, x)?.re;
    let e_eff = (energy * energy - m * m) / (2.0 * m);
    let u_eff = s * s / (2.0 * m) + s;
    Ok((e_eff, u_eff))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SymmetryMode {
    Pt,
    PseudoHermitian,
}

/// Default reflection point ξ for which S(ξ − x) = S*(x).
pub fn default_reflection_point(params: &PotentialParams, mode: SymmetryMode) -> f64 {
    match mode {
        SymmetryMode::Pt => 0.0,
        SymmetryMode::PseudoHermitian => PI / params.alpha(),
    }
}

/// max over the grid of |S(ξ − x) − S*(x)|.
///
/// Both modes measure the same potential-level identity; the pseudo-Hermitian
/// statement ηSη⁻¹ = S* with η the parity about ξ/2 reduces to it.
pub fn symmetry_deviation(
    params: &PotentialParams,
    reflection_point: f64,
    _mode: SymmetryMode,
    grid: &[f64],
) -> Result<f64> {
    if !params.variant().is_complex() {
        return Err(Error::Contract(
            "symmetry deviation needs a complex variant".into(),
        ));
    }
    let mut worst = 0.0_f64;
    for &x in grid {
        let reflected = potential_value(params, reflection_point - x)?;
        let conj = potential_value(params, x)?.conj();
        worst = worst.max((reflected - conj).norm());
    }
    Ok(worst)
}
