//! Nikiforov–Uvarov reduction of
//!
//! ```text
//! ψ'' + (τ̃/σ) ψ' + (σ̃/σ²) ψ = 0,   deg σ, σ̃ ≤ 2,  deg τ̃ ≤ 1
//! ```
//!
//! to the hypergeometric-type form σ y'' + τ y' + λ y = 0 via ψ = φ(z) y(z).
//! The first-degree polynomial π(z) is found by requiring
//! P(z; k) = ((σ' − τ̃)/2)² − σ̃ + kσ to be a perfect square in z.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

/// Relative tolerance of the perfect-square (zero discriminant) check.
pub const DISCRIMINANT_TOL: f64 = 1e-10;

/// c0 + c1 z + c2 z².
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Poly2 {
    pub c0: Complex64,
    pub c1: Complex64,
    pub c2: Complex64,
}

impl Poly2 {
    pub fn new(c0: Complex64, c1: Complex64, c2: Complex64) -> Self {
        Poly2 { c0, c1, c2 }
    }

    pub fn linear(c0: Complex64, c1: Complex64) -> Self {
        Poly2::new(c0, c1, Complex64::from(0.0))
    }

    pub fn zero() -> Self {
        Poly2::linear(Complex64::from(0.0), Complex64::from(0.0))
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.c0 + z * (self.c1 + z * self.c2)
    }

    pub fn derivative(&self) -> Poly2 {
        Poly2::linear(self.c1, 2.0 * self.c2)
    }

    pub fn scale(&self, s: Complex64) -> Poly2 {
        Poly2::new(self.c0 * s, self.c1 * s, self.c2 * s)
    }

    pub fn add(&self, other: &Poly2) -> Poly2 {
        Poly2::new(self.c0 + other.c0, self.c1 + other.c1, self.c2 + other.c2)
    }

    pub fn sub(&self, other: &Poly2) -> Poly2 {
        self.add(&other.scale(Complex64::from(-1.0)))
    }

    pub fn is_zero(&self) -> bool {
        self.c0.norm() == 0.0 && self.c1.norm() == 0.0 && self.c2.norm() == 0.0
    }

    fn scale_norm(&self) -> f64 {
        self.c0.norm().max(self.c1.norm()).max(self.c2.norm())
    }

    /// Discriminant c1² − 4 c0 c2 of the quadratic.
    pub fn discriminant(&self) -> Complex64 {
        self.c1 * self.c1 - 4.0 * self.c0 * self.c2
    }
}

/// σ, τ̃, σ̃ of the generalized hypergeometric-type equation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HypergeometricTypeEq {
    pub sigma: Poly2,
    pub tau_tilde: Poly2,
    pub sigma_tilde: Poly2,
}

impl HypergeometricTypeEq {
    pub fn new(sigma: Poly2, tau_tilde: Poly2, sigma_tilde: Poly2) -> Result<Self> {
        if tau_tilde.c2.norm() != 0.0 {
            return Err(Error::Contract(
                "tau_tilde must be at most first degree".into(),
            ));
        }
        if sigma.is_zero() {
            return Err(Error::Contract("sigma must not vanish identically".into()));
        }
        Ok(HypergeometricTypeEq {
            sigma,
            tau_tilde,
            sigma_tilde,
        })
    }

    /// Generalized Hulthén form in z = S0 e^{−αx}:
    /// σ = z(S0 − qz), τ̃ = S0 − qz,
    /// σ̃ = −(γ² + qβ² + q²ε²) z² + S0(β² + 2qε²) z − S0²ε².
    ///
    /// All inputs may be complex so that the complexified variants reuse it.
    pub fn hulthen(
        s0: Complex64,
        q: Complex64,
        gamma2: Complex64,
        beta2: Complex64,
        eps: Complex64,
    ) -> Result<Self> {
        let eps2 = eps * eps;
        let zero = Complex64::from(0.0);
        Self::new(
            Poly2::new(zero, s0, -q),
            Poly2::linear(s0, -q),
            Poly2::new(
                -s0 * s0 * eps2,
                s0 * (beta2 + 2.0 * q * eps2),
                -(gamma2 + q * beta2 + q * q * eps2),
            ),
        )
    }

    /// q = 0 exponential form in s = S0 e^{−iαx}:
    /// σ = s, τ̃ = 1, σ̃ = s²/α² − 2ms/α² + 𝓔².
    pub fn pt_exponential(m: f64, alpha: f64, script_e: f64) -> Result<Self> {
        let c = Complex64::from;
        let a2 = alpha * alpha;
        Self::new(
            Poly2::linear(c(0.0), c(1.0)),
            Poly2::linear(c(1.0), c(0.0)),
            Poly2::new(c(script_e * script_e), c(-2.0 * m / a2), c(1.0 / a2)),
        )
    }

    /// (σ' − τ̃)/2.
    fn half_gap(&self) -> Poly2 {
        self.sigma
            .derivative()
            .sub(&self.tau_tilde)
            .scale(Complex64::from(0.5))
    }

    /// P(z; k) = ((σ' − τ̃)/2)² − σ̃ + kσ.
    pub fn radicand(&self, k: Complex64) -> Poly2 {
        let h = self.half_gap();
        let square = Poly2::new(h.c0 * h.c0, 2.0 * h.c0 * h.c1, h.c1 * h.c1);
        square.sub(&self.sigma_tilde).add(&self.sigma.scale(k))
    }
}

/// Both roots of disc_z P(z; k) = 0, `plus` first.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KCandidates {
    pub plus: Complex64,
    pub minus: Complex64,
    /// Set when real-coefficient input produced roots with a nonzero
    /// imaginary part, or the discriminant equation degenerated to linear.
    pub irregular: bool,
}

pub fn k_candidates(eq: &HypergeometricTypeEq) -> Result<KCandidates> {
    // P = A(k) z² + B(k) z + C(k), each linear in k.
    let base = eq.radicand(Complex64::from(0.0));
    let s = eq.sigma;
    let (a0, b0, c0) = (base.c2, base.c1, base.c0);
    // disc = B² − 4AC as a quadratic in k.
    let qa = s.c1 * s.c1 - 4.0 * s.c2 * s.c0;
    let qb = 2.0 * b0 * s.c1 - 4.0 * (a0 * s.c0 + c0 * s.c2);
    let qc = b0 * b0 - 4.0 * a0 * c0;
    let scale = qa.norm().max(qb.norm()).max(qc.norm());
    if scale == 0.0 {
        return Err(Error::IndeterminateK);
    }
    let real_input = [eq.sigma, eq.tau_tilde, eq.sigma_tilde]
        .iter()
        .all(|p| p.c0.im == 0.0 && p.c1.im == 0.0 && p.c2.im == 0.0);
    if qa.norm() <= 1e-14 * scale {
        if qb.norm() <= 1e-14 * scale {
            return Err(Error::IndeterminateK);
        }
        let k = -qc / qb;
        return Ok(KCandidates {
            plus: k,
            minus: k,
            irregular: true,
        });
    }
    let root = (qb * qb - 4.0 * qa * qc).sqrt();
    let plus = (-qb + root) / (2.0 * qa);
    let minus = (-qb - root) / (2.0 * qa);
    let irregular = real_input
        && (plus.im.abs() > 1e-12 * plus.norm().max(1.0)
            || minus.im.abs() > 1e-12 * minus.norm().max(1.0));
    Ok(KCandidates {
        plus,
        minus,
        irregular,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum KRoot {
    Plus,
    Minus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BranchTag {
    pub k_root: KRoot,
    /// Sign in front of the square root of P.
    pub sqrt_sign: i8,
}

/// Output of the reduction: k, π(z), τ(z) = τ̃ + 2π and λ = k + π'.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NuReduction {
    pub k: Complex64,
    pub phi: Poly2,
    pub tau: Poly2,
    pub tau_prime: Complex64,
    pub lambda: Complex64,
    pub branch: BranchTag,
    /// Number of the four (k, sign) combinations meeting the derivative rule.
    pub admissible_count: usize,
    /// τ' of all four combinations in (k+,+), (k+,−), (k−,+), (k−,−) order.
    pub all_tau_primes: [Complex64; 4],
    /// When σ is real with two real roots: the number of combinations with
    /// τ' < 0 whose φ is regular at both roots.
    pub regular_count: Option<usize>,
}

/// Exact square root of a perfect-square quadratic, returned as a linear
/// polynomial (one of the two signs).
fn sqrt_perfect_square(p: &Poly2) -> Result<Poly2> {
    let scale = p.scale_norm();
    if scale == 0.0 {
        return Ok(Poly2::zero());
    }
    let disc = p.discriminant();
    if disc.norm() > DISCRIMINANT_TOL * scale * scale {
        return Err(Error::Domain(format!(
            "radicand is not a perfect square: |disc| = {:e}, scale = {:e}",
            disc.norm(),
            scale
        )));
    }
    if p.c2.norm() <= 1e-14 * scale {
        // Linear-in-z degenerate case: a perfect square must be constant.
        return Ok(Poly2::linear(p.c0.sqrt(), Complex64::from(0.0)));
    }
    let root_a = p.c2.sqrt();
    Ok(Poly2::linear(p.c1 / (2.0 * root_a), root_a))
}

/// The real roots of a real quadratic σ, ascending.
pub fn sigma_roots(sigma: &Poly2) -> Option<(f64, f64)> {
    let real = [sigma.c0, sigma.c1, sigma.c2].iter().all(|c| c.im == 0.0);
    if !real || sigma.c2.re == 0.0 {
        return None;
    }
    let disc = sigma.discriminant().re;
    if disc <= 0.0 {
        return None;
    }
    let r = disc.sqrt();
    let z1 = (-sigma.c1.re - r) / (2.0 * sigma.c2.re);
    let z2 = (-sigma.c1.re + r) / (2.0 * sigma.c2.re);
    Some((z1.min(z2), z1.max(z2)))
}

/// φ ~ (z − r)^{π(r)/σ'(r)} near each root r of σ; regular when both
/// exponents have positive real part.
fn regular_at_roots(phi: &Poly2, sigma: &Poly2, roots: (f64, f64)) -> bool {
    let ds = sigma.derivative();
    [roots.0, roots.1].iter().all(|&r| {
        let r = Complex64::from(r);
        let slope = ds.eval(r);
        slope.norm() > 0.0 && (phi.eval(r) / slope).re > 0.0
    })
}

fn tol_zero(v: f64, scale: f64) -> bool {
    v.abs() <= 1e-12 * scale.max(1.0)
}

/// Enumerates the four (k, ±) combinations and selects the one whose τ has a
/// negative derivative.
///
/// Admissible: Re τ' < 0, or Re τ' = 0 with Im τ' < 0 (purely imaginary τ'
/// arises for the complex exponential instantiation). When σ has two real
/// roots, combinations whose φ is regular at both take precedence. Among the
/// rest k− is preferred, then the most negative τ'.
pub fn reduce(eq: &HypergeometricTypeEq) -> Result<NuReduction> {
    let ks = k_candidates(eq)?;
    let h = eq.half_gap();
    let mut candidates = Vec::with_capacity(4);
    for (k, tag) in [(ks.plus, KRoot::Plus), (ks.minus, KRoot::Minus)] {
        let root = sqrt_perfect_square(&eq.radicand(k))?;
        for sign in [1i8, -1] {
            let phi = h.add(&root.scale(Complex64::from(f64::from(sign))));
            let tau = eq.tau_tilde.add(&phi.scale(Complex64::from(2.0)));
            candidates.push((k, tag, sign, phi, tau));
        }
    }
    let all_tau_primes = [
        candidates[0].4.c1,
        candidates[1].4.c1,
        candidates[2].4.c1,
        candidates[3].4.c1,
    ];
    let scale = all_tau_primes.iter().map(|t| t.norm()).fold(0.0, f64::max);
    let admissible = |t: Complex64| {
        (t.re < 0.0 && !tol_zero(t.re, scale)) || (tol_zero(t.re, scale) && t.im < 0.0)
    };
    let admissible_count = all_tau_primes.iter().filter(|t| admissible(**t)).count();
    let roots = sigma_roots(&eq.sigma);
    let regular = |phi: &Poly2| roots.is_some_and(|r| regular_at_roots(phi, &eq.sigma, r));
    let regular_count = roots.map(|_| {
        candidates
            .iter()
            .filter(|c| admissible(c.4.c1) && regular(&c.3))
            .count()
    });
    let any_regular = candidates
        .iter()
        .any(|c| admissible(c.4.c1) && regular(&c.3));
    let best = candidates
        .iter()
        .filter(|c| admissible(c.4.c1) && (!any_regular || regular(&c.3)))
        .min_by(|x, y| {
            let rank = |tag: KRoot| if tag == KRoot::Minus { 0 } else { 1 };
            rank(x.1)
                .cmp(&rank(y.1))
                .then(x.4.c1.re.total_cmp(&y.4.c1.re))
                .then(x.4.c1.im.total_cmp(&y.4.c1.im))
        })
        .ok_or(Error::NoAdmissibleBranch {
            tau_primes: all_tau_primes.to_vec(),
        })?;
    let (k, tag, sign, phi, tau) = *best;
    let lambda = k + phi.c1;
    Ok(NuReduction {
        k,
        phi,
        tau,
        tau_prime: tau.c1,
        lambda,
        branch: BranchTag {
            k_root: tag,
            sqrt_sign: sign,
        },
        admissible_count,
        all_tau_primes,
        regular_count,
    })
}

/// λₙ = −n τ' − n(n−1)/2 σ''.
pub fn lambda_n(reduction: &NuReduction, eq: &HypergeometricTypeEq, n: usize) -> Complex64 {
    let nf = n as f64;
    let sigma2 = 2.0 * eq.sigma.c2;
    -nf * reduction.tau_prime - nf * (nf - 1.0) / 2.0 * sigma2
}

/// Closed forms of the weight ω, solving (σω)' = τω, and of the factor φ,
/// solving φ'/φ = π/σ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum WeightForm {
    /// σ = r(z − z1)(z − z2): ω ∝ Π (z − zᵢ)^{pᵢ}, φ ∝ Π (z − zᵢ)^{eᵢ}.
    TwoRoots {
        roots: [Complex64; 2],
        weight_exponents: [Complex64; 2],
        factor_exponents: [Complex64; 2],
    },
    /// σ linear, vanishing at `root`: ω ∝ (z − z1)^p e^{c z}, φ ∝ (z − z1)^e e^{d z}.
    LinearSigma {
        root: Complex64,
        weight_exponent: Complex64,
        weight_exp_coeff: Complex64,
        factor_exponent: Complex64,
        factor_exp_coeff: Complex64,
    },
    /// σ = r(z − z1)²: ω ∝ (z − z1)^p e^{c/(z − z1)}, likewise for φ.
    DoubleRoot {
        root: Complex64,
        weight_exponent: Complex64,
        weight_pole_coeff: Complex64,
        factor_exponent: Complex64,
        factor_pole_coeff: Complex64,
    },
}

/// Residues of f/σ for a linear numerator f, by shape of σ.
pub fn weight_and_factor(reduction: &NuReduction, eq: &HypergeometricTypeEq) -> Result<WeightForm> {
    let sigma = eq.sigma;
    // ω'/ω = (τ − σ')/σ.
    let weight_num = reduction.tau.sub(&sigma.derivative());
    let factor_num = reduction.phi;
    let scale = sigma.scale_norm();
    if sigma.c2.norm() > 1e-14 * scale {
        let r = sigma.c2;
        let disc = sigma.discriminant().sqrt();
        let z1 = (-sigma.c1 + disc) / (2.0 * r);
        let z2 = (-sigma.c1 - disc) / (2.0 * r);
        if (z1 - z2).norm() <= 1e-12 * (z1.norm() + z2.norm()).max(1.0) {
            let z0 = 0.5 * (z1 + z2);
            // f/(r(z−z0)²) = f1/(r(z−z0)) + f(z0)/(r(z−z0)²).
            return Ok(WeightForm::DoubleRoot {
                root: z0,
                weight_exponent: weight_num.c1 / r,
                weight_pole_coeff: -weight_num.eval(z0) / r,
                factor_exponent: factor_num.c1 / r,
                factor_pole_coeff: -factor_num.eval(z0) / r,
            });
        }
        // Order roots so that a root at the origin comes first.
        let (z1, z2) = if z2.norm() < z1.norm() {
            (z2, z1)
        } else {
            (z1, z2)
        };
        let res = |f: &Poly2| [f.eval(z1) / (r * (z1 - z2)), f.eval(z2) / (r * (z2 - z1))];
        return Ok(WeightForm::TwoRoots {
            roots: [z1, z2],
            weight_exponents: res(&weight_num),
            factor_exponents: res(&factor_num),
        });
    }
    if sigma.c1.norm() > 1e-14 * scale {
        let c1 = sigma.c1;
        let z1 = -sigma.c0 / c1;
        // (f0 + f1 z)/(c1 (z − z1)) = f1/c1 + f(z1)/(c1 (z − z1)).
        return Ok(WeightForm::LinearSigma {
            root: z1,
            weight_exponent: weight_num.eval(z1) / c1,
            weight_exp_coeff: weight_num.c1 / c1,
            factor_exponent: factor_num.eval(z1) / c1,
            factor_exp_coeff: factor_num.c1 / c1,
        });
    }
    Err(Error::Contract(
        "constant sigma has no weight of the supported forms".into(),
    ))
}

/// The n-independent part of the eigencondition for the generalized Hulthén
/// form: λ(ε) from the reduction and λₙ(ε) from τ'.
pub fn hulthen_eigen_gap(
    s0: Complex64,
    q: Complex64,
    gamma2: Complex64,
    beta2: Complex64,
    eps: Complex64,
    n: usize,
) -> Result<(Complex64, Complex64)> {
    let eq = HypergeometricTypeEq::hulthen(s0, q, gamma2, beta2, eps)?;
    let red = reduce(&eq)?;
    Ok((red.lambda, lambda_n(&red, &eq, n)))
}
