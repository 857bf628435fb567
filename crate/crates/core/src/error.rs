use num_complex::Complex64;
use thiserror::Error;

/// Errors raised by the bound-state machinery.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("evaluation at x = {x} is within the pole guard of the singularity at x = {pole}")]
    Pole { x: f64, pole: f64 },

    #[error("no bound state at n = {n}: {reason}")]
    NoBoundState { n: usize, reason: String },

    #[error("no bound states: {0}")]
    NoBoundStates(String),

    #[error("level parameter vanishes at n = {n}; the energy formula has a pole")]
    LevelPole { n: usize },

    #[error("indeterminate k: the discriminant condition vanishes identically")]
    IndeterminateK,

    #[error("no admissible branch: tau' candidates {tau_primes:?}")]
    NoAdmissibleBranch { tau_primes: Vec<Complex64> },

    #[error("series parameter b = {b} is a nonpositive integer")]
    SeriesPole { b: Complex64 },

    #[error("series did not converge within {terms} terms (partial sum {partial})")]
    Convergence { terms: usize, partial: Complex64 },

    #[error("singular point: {0}")]
    Singular(String),

    #[error("branch crossing of the power base across the negative real axis on [{from}, {to}]")]
    BranchCrossing { from: f64, to: f64 },

    #[error("grid span insufficient: endpoint |psi|^2 fraction {fraction:e} exceeds {limit:e}")]
    GridSpan { fraction: f64, limit: f64 },

    #[error("degenerate input: {0}")]
    Degenerate(String),
}

impl Error {
    /// Short machine-readable tag for the error family.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidParams(_) => "invalid_params",
            Error::Contract(_) => "contract",
            Error::Domain(_) => "domain",
            Error::Pole { .. } => "pole",
            Error::NoBoundState { .. } => "no_bound_state",
            Error::NoBoundStates(_) => "no_bound_states",
            Error::LevelPole { .. } => "level_pole",
            Error::IndeterminateK => "indeterminate_k",
            Error::NoAdmissibleBranch { .. } => "no_admissible_branch",
            Error::SeriesPole { .. } => "series_pole",
            Error::Convergence { .. } => "convergence",
            Error::Singular(_) => "singular",
            Error::BranchCrossing { .. } => "branch_crossing",
            Error::GridSpan { .. } => "grid_span",
            Error::Degenerate(_) => "degenerate",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
