//! Command-line front end: table and figure data, spectra, eigenfunctions,
//! finite-difference verification and the q = 0 root search.

use std::f64::consts::PI;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use hulthen_core::oracle::{verify_closed_form, VerifyConfig};
use hulthen_core::spectra::{count_real_levels, level, pt_level, q0_pt_eigenvalues};
use hulthen_core::wavefun::{
    normalize, normalize_window, sample_q0, sample_real, uniform_grid, ComplexEigenfunction,
};
use hulthen_core::{Error, PotentialParams, Q0ScanConfig, SeriesControl, Variant};

mod table;

pub use table::{Cell, Table};

const TABLE1_VECTOR: &str = include_str!("../data/table1_vector_reference.csv");

#[derive(Debug, Parser)]
#[command(
    name = "kgh",
    version,
    about = "Klein-Gordon bound states of generalized Hulthen wells"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct Physics {
    #[arg(long, default_value = "real", value_parser = parse_variant)]
    pub variant: Variant,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub m: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub alpha: f64,
    #[arg(long, default_value_t = 0.25, allow_negative_numbers = true)]
    pub s0: f64,
    /// Defaults to 1, or 0 for pt-exp.
    #[arg(long, allow_negative_numbers = true)]
    pub q: Option<f64>,
}

impl Physics {
    fn params(&self) -> Result<PotentialParams, Error> {
        let q = self.q.unwrap_or(match self.variant {
            Variant::PtExponential => 0.0,
            _ => 1.0,
        });
        PotentialParams::new(self.variant, self.m, self.alpha, self.s0, q)
    }
}

fn parse_variant(s: &str) -> Result<Variant, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Ground-state binding energies E0 - m of the PT-symmetric well for S0 = 0.25, m = 1.
    Table1,
    /// E0 against S0 at alpha = m for a list of q.
    Figure1 {
        #[arg(long, default_value_t = 1.0)]
        m: f64,
        #[arg(long, value_delimiter = ',', default_value = "0.5,1,1.5,2")]
        q_list: Vec<f64>,
        #[arg(long, default_value_t = 200)]
        points: usize,
    },
    /// E_n against alpha for q = 1, S0 = m/2.
    Figure2 {
        #[arg(long, default_value_t = 1.0)]
        m: f64,
        #[arg(long, default_value_t = 5.0)]
        alpha_max: f64,
        #[arg(long, default_value_t = 200)]
        points: usize,
        #[arg(long, default_value_t = 2)]
        n_max: usize,
    },
    /// Bound-state energies of a q != 0 variant.
    Spectrum {
        #[command(flatten)]
        physics: Physics,
        /// Highest level; defaults to all levels (real) or 5 (complex variants).
        #[arg(long)]
        n_max: Option<usize>,
    },
    /// Normalized eigenfunction on a uniform grid.
    Wavefunction {
        #[command(flatten)]
        physics: Physics,
        #[arg(long, default_value_t = 0)]
        n: usize,
        #[arg(long, allow_negative_numbers = true)]
        x_min: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        x_max: Option<f64>,
        #[arg(long, default_value_t = 2001)]
        points: usize,
    },
    /// Finite-difference check of a real-variant level.
    Verify {
        #[command(flatten)]
        physics: Physics,
        #[arg(long, default_value_t = 0)]
        n: usize,
        /// Left wall; defaults to the pole for q > 0.
        #[arg(long, allow_negative_numbers = true)]
        x_min: Option<f64>,
        #[arg(long, default_value_t = 80.0, allow_negative_numbers = true)]
        x_max: f64,
        /// Interior points of the coarse grid.
        #[arg(long, default_value_t = 8000)]
        points: usize,
    },
    /// Real roots of the q = 0 eigencondition.
    Q0roots {
        #[arg(long, default_value_t = 1.0)]
        m: f64,
        #[arg(long, default_value_t = 1.0)]
        alpha: f64,
        #[arg(long, default_value_t = 1.0)]
        s0: f64,
        #[arg(long, default_value_t = 2001)]
        scan_points: usize,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
}

/// A failure ready to be reported as one line.
#[derive(Debug, Clone, PartialEq)]
pub struct CliError {
    pub kind: String,
    pub message: String,
    pub exit_code: i32,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError {
            kind: "usage".into(),
            message: message.into(),
            exit_code: 2,
        }
    }

    pub fn to_line(&self) -> String {
        let message = self
            .message
            .split_whitespace()
            .collect::<Vec<_>>()
            .join(" ");
        json!({ "error": self.kind, "message": message }).to_string()
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let exit_code = match e {
            Error::InvalidParams(_) | Error::Contract(_) => 2,
            _ => 1,
        };
        CliError {
            kind: e.kind().into(),
            message: e.to_string(),
            exit_code,
        }
    }
}

/// Runs a parsed command and returns the complete output text.
pub fn run(cli: &Cli) -> Result<String, CliError> {
    let format = cli.format;
    match &cli.command {
        Command::Table1 => Ok(table1()?.render(format)),
        Command::Figure1 { m, q_list, points } => Ok(figure1(*m, q_list, *points)?.render(format)),
        Command::Figure2 {
            m,
            alpha_max,
            points,
            n_max,
        } => Ok(figure2(*m, *alpha_max, *points, *n_max)?.render(format)),
        Command::Spectrum { physics, n_max } => {
            Ok(spectrum(&physics.params()?, *n_max)?.render(format))
        }
        Command::Wavefunction {
            physics,
            n,
            x_min,
            x_max,
            points,
        } => Ok(wavefunction(&physics.params()?, *n, *x_min, *x_max, *points)?.render(format)),
        Command::Verify {
            physics,
            n,
            x_min,
            x_max,
            points,
        } => verify(&physics.params()?, *n, *x_min, *x_max, *points, format),
        Command::Q0roots {
            m,
            alpha,
            s0,
            scan_points,
            tol,
        } => {
            let params = PotentialParams::exponential(*m, *alpha, *s0)?;
            Ok(q0roots(&params, *scan_points, *tol)?.render(format))
        }
    }
}

fn need_points(points: usize, min: usize) -> Result<(), CliError> {
    if points < min {
        return Err(CliError::usage(format!("--points must be at least {min}")));
    }
    Ok(())
}

/// Bundled vector-coupling reference values keyed by (q, alpha).
pub fn vector_reference() -> Vec<(f64, f64, f64)> {
    TABLE1_VECTOR
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#') && !l.starts_with("q,"))
        .map(|l| {
            let f: Vec<f64> = l
                .split(',')
                .map(|v| v.trim().parse().expect("bundled reference data is numeric"))
                .collect();
            (f[0], f[1], f[2])
        })
        .collect()
}

pub const TABLE1_Q: [f64; 4] = [0.5, 1.0, 1.5, 2.0];
pub const TABLE1_ALPHA: [f64; 3] = [0.5, 1.0, 2.0];

pub fn table1() -> Result<Table, CliError> {
    let reference = vector_reference();
    let mut table = Table::new(
        "table1",
        &["q", "alpha", "E_binding_scalar", "E_binding_vector_ref"],
    );
    for q in TABLE1_Q {
        for alpha in TABLE1_ALPHA {
            let p = PotentialParams::pt(1.0, alpha, 0.25, q)?;
            let scalar = if p.complex_levels_exist() {
                Cell::Energy(pt_level(&p, 0)?.energy() - p.m())
            } else {
                Cell::Missing
            };
            let vector = reference
                .iter()
                .find(|r| r.0 == q && r.1 == alpha)
                .map_or(Cell::Missing, |r| Cell::Energy(r.2));
            table.push(vec![
                Cell::Fixed(q, 2),
                Cell::Fixed(alpha, 2),
                scalar,
                vector,
            ]);
        }
    }
    Ok(table)
}

pub fn figure1(m: f64, q_list: &[f64], points: usize) -> Result<Table, CliError> {
    need_points(points, 2)?;
    let mut table = Table::new("figure1", &["S0", "q", "E0"]);
    for &q in q_list {
        let edge = q * m / 2.0;
        for s0 in uniform_grid(1e-6, edge, points) {
            let p = PotentialParams::pt(m, m, s0, q)?;
            if !p.complex_levels_exist() {
                break;
            }
            let e = pt_level(&p, 0)?.energy();
            table.push(vec![Cell::Fixed(s0, 8), Cell::Fixed(q, 2), Cell::Energy(e)]);
        }
    }
    Ok(table)
}

pub fn figure2(m: f64, alpha_max: f64, points: usize, n_max: usize) -> Result<Table, CliError> {
    need_points(points, 2)?;
    let (q, s0) = (1.0, 0.5 * m);
    let alpha_min = 2.0 * s0 / q;
    let mut table = Table::new("figure2", &["alpha", "n", "E"]);
    if alpha_max < alpha_min {
        return Ok(table);
    }
    let grid = if alpha_max > alpha_min {
        uniform_grid(alpha_min, alpha_max, points)
    } else {
        vec![alpha_min]
    };
    for alpha in grid {
        let p = PotentialParams::pt(m, alpha, s0, q)?;
        if !p.complex_levels_exist() {
            continue;
        }
        for n in 0..=n_max {
            let e = pt_level(&p, n)?.energy();
            table.push(vec![
                Cell::Fixed(alpha, 8),
                Cell::Int(n as i64),
                Cell::Energy(e),
            ]);
        }
    }
    Ok(table)
}

pub fn spectrum(params: &PotentialParams, n_max: Option<usize>) -> Result<Table, CliError> {
    let levels: Vec<usize> = match params.variant() {
        Variant::RealHulthen => {
            let valid = count_real_levels(params)?.valid;
            if valid.is_empty() {
                return Err(Error::NoBoundStates("the real well has no bound level".into()).into());
            }
            valid
                .into_iter()
                .filter(|&n| n_max.map_or(true, |max| n <= max))
                .collect()
        }
        Variant::PtSymmetric | Variant::PseudoHermitian => (0..=n_max.unwrap_or(5)).collect(),
        Variant::PtExponential => {
            return Err(CliError::usage(
                "pt-exp levels come from the q0roots command",
            ));
        }
    };
    let mut table = Table::new(
        "spectrum",
        &["n", "E_plus", "E_minus", "level_param", "epsilon"],
    );
    for n in levels {
        let state = level(params, n)?;
        table.push(vec![
            Cell::Int(n as i64),
            Cell::Energy(state.energy_pair.0),
            Cell::Energy(state.energy_pair.1),
            Cell::Fixed(state.level_param.value, 10),
            Cell::Fixed(state.epsilon, 10),
        ]);
    }
    Ok(table)
}

pub fn wavefunction(
    params: &PotentialParams,
    n: usize,
    x_min: Option<f64>,
    x_max: Option<f64>,
    points: usize,
) -> Result<Table, CliError> {
    need_points(points, 3)?;
    let alpha = params.alpha();
    let sample = match params.variant() {
        Variant::RealHulthen => {
            let state = level(params, n)?;
            let decay = alpha * state.epsilon;
            let lo = x_min.unwrap_or_else(|| params.physical_left_edge().unwrap_or(-40.0 / alpha));
            let hi = x_max.unwrap_or(lo.max(0.0) + 20.0 / decay);
            let grid = checked_grid(lo, hi, points)?;
            normalize(&sample_real(params, n, state.energy(), &grid)?)?
        }
        Variant::PtSymmetric | Variant::PseudoHermitian => {
            let state = level(params, n)?;
            let grid = checked_grid(
                x_min.unwrap_or(-PI / alpha),
                x_max.unwrap_or(PI / alpha),
                points,
            )?;
            let f = ComplexEigenfunction::new(params, n, state.energy())?;
            normalize_window(&f.sample(&grid)?)?
        }
        Variant::PtExponential => {
            let scan = q0_pt_eigenvalues(params, &Q0ScanConfig::default())?;
            let root = scan.roots.get(n).ok_or_else(|| {
                Error::NoBoundStates(format!(
                    "{} accepted q = 0 roots, level {n} requested",
                    scan.roots.len()
                ))
            })?;
            let grid = checked_grid(
                x_min.unwrap_or(-PI / alpha),
                x_max.unwrap_or(PI / alpha),
                points,
            )?;
            normalize_window(&sample_q0(
                params,
                root.script_e,
                &grid,
                &SeriesControl::default(),
            )?)?
        }
    };
    let mut table = Table::new("wavefunction", &["x", "re_psi", "im_psi", "abs_psi"]);
    for (x, v) in sample.x_grid.iter().zip(&sample.values) {
        table.push(vec![
            Cell::Fixed(*x, 8),
            Cell::Sci(v.re),
            Cell::Sci(v.im),
            Cell::Sci(v.norm()),
        ]);
    }
    Ok(table)
}

fn checked_grid(lo: f64, hi: f64, points: usize) -> Result<Vec<f64>, CliError> {
    if !(hi > lo) || !lo.is_finite() || !hi.is_finite() {
        return Err(CliError::usage(format!(
            "need finite --x-min < --x-max, got [{lo}, {hi}]"
        )));
    }
    Ok(uniform_grid(lo, hi, points))
}

pub fn verify(
    params: &PotentialParams,
    n: usize,
    x_min: Option<f64>,
    x_max: f64,
    points: usize,
    format: Format,
) -> Result<String, CliError> {
    let cfg = VerifyConfig {
        x_left: x_min,
        x_right: x_max,
        n_points: points,
    };
    let report = verify_closed_form(params, n, &cfg)?;
    let value = serde_json::to_value(&report).expect("report serializes");
    let mut map = Map::new();
    map.insert("command".into(), json!("verify"));
    if let Value::Object(fields) = value {
        map.extend(fields);
    }
    match format {
        Format::Json => Ok(format!("{}\n", Value::Object(map))),
        Format::Csv => {
            let mut table = Table::new(
                "verify",
                &[
                    "n",
                    "lambda_fd",
                    "lambda_closed",
                    "abs_diff",
                    "rel_diff",
                    "convergence_ratio",
                    "converged",
                    "x_left",
                    "x_right",
                    "n_points_coarse",
                    "n_points_fine",
                ],
            );
            table.push(vec![
                Cell::Int(n as i64),
                Cell::Sci(report.lambda_fd),
                Cell::Sci(report.lambda_closed),
                Cell::Sci(report.abs_diff),
                Cell::Sci(report.rel_diff),
                Cell::Fixed(report.convergence_ratio, 6),
                Cell::Bool(report.converged),
                Cell::Fixed(report.grid.x_left, 10),
                Cell::Fixed(report.grid.x_right, 10),
                Cell::Int(report.grid.n_points_coarse as i64),
                Cell::Int(report.grid.n_points_fine as i64),
            ]);
            Ok(table.render(Format::Csv))
        }
    }
}

pub fn q0roots(params: &PotentialParams, scan_points: usize, tol: f64) -> Result<Table, CliError> {
    if !(tol > 0.0) {
        return Err(CliError::usage("--tol must be positive"));
    }
    let cfg = Q0ScanConfig {
        points: scan_points,
        tol,
        ..Q0ScanConfig::default()
    };
    let scan = q0_pt_eigenvalues(params, &cfg)?;
    let mut found: Vec<_> = scan.roots.iter().chain(&scan.rejected).collect();
    found.sort_by(|a, b| a.script_e.total_cmp(&b.script_e));
    let mut table = Table::new(
        "q0roots",
        &["script_E", "E_plus", "E_minus", "residual", "accepted"],
    );
    for root in found {
        let (plus, minus) = root.energy_pair(params);
        table.push(vec![
            Cell::Fixed(root.script_e, 10),
            Cell::Energy(plus),
            Cell::Energy(minus),
            Cell::Sci(root.residual),
            Cell::Bool(root.accepted),
        ]);
    }
    Ok(table)
}
