//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::process::Command;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hulthen_core::model::{
    default_reflection_point, potential_by_substitution, potential_value, symmetry_deviation,
};
use hulthen_core::nu::{k_candidates, lambda_n, reduce, HypergeometricTypeEq, KRoot};
use hulthen_core::oracle::{verify_closed_form, VerifyConfig};
use hulthen_core::specfun::{jacobi_p, kummer_1f1, SeriesControl};
use hulthen_core::spectra::{
    count_real_levels, epsilon_route, pseudo_level, pt_level, q0_eigenfunction_value,
    q0_pt_eigenvalues, real_hulthen_level, scan_minima,
};
use hulthen_core::wavefun::{
    eval_q0, eval_real, ode_residual_refined, q0_prefactor, ComplexEigenfunction,
};
use hulthen_core::{Complex64, PotentialParams, Q0ScanConfig, SymmetryMode};

type Outcome = Result<String, String>;

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

// Ground-state binding energies E0 - m of the scalar well, S0 = 0.25, m = 1,
// as printed in the published table; None marks the empty cell.
const PUBLISHED_TABLE: [(f64, [Option<f64>; 3]); 4] = [
    (0.5, [None, Some(0.802776), Some(0.614831)]),
    (1.0, [Some(0.600781), Some(0.260846), Some(0.506699)]),
    (1.5, [Some(0.182955), Some(0.204579), Some(0.474727)]),
    (2.0, [Some(0.126170), Some(0.180312), Some(0.459301)]),
];

fn table_reproduction() -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    let mut problems = Vec::new();
    for (q, cells) in PUBLISHED_TABLE {
        for (alpha, published) in [0.5, 1.0, 2.0].into_iter().zip(cells) {
            let p = PotentialParams::pt(1.0, alpha, 0.25, q).map_err(|e| e.to_string())?;
            match (published, p.complex_levels_exist()) {
                (Some(v), true) => {
                    let e = pt_level(&p, 0).map_err(|e| e.to_string())?.energy() - 1.0;
                    worst = worst.max((e - v).abs());
                    if (e - v).abs() > 5e-5 {
                        problems.push(format!("({q}, {alpha}): {e:.6} vs {v}"));
                    }
                }
                (None, false) => {}
                (v, exists) => {
                    problems.push(format!("({q}, {alpha}): published {v:?}, exists {exists}"))
                }
            }
        }
    }
    let cli = hulthen_cli::table1().map_err(|e| e.message)?;
    let empty_cell = cli.rows[0][2].text();
    let elapsed = start.elapsed().as_secs_f64();
    check(
        problems.is_empty() && empty_cell == "none" && elapsed < 1.0,
        format!(
            "11 cells, max |diff| = {worst:.2e}, (0.5, 0.5) -> {empty_cell}, {elapsed:.3} s {}",
            problems.join("; ")
        ),
    )
}

fn weak_coupling_limit() -> Outcome {
    let target = 5f64.sqrt() / 2.0;
    let energies = [0.5, 1.0, 1.5, 2.0]
        .iter()
        .map(|&q| {
            let p = PotentialParams::pt(1.0, 1.0, 1e-6, q)?;
            Ok(pt_level(&p, 0)?.energy())
        })
        .collect::<hulthen_core::Result<Vec<f64>>>()
        .map_err(|e| e.to_string())?;
    let worst = energies
        .iter()
        .map(|e| (e - target).abs())
        .fold(0.0, f64::max);
    let spread = energies.iter().copied().fold(f64::NEG_INFINITY, f64::max)
        - energies.iter().copied().fold(f64::INFINITY, f64::min);
    check(
        worst <= 1e-4 && spread <= 1e-4,
        format!("max |E0 - sqrt(5)/2| = {worst:.2e}, spread over q = {spread:.2e}"),
    )
}

fn route_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut worst: f64 = 0.0;
    let mut compared = 0;
    for _ in 0..100 {
        let q = rng.gen_range(0.2..3.0);
        let alpha = rng.gen_range(0.1..2.0);
        let s0 = rng.gen_range(1e-6..1.0) * q * alpha / 2.0;
        let p = PotentialParams::real(1.0, alpha, s0, q).map_err(|e| e.to_string())?;
        for n in count_real_levels(&p).map_err(|e| e.to_string())?.valid {
            let closed = real_hulthen_level(&p, n)
                .map_err(|e| e.to_string())?
                .energy();
            let eps = epsilon_route(&p, n).map_err(|e| e.to_string())?;
            let via_eps = (1.0 - (alpha * eps).powi(2)).sqrt();
            worst = worst.max((closed - via_eps).abs());
            compared += 1;
        }
    }
    check(
        worst <= 1e-10 && compared > 0,
        format!("100 parameter draws, {compared} levels, max |diff| = {worst:.2e}"),
    )
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let ln_half = 0.5f64.ln();
    let suite = [
        (
            "hulthen q=1 n=0",
            PotentialParams::real(1.0, 0.25, 0.25, 1.0),
            0,
            None,
            80.0,
            5e-4,
        ),
        (
            "hulthen q=1 n=1",
            PotentialParams::real(1.0, 0.25, 0.25, 1.0),
            1,
            None,
            80.0,
            5e-4,
        ),
        (
            "woods-saxon q=-1",
            PotentialParams::real(1.0, 1.0, 3.0, -1.0),
            0,
            Some(-40.0),
            40.0,
            1e-5,
        ),
        (
            "q=0.5",
            PotentialParams::real(1.0, 0.5, 0.5, 0.5),
            0,
            Some(ln_half / 0.5),
            60.0,
            1e-5,
        ),
    ];
    let mut lines = Vec::new();
    let mut ok = true;
    for (name, params, n, x_left, x_right, tol) in suite {
        let params = params.map_err(|e| e.to_string())?;
        let cfg = VerifyConfig {
            x_left,
            x_right,
            n_points: 7999,
        };
        let r = verify_closed_form(&params, n, &cfg).map_err(|e| e.to_string())?;
        let pass = r.rel_diff <= tol && (3.5..=4.5).contains(&r.convergence_ratio);
        ok &= pass && r.grid.n_points_fine <= 16000;
        lines.push(format!(
            "{name}: rel {:.1e} ratio {:.2}",
            r.rel_diff, r.convergence_ratio
        ));
        if name == "hulthen q=1 n=0" {
            ok &= (r.lambda_closed + 0.2430826).abs() < 1e-7;
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    ok &= elapsed < 30.0;
    check(ok, format!("{}; {elapsed:.2} s", lines.join(", ")))
}

fn residual_case<F>(
    params: &PotentialParams,
    energy: f64,
    psi: F,
    lo: f64,
    hi: f64,
) -> Result<(f64, f64, f64), String>
where
    F: Fn(f64) -> hulthen_core::Result<Complex64> + Copy,
{
    let exact = ode_residual_refined(params, energy, psi, lo, hi, 1e-3, params.variant())
        .map_err(|e| e.to_string())?;
    let off = ode_residual_refined(params, 1.01 * energy, psi, lo, hi, 1e-3, params.variant())
        .map_err(|e| e.to_string())?;
    Ok((
        exact.max_relative,
        exact.convergence_ratio.unwrap_or(f64::NAN),
        off.max_relative / exact.max_relative,
    ))
}

fn ode_residual_suite() -> Outcome {
    let mut cases: Vec<(String, (f64, f64, f64))> = Vec::new();
    let real = PotentialParams::real(1.0, 0.25, 0.25, 1.0).map_err(|e| e.to_string())?;
    for n in 0..2 {
        let e = real_hulthen_level(&real, n)
            .map_err(|e| e.to_string())?
            .energy();
        let r = residual_case(&real, e, |x| eval_real(&real, n, e, x), 0.1, 40.0)?;
        cases.push((format!("real n={n}"), r));
    }
    for q in [0.6, 0.7, 0.8] {
        let pt = PotentialParams::pt(1.0, 1.0, 0.4 * q, q).map_err(|e| e.to_string())?;
        let ps = PotentialParams::pseudo(1.0, 1.0, 0.4 * q, q).map_err(|e| e.to_string())?;
        for n in 0..3 {
            for (label, p, e) in [
                (
                    "pt",
                    pt,
                    pt_level(&pt, n).map_err(|e| e.to_string())?.energy(),
                ),
                (
                    "pseudo",
                    ps,
                    pseudo_level(&ps, n).map_err(|e| e.to_string())?.energy(),
                ),
            ] {
                let f = ComplexEigenfunction::new(&p, n, e).map_err(|e| e.to_string())?;
                let r = residual_case(&p, e, |x| f.eval(x), -3.0, 3.0)?;
                cases.push((format!("{label} q={q} n={n}"), r));
            }
        }
    }
    let ctrl = SeriesControl::default();
    let mut q0_roots = 0;
    for s0 in [0.5, 1.0, 2.0, 5.0] {
        let p = PotentialParams::exponential(1.0, 1.0, s0).map_err(|e| e.to_string())?;
        let scan = q0_pt_eigenvalues(&p, &Q0ScanConfig::default()).map_err(|e| e.to_string())?;
        for root in &scan.roots {
            let (e, _) = root.energy_pair(&p);
            let se = root.script_e;
            let r = residual_case(&p, e, |x| eval_q0(&p, se, x, &ctrl), -2.0, 4.0)?;
            cases.push((format!("q=0 S0={s0} root {se:.6}"), r));
            q0_roots += 1;
        }
    }
    let mut failures: Vec<String> = Vec::new();
    let mut form_residual = f64::NAN;
    if q0_roots == 0 {
        let p = PotentialParams::exponential(1.0, 1.0, 5.0).map_err(|e| e.to_string())?;
        let scan = q0_pt_eigenvalues(&p, &Q0ScanConfig::default()).map_err(|e| e.to_string())?;
        let deepest = scan
            .rejected
            .iter()
            .min_by(|a, b| a.residual.total_cmp(&b.residual))
            .ok_or("no q=0 minimum found")?;
        let (e, _) = deepest.energy_pair(&p);
        let se = deepest.script_e;
        let r = ode_residual_refined(
            &p,
            e,
            |x| eval_q0(&p, se, x, &ctrl),
            -2.0,
            4.0,
            1e-3,
            p.variant(),
        )
        .map_err(|e| e.to_string())?;
        form_residual = r.max_relative;
        if !(form_residual <= 1e-5) {
            failures.push(format!("q=0 minimum {se:.6}: res {form_residual:.1e}"));
        }
    }
    failures.extend(
        cases
            .iter()
            .filter(|(_, (res, ratio, inflation))| {
                !(*res <= 1e-5 && (3.5..=4.5).contains(ratio) && *inflation >= 100.0)
            })
            .map(|(name, (res, ratio, inf))| {
                format!("{name}: res {res:.1e} ratio {ratio:.2} x{inf:.0}")
            }),
    );
    let max_res = cases.iter().map(|c| c.1 .0).fold(0.0, f64::max);
    let min_inflation = cases.iter().map(|c| c.1 .2).fold(f64::INFINITY, f64::min);
    check(
        failures.is_empty(),
        format!(
            "{} eigenfunctions ({q0_roots} q=0 roots), max residual {max_res:.1e}, min 1% inflation x{min_inflation:.0}; q=0 form at deepest minimum {form_residual:.1e} {}",
            cases.len(),
            failures.join("; ")
        ),
    )
}

fn nu_engine_suite() -> Outcome {
    let c = Complex64::from;
    let (s0, q, alpha, m) = (0.25, 1.0, 0.25, 1.0);
    let p = PotentialParams::real(m, alpha, s0, q).map_err(|e| e.to_string())?;
    let sym = p.symbols();
    let mut problems = Vec::new();
    let mut literal_counts = Vec::new();
    let levels = count_real_levels(&p).map_err(|e| e.to_string())?.valid;
    let mut worst_lambda: f64 = 0.0;
    for &n in &levels {
        let eps = epsilon_route(&p, n).map_err(|e| e.to_string())?;
        let eq = HypergeometricTypeEq::hulthen(c(s0), c(q), c(sym.gamma2), c(sym.beta2), c(eps))
            .map_err(|e| e.to_string())?;
        let ks = k_candidates(&eq).map_err(|e| e.to_string())?;
        if (ks.plus - c(sym.beta2 + sym.a * eps)).norm() > 1e-10
            || (ks.minus - c(sym.beta2 - sym.a * eps)).norm() > 1e-10
        {
            problems.push(format!("hulthen k at n={n}"));
        }
        let red = reduce(&eq).map_err(|e| e.to_string())?;
        literal_counts.push(red.admissible_count);
        if red.regular_count != Some(1) || red.branch.k_root != KRoot::Minus {
            problems.push(format!("branch at n={n}: {:?}", red.regular_count));
        }
        worst_lambda = worst_lambda.max((red.lambda - lambda_n(&red, &eq, n)).norm());
    }
    for (m, alpha, e) in [(1.0, 1.0, 0.5), (1.0, 0.5, 0.3), (2.0, 1.5, 1.1)] {
        let eq = HypergeometricTypeEq::pt_exponential(m, alpha, e).map_err(|e| e.to_string())?;
        let ks = k_candidates(&eq).map_err(|e| e.to_string())?;
        let base = -2.0 * m / (alpha * alpha);
        if (ks.plus - c(base + 2.0 * e / alpha)).norm() > 1e-10
            || (ks.minus - c(base - 2.0 * e / alpha)).norm() > 1e-10
        {
            problems.push(format!("exponential k at alpha={alpha}"));
        }
        let red = reduce(&eq).map_err(|e| e.to_string())?;
        if red.branch.k_root != KRoot::Minus {
            problems.push("exponential branch".into());
        }
    }
    if worst_lambda > 1e-9 {
        problems.push(format!("lambda gap {worst_lambda:.1e}"));
    }
    check(
        problems.is_empty() && !levels.is_empty(),
        format!(
            "k+- match both closed forms; one branch with tau' < 0 and phi regular at both ends \
             (tau' < 0 alone: {literal_counts:?}); max |lambda - lambda_n| = {worst_lambda:.1e} over n = 0..{} {}",
            levels.len() - 1,
            problems.join("; ")
        ),
    )
}

fn falling(x: Complex64, j: usize) -> Complex64 {
    (0..j).fold(Complex64::from(1.0), |acc, i| acc * (x - i as f64))
}

fn rodrigues(n: usize, a: Complex64, b: Complex64, x: Complex64) -> Complex64 {
    let binom =
        |n: usize, j: usize| (0..j).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64);
    let mut sum = Complex64::from(0.0);
    for j in 0..=n {
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        sum += binom(n, j)
            * sign
            * falling(a + n as f64, j)
            * falling(b + n as f64, n - j)
            * (1.0 - x).powu((n - j) as u32)
            * (1.0 + x).powu(j as u32);
    }
    let factorial: f64 = (1..=n).map(|k| k as f64).product();
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    sum * sign / (2f64.powi(n as i32) * factorial)
}

fn special_function_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut point = |r: f64| Complex64::new(rng.gen_range(-r..r), rng.gen_range(-r..r));
    let ctrl = SeriesControl::default();
    let one = Complex64::from(1.0);
    let mut kummer_worst: f64 = 0.0;
    let mut drawn = 0;
    while drawn < 20 {
        let z = point(5.0);
        if z.norm() > 5.0 || z.norm() < 1e-6 {
            continue;
        }
        drawn += 1;
        let a = point(3.0);
        let e = z.exp();
        let v1 = kummer_1f1(a, a, z, &ctrl).map_err(|e| e.to_string())?.value;
        let v2 = kummer_1f1(one, 2.0 * one, z, &ctrl)
            .map_err(|e| e.to_string())?
            .value;
        let expected = (e - one) / z;
        kummer_worst = kummer_worst
            .max((v1 - e).norm() / e.norm())
            .max((v2 - expected).norm() / expected.norm());
    }
    let mut jacobi_worst: f64 = 0.0;
    for _ in 0..50 {
        let (a, b, x) = (point(2.0), point(2.0), point(1.0));
        for n in 0..=5 {
            let rec = jacobi_p(n, a, b, x).map_err(|e| e.to_string())?;
            let brute = rodrigues(n, a, b, x);
            jacobi_worst = jacobi_worst.max((rec - brute).norm() / brute.norm().max(1.0));
        }
    }
    check(
        kummer_worst <= 1e-12 && jacobi_worst <= 1e-10,
        format!("1F1 identities max rel {kummer_worst:.1e} (20 points); Jacobi vs Rodrigues max {jacobi_worst:.1e} (50 draws, n <= 5)"),
    )
}

fn symmetry_suite() -> Outcome {
    let grid: Vec<f64> = (0..101).map(|i| -5.0 + 0.1 * i as f64).collect();
    let mut worst: f64 = 0.0;
    let mut substitution: f64 = 0.0;
    for q in [0.5, 1.5, -0.7] {
        for alpha in [0.5, 1.0, 2.0] {
            let pt = PotentialParams::pt(1.0, alpha, 0.25, q).map_err(|e| e.to_string())?;
            let ps = PotentialParams::pseudo(1.0, alpha, 0.25, q).map_err(|e| e.to_string())?;
            for (p, mode) in [(pt, SymmetryMode::Pt), (ps, SymmetryMode::PseudoHermitian)] {
                let xi = default_reflection_point(&p, mode);
                worst =
                    worst.max(symmetry_deviation(&p, xi, mode, &grid).map_err(|e| e.to_string())?);
                for &x in &grid {
                    let direct = potential_value(&p, x).map_err(|e| e.to_string())?;
                    substitution =
                        substitution.max((direct - potential_by_substitution(&p, x)).norm());
                }
            }
        }
    }
    let pt = PotentialParams::pt(1.0, 1.0, 0.25, 1.0).map_err(|e| e.to_string())?;
    let at = (potential_value(&pt, 0.7).map_err(|e| e.to_string())?
        - potential_by_substitution(&pt, 0.7))
    .norm();
    check(
        worst <= 1e-12 && substitution <= 1e-12 && at <= 1e-12,
        format!("max reflection deviation {worst:.1e}, formula vs substitution {substitution:.1e}"),
    )
}

fn q0_properties() -> Outcome {
    let ctrl = SeriesControl::default();
    let tight = ctrl.tightened(10.0);
    let mut accepted = 0;
    let mut problems = Vec::new();
    for alpha in [1.0, 0.5] {
        for s0 in [0.25, 0.5, 1.0, 2.0, 3.0, 5.0] {
            let p = PotentialParams::exponential(1.0, alpha, s0).map_err(|e| e.to_string())?;
            let scan =
                q0_pt_eigenvalues(&p, &Q0ScanConfig::default()).map_err(|e| e.to_string())?;
            for root in &scan.roots {
                accepted += 1;
                let again = q0_eigenfunction_value(&p, root.script_e, &tight)
                    .map_err(|e| e.to_string())?
                    .norm();
                if (again - root.residual).abs() > 10.0 * ctrl.rel_tol * scan.max_abs {
                    problems.push(format!("unstable residual at S0={s0}"));
                }
                let psi0 = eval_q0(&p, root.script_e, 0.0, &ctrl).map_err(|e| e.to_string())?;
                let prefactor = q0_prefactor(&p, root.script_e, 0.0).norm();
                if psi0.norm() > 10.0 * root.residual * prefactor {
                    problems.push(format!("psi(0) = {:.1e} at S0={s0}", psi0.norm()));
                }
            }
        }
    }
    let mut weak_roots = 0;
    for s0 in [1e-2, 1e-4, 1e-6] {
        let p = PotentialParams::exponential(1.0, 1.0, s0).map_err(|e| e.to_string())?;
        weak_roots += q0_pt_eigenvalues(&p, &Q0ScanConfig::default())
            .map_err(|e| e.to_string())?
            .roots
            .len();
    }
    // The scan itself must find a genuine real zero when one exists.
    let synthetic = scan_minima(
        |x| Ok(((x - 0.3137) * (x + 0.2)).abs()),
        0.0,
        1.0,
        &Q0ScanConfig::default(),
    )
    .map_err(|e| e.to_string())?;
    let found = synthetic.roots.len() == 1 && (synthetic.roots[0].script_e - 0.3137).abs() < 1e-8;
    check(
        problems.is_empty() && weak_roots == 0 && found,
        format!(
            "{accepted} accepted roots over 12 scans, all stable; S0 -> 0 sweep: {weak_roots} roots; synthetic zero recovered: {found} {}",
            problems.join("; ")
        ),
    )
}

fn determinism() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_kgh");
    let runs: [&[&str]; 10] = [
        &["table1"],
        &["table1", "--format", "json"],
        &["figure1", "--points", "50"],
        &["figure2", "--points", "50", "--format", "json"],
        &["spectrum", "--alpha", "0.25"],
        &[
            "spectrum",
            "--variant",
            "pt",
            "--s0",
            "0.2",
            "--q",
            "0.5",
            "--format",
            "json",
        ],
        &["wavefunction", "--alpha", "0.25", "--points", "801"],
        &[
            "wavefunction",
            "--variant",
            "pseudo",
            "--s0",
            "0.2",
            "--q",
            "0.5",
            "--points",
            "301",
        ],
        &["verify", "--alpha", "0.25", "--format", "json"],
        &["q0roots", "--s0", "2", "--scan-points", "501"],
    ];
    let mut differing = Vec::new();
    for args in runs {
        let out = |args: &[&str]| {
            Command::new(bin)
                .args(args)
                .output()
                .map_err(|e| e.to_string())
        };
        let (a, b) = (out(args)?, out(args)?);
        if !a.status.success()
            || a.stdout.is_empty()
            || a.stdout != b.stdout
            || a.stderr != b.stderr
        {
            differing.push(args.join(" "));
        }
    }
    check(
        differing.is_empty(),
        format!(
            "{} invocations byte-identical across two runs {}",
            runs.len(),
            differing.join("; ")
        ),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("table reproduction", table_reproduction),
        ("weak-coupling limit", weak_coupling_limit),
        ("route equivalence", route_equivalence),
        ("finite-difference oracle", oracle_equivalence),
        ("ODE residuals", ode_residual_suite),
        ("NU engine", nu_engine_suite),
        ("special functions", special_function_suite),
        ("potential symmetry", symmetry_suite),
        ("q = 0 root properties", q0_properties),
        ("CLI determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
