//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::fs;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use afmsync::bogoliubov::anticrossing;
use afmsync::linalg::lyapunov_residual;
use afmsync::oracle::{default_rate_tol, integrate_to_steady_state};
use afmsync::sweep::{argmax, builtin_materials, sign_changes, SuiteTemplate};
use afmsync::{
    build_drift_matrix, build_noise_matrix, derive, is_stable, nonreciprocal_pair, run_material_suite, run_sweep,
    solve_lyapunov, sync_degree, Axis, CavityMode, CovarianceMatrix, FieldUnit, Matrix, ParamSet, SweepParam,
    SweepSpec, SystemParams,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

/// Smallest symplectic eigenvalue seen, shared by the physicality check.
#[derive(Default)]
struct Physicality {
    count: usize,
    min_nu: f64,
    failures: usize,
}

impl Physicality {
    fn new() -> Self {
        Physicality {
            count: 0,
            min_nu: f64::INFINITY,
            failures: 0,
        }
    }

    fn record(&mut self, v: &CovarianceMatrix) {
        self.count += 1;
        match v.symplectic_eigenvalues() {
            Ok(nu) => self.min_nu = self.min_nu.min(nu[0]),
            Err(_) => self.failures += 1,
        }
    }

    fn record_nu(&mut self, nu: Option<f64>) {
        if let Some(nu) = nu {
            self.count += 1;
            self.min_nu = self.min_nu.min(nu);
        }
    }
}

fn fig2() -> SystemParams {
    ParamSet::default().resolve().unwrap()
}

fn ms(d: Duration) -> String {
    format!("{:.3} ms", d.as_secs_f64() * 1e3)
}

fn vacuum_baseline() -> Outcome {
    let p = ParamSet {
        g_ab: 0.0,
        g_ac: 0.0,
        g_bc: 0.0,
        ..ParamSet::default()
    }
    .resolve()
    .unwrap();
    let run = || {
        let a = build_drift_matrix(&p).unwrap();
        let d = build_noise_matrix(&p).unwrap();
        let v = solve_lyapunov(&a, &d).unwrap();
        let s = sync_degree(&v).unwrap();
        (v, s)
    };
    run();
    let mut best = Duration::MAX;
    let mut result = None;
    for _ in 0..20 {
        let t = Instant::now();
        let r = run();
        best = best.min(t.elapsed());
        result = Some(r);
    }
    let (v, s) = result.unwrap();
    let half = Matrix::identity(6).scale(0.5);
    let dist = v
        .as_matrix()
        .as_slice()
        .iter()
        .zip(half.as_slice())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    let pass = dist <= 1e-10 && (s - 1.0).abs() <= 1e-10 && best < Duration::from_millis(1);
    outcome(pass, format!("max|V - I/2| = {dist:.1e}, |S - 1| = {:.1e}, {}", (s - 1.0).abs(), ms(best)))
}

/// Random stable instance of the three-mode model.
fn random_instance(rng: &mut ChaCha8Rng) -> SystemParams {
    loop {
        let h_ex_a = rng.gen_range(0.5..1.5);
        let h_ex_b = rng.gen_range(0.5..1.5);
        let h_an_a = rng.gen_range(0.0..0.1);
        let h_an_b = rng.gen_range(0.0..0.1);
        let mean = 0.5 * (h_ex_a + h_ex_b + h_an_a + h_an_b);
        let p = SystemParams {
            h_ex_a,
            h_ex_b,
            h_an_a,
            h_an_b,
            h: rng.gen_range(-0.3..0.3),
            g_ab: rng.gen_range(0.0..0.95) * mean,
            g_ac: rng.gen_range(0.0..0.1),
            g_bc: rng.gen_range(0.0..0.1),
            kappa_a: rng.gen_range(0.005..0.1),
            kappa_b: rng.gen_range(0.005..0.1),
            kappa_c: rng.gen_range(0.005..0.1),
            omega_c: rng.gen_range(0.0..1.5),
            delta_f: rng.gen_range(0.0..0.2),
            cavity_mode: if rng.gen() { CavityMode::Bright } else { CavityMode::Dark },
        };
        let a = build_drift_matrix(&p).unwrap();
        if is_stable(&a, 1e-3).unwrap() {
            return p;
        }
    }
}

fn oracle_equivalence(phys: &mut Physicality) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let t = Instant::now();
    let (mut worst_dist, mut worst_resid) = (0.0f64, 0.0f64);
    let mut failures = 0;
    for _ in 0..100 {
        let p = random_instance(&mut rng);
        let a = build_drift_matrix(&p).unwrap();
        let d = build_noise_matrix(&p).unwrap();
        let direct = solve_lyapunov(&a, &d);
        let ode = integrate_to_steady_state(&a, &d);
        let (Ok(direct), Ok(ode)) = (direct, ode) else {
            failures += 1;
            continue;
        };
        let dm = d.to_matrix();
        let resid = lyapunov_residual(a.as_matrix(), direct.as_matrix(), &dm).frobenius_norm() / dm.frobenius_norm();
        let dist = (direct.as_matrix() - ode.v_final.as_matrix()).frobenius_norm();
        worst_dist = worst_dist.max(dist);
        worst_resid = worst_resid.max(resid);
        phys.record(&direct);
        phys.record(&ode.v_final);
        debug_assert!(ode.threshold >= default_rate_tol(&d));
    }
    let elapsed = t.elapsed();
    let pass = failures == 0 && worst_dist < 1e-7 && worst_resid < 1e-9 && elapsed < Duration::from_secs(30);
    outcome(
        pass,
        format!(
            "100 instances, {failures} failed, max distance {worst_dist:.1e}, max relative residual {worst_resid:.1e}, {:.2} s",
            elapsed.as_secs_f64()
        ),
    )
}

fn fig2_reproduction(phys: &mut Physicality) -> Outcome {
    let t = Instant::now();
    let spec = SweepSpec {
        base: fig2(),
        axis1: Axis::linspace(SweepParam::H, 0.0, 0.4, 81).unwrap(),
        axis2: None,
        h_unit: FieldUnit::Hsp,
    };
    let rows = run_sweep(&spec).unwrap();
    let elapsed = t.elapsed();
    for r in &rows {
        phys.record_nu(r.min_symplectic);
    }
    let xs: Vec<f64> = rows.iter().map(|r| r.axis1.1).collect();
    let s12: Vec<_> = rows.iter().map(|r| r.s12).collect();
    let s21: Vec<_> = rows.iter().map(|r| r.s21).collect();
    let diff: Vec<_> = rows.iter().map(|r| r.s12.zip(r.s21).map(|(a, b)| a - b)).collect();
    let p12 = argmax(&xs, &s12).map(|m| m.0).unwrap_or(f64::NAN);
    let p21 = argmax(&xs, &s21).map(|m| m.0).unwrap_or(f64::NAN);
    let crossings = sign_changes(&xs, &diff);
    let cross = crossings.first().copied().unwrap_or(f64::NAN);
    let pass = (p12 - 0.1).abs() <= 0.005 + 1e-12
        && (p21 - 0.2).abs() <= 0.005 + 1e-12
        && crossings.len() == 1
        && (cross - 0.15).abs() <= 0.005
        && elapsed < Duration::from_secs(10);
    outcome(
        pass,
        format!(
            "argmax S12 = {p12}, argmax S21 = {p21}, Siso zero crossing at {cross:.5} ({} crossing(s)), {}",
            crossings.len(),
            ms(elapsed)
        ),
    )
}

fn fig3_reproduction() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for (mode, want) in [(CavityMode::Bright, 0.1), (CavityMode::Dark, 0.2)] {
        match anticrossing(&fig2().with_cavity_mode(mode), mode) {
            Ok(ac) => {
                let reduced = 2.0 * ac.g_beta_c;
                let dev = (ac.gap_at_resonance - reduced).abs();
                let ok = (ac.h_star - want).abs() <= 1e-4 && dev <= ac.perturbative_bound();
                pass &= ok;
                parts.push(format!(
                    "{}: h* = {:.6}, gap {:.4e} vs 2g_bc {:.4e} (|diff| {:.1e} <= bound {:.1e})",
                    mode.as_str(),
                    ac.h_star,
                    ac.gap_at_resonance,
                    reduced,
                    dev,
                    ac.perturbative_bound()
                ));
            }
            Err(e) => {
                pass = false;
                parts.push(format!("{}: {e}", mode.as_str()));
            }
        }
    }
    outcome(pass, parts.join("; "))
}

fn fig4_point(phys: &mut Physicality) -> Outcome {
    let t = Instant::now();
    let p = ParamSet {
        g_ab: 0.9,
        h: 1.8,
        ..ParamSet::default()
    }
    .resolve()
    .unwrap();
    let r = nonreciprocal_pair(&p);
    let elapsed = t.elapsed();
    phys.record_nu(r.min_symplectic_eigenvalue());
    let (Some(s12), Some(s21)) = (r.s12, r.s21) else {
        return outcome(false, format!("unstable direction: {:?}", r.first_error()));
    };
    let pass = (0.24..=0.30).contains(&s12)
        && (0.21..=0.27).contains(&s21)
        && s12 > s21
        && elapsed < Duration::from_secs(1);
    outcome(
        pass,
        format!(
            "S12 = {s12:.4} (want [0.24, 0.30]), S21 = {s21:.4} (want [0.21, 0.27]), S12 > S21: {}, {}",
            s12 > s21,
            ms(elapsed)
        ),
    )
}

fn monotonic_coupling() -> Outcome {
    let mut pass = true;
    let mut worst_step = f64::INFINITY;
    for h in [0.0, 0.5, 1.0, 1.8] {
        let base = ParamSet { h, ..ParamSet::default() }.resolve().unwrap();
        let mut prev = f64::INFINITY;
        for i in 0..50 {
            let g_ab = 0.8 + 0.2 * i as f64 / 50.0;
            let dq = derive(&SystemParams { g_ab, ..base }).unwrap();
            pass &= dq.g_alpha_c == dq.g_beta_c;
            pass &= dq.g_alpha_c < prev;
            if prev.is_finite() {
                worst_step = worst_step.min(prev - dq.g_alpha_c);
            }
            prev = dq.g_alpha_c;
        }
    }
    outcome(
        pass,
        format!("g_ac = g_bc gives equal couplings; smallest decrease between grid points {worst_step:.3e}"),
    )
}

fn material_suite(phys: &mut Physicality) -> Outcome {
    let template = SuiteTemplate {
        base: ParamSet::default(),
        axis1: Axis::linspace(SweepParam::GAb, 0.8, 1.0, 101).unwrap(),
        axis2: Some(Axis::linspace(SweepParam::H, 0.0, 2.0, 101).unwrap()),
    };
    let mut pass = true;
    let mut parts = Vec::new();
    for name in ["DPPH", "MnF2", "NaNiO2"] {
        let m = builtin_materials().into_iter().find(|m| m.name == name).unwrap();
        let t = Instant::now();
        let suite = run_material_suite(std::slice::from_ref(&m), &template);
        let elapsed = t.elapsed();
        let rows = match &suite[0].rows {
            Ok(rows) => rows,
            Err(e) => {
                pass = false;
                parts.push(format!("{name}: {e}"));
                continue;
            }
        };
        let baseline = nonreciprocal_pair(
            &ParamSet {
                g_ab: 1.0,
                h: 0.0,
                ..m.apply_to(&ParamSet::default())
            }
            .resolve()
            .unwrap(),
        );
        let (b12, b21) = (baseline.s12.unwrap_or(f64::INFINITY), baseline.s21.unwrap_or(f64::INFINITY));
        let stable: Vec<_> = rows.iter().filter(|r| r.stable_bright && r.stable_dark).collect();
        for r in rows {
            phys.record_nu(r.min_symplectic);
        }
        let frac = stable.len() as f64 / rows.len() as f64;
        let bounded = stable.iter().all(|r| {
            let (a, b) = (r.s12.unwrap(), r.s21.unwrap());
            a > 0.0 && a <= 1.0 + 1e-8 && b > 0.0 && b <= 1.0 + 1e-8 && r.s_iso.is_some_and(|s| s >= 0.0)
        });
        let better = stable.iter().filter(|r| r.s12.unwrap() > b12 && r.s21.unwrap() > b21).count();
        let ok = frac >= 0.95 && bounded && better > 0 && elapsed < Duration::from_secs(120);
        pass &= ok;
        parts.push(format!(
            "{name}: {:.1}% stable, bounds {}, {better} cells beat baseline, {:.2} s",
            100.0 * frac,
            if bounded { "ok" } else { "violated" },
            elapsed.as_secs_f64()
        ));
    }
    outcome(pass, parts.join("; "))
}

fn physicality(phys: &Physicality) -> Outcome {
    let pass = phys.failures == 0 && phys.count > 0 && phys.min_nu >= 0.5 - 1e-8;
    outcome(
        pass,
        format!(
            "{} covariance matrices, min symplectic eigenvalue {:.12}, {} evaluation failures",
            phys.count, phys.min_nu, phys.failures
        ),
    )
}

fn determinism() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_afmsync");
    let dir = match tempfile::tempdir() {
        Ok(d) => d,
        Err(e) => return outcome(false, format!("tempdir: {e}")),
    };
    let mut outputs = Vec::new();
    for k in 0..2 {
        let path = dir.path().join(format!("fig4_{k}.csv"));
        let status = Command::new(bin)
            .args(["sweep", "--preset", "fig4", "--out"])
            .arg(&path)
            .output();
        match status {
            Ok(o) if o.status.success() => outputs.push(fs::read(&path).unwrap_or_default()),
            Ok(o) => return outcome(false, format!("run {k} exited with {:?}", o.status.code())),
            Err(e) => return outcome(false, format!("run {k}: {e}")),
        }
    }
    let same = outputs[0] == outputs[1] && !outputs[0].is_empty();
    outcome(same, format!("two runs, {} bytes each, identical: {same}", outputs[0].len()))
}

fn main() -> ExitCode {
    let mut phys = Physicality::new();
    let results = [
        ("1 vacuum baseline", vacuum_baseline()),
        ("2 oracle equivalence", oracle_equivalence(&mut phys)),
        ("3 Fig. 2 peaks and reciprocal point", fig2_reproduction(&mut phys)),
        ("4 Fig. 3 anticrossings", fig3_reproduction()),
        ("5 Fig. 4 point values", fig4_point(&mut phys)),
        ("6 monotonic effective coupling", monotonic_coupling()),
        ("7 material suite", material_suite(&mut phys)),
    ];
    let results: Vec<_> = results
        .into_iter()
        .chain([("8 physicality", physicality(&phys)), ("9 determinism", determinism())])
        .collect();
    let mut failed = 0;
    for (name, o) in &results {
        println!("[{}] {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        failed += usize::from(!o.pass);
    }
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
