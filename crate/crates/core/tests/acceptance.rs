//! Acceptance criteria, one line each. Runs without the libtest harness so the
//! summary is always printed; exits non-zero when any criterion fails.

use num_complex::Complex64;
use reflectra::eigen::{apply_lambda_op, dunkl_closed_form, Eigenfunction};
use reflectra::fourier::{
    c_density, calibrate_dunkl, paley_wiener_check, plancherel_check, riemann_lebesgue_ratio, round_trips,
    SpectralDensity,
};
use reflectra::heat::{positivity_scan, HeatEval};
use reflectra::intertwine::{apply_e, v_eps, BesselKernelOp, Direction, MehlerKernel};
use reflectra::{smooth_bump, ChebliFamily, Result, SampledFunction, SpectralPoint};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

const EPS_SWEEP: [f64; 5] = [-1.0, -0.5, 0.0, 0.5, 1.0];

struct Outcome {
    pass: bool,
    summary: String,
}

fn outcome(pass: bool, summary: String) -> Result<Outcome> {
    Ok(Outcome { pass, summary })
}

fn families() -> Vec<ChebliFamily> {
    vec![ChebliFamily::dunkl(0.5).unwrap(), ChebliFamily::jacobi(1.5, 0.5).unwrap()]
}

fn eigenfunction(fam: &ChebliFamily, lambda: Complex64, eps: f64, radius: f64) -> Result<Eigenfunction> {
    Eigenfunction::new(fam, SpectralPoint::new(fam, lambda, eps)?, radius, 1e-11)
}

fn grid(reach: f64, per_unit: f64) -> Vec<f64> {
    let n = (reach * per_unit).round() as i64;
    (-n..=n).map(|i| i as f64 / per_unit).collect()
}

fn eigen_residual() -> Result<Outcome> {
    let start = Instant::now();
    let lambdas = [Complex64::new(0.7, 0.0), Complex64::new(2.3, 0.0), Complex64::new(0.0, 0.4)];
    let mut worst = 0.0f64;
    for fam in families() {
        for eps in EPS_SWEEP {
            for lam in lambdas {
                let f = eigenfunction(&fam, lam, eps, 6.0)?.sample(1.0 / 64.0)?;
                let l = apply_lambda_op(&fam, eps, &f)?;
                for i in 0..f.len() {
                    worst = worst.max((l.value(i) - Complex64::i() * lam * f.value(i)).norm());
                }
            }
        }
    }
    let t = start.elapsed();
    outcome(worst <= 1e-5 && t <= Duration::from_secs(5), format!("max residual {worst:.2e} <= 1e-5, {t:.2?} <= 5 s"))
}

fn dunkl_oracle() -> Result<Outcome> {
    let mut worst = 0.0f64;
    for alpha in [0.5, 1.2] {
        let fam = ChebliFamily::dunkl(alpha)?;
        for lam in [0.5, 2.0, 7.0] {
            let e = eigenfunction(&fam, Complex64::from(lam), 0.0, 10.0)?;
            for x in grid(10.0, 16.0) {
                worst = worst.max((e.at(x)? - dunkl_closed_form(alpha, lam, x)).norm());
            }
        }
    }
    outcome(worst <= 1e-8, format!("max deviation {worst:.2e} <= 1e-8 (alpha 0.5, 1.2)"))
}

fn boundedness() -> Result<Outcome> {
    let xs = grid(8.0, 16.0);
    let mut worst = 0.0f64;
    for fam in families() {
        for eps in EPS_SWEEP {
            for k in 0..=80 {
                let e = eigenfunction(&fam, Complex64::from(k as f64 * 0.25), eps, 8.0)?;
                for &x in &xs {
                    worst = worst.max(e.at(x)?.norm());
                }
            }
        }
    }
    let bound = std::f64::consts::SQRT_2 + 1e-9;
    outcome(worst <= bound, format!("sup |Psi| {worst:.12} <= sqrt(2) + 1e-9"))
}

fn imaginary_positivity() -> Result<Outcome> {
    let xs = grid(8.0, 16.0);
    let (mut min, mut worst_im) = (f64::INFINITY, 0.0f64);
    for fam in families() {
        for eps in EPS_SWEEP {
            for k in -10..=10 {
                let e = eigenfunction(&fam, Complex64::new(0.0, k as f64 * 0.1), eps, 8.0)?;
                for &x in &xs {
                    let v = e.at(x)?;
                    min = min.min(v.re);
                    worst_im = worst_im.max(v.im.abs());
                }
            }
        }
    }
    outcome(min > 0.0 && worst_im <= 1e-9, format!("min Psi(ib,x) {min:.3e} > 0, max |Im| {worst_im:.2e} <= 1e-9"))
}

fn transmutations() -> Result<Outcome> {
    let jac = ChebliFamily::jacobi(1.5, 0.5)?;
    let op = |eps, d| BesselKernelOp::new(&jac, eps, d);
    let f = SampledFunction::from_real_fn(3.0, 1.0 / 64.0, smooth_bump(0.0, 2.0, 1.0))?;
    let a = apply_e(&op(0.5, Direction::E)?, &apply_e(&op(0.5, Direction::EInv)?, &f)?)?;
    let b = apply_e(&op(0.5, Direction::TE)?, &apply_e(&op(0.5, Direction::TEInv)?, &f)?)?;
    let composition = a.max_abs_diff(&f).max(b.max_abs_diff(&f));

    let fine = SampledFunction::from_real_fn(3.0, 1.0 / 128.0, smooth_bump(0.0, 2.0, 1.0))?;
    let te = op(0.5, Direction::TE)?;
    let lhs = apply_e(&te, &fine.second_derivative()?)?;
    let tf = apply_e(&te, &fine)?;
    let rhs = tf.second_derivative()?;
    let r2 = te.rho_eps * te.rho_eps;
    let transmutation =
        (2..fine.len() - 2).map(|i| (lhs.value(i) - rhs.value(i) + tf.value(i) * r2).norm()).fold(0.0, f64::max);

    let mut endpoint = 0.0f64;
    for fam in families() {
        for eps in [-1.0, 1.0] {
            for d in [Direction::E, Direction::EInv, Direction::TE, Direction::TEInv] {
                endpoint = endpoint.max(apply_e(&BesselKernelOp::new(&fam, eps, d)?, &f)?.max_abs_diff(&f));
            }
        }
    }
    outcome(
        composition <= 1e-6 && transmutation <= 1e-4 && endpoint == 0.0,
        format!("composition {composition:.2e} <= 1e-6, transmutation {transmutation:.2e} <= 1e-4, |E_(+-1) - id| = {endpoint}"),
    )
}

fn mehler() -> Result<Outcome> {
    let fam = ChebliFamily::dunkl(0.5)?;
    let mut worst = 0.0f64;
    for eps in EPS_SWEEP {
        let mk = MehlerKernel::new(&fam, eps)?;
        for lam in [0.0, 1.5, 4.0] {
            let e = eigenfunction(&fam, Complex64::from(lam), eps, 2.0)?;
            for x in [0.5, 2.0] {
                worst = worst.max((mk.laplace(x, Complex64::from(lam)) - e.at(x)?).norm());
            }
        }
    }
    outcome(worst <= 1e-6, format!("max |int K e^(i lambda y) dy - Psi| {worst:.2e} <= 1e-6"))
}

fn bump(step: f64, center: f64) -> Result<SampledFunction> {
    SampledFunction::from_real_fn(3.0, step, smooth_bump(center, 2.0, 10.0))
}

fn densities(fam: &ChebliFamily) -> Result<Vec<SpectralDensity>> {
    EPS_SWEEP.iter().map(|&e| SpectralDensity::new(fam, e)).collect()
}

fn round_trip() -> Result<Outcome> {
    let (h, lmax, dt) = (1.0 / 64.0, 40.0, 0.05);
    let floor = 1e-12;
    let mut lines = Vec::new();
    let mut pass = true;
    for fam in families() {
        let ds = densities(&fam)?;
        let start = Instant::now();
        let base = round_trips(&ds, &bump(h, 0.3)?, lmax, dt)?;
        let t = start.elapsed();
        let finer = round_trips(&ds, &bump(0.5 * h, 0.3)?, lmax, dt)?;
        let wider = round_trips(&ds, &bump(h, 0.3)?, 2.0 * lmax, 0.6 * dt)?;
        let worst = base.iter().map(|r| r.error).fold(0.0, f64::max);
        // non-increasing up to 1% once errors reach rounding level
        let ratio = base
            .iter()
            .zip(finer.iter().zip(&wider))
            .map(|(b, (f, w))| ((f.error + floor) / (b.error + floor)).max((w.error + floor) / (b.error + floor)))
            .fold(0.0, f64::max);
        pass &= worst <= 1e-4 && ratio <= 1.01 && t <= Duration::from_secs(30);
        lines.push(format!("{}: error {worst:.2e}, refinement ratio {ratio:.3}, {t:.2?}", fam.label()));
    }
    outcome(pass, lines.join("; "))
}

fn plancherel() -> Result<Outcome> {
    let mut worst = 0.0f64;
    for fam in families() {
        for d in densities(&fam)? {
            let r = plancherel_check(&d, &bump(1.0 / 64.0, 0.3)?, &bump(1.0 / 64.0, -0.4)?, 40.0, 0.05)?;
            worst = worst.max(r.rel).max(r.l2_rel);
        }
    }
    outcome(worst <= 1e-3, format!("max relative discrepancy {worst:.2e} <= 1e-3"))
}

fn paley_wiener() -> Result<Outcome> {
    let f = SampledFunction::from_real_fn(1.25, 1.0 / 256.0, smooth_bump(0.0, 1.0, 1.0))?;
    let etas: Vec<f64> = (10..=120).map(|k| k as f64 * 0.5).collect();
    let (mut r_lo, mut r_hi, mut ext, mut rl) = (f64::INFINITY, 0.0f64, 0.0f64, 0.0f64);
    for fam in families() {
        for eps in EPS_SWEEP {
            let pw = paley_wiener_check(&fam, eps, &f, 1.0, &etas, &[0.0], &[3.0], 40.0)?;
            r_lo = r_lo.min(pw.fit.r_fit);
            r_hi = r_hi.max(pw.fit.r_fit);
            ext = ext.max(pw.extension_ratios[0].1);
            rl = rl.max(riemann_lebesgue_ratio(&fam, eps, &f, (0.0, 10.0), (30.0, 40.0), 0.1)?);
        }
    }
    outcome(
        r_lo >= 0.95 && r_hi <= 1.05 && ext <= 1.01 && rl < 1e-3,
        format!("R_fit in [{r_lo:.4}, {r_hi:.4}], decay sup ratio {ext:.3} <= 1.01, Riemann-Lebesgue {rl:.2e} < 1e-3"),
    )
}

fn heat() -> Result<Outcome> {
    let start = Instant::now();
    let axis = grid(4.0, 16.0);
    let (mut min, mut origin) = (f64::INFINITY, 0.0f64);
    for fam in families() {
        for eps in EPS_SWEEP {
            for s in [0.25, 1.0] {
                let r = positivity_scan(&HeatEval::new(&fam, eps, s, 1e-12)?, &axis, &axis)?;
                min = min.min(r.min);
                origin = origin.max(r.origin_error.unwrap_or(f64::NAN));
            }
        }
    }
    let t = start.elapsed();
    outcome(
        min >= -1e-8 && origin <= 1e-8 && t <= Duration::from_secs(60),
        format!("min W {min:.3e} >= -1e-8, origin error {origin:.2e} <= 1e-8, {t:.2?} <= 60 s"),
    )
}

fn intertwiner_positivity() -> Result<Outcome> {
    let fam = ChebliFamily::dunkl(0.5)?;
    let f = SampledFunction::from_real_fn(3.0, 1.0 / 64.0, smooth_bump(0.4, 1.5, 1.0))?;
    let mut min = f64::INFINITY;
    for eps in EPS_SWEEP {
        let mk = MehlerKernel::new(&fam, eps)?;
        for x in grid(3.0, 16.0) {
            min = min.min(v_eps(&mk, &f, x)?.re);
        }
    }
    outcome(min >= -1e-10, format!("min V f {min:.3e} >= -1e-10"))
}

fn calibration() -> Result<Outcome> {
    let mut drift = 0.0f64;
    for alpha in [0.2, 0.5, 1.0, 1.5] {
        let base = calibrate_dunkl(alpha, 1.0)?;
        for width in [0.75, 1.5, 2.0] {
            drift = drift.max((calibrate_dunkl(alpha, width)? / base - 1.0).abs());
        }
    }
    let jac = ChebliFamily::jacobi(1.5, 0.5)?;
    let slope = |a: f64, b: f64| -> Result<f64> { Ok((c_density(&jac, b)? / c_density(&jac, a)?).ln() / (b / a).ln()) };
    let high = slope(10.0, 100.0)? / 4.0 - 1.0;
    let low = slope(1e-3, 1e-2)? / 2.0 - 1.0;
    outcome(
        drift <= 1e-6 && high.abs() <= 0.05 && low.abs() <= 0.1,
        format!("c_alpha drift {drift:.2e} <= 1e-6 (alpha 0.2, 0.5, 1, 1.5), slope deviations {high:+.4} / {low:+.4}"),
    )
}

type Criterion = (&'static str, fn() -> Result<Outcome>);

fn main() {
    let criteria: [Criterion; 12] = [
        ("eigen-equation residual", eigen_residual),
        ("power-weight closed form", dunkl_oracle),
        ("boundedness on the real axis", boundedness),
        ("positivity on the imaginary axis", imaginary_positivity),
        ("transmutation compositions", transmutations),
        ("Laplace representation", mehler),
        ("inversion round trip", round_trip),
        ("Plancherel identity", plancherel),
        ("Paley-Wiener and Riemann-Lebesgue", paley_wiener),
        ("heat kernel positivity", heat),
        ("intertwiner positivity", intertwiner_positivity),
        ("calibration stability", calibration),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (pass, summary) = match catch_unwind(AssertUnwindSafe(run)) {
            Ok(Ok(o)) => (o.pass, o.summary),
            Ok(Err(e)) => (false, format!("error: {e}")),
            Err(_) => (false, "panicked".to_string()),
        };
        failed += usize::from(!pass);
        let tag = if pass { "PASS" } else { "FAIL" };
        println!("{tag} {:>2} {name}: {summary} [{:.1?}]", k + 1, start.elapsed());
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
