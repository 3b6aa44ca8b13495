//! The `reflectra` command line.
//!
//! Exit codes: 0 on success, 1 when a numerical check fails, 2 on usage,
//! configuration or input errors.

pub mod config;
pub mod io;

use crate::chebli::ChebliFamily;
use crate::eigen::{Eigenfunction, SpectralPoint};
use crate::error::{Error, Result};
use crate::fourier::{
    forward, forward_at, inverse, paley_wiener_check, plancherel_check, riemann_lebesgue_ratio, round_trip,
    SpectralDensity, SpectralGrid, TransformResult,
};
use crate::grid::{smooth_bump, SampledFunction};
use crate::heat::{positivity_scan, HeatEval};
use crate::intertwine::{apply_e, t_v_eps, v_eps, BesselKernelOp, Direction, MehlerKernel};
use crate::report::{CheckRecord, VerifyReport};
use crate::verify::{verify_suite, Numerics, VerifyConfig};
use clap::{Args, Parser, Subcommand, ValueEnum};
use config::load_config;
use io::{function_rows, read_complex_rows, read_function, write_table};
use num_complex::Complex64;
use serde::Serialize;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

#[derive(Debug, Parser)]
#[command(name = "reflectra", version, about = "Differential-reflection operators: eigenfunctions, transforms, heat kernels")]
struct Cli {
    /// Worker threads; 0 picks one per core.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    /// Directory for reports; relative --out paths are resolved against it.
    #[arg(long, global = true)]
    out_dir: Option<PathBuf>,
    /// Record per-check runtimes in verify reports.
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the admissibility hypotheses of a weight and export it.
    Family {
        #[command(flatten)]
        setup: Setup,
        /// CSV `x,A,log_derivative,tail_residual` on (0, xmax].
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate the eigenfunction on a grid.
    #[command(subcommand)]
    Eigen(EigenCommand),
    /// Transmutation and intertwining operators.
    #[command(subcommand)]
    Intertwine(IntertwineCommand),
    /// Forward and inverse transforms and their diagnostics.
    #[command(subcommand)]
    Transform(TransformCommand),
    /// Heat kernel tabulation and positivity scan.
    #[command(subcommand)]
    Heat(HeatCommand),
    /// Run the property suite and emit a JSON report.
    #[command(subcommand)]
    Verify(VerifyCommand),
}

#[derive(Debug, Subcommand)]
enum EigenCommand {
    /// Sample Psi(lambda, x) and phi(x) on [-xmax, xmax].
    Eval {
        #[command(flatten)]
        setup: Setup,
        /// Spectral parameter as `re,im` or `re`.
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        /// CSV destination; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
enum IntertwineCommand {
    /// Apply a transmutation or the intertwining operator to a grid function.
    Apply {
        #[command(flatten)]
        setup: Setup,
        /// Operator to apply; V and tV need a Dunkl family.
        #[arg(long, value_enum)]
        op: Op,
        /// CSV `x,re[,im]`; an even bump when absent.
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Op {
    #[value(name = "E")]
    E,
    #[value(name = "Einv")]
    Einv,
    #[value(name = "tE")]
    TE,
    #[value(name = "tEinv")]
    TEinv,
    #[value(name = "V")]
    V,
    #[value(name = "tV")]
    TV,
}

#[derive(Debug, Args)]
struct TransformArgs {
    #[command(flatten)]
    setup: Setup,
    /// CSV `x,re[,im]` (or `lambda,re,im` for `inverse`); a smooth bump when absent.
    #[arg(long = "in")]
    input: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Spacing of the spectral nodes.
    #[arg(long, value_parser = parse_real, default_value = "0.05")]
    dt: f64,
}

#[derive(Debug, Subcommand)]
enum TransformCommand {
    /// CSV `lambda,re,im` of the transform on [-lmax, lmax].
    Forward(TransformArgs),
    /// Invert a `lambda,re,im` table back to `x,re,im`.
    Inverse(TransformArgs),
    /// Forward then inverse; fails when the sup error exceeds 1e-4.
    Roundtrip(TransformArgs),
    /// Compare both sides of the Plancherel identities.
    Plancherel(TransformArgs),
    /// Exponential type, polynomial decay and Riemann-Lebesgue diagnostics.
    Paleywiener {
        #[command(flatten)]
        args: TransformArgs,
        /// Support radius of the input.
        #[arg(long, value_parser = parse_real, default_value = "1")]
        support: f64,
    },
}

#[derive(Debug, Subcommand)]
enum HeatCommand {
    /// Tabulate W(s; u, x) on [-umax, umax] x [-xmax, xmax].
    ///
    /// Without explicit flags the grid is [-4, 4]^2 with step 1/16.
    Scan {
        #[command(flatten)]
        setup: Setup,
        /// Heat time.
        #[arg(long, value_parser = parse_real)]
        s: f64,
        /// Half-width of the source grid.
        #[arg(long, value_parser = parse_real, default_value = "4")]
        umax: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
enum VerifyCommand {
    /// Run every registered check and print the JSON report.
    All {
        #[command(flatten)]
        setup: Setup,
        /// Scale the density used by the Plancherel check by 1.1.
        #[arg(long)]
        corrupt_density: bool,
    },
}

/// Family and numerics; flags override the config file.
#[derive(Debug, Args)]
struct Setup {
    /// JSON file (or inline JSON) holding a family block or a full run config.
    #[arg(long)]
    family: String,
    /// Reflection parameter in [-1, 1]; overrides the config.
    #[arg(long, allow_negative_numbers = true, value_parser = parse_real)]
    eps: Option<f64>,
    /// Half-width of the x grid.
    #[arg(long, value_parser = parse_real)]
    xmax: Option<f64>,
    /// Grid step; fractions such as 1/64 are accepted.
    #[arg(long, value_parser = parse_real)]
    step: Option<f64>,
    /// Spectral cutoff.
    #[arg(long, value_parser = parse_real)]
    lmax: Option<f64>,
    /// Target accuracy of ODE solves and truncation estimates.
    #[arg(long, value_parser = parse_real)]
    tol: Option<f64>,
}

struct Resolved {
    fam: ChebliFamily,
    eps: f64,
    num: Numerics,
}

impl Setup {
    fn resolve(&self) -> Result<Resolved> {
        let (mut cfg, base) = load_config(&self.family)?;
        if let Some(e) = self.eps {
            cfg.eps = e;
        }
        let num = &mut cfg.numerics;
        num.xmax = self.xmax.unwrap_or(num.xmax);
        num.step = self.step.unwrap_or(num.step);
        num.lmax = self.lmax.unwrap_or(num.lmax);
        num.tol = self.tol.unwrap_or(num.tol);
        cfg.validate()?;
        Ok(Resolved { fam: cfg.family.build(base.as_deref())?, eps: cfg.eps, num: cfg.numerics })
    }
}

/// A real number or a fraction `p/q`.
fn parse_real(s: &str) -> std::result::Result<f64, String> {
    let v = match s.split_once('/') {
        Some((p, q)) => {
            let p: f64 = p.trim().parse().map_err(|e| format!("{e}"))?;
            let q: f64 = q.trim().parse().map_err(|e| format!("{e}"))?;
            p / q
        }
        None => s.trim().parse().map_err(|e| format!("{e}"))?,
    };
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("not a finite number: {s}"))
    }
}

fn parse_lambda(s: &str) -> Result<Complex64> {
    let bad = || Error::Config(format!("--lambda expects re,im; got {s:?}"));
    let mut parts = s.split(',');
    let re = parse_real(parts.next().ok_or_else(bad)?).map_err(|_| bad())?;
    let im = match parts.next() {
        Some(p) => parse_real(p).map_err(|_| bad())?,
        None => 0.0,
    };
    if parts.next().is_some() {
        return Err(bad());
    }
    Ok(Complex64::new(re, im))
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Accuracy { .. } | Error::Truncation(_) | Error::Consistency(_) | Error::Singularity(_) => 1,
        _ => 2,
    }
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    if cli.threads > 0 {
        // a pool built earlier in this process keeps its size
        let _ = rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build_global();
    }
    let out = Output { dir: cli.out_dir.clone() };
    match dispatch(&cli, &out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

struct Output {
    dir: Option<PathBuf>,
}

impl Output {
    fn path(&self, p: &Path) -> PathBuf {
        match &self.dir {
            Some(d) if p.is_relative() => d.join(p),
            _ => p.to_path_buf(),
        }
    }

    fn create(&self, p: &Path) -> Result<std::fs::File> {
        let full = self.path(p);
        if let Some(parent) = full.parent().filter(|d| !d.as_os_str().is_empty()) {
            std::fs::create_dir_all(parent)?;
        }
        Ok(std::fs::File::create(full)?)
    }

    /// CSV to `--out`, or to stdout when no path is given.
    fn table(&self, out: Option<&Path>, header: &[&str], rows: Vec<Vec<f64>>) -> Result<()> {
        match out {
            Some(p) => write_table(self.create(p)?, header, rows),
            None => write_table(std::io::stdout().lock(), header, rows),
        }
    }

    /// CSV only when `--out` is given; used by commands that print a report.
    fn optional_table(&self, out: Option<&Path>, header: &[&str], rows: impl FnOnce() -> Vec<Vec<f64>>) -> Result<()> {
        match out {
            Some(p) => write_table(self.create(p)?, header, rows()),
            None => Ok(()),
        }
    }
}

fn print_json<T: Serialize>(value: &T) -> Result<()> {
    let mut stdout = std::io::stdout().lock();
    serde_json::to_writer_pretty(&mut stdout, value)?;
    writeln!(stdout)?;
    Ok(())
}

/// Prints the report and maps failures to exit code 1.
fn finish(report: &VerifyReport) -> Result<i32> {
    print_json(report)?;
    Ok(if report.all_passed() { 0 } else { 1 })
}

fn dispatch(cli: &Cli, out: &Output) -> Result<i32> {
    match &cli.command {
        Command::Family { setup, out: path } => family(setup, out, path.as_deref()),
        Command::Eigen(EigenCommand::Eval { setup, lambda, out: path }) => eigen_eval(setup, lambda, out, path.as_deref()),
        Command::Intertwine(IntertwineCommand::Apply { setup, op, input, out: path }) => {
            intertwine_apply(setup, *op, input.as_deref(), out, path.as_deref())
        }
        Command::Transform(t) => transform(t, out),
        Command::Heat(HeatCommand::Scan { setup, s, umax, out: path }) => heat_scan(setup, *s, *umax, out, path.as_deref()),
        Command::Verify(VerifyCommand::All { setup, corrupt_density }) => {
            let r = setup.resolve()?;
            let cfg = VerifyConfig {
                family: r.fam,
                eps: r.eps,
                numerics: r.num,
                corrupt_plancherel_density: *corrupt_density,
                timings: cli.timings,
            };
            let report = verify_suite(&cfg);
            if let Some(dir) = &out.dir {
                std::fs::create_dir_all(dir)?;
                std::fs::write(dir.join("report.json"), report.to_json() + "\n")?;
            }
            finish(&report)
        }
    }
}

#[derive(Serialize)]
struct FamilySummary {
    family: String,
    alpha: f64,
    rho: f64,
    eps: f64,
    rho_eps: f64,
    hypotheses: crate::chebli::HypothesisReport,
    admissible: bool,
}

fn positive_grid(xmax: f64, step: f64) -> Vec<f64> {
    let n = (xmax / step + 1e-9).floor() as usize;
    (1..=n).map(|i| i as f64 * step).collect()
}

fn family(setup: &Setup, out: &Output, path: Option<&Path>) -> Result<i32> {
    let r = setup.resolve()?;
    let grid = positive_grid(r.num.xmax, r.num.step);
    let hypotheses = r.fam.check_hypotheses(&grid)?;
    let admissible = hypotheses.all_passed();
    out.optional_table(path, &["x", "A", "log_derivative", "tail_residual"], || {
        grid.iter()
            .map(|&x| {
                let a = r.fam.weight(x).unwrap_or(f64::NAN);
                let l = r.fam.log_derivative(x).unwrap_or(f64::NAN);
                let t = r.fam.tail_residual(x).unwrap_or(f64::NAN);
                vec![x, a, l, t]
            })
            .collect()
    })?;
    print_json(&FamilySummary {
        family: r.fam.label(),
        alpha: r.fam.alpha(),
        rho: r.fam.rho(),
        eps: r.eps,
        rho_eps: r.fam.rho_eps(r.eps),
        hypotheses,
        admissible,
    })?;
    Ok(if admissible { 0 } else { 1 })
}

fn eigen_eval(setup: &Setup, lambda: &str, out: &Output, path: Option<&Path>) -> Result<i32> {
    let lambda = parse_lambda(lambda)?;
    let r = setup.resolve()?;
    let sp = SpectralPoint::new(&r.fam, lambda, r.eps)?;
    let ef = Eigenfunction::new(&r.fam, sp, r.num.xmax, r.num.tol)?;
    let n = SampledFunction::half_points(r.num.xmax, r.num.step)?;
    let rows = (0..=2 * n)
        .map(|i| {
            let x = (i as f64 - n as f64) * r.num.step;
            let psi = ef.at(x)?;
            let phi = ef.radial().phi(x)?;
            Ok(vec![x, psi.re, psi.im, phi.re, phi.im])
        })
        .collect::<Result<Vec<_>>>()?;
    out.table(path, &["x", "re_psi", "im_psi", "re_phi", "im_phi"], rows)?;
    Ok(0)
}

/// Radius of the default bump inputs.
const BUMP_RADIUS: f64 = 3.0;

fn default_bump(step: f64) -> Result<SampledFunction> {
    SampledFunction::from_real_fn(BUMP_RADIUS, step, smooth_bump(0.3, 2.0, 10.0))
}

fn input_or(input: Option<&Path>, fallback: impl FnOnce() -> Result<SampledFunction>) -> Result<SampledFunction> {
    match input {
        Some(p) => read_function(p),
        None => fallback(),
    }
}

fn intertwine_apply(setup: &Setup, op: Op, input: Option<&Path>, out: &Output, path: Option<&Path>) -> Result<i32> {
    let r = setup.resolve()?;
    let f = input_or(input, || SampledFunction::from_real_fn(BUMP_RADIUS, r.num.step, smooth_bump(0.0, 2.0, 1.0)))?;
    let direction = match op {
        Op::E => Some(Direction::E),
        Op::Einv => Some(Direction::EInv),
        Op::TE => Some(Direction::TE),
        Op::TEinv => Some(Direction::TEInv),
        Op::V | Op::TV => None,
    };
    let g = match direction {
        Some(d) => apply_e(&BesselKernelOp::new(&r.fam, r.eps, d)?, &f)?,
        None => {
            let mk = MehlerKernel::new(&r.fam, r.eps)?;
            let values = f
                .xs()
                .map(|x| if matches!(op, Op::V) { v_eps(&mk, &f, x) } else { t_v_eps(&mk, &f, x) })
                .collect::<Result<Vec<_>>>()?;
            f.with_values(values)?
        }
    };
    out.table(path, &["x", "re", "im"], function_rows(&g))?;
    Ok(0)
}

fn transform(cmd: &TransformCommand, out: &Output) -> Result<i32> {
    match cmd {
        TransformCommand::Forward(a) => {
            let r = a.setup.resolve()?;
            let f = input_or(a.input.as_deref(), || default_bump(r.num.step))?;
            let grid = SpectralGrid::for_family(&r.fam, r.eps, r.num.lmax, a.dt)?;
            let tr = forward(&r.fam, r.eps, &f, &grid, r.num.tol)?;
            let rows = tr.rows().into_iter().map(|(l, v)| vec![l, v.re, v.im]).collect();
            out.table(a.out.as_deref(), &["lambda", "re", "im"], rows)?;
            Ok(0)
        }
        TransformCommand::Inverse(a) => {
            let r = a.setup.resolve()?;
            let input = a.input.as_deref().ok_or_else(|| Error::Config("inverse needs --in lambda,re,im".into()))?;
            let rows = read_complex_rows(input)?;
            let tr = TransformResult::from_rows(r.eps, r.fam.rho_eps(r.eps), &rows, r.num.xmax, r.num.step)?;
            let density = SpectralDensity::new(&r.fam, r.eps)?;
            let inv = inverse(&density, &tr, r.num.xmax, r.num.step, r.num.tol)?;
            out.table(a.out.as_deref(), &["x", "re", "im"], function_rows(&inv.values))?;
            Ok(0)
        }
        TransformCommand::Roundtrip(a) => {
            let r = a.setup.resolve()?;
            let f = input_or(a.input.as_deref(), || default_bump(r.num.step))?;
            let density = SpectralDensity::new(&r.fam, r.eps)?;
            let grid = SpectralGrid::for_family(&r.fam, r.eps, r.num.lmax, a.dt)?;
            let rt = round_trip(&density, &f, &grid)?;
            out.optional_table(a.out.as_deref(), &["x", "re", "im"], || function_rows(&rt.recovered))?;
            let rec = CheckRecord::at_most("fourier.round_trip", "inverse(forward(f)) = f", rt.error, 1e-4);
            finish(&report(&r, vec![rec]))
        }
        TransformCommand::Plancherel(a) => {
            let r = a.setup.resolve()?;
            let f = input_or(a.input.as_deref(), || default_bump(r.num.step))?;
            let g = f.with_values(f.xs().map(|x| Complex64::from(smooth_bump(-0.4, 2.0, 10.0)(x))).collect())?;
            let density = SpectralDensity::new(&r.fam, r.eps)?;
            let p = plancherel_check(&density, &f, &g, r.num.lmax, a.dt)?;
            let recs = vec![
                CheckRecord::at_most("fourier.plancherel_bilinear", "int f(x) g(-x) A dx = spectral pairing", p.rel, 1e-3)
                    .with_detail(format!("lhs {}, rhs {}", p.lhs, p.rhs)),
                CheckRecord::at_most("fourier.plancherel_quadratic", "int |f|^2 A dx = spectral pairing", p.l2_rel, 1e-3)
                    .with_detail(format!("lhs {}, rhs {}", p.l2_lhs, p.l2_rhs)),
            ];
            finish(&report(&r, recs))
        }
        TransformCommand::Paleywiener { args: a, support } => {
            let r = a.setup.resolve()?;
            let support = *support;
            let f = input_or(a.input.as_deref(), || {
                SampledFunction::from_real_fn(1.25 * support, support / 256.0, smooth_bump(0.0, support, 1.0))
            })?;
            let etas: Vec<f64> = (10..=120).map(|k| k as f64 * 0.5 / support).collect();
            let pw = paley_wiener_check(&r.fam, r.eps, &f, support, &etas, &[0.0], &[3.0], r.num.lmax)?;
            let rl = riemann_lebesgue_ratio(&r.fam, r.eps, &f, (0.0, 10.0), (30.0, 40.0), 0.1)?;
            out.optional_table(a.out.as_deref(), &["eta", "re", "im"], || {
                let axis: Vec<Complex64> = etas.iter().map(|&e| Complex64::new(0.0, e)).collect();
                let vals = forward_at(&r.fam, r.eps, &f, &axis).unwrap_or_default();
                etas.iter().zip(vals).map(|(e, v)| vec![*e, v.re, v.im]).collect()
            })?;
            let recs = vec![
                CheckRecord::within(
                    "fourier.paley_wiener",
                    "exponential type of Ff equals the support radius",
                    pw.fit.r_fit,
                    0.95 * support,
                    1.05 * support,
                ),
                CheckRecord::at_most(
                    "fourier.decay",
                    "(|lambda|+1)^3 |Ff(lambda)| bounded on the real axis",
                    pw.extension_ratios[0].1,
                    1.01,
                )
                .with_detail(format!("sup over [0,{}] = {:e}", r.num.lmax, pw.weighted_sups[0].1)),
                CheckRecord::at_most("fourier.riemann_lebesgue", "max over [30,40] of |Ff| below 1e-3 max over [0,10]", rl, 1e-3),
            ];
            finish(&report(&r, recs))
        }
    }
}

fn report(r: &Resolved, checks: Vec<CheckRecord>) -> VerifyReport {
    VerifyReport { family: r.fam.label(), eps: r.eps, checks }
}

fn heat_scan(setup: &Setup, s: f64, umax: f64, out: &Output, path: Option<&Path>) -> Result<i32> {
    let r = setup.resolve()?;
    let xmax = setup.xmax.unwrap_or(4.0);
    let step = setup.step.unwrap_or(1.0 / 16.0);
    if !(umax > 0.0) {
        return Err(Error::Config(format!("umax must be positive, got {umax}")));
    }
    let grid = |reach: f64| -> Result<Vec<f64>> {
        let n = SampledFunction::half_points(reach, step)?;
        Ok((0..=2 * n).map(|i| (i as f64 - n as f64) * step).collect())
    };
    let (us, xs) = (grid(umax)?, grid(xmax)?);
    let he = HeatEval::new(&r.fam, r.eps, s, r.num.tol.min(1e-12))?;
    let scan = positivity_scan(&he, &us, &xs)?;
    out.optional_table(path, &["u", "x", "W"], || {
        let mut rows = Vec::with_capacity(us.len() * xs.len());
        for (i, &u) in us.iter().enumerate() {
            for (j, &x) in xs.iter().enumerate() {
                rows.push(vec![u, x, scan.values[i][j]]);
            }
        }
        rows
    })?;
    let mut recs = vec![CheckRecord::at_least("heat.positivity", "W(s;u,x) >= 0", scan.min, -10.0 * r.num.tol)
        .with_detail(format!("minimum at (u, x) = ({}, {})", scan.argmin.0, scan.argmin.1))];
    if let Some(e) = scan.origin_error {
        recs.push(CheckRecord::at_most("heat.origin", "W(s;u,0) = exp(-u^2/4s)/(2 sqrt(pi s))", e, 1e-8));
    }
    finish(&report(&r, recs))
}
