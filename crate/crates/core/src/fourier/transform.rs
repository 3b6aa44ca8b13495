//! Forward and inverse transforms.
//!
//! ```text
//! ℱf(λ) = ∫ f(x) Ψ(λ, −x) A(x) dx
//! f(x)  = (1/4) Σ_± ∫₀^∞ ℱf(λ_±) Ψ(λ_±, x) (1 − ερ/(iλ_±)) D(t) dt,   λ_± = ±√(gap² + t²)
//! ```
//!
//! Since `μ_ε² = λ² − gap² = t²`, one radial solution `φ_t` serves both
//! branches and every `ε`: `Ψ(λ, x) = φ_t(x) + (iλ + ερ)·q_t(x)` with
//! `q_t(x) = sg(x)Q_t(|x|)`. The forward transform therefore reduces to two
//! moments `∫fφ_tA` and `∫fq_tA` per node.

use super::density::SpectralDensity;
use crate::chebli::ChebliFamily;
use crate::eigen::RadialEigen;
use crate::error::{Error, Result};
use crate::grid::SampledFunction;
use crate::quad::{simpson_cusp_stencil, simpson_weights};
use num_complex::Complex64;
use rayon::prelude::*;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Nodes processed per parallel batch; keeps memory flat for long sweeps.
const BATCH: usize = 64;

/// Default accuracy of the radial solves inside transforms.
pub const SOLVE_TOL: f64 = 1e-10;

/// Uniform nodes `t_k = k·dt`, `k = 0..=n` (`n` even), in the spectral variable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralGrid {
    gap: f64,
    dt: f64,
    n: usize,
}

impl SpectralGrid {
    /// Nodes on `[0, t_max]` with spacing at most `dt`.
    pub fn new(gap: f64, t_max: f64, dt: f64) -> Result<Self> {
        if !(t_max > 0.0 && dt > 0.0 && t_max.is_finite() && gap >= 0.0) {
            return Err(Error::Config(format!("bad spectral grid: t_max {t_max}, dt {dt}, gap {gap}")));
        }
        let mut n = (t_max / dt).ceil() as usize;
        n += n % 2;
        let n = n.max(2);
        Ok(Self { gap, dt: t_max / n as f64, n })
    }

    pub fn for_family(fam: &ChebliFamily, eps: f64, t_max: f64, dt: f64) -> Result<Self> {
        Self::new(fam.rho_eps(eps), t_max, dt)
    }

    pub fn gap(&self) -> f64 {
        self.gap
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn t_max(&self) -> f64 {
        self.n as f64 * self.dt
    }

    /// Number of nodes per branch.
    pub fn len(&self) -> usize {
        self.n + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn t(&self, k: usize) -> f64 {
        k as f64 * self.dt
    }

    /// `|λ|` at node `k`.
    pub fn lambda(&self, k: usize) -> f64 {
        let t = self.t(k);
        (self.gap * self.gap + t * t).sqrt()
    }
}

/// `ℱf` sampled on both branches of a [`SpectralGrid`].
#[derive(Debug, Clone)]
pub struct TransformResult {
    pub eps: f64,
    pub grid: SpectralGrid,
    /// Values at `λ = +√(gap² + t_k²)`.
    pub plus: Vec<Complex64>,
    /// Values at `λ = −√(gap² + t_k²)`.
    pub minus: Vec<Complex64>,
    /// Radius and step of the input grid.
    pub radius: f64,
    pub step: f64,
    /// Bound on the contribution of `|x| > R` (zero for compact support).
    pub truncation_bound: f64,
}

impl TransformResult {
    /// `(λ, ℱf(λ))` in increasing `λ`.
    pub fn rows(&self) -> Vec<(f64, Complex64)> {
        let mut out: Vec<(f64, Complex64)> =
            (0..self.grid.len()).rev().map(|k| (-self.grid.lambda(k), self.minus[k])).collect();
        let start = usize::from(self.grid.lambda(0) == 0.0);
        out.extend((start..self.grid.len()).map(|k| (self.grid.lambda(k), self.plus[k])));
        out
    }

    /// Rebuilds a transform from rows in the layout of [`rows`](Self::rows).
    ///
    /// `radius` and `step` describe the grid of the original input.
    pub fn from_rows(eps: f64, gap: f64, rows: &[(f64, Complex64)], radius: f64, step: f64) -> Result<Self> {
        let neg: Vec<&(f64, Complex64)> = rows.iter().filter(|r| r.0 < 0.0).collect();
        let pos: Vec<&(f64, Complex64)> = rows.iter().filter(|r| r.0 >= 0.0).collect();
        let mut minus: Vec<Complex64> = neg.iter().rev().map(|r| r.1).collect();
        let plus: Vec<Complex64> = pos.iter().map(|r| r.1).collect();
        let ts: Vec<f64> = pos.iter().map(|r| (r.0 * r.0 - gap * gap).max(0.0).sqrt()).collect();
        if gap == 0.0 {
            // λ = 0 is listed once and belongs to both branches
            let zero = pos.first().filter(|r| r.0 == 0.0).map(|r| r.1);
            match zero {
                Some(z) => minus.insert(0, z),
                None => return Err(Error::Config("rows lack the lambda = 0 node".into())),
            }
        } else if minus.len() != plus.len() {
            return Err(Error::Config(format!("{} negative and {} positive rows", minus.len(), plus.len())));
        }
        if minus.len() != plus.len() || plus.len() < 3 {
            return Err(Error::Config("rows do not form a symmetric spectral grid".into()));
        }
        let t_max = *ts.last().unwrap();
        let intervals = (plus.len() - 1) as f64;
        // the row count fixes n; nudging dt keeps rounding from adding a node
        let grid = SpectralGrid::new(gap, t_max, t_max / intervals * (1.0 + 1e-9))?;
        if grid.len() != plus.len() {
            return Err(Error::Config(format!("expected {} nodes per branch, found {}", grid.len(), plus.len())));
        }
        for (k, t) in ts.iter().enumerate() {
            if (*t - grid.t(k)).abs() > 1e-8 * t_max.max(1.0) {
                return Err(Error::Config(format!("spectral nodes are not uniform in t near lambda = {}", pos[k].0)));
            }
        }
        Ok(Self { eps, grid, plus, minus, radius, step, truncation_bound: 0.0 })
    }

    /// Largest `|ℱf|` on the grid.
    pub fn sup_norm(&self) -> f64 {
        self.plus.iter().chain(&self.minus).map(|v| v.norm()).fold(0.0, f64::max)
    }
}

/// Radial data of one node on the `x` grid: `φ_t(x_i)` and `q_t(x_i)`.
struct NodeSamples {
    phi: Vec<Complex64>,
    q: Vec<Complex64>,
}

fn node_samples(fam: &ChebliFamily, mu_sq: Complex64, xs: &[f64], tol: f64) -> Result<NodeSamples> {
    let radius = xs.iter().fold(0.0f64, |m, x| m.max(x.abs())).max(1e-3);
    let rad = RadialEigen::solve(fam, mu_sq, radius, tol)?;
    let mut phi = Vec::with_capacity(xs.len());
    let mut q = Vec::with_capacity(xs.len());
    for &x in xs {
        let s = rad.state(x)?;
        phi.push(s.phi);
        q.push(s.q);
    }
    Ok(NodeSamples { phi, q })
}

/// `f·A·w` with Simpson weights `w`, the common factor of every moment.
///
/// The five samples around the origin carry the correction for the
/// `|x|^{2α+1}` factor of `A`.
fn weighted_input(fam: &ChebliFamily, f: &SampledFunction) -> Result<Vec<Complex64>> {
    let w = simpson_weights(f.len(), f.step());
    let mut fw = (0..f.len()).map(|i| Ok(f.value(i) * (w[i] * fam.weight(f.x(i))?))).collect::<Result<Vec<_>>>()?;
    for (i, w) in cusp_weights(fam, f)? {
        fw[i] += f.value(i) * w;
    }
    Ok(fw)
}

/// [`simpson_cusp_stencil`] for `A = |x|^{2α+1} B`, with `B` folded in.
/// Empty when `2α+1` is an even integer.
pub(crate) fn cusp_weights(fam: &ChebliFamily, f: &SampledFunction) -> Result<Vec<(usize, f64)>> {
    let (h, c) = (f.step(), f.half());
    let s = simpson_cusp_stencil(2.0 * fam.alpha() + 1.0, h, c);
    if s.iter().all(|&w| w == 0.0) || c < 2 {
        return Ok(Vec::new());
    }
    (0..5).map(|j| Ok((c + j - 2, s[j] * fam.smooth_factor(f.x(c + j - 2))?))).collect()
}

fn moments(fw: &[Complex64], s: &NodeSamples) -> (Complex64, Complex64) {
    let mut even = Complex64::default();
    let mut odd = Complex64::default();
    for ((v, p), q) in fw.iter().zip(&s.phi).zip(&s.q) {
        even += v * p;
        odd += v * q;
    }
    (even, odd)
}

/// `∫ f φ_t A` at every node; the transform of an even `f`.
pub fn even_moments(fam: &ChebliFamily, f: &SampledFunction, grid: &SpectralGrid, tol: f64) -> Result<Vec<Complex64>> {
    let fw = weighted_input(fam, f)?;
    let xs: Vec<f64> = f.xs().collect();
    sweep(grid.len(), |k| {
        let t = grid.t(k);
        let s = node_samples(fam, Complex64::from(t * t), &xs, tol)?;
        Ok(moments(&fw, &s).0)
    })
}

/// Maps `k ↦ g(k)` over `0..n` in parallel batches, preserving order.
fn sweep<T: Send>(n: usize, g: impl Fn(usize) -> Result<T> + Sync) -> Result<Vec<T>> {
    let mut out = Vec::with_capacity(n);
    for start in (0..n).step_by(BATCH) {
        let end = (start + BATCH).min(n);
        let batch: Vec<T> = (start..end).into_par_iter().map(&g).collect::<Result<_>>()?;
        out.extend(batch);
    }
    Ok(out)
}

fn truncation_bound(fam: &ChebliFamily, f: &SampledFunction) -> Result<f64> {
    let edge = f.value(0).norm().max(f.value(f.len() - 1).norm());
    if edge == 0.0 {
        return Ok(0.0);
    }
    // one grid cell of mass at the edge, with |Ψ| ≤ √2 e^{ρ R} as a crude envelope
    let r = f.radius();
    Ok(edge * fam.weight(r)? * (fam.rho() * r).exp() * 2f64.sqrt() * r)
}

fn check_tail(fam: &ChebliFamily, f: &SampledFunction, tol: f64) -> Result<f64> {
    let bound = truncation_bound(fam, f)?;
    let mass: f64 = weighted_input(fam, f)?.iter().map(|v| v.norm()).sum();
    if bound > tol * mass.max(1.0) {
        return Err(Error::Truncation(format!(
            "input tail at R = {} contributes up to {bound:.3e}; enlarge the grid",
            f.radius()
        )));
    }
    Ok(bound)
}

/// `ℱf` on both branches of `grid`.
pub fn forward(fam: &ChebliFamily, eps: f64, f: &SampledFunction, grid: &SpectralGrid, tol: f64) -> Result<TransformResult> {
    if !(-1.0..=1.0).contains(&eps) {
        return Err(Error::Domain(format!("eps out of [-1,1]: {eps}")));
    }
    let truncation_bound = check_tail(fam, f, tol)?;
    let fw = weighted_input(fam, f)?;
    let xs: Vec<f64> = f.xs().collect();
    let er = eps * fam.rho();
    let pairs = sweep(grid.len(), |k| {
        let t = grid.t(k);
        let s = node_samples(fam, Complex64::from(t * t), &xs, SOLVE_TOL)?;
        let (e, o) = moments(&fw, &s);
        let lam = grid.lambda(k);
        // Ψ(λ, −x) = φ(x) − (iλ + ερ) q(x)
        Ok((e - (I * lam + er) * o, e - (-I * lam + er) * o))
    })?;
    let (plus, minus) = pairs.into_iter().unzip();
    Ok(TransformResult { eps, grid: *grid, plus, minus, radius: f.radius(), step: f.step(), truncation_bound })
}

/// `ℱf(λ)` at arbitrary complex `λ`.
///
/// Off the real axis `Ψ(λ, ·)` grows exponentially; values outside the strip
/// `|Im λ| ≤ ρ(1 − √(1−ε²))` are only accepted when `f` vanishes at the grid edge.
pub fn forward_at(fam: &ChebliFamily, eps: f64, f: &SampledFunction, lambdas: &[Complex64]) -> Result<Vec<Complex64>> {
    if !(-1.0..=1.0).contains(&eps) {
        return Err(Error::Domain(format!("eps out of [-1,1]: {eps}")));
    }
    let strip = fam.rho() - fam.rho_eps(eps);
    let compact = truncation_bound(fam, f)? == 0.0;
    for l in lambdas {
        if l.im.abs() > strip + 1e-12 && !compact {
            return Err(Error::Domain(format!(
                "lambda = {l} lies outside the strip |Im| <= {strip} and the input is not compactly supported"
            )));
        }
    }
    let fw = weighted_input(fam, f)?;
    let xs: Vec<f64> = f.xs().collect();
    let gap = fam.rho_eps(eps);
    let er = eps * fam.rho();
    sweep(lambdas.len(), |k| {
        let lam = lambdas[k];
        let s = node_samples(fam, lam * lam - gap * gap, &xs, SOLVE_TOL)?;
        let (e, o) = moments(&fw, &s);
        Ok(e - (I * lam + er) * o)
    })
}

/// Inversion of a [`TransformResult`] together with a tail estimate.
#[derive(Debug, Clone)]
pub struct Inversion {
    pub values: SampledFunction,
    /// Estimated contribution of `t > t_max`.
    pub truncation_bound: f64,
}

fn inversion_weights(density: &SpectralDensity, grid: &SpectralGrid) -> Result<Vec<[Complex64; 2]>> {
    Ok(density.branch_weights(grid)?.into_iter().map(|[p, m]| [p * 0.25, m * 0.25]).collect())
}

/// Tail estimate from the integrand over the last tenth of the nodes.
fn tail_estimate(grid: &SpectralGrid, density: &SpectralDensity, fr: &TransformResult) -> Result<f64> {
    let start = grid.len() - grid.len() / 10 - 1;
    let mut worst = 0.0f64;
    for k in start..grid.len() {
        let t = grid.t(k);
        let a = (fr.plus[k] * density.weight(t, 1.0)?).norm();
        let b = (fr.minus[k] * density.weight(t, -1.0)?).norm();
        worst = worst.max(a).max(b);
    }
    Ok(0.5 * worst * (grid.t_max() - grid.t(start)))
}

/// Recovers `f` on the grid of radius `radius` and step `step`.
pub fn inverse(
    density: &SpectralDensity,
    fr: &TransformResult,
    radius: f64,
    step: f64,
    tol: f64,
) -> Result<Inversion> {
    if density.eps() != fr.eps || (density.gap() - fr.grid.gap()).abs() > 1e-12 {
        return Err(Error::Config("density and transform disagree on eps".into()));
    }
    let fam = density.family();
    let grid = fr.grid;
    let truncation_bound = tail_estimate(&grid, density, fr)?;
    if truncation_bound > tol {
        return Err(Error::Truncation(format!(
            "spectral tail beyond t = {} contributes about {truncation_bound:.3e} > {tol:.1e}",
            grid.t_max()
        )));
    }
    let n = SampledFunction::half_points(radius, step)?;
    let xs: Vec<f64> = (0..=2 * n).map(|i| (i as f64 - n as f64) * step).collect();
    let w = inversion_weights(density, &grid)?;
    let er = density.eps() * fam.rho();
    let mut acc = vec![Complex64::default(); xs.len()];
    let mut k0 = 0;
    while k0 < grid.len() {
        let k1 = (k0 + BATCH).min(grid.len());
        let batch = sweep(k1 - k0, |j| {
            let t = grid.t(k0 + j);
            node_samples(fam, Complex64::from(t * t), &xs, SOLVE_TOL)
        })?;
        for (j, s) in batch.iter().enumerate() {
            let k = k0 + j;
            let lam = grid.lambda(k);
            let cp = fr.plus[k] * w[k][0];
            let cm = fr.minus[k] * w[k][1];
            let reg_p = I * lam + er;
            let reg_m = -I * lam + er;
            for i in 0..xs.len() {
                acc[i] += cp * (s.phi[i] + reg_p * s.q[i]) + cm * (s.phi[i] + reg_m * s.q[i]);
            }
        }
        k0 = k1;
    }
    Ok(Inversion { values: SampledFunction::new(step, acc)?, truncation_bound })
}

/// Forward then inverse on the input grid, sharing one radial solve per node.
#[derive(Debug, Clone)]
pub struct RoundTrip {
    pub transform: TransformResult,
    pub recovered: SampledFunction,
    /// `sup |recovered − f|`.
    pub error: f64,
}

pub fn round_trip(density: &SpectralDensity, f: &SampledFunction, grid: &SpectralGrid) -> Result<RoundTrip> {
    if (density.gap() - grid.gap()).abs() > 1e-12 {
        return Err(Error::Config("density and spectral grid disagree on the gap".into()));
    }
    let mut out = round_trips(std::slice::from_ref(density), f, grid.t_max(), grid.dt())?;
    Ok(out.remove(0))
}

/// Round trips for several densities of one family.
///
/// The radial solutions depend only on `t`, so every `ε` reuses the same solves.
pub fn round_trips(densities: &[SpectralDensity], f: &SampledFunction, t_max: f64, dt: f64) -> Result<Vec<RoundTrip>> {
    let Some(first) = densities.first() else {
        return Ok(Vec::new());
    };
    let fam = first.family();
    if densities.iter().any(|d| d.family().label() != fam.label()) {
        return Err(Error::Config("round trips must share one family".into()));
    }
    let truncation_bound = check_tail(fam, f, 1e-12)?;
    let fw = weighted_input(fam, f)?;
    let xs: Vec<f64> = f.xs().collect();
    let grids = densities
        .iter()
        .map(|d| SpectralGrid::new(d.gap(), t_max, dt))
        .collect::<Result<Vec<_>>>()?;
    let weights = densities
        .iter()
        .zip(&grids)
        .map(|(d, g)| inversion_weights(d, g))
        .collect::<Result<Vec<_>>>()?;
    let m = densities.len();
    let n_nodes = grids[0].len();
    let mut plus = vec![Vec::with_capacity(n_nodes); m];
    let mut minus = vec![Vec::with_capacity(n_nodes); m];
    let mut acc = vec![vec![Complex64::default(); xs.len()]; m];
    let mut k0 = 0;
    while k0 < n_nodes {
        let k1 = (k0 + BATCH).min(n_nodes);
        let batch = sweep(k1 - k0, |j| {
            let t = grids[0].t(k0 + j);
            node_samples(fam, Complex64::from(t * t), &xs, SOLVE_TOL)
        })?;
        for (j, s) in batch.iter().enumerate() {
            let k = k0 + j;
            let (e, o) = moments(&fw, s);
            for d in 0..m {
                let lam = grids[d].lambda(k);
                let er = densities[d].eps() * fam.rho();
                let reg_p = I * lam + er;
                let reg_m = -I * lam + er;
                let fp = e - reg_p * o;
                let fm = e - reg_m * o;
                plus[d].push(fp);
                minus[d].push(fm);
                let cp = fp * weights[d][k][0];
                let cm = fm * weights[d][k][1];
                for (i, a) in acc[d].iter_mut().enumerate() {
                    *a += cp * (s.phi[i] + reg_p * s.q[i]) + cm * (s.phi[i] + reg_m * s.q[i]);
                }
            }
        }
        k0 = k1;
    }
    let mut out = Vec::with_capacity(m);
    for (d, ((p, mi), a)) in plus.into_iter().zip(minus).zip(acc).enumerate() {
        let recovered = f.with_values(a)?;
        let error = recovered.max_abs_diff(f);
        let transform = TransformResult {
            eps: densities[d].eps(),
            grid: grids[d],
            plus: p,
            minus: mi,
            radius: f.radius(),
            step: f.step(),
            truncation_bound,
        };
        out.push(RoundTrip { transform, recovered, error });
    }
    Ok(out)
}
