//! Diagnostics built on the transform: Plancherel, Paley–Wiener,
//! Riemann–Lebesgue, Schwartz seminorms and conjugate symmetry.

use super::density::SpectralDensity;
use super::transform::{cusp_weights, forward, forward_at, SpectralGrid, TransformResult};
use crate::chebli::ChebliFamily;
use crate::eigen::RadialEigen;
use crate::error::{Error, Result};
use crate::grid::SampledFunction;
use crate::quad::simpson;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

/// Both sides of the bilinear and quadratic Plancherel identities.
#[derive(Debug, Clone, Copy)]
pub struct PlancherelReport {
    /// `∫ f(x) g(−x) A(x) dx`.
    pub lhs: Complex64,
    /// `(1/4) Σ_± ∫ ℱf ℱg (1 − ερ/(iλ)) D dt`.
    pub rhs: Complex64,
    pub rel: f64,
    /// `∫ |f|² A dx`.
    pub l2_lhs: f64,
    /// The spectral side of the quadratic form with `ǧ(x) = conj f(−x)`.
    pub l2_rhs: Complex64,
    pub l2_rel: f64,
}

fn spectral_pairing(density: &SpectralDensity, a: &TransformResult, b: &TransformResult) -> Result<Complex64> {
    let w = density.branch_weights(&a.grid)?;
    let acc = (0..a.grid.len()).fold(Complex64::default(), |acc, k| {
        acc + a.plus[k] * b.plus[k] * w[k][0] + a.minus[k] * b.minus[k] * w[k][1]
    });
    Ok(acc * 0.25)
}

/// Compares both Plancherel forms for `f`, `g` on a common grid.
pub fn plancherel_check(
    density: &SpectralDensity,
    f: &SampledFunction,
    g: &SampledFunction,
    t_max: f64,
    dt: f64,
) -> Result<PlancherelReport> {
    if f.len() != g.len() || f.step() != g.step() {
        return Err(Error::Config("f and g must share a grid".into()));
    }
    let fam = density.family();
    let eps = density.eps();
    let grid = SpectralGrid::new(density.gap(), t_max, dt)?;
    let ff = forward(fam, eps, f, &grid, 1e-12)?;
    let fg = forward(fam, eps, g, &grid, 1e-12)?;
    let gr = g.reflect();
    let pair: Vec<Complex64> =
        (0..f.len()).map(|i| Ok(f.value(i) * gr.value(i) * fam.weight(f.x(i))?)).collect::<Result<_>>()?;
    let corr = cusp_weights(fam, f)?;
    let lhs = simpson(&pair, f.step()) + corr.iter().map(|&(i, w)| f.value(i) * gr.value(i) * w).sum::<Complex64>();
    let rhs = spectral_pairing(density, &ff, &fg)?;

    let check = f.reflect().map(|_, v| v.conj());
    let fc = forward(fam, eps, &check, &grid, 1e-12)?;
    let sq: Vec<f64> = (0..f.len()).map(|i| Ok(f.value(i).norm_sqr() * fam.weight(f.x(i))?)).collect::<Result<_>>()?;
    let l2_lhs = simpson(&sq, f.step()) + corr.iter().map(|&(i, w)| f.value(i).norm_sqr() * w).sum::<f64>();
    let l2_rhs = spectral_pairing(density, &ff, &fc)?;
    Ok(PlancherelReport {
        lhs,
        rhs,
        rel: (lhs - rhs).norm() / lhs.norm().max(f64::MIN_POSITIVE),
        l2_lhs,
        l2_rhs,
        l2_rel: (l2_rhs - l2_lhs).norm() / l2_lhs.max(f64::MIN_POSITIVE),
    })
}

/// Least-squares fit `ln|ℱf(iη)| ≈ R η + b √η + c ln η + d`.
#[derive(Debug, Clone)]
pub struct ExponentialTypeFit {
    /// The fitted exponential type `R`.
    pub r_fit: f64,
    /// `[R, b, c, d]`.
    pub coefficients: [f64; 4],
    /// Largest absolute residual of the fit.
    pub max_residual: f64,
}

/// Result of the Paley–Wiener diagnostics for a function supported in `[−a, a]`.
#[derive(Debug, Clone)]
pub struct PaleyWienerReport {
    pub support: f64,
    pub fit: ExponentialTypeFit,
    /// `(t, sup (|λ|+1)^t e^{−a|Im λ|}|ℱf(λ)|)` over the sampled region.
    pub weighted_sups: Vec<(f64, f64)>,
    /// The same suprema on the region with `Re λ` extended to twice the range,
    /// divided by the originals; values near 1 mean the supremum has settled.
    pub extension_ratios: Vec<(f64, f64)>,
}

fn fit_exponential_type(etas: &[f64], values: &[Complex64]) -> Result<ExponentialTypeFit> {
    let rows: Vec<(f64, f64)> = etas
        .iter()
        .zip(values)
        .filter(|(_, v)| v.norm() > 0.0)
        .map(|(&e, v)| (e, v.norm().ln()))
        .collect();
    if rows.len() < 8 {
        return Err(Error::Consistency("too few non-zero samples for the exponential-type fit".into()));
    }
    let a = DMatrix::from_fn(rows.len(), 4, |i, j| {
        let e = rows[i].0;
        [e, e.sqrt(), e.ln(), 1.0][j]
    });
    let y = DVector::from_iterator(rows.len(), rows.iter().map(|r| r.1));
    let sol = a
        .clone()
        .svd(true, true)
        .solve(&y, 1e-14)
        .map_err(|e| Error::Consistency(format!("least squares failed: {e}")))?;
    let res = &a * &sol - &y;
    Ok(ExponentialTypeFit {
        r_fit: sol[0],
        coefficients: [sol[0], sol[1], sol[2], sol[3]],
        max_residual: res.amax(),
    })
}

/// Exponential-type fit along `iη` and weighted suprema over `s + iη`,
/// `s ∈ [0, re_max]` (and `[0, 2 re_max]` for the stability ratio).
#[allow(clippy::too_many_arguments)]
pub fn paley_wiener_check(
    fam: &ChebliFamily,
    eps: f64,
    f: &SampledFunction,
    support: f64,
    fit_etas: &[f64],
    sup_etas: &[f64],
    t_list: &[f64],
    re_max: f64,
) -> Result<PaleyWienerReport> {
    let edge = f.xs().zip(f.values()).filter(|(x, _)| x.abs() > support + 1e-12).map(|(_, v)| v.norm()).fold(0.0, f64::max);
    if edge > 0.0 {
        return Err(Error::Support(format!("input is {edge:.3e} outside [-{support}, {support}]")));
    }
    let axis: Vec<Complex64> = fit_etas.iter().map(|&e| Complex64::new(0.0, e)).collect();
    let fit = fit_exponential_type(fit_etas, &forward_at(fam, eps, f, &axis)?)?;

    let ds = 0.5;
    let n_re = (2.0 * re_max / ds).ceil() as usize;
    let mut pts = Vec::with_capacity((n_re + 1) * sup_etas.len());
    for &eta in sup_etas {
        for k in 0..=n_re {
            pts.push(Complex64::new(k as f64 * ds, eta));
        }
    }
    let vals = forward_at(fam, eps, f, &pts)?;
    let mut weighted_sups = Vec::new();
    let mut extension_ratios = Vec::new();
    for &t in t_list {
        let weighted = |l: &Complex64, v: &Complex64| (l.norm() + 1.0).powf(t) * (-support * l.im.abs()).exp() * v.norm();
        let near = pts.iter().zip(&vals).filter(|(l, _)| l.re <= re_max).map(|(l, v)| weighted(l, v)).fold(0.0, f64::max);
        let far = pts.iter().zip(&vals).map(|(l, v)| weighted(l, v)).fold(0.0, f64::max);
        weighted_sups.push((t, near));
        extension_ratios.push((t, far / near.max(f64::MIN_POSITIVE)));
    }
    Ok(PaleyWienerReport { support, fit, weighted_sups, extension_ratios })
}

/// `max_{[hi.0, hi.1]} |ℱf| / max_{[lo.0, lo.1]} |ℱf|` along the real axis.
pub fn riemann_lebesgue_ratio(
    fam: &ChebliFamily,
    eps: f64,
    f: &SampledFunction,
    lo: (f64, f64),
    hi: (f64, f64),
    step: f64,
) -> Result<f64> {
    let sample = |band: (f64, f64)| -> Result<f64> {
        let n = ((band.1 - band.0) / step).ceil().max(1.0) as usize;
        let pts: Vec<Complex64> = (0..=n).map(|k| Complex64::from(band.0 + (band.1 - band.0) * k as f64 / n as f64)).collect();
        Ok(forward_at(fam, eps, f, &pts)?.iter().map(|v| v.norm()).fold(0.0, f64::max))
    };
    let low = sample(lo)?;
    Ok(sample(hi)? / low.max(f64::MIN_POSITIVE))
}

/// `max_k |ℱf(−λ_k) − conj ℱf(λ_k)|`; zero for real input.
pub fn conjugate_symmetry_defect(tr: &TransformResult) -> f64 {
    tr.plus.iter().zip(&tr.minus).map(|(p, m)| (m - p.conj()).norm()).fold(0.0, f64::max)
}

/// `σ^{(p)}_{s,k}(f) = sup (|x|+1)^s φ₀(x)^{−2/p} |f^{(k)}(x)|` on the grid.
pub fn schwartz_seminorm(fam: &ChebliFamily, eps: f64, p: f64, f: &SampledFunction, s: f64, k: usize) -> Result<f64> {
    let p_max = 2.0 / (1.0 + (1.0 - eps * eps).max(0.0).sqrt());
    if !(-1.0..=1.0).contains(&eps) {
        return Err(Error::Domain(format!("eps out of [-1,1]: {eps}")));
    }
    if !(p > 0.0 && p <= p_max + 1e-15) {
        return Err(Error::Domain(format!("p = {p} outside (0, {p_max}]")));
    }
    if k > 4 {
        return Err(Error::Domain(format!("derivative order {k} > 4 is not supported")));
    }
    let mut d = f.clone();
    for _ in 0..k {
        d = d.derivative()?;
    }
    let phi0 = RadialEigen::solve(fam, Complex64::default(), f.radius(), 1e-10)?;
    let mut sup = 0.0f64;
    for i in 0..f.len() {
        let x = f.x(i);
        let w = phi0.phi(x)?.re;
        sup = sup.max((x.abs() + 1.0).powf(s) * w.powf(-2.0 / p) * d.value(i).norm());
    }
    Ok(sup)
}
