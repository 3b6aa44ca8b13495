//! The heat-type kernel
//!
//! ```text
//! W_ε(s; u, x) = (1/2π) ∫ Ψ(−λ, x) e^{−sλ²} e^{iλu} dλ
//! ```
//!
//! synthesised by the trapezoid rule on a symmetric `λ` grid. The integrand
//! is Gaussian-damped at both ends, so the rule converges spectrally; the
//! imaginary part of the sum must vanish and is reported as a residue.

use crate::chebli::ChebliFamily;
use crate::eigen::{apply_lambda_op, RadialEigen};
use crate::error::{Error, Result};
use crate::grid::SampledFunction;
use crate::quad::simpson;
use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Parameters of the synthesis integral.
#[derive(Debug, Clone)]
pub struct HeatEval {
    fam: ChebliFamily,
    eps: f64,
    s: f64,
    lambda_max: f64,
    step: f64,
    tol: f64,
}

impl HeatEval {
    /// `Λ_max = √(ln(1/tol)/s) + 5` and `dλ = 0.2`.
    pub fn new(fam: &ChebliFamily, eps: f64, s: f64, tol: f64) -> Result<Self> {
        if !(-1.0..=1.0).contains(&eps) {
            return Err(Error::Domain(format!("eps out of [-1,1]: {eps}")));
        }
        if !(s > 0.0 && s.is_finite()) {
            return Err(Error::Domain(format!("heat time must be positive, got {s}")));
        }
        if !(tol > 0.0 && tol < 1.0) {
            return Err(Error::Config(format!("tolerance must lie in (0, 1), got {tol}")));
        }
        let lambda_max = ((1.0 / tol).ln() / s).sqrt() + 5.0;
        Ok(Self { fam: fam.clone(), eps, s, lambda_max, step: 0.2, tol })
    }

    pub fn with_lambda_max(mut self, lambda_max: f64) -> Self {
        self.lambda_max = lambda_max;
        self
    }

    pub fn with_step(mut self, step: f64) -> Self {
        self.step = step;
        self
    }

    pub fn family(&self) -> &ChebliFamily {
        &self.fam
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn lambda_max(&self) -> f64 {
        self.lambda_max
    }

    /// `e^{−sΛ²}` times the polynomial growth of `|Ψ|` on the real axis.
    pub fn truncation_bound(&self) -> f64 {
        (-self.s * self.lambda_max * self.lambda_max).exp() / (2.0 * PI * self.s * self.lambda_max)
    }

    /// Solves once per `λ` node and keeps `Ψ(−λ_k, x_j)` for the given abscissae.
    pub fn cache(&self, xs: &[f64]) -> Result<HeatCache> {
        let n = (self.lambda_max / self.step).ceil() as usize;
        let dl = self.lambda_max / n as f64;
        let radius = xs.iter().fold(0.0f64, |m, x| m.max(x.abs())).max(1e-3);
        let gap = self.fam.rho_eps(self.eps);
        let er = self.eps * self.fam.rho();
        let rows: Vec<(f64, Vec<Complex64>, Vec<Complex64>)> = (0..=n)
            .into_par_iter()
            .map(|k| {
                let lam = k as f64 * dl;
                let rad = RadialEigen::solve(&self.fam, Complex64::from(lam * lam - gap * gap), radius, 1e-11)?;
                let mut pos = Vec::with_capacity(xs.len());
                let mut neg = Vec::with_capacity(xs.len());
                for &x in xs {
                    let st = rad.state(x)?;
                    // Ψ(−λ, x) and Ψ(λ, x)
                    pos.push(st.phi + (-I * lam + er) * st.q);
                    neg.push(st.phi + (I * lam + er) * st.q);
                }
                Ok((lam, pos, neg))
            })
            .collect::<Result<_>>()?;
        Ok(HeatCache { s: self.s, dl, xs: xs.to_vec(), rows })
    }

    /// `W_ε(s; u, x)` at one point.
    pub fn w_eps(&self, u: f64, x: f64) -> Result<f64> {
        let c = self.cache(&[x])?;
        let w = c.eval(u, 0);
        if w.im.abs() > 100.0 * self.tol {
            return Err(Error::Consistency(format!("imaginary residue {:.3e} at (u, x) = ({u}, {x})", w.im)));
        }
        Ok(w.re)
    }
}

/// `Ψ(∓λ_k, x_j)` on a fixed set of abscissae.
#[derive(Debug, Clone)]
pub struct HeatCache {
    s: f64,
    dl: f64,
    xs: Vec<f64>,
    /// `(λ_k, Ψ(−λ_k, x_j), Ψ(λ_k, x_j))`.
    rows: Vec<(f64, Vec<Complex64>, Vec<Complex64>)>,
}

impl HeatCache {
    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    /// The two-sided trapezoid sum at `(u, x_j)`; the real part is `W`.
    pub fn eval(&self, u: f64, j: usize) -> Complex64 {
        let mut acc = Complex64::default();
        for (k, (lam, pos, neg)) in self.rows.iter().enumerate() {
            let g = (-self.s * lam * lam).exp();
            let e = (I * lam * u).exp();
            let term = if k == 0 { pos[j] } else { pos[j] * e + neg[j] * e.conj() };
            acc += term * g;
        }
        acc * (self.dl / (2.0 * PI))
    }

    /// `W` on the product grid, row-major in `u`.
    pub fn table(&self, us: &[f64]) -> Vec<Vec<Complex64>> {
        us.par_iter().map(|&u| (0..self.xs.len()).map(|j| self.eval(u, j)).collect()).collect()
    }
}

/// Minimum of `W` over a product grid.
#[derive(Debug, Clone)]
pub struct ScanReport {
    pub min: f64,
    pub argmin: (f64, f64),
    pub max: f64,
    /// Largest `|Im|` of the synthesis sum.
    pub max_residue: f64,
    /// `sup_u |W(s; u, 0) − e^{−u²/4s}/(2√(πs))|` when `x = 0` is on the grid.
    pub origin_error: Option<f64>,
    /// `W[i][j]` at `(us[i], xs[j])`.
    pub values: Vec<Vec<f64>>,
}

/// `e^{−u²/4s}/(2√(πs))`.
pub fn euclidean_heat(s: f64, u: f64) -> f64 {
    (-u * u / (4.0 * s)).exp() / (2.0 * (PI * s).sqrt())
}

pub fn positivity_scan(he: &HeatEval, us: &[f64], xs: &[f64]) -> Result<ScanReport> {
    let cache = he.cache(xs)?;
    let table = cache.table(us);
    let mut min = f64::INFINITY;
    let mut argmin = (0.0, 0.0);
    let mut max = f64::NEG_INFINITY;
    let mut max_residue = 0.0f64;
    for (i, row) in table.iter().enumerate() {
        for (j, w) in row.iter().enumerate() {
            if w.re < min {
                min = w.re;
                argmin = (us[i], xs[j]);
            }
            max = max.max(w.re);
            max_residue = max_residue.max(w.im.abs());
        }
    }
    let origin_error = xs.iter().position(|&x| x == 0.0).map(|j| {
        us.iter().zip(&table).map(|(&u, row)| (row[j].re - euclidean_heat(he.s, u)).abs()).fold(0.0, f64::max)
    });
    let values = table.into_iter().map(|r| r.into_iter().map(|w| w.re).collect()).collect();
    Ok(ScanReport { min, argmin, max, max_residue, origin_error, values })
}

/// Largest `|W|` on the shells `k·width ≤ max(|u|, |x|) < (k+1)·width`.
pub fn shell_maxima(report: &ScanReport, us: &[f64], xs: &[f64], width: f64) -> Vec<f64> {
    let reach = us.iter().chain(xs).fold(0.0f64, |m, v| m.max(v.abs()));
    let n = (reach / width).floor() as usize + 1;
    let mut out = vec![0.0f64; n];
    for (i, &u) in us.iter().enumerate() {
        for (j, &x) in xs.iter().enumerate() {
            let k = ((u.abs().max(x.abs()) / width).floor() as usize).min(n - 1);
            out[k] = out[k].max(report.values[i][j].abs());
        }
    }
    out
}

/// `max |(Λ_x + ∂_u) W|` over interior points, by fourth-order differences.
pub fn transport_residual(he: &HeatEval, radius: f64, step: f64) -> Result<f64> {
    let n = SampledFunction::half_points(radius, step)?;
    let grid: Vec<f64> = (0..=2 * n).map(|i| (i as f64 - n as f64) * step).collect();
    let cache = he.cache(&grid)?;
    let table = cache.table(&grid);
    let mut worst = 0.0f64;
    // Λ_x along each row, ∂_u along each column
    let mut lx = Vec::with_capacity(grid.len());
    for row in &table {
        let f = SampledFunction::new(step, row.iter().map(|w| Complex64::from(w.re)).collect())?;
        lx.push(apply_lambda_op(&he.fam, he.eps, &f)?);
    }
    for j in 2..grid.len() - 2 {
        for i in 2..grid.len() - 2 {
            let du = (table[i - 2][j].re - 8.0 * table[i - 1][j].re + 8.0 * table[i + 1][j].re - table[i + 2][j].re)
                / (12.0 * step);
            worst = worst.max((lx[i].value(j).re + du).abs());
        }
    }
    Ok(worst)
}

/// `max |W(2s; u, x) − ∫ W(s; u − v, x) p_s(v) dv|` for `|u| ≤ u_max`.
///
/// The convolution runs over `v ∈ [−v_max, v_max]` by Simpson's rule.
pub fn semigroup_residual(he: &HeatEval, xs: &[f64], u_max: f64, v_max: f64, step: f64) -> Result<f64> {
    let twice = HeatEval { s: 2.0 * he.s, lambda_max: he.lambda_max, ..he.clone() };
    let nu = SampledFunction::half_points(u_max, step)?;
    let nv = SampledFunction::half_points(v_max, step)?;
    let us: Vec<f64> = (0..=2 * nu).map(|i| (i as f64 - nu as f64) * step).collect();
    let wide: Vec<f64> = (0..=2 * (nu + nv)).map(|i| (i as f64 - (nu + nv) as f64) * step).collect();
    let base = he.cache(xs)?.table(&wide);
    let target = twice.cache(xs)?.table(&us);
    let kernel: Vec<f64> = (0..=2 * nv).map(|i| euclidean_heat(he.s, (i as f64 - nv as f64) * step)).collect();
    let mut worst = 0.0f64;
    for (i, row) in target.iter().enumerate() {
        for (j, w) in row.iter().enumerate() {
            // u − v runs over wide[i + 2nv - m] for m = 0..=2nv
            let vals: Vec<f64> = (0..=2 * nv).map(|m| base[i + 2 * nv - m][j].re * kernel[m]).collect();
            worst = worst.max((simpson(&vals, step) - w.re).abs());
        }
    }
    Ok(worst)
}

/// `min (W_even − e^{−(|u|+|x|)²/4s}/(2√(πs))·φ_{iρ_ε}(x))` over the grid.
pub fn even_part_margin(he: &HeatEval, us: &[f64], xs: &[f64]) -> Result<f64> {
    let mirrored: Vec<f64> = xs.iter().flat_map(|&x| [x, -x]).collect();
    let table = he.cache(&mirrored)?.table(us);
    let gap = he.fam.rho_eps(he.eps);
    let radius = xs.iter().fold(0.0f64, |m, x| m.max(x.abs())).max(1e-3);
    let phi = RadialEigen::solve(&he.fam, Complex64::from(-gap * gap), radius, 1e-11)?;
    let mut margin = f64::INFINITY;
    for (i, &u) in us.iter().enumerate() {
        for (j, &x) in xs.iter().enumerate() {
            let even = 0.5 * (table[i][2 * j].re + table[i][2 * j + 1].re);
            let bound = euclidean_heat(he.s, u.abs() + x.abs()) * phi.phi(x)?.re;
            margin = margin.min(even - bound);
        }
    }
    Ok(margin)
}
