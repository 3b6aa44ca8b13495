//! Admissible weight families `A(x) = |x|^{2α+1} B(x)`.
//!
//! Three kinds are supported: the pure power weight (`ρ = 0`), the Jacobi
//! weight `|sinh x|^{2α+1} cosh^{2β+1} x` (`ρ = α + β + 1`), and a weight whose
//! smooth factor `B` is read from a table.

use crate::error::{Error, Result};
use serde::Serialize;
use std::path::Path;

const TAYLOR_TERMS: usize = 64;
const JACOBI_SERIES_SWITCH: f64 = 1e-2;

/// Smooth factor `B` and its derivative tabulated on a positive grid.
#[derive(Debug, Clone)]
pub struct WeightTable {
    xs: Vec<f64>,
    b: Vec<f64>,
    bp: Vec<f64>,
}

impl WeightTable {
    pub fn new(xs: Vec<f64>, b: Vec<f64>, bp: Vec<f64>) -> Result<Self> {
        if xs.len() < 8 || xs.len() != b.len() || xs.len() != bp.len() {
            return Err(Error::Config("weight table needs at least 8 rows of x,B,Bprime".into()));
        }
        if xs[0] <= 0.0 || xs.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Config("weight table grid must be positive and increasing".into()));
        }
        if let Some(i) = b.iter().position(|v| !(*v > 0.0) || !v.is_finite()) {
            return Err(Error::Inadmissible(format!("B({}) = {} is not positive", xs[i], b[i])));
        }
        Ok(Self { xs, b, bp })
    }

    /// Reads a CSV file with header `x,B,Bprime`.
    pub fn from_csv(path: impl AsRef<Path>) -> Result<Self> {
        let mut rdr = csv::Reader::from_path(path.as_ref())?;
        let headers = rdr.headers()?.clone();
        let want = ["x", "B", "Bprime"];
        if headers.len() != 3 || headers.iter().zip(want).any(|(h, w)| h.trim() != w) {
            return Err(Error::Config(format!(
                "{}: expected header x,B,Bprime",
                path.as_ref().display()
            )));
        }
        let (mut xs, mut b, mut bp) = (vec![], vec![], vec![]);
        for (line, rec) in rdr.records().enumerate() {
            let rec = rec?;
            let parse = |k: usize| -> Result<f64> {
                rec[k].trim().parse::<f64>().map_err(|e| {
                    Error::Config(format!("{}: row {}: {e}", path.as_ref().display(), line + 2))
                })
            };
            xs.push(parse(0)?);
            b.push(parse(1)?);
            bp.push(parse(2)?);
        }
        Self::new(xs, b, bp)
    }

    pub fn x_min(&self) -> f64 {
        self.xs[0]
    }

    pub fn x_max(&self) -> f64 {
        *self.xs.last().unwrap()
    }

    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    /// Cubic Hermite interpolation of (B, B′) inside the table.
    fn hermite(&self, x: f64) -> (f64, f64) {
        let i = match self.xs.binary_search_by(|v| v.partial_cmp(&x).unwrap()) {
            Ok(i) => return (self.b[i], self.bp[i]),
            Err(i) => i.clamp(1, self.xs.len() - 1) - 1,
        };
        let (x0, x1) = (self.xs[i], self.xs[i + 1]);
        let h = x1 - x0;
        let t = (x - x0) / h;
        let (y0, y1, m0, m1) = (self.b[i], self.b[i + 1], self.bp[i] * h, self.bp[i + 1] * h);
        let t2 = t * t;
        let t3 = t2 * t;
        let v = (2.0 * t3 - 3.0 * t2 + 1.0) * y0
            + (t3 - 2.0 * t2 + t) * m0
            + (-2.0 * t3 + 3.0 * t2) * y1
            + (t3 - t2) * m1;
        let d = (6.0 * t2 - 6.0 * t) * y0
            + (3.0 * t2 - 4.0 * t + 1.0) * m0
            + (-6.0 * t2 + 6.0 * t) * y1
            + (3.0 * t2 - 2.0 * t) * m1;
        (v, d / h)
    }
}

/// The weight family.
#[derive(Debug, Clone)]
pub enum FamilyKind {
    Dunkl { alpha: f64 },
    Jacobi { alpha: f64, beta: f64 },
    Table(WeightTable),
}

/// An admissible weight together with its Taylor data at the origin.
#[derive(Debug, Clone)]
pub struct ChebliFamily {
    kind: FamilyKind,
    alpha: f64,
    rho: f64,
    /// `C(x) = Σ c[k] x^{2k+1}` near 0.
    c_taylor: Vec<f64>,
    /// `B(x) = Σ b[m] x^{2m}` near 0.
    b_taylor: Vec<f64>,
    /// Largest radius at which the Taylor data may be used.
    series_cap: f64,
}

impl ChebliFamily {
    pub fn dunkl(alpha: f64) -> Result<Self> {
        if !(alpha > -0.5 && alpha.is_finite()) {
            return Err(Error::Domain(format!("Dunkl family needs alpha > -1/2, got {alpha}")));
        }
        let mut b_taylor = vec![0.0; TAYLOR_TERMS];
        b_taylor[0] = 1.0;
        Ok(Self {
            kind: FamilyKind::Dunkl { alpha },
            alpha,
            rho: 0.0,
            c_taylor: vec![0.0; TAYLOR_TERMS],
            b_taylor,
            series_cap: f64::INFINITY,
        })
    }

    pub fn jacobi(alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha.is_finite() && beta.is_finite() && alpha >= beta && beta >= -0.5 && alpha != -0.5) {
            return Err(Error::Domain(format!(
                "Jacobi family needs alpha >= beta >= -1/2 and alpha != -1/2, got ({alpha}, {beta})"
            )));
        }
        let g = coth_minus_inv_coeffs(TAYLOR_TERMS);
        let t = tanh_coeffs(TAYLOR_TERMS);
        let c: Vec<f64> = (0..TAYLOR_TERMS)
            .map(|k| (2.0 * alpha + 1.0) * g[k] + (2.0 * beta + 1.0) * t[k])
            .collect();
        let b_taylor = exp_series_from_c(&c);
        Ok(Self {
            kind: FamilyKind::Jacobi { alpha, beta },
            alpha,
            rho: alpha + beta + 1.0,
            c_taylor: c,
            b_taylor,
            series_cap: 0.5,
        })
    }

    /// Table-backed family, rejected if it fails positivity or monotonicity.
    pub fn table(table: WeightTable, alpha: f64, rho: Option<f64>) -> Result<Self> {
        let fam = Self::table_unchecked(table, alpha, rho)?;
        let grid: Vec<f64> = match &fam.kind {
            FamilyKind::Table(t) => t.xs.clone(),
            _ => unreachable!(),
        };
        let report = fam.check_hypotheses(&grid)?;
        for h in [&report.h1, &report.h2, &report.h3] {
            if !h.passed {
                return Err(Error::Inadmissible(format!(
                    "{}: violation {:.3e} at x = {:?}",
                    h.name, h.max_violation, h.location
                )));
            }
        }
        Ok(fam)
    }

    /// Table-backed family without hypothesis validation.
    pub fn table_unchecked(table: WeightTable, alpha: f64, rho: Option<f64>) -> Result<Self> {
        if !(alpha > -0.5 && alpha.is_finite()) {
            return Err(Error::Domain(format!("table family needs alpha > -1/2, got {alpha}")));
        }
        let c_taylor = fit_odd_taylor(&table);
        let b_taylor = exp_series_from_c(&c_taylor);
        let rho = match rho {
            Some(r) => r,
            None => {
                let n = table.xs.len() - 1;
                let c_end = table.bp[n] / table.b[n];
                if c_end.abs() < 1e-8 {
                    0.0
                } else {
                    0.5 * ((2.0 * alpha + 1.0) / table.xs[n] + c_end)
                }
            }
        };
        if !(rho >= 0.0) {
            return Err(Error::Inadmissible(format!("index rho = {rho} is negative")));
        }
        let series_cap = 0.1f64.min(table.x_min().max(0.02));
        Ok(Self { kind: FamilyKind::Table(table), alpha, rho, c_taylor, b_taylor, series_cap })
    }

    pub fn kind(&self) -> &FamilyKind {
        &self.kind
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn is_dunkl(&self) -> bool {
        matches!(self.kind, FamilyKind::Dunkl { .. })
    }

    /// `ρ_ε = √(1−ε²)·ρ`.
    pub fn rho_eps(&self, eps: f64) -> f64 {
        (1.0 - eps * eps).max(0.0).sqrt() * self.rho
    }

    pub fn label(&self) -> String {
        match &self.kind {
            FamilyKind::Dunkl { alpha } => format!("dunkl(alpha={alpha})"),
            FamilyKind::Jacobi { alpha, beta } => format!("jacobi(alpha={alpha}, beta={beta})"),
            FamilyKind::Table(t) => format!("table(alpha={}, {} rows)", self.alpha, t.xs.len()),
        }
    }

    pub fn c_taylor(&self) -> &[f64] {
        &self.c_taylor
    }

    pub fn b_taylor(&self) -> &[f64] {
        &self.b_taylor
    }

    /// Radius below which the Taylor data at 0 are trusted.
    pub fn series_cap(&self) -> f64 {
        self.series_cap
    }

    /// Upper end of the range where the weight is known.
    pub fn max_radius(&self) -> f64 {
        match &self.kind {
            FamilyKind::Table(t) => t.x_max(),
            _ => f64::INFINITY,
        }
    }

    fn check_x(&self, x: f64) -> Result<f64> {
        if !x.is_finite() {
            return Err(Error::Domain(format!("non-finite x = {x}")));
        }
        let ax = x.abs();
        if ax > self.max_radius() * (1.0 + 1e-12) {
            return Err(Error::Domain(format!(
                "|x| = {ax} beyond weight table end {}",
                self.max_radius()
            )));
        }
        Ok(ax)
    }

    fn taylor_b(&self, x: f64) -> f64 {
        let y = x * x;
        self.b_taylor.iter().rev().fold(0.0, |acc, b| acc * y + b)
    }

    fn taylor_c(&self, x: f64) -> f64 {
        let y = x * x;
        x * self.c_taylor.iter().rev().fold(0.0, |acc, c| acc * y + c)
    }

    /// Smooth factor `B(|x|)`.
    pub fn smooth_factor(&self, x: f64) -> Result<f64> {
        let ax = self.check_x(x)?;
        Ok(match &self.kind {
            FamilyKind::Dunkl { .. } => 1.0,
            FamilyKind::Jacobi { alpha, beta } => {
                let s = if ax < 1e-8 { 1.0 + ax * ax / 6.0 } else { ax.sinh() / ax };
                s.powf(2.0 * alpha + 1.0) * ax.cosh().powf(2.0 * beta + 1.0)
            }
            FamilyKind::Table(t) => {
                if ax < t.x_min() {
                    self.taylor_b(ax)
                } else {
                    t.hermite(ax).0
                }
            }
        })
    }

    /// `C = B′/B`, odd and smooth.
    pub fn smooth_log_derivative(&self, x: f64) -> Result<f64> {
        let ax = self.check_x(x)?;
        let c = match &self.kind {
            FamilyKind::Dunkl { .. } => 0.0,
            FamilyKind::Jacobi { alpha, beta } => {
                let g = if ax < JACOBI_SERIES_SWITCH { self.coth_minus_inv(ax) } else { 1.0 / ax.tanh() - 1.0 / ax };
                (2.0 * alpha + 1.0) * g + (2.0 * beta + 1.0) * ax.tanh()
            }
            FamilyKind::Table(t) => {
                if ax < t.x_min() {
                    self.taylor_c(ax)
                } else {
                    let (b, bp) = t.hermite(ax);
                    bp / b
                }
            }
        };
        Ok(if x < 0.0 { -c } else { c })
    }

    fn coth_minus_inv(&self, x: f64) -> f64 {
        // x/3 − x³/45 + 2x⁵/945 − x⁷/4725
        let y = x * x;
        x * (1.0 / 3.0 + y * (-1.0 / 45.0 + y * (2.0 / 945.0 - y / 4725.0)))
    }

    /// `A(x)`.
    pub fn weight(&self, x: f64) -> Result<f64> {
        let ax = self.check_x(x)?;
        if ax == 0.0 {
            return Ok(0.0);
        }
        Ok(match &self.kind {
            FamilyKind::Dunkl { alpha } => ax.powf(2.0 * alpha + 1.0),
            FamilyKind::Jacobi { alpha, beta } => {
                ((2.0 * alpha + 1.0) * ax.sinh().ln() + (2.0 * beta + 1.0) * ax.cosh().ln()).exp()
            }
            FamilyKind::Table(_) => ax.powf(2.0 * self.alpha + 1.0) * self.smooth_factor(ax)?,
        })
    }

    /// `A′(x)/A(x) = (2α+1)/x + C(x)`, odd.
    pub fn log_derivative(&self, x: f64) -> Result<f64> {
        if x == 0.0 {
            return Err(Error::Singularity("A'/A is singular at x = 0".into()));
        }
        Ok((2.0 * self.alpha + 1.0) / x + self.smooth_log_derivative(x)?)
    }

    /// `A′/A − 2ρ` for ρ > 0, or `A′/A − (2α+1)/x` for ρ = 0, at x > 0,
    /// computed without cancellation where a closed form exists.
    pub fn tail_residual(&self, x: f64) -> Result<f64> {
        if !(x > 0.0) {
            return Err(Error::Domain(format!("tail residual needs x > 0, got {x}")));
        }
        Ok(match &self.kind {
            FamilyKind::Dunkl { .. } => 0.0,
            FamilyKind::Jacobi { alpha, beta } => {
                let e = (2.0 * x).exp();
                (2.0 * alpha + 1.0) * 2.0 / (e - 1.0) - (2.0 * beta + 1.0) * 2.0 / (e + 1.0)
            }
            FamilyKind::Table(_) => {
                if self.rho > 0.0 {
                    self.log_derivative(x)? - 2.0 * self.rho
                } else {
                    self.smooth_log_derivative(x)?
                }
            }
        })
    }

    /// Runs the admissibility checks on a positive increasing grid.
    pub fn check_hypotheses(&self, grid: &[f64]) -> Result<HypothesisReport> {
        if grid.len() < 4 || grid[0] <= 0.0 || grid.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Config("hypothesis grid must be positive, increasing, >= 4 points".into()));
        }
        let a: Vec<f64> = grid.iter().map(|&x| self.weight(x)).collect::<Result<_>>()?;
        let l: Vec<f64> = grid.iter().map(|&x| self.log_derivative(x)).collect::<Result<_>>()?;

        // H1: positivity, evenness, A/|x|^{2α+1} → 1 at the origin
        let mut h1 = Check::new("positivity and normalization");
        for (i, &x) in grid.iter().enumerate() {
            if !(a[i] > 0.0) {
                h1.record(1.0, x);
            }
            let sym = (self.weight(-x)? - a[i]).abs() / a[i].max(f64::MIN_POSITIVE);
            h1.record(sym, x);
        }
        let x_small = 1e-4f64.min(grid[0]);
        let ratio = self.weight(x_small)? / x_small.powf(2.0 * self.alpha + 1.0);
        h1.record((ratio - 1.0).abs() - 1e-6, x_small);

        // H2: A increasing
        let mut h2 = Check::new("weight increasing");
        for i in 1..grid.len() {
            h2.record((a[i - 1] - a[i]) / a[i - 1], grid[i]);
        }
        if *a.last().unwrap() <= a[0] {
            h2.record(1.0, *grid.last().unwrap());
        }

        // H3: A′/A decreasing
        let mut h3 = Check::new("log-derivative decreasing");
        for i in 1..grid.len() {
            h3.record((l[i] - l[i - 1]) / l[i - 1].abs().max(1.0), grid[i]);
        }

        // H4: exponential decay of the residual on the tail
        let mut h4 = Check::new("exponential decay of log-derivative residual");
        let tail = &grid[grid.len() * 2 / 3..];
        let mut pts = vec![];
        let mut worst: f64 = 0.0;
        for &x in tail {
            let r = self.tail_residual(x)?.abs();
            worst = worst.max(r);
            if r > 1e-300 {
                pts.push((x, r.ln()));
            }
        }
        let delta = if worst < 1e-14 {
            None
        } else if pts.len() >= 3 {
            let (slope, _) = linear_fit(&pts);
            let d = -slope;
            if !(d > 0.0) {
                h4.record(1.0 + slope, tail[0]);
            }
            Some(d)
        } else {
            h4.record(1.0, tail[0]);
            None
        };
        Ok(HypothesisReport { h1, h2, h3, h4, delta })
    }
}

/// Pass/fail outcome of one hypothesis with the worst violation found.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub max_violation: f64,
    pub location: Option<f64>,
}

impl Check {
    fn new(name: &'static str) -> Self {
        Self { name, passed: true, max_violation: 0.0, location: None }
    }

    fn record(&mut self, violation: f64, x: f64) {
        let tol = 1e-12;
        if violation > self.max_violation {
            self.max_violation = violation;
            if violation > tol {
                self.passed = false;
                self.location = Some(x);
            }
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct HypothesisReport {
    pub h1: Check,
    pub h2: Check,
    pub h3: Check,
    pub h4: Check,
    /// Fitted decay rate of the tail residual; `None` when it vanishes identically.
    pub delta: Option<f64>,
}

impl HypothesisReport {
    pub fn all_passed(&self) -> bool {
        self.h1.passed && self.h2.passed && self.h3.passed && self.h4.passed
    }
}

fn linear_fit(pts: &[(f64, f64)]) -> (f64, f64) {
    let n = pts.len() as f64;
    let (sx, sy) = pts.iter().fold((0.0, 0.0), |(a, b), p| (a + p.0, b + p.1));
    let (mx, my) = (sx / n, sy / n);
    let (mut sxx, mut sxy) = (0.0, 0.0);
    for &(x, y) in pts {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    let slope = sxy / sxx;
    (slope, my - slope * mx)
}

/// Taylor coefficients of `tanh x = Σ t_k x^{2k+1}`.
fn tanh_coeffs(n: usize) -> Vec<f64> {
    let mut t = vec![0.0; n];
    for k in 0..n {
        let mut s = if k == 0 { 1.0 } else { 0.0 };
        if k >= 1 {
            for i in 0..k {
                s -= t[i] * t[k - 1 - i];
            }
        }
        t[k] = s / (2 * k + 1) as f64;
    }
    t
}

/// Taylor coefficients of `coth x − 1/x = Σ g_k x^{2k+1}`.
fn coth_minus_inv_coeffs(n: usize) -> Vec<f64> {
    let mut g = vec![0.0; n];
    for k in 0..n {
        let mut s = if k == 0 { 1.0 } else { 0.0 };
        if k >= 1 {
            for i in 0..k {
                s -= g[i] * g[k - 1 - i];
            }
        }
        g[k] = s / (2 * k + 3) as f64;
    }
    g
}

/// Coefficients of `B = exp(∫C)` in powers of x² given `C = Σ c_k x^{2k+1}`.
fn exp_series_from_c(c: &[f64]) -> Vec<f64> {
    let n = c.len();
    let ell: Vec<f64> = (0..n).map(|m| if m == 0 { 0.0 } else { c[m - 1] / (2 * m) as f64 }).collect();
    let mut b = vec![0.0; n];
    b[0] = 1.0;
    for m in 1..n {
        let s: f64 = (1..=m).map(|k| k as f64 * ell[k] * b[m - k]).sum();
        b[m] = s / m as f64;
    }
    b
}

/// Least-squares odd polynomial fit of `C = B′/B` on the leading table rows.
fn fit_odd_taylor(t: &WeightTable) -> Vec<f64> {
    const DEG: usize = 4;
    let limit = (t.x_min() * 12.0).max(0.5);
    let pts: Vec<(f64, f64)> = t
        .xs
        .iter()
        .zip(t.b.iter().zip(&t.bp))
        .filter(|(x, _)| **x <= limit)
        .map(|(x, (b, bp))| (*x, bp / b))
        .collect();
    let mut c = vec![0.0; TAYLOR_TERMS];
    let deg = DEG.min(pts.len());
    if deg == 0 {
        return c;
    }
    // normal equations for basis x^{2k+1}, k < deg, scaled by the fit radius
    let s = pts.iter().map(|p| p.0).fold(0.0, f64::max);
    let mut m = vec![vec![0.0; deg + 1]; deg];
    for &(x, y) in &pts {
        let u = x / s;
        let basis: Vec<f64> = (0..deg).map(|k| u.powi(2 * k as i32 + 1)).collect();
        for i in 0..deg {
            for j in 0..deg {
                m[i][j] += basis[i] * basis[j];
            }
            m[i][deg] += basis[i] * y;
        }
    }
    let sol = solve_dense(m);
    for k in 0..deg {
        c[k] = sol[k] / s.powi(2 * k as i32 + 1);
    }
    c
}

fn solve_dense(mut m: Vec<Vec<f64>>) -> Vec<f64> {
    let n = m.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&a, &b| m[a][col].abs().partial_cmp(&m[b][col].abs()).unwrap()).unwrap();
        m.swap(col, piv);
        let p = m[col][col];
        if p.abs() < 1e-300 {
            continue;
        }
        for r in 0..n {
            if r != col {
                let f = m[r][col] / p;
                for k in col..=n {
                    m[r][k] -= f * m[col][k];
                }
            }
        }
    }
    (0..n).map(|i| if m[i][i].abs() < 1e-300 { 0.0 } else { m[i][n] / m[i][i] }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dunkl_weight_and_log_derivative() {
        let f = ChebliFamily::dunkl(0.5).unwrap();
        assert_eq!(f.weight(2.0).unwrap(), 4.0);
        assert_eq!(f.log_derivative(1.0).unwrap(), 2.0);
        for x in [0.01, 0.3, 7.0, 123.0] {
            assert!((x * f.log_derivative(x).unwrap() - 2.0).abs() < 1e-15);
        }
    }

    #[test]
    fn jacobi_weight_value() {
        let f = ChebliFamily::jacobi(1.5, 0.5).unwrap();
        let exact = 1f64.sinh().powi(4) * 1f64.cosh().powi(2);
        assert!((f.weight(1.0).unwrap() - exact).abs() < 1e-13 * exact);
        assert!((f.weight(1.0).unwrap() - 4.541_780_461_229_352).abs() < 1e-12);
        assert_eq!(f.weight(0.0).unwrap(), 0.0);
        assert!((f.log_derivative(20.0).unwrap() - 6.0).abs() < 1e-6);
    }

    #[test]
    fn jacobi_log_derivative_is_continuous_across_series_switch() {
        let f = ChebliFamily::jacobi(1.5, 0.5).unwrap();
        let direct = |x: f64| 4.0 / x.tanh() + 2.0 * x.tanh();
        for x in [0.009_999, 0.010_001, 0.05, 0.3] {
            let v = f.log_derivative(x).unwrap();
            assert!((v - direct(x)).abs() < 1e-10 * v.abs(), "x = {x}");
        }
    }

    #[test]
    fn taylor_coefficients_match_closed_forms() {
        let t = tanh_coeffs(4);
        assert!((t[0] - 1.0).abs() < 1e-16 && (t[1] + 1.0 / 3.0).abs() < 1e-16);
        assert!((t[2] - 2.0 / 15.0).abs() < 1e-16);
        let g = coth_minus_inv_coeffs(3);
        assert!((g[0] - 1.0 / 3.0).abs() < 1e-16 && (g[1] + 1.0 / 45.0).abs() < 1e-16);
        assert!((g[2] - 2.0 / 945.0).abs() < 1e-17);
        let f = ChebliFamily::jacobi(1.5, 0.5).unwrap();
        for x in [0.1, 0.3, 0.5] {
            assert!((f.taylor_b(x) - f.smooth_factor(x).unwrap()).abs() < 1e-13);
            assert!((f.taylor_c(x) - f.smooth_log_derivative(x).unwrap()).abs() < 1e-13);
        }
    }

    #[test]
    fn rho_eps_endpoints() {
        let f = ChebliFamily::jacobi(1.5, 0.5).unwrap();
        assert_eq!(f.rho_eps(1.0), 0.0);
        assert_eq!(f.rho_eps(-1.0), 0.0);
        assert_eq!(f.rho_eps(0.0), 3.0);
    }

    #[test]
    fn hypotheses_hold_for_builtin_families() {
        let grid: Vec<f64> = (1..=200).map(|i| 0.1 * i as f64).collect();
        let r = ChebliFamily::dunkl(0.5).unwrap().check_hypotheses(&grid).unwrap();
        assert!(r.all_passed(), "{r:?}");
        let grid: Vec<f64> = (1..=150).map(|i| 0.1 * i as f64).collect();
        let r = ChebliFamily::jacobi(1.5, 0.5).unwrap().check_hypotheses(&grid).unwrap();
        assert!(r.all_passed(), "{r:?}");
        let d = r.delta.unwrap();
        assert!((d - 2.0).abs() < 0.2, "delta = {d}");
    }

    #[test]
    fn non_monotone_table_is_rejected_with_location() {
        let xs: Vec<f64> = (1..=40).map(|i| 0.1 * i as f64).collect();
        // B dips near x = 2, so A = x·B decreases there
        let bump = |x: f64| (-8.0 * (x - 2.0) * (x - 2.0)).exp();
        let b: Vec<f64> = xs.iter().map(|&x| 1.0 - 0.9 * bump(x)).collect();
        let bp: Vec<f64> = xs.iter().map(|&x| 14.4 * (x - 2.0) * bump(x)).collect();
        let t = WeightTable::new(xs.clone(), b.clone(), bp.clone()).unwrap();
        let fam = ChebliFamily::table_unchecked(t, 0.0, Some(0.0)).unwrap();
        let r = fam.check_hypotheses(&xs).unwrap();
        assert!(!r.h2.passed);
        let loc = r.h2.location.unwrap();
        assert!(loc > 1.5 && loc < 2.6, "located at {loc}");
        let t = WeightTable::new(xs, b, bp).unwrap();
        assert!(matches!(ChebliFamily::table(t, 0.0, Some(0.0)), Err(Error::Inadmissible(_))));
    }

    #[test]
    fn table_reproduces_jacobi() {
        let jac = ChebliFamily::jacobi(0.5, 0.0).unwrap();
        let xs: Vec<f64> = (1..=400).map(|i| 0.02 * i as f64).collect();
        let b: Vec<f64> = xs.iter().map(|&x| jac.smooth_factor(x).unwrap()).collect();
        let bp: Vec<f64> = xs.iter().map(|&x| jac.smooth_factor(x).unwrap() * jac.smooth_log_derivative(x).unwrap()).collect();
        let fam = ChebliFamily::table(WeightTable::new(xs, b, bp).unwrap(), 0.5, None).unwrap();
        assert!((fam.rho() - 1.5).abs() < 1e-3);
        for x in [0.01, 0.5, 3.3, 7.7] {
            let (a, e) = (fam.weight(x).unwrap(), jac.weight(x).unwrap());
            assert!((a - e).abs() < 1e-7 * e, "x = {x}");
            let (l, m) = (fam.log_derivative(x).unwrap(), jac.log_derivative(x).unwrap());
            assert!((l - m).abs() < 1e-5 * m.abs(), "x = {x}: {l} vs {m}");
        }
    }
}
