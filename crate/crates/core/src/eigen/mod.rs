//! The radial eigenfunction `φ_μ` and the eigenfunction `Ψ(λ, ·)` of the
//! differential-reflection operator.
//!
//! `φ_μ` solves `φ″ + (A′/A)φ′ + (μ² + ρ²)φ = 0`, `φ(0) = 1`, `φ′(0) = 0`.
//! Near the origin it is summed from its Frobenius series; further out the
//! system `(φ, φ′, Q)` with `Q = (1/A)∫₀^x φA` is integrated by extrapolated
//! midpoint steps and stored on a uniform mesh. Then
//!
//! ```text
//! Ψ(λ, x) = φ_{μ_ε}(x) + (iλ + ερ)·sg(x)·Q(|x|),   μ_ε² = λ² + (ε² − 1)ρ²
//! ```
//!
//! which has no pole at `iλ = ερ`.

mod ode;
mod series;

use crate::chebli::ChebliFamily;
use crate::error::{Error, Result};
use crate::grid::SampledFunction;
use crate::report::CheckRecord;
use crate::special::normalized_bessel;
use num_complex::Complex64;
use ode::{Radial, State};
use series::Frobenius;

/// Spacing of the stored solution mesh.
pub const DEFAULT_MESH: f64 = 1.0 / 128.0;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// A spectral parameter `λ` paired with the deformation parameter `ε`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralPoint {
    lambda: Complex64,
    eps: f64,
    rho: f64,
    mu_eps_sq: Complex64,
    reg_factor: Complex64,
}

impl SpectralPoint {
    pub fn new(fam: &ChebliFamily, lambda: Complex64, eps: f64) -> Result<Self> {
        Self::with_rho(fam.rho(), lambda, eps)
    }

    pub fn with_rho(rho: f64, lambda: Complex64, eps: f64) -> Result<Self> {
        if !(-1.0..=1.0).contains(&eps) {
            return Err(Error::Domain(format!("eps out of [-1,1]: {eps}")));
        }
        if !(lambda.re.is_finite() && lambda.im.is_finite()) {
            return Err(Error::Domain(format!("non-finite lambda {lambda}")));
        }
        Ok(Self {
            lambda,
            eps,
            rho,
            mu_eps_sq: lambda * lambda + (eps * eps - 1.0) * rho * rho,
            reg_factor: I * lambda + eps * rho,
        })
    }

    pub fn lambda(&self) -> Complex64 {
        self.lambda
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    /// `μ_ε² = λ² + (ε² − 1)ρ²`.
    pub fn mu_eps_sq(&self) -> Complex64 {
        self.mu_eps_sq
    }

    /// `iλ + ερ`.
    pub fn reg_factor(&self) -> Complex64 {
        self.reg_factor
    }

    /// The same point with `λ` replaced by `−λ`.
    pub fn negated(&self) -> Self {
        Self::with_rho(self.rho, -self.lambda, self.eps).expect("already validated")
    }
}

/// `(φ(x), φ′(x), sg(x)·Q(|x|))` at a signed point `x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenState {
    pub phi: Complex64,
    pub dphi: Complex64,
    /// `sg(x)/A(x)·∫₀^{|x|} φA`.
    pub q: Complex64,
}

/// Solution of the radial Cauchy problem on `[−R, R]`.
#[derive(Debug, Clone)]
pub struct RadialEigen {
    fam: ChebliFamily,
    mu_sq: Complex64,
    kappa: Complex64,
    radius: f64,
    x0: f64,
    mesh: f64,
    k0: usize,
    series: Frobenius,
    nodes: Vec<State>,
    tol: f64,
    est_error: f64,
}

impl RadialEigen {
    /// Solves for `φ_μ` given `μ²`, valid for `|x| ≤ radius`.
    pub fn solve(fam: &ChebliFamily, mu_sq: Complex64, radius: f64, tol: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::Config(format!("radius must be positive, got {radius}")));
        }
        if !(tol > 0.0) {
            return Err(Error::Config(format!("tolerance must be positive, got {tol}")));
        }
        if radius > fam.max_radius() {
            return Err(Error::Domain(format!(
                "radius {radius} exceeds the weight range {}",
                fam.max_radius()
            )));
        }
        let rho = fam.rho();
        let kappa = mu_sq + rho * rho;
        let mut x0 = 0.5f64.min(radius / 10.0).min(fam.series_cap());
        if kappa.norm() > 0.0 {
            x0 = x0.min(4.0 / kappa.norm().sqrt());
        }
        let mesh = DEFAULT_MESH.min(x0);
        let k0 = ((x0 / mesh) + 1e-9).floor().max(1.0) as usize;
        let x0 = k0 as f64 * mesh;
        let n = ((radius / mesh) - 1e-9).ceil().max(k0 as f64) as usize;

        let series = Frobenius::new(fam, kappa, x0, tol)?;
        let mut nodes = Vec::with_capacity(n + 1);
        for k in 0..=k0 {
            let x = k as f64 * mesh;
            nodes.push(series.eval(x, fam.smooth_factor(x)?));
        }
        let sys = Radial { fam, kappa };
        let span = (n as f64 * mesh).max(mesh);
        let mut est_error = 0.1 * tol;
        for k in k0..n {
            let (next, err) = sys.advance(k as f64 * mesh, &nodes[k], mesh, tol, span)?;
            est_error += err;
            nodes.push(next);
        }
        let scale = nodes.iter().map(ode::norm).fold(1.0, f64::max);
        if !(est_error <= tol * scale) {
            return Err(Error::Accuracy { requested: tol, achieved: est_error / scale });
        }
        Ok(Self {
            fam: fam.clone(),
            mu_sq,
            kappa,
            radius: n as f64 * mesh,
            x0,
            mesh,
            k0,
            series,
            nodes,
            tol,
            est_error,
        })
    }

    pub fn family(&self) -> &ChebliFamily {
        &self.fam
    }

    pub fn mu_sq(&self) -> Complex64 {
        self.mu_sq
    }

    /// `μ² + ρ²`.
    pub fn kappa(&self) -> Complex64 {
        self.kappa
    }

    /// Largest |x| at which the solution may be evaluated.
    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn est_error(&self) -> f64 {
        self.est_error
    }

    /// Radius below which the series is used.
    pub fn switch_radius(&self) -> f64 {
        self.x0
    }

    pub fn series_terms(&self) -> usize {
        self.series.terms()
    }

    fn radial_state(&self, ax: f64) -> Result<State> {
        if ax > self.radius * (1.0 + 1e-12) + 1e-14 {
            return Err(Error::Domain(format!(
                "|x| = {ax} outside the solved range {}",
                self.radius
            )));
        }
        if ax <= self.x0 {
            return Ok(self.series.eval(ax, self.fam.smooth_factor(ax)?));
        }
        let k = ((ax / self.mesh).round() as usize).clamp(self.k0, self.nodes.len() - 1);
        let xk = k as f64 * self.mesh;
        let dx = ax - xk;
        if dx.abs() <= 1e-12 * ax {
            return Ok(self.nodes[k]);
        }
        let sys = Radial { fam: &self.fam, kappa: self.kappa };
        let (y, _) = sys.advance(xk, &self.nodes[k], dx, self.tol, self.radius)?;
        Ok(y)
    }

    /// Full state at a signed point.
    pub fn state(&self, x: f64) -> Result<EigenState> {
        if !x.is_finite() {
            return Err(Error::Domain(format!("non-finite x = {x}")));
        }
        let [phi, dphi, q] = self.radial_state(x.abs())?;
        let s = if x < 0.0 { -1.0 } else if x > 0.0 { 1.0 } else { 0.0 };
        Ok(EigenState { phi, dphi: dphi * s, q: q * s })
    }

    pub fn phi(&self, x: f64) -> Result<Complex64> {
        Ok(self.state(x)?.phi)
    }

    pub fn phi_prime(&self, x: f64) -> Result<Complex64> {
        Ok(self.state(x)?.dphi)
    }

    /// `∫₀^{|x|} φ A dt`.
    pub fn integral(&self, x: f64) -> Result<Complex64> {
        let q = self.radial_state(x.abs())?[2];
        Ok(q * self.fam.weight(x)?)
    }

    /// `φ′(x)` from `−(μ² + ρ²)·sg(x)/A(x)·∫₀^{|x|} φA`.
    pub fn phi_prime_via_integral(&self, x: f64) -> Result<Complex64> {
        Ok(-self.kappa * self.state(x)?.q)
    }

    /// `φ(x) + reg·sg(x)·Q(|x|)`.
    pub fn psi(&self, reg: Complex64, x: f64) -> Result<Complex64> {
        let s = self.state(x)?;
        Ok(s.phi + reg * s.q)
    }
}

/// `Ψ(λ, ·)` on `[−R, R]` for one spectral point.
#[derive(Debug, Clone)]
pub struct Eigenfunction {
    sp: SpectralPoint,
    radial: RadialEigen,
}

impl Eigenfunction {
    pub fn new(fam: &ChebliFamily, sp: SpectralPoint, radius: f64, tol: f64) -> Result<Self> {
        Ok(Self { sp, radial: RadialEigen::solve(fam, sp.mu_eps_sq(), radius, tol)? })
    }

    pub fn spectral_point(&self) -> &SpectralPoint {
        &self.sp
    }

    pub fn radial(&self) -> &RadialEigen {
        &self.radial
    }

    pub fn at(&self, x: f64) -> Result<Complex64> {
        self.radial.psi(self.sp.reg_factor(), x)
    }

    /// `Ψ(−λ, x)` from the same radial solution.
    pub fn at_negated(&self, x: f64) -> Result<Complex64> {
        self.radial.psi(self.sp.negated().reg_factor(), x)
    }

    pub fn sample(&self, step: f64) -> Result<SampledFunction> {
        let r = (self.radial.radius() / step + 1e-9).floor() * step;
        let n = SampledFunction::half_points(r, step)?;
        let v = (0..=2 * n)
            .map(|i| self.at((i as f64 - n as f64) * step))
            .collect::<Result<Vec<_>>>()?;
        SampledFunction::new(step, v)
    }
}

/// Solves the radial problem `φ_μ` for `μ²`.
pub fn solve_phi(fam: &ChebliFamily, mu_sq: Complex64, radius: f64, tol: f64) -> Result<RadialEigen> {
    RadialEigen::solve(fam, mu_sq, radius, tol)
}

/// `Ψ(λ, x)` for a single point.
pub fn psi(fam: &ChebliFamily, sp: &SpectralPoint, x: f64, tol: f64) -> Result<Complex64> {
    if x == 0.0 {
        return Ok(Complex64::from(1.0));
    }
    Eigenfunction::new(fam, *sp, x.abs(), tol)?.at(x)
}

/// The Dunkl kernel `j_α(λx) + iλx/(2α+2)·j_{α+1}(λx)` for real `λ`.
pub fn dunkl_closed_form(alpha: f64, lambda: f64, x: f64) -> Complex64 {
    let z = lambda * x;
    Complex64::new(normalized_bessel(alpha, z), z / (2.0 * alpha + 2.0) * normalized_bessel(alpha + 1.0, z))
}

/// `Λ f = f′ + (A′/A)·(f(x) − f(−x))/2 − ερ f(−x)` on grid samples.
pub fn apply_lambda_op(fam: &ChebliFamily, eps: f64, f: &SampledFunction) -> Result<SampledFunction> {
    if !(-1.0..=1.0).contains(&eps) {
        return Err(Error::Domain(format!("eps out of [-1,1]: {eps}")));
    }
    if f.step() > f.radius() / 16.0 {
        return Err(Error::Config(format!(
            "grid too coarse: step {} > R/16 = {}",
            f.step(),
            f.radius() / 16.0
        )));
    }
    let df = f.derivative()?;
    let odd = f.odd_values();
    let c = f.half();
    let h = f.step();
    // f_o′(0) by the centred stencil on the odd part
    let dodd0 = (odd[c - 2] - odd[c - 1] * 8.0 + odd[c + 1] * 8.0 - odd[c + 2]) / (12.0 * h);
    let m = f.len() - 1;
    let er = eps * fam.rho();
    let v = (0..f.len())
        .map(|i| {
            let x = f.x(i);
            let refl = if i == c { dodd0 * (2.0 * fam.alpha() + 1.0) } else { odd[i] * fam.log_derivative(x)? };
            Ok(df.value(i) + refl - f.value(m - i) * er)
        })
        .collect::<Result<Vec<_>>>()?;
    f.with_values(v)
}

/// Growth and positivity assertions for `Ψ` on sampled grids.
///
/// `lambdas` are real spectral values, `bs` imaginary parts; bounds are
/// checked with relative slack `tol`.
pub fn verify_growth(
    fam: &ChebliFamily,
    eps: f64,
    lambdas: &[f64],
    bs: &[f64],
    xs: &[f64],
    tol: f64,
) -> Result<Vec<CheckRecord>> {
    let radius = xs.iter().fold(0.0f64, |m, x| m.max(x.abs())).max(DEFAULT_MESH);
    let solve_tol = (tol * 1e-2).max(1e-13);
    let make = |lam: Complex64| -> Result<Eigenfunction> {
        Eigenfunction::new(fam, SpectralPoint::new(fam, lam, eps)?, radius, solve_tol)
    };

    // (a) real λ
    let mut worst_a: f64 = 0.0;
    for &l in lambdas {
        let e = make(Complex64::from(l))?;
        for &x in xs {
            worst_a = worst_a.max(e.at(x)?.norm());
        }
    }

    let zero = make(Complex64::from(0.0))?;
    let mut worst_b: f64 = 0.0;
    let mut worst_c: f64 = 0.0;
    let mut min_d = f64::INFINITY;
    let mut worst_im: f64 = 0.0;
    for &b in bs {
        let eb = make(Complex64::new(0.0, b))?;
        let vals: Vec<Complex64> = xs.iter().map(|&x| eb.at(x)).collect::<Result<_>>()?;
        for (j, &x) in xs.iter().enumerate() {
            let v = vals[j];
            min_d = min_d.min(v.re);
            worst_im = worst_im.max(v.im.abs() / v.re.abs().max(1.0));
            let p0 = zero.at(x)?.re;
            worst_c = worst_c.max(v.re / (p0 * (b.abs() * x.abs()).exp()) - 1.0);
        }
        for &a in lambdas {
            let e = make(Complex64::new(a, b))?;
            for (j, &x) in xs.iter().enumerate() {
                worst_b = worst_b.max(e.at(x)?.norm() / vals[j].re - 1.0);
            }
        }
    }

    // (e) envelope of Ψ(0, ·)
    let decay = fam.rho() * (1.0 - (1.0 - eps * eps).sqrt());
    let mut c_fit: f64 = 0.0;
    for &x in xs {
        let env = (x.abs() + 1.0) * (-decay * x.abs()).exp();
        c_fit = c_fit.max(zero.at(x)?.re / env);
    }

    Ok(vec![
        CheckRecord::at_most(
            "eigen.bound_real",
            "|Psi(lambda,x)| <= sqrt(2) for real lambda",
            worst_a,
            std::f64::consts::SQRT_2 + tol,
        ),
        CheckRecord::at_most(
            "eigen.bound_complex",
            "|Psi(a+ib,x)| <= Psi(ib,x)",
            worst_b,
            tol,
        ),
        CheckRecord::at_most(
            "eigen.bound_imaginary",
            "Psi(ib,x) <= Psi(0,x) exp(|b||x|)",
            worst_c,
            tol,
        ),
        CheckRecord::at_least(
            "eigen.positivity_imaginary",
            "Psi(ib,x) real and strictly positive",
            if worst_im <= tol { min_d } else { -worst_im },
            f64::MIN_POSITIVE,
        ),
        CheckRecord::at_most(
            "eigen.zero_envelope",
            "Psi(0,x) <= c (|x|+1) exp(-rho(1-sqrt(1-eps^2))|x|)",
            c_fit,
            f64::MAX,
        ),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> Complex64 {
        Complex64::from(x)
    }

    #[test]
    fn cauchy_data() {
        for fam in [ChebliFamily::dunkl(0.5).unwrap(), ChebliFamily::jacobi(1.5, 0.5).unwrap()] {
            let r = RadialEigen::solve(&fam, c(7.3), 2.0, 1e-10).unwrap();
            let s = r.state(0.0).unwrap();
            assert_eq!(s.phi, c(1.0));
            assert_eq!(s.dphi, c(0.0));
            assert_eq!(r.phi_prime_via_integral(0.0).unwrap(), c(0.0));
        }
    }

    #[test]
    fn dunkl_half_is_sinc() {
        let fam = ChebliFamily::dunkl(0.5).unwrap();
        let r = RadialEigen::solve(&fam, c(9.0), 4.0, 1e-12).unwrap();
        let phi = r.phi(1.0).unwrap();
        assert!((phi.re - 3f64.sin() / 3.0).abs() < 1e-11);
        assert!((phi.re - 0.047_040_0).abs() < 1e-6);
        let exact_d: f64 = 3f64.cos() - 3f64.sin() / 3.0;
        let d1 = r.phi_prime(1.0).unwrap();
        let d2 = r.phi_prime_via_integral(1.0).unwrap();
        assert!((d1.re - exact_d).abs() < 1e-10);
        assert!((d1 - d2).norm() < 1e-8);
        for x in [0.013f64, 0.77, 2.5, 3.999] {
            let e = (3.0 * x).sin() / (3.0 * x);
            assert!((r.phi(x).unwrap().re - e).abs() < 1e-11, "x = {x}");
            assert!((r.phi(-x).unwrap() - r.phi(x).unwrap()).norm() == 0.0);
            assert!((r.phi_prime(-x).unwrap() + r.phi_prime(x).unwrap()).norm() == 0.0);
        }
    }

    #[test]
    fn jacobi_constant_at_i_rho() {
        let fam = ChebliFamily::jacobi(1.5, 0.5).unwrap();
        let r = RadialEigen::solve(&fam, c(-9.0), 8.0, 1e-12).unwrap();
        for x in [-8.0, -3.3, 0.0, 0.2, 5.0, 8.0] {
            assert!((r.phi(x).unwrap() - 1.0).norm() < 1e-12);
            assert!(r.phi_prime_via_integral(x).unwrap().norm() < 1e-12);
        }
    }

    #[test]
    fn psi_normalization() {
        let fam = ChebliFamily::jacobi(1.5, 0.5).unwrap();
        let sp = SpectralPoint::new(&fam, Complex64::new(1.3, -0.2), 0.4).unwrap();
        assert_eq!(psi(&fam, &sp, 0.0, 1e-10).unwrap(), c(1.0));
        let sp = SpectralPoint::new(&fam, c(0.0), 0.0).unwrap();
        for x in [-3.0, 0.5, 6.0] {
            assert!((psi(&fam, &sp, x, 1e-10).unwrap() - 1.0).norm() < 1e-10);
        }
        assert!(matches!(SpectralPoint::new(&fam, c(2.0), 1.5), Err(Error::Domain(_))));
    }

    #[test]
    fn lambda_op_elementary_inputs() {
        let fam = ChebliFamily::jacobi(1.5, 0.5).unwrap();
        let one = SampledFunction::from_real_fn(2.0, 1.0 / 32.0, |_| 1.0).unwrap();
        let out = apply_lambda_op(&fam, 0.5, &one).unwrap();
        assert!(out.values().iter().all(|v| (v - c(-1.5)).norm() < 1e-12));
        let dunkl = ChebliFamily::dunkl(0.5).unwrap();
        let id = SampledFunction::from_real_fn(2.0, 1.0 / 32.0, |x| x).unwrap();
        let out = apply_lambda_op(&dunkl, 0.3, &id).unwrap();
        assert!(out.values().iter().all(|v| (v - c(3.0)).norm() < 1e-10));
        let coarse = SampledFunction::from_real_fn(1.0, 0.25, |x| x).unwrap();
        assert!(matches!(apply_lambda_op(&dunkl, 0.0, &coarse), Err(Error::Config(_))));
    }

    #[test]
    fn dunkl_matches_bessel_closed_form() {
        for alpha in [0.5, 1.2] {
            let fam = ChebliFamily::dunkl(alpha).unwrap();
            for lam in [0.5, 2.0, 7.0] {
                let e = Eigenfunction::new(&fam, SpectralPoint::new(&fam, c(lam), 0.0).unwrap(), 10.0, 1e-12).unwrap();
                for i in -80..=80 {
                    let x = i as f64 / 8.0;
                    let err = (e.at(x).unwrap() - dunkl_closed_form(alpha, lam, x)).norm();
                    assert!(err < 1e-8, "alpha {alpha}, lambda {lam}, x {x}: {err:e}");
                }
            }
        }
    }
}
