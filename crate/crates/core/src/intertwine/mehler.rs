//! Laplace-type representation of `Ψ` for the power weight `A = |x|^{2α+1}`.
//!
//! `K(|x|, t) = c_α (x² − t²)^{α−1/2} |x|^{−2α}` with
//! `c_α = 2Γ(α+1)/(√π Γ(α+1/2))`; since `ρ = 0` the deformed kernel equals
//! `K`, and
//!
//! ```text
//! 𝕂(x, y) = K(|x|, y)/2 − sg(x)/(2A(x)) ∂_y G(x, y),   G(x, y) = ∫_{|y|}^{|x|} K(t, y) A(t) dt
//! ```

use crate::chebli::{ChebliFamily, FamilyKind};
use crate::error::{Error, Result};
use crate::grid::SampledFunction;
use crate::quad::integrate;
use crate::special::ln_gamma;
use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_2, PI};

const QUAD_TOL: f64 = 1e-13;
const MAX_PANELS: usize = 2000;

fn dunkl_alpha(fam: &ChebliFamily) -> Result<f64> {
    match fam.kind() {
        FamilyKind::Dunkl { alpha } => Ok(*alpha),
        _ => Err(Error::UnsupportedFamily(format!(
            "explicit intertwining kernels need the power weight, got {}",
            fam.label()
        ))),
    }
}

fn sonine_constant(alpha: f64) -> f64 {
    2.0 * (ln_gamma(alpha + 1.0) - 0.5 * PI.ln() - ln_gamma(alpha + 0.5)).exp()
}

/// `K(|x|, t)`, zero for `|t| ≥ |x|`.
pub fn dunkl_base_kernel(fam: &ChebliFamily, x: f64, t: f64) -> Result<f64> {
    let alpha = dunkl_alpha(fam)?;
    if x == 0.0 || !x.is_finite() {
        return Err(Error::Domain(format!("kernel needs finite x != 0, got {x}")));
    }
    let ax = x.abs();
    if t.abs() >= ax {
        return Ok(0.0);
    }
    Ok(sonine_constant(alpha) * (ax * ax - t * t).powf(alpha - 0.5) * ax.powf(-2.0 * alpha))
}

/// The kernels `K_ε`, `G_ε`, `𝕂_ε` for the power weight.
#[derive(Debug, Clone)]
pub struct MehlerKernel {
    fam: ChebliFamily,
    alpha: f64,
    eps: f64,
    c: f64,
}

impl MehlerKernel {
    pub fn new(fam: &ChebliFamily, eps: f64) -> Result<Self> {
        let alpha = dunkl_alpha(fam)?;
        if !(-1.0..=1.0).contains(&eps) {
            return Err(Error::Domain(format!("eps out of [-1,1]: {eps}")));
        }
        Ok(Self { fam: fam.clone(), alpha, eps, c: sonine_constant(alpha) })
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn family(&self) -> &ChebliFamily {
        &self.fam
    }

    /// `K_ε(x, y)`; the deformation is trivial because `ρ = 0`.
    pub fn k_eps(&self, x: f64, y: f64) -> f64 {
        let ax = x.abs();
        if ax == 0.0 || y.abs() >= ax {
            return 0.0;
        }
        self.c * (ax * ax - y * y).powf(self.alpha - 0.5) * ax.powf(-2.0 * self.alpha)
    }

    /// `G_ε(x, y) = ∫_{|y|}^{|x|} K_ε(t, y) A(t) dt` after `t = √(y² + u²)`.
    pub fn g_eps(&self, x: f64, y: f64) -> f64 {
        let (ax, ay) = (x.abs(), y.abs());
        if ay >= ax {
            return 0.0;
        }
        let top = (ax * ax - ay * ay).sqrt();
        let a2 = 2.0 * self.alpha;
        let f = |u: f64| {
            let t = (ay * ay + u * u).sqrt();
            if t == 0.0 {
                return 0.0;
            }
            // K(t,y)·A(t)·dt/du with (t² − y²)^{α−1/2}·u folded into u^{2α}
            let w = self.fam.weight(t).unwrap_or(0.0) / t.powf(a2 + 1.0);
            self.c * u.powf(a2) * w
        };
        integrate(f, 0.0, top, QUAD_TOL * top.powf(a2 + 1.0).max(1e-300), QUAD_TOL, MAX_PANELS).value
    }

    /// `∂_y G_ε(x, y)` by fourth-order differences.
    pub fn dg_dy(&self, x: f64, y: f64) -> f64 {
        let ax = x.abs();
        let d = ax - y.abs();
        if d <= 0.0 {
            return 0.0;
        }
        let h = (1e-3 * ax).min(d / 32.0);
        let g = |v: f64| self.g_eps(x, v);
        (g(y - 2.0 * h) - 8.0 * g(y - h) + 8.0 * g(y + h) - g(y + 2.0 * h)) / (12.0 * h)
    }

    /// `𝕂_ε(x, y)`, zero outside `|y| < |x|`.
    pub fn kernel(&self, x: f64, y: f64) -> f64 {
        let ax = x.abs();
        if ax == 0.0 || y.abs() >= ax {
            return 0.0;
        }
        let a = self.fam.weight(x).unwrap_or(f64::INFINITY);
        let sg = x.signum();
        // the ερ·G term vanishes for ρ = 0
        0.5 * self.k_eps(x, y) - sg / (2.0 * a) * self.dg_dy(x, y)
    }

    /// `∫ 𝕂_ε(x, y) h(y) dy` over `|y| < |x|` with `y = |x| sin θ`.
    pub fn integrate_against(&self, x: f64, tol: f64, h: impl Fn(f64) -> Complex64) -> Complex64 {
        let ax = x.abs();
        let f = |theta: f64| {
            let y = ax * theta.sin();
            h(y) * (self.kernel(x, y) * ax * theta.cos())
        };
        integrate(f, -FRAC_PI_2, FRAC_PI_2, tol, tol, MAX_PANELS).value
    }

    /// `∫ 𝕂_ε(x, y) e^{iλy} dy`, which reproduces `Ψ(λ, x)`.
    pub fn laplace(&self, x: f64, lambda: Complex64) -> Complex64 {
        if x == 0.0 {
            return Complex64::from(1.0);
        }
        self.integrate_against(x, 1e-12, |y| (Complex64::new(0.0, 1.0) * lambda * y).exp())
    }
}

/// `V f(x) = ∫_{|y|<|x|} 𝕂_ε(x, y) f(y) dy`, `V f(0) = f(0)`.
pub fn v_eps(mk: &MehlerKernel, f: &SampledFunction, x: f64) -> Result<Complex64> {
    if x.abs() > f.radius() + 1e-12 {
        return Err(Error::Domain(format!("x = {x} outside the input grid")));
    }
    if x == 0.0 {
        return Ok(f.interpolate(0.0));
    }
    // interpolation already limits accuracy to about h⁶·|f⁽⁶⁾|
    let tol = 1e-10 * f.sup_norm().max(f64::MIN_POSITIVE);
    Ok(mk.integrate_against(x, tol, |y| f.interpolate(y)))
}

/// `ᵗV g(y) = ∫_{|x|>|y|} 𝕂_ε(x, y) g(x) A(x) dx`, truncated at the grid edge.
pub fn t_v_eps(mk: &MehlerKernel, g: &SampledFunction, y: f64) -> Result<Complex64> {
    let r = g.radius();
    let ay = y.abs();
    if ay >= r {
        return Ok(Complex64::default());
    }
    let top = (r * r - ay * ay).sqrt();
    let fam = mk.family();
    let f = |u: f64| {
        let x = (ay * ay + u * u).sqrt();
        if x == 0.0 {
            return Complex64::default();
        }
        let a = fam.weight(x).unwrap_or(0.0);
        let jac = u / x;
        let plus = g.interpolate(x) * mk.kernel(x, y);
        let minus = g.interpolate(-x) * mk.kernel(-x, y);
        (plus + minus) * (a * jac)
    };
    let tol = 1e-10 * g.sup_norm().max(f64::MIN_POSITIVE);
    Ok(integrate(f, 0.0, top, tol, 1e-10, MAX_PANELS).value)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn closed_form(alpha: f64, x: f64, y: f64) -> f64 {
        let c = sonine_constant(alpha);
        let ax = x.abs();
        0.5 * c * ax.powf(-2.0 * alpha - 1.0) * (ax * ax - y * y).powf(alpha - 0.5) * (ax + x.signum() * y)
    }

    #[test]
    fn base_kernel_half_is_constant() {
        let fam = ChebliFamily::dunkl(0.5).unwrap();
        for t in [0.0, 0.3, -0.9] {
            assert!((dunkl_base_kernel(&fam, 1.0, t).unwrap() - 1.0).abs() < 1e-14);
        }
        assert_eq!(dunkl_base_kernel(&fam, 1.0, 1.5).unwrap(), 0.0);
        assert!(dunkl_base_kernel(&fam, 0.0, 0.0).is_err());
        assert!(matches!(
            MehlerKernel::new(&ChebliFamily::jacobi(1.0, 0.0).unwrap(), 0.0),
            Err(Error::UnsupportedFamily(_))
        ));
    }

    #[test]
    fn base_kernel_reproduces_phi() {
        // φ_μ(x) = ∫₀^{|x|} K(|x|, t) cos(μt) dt
        for alpha in [0.5, 1.5, 0.2] {
            let fam = ChebliFamily::dunkl(alpha).unwrap();
            let mass = integrate(|th: f64| dunkl_base_kernel(&fam, 1.0, th.sin()).unwrap() * th.cos(), 0.0, FRAC_PI_2, 1e-14, 1e-14, 2000).value;
            assert!((mass - 1.0).abs() < 1e-10, "alpha = {alpha}: {mass}");
        }
        let fam = ChebliFamily::dunkl(0.5).unwrap();
        for mu in [1.0f64, 3.0] {
            let v = integrate(|t: f64| dunkl_base_kernel(&fam, 1.0, t).unwrap() * (mu * t).cos(), 0.0, 1.0, 1e-14, 1e-14, 200).value;
            assert!((v - mu.sin() / mu).abs() < 1e-13);
        }
    }

    #[test]
    fn kernel_matches_closed_form() {
        for alpha in [0.5, 1.5, 0.2] {
            let mk = MehlerKernel::new(&ChebliFamily::dunkl(alpha).unwrap(), 0.3).unwrap();
            for (x, y) in [(1.0, 0.2), (-2.0, 1.1), (0.5, -0.45), (3.0, 0.0)] {
                let got = mk.kernel(x, y);
                let want = closed_form(alpha, x, y);
                assert!((got - want).abs() < 1e-8 * want.abs().max(1.0), "alpha {alpha} ({x},{y}): {got} vs {want}");
            }
        }
    }

    #[test]
    fn laplace_reproduces_psi() {
        use crate::eigen::{psi, SpectralPoint};
        for alpha in [0.5, 1.5] {
            let fam = ChebliFamily::dunkl(alpha).unwrap();
            let mk = MehlerKernel::new(&fam, 0.5).unwrap();
            for lam in [0.0, 1.5, 4.0] {
                let sp = SpectralPoint::new(&fam, Complex64::from(lam), 0.5).unwrap();
                for x in [0.5, 2.0, -2.0] {
                    let want = psi(&fam, &sp, x, 1e-12).unwrap();
                    let got = mk.laplace(x, Complex64::from(lam));
                    assert!((got - want).norm() < 1e-8, "alpha {alpha} lam {lam} x {x}: {got} vs {want}");
                }
            }
        }
    }

    fn shifted_bump(x: f64) -> f64 {
        let u = (x - 0.4) / 1.5;
        if u.abs() < 1.0 { (-1.0 / (1.0 - u * u)).exp() } else { 0.0 }
    }

    #[test]
    fn intertwiner_keeps_bumps_nonnegative() {
        let fam = ChebliFamily::dunkl(0.8).unwrap();
        let mk = MehlerKernel::new(&fam, 0.0).unwrap();
        let f = SampledFunction::from_real_fn(3.0, 1.0 / 64.0, shifted_bump).unwrap();
        for k in -24..=24 {
            let x = k as f64 / 8.0;
            let v = v_eps(&mk, &f, x).unwrap();
            assert!(v.re >= -1e-12 && v.im.abs() < 1e-14, "x = {x}: {v}");
        }
    }

    #[test]
    fn intertwines_derivative() {
        use crate::eigen::apply_lambda_op;
        let fam = ChebliFamily::dunkl(0.5).unwrap();
        let mk = MehlerKernel::new(&fam, 0.0).unwrap();
        let (r, h) = (3.0, 1.0 / 64.0);
        let f = SampledFunction::from_real_fn(r, h, shifted_bump).unwrap();
        let df = f.derivative().unwrap();
        let vf = SampledFunction::from_fn(r, h, |x| v_eps(&mk, &f, x).unwrap()).unwrap();
        let lhs = apply_lambda_op(&fam, 0.0, &vf).unwrap();
        for k in [-100, -37, -5, 3, 64, 150] {
            let i = (f.half() as i64 + k) as usize;
            let want = v_eps(&mk, &df, f.x(i)).unwrap();
            assert!((lhs.value(i) - want).norm() < 1e-4, "x = {}", f.x(i));
        }
    }

    #[test]
    fn transpose_is_adjoint() {
        // ∫ V f · g A dx = ∫ f · ᵗV g dy
        let fam = ChebliFamily::dunkl(0.5).unwrap();
        let mk = MehlerKernel::new(&fam, 0.0).unwrap();
        let (r, h) = (3.0, 1.0 / 32.0);
        let f = SampledFunction::from_real_fn(r, h, shifted_bump).unwrap();
        let g = SampledFunction::from_real_fn(r, h, |x| shifted_bump(-x - 0.5)).unwrap();
        let lhs: Vec<Complex64> = f
            .xs()
            .map(|x| v_eps(&mk, &f, x).unwrap() * g.interpolate(x) * fam.weight(x).unwrap_or(0.0))
            .collect();
        let rhs: Vec<Complex64> = f.xs().map(|y| f.interpolate(y) * t_v_eps(&mk, &g, y).unwrap()).collect();
        let (a, b) = (crate::quad::simpson(&lhs, h), crate::quad::simpson(&rhs, h));
        assert!((a - b).norm() < 1e-5 * a.norm(), "{a} vs {b}");
    }
}
