//! The Plancherel density `π_ε` and the function `|c(μ)|^{−2}` behind it.
//!
//! In the spectral variable `t ≥ 0` with `λ = ±√(gap² + t²)`,
//! `gap = √(1−ε²)ρ`, the measure is `π_ε(dλ) = D(t) dt` on each branch, where
//! `D(t) = |c(t)|^{−2}` up to a normalisation fixed for each family.

use super::transform::{even_moments, SpectralGrid};
use crate::chebli::{ChebliFamily, FamilyKind};
use crate::error::{Error, Result};
use crate::grid::SampledFunction;
use crate::quad::{simpson, simpson_cusp_weight, simpson_weights};
use crate::special::{ln_abs_gamma_sq, ln_gamma};
use num_complex::Complex64;
use std::f64::consts::PI;
use std::sync::Mutex;

/// Calibrated Dunkl constants keyed by `α` bits.
static DUNKL_CONSTANTS: Mutex<Vec<(u64, f64)>> = Mutex::new(Vec::new());

/// Step of the `x` grid used for calibration.
const CALIBRATION_STEP: f64 = 1.0 / 64.0;

/// Finds `c_α` in `D(t) = c_α t^{2α+1}` so that inverting the transform of
/// `e^{−x²/(2w²)}` returns 1 at the origin.
pub fn calibrate_dunkl(alpha: f64, width: f64) -> Result<f64> {
    if !(width > 0.0 && width.is_finite()) {
        return Err(Error::Config(format!("calibration width must be positive, got {width}")));
    }
    let fam = ChebliFamily::dunkl(alpha)?;
    let radius = (9.0 * width / CALIBRATION_STEP).ceil() * CALIBRATION_STEP;
    let f = SampledFunction::from_real_fn(radius, CALIBRATION_STEP, |x| (-0.5 * x * x / (width * width)).exp())?;
    let grid = SpectralGrid::new(0.0, 9.0 / width, 0.015 / width)?;
    let fe = even_moments(&fam, &f, &grid, 1e-11)?;
    let ts: Vec<f64> = (0..grid.len()).map(|k| grid.t(k)).collect();
    let integrand: Vec<f64> = fe.iter().zip(&ts).map(|(v, t)| v.re * t.powf(2.0 * alpha + 1.0)).collect();
    // Ψ(±λ, 0) = 1 and the odd moments vanish; both branches contribute equally
    let origin = 0.5 * simpson_cusp_weight(2.0 * alpha + 1.0, grid.dt(), 0) * fe[0].re;
    let unnormalised = 0.5 * (simpson(&integrand, grid.dt()) + origin);
    if !(unnormalised > 0.0) {
        return Err(Error::Consistency(format!("calibration integral is {unnormalised}")));
    }
    Ok(1.0 / unnormalised)
}

/// The calibrated Dunkl constant at the reference width 1, cached per `α`.
pub fn dunkl_constant(alpha: f64) -> Result<f64> {
    let key = alpha.to_bits();
    if let Some(&(_, c)) = DUNKL_CONSTANTS.lock().expect("cache lock").iter().find(|(k, _)| *k == key) {
        return Ok(c);
    }
    let c = calibrate_dunkl(alpha, 1.0)?;
    DUNKL_CONSTANTS.lock().expect("cache lock").push((key, c));
    Ok(c)
}

/// `ln(μ sinh(πμ))` without overflow.
fn ln_mu_sinh(mu: f64) -> f64 {
    let z = PI * mu;
    let ln_sinh = if z > 20.0 { z - 2f64.ln() + (-(-2.0 * z).exp()).ln_1p() } else { z.sinh().ln() };
    mu.ln() + ln_sinh
}

/// `|c(μ)|^{−2}` in the normalisation used by the inversion formula.
///
/// For the power weight this is `c_α μ^{2α+1}` with `c_α` calibrated; for the
/// hyperbolic weight it is the Gamma quotient
/// `μ sinh(πμ) |Γ((ρ+iμ)/2) Γ((α−β+1+iμ)/2)|² / (2π² Γ(α+1)²)`.
pub fn c_density(fam: &ChebliFamily, mu: f64) -> Result<f64> {
    if !(mu >= 0.0 && mu.is_finite()) {
        return Err(Error::Domain(format!("c-density needs mu >= 0, got {mu}")));
    }
    match fam.kind() {
        FamilyKind::Dunkl { alpha } => Ok(dunkl_constant(*alpha)? * mu.powf(2.0 * alpha + 1.0)),
        FamilyKind::Jacobi { alpha, beta } => {
            if mu == 0.0 {
                return Ok(0.0);
            }
            let rho = fam.rho();
            let ln = ln_mu_sinh(mu) + ln_abs_gamma_sq(0.5 * rho, 0.5 * mu)
                + ln_abs_gamma_sq(0.5 * (alpha - beta + 1.0), 0.5 * mu)
                - (2.0 * PI * PI).ln()
                - 2.0 * ln_gamma(alpha + 1.0);
            Ok(ln.exp())
        }
        FamilyKind::Table(_) => Err(Error::UnsupportedFamily(
            "no c-function is available for tabulated weights".into(),
        )),
    }
}

/// `π_ε` together with the factor `1 − ερ/(iλ)` of the inversion formula.
#[derive(Debug, Clone)]
pub struct SpectralDensity {
    fam: ChebliFamily,
    eps: f64,
    gap: f64,
    scale: f64,
}

impl SpectralDensity {
    pub fn new(fam: &ChebliFamily, eps: f64) -> Result<Self> {
        if !(-1.0..=1.0).contains(&eps) {
            return Err(Error::Domain(format!("eps out of [-1,1]: {eps}")));
        }
        // fail early for families without a c-function
        c_density(fam, 1.0)?;
        Ok(Self { fam: fam.clone(), eps, gap: fam.rho_eps(eps), scale: 1.0 })
    }

    /// Multiplies the density by `factor`; used to inject faults.
    pub fn scaled(mut self, factor: f64) -> Self {
        self.scale *= factor;
        self
    }

    pub fn family(&self) -> &ChebliFamily {
        &self.fam
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    /// `√(1−ε²)ρ`; the density vanishes for `|λ| < gap`.
    pub fn gap(&self) -> f64 {
        self.gap
    }

    /// `D(t)`, the density per unit of the spectral variable.
    pub fn t_density(&self, t: f64) -> Result<f64> {
        Ok(self.scale * c_density(&self.fam, t.abs())?)
    }

    /// Density of `π_ε` with respect to `dλ`.
    pub fn density(&self, lambda: f64) -> Result<f64> {
        let a = lambda.abs();
        if a < self.gap || (a == self.gap && self.gap > 0.0) {
            return Ok(0.0);
        }
        let t = (a * a - self.gap * self.gap).sqrt();
        if self.gap == 0.0 {
            return self.t_density(t);
        }
        Ok(a / t * self.t_density(t)?)
    }

    /// Simpson weights in `t` times [`weight`](Self::weight) on both branches.
    ///
    /// A power-law density `c t^{2α+1}` gets the end correction for its cusp at `t = 0`.
    pub fn branch_weights(&self, grid: &SpectralGrid) -> Result<Vec<[Complex64; 2]>> {
        let w = simpson_weights(grid.len(), grid.dt());
        let mut out = (0..grid.len())
            .map(|k| {
                let t = grid.t(k);
                Ok([self.weight(t, 1.0)? * w[k], self.weight(t, -1.0)? * w[k]])
            })
            .collect::<Result<Vec<_>>>()?;
        if let FamilyKind::Dunkl { alpha } = self.fam.kind() {
            // one-sided: half the two-sided correction
            let c = 0.5 * simpson_cusp_weight(2.0 * alpha + 1.0, grid.dt(), 0) * self.scale * dunkl_constant(*alpha)?;
            out[0][0] += c;
            out[0][1] += c;
        }
        Ok(out)
    }

    /// `1 − ερ/(iλ)`.
    pub fn factor(&self, lambda: f64) -> Complex64 {
        Complex64::from(1.0) - Complex64::new(0.0, -self.eps * self.fam.rho() / lambda)
    }

    /// `(1 − ερ/(iλ))·D(t)` at `λ = sign·√(gap² + t²)`, finite at `λ = 0`.
    pub fn weight(&self, t: f64, sign: f64) -> Result<Complex64> {
        let lambda = sign * (self.gap * self.gap + t * t).sqrt();
        let d = self.t_density(t)?;
        if lambda == 0.0 {
            // D(t) = O(t²) when ρ > 0 and the factor is 1 when ρ = 0
            return Ok(if self.eps * self.fam.rho() == 0.0 { Complex64::from(d) } else { Complex64::default() });
        }
        Ok(self.factor(lambda) * d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::gamma;

    #[test]
    fn dunkl_constant_matches_hankel_normalisation() {
        // the uncorrected cusp term is O(h^(2 alpha + 4))
        for (alpha, tol) in [(0.5, 1e-12), (1.0, 1e-8), (0.2, 5e-7)] {
            let c = dunkl_constant(alpha).unwrap();
            let want = 1.0 / (4f64.powf(alpha) * gamma(alpha + 1.0).powi(2));
            assert!((c / want - 1.0).abs() < tol, "alpha {alpha}: {c} vs {want}");
        }
    }

    #[test]
    fn dunkl_power_law() {
        let fam = ChebliFamily::dunkl(0.5).unwrap();
        let r = c_density(&fam, 1.0).unwrap() / c_density(&fam, 2.0).unwrap();
        assert!((r - 0.25).abs() < 1e-15);
        assert!(c_density(&fam, -1.0).is_err());
    }

    #[test]
    fn jacobi_slopes() {
        let fam = ChebliFamily::jacobi(1.5, 0.5).unwrap();
        let slope = |a: f64, b: f64| {
            (c_density(&fam, b).unwrap() / c_density(&fam, a).unwrap()).ln() / (b / a).ln()
        };
        assert!((slope(10.0, 100.0) - 4.0).abs() < 0.05);
        assert!((slope(1e-3, 1e-2) - 2.0).abs() < 0.1);
        assert!(c_density(&fam, 500.0).unwrap().is_finite());
    }

    #[test]
    fn gap_and_symmetry() {
        let fam = ChebliFamily::jacobi(1.5, 0.5).unwrap();
        let d = SpectralDensity::new(&fam, 0.5).unwrap();
        assert!((d.gap() - 3.0 * 0.75f64.sqrt()).abs() < 1e-15);
        assert_eq!(d.density(2.0).unwrap(), 0.0);
        assert_eq!(d.density(3.5).unwrap(), d.density(-3.5).unwrap());
        let endpoint = SpectralDensity::new(&fam, 1.0).unwrap();
        assert_eq!(endpoint.weight(0.0, 1.0).unwrap(), Complex64::default());
    }
}
