//! Frobenius expansion of the even solution at the regular singular point 0.

use crate::chebli::ChebliFamily;
use crate::error::{Error, Result};
use num_complex::Complex64;

pub(crate) const MAX_TERMS: usize = 60;

/// `φ = Σ a_k x^{2k}` together with the coefficients of `(1/A)∫₀^x φA`.
#[derive(Debug, Clone)]
pub(crate) struct Frobenius {
    a: Vec<Complex64>,
    /// Coefficients of `x·Σ q_m x^{2m}`, before division by `B(x)`.
    q: Vec<Complex64>,
}

impl Frobenius {
    /// Builds enough terms that the tail at `x0` falls below `tol/10`.
    pub(crate) fn new(fam: &ChebliFamily, kappa: Complex64, x0: f64, tol: f64) -> Result<Self> {
        let alpha = fam.alpha();
        let c = fam.c_taylor();
        let b = fam.b_taylor();
        let y0 = x0 * x0;
        let mut a = vec![Complex64::from(1.0)];
        let mut small_run = 0;
        let mut scale: f64 = 1.0;
        let mut pow = 1.0;
        for n in 1..MAX_TERMS {
            let mut s = kappa * a[n - 1];
            for k in 1..n {
                s += a[k] * (2.0 * k as f64 * c[n - 1 - k]);
            }
            let an = -s / (2.0 * n as f64 * (2.0 * n as f64 + 2.0 * alpha));
            a.push(an);
            pow *= y0;
            let term = an.norm() * pow;
            scale = scale.max(term);
            if term < 0.1 * tol * scale {
                small_run += 1;
                if small_run == 2 {
                    break;
                }
            } else {
                small_run = 0;
            }
        }
        if small_run < 2 {
            return Err(Error::Config(format!(
                "Frobenius series did not converge within {MAX_TERMS} terms at x0 = {x0}"
            )));
        }
        let q = (0..a.len())
            .map(|m| {
                let d: Complex64 = (0..=m).map(|k| a[k] * b[m - k]).sum();
                d / (2.0 * m as f64 + 2.0 * alpha + 2.0)
            })
            .collect();
        Ok(Self { a, q })
    }

    pub(crate) fn terms(&self) -> usize {
        self.a.len()
    }

    /// (φ(x), φ′(x), Q(x)) for 0 ≤ x ≤ x0, given `B(x)`.
    pub(crate) fn eval(&self, x: f64, b: f64) -> [Complex64; 3] {
        let y = x * x;
        let mut phi = Complex64::default();
        let mut dphi = Complex64::default();
        for (k, a) in self.a.iter().enumerate().rev() {
            phi = phi * y + a;
            if k > 0 {
                dphi = dphi * y + a * (2.0 * k as f64);
            }
        }
        let dphi = dphi * x;
        let q = self.q.iter().rev().fold(Complex64::default(), |acc, v| acc * y + v) * x / b;
        [phi, dphi, q]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dunkl_half_series_is_sinc() {
        let fam = ChebliFamily::dunkl(0.5).unwrap();
        let s = Frobenius::new(&fam, Complex64::from(9.0), 0.5, 1e-14).unwrap();
        let [phi, dphi, q] = s.eval(0.5, 1.0);
        let z: f64 = 1.5;
        assert!((phi.re - z.sin() / z).abs() < 1e-14);
        assert!((dphi.re - 3.0 * (z.cos() / z - z.sin() / (z * z))).abs() < 1e-13);
        // Q = −φ′/κ
        assert!((q.re + dphi.re / 9.0).abs() < 1e-14);
    }

    #[test]
    fn constant_solution_at_kappa_zero() {
        let fam = ChebliFamily::jacobi(1.5, 0.5).unwrap();
        let s = Frobenius::new(&fam, Complex64::from(0.0), 0.5, 1e-14).unwrap();
        let [phi, dphi, _] = s.eval(0.4, fam.smooth_factor(0.4).unwrap());
        assert!((phi - 1.0).norm() < 1e-15 && dphi.norm() < 1e-15);
    }
}
