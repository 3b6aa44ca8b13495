//! Bessel-kernel transmutations between `d²/dx²` and `d²/dx² − ρ_ε²`.
//!
//! ```text
//! E f(x)    = f(x) − (ρ|x|/2) ∫_{|y|<|x|} f(y) J₁(ρ√(x²−y²))/√(x²−y²) dy
//! E⁻¹ f(x)  = f(x) + (ρ|x|/2) ∫_{|y|<|x|} f(y) I₁(ρ√(x²−y²))/√(x²−y²) dy
//! ᵗE g(y)   = g(y) − (ρ/2) ∫_{|x|>|y|} |x| g(x) J₁(ρ√(x²−y²))/√(x²−y²) dx
//! ᵗE⁻¹ g(y) = g(y) + (ρ/2) ∫_{|x|>|y|} |x| g(x) I₁(ρ√(x²−y²))/√(x²−y²) dx
//! ```
//!
//! The kernels `J₁(ρr)/r`, `I₁(ρr)/r` are entire in `r²`, so every integrand
//! is smooth on the grid and the end-corrected Gregory rule applies directly.

use super::bessel::{i1_over, j1_over};
use crate::chebli::ChebliFamily;
use crate::error::{Error, Result};
use crate::grid::SampledFunction;
use crate::quad::gregory;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Direction {
    E,
    EInv,
    TE,
    TEInv,
}

/// One of the four transmutations with its parameter `ρ_ε`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselKernelOp {
    pub direction: Direction,
    pub rho_eps: f64,
}

impl BesselKernelOp {
    pub fn new(fam: &ChebliFamily, eps: f64, direction: Direction) -> Result<Self> {
        if !(-1.0..=1.0).contains(&eps) {
            return Err(Error::Domain(format!("eps out of [-1,1]: {eps}")));
        }
        Ok(Self { direction, rho_eps: fam.rho_eps(eps) })
    }

    pub fn is_identity(&self) -> bool {
        self.rho_eps == 0.0
    }

    fn kernel(&self, r: f64) -> f64 {
        match self.direction {
            Direction::E | Direction::TE => -j1_over(self.rho_eps, r),
            Direction::EInv | Direction::TEInv => i1_over(self.rho_eps, r),
        }
    }
}

/// Applies the transmutation to an even grid function.
pub fn apply_e(op: &BesselKernelOp, f: &SampledFunction) -> Result<SampledFunction> {
    if f.oddness() > 1e-12 {
        return Err(Error::Parity(format!("input has odd part {:.3e}", f.oddness())));
    }
    let transposed = matches!(op.direction, Direction::TE | Direction::TEInv);
    if transposed {
        let edge = f.value(0).norm().max(f.value(f.len() - 1).norm());
        if edge > 1e-8 * f.sup_norm().max(1.0) {
            return Err(Error::Support(format!("input is {edge:.3e} at the grid edge")));
        }
    }
    if op.is_identity() {
        return Ok(f.clone());
    }
    let n = f.half();
    let h = f.step();
    let rho = op.rho_eps;
    let vals = f.values();
    let mut out = vec![Complex64::default(); f.len()];
    let mut buf = Vec::with_capacity(f.len());
    // the output is even; compute x ≥ 0 and mirror
    for k in 0..=n {
        let x = k as f64 * h;
        buf.clear();
        let integral = if !transposed {
            for j in (n - k)..=(n + k) {
                let y = f.x(j);
                let r = (x * x - y * y).max(0.0).sqrt();
                buf.push(vals[j] * op.kernel(r));
            }
            gregory(&buf, h) * (0.5 * rho * x)
        } else {
            for j in (n + k)..f.len() {
                let s = f.x(j);
                let r = (s * s - x * x).max(0.0).sqrt();
                buf.push(vals[j] * (s * op.kernel(r)));
            }
            // both half-lines contribute equally
            gregory(&buf, h) * rho
        };
        out[n + k] = vals[n + k] + integral;
        out[n - k] = out[n + k];
    }
    f.with_values(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intertwine::bessel::{bessel_i, bessel_j};
    use crate::quad::simpson;

    fn bump(a: f64) -> impl Fn(f64) -> f64 {
        move |x: f64| {
            let u = x / a;
            if u.abs() < 1.0 { (-1.0 / (1.0 - u * u)).exp() } else { 0.0 }
        }
    }

    fn op(d: Direction) -> BesselKernelOp {
        BesselKernelOp::new(&ChebliFamily::jacobi(1.5, 0.5).unwrap(), 0.5, d).unwrap()
    }

    #[test]
    fn endpoints_are_identity() {
        let fam = ChebliFamily::jacobi(1.5, 0.5).unwrap();
        let f = SampledFunction::from_real_fn(3.0, 1.0 / 32.0, bump(2.0)).unwrap();
        for eps in [-1.0, 1.0] {
            for d in [Direction::E, Direction::EInv, Direction::TE, Direction::TEInv] {
                let o = BesselKernelOp::new(&fam, eps, d).unwrap();
                assert_eq!(apply_e(&o, &f).unwrap().values(), f.values());
            }
        }
    }

    #[test]
    fn maps_cosines() {
        let o = op(Direction::E);
        // E raises the frequency: cos(μx) ↦ cos(√(μ² + ρ_ε²) x)
        let mu: f64 = 1.7;
        let lam = (mu * mu + o.rho_eps * o.rho_eps).sqrt();
        let f = SampledFunction::from_real_fn(3.0, 1.0 / 64.0, |x| (mu * x).cos()).unwrap();
        let g = apply_e(&o, &f).unwrap();
        for i in 0..g.len() {
            let err = (g.value(i).re - (lam * f.x(i)).cos()).abs();
            assert!(err < 1e-6, "x = {}: {err:e}", f.x(i));
        }
    }

    #[test]
    fn compositions_are_identity() {
        let f = SampledFunction::from_real_fn(3.0, 1.0 / 64.0, bump(2.0)).unwrap();
        let back = apply_e(&op(Direction::EInv), &apply_e(&op(Direction::E), &f).unwrap()).unwrap();
        assert!(back.max_abs_diff(&f) < 1e-6, "{:e}", back.max_abs_diff(&f));
        let back = apply_e(&op(Direction::TE), &apply_e(&op(Direction::TEInv), &f).unwrap()).unwrap();
        assert!(back.max_abs_diff(&f) < 1e-6, "{:e}", back.max_abs_diff(&f));
    }

    #[test]
    fn transposed_matches_derivative_form() {
        // ᵗE g(y) = −∫_{|y|}^∞ g′(x) J₀(ρ√(x²−y²)) dx
        let o = op(Direction::TE);
        let oi = op(Direction::TEInv);
        let a = 2.0;
        let g = bump(a);
        let dg = |x: f64| {
            let u = x / a;
            if u.abs() < 1.0 { g(x) * (-2.0 * u / (1.0 - u * u).powi(2)) / a } else { 0.0 }
        };
        let f = SampledFunction::from_real_fn(3.0, 1.0 / 64.0, &g).unwrap();
        let te = apply_e(&o, &f).unwrap();
        let tei = apply_e(&oi, &f).unwrap();
        for y in [0.0, 0.5, 1.25, 1.875] {
            let n = 4000;
            let h = (a - y) / n as f64;
            let vals: Vec<f64> = (0..=n)
                .map(|k| {
                    let x = y + k as f64 * h;
                    dg(x) * bessel_j(0, o.rho_eps * (x * x - y * y).max(0.0).sqrt()).unwrap()
                })
                .collect();
            let ivals: Vec<f64> = (0..=n)
                .map(|k| {
                    let x = y + k as f64 * h;
                    dg(x) * bessel_i(0, o.rho_eps * (x * x - y * y).max(0.0).sqrt()).unwrap()
                })
                .collect();
            let i = f.index_of(y).unwrap();
            assert!((te.value(i).re + simpson(&vals, h)).abs() < 1e-7, "y = {y}");
            assert!((tei.value(i).re + simpson(&ivals, h)).abs() < 1e-7, "y = {y}");
        }
    }

    #[test]
    fn transposed_intertwines_second_derivative() {
        let o = op(Direction::TE);
        let a = 2.0;
        let g = bump(a);
        let f = SampledFunction::from_real_fn(3.0, 1.0 / 128.0, &g).unwrap();
        let lhs = apply_e(&o, &f.second_derivative().unwrap()).unwrap();
        let tf = apply_e(&o, &f).unwrap();
        let rhs = tf.second_derivative().unwrap();
        let r2 = o.rho_eps * o.rho_eps;
        let worst = (2..f.len() - 2)
            .map(|i| (lhs.value(i) - rhs.value(i) + tf.value(i) * r2).norm())
            .fold(0.0, f64::max);
        assert!(worst < 1e-4, "{worst:e}");
    }

    #[test]
    fn rejects_bad_inputs() {
        let odd = SampledFunction::from_real_fn(2.0, 1.0 / 16.0, |x| x).unwrap();
        assert!(matches!(apply_e(&op(Direction::E), &odd), Err(Error::Parity(_))));
        let wide = SampledFunction::from_real_fn(2.0, 1.0 / 16.0, |x| (-x * x).exp()).unwrap();
        assert!(matches!(apply_e(&op(Direction::TE), &wide), Err(Error::Support(_))));
    }
}
