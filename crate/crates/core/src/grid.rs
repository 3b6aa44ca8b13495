//! Functions sampled on a uniform grid symmetric about the origin.

use crate::error::{Error, Result};
use num_complex::Complex64;
use std::sync::OnceLock;

/// `exp(s − s/(1 − ((x−c)/a)²))` on `|x − c| < a` and zero outside.
///
/// Smooth, compactly supported, with peak value 1 at `c`. Larger `s`
/// concentrates the bump and shortens its spectrum.
pub fn smooth_bump(center: f64, half_width: f64, sharpness: f64) -> impl Fn(f64) -> f64 + Copy {
    move |x| {
        let u = (x - center) / half_width;
        if u.abs() < 1.0 { (sharpness - sharpness / (1.0 - u * u)).exp() } else { 0.0 }
    }
}

/// Complex samples on {−R, −R+h, …, R}.
///
/// Index `i` corresponds to `x = (i − n)·h` with `n = R/h`, so the centre
/// sample sits at index `n` and reflection maps `i` to `2n − i`.
#[derive(Debug, Clone)]
pub struct SampledFunction {
    half: usize,
    step: f64,
    values: Vec<Complex64>,
    parity: OnceLock<(Vec<Complex64>, Vec<Complex64>)>,
}

impl SampledFunction {
    /// Wraps grid samples; the length must be odd.
    pub fn new(step: f64, values: Vec<Complex64>) -> Result<Self> {
        if !(step > 0.0 && step.is_finite()) {
            return Err(Error::Config(format!("grid step must be positive, got {step}")));
        }
        if values.len().is_multiple_of(2) {
            return Err(Error::Config(format!(
                "symmetric grid needs an odd number of samples, got {}",
                values.len()
            )));
        }
        Ok(Self { half: values.len() / 2, step, values, parity: OnceLock::new() })
    }

    /// Number of half-grid points `n` for radius `radius` and step `step`.
    pub fn half_points(radius: f64, step: f64) -> Result<usize> {
        if !(radius > 0.0 && step > 0.0) {
            return Err(Error::Config(format!("radius {radius} and step {step} must be positive")));
        }
        let n = (radius / step).round();
        if (n * step - radius).abs() > 1e-9 * radius.max(1.0) {
            return Err(Error::Config(format!(
                "radius {radius} is not a multiple of step {step}"
            )));
        }
        Ok(n as usize)
    }

    /// Samples `f` on the grid of radius `radius`.
    pub fn from_fn(radius: f64, step: f64, f: impl Fn(f64) -> Complex64) -> Result<Self> {
        let n = Self::half_points(radius, step)?;
        let values = (0..=2 * n).map(|i| f((i as f64 - n as f64) * step)).collect();
        Self::new(step, values)
    }

    pub fn from_real_fn(radius: f64, step: f64, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::from_fn(radius, step, |x| Complex64::from(f(x)))
    }

    /// A grid with the same geometry and new values.
    pub fn with_values(&self, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != self.values.len() {
            return Err(Error::Config("value count does not match grid".into()));
        }
        Self::new(self.step, values)
    }

    pub fn radius(&self) -> f64 {
        self.half as f64 * self.step
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn half(&self) -> usize {
        self.half
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn x(&self, i: usize) -> f64 {
        (i as f64 - self.half as f64) * self.step
    }

    pub fn xs(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.len()).map(|i| self.x(i))
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn value(&self, i: usize) -> Complex64 {
        self.values[i]
    }

    /// Index of the grid node at `x`, if `x` is (numerically) a node.
    pub fn index_of(&self, x: f64) -> Option<usize> {
        let k = x / self.step + self.half as f64;
        let r = k.round();
        if (k - r).abs() < 1e-9 && r >= 0.0 && (r as usize) < self.len() {
            Some(r as usize)
        } else {
            None
        }
    }

    fn split(&self) -> &(Vec<Complex64>, Vec<Complex64>) {
        self.parity.get_or_init(|| {
            let m = self.len() - 1;
            let even = (0..self.len())
                .map(|i| (self.values[i] + self.values[m - i]) * 0.5)
                .collect();
            let odd = (0..self.len())
                .map(|i| (self.values[i] - self.values[m - i]) * 0.5)
                .collect();
            (even, odd)
        })
    }

    /// Even part `(f(x) + f(−x))/2`.
    pub fn even_part(&self) -> SampledFunction {
        Self::new(self.step, self.split().0.clone()).expect("same geometry")
    }

    /// Odd part `(f(x) − f(−x))/2`.
    pub fn odd_part(&self) -> SampledFunction {
        Self::new(self.step, self.split().1.clone()).expect("same geometry")
    }

    pub fn even_values(&self) -> &[Complex64] {
        &self.split().0
    }

    pub fn odd_values(&self) -> &[Complex64] {
        &self.split().1
    }

    /// `x ↦ f(−x)`.
    pub fn reflect(&self) -> SampledFunction {
        let mut v = self.values.clone();
        v.reverse();
        Self::new(self.step, v).expect("same geometry")
    }

    /// Largest |odd part| relative to the sup norm (0 for exactly even input).
    pub fn oddness(&self) -> f64 {
        let s = self.sup_norm().max(f64::MIN_POSITIVE);
        self.split().1.iter().map(|v| v.norm()).fold(0.0, f64::max) / s
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &SampledFunction) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn map(&self, f: impl Fn(f64, Complex64) -> Complex64) -> SampledFunction {
        let v = (0..self.len()).map(|i| f(self.x(i), self.values[i])).collect();
        Self::new(self.step, v).expect("same geometry")
    }

    /// Fourth-order first derivative; one-sided fourth-order stencils at the ends.
    pub fn derivative(&self) -> Result<SampledFunction> {
        let v = first_derivative(&self.values, self.step)?;
        Self::new(self.step, v)
    }

    /// Fourth-order second derivative on the interior; the two outermost
    /// samples on each side use one-sided stencils.
    pub fn second_derivative(&self) -> Result<SampledFunction> {
        let v = second_derivative(&self.values, self.step)?;
        Self::new(self.step, v)
    }

    /// Six-point Lagrange interpolation; zero outside the grid.
    pub fn interpolate(&self, x: f64) -> Complex64 {
        let r = self.radius();
        if x.abs() > r + 1e-12 {
            return Complex64::default();
        }
        let s = (x + r) / self.step;
        let m = self.len();
        if m < 6 {
            let i = s.round().clamp(0.0, (m - 1) as f64) as usize;
            return self.values[i];
        }
        let base = (s.floor() as isize - 2).clamp(0, m as isize - 6) as usize;
        let mut acc = Complex64::default();
        for j in 0..6 {
            let mut w = 1.0;
            for k in 0..6 {
                if k != j {
                    w *= (s - (base + k) as f64) / (j as f64 - k as f64);
                }
            }
            acc += self.values[base + j] * w;
        }
        acc
    }
}

/// Fourth-order first derivative of equally spaced samples.
pub fn first_derivative(v: &[Complex64], h: f64) -> Result<Vec<Complex64>> {
    let n = v.len();
    if n < 5 {
        return Err(Error::Config("derivative needs at least five samples".into()));
    }
    let mut d = vec![Complex64::default(); n];
    let c = 1.0 / (12.0 * h);
    for i in 2..n - 2 {
        d[i] = (v[i - 2] - v[i - 1] * 8.0 + v[i + 1] * 8.0 - v[i + 2]) * c;
    }
    let fwd0 = |w: [Complex64; 5]| (w[0] * -25.0 + w[1] * 48.0 - w[2] * 36.0 + w[3] * 16.0 - w[4] * 3.0) * c;
    let fwd1 = |w: [Complex64; 5]| (w[0] * -3.0 - w[1] * 10.0 + w[2] * 18.0 - w[3] * 6.0 + w[4]) * c;
    let head = [v[0], v[1], v[2], v[3], v[4]];
    let tail = [v[n - 1], v[n - 2], v[n - 3], v[n - 4], v[n - 5]];
    d[0] = fwd0(head);
    d[1] = fwd1(head);
    d[n - 1] = -fwd0(tail);
    d[n - 2] = -fwd1(tail);
    Ok(d)
}

/// Fourth-order second derivative of equally spaced samples.
pub fn second_derivative(v: &[Complex64], h: f64) -> Result<Vec<Complex64>> {
    let n = v.len();
    if n < 6 {
        return Err(Error::Config("second derivative needs at least six samples".into()));
    }
    let mut d = vec![Complex64::default(); n];
    let c = 1.0 / (12.0 * h * h);
    for i in 2..n - 2 {
        d[i] = (-v[i - 2] + v[i - 1] * 16.0 - v[i] * 30.0 + v[i + 1] * 16.0 - v[i + 2]) * c;
    }
    // one-sided stencils, fourth order
    let end0 = |w: &[Complex64]| {
        (w[0] * 45.0 - w[1] * 154.0 + w[2] * 214.0 - w[3] * 156.0 + w[4] * 61.0 - w[5] * 10.0) * c
    };
    let end1 = |w: &[Complex64]| {
        (w[0] * 10.0 - w[1] * 15.0 - w[2] * 4.0 + w[3] * 14.0 - w[4] * 6.0 + w[5]) * c
    };
    let tail: Vec<Complex64> = v[n - 6..].iter().rev().copied().collect();
    d[0] = end0(&v[..6]);
    d[1] = end1(&v[..6]);
    d[n - 1] = end0(&tail);
    d[n - 2] = end1(&tail);
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> Complex64 {
        Complex64::from(x)
    }

    #[test]
    fn parity_split_is_exact() {
        let f = SampledFunction::from_fn(2.0, 0.25, |x| c(x.exp()) + Complex64::new(0.0, x * x * x)).unwrap();
        let e = f.even_part();
        let o = f.odd_part();
        for i in 0..f.len() {
            assert!((e.value(i) + o.value(i) - f.value(i)).norm() < 1e-15 * f.value(i).norm().max(1.0));
            assert_eq!(e.value(i), e.value(f.len() - 1 - i));
            assert_eq!(o.value(i), -o.value(f.len() - 1 - i));
        }
    }

    #[test]
    fn derivatives_are_fourth_order() {
        let f = SampledFunction::from_real_fn(1.0, 1.0 / 32.0, |x| (2.0 * x).sin()).unwrap();
        let d = f.derivative().unwrap();
        let d2 = f.second_derivative().unwrap();
        for i in 0..f.len() {
            let x = f.x(i);
            let tol = if i < 2 || i + 2 >= f.len() { 2e-5 } else { 2e-6 };
            assert!((d.value(i).re - 2.0 * (2.0 * x).cos()).abs() < tol, "i = {i}");
            assert!((d2.value(i).re + 4.0 * (2.0 * x).sin()).abs() < 2e-4, "i = {i}");
        }
    }

    #[test]
    fn interpolation_reproduces_quintics() {
        let p = |x: f64| x.powi(5) - 2.0 * x * x + 0.5;
        let f = SampledFunction::from_real_fn(1.0, 0.125, p).unwrap();
        for x in [-0.97, -0.3, 0.01, 0.55, 0.999] {
            assert!((f.interpolate(x).re - p(x)).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_misaligned_radius() {
        assert!(SampledFunction::from_real_fn(1.0, 0.3, |x| x).is_err());
    }
}
