//! Quadrature rules shared by the transforms.
//!
//! Uniform-grid rules (composite Simpson, trapezoid) operate on stored samples;
//! the adaptive Gauss–Kronrod rule is used where a kernel can be evaluated at
//! arbitrary points.

use crate::special::zeta_negative;
use num_complex::Complex64;
use std::ops::{Add, Mul, Sub};

/// Field-like values the quadrature rules can accumulate.
pub trait Scalar:
    Copy + Default + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> + Send + Sync
{
    fn magnitude(self) -> f64;
}

impl Scalar for f64 {
    fn magnitude(self) -> f64 {
        self.abs()
    }
}

impl Scalar for Complex64 {
    fn magnitude(self) -> f64 {
        self.norm()
    }
}

/// Composite Simpson rule on equally spaced samples.
///
/// An odd number of intervals is closed with Simpson's 3/8 rule on the last
/// three; two samples fall back to the trapezoid.
pub fn simpson<T: Scalar>(values: &[T], h: f64) -> T {
    let n = values.len();
    match n {
        0 | 1 => T::default(),
        2 => (values[0] + values[1]) * (0.5 * h),
        3 => (values[0] + values[1] * 4.0 + values[2]) * (h / 3.0),
        4 => (values[0] + values[1] * 3.0 + values[2] * 3.0 + values[3]) * (3.0 * h / 8.0),
        _ => {
            let intervals = n - 1;
            let (even_part, tail) = if intervals.is_multiple_of(2) {
                (n, None)
            } else {
                (n - 3, Some(&values[n - 4..]))
            };
            let mut acc = values[0] + values[even_part - 1];
            for (i, v) in values.iter().enumerate().take(even_part - 1).skip(1) {
                acc = acc + *v * if i % 2 == 1 { 4.0 } else { 2.0 };
            }
            let mut total = acc * (h / 3.0);
            if let Some(t) = tail {
                total = total + (t[0] + t[1] * 3.0 + t[2] * 3.0 + t[3]) * (3.0 * h / 8.0);
            }
            total
        }
    }
}

/// Weights `w` with `Σ w_i v_i = simpson(v, h)` for `n` samples.
pub fn simpson_weights(n: usize, h: f64) -> Vec<f64> {
    let mut w = vec![0.0; n];
    match n {
        0 | 1 => return w,
        2..=4 => {
            // reuse the short rules
            for (i, wi) in w.iter_mut().enumerate() {
                let mut e = [0.0; 4];
                e[i] = 1.0;
                *wi = simpson(&e[..n], h);
            }
            return w;
        }
        _ => {}
    }
    let even_part = if (n - 1).is_multiple_of(2) { n } else { n - 3 };
    for (i, wi) in w.iter_mut().enumerate().take(even_part) {
        *wi = if i == 0 || i == even_part - 1 {
            h / 3.0
        } else if i % 2 == 1 {
            4.0 * h / 3.0
        } else {
            2.0 * h / 3.0
        };
    }
    if even_part < n {
        for (j, c) in [1.0, 3.0, 3.0, 1.0].into_iter().enumerate() {
            w[n - 4 + j] += c * 3.0 * h / 8.0;
        }
    }
    w
}

/// Gregory's coefficients `γ_1..γ_6` of the end-corrected trapezoid rule.
const GREGORY: [f64; 6] = [1.0 / 12.0, 1.0 / 24.0, 19.0 / 720.0, 3.0 / 160.0, 863.0 / 60480.0, 275.0 / 24192.0];

/// Weight corrections at the first (and mirrored last) seven samples.
fn gregory_corrections() -> [f64; 7] {
    let mut c = [0.0; 7];
    for (i, g) in GREGORY.iter().enumerate() {
        let k = i + 1;
        // −γ_k (∇^k v_n + (−1)^k Δ^k v_0) expanded in samples
        let mut binom = 1.0;
        for (j, cj) in c.iter_mut().enumerate().take(k + 1) {
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            *cj -= g * sign * binom;
            binom = binom * (k - j) as f64 / (j + 1) as f64;
        }
    }
    c
}

/// Gregory's rule with corrections through sixth differences: exact for
/// polynomials of degree six, so the error is `O(h⁷)` for smooth data.
/// Falls back to [`simpson`] below 14 samples.
pub fn gregory<T: Scalar>(values: &[T], h: f64) -> T {
    let n = values.len();
    if n < 14 {
        return simpson(values, h);
    }
    let c = gregory_corrections();
    let mut acc = (values[0] + values[n - 1]) * 0.5;
    for v in &values[1..n - 1] {
        acc = acc + *v;
    }
    for (j, cj) in c.iter().enumerate() {
        acc = acc + (values[j] + values[n - 1 - j]) * *cj;
    }
    acc * h
}

/// Simpson estimate together with a Richardson error estimate from the rule on
/// every other sample.
pub fn simpson_with_error<T: Scalar>(values: &[T], h: f64) -> (T, f64) {
    let fine = simpson(values, h);
    if values.len() < 9 {
        return (fine, 0.0);
    }
    let coarse: Vec<T> = values.iter().step_by(2).copied().collect();
    let span_fine = (values.len() - 1) as f64 * h;
    let span_coarse = (coarse.len() - 1) as f64 * 2.0 * h;
    if (span_fine - span_coarse).abs() > 1e-12 * span_fine.max(1.0) {
        return (fine, 0.0);
    }
    let c = simpson(&coarse, 2.0 * h);
    (fine, (fine - c).magnitude() / 15.0)
}

/// Composite trapezoid rule on equally spaced samples.
pub fn trapezoid<T: Scalar>(values: &[T], h: f64) -> T {
    let n = values.len();
    if n < 2 {
        return T::default();
    }
    let mut acc = (values[0] + values[n - 1]) * 0.5;
    for v in &values[1..n - 1] {
        acc = acc + *v;
    }
    acc * h
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// One 15-point Kronrod panel; returns (estimate, |K15 − G7|).
pub fn gauss_kronrod_15<T: Scalar, F: Fn(f64) -> T>(f: &F, a: f64, b: f64) -> (T, f64) {
    let c = 0.5 * (a + b);
    let r = 0.5 * (b - a);
    let fc = f(c);
    let mut k = fc * WGK[7];
    let mut g = fc * WG[3];
    for j in 0..7 {
        let dx = r * XGK[j];
        let s = f(c - dx) + f(c + dx);
        k = k + s * WGK[j];
        if j % 2 == 1 {
            g = g + s * WG[j / 2];
        }
    }
    (k * r, (k - g).magnitude() * r.abs())
}

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy)]
pub struct Integral<T> {
    pub value: T,
    pub error: f64,
    pub panels: usize,
}

/// Globally adaptive Gauss–Kronrod quadrature on [a, b].
///
/// Panels are bisected largest-error first until the summed error estimate is
/// below `max(abs_tol, rel_tol·|I|)` or `max_panels` is reached.
pub fn integrate<T: Scalar, F: Fn(f64) -> T>(
    f: F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
    max_panels: usize,
) -> Integral<T> {
    if a == b {
        return Integral { value: T::default(), error: 0.0, panels: 0 };
    }
    let (v, e) = gauss_kronrod_15(&f, a, b);
    let mut panels = vec![(a, b, v, e)];
    loop {
        let mut total = T::default();
        let mut err = 0.0;
        let mut worst = 0;
        for (i, p) in panels.iter().enumerate() {
            total = total + p.2;
            err += p.3;
            if p.3 > panels[worst].3 {
                worst = i;
            }
        }
        if err <= abs_tol.max(rel_tol * total.magnitude()) || panels.len() >= max_panels {
            return Integral { value: total, error: err, panels: panels.len() };
        }
        let (lo, hi, _, _) = panels.swap_remove(worst);
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            return Integral { value: total, error: err, panels: panels.len() + 1 };
        }
        let (v1, e1) = gauss_kronrod_15(&f, lo, mid);
        let (v2, e2) = gauss_kronrod_15(&f, mid, hi);
        panels.push((lo, mid, v1, e1));
        panels.push((mid, hi, v2, e2));
    }
}

/// Weight on `g(0)` that cancels the leading error of composite Simpson for
/// `∫ |x|^p g(x) dx` on a symmetric grid with the origin at node `center`.
///
/// The error is `2ζ(−p) h^{p+1} g(0)` times a factor fixed by the parity of
/// `center`; it vanishes when `p` is an even integer.
pub fn simpson_cusp_weight(p: f64, h: f64, center: usize) -> f64 {
    let z = zeta_negative(p);
    if z == 0.0 {
        return 0.0;
    }
    let scale = if center.is_multiple_of(2) { 4.0 - 2f64.powf(p + 1.0) } else { 2.0 + 2f64.powf(p + 1.0) } / 3.0;
    -2.0 * z * h.powf(p + 1.0) * scale
}

/// Weights on the samples of `g` at `center - 2 ..= center + 2` that add the
/// corrections for `g` and its second and fourth derivatives at 0 to the
/// Simpson sum of `|x|^p g`.
///
/// The stencil is exact for `g = 1, x², x⁴`.
pub fn simpson_cusp_stencil(p: f64, h: f64, center: usize) -> [f64; 5] {
    let c0 = simpson_cusp_weight(p, h, center);
    let c2 = simpson_cusp_weight(p + 2.0, h, center) / (h * h);
    let c4 = simpson_cusp_weight(p + 4.0, h, center) / h.powi(4);
    // 2 w1 + 8 w2 = c2, 2 w1 + 32 w2 = c4
    let w2 = (c4 - c2) / 24.0;
    let w1 = 0.5 * (c2 - 8.0 * w2);
    [w2, w1, c0 - 2.0 * (w1 + w2), w1, w2]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cusp_correction_restores_order() {
        use crate::special::gamma;
        let h = 1.0 / 16.0;
        for p in [1.4, 2.0, 3.0, 0.6] {
            let exact = gamma(0.5 * (p + 1.0));
            for n in [128usize, 129] {
                let v: Vec<f64> = (0..=2 * n).map(|i| (i as f64 - n as f64) * h).map(|x| x.abs().powf(p) * (-x * x).exp()).collect();
                let plain = simpson(&v, h);
                let fixed = plain + simpson_cusp_weight(p, h, n);
                let tol = if p == 2.0 { 1e-12 } else { 0.02 * (plain - exact).abs() };
                assert!((fixed - exact).abs() <= tol, "p {p} n {n}: {plain} -> {fixed} vs {exact}");
            }
        }
    }

    #[test]
    fn stencil_adds_higher_orders() {
        // g = cos(3x) e^{-x^2}; the reference uses a four times finer grid
        let g = |x: f64| (3.0 * x).cos() * (-x * x).exp();
        let sum = |p: f64, h: f64, n: usize, stencil: bool| {
            let v: Vec<f64> = (0..=2 * n).map(|i| (i as f64 - n as f64) * h).map(|x| x.abs().powf(p) * g(x)).collect();
            let mut s = simpson(&v, h);
            if stencil {
                let w = simpson_cusp_stencil(p, h, n);
                s += (0..5).map(|j| w[j] * g((j as f64 - 2.0) * h)).sum::<f64>();
            } else {
                s += simpson_cusp_weight(p, h, n) * g(0.0);
            }
            s
        };
        for p in [1.4, 0.6, 3.0] {
            let exact = sum(p, 1.0 / 256.0, 2048, true);
            for n in [96usize, 97] {
                let h = 8.0 / n as f64;
                let first = (sum(p, h, n, false) - exact).abs();
                let second = (sum(p, h, n, true) - exact).abs();
                assert!(second < 0.1 * first, "p {p} n {n}: {first:e} -> {second:e}");
            }
        }
    }

    #[test]
    fn weights_match_rule() {
        for n in 2..12 {
            let v: Vec<f64> = (0..n).map(|i| ((i * i) as f64).sin()).collect();
            let w = simpson_weights(n, 0.3);
            let dot: f64 = w.iter().zip(&v).map(|(a, b)| a * b).sum();
            assert!((dot - simpson(&v, 0.3)).abs() < 1e-14, "n = {n}");
        }
    }

    #[test]
    fn simpson_is_exact_for_cubics() {
        for n in [3usize, 4, 5, 6, 7, 10, 11] {
            let h = 2.0 / (n - 1) as f64;
            let v: Vec<f64> = (0..n).map(|i| (-1.0 + i as f64 * h).powi(3) + 1.0).collect();
            assert!((simpson(&v, h) - 2.0).abs() < 1e-13, "n = {n}");
        }
    }

    #[test]
    fn simpson_error_estimate_tracks_truth() {
        let n = 129;
        let h = std::f64::consts::PI / (n - 1) as f64;
        let v: Vec<f64> = (0..n).map(|i| (i as f64 * h).sin()).collect();
        let (s, e) = simpson_with_error(&v, h);
        let truth = (s - 2.0).abs();
        assert!(truth <= 2.0 * e && e < 1e-8);
    }

    #[test]
    fn kronrod_handles_endpoint_singularity() {
        let r = integrate(|x: f64| 1.0 / x.sqrt(), 0.0, 1.0, 1e-12, 1e-12, 500);
        assert!((r.value - 2.0).abs() < 1e-9, "{}", r.value);
    }

    #[test]
    fn kronrod_complex_oscillatory() {
        let r = integrate(|x: f64| Complex64::new(0.0, 5.0 * x).exp(), 0.0, 2.0, 1e-13, 0.0, 200);
        let exact = (Complex64::new(0.0, 10.0).exp() - 1.0) / Complex64::new(0.0, 5.0);
        assert!((r.value - exact).norm() < 1e-12);
    }

    #[test]
    fn gregory_is_high_order() {
        let exact = 1f64.exp() - 1.0;
        let err = |n: usize| {
            let h = 1.0 / n as f64;
            let v: Vec<f64> = (0..=n).map(|i| (i as f64 * h).exp()).collect();
            (gregory(&v, h) - exact).abs()
        };
        assert!(err(16) < 1e-10, "{:e}", err(16));
        // seventh order or better
        assert!(err(16) / err(32) > 100.0);
        let cubic: Vec<f64> = (0..=20).map(|i| (i as f64 * 0.1).powi(6)).collect();
        assert!((gregory(&cubic, 0.1) - 2f64.powi(7) / 7.0).abs() < 1e-12);
    }
}
