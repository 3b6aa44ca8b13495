//! Gragg–Bulirsch–Stoer integration of the radial system
//!
//! ```text
//! f′ = g,   g′ = −L g − κ f,   Q′ = f − L Q
//! ```
//!
//! with `L = A′/A`, carried away from the singular point.

use crate::chebli::ChebliFamily;
use crate::error::{Error, Result};
use num_complex::Complex64;

pub(crate) type State = [Complex64; 3];

const SEQ: [usize; 8] = [2, 4, 6, 8, 10, 12, 14, 16];
const MAX_SPLIT_DEPTH: u32 = 12;

pub(crate) struct Radial<'a> {
    pub fam: &'a ChebliFamily,
    pub kappa: Complex64,
}

impl Radial<'_> {
    fn rhs(&self, x: f64, y: &State) -> Result<State> {
        let l = self.fam.log_derivative(x)?;
        Ok([y[1], -(y[1] * l) - self.kappa * y[0], y[0] - y[2] * l])
    }

    fn midpoint(&self, x: f64, y: &State, h_total: f64, n: usize) -> Result<State> {
        let h = h_total / n as f64;
        let mut z0 = *y;
        let d = self.rhs(x, &z0)?;
        let mut z1 = add(&z0, &d, h);
        for m in 1..n {
            let d = self.rhs(x + m as f64 * h, &z1)?;
            let z2 = add(&z0, &d, 2.0 * h);
            z0 = z1;
            z1 = z2;
        }
        let d = self.rhs(x + h_total, &z1)?;
        let end = add(&z0, &d, h);
        Ok([0, 1, 2].map(|i| (z1[i] + end[i]) * 0.5))
    }

    /// One extrapolated step; returns the state and the error estimate
    /// scaled by `max(1, |y|)`.
    fn gbs_step(&self, x: f64, y: &State, h: f64, tol: f64) -> Result<(State, f64)> {
        let mut table: Vec<State> = Vec::with_capacity(SEQ.len());
        let scale = norm(y).max(1.0);
        let mut err = f64::INFINITY;
        for (j, &nj) in SEQ.iter().enumerate() {
            let mut row = vec![self.midpoint(x, y, h, nj)?];
            for k in 1..=j {
                let ratio = (nj as f64 / SEQ[j - k] as f64).powi(2);
                let prev = &table[k - 1];
                let cur = row[k - 1];
                row.push([0, 1, 2].map(|i| cur[i] + (cur[i] - prev[i]) / (ratio - 1.0)));
            }
            if j >= 1 {
                let diff = [0, 1, 2].map(|i| row[j][i] - row[j - 1][i]);
                err = norm(&diff) / scale;
                if err <= tol {
                    return Ok((row[j], err));
                }
            }
            table = row;
        }
        Ok((*table.last().unwrap(), err))
    }

    /// Integrates from `x` to `x + h`, splitting the interval while the
    /// extrapolation error exceeds `tol·|h|/span`.
    pub fn advance(&self, x: f64, y: &State, h: f64, tol: f64, span: f64) -> Result<(State, f64)> {
        self.advance_rec(x, y, h, tol, span, 0)
    }

    fn advance_rec(&self, x: f64, y: &State, h: f64, tol: f64, span: f64, depth: u32) -> Result<(State, f64)> {
        let local = tol * h.abs() / span;
        let (z, err) = self.gbs_step(x, y, h, local)?;
        if err <= local {
            return Ok((z, err * norm(y).max(1.0)));
        }
        if depth >= MAX_SPLIT_DEPTH {
            return Err(Error::Accuracy { requested: local, achieved: err });
        }
        let (mid, e1) = self.advance_rec(x, y, 0.5 * h, tol, span, depth + 1)?;
        let (end, e2) = self.advance_rec(x + 0.5 * h, &mid, 0.5 * h, tol, span, depth + 1)?;
        Ok((end, e1 + e2))
    }
}

fn add(a: &State, d: &State, h: f64) -> State {
    [a[0] + d[0] * h, a[1] + d[1] * h, a[2] + d[2] * h]
}

pub(crate) fn norm(y: &State) -> f64 {
    y.iter().map(|v| v.norm()).fold(0.0, f64::max)
}
