//! Bessel functions `J_ν` and `I_ν` of small integer order on `z ≥ 0`.

use crate::error::{Error, Result};
use std::f64::consts::PI;

const SERIES_SWITCH: f64 = 2.0;
const ASYMPTOTIC_SWITCH: f64 = 30.0;

fn check(nu: u32, z: f64) -> Result<()> {
    if nu > 2 {
        return Err(Error::Domain(format!("order {nu} not supported (0, 1, 2)")));
    }
    if !(z >= 0.0) || !z.is_finite() {
        return Err(Error::Domain(format!("Bessel argument must be finite and >= 0, got {z}")));
    }
    Ok(())
}

/// `J_ν(z)` for ν ∈ {0, 1, 2}.
pub fn bessel_j(nu: u32, z: f64) -> Result<f64> {
    check(nu, z)?;
    Ok(if z < SERIES_SWITCH {
        j_series(nu, z)
    } else if z < ASYMPTOTIC_SWITCH {
        j_miller(z)[nu as usize]
    } else {
        j_asymptotic(nu, z)
    })
}

/// `I_ν(z)` for ν ∈ {0, 1, 2}.
pub fn bessel_i(nu: u32, z: f64) -> Result<f64> {
    check(nu, z)?;
    Ok(if z < 40.0 { i_series(nu, z) } else { i_asymptotic(nu, z) })
}

/// `J₁(ρr)/r`, equal to ρ/2 at r = 0.
pub fn j1_over(rho: f64, r: f64) -> f64 {
    let z = rho * r;
    if z < SERIES_SWITCH {
        rho * j1_over_z_series(z)
    } else if z < ASYMPTOTIC_SWITCH {
        j_miller(z)[1] / r
    } else {
        j_asymptotic(1, z) / r
    }
}

/// `I₁(ρr)/r`, equal to ρ/2 at r = 0.
pub fn i1_over(rho: f64, r: f64) -> f64 {
    let z = rho * r;
    if z < 40.0 {
        // Σ (z/2)^{2k} / (2·k!(k+1)!)
        let q = 0.25 * z * z;
        let mut term = 0.5;
        let mut sum = term;
        for k in 1..200 {
            term *= q / (k as f64 * (k + 1) as f64);
            sum += term;
            if term < 1e-17 * sum {
                break;
            }
        }
        rho * sum
    } else {
        i_asymptotic(1, z) / r
    }
}

fn j1_over_z_series(z: f64) -> f64 {
    let q = -0.25 * z * z;
    let mut term = 0.5;
    let mut sum = term;
    for k in 1..40 {
        term *= q / (k as f64 * (k + 1) as f64);
        sum += term;
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    sum
}

fn j_series(nu: u32, z: f64) -> f64 {
    let half = 0.5 * z;
    let q = -half * half;
    let mut term = match nu {
        0 => 1.0,
        1 => half,
        _ => 0.5 * half * half,
    };
    let mut sum = term;
    for k in 1..40 {
        term *= q / (k as f64 * (k + nu as usize) as f64);
        sum += term;
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    sum
}

fn i_series(nu: u32, z: f64) -> f64 {
    let half = 0.5 * z;
    let q = half * half;
    let mut term = match nu {
        0 => 1.0,
        1 => half,
        _ => 0.5 * half * half,
    };
    let mut sum = term;
    for k in 1..300 {
        term *= q / (k as f64 * (k + nu as usize) as f64);
        sum += term;
        if term < 1e-17 * sum {
            break;
        }
    }
    sum
}

/// Miller's backward recurrence normalized by `J₀ + 2ΣJ_{2k} = 1`.
fn j_miller(z: f64) -> [f64; 3] {
    let start = 2 * ((z as usize + 30 + (2.0 * z.sqrt()) as usize) / 2);
    let mut jp1 = 0.0;
    let mut j = 1e-30;
    let mut norm = 0.0;
    let mut out = [0.0; 3];
    for k in (1..=start).rev() {
        let jm1 = 2.0 * k as f64 / z * j - jp1;
        jp1 = j;
        j = jm1;
        // j now holds J_{k-1}
        let idx = k - 1;
        if idx % 2 == 0 && idx > 0 {
            norm += 2.0 * j;
        }
        if idx <= 2 {
            out[idx] = j;
        }
        if j.abs() > 1e250 {
            jp1 *= 1e-250;
            j *= 1e-250;
            norm *= 1e-250;
            for v in out.iter_mut() {
                *v *= 1e-250;
            }
        }
    }
    norm += out[0];
    out.map(|v| v / norm)
}

fn hankel_pq(nu: u32, z: f64) -> (f64, f64) {
    let mu = 4.0 * (nu * nu) as f64;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut term = 1.0;
    let mut last = f64::INFINITY;
    for k in 1..60 {
        let odd = (2 * k - 1) as f64;
        term *= (mu - odd * odd) / (k as f64 * 8.0 * z);
        if term.abs() > last {
            break;
        }
        last = term.abs();
        match k % 4 {
            1 => q += term,
            2 => p -= term,
            3 => q -= term,
            _ => p += term,
        }
        if term.abs() < 1e-17 {
            break;
        }
    }
    (p, q)
}

fn j_asymptotic(nu: u32, z: f64) -> f64 {
    let (p, q) = hankel_pq(nu, z);
    let chi = z - (0.5 * nu as f64 + 0.25) * PI;
    (2.0 / (PI * z)).sqrt() * (p * chi.cos() - q * chi.sin())
}

fn i_asymptotic(nu: u32, z: f64) -> f64 {
    let mu = 4.0 * (nu * nu) as f64;
    let mut sum = 1.0;
    let mut term = 1.0;
    for k in 1..40 {
        let odd = (2 * k - 1) as f64;
        term *= -(mu - odd * odd) / (k as f64 * 8.0 * z);
        sum += term;
        if term.abs() < 1e-17 {
            break;
        }
    }
    z.exp() / (2.0 * PI * z).sqrt() * sum
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values_at_zero() {
        assert_eq!(bessel_j(0, 0.0).unwrap(), 1.0);
        assert_eq!(bessel_j(1, 0.0).unwrap(), 0.0);
        assert_eq!(bessel_i(1, 0.0).unwrap(), 0.0);
        assert_eq!(j1_over(3.0, 0.0), 1.5);
        assert_eq!(i1_over(3.0, 0.0), 1.5);
        assert!(bessel_j(0, -1.0).is_err());
    }

    #[test]
    fn reference_values() {
        // references from 30-digit arithmetic
        let cases = [
            (0, 1.0, 0.765_197_686_557_966_6),
            (1, 1.0, 0.440_050_585_744_933_5),
            (2, 1.0, 0.114_903_484_931_900_5),
            (0, 5.0, -0.177_596_771_314_338_3),
            (1, 10.0, 0.043_472_746_168_861_44),
            (2, 25.0, -0.106_294_803_242_381_3),
            (0, 29.9, -0.097_811_150_066_062_45),
            (1, 42.0, -0.045_993_888_221_887_14),
        ];
        for (nu, z, v) in cases {
            let got = bessel_j(nu, z).unwrap();
            assert!((got - v).abs() < 1e-13, "J_{nu}({z}) = {got}, want {v}");
        }
        let icases = [(0, 1.0, 1.266_065_877_752_008_4), (1, 2.5, 2.516_716_245_288_698), (2, 10.0, 2_281.518_967_726_004)];
        for (nu, z, v) in icases {
            let got = bessel_i(nu, z).unwrap();
            assert!((got - v).abs() < 1e-13 * v, "I_{nu}({z}) = {got}, want {v}");
        }
    }

    #[test]
    fn branches_agree_at_switch_points() {
        for nu in 0..3u32 {
            for z in [SERIES_SWITCH, ASYMPTOTIC_SWITCH] {
                let a = if z == SERIES_SWITCH { j_series(nu, z) } else { j_asymptotic(nu, z) };
                let b = j_miller(z)[nu as usize];
                assert!((a - b).abs() < 1e-14, "nu = {nu}, z = {z}: {a} vs {b}");
            }
        }
        assert!((i_series(1, 40.0) - i_asymptotic(1, 40.0)).abs() < 1e-13 * i_series(1, 40.0));
    }

    #[test]
    fn j0_bounded_by_one() {
        for k in 0..4000 {
            assert!(bessel_j(0, k as f64 * 0.01).unwrap().abs() <= 1.0);
        }
    }
}
