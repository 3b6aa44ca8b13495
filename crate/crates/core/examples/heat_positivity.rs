//! Scans the heat kernel W(s; u, x) for negative values.

use reflectra::heat::{euclidean_heat, positivity_scan, HeatEval};
use reflectra::ChebliFamily;

fn main() -> reflectra::Result<()> {
    let axis: Vec<f64> = (-64..=64).map(|k| k as f64 / 16.0).collect();
    for fam in [ChebliFamily::dunkl(0.5)?, ChebliFamily::jacobi(1.5, 0.5)?] {
        for eps in [-1.0, 0.0, 0.5] {
            for s in [0.25, 1.0] {
                let he = HeatEval::new(&fam, eps, s, 1e-12)?;
                let scan = positivity_scan(&he, &axis, &axis)?;
                println!(
                    "{} eps {eps:>4} s {s}: min W {:.3e} at {:?}, |W(s;u,0) - gauss| {:.1e}",
                    fam.label(),
                    scan.min,
                    scan.argmin,
                    scan.origin_error.unwrap_or(f64::NAN)
                );
            }
        }
    }
    println!("reference: e^(-u^2/4s)/(2 sqrt(pi s)) at s = 1, u = 0 is {:.6}", euclidean_heat(1.0, 0.0));
    Ok(())
}
