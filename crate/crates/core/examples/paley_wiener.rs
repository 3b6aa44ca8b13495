//! Exponential type and decay of the transform of a bump supported in [-1, 1].

use reflectra::fourier::{paley_wiener_check, riemann_lebesgue_ratio};
use reflectra::{smooth_bump, ChebliFamily, SampledFunction};

fn main() -> reflectra::Result<()> {
    let f = SampledFunction::from_real_fn(1.25, 1.0 / 256.0, smooth_bump(0.0, 1.0, 1.0))?;
    let etas: Vec<f64> = (10..=120).map(|k| k as f64 * 0.5).collect();
    for fam in [ChebliFamily::dunkl(0.5)?, ChebliFamily::jacobi(1.5, 0.5)?] {
        for eps in [0.0, 1.0] {
            let pw = paley_wiener_check(&fam, eps, &f, 1.0, &etas, &[0.0], &[3.0], 40.0)?;
            let rl = riemann_lebesgue_ratio(&fam, eps, &f, (0.0, 10.0), (30.0, 40.0), 0.1)?;
            println!(
                "{} eps {eps}: R_fit {:.4}, sup (|l|+1)^3 |Ff| = {:.3e}, RL ratio {rl:.2e}",
                fam.label(),
                pw.fit.r_fit,
                pw.weighted_sups[0].1
            );
        }
    }
    Ok(())
}
