//! Forward transform, inversion and the Plancherel identity across eps.

use reflectra::fourier::{plancherel_check, round_trips, SpectralDensity};
use reflectra::{smooth_bump, ChebliFamily, SampledFunction};

fn main() -> reflectra::Result<()> {
    let fam = ChebliFamily::jacobi(1.5, 0.5)?;
    let eps_sweep = [-1.0, -0.5, 0.0, 0.5, 1.0];
    let densities = eps_sweep.iter().map(|&e| SpectralDensity::new(&fam, e)).collect::<reflectra::Result<Vec<_>>>()?;
    let f = SampledFunction::from_real_fn(3.0, 1.0 / 64.0, smooth_bump(0.3, 2.0, 10.0))?;
    let g = SampledFunction::from_real_fn(3.0, 1.0 / 64.0, smooth_bump(-0.4, 2.0, 10.0))?;

    for (d, rt) in densities.iter().zip(round_trips(&densities, &f, 40.0, 0.05)?) {
        let p = plancherel_check(d, &f, &g, 40.0, 0.05)?;
        println!(
            "eps {:>4}: gap {:.4}, round trip {:.2e}, Plancherel {:.2e} / {:.2e}",
            d.eps(),
            d.gap(),
            rt.error,
            p.rel,
            p.l2_rel
        );
    }
    Ok(())
}
