//! Laplace representation of the Dunkl kernel and positivity of V.

use num_complex::Complex64;
use reflectra::eigen::psi;
use reflectra::intertwine::{v_eps, MehlerKernel};
use reflectra::{smooth_bump, ChebliFamily, SampledFunction, SpectralPoint};

fn main() -> reflectra::Result<()> {
    let fam = ChebliFamily::dunkl(0.5)?;
    for eps in [0.0, 1.0] {
        let mk = MehlerKernel::new(&fam, eps)?;
        for lambda in [0.0, 1.5, 4.0] {
            for x in [0.5, 2.0] {
                let l = Complex64::from(lambda);
                let exact = psi(&fam, &SpectralPoint::new(&fam, l, eps)?, x, 1e-13)?;
                println!("eps {eps} lambda {lambda} x {x}: |int K e^(ily) - Psi| = {:.1e}", (mk.laplace(x, l) - exact).norm());
            }
        }
    }

    let mk = MehlerKernel::new(&fam, 0.0)?;
    let f = SampledFunction::from_real_fn(3.0, 1.0 / 32.0, smooth_bump(0.5, 1.5, 1.0))?;
    let min = f.xs().map(|x| v_eps(&mk, &f, x).map(|v| v.re)).collect::<reflectra::Result<Vec<_>>>()?;
    println!("min V f over the grid: {:.3e}", min.into_iter().fold(f64::INFINITY, f64::min));

    // the kernel itself is only scanned; V f >= 0 does not need it pointwise
    let mut low = (f64::INFINITY, 0.0, 0.0);
    for i in 1..=40 {
        let x = if i % 2 == 0 { 0.1 * i as f64 } else { -0.1 * i as f64 };
        for j in 1..100 {
            let y = x.abs() * (j as f64 / 50.0 - 1.0);
            let k = mk.kernel(x, y);
            if k < low.0 {
                low = (k, x, y);
            }
        }
    }
    println!("min kernel {:.3e} at (x, y) = ({:.1}, {:.2})", low.0, low.1, low.2);
    Ok(())
}
