//! Samples Psi(lambda, x) for a Jacobi weight and checks the eigen-equation.

use num_complex::Complex64;
use reflectra::eigen::{apply_lambda_op, dunkl_closed_form, Eigenfunction};
use reflectra::{ChebliFamily, SpectralPoint};

fn main() -> reflectra::Result<()> {
    let fam = ChebliFamily::jacobi(1.5, 0.5)?;
    let lambda = Complex64::new(2.3, 0.0);
    for eps in [-1.0, 0.0, 0.5, 1.0] {
        let ef = Eigenfunction::new(&fam, SpectralPoint::new(&fam, lambda, eps)?, 6.0, 1e-12)?;
        let psi = ef.sample(1.0 / 64.0)?;
        let lhs = apply_lambda_op(&fam, eps, &psi)?;
        // the stencil is one-sided near the edges; compare away from them
        let residual = (8..psi.len() - 8)
            .map(|i| (lhs.value(i) - Complex64::i() * lambda * psi.value(i)).norm())
            .fold(0.0, f64::max);
        println!("eps {eps:>4}: Psi(2.3, 1) = {:.10}, residual {residual:.2e}", ef.at(1.0)?);
    }

    let dunkl = ChebliFamily::dunkl(0.5)?;
    let ef = Eigenfunction::new(&dunkl, SpectralPoint::new(&dunkl, Complex64::new(7.0, 0.0), 0.0)?, 10.0, 1e-13)?;
    let gap = (-80..=80)
        .map(|k| k as f64 / 8.0)
        .map(|x| (ef.at(x).unwrap() - dunkl_closed_form(0.5, 7.0, x)).norm())
        .fold(0.0, f64::max);
    println!("Dunkl kernel vs Bessel closed form, lambda = 7: {gap:.2e}");
    Ok(())
}
