//! The Bessel-kernel transmutations undo each other and conjugate d^2/dx^2.

use reflectra::intertwine::{apply_e, BesselKernelOp, Direction};
use reflectra::{smooth_bump, ChebliFamily, SampledFunction};

fn main() -> reflectra::Result<()> {
    let fam = ChebliFamily::jacobi(1.5, 0.5)?;
    let eps = 0.5;
    let op = |d| BesselKernelOp::new(&fam, eps, d);
    let f = SampledFunction::from_real_fn(3.0, 1.0 / 64.0, smooth_bump(0.0, 2.0, 1.0))?;

    let back = apply_e(&op(Direction::E)?, &apply_e(&op(Direction::EInv)?, &f)?)?;
    println!("|E Einv f - f|      = {:.2e}", back.max_abs_diff(&f));
    let back = apply_e(&op(Direction::TE)?, &apply_e(&op(Direction::TEInv)?, &f)?)?;
    println!("|tE tEinv f - f|    = {:.2e}", back.max_abs_diff(&f));

    let te = op(Direction::TE)?;
    let lhs = apply_e(&te, &f.second_derivative()?)?;
    let g = apply_e(&te, &f)?;
    let rho2 = te.rho_eps * te.rho_eps;
    let rhs = g.second_derivative()?.map(|x, v| v - g.interpolate(x) * rho2);
    let inner = (16..f.len() - 16).map(|i| (lhs.value(i) - rhs.value(i)).norm()).fold(0.0, f64::max);
    println!("tE f'' vs (d2 - rho_eps^2) tE f: {inner:.2e}");

    let id = BesselKernelOp::new(&fam, 1.0, Direction::E)?;
    println!("eps = 1 gives the identity: {}", id.is_identity() && apply_e(&id, &f)?.values() == f.values());
    Ok(())
}
