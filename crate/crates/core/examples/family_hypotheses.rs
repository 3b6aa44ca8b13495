//! Admissibility checks for the built-in weights and a tabulated one.

use reflectra::{ChebliFamily, WeightTable};

fn main() -> reflectra::Result<()> {
    let grid: Vec<f64> = (1..=256).map(|i| i as f64 / 32.0).collect();
    let tabulated = {
        // B(x) = (sinh x / x)^2 on (0, 8], so A(x) = sinh(x)^2 and rho = 1
        let b: Vec<f64> = grid.iter().map(|x| (x.sinh() / x).powi(2)).collect();
        let bp: Vec<f64> = grid.iter().zip(&b).map(|(x, b)| 2.0 * b * (1.0 / x.tanh() - 1.0 / x)).collect();
        ChebliFamily::table(WeightTable::new(grid.clone(), b, bp)?, 0.5, None)?
    };
    for fam in [ChebliFamily::dunkl(0.5)?, ChebliFamily::jacobi(1.5, 0.5)?, tabulated] {
        let r = fam.check_hypotheses(&grid)?;
        println!("{}  rho = {}  rho_eps(0.5) = {:.6}", fam.label(), fam.rho(), fam.rho_eps(0.5));
        for h in [&r.h1, &r.h2, &r.h3, &r.h4] {
            println!("  {:<48} {}", h.name, if h.passed { "ok" } else { "violated" });
        }
        if let Some(delta) = r.delta {
            println!("  tail decay rate {delta:.4}");
        }
    }
    Ok(())
}
