//! Runs the full verification suite and prints a one-line summary per check.
//!
//! `cargo run --release --example verify_report -- jacobi 0.5`

use reflectra::{verify_suite, ChebliFamily, Status, VerifyConfig};

fn main() -> reflectra::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let fam = match args.first().map(String::as_str) {
        Some("jacobi") => ChebliFamily::jacobi(1.5, 0.5)?,
        _ => ChebliFamily::dunkl(0.5)?,
    };
    let eps = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(0.0);
    let mut cfg = VerifyConfig::new(fam, eps);
    cfg.timings = true;
    let report = verify_suite(&cfg);
    for c in &report.checks {
        let tag = match c.status {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Skip => "skip",
        };
        println!("{tag}  {:<32} {:>12.4e}  ({} ms)", c.check_id, c.observed, c.runtime_ms.unwrap_or(0));
    }
    println!("{} / {} passed", report.checks.iter().filter(|c| c.status == Status::Pass).count(), report.checks.len());
    Ok(())
}
