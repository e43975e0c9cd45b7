//! Runs the full verification that `Fib/≃ → Ho Fib` is not faithful under ℤ/4.
//!
//! `cargo run --release --example counterexample`

use stablecat::report::{verify_counterexample, CounterexampleConfig};

fn main() -> stablecat::Result<()> {
    let report = verify_counterexample(&CounterexampleConfig::default())?;
    print!("{}", report.render_text());
    if let Some(step) = report.first_failure() {
        eprintln!("step {} failed: {}", step.id, step.claim);
        std::process::exit(1);
    }
    Ok(())
}
