//! Acceptance gate: runs every criterion and prints one line each.
//!
//! Built with `harness = false` so the table is always shown, not only on failure.

use hardy_core::verify::run_acceptance;

fn main() {
    let results = run_acceptance();
    println!();
    for r in &results {
        println!("{r}");
    }
    let failed: Vec<_> = results.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    println!(
        "\nacceptance: {}/{} passed",
        results.len() - failed.len(),
        results.len()
    );
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
