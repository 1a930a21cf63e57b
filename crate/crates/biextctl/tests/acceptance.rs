//! Runs acceptance criteria 1–9 and prints one pass/fail line for each.

use std::process::ExitCode;

use biextctl::selftest;

fn main() -> ExitCode {
    let seed = std::env::var("BIEXT_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(0);
    let results = selftest::run_all(seed);
    println!("\nacceptance criteria (seed {seed})");
    for c in &results {
        println!("{}", c.line());
    }
    let failed: Vec<u8> = results.iter().filter(|c| !c.passed).map(|c| c.id).collect();
    if results.len() == 9 && failed.is_empty() {
        println!("all 9 criteria passed\n");
        ExitCode::SUCCESS
    } else {
        println!("failed criteria: {failed:?}\n");
        ExitCode::FAILURE
    }
}
