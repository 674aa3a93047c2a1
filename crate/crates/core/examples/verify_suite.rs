//! Runs the built-in self-check suite, including the slow checks.
//!
//!     cargo run --release --example verify_suite

use minfill::verify::{run, VerifyConfig};

fn main() {
    let config = VerifyConfig {
        slow: true,
        ..VerifyConfig::default()
    };
    let reports = run(&config);
    for r in &reports {
        println!("{}", r.line());
    }
    if reports.iter().any(|r| !r.passed) {
        std::process::exit(1);
    }
}
