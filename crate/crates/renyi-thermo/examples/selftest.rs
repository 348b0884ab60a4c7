//! Run the full invariant suite programmatically (same checks as the
//! `selftest` subcommand).
//!
//!     cargo run --example selftest [-- --quick]

use renyi_thermo::verify::{run_all, Scale};

fn main() {
    let scale = if std::env::args().any(|a| a == "--quick") {
        Scale::quick()
    } else {
        Scale::full()
    };
    let t0 = std::time::Instant::now();
    let mut failed = 0;
    for report in run_all(scale) {
        println!(
            "{} {:32} {}",
            if report.passed { "PASS" } else { "FAIL" },
            report.name,
            report.detail
        );
        if !report.passed {
            failed += 1;
        }
    }
    println!("elapsed {:.1?}, {} failures", t0.elapsed(), failed);
    std::process::exit(if failed == 0 { 0 } else { 1 });
}
