//! Acceptance suite: every release criterion at full scale, one pass/fail
//! line per criterion (visible with `--nocapture`).

use renyi_thermo::verify::{self, CheckReport, Scale};

#[test]
fn acceptance_criteria() {
    let scale = Scale::full();
    let criteria: Vec<(&str, CheckReport)> = vec![
        ("1 entropy identities + S = ln Z", verify::check_entropy_identities(scale)),
        ("2 free-energy form invariance", verify::check_form_invariance(scale)),
        ("3 thermal free-energy minimality", verify::check_minimality(scale)),
        ("4 Gibbs/von Neumann limit at alpha -> 1", verify::check_gibbs_limit()),
        ("5 Carnot efficiency 1 - Tc/Th", verify::check_carnot(scale)),
        ("6 first-law residual halving", verify::check_first_law_convergence()),
        ("7 DPI batches on both ranges", verify::check_dpi_batches(scale)),
        ("8 Clausius inequality sweep", verify::check_clausius_experiment()),
        ("9 analytic first-order oracle", verify::check_first_order_oracle()),
        ("10 seeded-run determinism", verify::check_determinism()),
    ];

    let mut failures = Vec::new();
    for (label, report) in &criteria {
        println!(
            "{} criterion {:42} {}",
            if report.passed { "PASS" } else { "FAIL" },
            label,
            report.detail
        );
        if !report.passed {
            failures.push(format!("{label}: {}", report.detail));
        }
    }
    assert!(
        failures.is_empty(),
        "{} criterion(s) failed:\n{}",
        failures.len(),
        failures.join("\n")
    );
}
