//! First-law bookkeeping on a discretized isotherm: the total residual
//! dU - ΣđQ - ΣđW and the housekeeping heat both shrink like 1/steps, and
//! the excess heat matches T·ΔS in the same limit.
//!
//!     cargo run --example first_law

use renyi_thermo::measures::{EntropyVariant, RenyiOrder};
use renyi_thermo::process::{isotherm_decomposition, HamiltonianFamily, StateFamily};

fn main() {
    let ham = HamiltonianFamily::qubit_gap((0.05, 8.0));
    let family = StateFamily::thermal();
    let alpha = RenyiOrder::new(2.0).unwrap();

    println!("thermal qubit isotherm, gamma 1 -> 2 at T = 1, alpha = 2\n");
    println!(
        "{:>7} {:>14} {:>14} {:>14}",
        "steps", "first-law", "housekeeping", "Qex - T dS"
    );
    let mut prev: Option<f64> = None;
    for steps in [125usize, 250, 500, 1000, 2000, 4000] {
        let r = isotherm_decomposition(
            &family,
            &ham,
            1.0,
            2.0,
            1.0,
            alpha,
            steps,
            EntropyVariant::Traditional,
        )
        .unwrap();
        let defect = r.first_law_defect();
        let note = match prev {
            Some(p) => format!("   ratio {:.3}", p / defect.abs()),
            None => String::new(),
        };
        println!(
            "{:>7} {:>14.3e} {:>14.3e} {:>14.3e}{note}",
            steps,
            defect,
            r.heat_housekeeping,
            r.clausius_defect(1.0),
        );
        prev = Some(defect.abs());
    }
}
