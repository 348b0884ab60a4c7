//! Data-processing-inequality batches: seeded random thermal-state-
//! preserving channels never increase either relative entropy on its
//! guaranteed α range.
//!
//!     cargo run --example dpi_batch

use renyi_thermo::channel::{dpi_check, random_thermal_fixing_channel};
use renyi_thermo::measures::{EntropyVariant, RenyiOrder};
use renyi_thermo::operator::DensityMatrix;
use renyi_thermo::sample::{hs_random_density, seeded_rng};

fn main() {
    let rho_t = DensityMatrix::from_diagonal_probs(&[0.7, 0.3]).unwrap();
    let mut rng = seeded_rng(123);
    let channels = 100;

    for (alphas, variant, label) in [
        (&[0.1, 0.5, 1.0, 1.5, 2.0][..], EntropyVariant::Traditional, "traditional"),
        (&[0.5, 1.0, 2.0, 3.0, 5.0, 10.0][..], EntropyVariant::Sandwiched, "sandwiched"),
    ] {
        for &a in alphas {
            let alpha = RenyiOrder::new(a).unwrap();
            let mut violations = 0;
            let mut max_increase = f64::NEG_INFINITY;
            for seed in 0..channels {
                let ch = random_thermal_fixing_channel(&rho_t, seed);
                let rho = hs_random_density(2, &mut rng);
                let check = dpi_check(&ch, &rho, &rho_t, alpha, variant).unwrap();
                max_increase = max_increase.max(check.after - check.before);
                if !check.monotone {
                    violations += 1;
                }
            }
            println!(
                "{label:11} alpha {a:>4}: {violations} violations / {channels}, max(after - before) = {max_increase:+.3e}"
            );
        }
    }
}
