//! Solve self-consistent Rényi thermal states for a three-level system and
//! check the thermodynamic relations that define them.
//!
//!     cargo run --example thermal_state

use renyi_thermo::measures::RenyiOrder;
use renyi_thermo::operator::{trace_distance, HermitianOperator};
use renyi_thermo::thermal::{beta_consistency_check, qubit_beta_closed_form, solve_thermal_state};

fn main() {
    let h = HermitianOperator::from_diagonal(&[0.0, 0.4, 1.0]);
    println!("H = diag(0, 0.4, 1), beta = 0.9\n");
    println!("{:>6} {:>12} {:>12} {:>12} {:>12} {:>8}", "alpha", "U", "S", "ln Z", "F", "cutoff");
    for a in [0.3, 0.5, 0.9, 1.0, 1.1, 2.0, 3.0] {
        let alpha = RenyiOrder::new(a).unwrap();
        let th = solve_thermal_state(&h, 0.9, alpha).unwrap();
        println!(
            "{:>6} {:>12.8} {:>12.8} {:>12.8} {:>12.8} {:>8}",
            a,
            th.internal_energy(),
            th.entropy(),
            th.partition_function().ln(),
            th.free_energy(),
            th.cutoff_applied(),
        );
    }

    // the inverse temperature is recovered as dS/dU across the family
    let alpha = RenyiOrder::new(2.0).unwrap();
    let th = solve_thermal_state(&h, 0.9, alpha).unwrap();
    let est = beta_consistency_check(&th, 1e-5).unwrap();
    println!("\ndS/dU at beta=0.9, alpha=2: {est:.9} (finite differences)");

    // alpha -> 1 recovers the Gibbs state
    let gibbs = solve_thermal_state(&h, 0.9, RenyiOrder::von_neumann()).unwrap();
    let near = solve_thermal_state(&h, 0.9, RenyiOrder::new(1.0 + 1e-4).unwrap()).unwrap();
    println!(
        "trace distance to Gibbs at alpha = 1+1e-4: {:.3e}",
        trace_distance(near.state(), gibbs.state())
    );

    // qubit closed form: the beta that produces diag(0.7, 0.3) at alpha = 2
    let beta = qubit_beta_closed_form(0.7, 1.0, alpha);
    let qubit = solve_thermal_state(&HermitianOperator::from_diagonal(&[0.0, 1.0]), beta, alpha)
        .unwrap();
    println!(
        "\nqubit closed form: beta = {beta:.9}, solved populations = ({:.9}, {:.9})",
        qubit.state().entries()[(0, 0)].re,
        qubit.state().entries()[(1, 1)].re,
    );
}
