//! Rényi entropies, escort internal energies, and the two relative
//! entropies, on commuting and noncommuting pairs.
//!
//!     cargo run --example entropies

use renyi_thermo::measures::{
    renyi_entropy, renyi_internal_energy, sandwiched_relative_entropy, trad_relative_entropy,
    RenyiOrder,
};
use renyi_thermo::operator::{CMatrix, DensityMatrix, HermitianOperator, PowerPolicy, C64};

fn main() {
    let rho = DensityMatrix::from_diagonal_probs(&[0.7, 0.3]).unwrap();
    let h = HermitianOperator::from_diagonal(&[0.0, 1.0]);

    println!("rho = diag(0.7, 0.3), H = diag(0, 1)\n");
    println!("{:>6} {:>12} {:>12}", "alpha", "S_alpha", "U_alpha");
    for a in [0.5, 0.9, 1.0, 1.5, 2.0, 3.0] {
        let alpha = RenyiOrder::new(a).unwrap();
        println!(
            "{:>6} {:>12.8} {:>12.8}",
            a,
            renyi_entropy(&rho, alpha),
            renyi_internal_energy(&rho, &h, alpha).unwrap(),
        );
    }

    // commuting pair: traditional and sandwiched coincide
    let sigma = DensityMatrix::from_diagonal_probs(&[0.5, 0.5]).unwrap();
    let alpha = RenyiOrder::new(2.0).unwrap();
    let d_trad = trad_relative_entropy(&sigma, &rho, alpha, PowerPolicy::StrictSupport).unwrap();
    let d_sand =
        sandwiched_relative_entropy(&sigma, &rho, alpha, PowerPolicy::StrictSupport).unwrap();
    println!("\ncommuting pair:    D = {d_trad:.12}, D~ = {d_sand:.12}");

    // noncommuting pair: the sandwiched entropy is smaller
    let coherent = DensityMatrix::from_matrix(CMatrix::from_fn(2, 2, |i, j| {
        let v = match (i, j) {
            (0, 0) => 0.62,
            (1, 1) => 0.38,
            _ => 0.15,
        };
        C64::new(v, 0.0)
    }))
    .unwrap();
    let d_trad = trad_relative_entropy(&coherent, &rho, alpha, PowerPolicy::StrictSupport).unwrap();
    let d_sand =
        sandwiched_relative_entropy(&coherent, &rho, alpha, PowerPolicy::StrictSupport).unwrap();
    println!("noncommuting pair: D = {d_trad:.12}, D~ = {d_sand:.12}  (D~ <= D)");

    // disjoint supports are a hard error under the strict policy
    let ground = DensityMatrix::basis_projector(2, 0);
    let excited = DensityMatrix::basis_projector(2, 1);
    let err = trad_relative_entropy(&ground, &excited, alpha, PowerPolicy::StrictSupport)
        .unwrap_err();
    println!("\ndisjoint support: {err}");
}
