//! Property-based invariants for the operator calculus and the entropy
//! measures.

use nalgebra::Complex;
use proptest::prelude::*;

use renyi_thermo::measures::{
    delta_terms, renyi_entropy, renyi_internal_energy, sandwiched_relative_entropy,
    trad_relative_entropy, EntropyVariant, RenyiOrder,
};
use renyi_thermo::operator::{
    expectation, spectral_power, CMatrix, DensityMatrix, HermitianOperator, PowerPolicy,
};
use renyi_thermo::thermal::solve_thermal_state;

fn complex_entries(dim: usize) -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), dim * dim)
}

fn hermitian_from(entries: &[(f64, f64)], dim: usize) -> HermitianOperator {
    let g = CMatrix::from_fn(dim, dim, |i, j| {
        let (re, im) = entries[i * dim + j];
        Complex::new(re, im)
    });
    let adj = g.adjoint();
    HermitianOperator::new((g + adj).scale(0.5)).unwrap()
}

fn density_from(entries: &[(f64, f64)], dim: usize) -> DensityMatrix {
    let g = CMatrix::from_fn(dim, dim, |i, j| {
        let (re, im) = entries[i * dim + j];
        Complex::new(re, im)
    });
    let m = &g * g.adjoint();
    let shifted = m + CMatrix::identity(dim, dim).scale(1e-6);
    let tr = shifted.trace().re;
    DensityMatrix::from_matrix(shifted.scale(1.0 / tr)).unwrap()
}

fn max_entry_diff(a: &HermitianOperator, b: &HermitianOperator) -> f64 {
    a.max_abs_entry_diff(b)
}

proptest! {
    #[test]
    fn power_one_is_identity_map(dim in 1usize..6, entries in complex_entries(5)) {
        let m = hermitian_from(&entries[..dim * dim], dim);
        let p = spectral_power(&m, 1.0, PowerPolicy::ZeroExtend).unwrap();
        prop_assert!(max_entry_diff(&m, &p) < 1e-12);
    }

    #[test]
    fn power_composition(
        dim in 1usize..6,
        entries in complex_entries(5),
        a in 0.2f64..2.5,
        b in 0.2f64..2.5,
    ) {
        let rho = density_from(&entries[..dim * dim], dim);
        let pa = rho.power(a, PowerPolicy::StrictSupport).unwrap();
        let pab = spectral_power(&pa, b, PowerPolicy::StrictSupport).unwrap();
        let direct = rho.power(a * b, PowerPolicy::StrictSupport).unwrap();
        prop_assert!(max_entry_diff(&pab, &direct) < 1e-10);
    }

    #[test]
    fn expectation_linear_and_real(
        dim in 1usize..6,
        state in complex_entries(5),
        obs1 in complex_entries(5),
        obs2 in complex_entries(5),
        c in -3.0f64..3.0,
    ) {
        let rho = density_from(&state[..dim * dim], dim);
        let o1 = hermitian_from(&obs1[..dim * dim], dim);
        let o2 = hermitian_from(&obs2[..dim * dim], dim);
        let combined = o1.linear_combination(c, &o2, 1.0).unwrap();
        let lhs = expectation(&rho, &combined).unwrap();
        let rhs = c * expectation(&rho, &o1).unwrap() + expectation(&rho, &o2).unwrap();
        prop_assert!((lhs - rhs).abs() < 1e-10);
    }

    #[test]
    fn relative_entropies_nonnegative(
        dim in 2usize..5,
        a_entries in complex_entries(4),
        b_entries in complex_entries(4),
        grid_idx in 0usize..8,
    ) {
        let alphas = [0.3, 0.5, 0.9, 1.0, 1.5, 2.0, 3.0, 5.0];
        let alpha = RenyiOrder::new(alphas[grid_idx]).unwrap();
        let rho = density_from(&a_entries[..dim * dim], dim);
        let sigma = density_from(&b_entries[..dim * dim], dim);
        let d = trad_relative_entropy(&rho, &sigma, alpha, PowerPolicy::StrictSupport).unwrap();
        let ds = sandwiched_relative_entropy(&rho, &sigma, alpha, PowerPolicy::StrictSupport).unwrap();
        prop_assert!(d >= -1e-10, "traditional {d}");
        prop_assert!(ds >= -1e-10, "sandwiched {ds}");
        // noncommutativity ordering
        prop_assert!(ds <= d + 1e-10, "sandwiched above traditional");
    }

    #[test]
    fn commuting_pairs_reduce(
        dim in 2usize..5,
        raw_p in prop::collection::vec(0.05f64..1.0, 4),
        raw_q in prop::collection::vec(0.05f64..1.0, 4),
        grid_idx in 0usize..6,
    ) {
        let alphas = [0.3, 0.5, 0.9, 1.5, 2.0, 3.0];
        let alpha = RenyiOrder::new(alphas[grid_idx]).unwrap();
        let norm = |raw: &[f64]| {
            let s: f64 = raw[..dim].iter().sum();
            raw[..dim].iter().map(|v| v / s).collect::<Vec<_>>()
        };
        let rho = DensityMatrix::from_diagonal_probs(&norm(&raw_p)).unwrap();
        let sigma = DensityMatrix::from_diagonal_probs(&norm(&raw_q)).unwrap();
        let d = trad_relative_entropy(&rho, &sigma, alpha, PowerPolicy::StrictSupport).unwrap();
        let ds = sandwiched_relative_entropy(&rho, &sigma, alpha, PowerPolicy::StrictSupport).unwrap();
        prop_assert!((d - ds).abs() <= 1e-10, "commuting split {d} vs {ds}");
    }

    #[test]
    fn entropy_continuity_at_one(dim in 2usize..9, entries in complex_entries(8)) {
        let rho = density_from(&entries[..dim * dim], dim);
        let vn = renyi_entropy(&rho, RenyiOrder::von_neumann());
        for da in [-1e-4, 1e-4] {
            let s = renyi_entropy(&rho, RenyiOrder::new(1.0 + da).unwrap());
            prop_assert!((s - vn).abs() <= 1e-3, "S {s} vs von Neumann {vn}");
        }
    }

    #[test]
    fn delta_terms_defining_relation(
        entries in complex_entries(3),
        beta in 0.05f64..0.4,
        grid_idx in 0usize..5,
    ) {
        let alphas = [0.5, 0.9, 1.0, 1.5, 2.0];
        let alpha = RenyiOrder::new(alphas[grid_idx]).unwrap();
        let h = HermitianOperator::from_diagonal(&[0.0, 0.5, 1.0]);
        let th = solve_thermal_state(&h, beta, alpha).unwrap();
        let rho = density_from(&entries[..9], 3);
        let u_n = renyi_internal_energy(&rho, &h, alpha).unwrap();
        let u_t = th.internal_energy();
        for variant in [EntropyVariant::Traditional, EntropyVariant::Sandwiched] {
            let dt = delta_terms(&rho, &th, variant).unwrap();
            // the defining relation holds exactly as computed
            prop_assert_eq!(dt.delta_prime, th.beta() * (u_t - u_n) + dt.delta);
        }
    }
}
