//! Nonequilibrium free energies and the minimality gap.
//!
//! A nonequilibrium state ρ_N against a thermal state ρ_Tα carries three
//! independently computable free energies:
//!
//! - traditional route: F̃_Nα = F_Tα + (D_α(ρ_N‖ρ_Tα) - Δ'_α)/β,
//! - sandwiched route:  𝓕_Nα = F_Tα + T (D̃_α(ρ_N‖ρ_Tα) - Δ̃'_α),
//! - form route:        U_Nα - T·S_α(ρ_N).
//!
//! All three coincide (form invariance). The two relative-entropy routes
//! are computed from their defining formulas, never via the U - TS
//! shortcut, so the coincidence is a genuine cross-check.

use crate::error::Result;
use crate::measures::{
    delta_terms, relative_entropy, renyi_entropy, renyi_internal_energy, EntropyVariant,
};
use crate::operator::{DensityMatrix, PowerPolicy};
use crate::sample::{hs_random_density, seeded_rng};
use crate::thermal::ThermalState;

/// The three free-energy routes for one (ρ_N, thermal) pair.
#[derive(Debug, Clone, Copy)]
pub struct FreeEnergyReport {
    /// F̃_Nα via the traditional relative entropy.
    pub f_tilde: f64,
    /// 𝓕_Nα via the sandwiched relative entropy.
    pub f_sand: f64,
    /// U_Nα - T·S_α(ρ_N).
    pub f_form: f64,
    /// F_Tα of the reference thermal state.
    pub f_equilibrium: f64,
    /// f_form - f_equilibrium; nonnegative by free-energy minimality.
    pub gap: f64,
}

/// Compute all three free-energy routes independently.
pub fn free_energy_report(rho_n: &DensityMatrix, thermal: &ThermalState) -> Result<FreeEnergyReport> {
    let f_tilde = modified_free_energy(rho_n, thermal, EntropyVariant::Traditional)?;
    let f_sand = modified_free_energy(rho_n, thermal, EntropyVariant::Sandwiched)?;
    let f_form = form_free_energy(rho_n, thermal)?;
    let f_equilibrium = thermal.free_energy();
    Ok(FreeEnergyReport {
        f_tilde,
        f_sand,
        f_form,
        f_equilibrium,
        gap: f_form - f_equilibrium,
    })
}

/// One relative-entropy route: F_Tα + T·(D - Δ') for the chosen variant.
pub fn modified_free_energy(
    rho_n: &DensityMatrix,
    thermal: &ThermalState,
    variant: EntropyVariant,
) -> Result<f64> {
    let d = relative_entropy(
        rho_n,
        thermal.state(),
        thermal.alpha(),
        variant,
        PowerPolicy::StrictSupport,
    )?;
    let dt = delta_terms(rho_n, thermal, variant)?;
    Ok(thermal.free_energy() + (d - dt.delta_prime) / thermal.beta())
}

/// U_Nα - T·S_α(ρ_N), the direct form.
pub fn form_free_energy(rho_n: &DensityMatrix, thermal: &ThermalState) -> Result<f64> {
    let u = renyi_internal_energy(rho_n, thermal.hamiltonian(), thermal.alpha())?;
    let s = renyi_entropy(rho_n, thermal.alpha());
    Ok(u - s / thermal.beta())
}

/// Result of a random search for free energies below the thermal one.
#[derive(Debug, Clone)]
pub struct MinimalityCertificate {
    /// Smallest gap found (≥ -1e-9 when minimality holds).
    pub min_gap: f64,
    /// The state achieving it.
    pub argmin: DensityMatrix,
}

/// Draw `samples` Hilbert–Schmidt random states and return the smallest
/// free-energy gap against the thermal state.
///
/// Gaps compare same-route quantities (U_α - T·S_α of ρ_N vs of ρ_Tα
/// recomputed from its matrix), so the gap at ρ_N = ρ_Tα is exactly zero.
pub fn minimality_certificate(
    thermal: &ThermalState,
    samples: usize,
    seed: u64,
) -> MinimalityCertificate {
    assert!(samples >= 1, "need at least one sample");
    let mut rng = seeded_rng(seed);
    let d = thermal.state().dim();
    let reference = form_free_energy(thermal.state(), thermal)
        .expect("thermal state is compatible with itself");
    let mut min_gap = f64::INFINITY;
    let mut argmin = thermal.state().clone();
    for _ in 0..samples {
        let rho = hs_random_density(d, &mut rng);
        let f = form_free_energy(&rho, thermal).expect("dimensions match");
        let gap = f - reference;
        if gap < min_gap {
            min_gap = gap;
            argmin = rho;
        }
    }
    MinimalityCertificate { min_gap, argmin }
}
