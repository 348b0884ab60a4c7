//! # renyi-thermo
//!
//! Rényi-α quantum thermodynamics for finite-dimensional systems: the
//! self-consistent Rényi thermal state, the traditional and sandwiched
//! Rényi relative entropies, nonequilibrium free energies with their form
//! invariance, quasistatic first-law bookkeeping, a four-stroke Carnot
//! cycle, and a Clausius/data-processing-inequality verification harness
//! under thermal-state-preserving channels.
//!
//! Natural logarithms and k_B = 1 throughout. All state is immutable after
//! construction; every solver and measure is a pure, deterministic function
//! (randomness only through explicit seeds).
//!
//! ## Core objects
//!
//! - [`operator::HermitianOperator`] / [`operator::DensityMatrix`]:
//!   validated dense operators with spectral calculus; matrix powers carry
//!   an explicit zero/negative-eigenvalue policy
//!   ([`operator::PowerPolicy`]).
//! - [`measures`]: S_α, the escort internal energy U_α, both relative
//!   entropies, and the Δ_α/Δ'_α correction terms.
//! - [`thermal::solve_thermal_state`]: the maximum-entropy thermal state
//!   ρ_Tα = [1 - (1-α)β(H - U_Tα)]^{1/(1-α)}/Z_α with its self-consistent
//!   internal energy, solved by bisection in the eigenbasis of H.
//! - [`free_energy`]: the three free-energy routes (traditional,
//!   sandwiched, direct U - TS) and the minimality search.
//! - [`process`]: isotherms with the excess/housekeeping heat split,
//!   entropy-matched adiabats, and [`process::run_carnot_cycle`].
//! - [`channel`]: Kraus channels, thermal-state-preserving constructions,
//!   DPI checks, and the near-equilibrium qubit Clausius experiment.
//! - [`verify`]: the deterministic invariant suite used by `selftest` and
//!   the acceptance tests.
//!
//! ## Quick start
//!
//! ```
//! use renyi_thermo::{solve_thermal_state, HermitianOperator, RenyiOrder};
//!
//! let h = HermitianOperator::from_diagonal(&[0.0, 1.0]);
//! let alpha = RenyiOrder::new(2.0)?;
//! let th = solve_thermal_state(&h, 1.1, alpha)?;
//! assert!((th.entropy() - th.partition_function().ln()).abs() < 1e-9);
//! # Ok::<(), renyi_thermo::Error>(())
//! ```
//!
//! ## Examples
//!
//! One runnable example per capability:
//!
//! ```bash
//! cargo run --example thermal_state            # solve thermal states, beta = dS/dU
//! cargo run --example entropies                # S_alpha, U_alpha, both relative entropies
//! cargo run --example free_energy_minimality   # form invariance + minimality search
//! cargo run --example carnot_cycle             # four strokes, efficiency = 1 - Tc/Th
//! cargo run --example first_law                # residual halving on isotherms
//! cargo run --example dpi_batch                # monotonicity under seeded channels
//! cargo run --example clausius_sweep           # per-α Clausius sweep, CSV output
//! cargo run --example selftest                 # the full invariant suite
//! ```
//!
//! The `renyi-thermo` binary exposes the same experiments as subcommands
//! (`thermal`, `entropy`, `carnot`, `clausius`, `dpi`, `selftest`).

pub mod channel;
pub mod cli;
pub mod error;
pub mod free_energy;
pub mod measures;
pub mod operator;
pub mod process;
pub mod sample;
pub mod thermal;
pub mod verify;

pub use channel::{
    apply_channel, build_measure_prepare_fixing, clausius_sweep, dpi_check,
    random_thermal_fixing_channel, Channel, ClausiusRecord, DpiCheck,
};
pub use error::{Error, Result};
pub use free_energy::{
    free_energy_report, minimality_certificate, FreeEnergyReport, MinimalityCertificate,
};
pub use measures::{
    delta_terms, renyi_entropy, renyi_internal_energy, sandwiched_relative_entropy,
    trad_relative_entropy, DeltaTerms, EntropyVariant, RenyiOrder,
};
pub use operator::{
    expectation, spectral_power, trace_distance, DensityMatrix, HermitianOperator, PowerPolicy,
};
pub use process::{
    isotherm_decomposition, run_carnot_cycle, solve_adiabat, step_first_law, CycleReport,
    HamiltonianFamily, StateFamily, StrokeReport,
};
pub use thermal::{
    beta_consistency_check, qubit_beta_closed_form, solve_thermal_state, ThermalState,
};
