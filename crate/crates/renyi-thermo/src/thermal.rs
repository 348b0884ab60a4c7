//! Self-consistent Rényi thermal states.
//!
//! The thermal state at order α and inverse temperature β is
//!
//! ```text
//! ρ_Tα = A^{1/(1-α)} / Z_α,   A = 1 - (1-α) β (H - U_Tα),
//! ```
//!
//! where U_Tα = Tr[ρ_Tα^α H]/Tr ρ_Tα^α must be solved self-consistently.
//! In the eigenbasis of H (eigenvalues ε_i) this is a scalar fixed point
//!
//! ```text
//! U = Σ g_i(U)^α ε_i / Σ g_i(U)^α,   g_i(U) = max(f_i(U), 0)^{1/(1-α)},
//! f_i(U) = 1 - (1-α) β (ε_i - U),
//! ```
//!
//! solved by bisection on the spectral hull [ε_min, ε_max] (any
//! self-consistent U is a weighted mean of eigenvalues), with a damped
//! fixed-point fallback. For α < 1 positivity is enforced by the
//! Tsallis-style cutoff max(f, 0), flagged via `cutoff_applied`; for α > 1
//! the exponent is negative, so every f_i must stay strictly positive and
//! the bisection is confined to the feasible part of the hull.
//!
//! β is an input; the differential relation β = ∂S_α/∂U_Tα is
//! circular as stated and is instead verified a posteriori by
//! [`beta_consistency_check`].

use crate::error::{Error, Result};
use crate::measures::{renyi_entropy, RenyiOrder};
use crate::operator::{trace_product, CMatrix, DensityMatrix, HermitianOperator, C64};

/// Bisection residual tolerance, relative to the spectral spread of H.
const RESIDUAL_TOL: f64 = 1e-12;
/// Points in the root scan for multiple self-consistent solutions.
const SCAN_POINTS: usize = 64;
/// Damped fixed-point fallback budget.
const MAX_FALLBACK_ITER: usize = 10_000;
const FALLBACK_DAMPING: f64 = 0.5;

/// A converged solution of the self-consistency problem.
///
/// At α = 1 the family degenerates to the Gibbs state; `partition_function`
/// is then Tr e^{-β(H - U)} (the α→1 limit of Z_α), which keeps the
/// identity S_α(ρ_Tα) = ln Z_α valid across the whole family. At β = 0 the
/// state is maximally mixed and the free energy is -∞.
#[derive(Debug, Clone)]
pub struct ThermalState {
    state: DensityMatrix,
    hamiltonian: HermitianOperator,
    alpha: RenyiOrder,
    beta: f64,
    z: f64,
    u: f64,
    s: f64,
    f: f64,
    a_op: HermitianOperator,
    cutoff_applied: bool,
}

impl ThermalState {
    pub fn state(&self) -> &DensityMatrix {
        &self.state
    }
    pub fn hamiltonian(&self) -> &HermitianOperator {
        &self.hamiltonian
    }
    pub fn alpha(&self) -> RenyiOrder {
        self.alpha
    }
    pub fn beta(&self) -> f64 {
        self.beta
    }
    /// Z_α.
    pub fn partition_function(&self) -> f64 {
        self.z
    }
    /// U_Tα.
    pub fn internal_energy(&self) -> f64 {
        self.u
    }
    /// S_α(ρ_Tα).
    pub fn entropy(&self) -> f64 {
        self.s
    }
    /// F_Tα = U_Tα - S_α/β.
    pub fn free_energy(&self) -> f64 {
        self.f
    }
    /// A = 1 - (1-α) β (H - U_Tα).
    pub fn deformation_operator(&self) -> &HermitianOperator {
        &self.a_op
    }
    /// True when the positivity cutoff zeroed at least one eigenvalue
    /// (possible only for α < 1).
    pub fn cutoff_applied(&self) -> bool {
        self.cutoff_applied
    }
    pub fn temperature(&self) -> f64 {
        1.0 / self.beta
    }

    /// Rebuild the state from the stored A operator: A₊^{1/(1-α)} / Z
    /// (e^{-β(H-U)} / Z at α = 1). Used to verify the defining equation.
    pub fn reconstruct_state(&self) -> CMatrix {
        let a = self.alpha.value();
        let spec = self.a_op.spectrum();
        if self.alpha.is_von_neumann() {
            let hspec = self.hamiltonian.spectrum();
            return hspec
                .apply(|e| (-self.beta * (e - self.u)).exp())
                .scale(1.0 / self.z);
        }
        spec.apply(|v| v.max(0.0).powf(1.0 / (1.0 - a)))
            .scale(1.0 / self.z)
    }
}

/// Solve the self-consistent thermal state for (H, β, α).
///
/// β = 0 short-circuits to the maximally mixed state, α = 1 to the Gibbs
/// state. A degenerate Hamiltonian gives the maximally mixed state at any β.
pub fn solve_thermal_state(
    hamiltonian: &HermitianOperator,
    beta: f64,
    alpha: RenyiOrder,
) -> Result<ThermalState> {
    if !beta.is_finite() || beta < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "beta must be a finite nonnegative real, got {beta}"
        )));
    }
    let d = hamiltonian.dim();
    let hspec = hamiltonian.spectrum();
    let eps = &hspec.values;
    let spread = eps[d - 1] - eps[0];
    let scale = spread.max(eps[d - 1].abs()).max(1.0);

    // degenerate spectrum or infinite temperature: A = 1
    if beta == 0.0 || spread <= 1e-14 * scale {
        let u = eps.iter().sum::<f64>() / d as f64;
        return Ok(assemble(
            hamiltonian,
            &hspec.vectors,
            &vec![1.0; d],
            beta,
            alpha,
            u,
            false,
        ));
    }

    if alpha.is_von_neumann() {
        // Gibbs state, shifted for overflow safety
        let weights: Vec<f64> = eps.iter().map(|&e| (-beta * (e - eps[0])).exp()).collect();
        let zs: f64 = weights.iter().sum();
        let probs: Vec<f64> = weights.iter().map(|w| w / zs).collect();
        let u: f64 = probs.iter().zip(eps).map(|(p, e)| p * e).sum();
        // g_i normalized so that Σ g_i = Tr e^{-β(H-U)}
        let g: Vec<f64> = eps.iter().map(|&e| (-beta * (e - u)).exp()).collect();
        return Ok(assemble(
            hamiltonian,
            &hspec.vectors,
            &g,
            beta,
            alpha,
            u,
            false,
        ));
    }

    let a = alpha.value();
    let problem = ScalarProblem {
        eps,
        beta,
        alpha: a,
    };

    let lo = eps[0];
    let hi = if a > 1.0 {
        // keep all f_i > 0: U < ε_min + 1/((α-1)β)
        let cap = eps[0] + (1.0 - 1e-13) / ((a - 1.0) * beta);
        cap.min(eps[d - 1])
    } else {
        eps[d - 1]
    };
    if hi <= lo {
        return Err(Error::InfeasibleConstraint);
    }

    let tol = RESIDUAL_TOL * spread;
    let mut roots: Vec<f64> = Vec::new();
    let mut prev_u = lo;
    let mut prev_r = problem.residual(lo);
    if prev_r.abs() <= tol {
        roots.push(lo);
    }
    for k in 1..=SCAN_POINTS {
        let u = lo + (hi - lo) * k as f64 / SCAN_POINTS as f64;
        let r = problem.residual(u);
        if r.abs() <= tol {
            push_root(&mut roots, u, spread);
        } else if prev_r > tol && r < -tol {
            if let Some(root) = bisect(&problem, prev_u, u, tol) {
                push_root(&mut roots, root, spread);
            }
        } else if prev_r < -tol && r > tol {
            if let Some(root) = bisect(&problem, u, prev_u, tol) {
                push_root(&mut roots, root, spread);
            }
        }
        prev_u = u;
        prev_r = r;
    }

    let u_star = match roots.len() {
        1 => roots[0],
        0 => damped_fixed_point(&problem, 0.5 * (lo + hi), lo, hi, tol)?,
        _ => return Err(Error::MultipleRoots { roots }),
    };

    let g = problem.weights(u_star);
    let cutoff = a < 1.0 && problem.f_values(u_star).iter().any(|&f| f <= 0.0);
    Ok(assemble(
        hamiltonian,
        &hspec.vectors,
        &g,
        beta,
        alpha,
        u_star,
        cutoff,
    ))
}

struct ScalarProblem<'a> {
    eps: &'a [f64],
    beta: f64,
    alpha: f64,
}

impl ScalarProblem<'_> {
    fn f_values(&self, u: f64) -> Vec<f64> {
        self.eps
            .iter()
            .map(|&e| 1.0 - (1.0 - self.alpha) * self.beta * (e - u))
            .collect()
    }

    /// Thermal eigenvalues up to normalization: g_i = max(f_i, 0)^{1/(1-α)}.
    fn weights(&self, u: f64) -> Vec<f64> {
        let ex = 1.0 / (1.0 - self.alpha);
        self.f_values(u)
            .iter()
            .map(|&f| if f > 0.0 { f.powf(ex) } else { 0.0 })
            .collect()
    }

    /// Σ g^α ε / Σ g^α - U.
    fn residual(&self, u: f64) -> f64 {
        let g = self.weights(u);
        let mut num = 0.0;
        let mut den = 0.0;
        for (gi, &e) in g.iter().zip(self.eps) {
            let w = gi.powf(self.alpha);
            num += w * e;
            den += w;
        }
        num / den - u
    }
}

fn push_root(roots: &mut Vec<f64>, root: f64, spread: f64) {
    if roots.iter().all(|r| (r - root).abs() > 1e-6 * spread) {
        roots.push(root);
    }
}

/// Bisection with residual positive at `pos` and negative at `neg`.
fn bisect(problem: &ScalarProblem, pos: f64, neg: f64, tol: f64) -> Option<f64> {
    let mut pos = pos;
    let mut neg = neg;
    for _ in 0..200 {
        let mid = 0.5 * (pos + neg);
        let r = problem.residual(mid);
        if r.abs() <= tol {
            return Some(mid);
        }
        if r > 0.0 {
            pos = mid;
        } else {
            neg = mid;
        }
        if (pos - neg).abs() <= f64::EPSILON * (pos.abs() + neg.abs()).max(1.0) {
            return Some(mid);
        }
    }
    None
}

fn damped_fixed_point(
    problem: &ScalarProblem,
    start: f64,
    lo: f64,
    hi: f64,
    tol: f64,
) -> Result<f64> {
    let mut u = start;
    let mut residual = f64::INFINITY;
    for _ in 0..MAX_FALLBACK_ITER {
        residual = problem.residual(u);
        if residual.abs() <= tol {
            return Ok(u);
        }
        u = (u + FALLBACK_DAMPING * residual).clamp(lo, hi);
    }
    Err(Error::NoConvergence {
        iterations: MAX_FALLBACK_ITER,
        residual,
    })
}

/// Build the ThermalState from unnormalized thermal eigenvalues `g` in the
/// eigenbasis `vectors` of H.
fn assemble(
    hamiltonian: &HermitianOperator,
    vectors: &CMatrix,
    g: &[f64],
    beta: f64,
    alpha: RenyiOrder,
    u: f64,
    cutoff_applied: bool,
) -> ThermalState {
    let d = g.len();
    let z: f64 = g.iter().sum();
    let probs: Vec<f64> = g.iter().map(|&gi| gi / z).collect();

    let mut scaled = vectors.clone();
    for j in 0..d {
        let s = C64::new(probs[j], 0.0);
        for i in 0..d {
            scaled[(i, j)] *= s;
        }
    }
    let entries = &scaled * vectors.adjoint();
    let state = DensityMatrix::new(HermitianOperator::hermitized(entries))
        .expect("thermal eigenvalues are a probability vector");

    let s = renyi_entropy(&state, alpha);
    let f = if beta > 0.0 {
        u - s / beta
    } else {
        f64::NEG_INFINITY
    };
    let a_op = HermitianOperator::identity(d)
        .linear_combination(
            1.0,
            &hamiltonian.shift(-u),
            -(1.0 - alpha.value()) * beta,
        )
        .expect("same dimension");
    ThermalState {
        state,
        hamiltonian: hamiltonian.clone(),
        alpha,
        beta,
        z,
        u,
        s,
        f,
        a_op,
        cutoff_applied,
    }
}

/// Closed-form inverse temperature of the qubit thermal state
/// ρ_Tα = diag(p0, 1-p0) for H = E1 |1⟩⟨1|:
///
/// β = (p0^α + p1^α)(p0^{1-α} - p1^{1-α}) / (E1 (1-α)),
///
/// with the α→1 limit ln(p0/p1)/E1.
pub fn qubit_beta_closed_form(p0: f64, e1: f64, alpha: RenyiOrder) -> f64 {
    assert!(p0 > 0.0 && p0 < 1.0, "p0 must lie in (0,1), got {p0}");
    assert!(e1 > 0.0, "E1 must be positive, got {e1}");
    let p1 = 1.0 - p0;
    if alpha.is_von_neumann() {
        return (p0 / p1).ln() / e1;
    }
    let a = alpha.value();
    (p0.powf(a) + p1.powf(a)) * (p0.powf(1.0 - a) - p1.powf(1.0 - a)) / (e1 * (1.0 - a))
}

/// Central finite-difference estimate of ∂S_α/∂U_Tα at the state's β,
/// computed from solves at β(1±δ). For a converged family this reproduces
/// β itself (relative 1e-4 at δ = 1e-5).
pub fn beta_consistency_check(thermal: &ThermalState, delta: f64) -> Result<f64> {
    let beta = thermal.beta();
    let plus = solve_thermal_state(
        thermal.hamiltonian(),
        beta * (1.0 + delta),
        thermal.alpha(),
    )?;
    let minus = solve_thermal_state(
        thermal.hamiltonian(),
        beta * (1.0 - delta),
        thermal.alpha(),
    )?;
    let du = plus.internal_energy() - minus.internal_energy();
    if du == 0.0 {
        return Err(Error::InvalidParameter(
            "internal energy is flat across the beta perturbation".into(),
        ));
    }
    Ok((plus.entropy() - minus.entropy()) / du)
}

/// Tr[ρ^α (H - U)] / Tr ρ^α for a candidate thermal state; zero at a
/// converged solution.
pub fn self_consistency_defect(thermal: &ThermalState) -> f64 {
    let a = thermal.alpha().value();
    let spec = thermal.state().spectrum();
    let powered = spec.apply(|v| v.max(0.0).powf(a));
    let norm: f64 = spec.values.iter().map(|&v| v.max(0.0).powf(a)).sum();
    let shifted = thermal.hamiltonian().shift(-thermal.internal_energy());
    trace_product(&powered, shifted.entries()) / norm
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::trace_distance;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn order(a: f64) -> RenyiOrder {
        RenyiOrder::new(a).unwrap()
    }

    fn qubit_h() -> HermitianOperator {
        HermitianOperator::from_diagonal(&[0.0, 1.0])
    }

    #[test]
    fn infinite_temperature_is_maximally_mixed() {
        let h = HermitianOperator::from_diagonal(&[0.0, 1.0, 3.0]);
        let th = solve_thermal_state(&h, 0.0, order(2.0)).unwrap();
        assert_abs_diff_eq!(th.partition_function(), 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(th.internal_energy(), 4.0 / 3.0, epsilon = 1e-12);
        let mixed = DensityMatrix::maximally_mixed(3);
        assert!(trace_distance(th.state(), &mixed) < 1e-12);
    }

    #[test]
    fn qubit_alpha2_matches_closed_form_beta() {
        // beta derived by inverting the closed form at p0 = 0.7
        let beta = qubit_beta_closed_form(0.7, 1.0, order(2.0));
        assert_abs_diff_eq!(beta, 1.1047619047619048, epsilon = 1e-12);
        let th = solve_thermal_state(&qubit_h(), beta, order(2.0)).unwrap();
        let target = DensityMatrix::from_diagonal_probs(&[0.7, 0.3]).unwrap();
        assert!(trace_distance(th.state(), &target) < 1e-6);
        assert!(!th.cutoff_applied());
    }

    #[test]
    fn near_one_matches_gibbs() {
        // Gibbs closed form with beta = ln(7/3)
        let beta = (7.0f64 / 3.0).ln();
        assert_abs_diff_eq!(beta, 0.8472978603872034, epsilon = 1e-15);
        let th = solve_thermal_state(&qubit_h(), beta, order(0.999)).unwrap();
        let gibbs = DensityMatrix::from_diagonal_probs(&[0.7, 0.3]).unwrap();
        assert!(trace_distance(th.state(), &gibbs) < 1e-3);
    }

    #[test]
    fn alpha_one_is_gibbs() {
        let beta = (7.0f64 / 3.0).ln();
        let th = solve_thermal_state(&qubit_h(), beta, RenyiOrder::von_neumann()).unwrap();
        let gibbs = DensityMatrix::from_diagonal_probs(&[0.7, 0.3]).unwrap();
        assert!(trace_distance(th.state(), &gibbs) < 1e-12);
        // ln Z equals the entropy for the shifted partition function
        assert_abs_diff_eq!(th.entropy(), th.partition_function().ln(), epsilon = 1e-12);
    }

    #[test]
    fn entropy_equals_log_partition_function() {
        let h = HermitianOperator::from_diagonal(&[0.0, 0.35, 0.8, 1.0]);
        for a in [0.3, 0.5, 0.9, 1.1, 2.0, 3.0] {
            for beta in [0.1, 0.4, 0.9] {
                let th = solve_thermal_state(&h, beta, order(a)).unwrap();
                assert_abs_diff_eq!(
                    th.entropy(),
                    th.partition_function().ln(),
                    epsilon = 1e-9
                );
                assert!(self_consistency_defect(&th).abs() <= 1e-10 * 1.0);
                // no cutoff means A stays strictly positive
                if !th.cutoff_applied() {
                    assert!(th.deformation_operator().spectrum().min() > 0.0);
                }
            }
        }
    }

    #[test]
    fn state_reconstructs_from_deformation_operator() {
        let h = HermitianOperator::from_diagonal(&[0.0, 0.4, 1.0]);
        for a in [0.5, 2.0, 1.0] {
            let th = solve_thermal_state(&h, 0.7, order(a)).unwrap();
            let rebuilt = th.reconstruct_state();
            let diff = (th.state().entries() - &rebuilt)
                .iter()
                .map(|z| z.norm())
                .fold(0.0f64, f64::max);
            assert!(diff < 1e-10, "alpha={a}: reconstruction off by {diff:.3e}");
        }
    }

    #[test]
    fn degenerate_hamiltonian_maximally_mixed() {
        let h = HermitianOperator::from_diagonal(&[0.5, 0.5, 0.5]);
        let th = solve_thermal_state(&h, 2.0, order(2.0)).unwrap();
        let mixed = DensityMatrix::maximally_mixed(3);
        assert!(trace_distance(th.state(), &mixed) < 1e-12);
        assert_abs_diff_eq!(th.internal_energy(), 0.5, epsilon = 1e-12);
    }

    #[test]
    fn cutoff_engages_for_small_alpha_large_beta() {
        let h = HermitianOperator::from_diagonal(&[0.0, 10.0]);
        let th = solve_thermal_state(&h, 2.0, order(0.5)).unwrap();
        assert!(th.cutoff_applied());
        // excited level is cut off entirely
        let eigs = th.state().eigenvalues();
        assert_abs_diff_eq!(eigs[1], 1.0, epsilon = 1e-12);
    }

    #[test]
    fn qubit_beta_closed_form_limits() {
        assert_abs_diff_eq!(
            qubit_beta_closed_form(0.5, 1.0, order(2.0)),
            0.0,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            qubit_beta_closed_form(0.5, 3.7, order(0.3)),
            0.0,
            epsilon = 1e-12
        );
        // α→1 limit equals the Gibbs inverse temperature
        let near_one = qubit_beta_closed_form(0.7, 1.0, order(1.0 + 1e-9));
        assert_abs_diff_eq!(near_one, (7.0f64 / 3.0).ln(), epsilon = 1e-6);
        assert_abs_diff_eq!(
            qubit_beta_closed_form(0.7, 1.0, RenyiOrder::von_neumann()),
            0.8472978603872034,
            epsilon = 1e-14
        );
    }

    #[test]
    fn beta_consistency_finite_difference() {
        // finite-difference oracle on the solver
        let beta = qubit_beta_closed_form(0.7, 1.0, order(2.0));
        let th = solve_thermal_state(&qubit_h(), beta, order(2.0)).unwrap();
        let est = beta_consistency_check(&th, 1e-5).unwrap();
        assert_relative_eq!(est, beta, max_relative = 1e-4);

        // flat-spectrum limit: dS/dU stays equal to beta as beta -> 0. The
        // entropy change scales like beta^2, so the perturbation must stay
        // large enough for the difference to be resolvable in f64.
        let h = HermitianOperator::from_diagonal(&[0.0, 0.3, 1.0]);
        let th = solve_thermal_state(&h, 1e-3, order(2.0)).unwrap();
        let est = beta_consistency_check(&th, 1e-3).unwrap();
        assert_relative_eq!(est, 1e-3, max_relative = 1e-4);

        // von Neumann case
        let th = solve_thermal_state(&h, 0.8, RenyiOrder::von_neumann()).unwrap();
        let est = beta_consistency_check(&th, 1e-5).unwrap();
        assert_relative_eq!(est, 0.8, max_relative = 1e-4);
    }

    #[test]
    fn free_energy_relation() {
        let th = solve_thermal_state(&qubit_h(), 1.3, order(0.6)).unwrap();
        assert_abs_diff_eq!(
            th.free_energy(),
            th.internal_energy() - th.entropy() / th.beta(),
            epsilon = 1e-12
        );
    }
}
