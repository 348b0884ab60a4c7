//! Scalar information/thermodynamic functionals.
//!
//! - Rényi entropy S_α(ρ) = ln(Tr ρ^α)/(1-α), von Neumann at α = 1.
//! - Rényi internal energy U_α = Tr[ρ^α H]/Tr ρ^α (escort-weighted energy).
//! - Traditional relative entropy D_α(ρ‖σ) = ln Tr[ρ^α σ^{1-α}]/(α-1).
//! - Sandwiched relative entropy
//!   D̃_α(ρ‖σ) = ln Tr[(σ^{(1-α)/2α} ρ σ^{(1-α)/2α})^α]/(α-1).
//! - The correction terms Δ_α, Δ'_α (traditional) and Δ̃_α, Δ̃'_α
//!   (sandwiched) that close the entropy identities against a thermal state.
//!
//! α = 1 is handled by explicit von Neumann dispatch, not limiting formulas,
//! so the α→1 continuity tests have an independent reference. Natural logs
//! throughout; k_B = 1.

use crate::error::{Error, Result};
use crate::operator::{
    trace_product, DensityMatrix, HermitianOperator, PowerPolicy, Spectrum, SUPPORT_TOL,
};
use crate::thermal::ThermalState;

/// Rényi order α > 0. `is_von_neumann` is true exactly at α = 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RenyiOrder(f64);

impl RenyiOrder {
    pub fn new(alpha: f64) -> Result<Self> {
        if !alpha.is_finite() || alpha <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "Renyi order must be a positive real, got {alpha}"
            )));
        }
        Ok(Self(alpha))
    }

    pub const fn von_neumann() -> Self {
        Self(1.0)
    }

    pub fn value(&self) -> f64 {
        self.0
    }

    pub fn is_von_neumann(&self) -> bool {
        self.0 == 1.0
    }
}

impl std::fmt::Display for RenyiOrder {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Which relative-entropy family a derived quantity belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EntropyVariant {
    Traditional,
    Sandwiched,
}

/// S_α(ρ). At α = 1: -Tr ρ ln ρ with 0·ln 0 := 0.
pub fn renyi_entropy(rho: &DensityMatrix, alpha: RenyiOrder) -> f64 {
    let eigs = rho.eigenvalues();
    if alpha.is_von_neumann() {
        return von_neumann_entropy_from_eigs(&eigs);
    }
    let a = alpha.value();
    let t: f64 = eigs.iter().map(|&v| v.max(0.0).powf(a)).sum();
    t.ln() / (1.0 - a)
}

pub(crate) fn von_neumann_entropy_from_eigs(eigs: &[f64]) -> f64 {
    -eigs
        .iter()
        .filter(|&&v| v > 0.0)
        .map(|&v| v * v.ln())
        .sum::<f64>()
}

/// U_α(ρ, H) = Tr[ρ^α H]/Tr ρ^α. At α = 1 this is Tr(ρH).
pub fn renyi_internal_energy(
    rho: &DensityMatrix,
    hamiltonian: &HermitianOperator,
    alpha: RenyiOrder,
) -> Result<f64> {
    if rho.dim() != hamiltonian.dim() {
        return Err(Error::DimensionMismatch {
            expected: rho.dim(),
            actual: hamiltonian.dim(),
        });
    }
    if alpha.is_von_neumann() {
        return Ok(trace_product(rho.entries(), hamiltonian.entries()));
    }
    let a = alpha.value();
    let spec = rho.spectrum();
    let powered = spec.apply(|v| v.max(0.0).powf(a));
    let norm: f64 = spec.values.iter().map(|&v| v.max(0.0).powf(a)).sum();
    Ok(trace_product(&powered, hamiltonian.entries()) / norm)
}

/// Traditional Rényi relative entropy D_α(ρ‖σ).
///
/// For α > 1 the `policy` governs σ^{1-α} on a rank-deficient σ; the strict
/// default reports the (infinite) divergence as `SupportViolation`. A zero
/// trace Tr[ρ^α σ^{1-α}] is also flagged as `SupportViolation` (disjoint
/// supports).
pub fn trad_relative_entropy(
    rho: &DensityMatrix,
    sigma: &DensityMatrix,
    alpha: RenyiOrder,
    policy: PowerPolicy,
) -> Result<f64> {
    check_pair(rho, sigma)?;
    if alpha.is_von_neumann() {
        return von_neumann_relative_entropy(rho, sigma);
    }
    let a = alpha.value();
    let rho_a = rho.power(a, PowerPolicy::ZeroExtend)?;
    let sigma_pow = sigma.power(1.0 - a, policy)?;
    let t = trace_product(rho_a.entries(), sigma_pow.entries());
    if t <= 0.0 {
        return Err(Error::SupportViolation(format!(
            "Tr[rho^a sigma^(1-a)] = {t:.3e} is not positive"
        )));
    }
    Ok(t.ln() / (a - 1.0))
}

/// Sandwiched Rényi relative entropy D̃_α(ρ‖σ).
pub fn sandwiched_relative_entropy(
    rho: &DensityMatrix,
    sigma: &DensityMatrix,
    alpha: RenyiOrder,
    policy: PowerPolicy,
) -> Result<f64> {
    check_pair(rho, sigma)?;
    if alpha.is_von_neumann() {
        return von_neumann_relative_entropy(rho, sigma);
    }
    let a = alpha.value();
    let outer = sigma.power((1.0 - a) / (2.0 * a), policy)?;
    let inner = outer.entries() * rho.entries() * outer.entries();
    let inner = HermitianOperator::hermitized(inner);
    let spec = inner.spectrum();
    let t: f64 = spec.values.iter().map(|&v| v.max(0.0).powf(a)).sum();
    if t <= 0.0 {
        return Err(Error::SupportViolation(format!(
            "Tr[(sigma^e rho sigma^e)^a] = {t:.3e} is not positive"
        )));
    }
    Ok(t.ln() / (a - 1.0))
}

/// S(ρ‖σ) = Tr ρ(ln ρ - ln σ) with the support convention: +∞ (signalled as
/// `SupportViolation`) when supp ρ ⊄ supp σ.
pub fn von_neumann_relative_entropy(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    check_pair(rho, sigma)?;
    let rspec = rho.spectrum();
    let sspec = sigma.spectrum();
    let n = rspec.values.len();
    // overlap[i][j] = |<v_i|w_j>|^2
    let cross = rspec.vectors.adjoint() * &sspec.vectors;
    let mut s = rspec
        .values
        .iter()
        .filter(|&&r| r > 0.0)
        .map(|&r| r * r.ln())
        .sum::<f64>();
    for j in 0..n {
        let sj = sspec.values[j].max(0.0);
        // weight of rho on the j-th eigenvector of sigma
        let mut w = 0.0;
        for i in 0..n {
            w += rspec.values[i].max(0.0) * cross[(i, j)].norm_sqr();
        }
        if sj <= SUPPORT_TOL {
            if w > 1e-12 {
                return Err(Error::SupportViolation(format!(
                    "rho has weight {w:.3e} outside supp(sigma)"
                )));
            }
            continue;
        }
        s -= w * sj.ln();
    }
    Ok(s)
}

fn check_pair(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<()> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch {
            expected: rho.dim(),
            actual: sigma.dim(),
        });
    }
    Ok(())
}

/// The Δ/Δ' correction pair closing the entropy identities
/// S_α(ρ_N) = S_α(ρ_Tα) - D_α(ρ_N‖ρ_Tα) + Δ_α (traditional) and the
/// analogous sandwiched identity with Δ̃_α.
#[derive(Debug, Clone, Copy)]
pub struct DeltaTerms {
    /// Δ_α or Δ̃_α.
    pub delta: f64,
    /// Δ'_α = β(U_Tα - U_Nα) + Δ_α (same relation for the sandwiched pair).
    pub delta_prime: f64,
    pub variant: EntropyVariant,
}

/// Compute Δ_α, Δ'_α (traditional) or Δ̃_α, Δ̃'_α (sandwiched) for a
/// nonequilibrium state against a converged thermal state.
///
/// Traditional requires the probabilistic-consistency cutoff condition
/// β(α-1)(U_Nα - U_Tα) > -1; a nonpositive log argument is reported as
/// `CutoffViolation`. Sandwiched uses A = 1 - (1-α)β(H - U_Tα); eigenvalues
/// of A zeroed by the thermal positivity cutoff stay zeroed here.
pub fn delta_terms(
    rho_n: &DensityMatrix,
    thermal: &ThermalState,
    variant: EntropyVariant,
) -> Result<DeltaTerms> {
    let alpha = thermal.alpha();
    let beta = thermal.beta();
    let u_n = renyi_internal_energy(rho_n, thermal.hamiltonian(), alpha)?;
    let u_t = thermal.internal_energy();
    let a = alpha.value();

    let delta = if alpha.is_von_neumann() {
        // limit of both variants: Δ_1 = β(U_N - U_T)
        beta * (u_n - u_t)
    } else {
        match variant {
            EntropyVariant::Traditional => {
                let arg = 1.0 - beta * (1.0 - a) * (u_n - u_t);
                if arg <= 0.0 {
                    return Err(Error::CutoffViolation { log_argument: arg });
                }
                arg.ln() / (a - 1.0)
            }
            EntropyVariant::Sandwiched => {
                let a_op = thermal.deformation_operator();
                let a_spec = a_op.spectrum();
                if a_spec.min() < -crate::operator::PSD_TOL && !thermal.cutoff_applied() {
                    return Err(Error::CutoffViolation {
                        log_argument: a_spec.min(),
                    });
                }
                let half = sandwich_half_power(&a_spec, a);
                let inner = &half * rho_n.entries() * &half;
                let inner = HermitianOperator::hermitized(inner);
                let num: f64 = inner
                    .spectrum()
                    .values
                    .iter()
                    .map(|&v| v.max(0.0).powf(a))
                    .sum();
                let den: f64 = rho_n
                    .eigenvalues()
                    .iter()
                    .map(|&v| v.max(0.0).powf(a))
                    .sum();
                let arg = num / den;
                if arg <= 0.0 {
                    return Err(Error::CutoffViolation { log_argument: arg });
                }
                arg.ln() / (a - 1.0)
            }
        }
    };
    let delta_prime = beta * (u_t - u_n) + delta;
    Ok(DeltaTerms {
        delta,
        delta_prime,
        variant,
    })
}

/// A^{1/2α} with the same positivity cutoff used to build the thermal state
/// (negative eigenvalues of A map to zero).
fn sandwich_half_power(a_spec: &Spectrum, alpha: f64) -> crate::operator::CMatrix {
    let p = 1.0 / (2.0 * alpha);
    a_spec.apply(|v| v.max(0.0).powf(p))
}

/// Convenience dispatch over [`trad_relative_entropy`] /
/// [`sandwiched_relative_entropy`].
pub fn relative_entropy(
    rho: &DensityMatrix,
    sigma: &DensityMatrix,
    alpha: RenyiOrder,
    variant: EntropyVariant,
    policy: PowerPolicy,
) -> Result<f64> {
    match variant {
        EntropyVariant::Traditional => trad_relative_entropy(rho, sigma, alpha, policy),
        EntropyVariant::Sandwiched => sandwiched_relative_entropy(rho, sigma, alpha, policy),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn order(a: f64) -> RenyiOrder {
        RenyiOrder::new(a).unwrap()
    }

    fn diag(p: &[f64]) -> DensityMatrix {
        DensityMatrix::from_diagonal_probs(p).unwrap()
    }

    #[test]
    fn order_rejects_nonpositive() {
        assert!(RenyiOrder::new(0.0).is_err());
        assert!(RenyiOrder::new(-2.0).is_err());
        assert!(RenyiOrder::new(f64::NAN).is_err());
        assert!(RenyiOrder::new(1.0).unwrap().is_von_neumann());
        assert!(!RenyiOrder::new(1.0 + 1e-4).unwrap().is_von_neumann());
    }

    #[test]
    fn entropy_maximally_mixed() {
        let rho = DensityMatrix::maximally_mixed(2);
        assert_abs_diff_eq!(
            renyi_entropy(&rho, order(2.0)),
            2.0f64.ln(),
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            renyi_entropy(&rho, RenyiOrder::von_neumann()),
            2.0f64.ln(),
            epsilon = 1e-12
        );
    }

    #[test]
    fn entropy_diag_state() {
        // scalar evaluation: -ln(0.49 + 0.09)
        let rho = diag(&[0.7, 0.3]);
        assert_abs_diff_eq!(
            renyi_entropy(&rho, order(2.0)),
            -(0.58f64.ln()),
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(renyi_entropy(&rho, order(2.0)), 0.544727, epsilon = 1e-6);
    }

    #[test]
    fn entropy_pure_state() {
        let rho = DensityMatrix::basis_projector(2, 0);
        assert_abs_diff_eq!(renyi_entropy(&rho, order(0.5)), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn internal_energy_values() {
        let h = HermitianOperator::from_diagonal(&[0.0, 1.0]);
        let mixed = DensityMatrix::maximally_mixed(2);
        assert_abs_diff_eq!(
            renyi_internal_energy(&mixed, &h, order(3.0)).unwrap(),
            0.5,
            epsilon = 1e-12
        );

        // scalar evaluation: 0.3^2 / (0.7^2 + 0.3^2)
        let rho = diag(&[0.7, 0.3]);
        assert_abs_diff_eq!(
            renyi_internal_energy(&rho, &h, order(2.0)).unwrap(),
            0.09 / 0.58,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            renyi_internal_energy(&rho, &h, order(2.0)).unwrap(),
            0.155172,
            epsilon = 1e-6
        );
        assert_abs_diff_eq!(
            renyi_internal_energy(&rho, &h, RenyiOrder::von_neumann()).unwrap(),
            0.3,
            epsilon = 1e-12
        );
    }

    #[test]
    fn trad_identical_states() {
        let rho = diag(&[0.6, 0.4]);
        let d = trad_relative_entropy(&rho, &rho, order(0.7), PowerPolicy::StrictSupport).unwrap();
        assert_abs_diff_eq!(d, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn trad_scalar_value() {
        // scalar evaluation: ln(0.25/0.7 + 0.25/0.3)
        let rho = diag(&[0.5, 0.5]);
        let sigma = diag(&[0.7, 0.3]);
        let expect = (0.25 / 0.7 + 0.25 / 0.3f64).ln();
        let d = trad_relative_entropy(&rho, &sigma, order(2.0), PowerPolicy::StrictSupport).unwrap();
        assert_abs_diff_eq!(d, expect, epsilon = 1e-12);
        assert_abs_diff_eq!(d, 0.174353, epsilon = 1e-6);
    }

    #[test]
    fn trad_disjoint_support() {
        let rho = DensityMatrix::basis_projector(2, 0);
        let sigma = DensityMatrix::basis_projector(2, 1);
        let err = trad_relative_entropy(&rho, &sigma, order(2.0), PowerPolicy::StrictSupport)
            .unwrap_err();
        assert!(matches!(err, Error::SupportViolation(_)));
    }

    #[test]
    fn sandwiched_identical_states() {
        let rho = diag(&[0.6, 0.4]);
        let d =
            sandwiched_relative_entropy(&rho, &rho, order(3.0), PowerPolicy::StrictSupport).unwrap();
        assert_abs_diff_eq!(d, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn sandwiched_equals_traditional_when_commuting() {
        let rho = diag(&[0.5, 0.5]);
        let sigma = diag(&[0.7, 0.3]);
        let a = order(2.0);
        let d1 = trad_relative_entropy(&rho, &sigma, a, PowerPolicy::StrictSupport).unwrap();
        let d2 = sandwiched_relative_entropy(&rho, &sigma, a, PowerPolicy::StrictSupport).unwrap();
        assert_abs_diff_eq!(d1, d2, epsilon = 1e-10);
        assert_abs_diff_eq!(d2, 0.174353, epsilon = 1e-6);
    }

    #[test]
    fn sandwiched_below_traditional_noncommuting() {
        // Araki–Lieb–Thirring ordering, checked by direct evaluation
        let rho = DensityMatrix::from_matrix(crate::operator::CMatrix::from_fn(2, 2, |i, j| {
            match (i, j) {
                (0, 0) => crate::operator::C64::new(0.62, 0.0),
                (1, 1) => crate::operator::C64::new(0.38, 0.0),
                _ => crate::operator::C64::new(0.15, 0.0),
            }
        }))
        .unwrap();
        let sigma = diag(&[0.8, 0.2]);
        let a = order(2.0);
        let d_trad = trad_relative_entropy(&rho, &sigma, a, PowerPolicy::StrictSupport).unwrap();
        let d_sand =
            sandwiched_relative_entropy(&rho, &sigma, a, PowerPolicy::StrictSupport).unwrap();
        assert!(d_sand <= d_trad + 1e-12, "{d_sand} > {d_trad}");
        assert!(d_sand >= 0.0);
    }

    #[test]
    fn von_neumann_relative_entropy_support() {
        let rho = DensityMatrix::basis_projector(2, 0);
        let sigma = diag(&[0.5, 0.5]);
        let d = von_neumann_relative_entropy(&rho, &sigma).unwrap();
        assert_abs_diff_eq!(d, 2.0f64.ln(), epsilon = 1e-12);
        let err = von_neumann_relative_entropy(&sigma, &rho).unwrap_err();
        assert!(matches!(err, Error::SupportViolation(_)));
    }

    #[test]
    fn delta_terms_vanish_at_equilibrium() {
        use crate::thermal::solve_thermal_state;
        let h = HermitianOperator::from_diagonal(&[0.0, 0.4, 1.0]);
        for a in [0.5, 2.0] {
            let th = solve_thermal_state(&h, 0.8, order(a)).unwrap();
            for variant in [EntropyVariant::Traditional, EntropyVariant::Sandwiched] {
                let dt = delta_terms(th.state(), &th, variant).unwrap();
                assert_abs_diff_eq!(dt.delta, 0.0, epsilon = 1e-10);
                assert_abs_diff_eq!(dt.delta_prime, 0.0, epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn delta_prime_vanishes_toward_alpha_one() {
        // Δ'_α → 0 as α → 1; Δ_α itself tends to β(U_N - U_T)
        use crate::thermal::solve_thermal_state;
        let h = HermitianOperator::from_diagonal(&[0.0, 1.0]);
        let rho_n = diag(&[0.55, 0.45]);
        for da in [-1e-4, 0.0, 1e-4] {
            let alpha = order(1.0 + da);
            let th = solve_thermal_state(&h, 0.9, alpha).unwrap();
            let u_n = renyi_internal_energy(&rho_n, &h, alpha).unwrap();
            let u_t = th.internal_energy();
            for variant in [EntropyVariant::Traditional, EntropyVariant::Sandwiched] {
                let dt = delta_terms(&rho_n, &th, variant).unwrap();
                assert!(dt.delta_prime.abs() < 1e-4, "delta' {}", dt.delta_prime);
                assert_abs_diff_eq!(dt.delta, 0.9 * (u_n - u_t), epsilon = 1e-3);
            }
        }
    }
}
