//! CPTP channels in Kraus form, thermal-state-preserving constructions,
//! data-processing-inequality checks, and the near-equilibrium Clausius
//! experiment on a qubit.
//!
//! The DPI ranges exercised here: the traditional Rényi relative entropy is
//! monotone under CPTP maps for α ∈ [0, 2]; the sandwiched one for
//! α ∈ [1/2, ∞).

use rand::Rng;

use crate::error::{Error, Result};
use crate::measures::{
    relative_entropy, renyi_entropy, renyi_internal_energy, EntropyVariant, RenyiOrder,
};
use crate::operator::{
    trace_product, CMatrix, DensityMatrix, HermitianOperator, PowerPolicy, Spectrum, C64,
};
use crate::sample::{hs_random_density, seeded_rng};
use crate::thermal::qubit_beta_closed_form;

/// Completeness tolerance on Σ K†K = 1 and on fixed-point certificates.
pub const CHANNEL_TOL: f64 = 1e-10;

/// A CPTP map in Kraus form, optionally certified to fix a given state.
#[derive(Debug, Clone)]
pub struct Channel {
    kraus: Vec<CMatrix>,
    fixes: Option<DensityMatrix>,
}

impl Channel {
    /// Validate Σ K†K = 1 to [`CHANNEL_TOL`].
    pub fn new(kraus: Vec<CMatrix>) -> Result<Self> {
        if kraus.is_empty() {
            return Err(Error::InvalidParameter("empty Kraus set".into()));
        }
        let d = kraus[0].nrows();
        let mut sum = CMatrix::zeros(d, d);
        for k in &kraus {
            if k.nrows() != d || k.ncols() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    actual: k.nrows(),
                });
            }
            sum += k.adjoint() * k;
        }
        let mut dev = 0.0f64;
        for i in 0..d {
            for j in 0..d {
                let target = if i == j {
                    C64::new(1.0, 0.0)
                } else {
                    C64::new(0.0, 0.0)
                };
                dev = dev.max((sum[(i, j)] - target).norm());
            }
        }
        if dev > CHANNEL_TOL {
            return Err(Error::InvalidParameter(format!(
                "Kraus set is not trace preserving (deviation {dev:.3e})"
            )));
        }
        Ok(Self { kraus, fixes: None })
    }

    /// Validate and certify that the channel fixes `state` in trace norm.
    pub fn with_fixed_point(kraus: Vec<CMatrix>, state: DensityMatrix) -> Result<Self> {
        let ch = Self::new(kraus)?;
        let defect = ch.fixed_point_defect(&state);
        if defect > CHANNEL_TOL {
            return Err(Error::FixedPointMismatch { deviation: defect });
        }
        Ok(Self {
            kraus: ch.kraus,
            fixes: Some(state),
        })
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            kraus: vec![CMatrix::identity(dim, dim)],
            fixes: None,
        }
    }

    /// Υ[X] = Tr(X)·1/d via the Kraus set {|i⟩⟨j|/√d}.
    pub fn depolarizing(dim: usize) -> Self {
        let scale = 1.0 / (dim as f64).sqrt();
        let mut kraus = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let mut k = CMatrix::zeros(dim, dim);
                k[(i, j)] = C64::new(scale, 0.0);
                kraus.push(k);
            }
        }
        Self { kraus, fixes: None }
    }

    /// Dephasing in the given orthonormal basis (columns of `basis`).
    pub fn dephasing(basis: &CMatrix) -> Self {
        let d = basis.nrows();
        let kraus = (0..d)
            .map(|i| {
                let col = basis.column(i);
                CMatrix::from_fn(d, d, |r, c| col[r] * col[c].conj())
            })
            .collect();
        Self { kraus, fixes: None }
    }

    pub fn dim(&self) -> usize {
        self.kraus[0].nrows()
    }

    pub fn kraus(&self) -> &[CMatrix] {
        &self.kraus
    }

    pub fn fixes(&self) -> Option<&DensityMatrix> {
        self.fixes.as_ref()
    }

    /// Σ K m K† without revalidation.
    pub fn apply_raw(&self, m: &CMatrix) -> CMatrix {
        let d = self.dim();
        let mut out = CMatrix::zeros(d, d);
        for k in &self.kraus {
            out += k * m * k.adjoint();
        }
        out
    }

    /// Trace-norm distance ‖Υ[ρ] - ρ‖₁.
    pub fn fixed_point_defect(&self, rho: &DensityMatrix) -> f64 {
        let diff = self.apply_raw(rho.entries()) - rho.entries();
        Spectrum::of(&diff).values.iter().map(|v| v.abs()).sum()
    }

    /// Convex mixture of channels: Kraus operators scaled by √wᵢ.
    /// Weights are normalized to sum to one.
    pub fn mixture(parts: &[(f64, Channel)]) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidParameter("empty channel mixture".into()));
        }
        let total: f64 = parts.iter().map(|(w, _)| *w).sum();
        if !total.is_finite() || total <= 0.0 {
            return Err(Error::InvalidParameter(
                "mixture weights must have positive sum".into(),
            ));
        }
        let mut kraus = Vec::new();
        for (w, ch) in parts {
            if *w < 0.0 {
                return Err(Error::InvalidParameter("negative mixture weight".into()));
            }
            let s = (w / total).sqrt();
            for k in ch.kraus() {
                kraus.push(k.scale(s));
            }
        }
        Self::new(kraus)
    }
}

/// Apply a channel and revalidate the output as a density matrix.
pub fn apply_channel(channel: &Channel, rho: &DensityMatrix) -> Result<DensityMatrix> {
    if channel.dim() != rho.dim() {
        return Err(Error::DimensionMismatch {
            expected: channel.dim(),
            actual: rho.dim(),
        });
    }
    let out = channel.apply_raw(rho.entries());
    DensityMatrix::from_matrix(out)
}

/// Measure-and-prepare channel Υ[X] = Σᵢ ⟨i|X|i⟩ σᵢ in the eigenbasis of
/// `rho_t` (eigenvalues descending), certified to fix `rho_t`.
///
/// `prepared[i]` is the state prepared on outcome i; the fixed point
/// requires Σ pᵢ σᵢ = ρ_T, checked to [`CHANNEL_TOL`].
pub fn build_measure_prepare_fixing(
    rho_t: &DensityMatrix,
    prepared: &[DensityMatrix],
) -> Result<Channel> {
    let d = rho_t.dim();
    if prepared.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            actual: prepared.len(),
        });
    }
    let spec = rho_t.spectrum();
    // descending eigenvalues: p0 >= p1 >= ...
    let order: Vec<usize> = (0..d).rev().collect();

    // fixed-point precondition: sum p_i sigma_i = rho_t
    let mut recon = CMatrix::zeros(d, d);
    for (slot, &k) in order.iter().enumerate() {
        recon += prepared[slot].entries().scale(spec.values[k].max(0.0));
    }
    let dev = Spectrum::of(&(recon - rho_t.entries()))
        .values
        .iter()
        .map(|v| v.abs())
        .sum::<f64>();
    if dev > CHANNEL_TOL {
        return Err(Error::FixedPointMismatch { deviation: dev });
    }

    let mut kraus = Vec::new();
    for (slot, &k) in order.iter().enumerate() {
        let meas = spec.vectors.column(k);
        let prep_spec = prepared[slot].spectrum();
        for m in 0..d {
            let lam = prep_spec.values[m].max(0.0);
            if lam <= 1e-15 {
                continue;
            }
            let vec = prep_spec.vectors.column(m);
            let s = lam.sqrt();
            let op = CMatrix::from_fn(d, d, |r, c| vec[r] * meas[c].conj() * C64::new(s, 0.0));
            kraus.push(op);
        }
    }
    Channel::with_fixed_point(kraus, rho_t.clone())
}

/// The qubit instance of the construction: given an arbitrary state η, prepare
/// τ = (ρ_T - p₁η)/p₀ on the p₀ outcome and η on the p₁ outcome. Fails with
/// `NotPsd` when τ is not a state.
pub fn measure_prepare_from_eta(rho_t: &DensityMatrix, eta: &DensityMatrix) -> Result<Channel> {
    if rho_t.dim() != 2 || eta.dim() != 2 {
        return Err(Error::InvalidParameter(
            "eta construction is the qubit instance; use build_measure_prepare_fixing for d > 2"
                .into(),
        ));
    }
    let eigs = rho_t.eigenvalues();
    let (p1, p0) = (eigs[0], eigs[1]); // ascending order
    if p0 <= 0.0 {
        return Err(Error::InvalidParameter("rho_t must have p0 > 0".into()));
    }
    let tau_m = (rho_t.entries() - eta.entries().scale(p1)).scale(1.0 / p0);
    let tau = DensityMatrix::from_matrix(tau_m)?;
    build_measure_prepare_fixing(rho_t, &[tau, eta.clone()])
}

/// Seeded random thermal-state-preserving channel: a convex mixture of
/// dephasing in the ρ_T eigenbasis, a measure-prepare channel with a
/// randomly perturbed admissible prepared set, and the identity. Retries
/// internally until admissible; deterministic given the seed.
pub fn random_thermal_fixing_channel(rho_t: &DensityMatrix, seed: u64) -> Channel {
    let mut rng = seeded_rng(seed);
    let d = rho_t.dim();
    let spec = rho_t.spectrum();
    let dephase = Channel::dephasing(&spec.vectors);

    let mp = random_measure_prepare(rho_t, &mut rng);

    let w_deph: f64 = rng.gen_range(0.05..1.0);
    let w_mp: f64 = rng.gen_range(0.05..1.0);
    let w_id: f64 = rng.gen_range(0.05..1.0);

    let mut parts = vec![(w_deph, dephase), (w_id, Channel::identity(d))];
    if let Some(mp) = mp {
        parts.push((w_mp, mp));
    }
    let mixture = Channel::mixture(&parts).expect("components share the dimension");
    Channel::with_fixed_point(mixture.kraus().to_vec(), rho_t.clone())
        .expect("every component fixes rho_t")
}

/// Random admissible measure-prepare deformation: take the eigenprojector
/// set and swap a random eigenvalue pair (i, j) for (τ, η) with
/// τ = (pᵢPᵢ + pⱼPⱼ - pⱼη)/pᵢ, shrinking η toward the admissible center
/// until τ is PSD.
fn random_measure_prepare(rho_t: &DensityMatrix, rng: &mut impl Rng) -> Option<Channel> {
    let d = rho_t.dim();
    let spec = rho_t.spectrum();
    let order: Vec<usize> = (0..d).rev().collect();
    let probs: Vec<f64> = order.iter().map(|&k| spec.values[k].max(0.0)).collect();
    let positive: Vec<usize> = (0..d).filter(|&i| probs[i] > 1e-6).collect();
    if positive.len() < 2 {
        return None;
    }
    let i = positive[rng.gen_range(0..positive.len())];
    let j = loop {
        let j = positive[rng.gen_range(0..positive.len())];
        if j != i {
            break j;
        }
    };

    let projector = |slot: usize| -> CMatrix {
        let col = spec.vectors.column(order[slot]);
        CMatrix::from_fn(d, d, |r, c| col[r] * col[c].conj())
    };

    let base = (projector(i).scale(probs[i]) + projector(j).scale(probs[j]))
        .scale(1.0 / (probs[i] + probs[j]));
    let eta_rand = hs_random_density(d, rng);
    let mut t = 1.0;
    for _ in 0..60 {
        let eta_m = base.scale(1.0 - t) + eta_rand.entries().scale(t);
        let tau_m = (projector(i).scale(probs[i]) + projector(j).scale(probs[j])
            - eta_m.scale(probs[j]))
        .scale(1.0 / probs[i]);
        let eta = DensityMatrix::from_matrix(eta_m.clone());
        let tau = DensityMatrix::from_matrix(tau_m);
        if let (Ok(eta), Ok(tau)) = (eta, tau) {
            let mut prepared: Vec<DensityMatrix> = (0..d)
                .map(|slot| DensityMatrix::from_matrix(projector(slot)).expect("projector"))
                .collect();
            prepared[i] = tau;
            prepared[j] = eta;
            if let Ok(ch) = build_measure_prepare_fixing(rho_t, &prepared) {
                return Some(ch);
            }
        }
        t *= 0.5;
    }
    None
}

/// Result of one data-processing-inequality check.
#[derive(Debug, Clone, Copy)]
pub struct DpiCheck {
    pub before: f64,
    pub after: f64,
    pub monotone: bool,
}

/// D(ρ‖σ) vs D(Υρ‖Υσ) for the chosen relative-entropy variant.
pub fn dpi_check(
    channel: &Channel,
    rho: &DensityMatrix,
    sigma: &DensityMatrix,
    alpha: RenyiOrder,
    variant: EntropyVariant,
) -> Result<DpiCheck> {
    let before = relative_entropy(rho, sigma, alpha, variant, PowerPolicy::StrictSupport)?;
    let rho_out = apply_channel(channel, rho)?;
    let sigma_out = apply_channel(channel, sigma)?;
    let after = relative_entropy(&rho_out, &sigma_out, alpha, variant, PowerPolicy::StrictSupport)?;
    Ok(DpiCheck {
        before,
        after,
        monotone: after <= before + 1e-10,
    })
}

/// One row of the qubit Clausius experiment: first-order variations under a
/// thermal-state-preserving map, per Rényi order.
///
/// Entries that could not be evaluated (support violations) are NaN and
/// serialize as "nan".
#[derive(Debug, Clone, Copy)]
pub struct ClausiusRecord {
    pub alpha: f64,
    /// δS_α(ρ_N).
    pub d_s: f64,
    /// β·δQ₁, δQ₁ = Tr[dρ_N^α (H - U_Nα)]/Tr ρ_N^α.
    pub beta_dq1: f64,
    /// β·δQ₂, δQ₂ = Tr[dρ_N^α (H - U_Tα)]/Tr ρ_N^α.
    pub beta_dq2: f64,
    /// β·δU_Nα (the total-energy-change heat expression).
    pub beta_du: f64,
    /// δD_α(ρ_N‖ρ_Tα).
    pub d_d_trad: f64,
    /// δD̃_α(ρ_N‖ρ_Tα).
    pub d_d_sand: f64,
    /// δΔ̃'_α extracted from δD̃ = -δS + β δU + δΔ̃'.
    pub d_delta_tilde_prime: f64,
}

/// The reference qubit experiment: ρ_T = diag(p0, 1-p0) with β from the
/// closed form, ρ_N the δq-tilted state with coherences, varied by the
/// measure-prepare map built from η.
pub fn clausius_sweep(
    p0: f64,
    e1: f64,
    dq: f64,
    eta: &DensityMatrix,
    alpha_grid: &[f64],
) -> Result<Vec<ClausiusRecord>> {
    let p1 = 1.0 - p0;
    let rho_t = DensityMatrix::from_diagonal_probs(&[p0, p1])?;
    let rho_n = tilted_coherent_state(p0, dq)?;
    let channel = measure_prepare_from_eta(&rho_t, eta)?;
    let rho_after = apply_channel(&channel, &rho_n)?;
    let h = HermitianOperator::from_diagonal(&[0.0, e1]);

    let mut records = Vec::with_capacity(alpha_grid.len());
    for &a in alpha_grid {
        let alpha = RenyiOrder::new(a)?;
        let beta = qubit_beta_closed_form(p0, e1, alpha);
        records.push(clausius_record(
            alpha, beta, &h, &rho_t, &rho_n, &rho_after,
        ));
    }
    Ok(records)
}

/// ρ_N = (p0+δq)|0⟩⟨0| + (p1-δq)|1⟩⟨1| + δq(|0⟩⟨1| + |1⟩⟨0|).
pub fn tilted_coherent_state(p0: f64, dq: f64) -> Result<DensityMatrix> {
    let p1 = 1.0 - p0;
    DensityMatrix::from_matrix(CMatrix::from_fn(2, 2, |i, j| {
        let v = match (i, j) {
            (0, 0) => p0 + dq,
            (1, 1) => p1 - dq,
            _ => dq,
        };
        C64::new(v, 0.0)
    }))
}

fn clausius_record(
    alpha: RenyiOrder,
    beta: f64,
    h: &HermitianOperator,
    rho_t: &DensityMatrix,
    rho_n: &DensityMatrix,
    rho_after: &DensityMatrix,
) -> ClausiusRecord {
    let a = alpha.value();
    let power = |rho: &DensityMatrix| -> CMatrix {
        rho.spectrum().apply(|v| v.max(0.0).powf(a))
    };
    let pow_before = power(rho_n);
    let pow_after = power(rho_after);
    let d_pow = &pow_after - &pow_before;
    let tr_before: f64 = rho_n.eigenvalues().iter().map(|&v| v.max(0.0).powf(a)).sum();

    let u_n = renyi_internal_energy(rho_n, h, alpha).expect("dims");
    let u_t = renyi_internal_energy(rho_t, h, alpha).expect("dims");
    let u_after = renyi_internal_energy(rho_after, h, alpha).expect("dims");

    let dq1 = trace_product(&d_pow, h.shift(-u_n).entries()) / tr_before;
    let dq2 = trace_product(&d_pow, h.shift(-u_t).entries()) / tr_before;
    let d_s = renyi_entropy(rho_after, alpha) - renyi_entropy(rho_n, alpha);
    let d_u = u_after - u_n;

    let rel = |r: &DensityMatrix, variant: EntropyVariant| -> f64 {
        relative_entropy(r, rho_t, alpha, variant, PowerPolicy::StrictSupport)
            .unwrap_or(f64::NAN)
    };
    let d_d_trad = rel(rho_after, EntropyVariant::Traditional) - rel(rho_n, EntropyVariant::Traditional);
    let d_d_sand = rel(rho_after, EntropyVariant::Sandwiched) - rel(rho_n, EntropyVariant::Sandwiched);
    let d_delta_tilde_prime = d_d_sand + d_s - beta * d_u;

    ClausiusRecord {
        alpha: a,
        d_s,
        beta_dq1: beta * dq1,
        beta_dq2: beta * dq2,
        beta_du: beta * d_u,
        d_d_trad,
        d_d_sand,
        d_delta_tilde_prime,
    }
}

/// CSV serialization of a Clausius sweep; NaN entries print as "nan".
pub fn clausius_csv(records: &[ClausiusRecord]) -> String {
    let mut out =
        String::from("alpha,dS,beta_dQ1,beta_dQ2,beta_dU,dD_trad,dD_sand,dDeltaTildePrime\n");
    for r in records {
        let cells = [
            r.alpha,
            r.d_s,
            r.beta_dq1,
            r.beta_dq2,
            r.beta_du,
            r.d_d_trad,
            r.d_d_sand,
            r.d_delta_tilde_prime,
        ];
        let row: Vec<String> = cells.iter().map(|v| format_cell(*v)).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

pub(crate) fn format_cell(v: f64) -> String {
    if v.is_nan() {
        "nan".to_string()
    } else {
        format!("{v}")
    }
}

/// First-order terms of the Clausius identity -δS_α + β δQ_α = 0 for the
/// analytic tilted-qubit pair (closed forms; E1 cancels within β·δQ).
#[derive(Debug, Clone, Copy)]
pub struct QubitFirstOrder {
    /// The -δS_α term.
    pub neg_entropy_term: f64,
    /// The +β·δQ_α term; exactly -neg_entropy_term.
    pub beta_heat_term: f64,
}

/// Closed-form first-order variation for the tilted-qubit construction:
/// -δS_α = (α δq/(1-α)) (p0^{α-1} - p1^{α-1})/(p0^α + p1^α), β δQ_α = δS_α.
pub fn qubit_first_order_terms(p0: f64, dq: f64, alpha: RenyiOrder) -> QubitFirstOrder {
    assert!(p0 > 0.0 && p0 < 1.0, "p0 must lie in (0,1)");
    let p1 = 1.0 - p0;
    let neg_entropy_term = if alpha.is_von_neumann() {
        -dq * (p0 / p1).ln()
    } else {
        let a = alpha.value();
        a * dq / (1.0 - a) * (p0.powf(a - 1.0) - p1.powf(a - 1.0)) / (p0.powf(a) + p1.powf(a))
    };
    QubitFirstOrder {
        neg_entropy_term,
        beta_heat_term: -neg_entropy_term,
    }
}

/// The analytic nonequilibrium pair: ρ_N built on the tilted basis
/// |e0⟩ ∝ (1+δq, δq), |e1⟩ ∝ (-δq, 1+δq) with weights (p0+2δq, p1-2δq),
/// and its image (p0+δq, p1-δq) under the variation.
pub fn tilted_qubit_pair(p0: f64, dq: f64) -> Result<(DensityMatrix, DensityMatrix)> {
    let p1 = 1.0 - p0;
    let norm = ((1.0 + dq) * (1.0 + dq) + dq * dq).sqrt();
    let e0 = [(1.0 + dq) / norm, dq / norm];
    let e1 = [-dq / norm, (1.0 + dq) / norm];
    let build = |w0: f64, w1: f64| -> Result<DensityMatrix> {
        DensityMatrix::from_matrix(CMatrix::from_fn(2, 2, |i, j| {
            C64::new(w0 * e0[i] * e0[j] + w1 * e1[i] * e1[j], 0.0)
        }))
    };
    Ok((
        build(p0 + 2.0 * dq, p1 - 2.0 * dq)?,
        build(p0 + dq, p1 - dq)?,
    ))
}
