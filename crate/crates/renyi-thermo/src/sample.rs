//! Seeded random operators and states.
//!
//! Mixed states are drawn from the Hilbert–Schmidt measure: ρ = GG†/Tr(GG†)
//! with G a complex Ginibre matrix. Every sampler takes an explicit RNG so
//! results are reproducible given a seed; parallel use must partition the
//! seed space.

use nalgebra::{Complex, DMatrix};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::operator::{CMatrix, DensityMatrix, HermitianOperator, C64};

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

/// Complex Ginibre matrix: independent standard-normal real and imaginary
/// parts.
pub fn ginibre(dim: usize, rng: &mut impl Rng) -> CMatrix {
    DMatrix::from_fn(dim, dim, |_, _| {
        Complex::new(StandardNormal.sample(rng), StandardNormal.sample(rng))
    })
}

/// Hilbert–Schmidt random mixed state: GG†/Tr(GG†).
pub fn hs_random_density(dim: usize, rng: &mut impl Rng) -> DensityMatrix {
    loop {
        let g = ginibre(dim, rng);
        let m = &g * g.adjoint();
        let tr = m.trace().re;
        if tr > 1e-12 {
            let m = m.scale(1.0 / tr);
            if let Ok(rho) = DensityMatrix::from_matrix(m) {
                return rho;
            }
        }
    }
}

/// Random Hermitian operator (G + G†)/2, entries O(1).
pub fn random_hermitian(dim: usize, rng: &mut impl Rng) -> HermitianOperator {
    let g = ginibre(dim, rng);
    let adj = g.adjoint();
    HermitianOperator::new((g + adj).scale(0.5)).expect("hermitian by construction")
}

/// Random Hermitian operator with spectrum affinely mapped onto [0, 1].
/// Convenient as a Hamiltonian with controlled spectral spread.
pub fn unit_spectrum_hamiltonian(dim: usize, rng: &mut impl Rng) -> HermitianOperator {
    let h = random_hermitian(dim, rng);
    let spec = h.spectrum();
    let (lo, hi) = (spec.min(), spec.max());
    if hi - lo < 1e-9 {
        return HermitianOperator::identity(dim);
    }
    HermitianOperator::hermitized(spec.apply(|v| (v - lo) / (hi - lo)))
}

/// Random pure state projector |ψ⟩⟨ψ| with Haar-distributed |ψ⟩.
pub fn random_pure_state(dim: usize, rng: &mut impl Rng) -> DensityMatrix {
    loop {
        let v: Vec<C64> = (0..dim)
            .map(|_| Complex::new(StandardNormal.sample(rng), StandardNormal.sample(rng)))
            .collect();
        let norm_sq: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if norm_sq > 1e-12 {
            let m = CMatrix::from_fn(dim, dim, |i, j| v[i] * v[j].conj() / norm_sq);
            if let Ok(rho) = DensityMatrix::from_matrix(m) {
                return rho;
            }
        }
    }
}
