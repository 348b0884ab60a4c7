//! Validated Hermitian operator calculus.
//!
//! Everything downstream (entropies, thermal states, channels) runs on two
//! types: [`HermitianOperator`] for observables/Hamiltonians and
//! [`DensityMatrix`] for states. Both are immutable after construction, so
//! they are safe to share across threads.
//!
//! Matrix functions (`ρ^α`, `σ^{(1-α)/2α}`, …) all route through
//! [`spectral_power`], which makes the zero/negative-eigenvalue policy
//! explicit via [`PowerPolicy`] instead of silently regularizing.

use nalgebra::{Complex, DMatrix, DVector};

use crate::error::{Error, Result};

pub type C64 = Complex<f64>;
pub type CMatrix = DMatrix<C64>;

/// Absolute tolerance for hermiticity (max |M - M†| entry).
pub const HERMITICITY_TOL: f64 = 1e-12;
/// Eigenvalues below `-PSD_TOL` fail the PSD check; in `[-PSD_TOL, 0)` they
/// are clamped to zero on density-matrix construction.
pub const PSD_TOL: f64 = 1e-12;
/// Absolute tolerance on |Tr ρ - 1|.
pub const TRACE_TOL: f64 = 1e-12;
/// Eigenvalues at or below this count as outside the support for negative
/// matrix powers.
pub const SUPPORT_TOL: f64 = 1e-12;

/// How matrix powers treat eigenvalues at or below [`SUPPORT_TOL`].
///
/// `StrictSupport` is the default everywhere: a negative power of a singular
/// operator is a genuine support violation (an infinite relative entropy)
/// and must surface as an error. The other two modes are opted into per
/// call.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PowerPolicy {
    /// Error with `SupportViolation` when a nonpositive power meets a zero
    /// eigenvalue.
    StrictSupport,
    /// Extend by zero on the kernel (Moore–Penrose style): f(0) = 0 for any
    /// exponent.
    ZeroExtend,
    /// Replace every eigenvalue below ε by ε before powering.
    Floor(f64),
}

impl PowerPolicy {
    pub fn validate(&self) -> Result<()> {
        if let PowerPolicy::Floor(eps) = self {
            if !eps.is_finite() || *eps <= 0.0 {
                return Err(Error::InvalidParameter(format!(
                    "floor epsilon must be positive, got {eps}"
                )));
            }
        }
        Ok(())
    }
}

/// A validated d×d Hermitian operator.
///
/// Construction checks hermiticity to [`HERMITICITY_TOL`] and then stores
/// the exactly hermitized matrix (M + M†)/2, so spectral routines can rely
/// on self-adjointness.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOperator {
    dim: usize,
    entries: CMatrix,
}

impl HermitianOperator {
    pub fn new(entries: CMatrix) -> Result<Self> {
        let (rows, cols) = entries.shape();
        if rows != cols || rows == 0 {
            return Err(Error::NotSquare { rows, cols });
        }
        let mut deviation = 0.0f64;
        for i in 0..rows {
            for j in 0..rows {
                let d = (entries[(i, j)] - entries[(j, i)].conj()).norm();
                if d > deviation {
                    deviation = d;
                }
            }
        }
        if deviation > HERMITICITY_TOL {
            return Err(Error::NotHermitian { deviation });
        }
        let adj = entries.adjoint();
        let entries = (entries + adj).scale(0.5);
        Ok(Self { dim: rows, entries })
    }

    /// Trusted constructor for matrices Hermitian by construction
    /// (e.g. V f(Λ) V†, real-linear combinations of Hermitian operators).
    pub(crate) fn hermitized(entries: CMatrix) -> Self {
        let dim = entries.nrows();
        let adj = entries.adjoint();
        let entries = (entries + adj).scale(0.5);
        Self { dim, entries }
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        let d = diag.len();
        let entries = CMatrix::from_fn(d, d, |i, j| {
            if i == j {
                C64::new(diag[i], 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        });
        Self { dim: d, entries }
    }

    pub fn from_real(entries: &[Vec<f64>]) -> Result<Self> {
        let rows = entries.len();
        let m = CMatrix::from_fn(rows, entries.first().map_or(0, Vec::len), |i, j| {
            C64::new(entries[i][j], 0.0)
        });
        Self::new(m)
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            dim,
            entries: CMatrix::identity(dim, dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }

    pub fn trace(&self) -> f64 {
        self.entries.trace().re
    }

    /// Real linear combination a·self + b·other.
    pub fn linear_combination(&self, a: f64, other: &Self, b: f64) -> Result<Self> {
        check_dims(self.dim, other.dim)?;
        Ok(Self::hermitized(
            self.entries.scale(a) + other.entries.scale(b),
        ))
    }

    /// Shift by a real multiple of the identity: self + c·I.
    pub fn shift(&self, c: f64) -> Self {
        let mut entries = self.entries.clone();
        for i in 0..self.dim {
            entries[(i, i)] += C64::new(c, 0.0);
        }
        Self {
            dim: self.dim,
            entries,
        }
    }

    /// Eigendecomposition with eigenvalues sorted ascending.
    pub fn spectrum(&self) -> Spectrum {
        Spectrum::of(&self.entries)
    }

    /// Largest minus smallest eigenvalue.
    pub fn spectral_spread(&self) -> f64 {
        let s = self.spectrum();
        s.values[s.values.len() - 1] - s.values[0]
    }

    pub fn max_abs_entry_diff(&self, other: &Self) -> f64 {
        let mut m = 0.0f64;
        for i in 0..self.dim {
            for j in 0..self.dim {
                m = m.max((self.entries[(i, j)] - other.entries[(i, j)]).norm());
            }
        }
        m
    }
}

/// Sorted eigendecomposition of a Hermitian matrix: M = V Λ V†.
#[derive(Debug, Clone)]
pub struct Spectrum {
    /// Eigenvalues, ascending.
    pub values: Vec<f64>,
    /// Column i of `vectors` is the eigenvector of `values[i]`.
    pub vectors: CMatrix,
}

impl Spectrum {
    pub fn of(m: &CMatrix) -> Self {
        let eig = m.clone().symmetric_eigen();
        let n = eig.eigenvalues.len();
        let mut vectors = eig.eigenvectors;
        // nalgebra's QL iteration can leave eigenpair residuals around
        // 1e-12 · ‖M‖; polish with cyclic Jacobi on V†MV so downstream
        // 1e-12 contracts hold with margin
        let mut core = vectors.adjoint() * m * &vectors;
        jacobi_polish(&mut core, &mut vectors);
        let raw: Vec<f64> = (0..n).map(|i| core[(i, i)].re).collect();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| raw[a].total_cmp(&raw[b]));
        let values: Vec<f64> = order.iter().map(|&k| raw[k]).collect();
        let vectors = CMatrix::from_fn(n, n, |i, j| vectors[(i, order[j])]);
        Self { values, vectors }
    }

    /// V f(Λ) V†, re-hermitized to kill roundoff asymmetry.
    pub fn apply(&self, f: impl Fn(f64) -> f64) -> CMatrix {
        let n = self.values.len();
        let fvals = DVector::from_iterator(n, self.values.iter().map(|&v| f(v)));
        let mut scaled = self.vectors.clone();
        for j in 0..n {
            let s = C64::new(fvals[j], 0.0);
            for i in 0..n {
                scaled[(i, j)] *= s;
            }
        }
        let m = scaled * self.vectors.adjoint();
        let adj = m.adjoint();
        (m + adj).scale(0.5)
    }

    pub fn min(&self) -> f64 {
        self.values[0]
    }

    pub fn max(&self) -> f64 {
        self.values[self.values.len() - 1]
    }
}

fn check_dims(expected: usize, actual: usize) -> Result<()> {
    if expected != actual {
        return Err(Error::DimensionMismatch { expected, actual });
    }
    Ok(())
}

/// Cyclic complex Jacobi sweeps on the nearly diagonal Hermitian `a`,
/// accumulating the rotations into `v`. Stops when every off-diagonal entry
/// is below 32·ε relative to the largest entry (at most 6 sweeps).
fn jacobi_polish(a: &mut CMatrix, v: &mut CMatrix) {
    let n = a.nrows();
    if n < 2 {
        return;
    }
    let mut scale = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            scale = scale.max(a[(i, j)].norm());
        }
    }
    if scale == 0.0 {
        return;
    }
    let tol = 32.0 * f64::EPSILON * scale;
    for _ in 0..6 {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off = off.max(a[(p, q)].norm());
            }
        }
        if off <= tol {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let r = a[(p, q)].norm();
                if r <= tol {
                    continue;
                }
                let phase = a[(p, q)] / C64::new(r, 0.0);
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let tau = (aqq - app) / (2.0 * r);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let cs = C64::new(c, 0.0);
                let s_ph = phase * s; // s e^{iφ}
                let s_ph_c = s_ph.conj();

                // A ← J†AJ with J_pp = c, J_pq = s e^{iφ}, J_qp = -s e^{-iφ}
                for i in 0..n {
                    let x = a[(i, p)];
                    let y = a[(i, q)];
                    a[(i, p)] = cs * x - s_ph_c * y;
                    a[(i, q)] = s_ph * x + cs * y;
                }
                for j in 0..n {
                    let x = a[(p, j)];
                    let y = a[(q, j)];
                    a[(p, j)] = cs * x - s_ph * y;
                    a[(q, j)] = s_ph_c * x + cs * y;
                }
                a[(p, q)] = C64::new(0.0, 0.0);
                a[(q, p)] = C64::new(0.0, 0.0);
                a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
                a[(q, q)] = C64::new(a[(q, q)].re, 0.0);

                for i in 0..n {
                    let x = v[(i, p)];
                    let y = v[(i, q)];
                    v[(i, p)] = cs * x - s_ph_c * y;
                    v[(i, q)] = s_ph * x + cs * y;
                }
            }
        }
    }
}

/// Matrix power M^p through the eigendecomposition M = V Λ V†.
///
/// Zero and negative eigenvalues are handled per `policy`; see
/// [`PowerPolicy`]. Eigenvalues in `[-PSD_TOL, 0)` are treated as zero.
/// Genuinely negative eigenvalues are legal only for integer-valued
/// exponents (λ^p is exact there, so M^1 = M and integer powers of
/// indefinite operators work); any other p errors with `NegativeBase`,
/// except under `Floor`, which lifts everything below ε to ε.
pub fn spectral_power(m: &HermitianOperator, p: f64, policy: PowerPolicy) -> Result<HermitianOperator> {
    policy.validate()?;
    let spec = m.spectrum();
    let min = spec.min();
    let integer_exponent = p.fract() == 0.0;
    match policy {
        PowerPolicy::Floor(eps) => {
            return Ok(HermitianOperator::hermitized(
                spec.apply(|v| v.max(eps).powf(p)),
            ));
        }
        PowerPolicy::StrictSupport => {
            if min < -PSD_TOL && !integer_exponent {
                return Err(Error::NegativeBase { eigenvalue: min });
            }
            if p <= 0.0 && spec.values.iter().any(|v| v.abs() <= SUPPORT_TOL) {
                return Err(Error::SupportViolation(format!(
                    "power {p} of an operator with a zero eigenvalue"
                )));
            }
        }
        PowerPolicy::ZeroExtend => {
            if min < -PSD_TOL && !integer_exponent {
                return Err(Error::NegativeBase { eigenvalue: min });
            }
        }
    }
    let keep_negatives = min < -PSD_TOL;
    Ok(HermitianOperator::hermitized(spec.apply(|v| {
        let v = if keep_negatives { v } else { v.max(0.0) };
        if v.abs() <= SUPPORT_TOL && p <= 0.0 {
            0.0
        } else {
            v.powf(p)
        }
    })))
}

/// Tr(ρ O). The imaginary residue (≤ 1e-12 for Hermitian inputs) is
/// discarded.
pub fn expectation(rho: &DensityMatrix, obs: &HermitianOperator) -> Result<f64> {
    check_dims(rho.dim(), obs.dim())?;
    Ok(trace_product(rho.entries(), obs.entries()))
}

/// Re Tr(A B) without forming the product matrix.
pub(crate) fn trace_product(a: &CMatrix, b: &CMatrix) -> f64 {
    let n = a.nrows();
    let mut t = C64::new(0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            t += a[(i, j)] * b[(j, i)];
        }
    }
    t.re
}

/// A validated density matrix: Hermitian, PSD, unit trace.
///
/// Eigenvalues in `[-PSD_TOL, 0)` (channel outputs routinely produce these)
/// are clamped to zero and the state renormalized.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    op: HermitianOperator,
}

impl DensityMatrix {
    pub fn new(op: HermitianOperator) -> Result<Self> {
        let trace = op.trace();
        if (trace - 1.0).abs() > TRACE_TOL {
            return Err(Error::TraceNotOne { trace });
        }
        let spec = op.spectrum();
        let min = spec.min();
        if min < -PSD_TOL {
            return Err(Error::NotPsd {
                min_eigenvalue: min,
            });
        }
        if min < 0.0 {
            let clamped: Vec<f64> = spec.values.iter().map(|&v| v.max(0.0)).collect();
            let norm: f64 = clamped.iter().sum();
            let rebuilt = rebuild_from_eigs(&spec, &clamped, norm);
            return Ok(Self {
                op: HermitianOperator::hermitized(rebuilt),
            });
        }
        Ok(Self { op })
    }

    pub fn from_matrix(entries: CMatrix) -> Result<Self> {
        Self::new(HermitianOperator::new(entries)?)
    }

    pub fn from_diagonal_probs(probs: &[f64]) -> Result<Self> {
        Self::new(HermitianOperator::from_diagonal(probs))
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        let p = 1.0 / dim as f64;
        Self {
            op: HermitianOperator::from_diagonal(&vec![p; dim]),
        }
    }

    /// |k⟩⟨k| in the computational basis.
    pub fn basis_projector(dim: usize, k: usize) -> Self {
        let mut probs = vec![0.0; dim];
        probs[k] = 1.0;
        Self {
            op: HermitianOperator::from_diagonal(&probs),
        }
    }

    pub fn dim(&self) -> usize {
        self.op.dim()
    }

    pub fn op(&self) -> &HermitianOperator {
        &self.op
    }

    pub fn entries(&self) -> &CMatrix {
        self.op.entries()
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        self.op.spectrum().values
    }

    pub fn spectrum(&self) -> Spectrum {
        self.op.spectrum()
    }

    /// ρ^p under `policy`.
    pub fn power(&self, p: f64, policy: PowerPolicy) -> Result<HermitianOperator> {
        spectral_power(&self.op, p, policy)
    }
}

fn rebuild_from_eigs(spec: &Spectrum, eigs: &[f64], norm: f64) -> CMatrix {
    let n = eigs.len();
    let mut scaled = spec.vectors.clone();
    for j in 0..n {
        let s = C64::new(eigs[j] / norm, 0.0);
        for i in 0..n {
            scaled[(i, j)] *= s;
        }
    }
    scaled * spec.vectors.adjoint()
}

/// Trace distance ½‖ρ - σ‖₁.
pub fn trace_distance(a: &DensityMatrix, b: &DensityMatrix) -> f64 {
    let diff = a.entries() - b.entries();
    let spec = Spectrum::of(&diff);
    0.5 * spec.values.iter().map(|v| v.abs()).sum::<f64>()
}

/// Parse a plain-text matrix: one row per line, comma-separated entries of
/// the form `re+imj` / `re-imj`; pure-real entries are accepted.
pub fn parse_matrix_text(text: &str) -> Result<CMatrix> {
    let mut rows: Vec<Vec<C64>> = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let row: Result<Vec<C64>> = line.split(',').map(parse_complex_entry).collect();
        rows.push(row?);
    }
    let n = rows.len();
    if n == 0 {
        return Err(Error::Parse("empty matrix".into()));
    }
    if rows.iter().any(|r| r.len() != n) {
        return Err(Error::Parse(format!(
            "expected {n} entries per row for a {n}x{n} matrix"
        )));
    }
    Ok(CMatrix::from_fn(n, n, |i, j| rows[i][j]))
}

fn parse_complex_entry(s: &str) -> Result<C64> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty matrix entry".into()));
    }
    if let Some(body) = s.strip_suffix(['j', 'i']) {
        // split at the sign of the imaginary part: the last +/- that is not
        // an exponent sign and not the leading sign
        let bytes = body.as_bytes();
        let mut split = None;
        for k in (1..bytes.len()).rev() {
            let c = bytes[k] as char;
            if (c == '+' || c == '-') && !matches!(bytes[k - 1] as char, 'e' | 'E') {
                split = Some(k);
                break;
            }
        }
        let k = split.ok_or_else(|| Error::Parse(format!("malformed complex entry '{s}'")))?;
        let re: f64 = body[..k]
            .parse()
            .map_err(|_| Error::Parse(format!("bad real part in '{s}'")))?;
        let im_str = &body[k..];
        let im: f64 = if im_str == "+" {
            1.0
        } else if im_str == "-" {
            -1.0
        } else {
            im_str
                .parse()
                .map_err(|_| Error::Parse(format!("bad imaginary part in '{s}'")))?
        };
        Ok(C64::new(re, im))
    } else {
        let re: f64 = s
            .parse()
            .map_err(|_| Error::Parse(format!("bad real entry '{s}'")))?;
        Ok(C64::new(re, 0.0))
    }
}

/// Format a matrix in the text form accepted by [`parse_matrix_text`].
pub fn format_matrix_text(m: &CMatrix) -> String {
    let mut out = String::new();
    for i in 0..m.nrows() {
        let row: Vec<String> = (0..m.ncols())
            .map(|j| {
                let z = m[(i, j)];
                if z.im >= 0.0 {
                    format!("{}+{}j", z.re, z.im)
                } else {
                    format!("{}-{}j", z.re, -z.im)
                }
            })
            .collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}
