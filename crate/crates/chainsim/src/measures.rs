//! Reduced density matrices, Wootters concurrence, purity, and fidelity.

use nalgebra::{Matrix4, SymmetricEigen};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::state::{bit_position, StateVector};

const PHYSICAL_TOL: f64 = 1e-9;

/// 4x4 reduced density matrix of a spin pair (i, j), i < j, basis order
/// 00, 01, 10, 11 with spin i as the leading bit.
#[derive(Clone, Debug)]
pub struct TwoQubitDensity {
    entries: Matrix4<Complex64>,
}

impl TwoQubitDensity {
    /// Validates Hermiticity, unit trace, and positivity at 1e-9 before
    /// accepting the matrix. Violations are rejected, not repaired.
    pub fn from_matrix(entries: Matrix4<Complex64>) -> Result<Self> {
        let mut herm_dev: f64 = 0.0;
        for r in 0..4 {
            for c in 0..4 {
                herm_dev = herm_dev.max((entries[(r, c)] - entries[(c, r)].conj()).norm());
            }
        }
        if herm_dev > PHYSICAL_TOL {
            return Err(Error::NonPhysical(format!(
                "Hermiticity violated by {herm_dev:.3e}"
            )));
        }
        let trace = entries.trace();
        if (trace.re - 1.0).abs() > PHYSICAL_TOL || trace.im.abs() > PHYSICAL_TOL {
            return Err(Error::NonPhysical(format!("trace = {trace}")));
        }
        let min_eig = hermitian_eigenvalues(&entries)
            .iter()
            .cloned()
            .fold(f64::INFINITY, f64::min);
        if min_eig < -PHYSICAL_TOL {
            return Err(Error::NonPhysical(format!(
                "negative eigenvalue {min_eig:.3e}"
            )));
        }
        Ok(Self { entries })
    }

    pub fn entries(&self) -> &Matrix4<Complex64> {
        &self.entries
    }
}

fn hermitian_eigenvalues(m: &Matrix4<Complex64>) -> [f64; 4] {
    let eig = SymmetricEigen::new(*m);
    let mut out = [0.0; 4];
    for (k, v) in eig.eigenvalues.iter().enumerate() {
        out[k] = *v;
    }
    out
}

// Eigenvalues below this are round-off from the eigensolver, not physics;
// passing them through sqrt would blow 1e-16 noise up to 1e-8.
const EIGEN_NOISE_FLOOR: f64 = 1e-13;

/// Hermitian square root with the noise floor applied to the eigenvalues.
fn hermitian_sqrt(m: &Matrix4<Complex64>) -> Matrix4<Complex64> {
    let eig = SymmetricEigen::new(*m);
    let mut diag = Matrix4::zeros();
    for k in 0..4 {
        let v = eig.eigenvalues[k];
        diag[(k, k)] = Complex64::new(if v < EIGEN_NOISE_FLOOR { 0.0 } else { v.sqrt() }, 0.0);
    }
    &eig.eigenvectors * diag * eig.eigenvectors.adjoint()
}

/// Inserts the pair bits (b_i at `hi`, b_j at `lo`, hi > lo) into the packed
/// index of the remaining spins.
fn embed_pair_bits(rest: usize, hi: usize, lo: usize, b_i: usize, b_j: usize) -> usize {
    let low_mask = (1usize << lo) - 1;
    let r = ((rest >> lo) << (lo + 1)) | (b_j << lo) | (rest & low_mask);
    let hi_mask = (1usize << hi) - 1;
    ((r >> hi) << (hi + 1)) | (b_i << hi) | (r & hi_mask)
}

/// Partial trace over every spin except `i` and `j` (1-based, i < j).
pub fn reduce_to_pair(state: &StateVector, i: usize, j: usize) -> Result<TwoQubitDensity> {
    let n = state.n_spins();
    if i < 1 || j > n || i >= j {
        return Err(Error::InvalidArgument(format!(
            "invalid spin pair ({i}, {j}) for {n} spins"
        )));
    }
    let hi = bit_position(n, i);
    let lo = bit_position(n, j);
    let amps = state.amplitudes();
    let rest_dim = 1usize << (n - 2);
    let mut entries = Matrix4::zeros();
    for rest in 0..rest_dim {
        let idx: Vec<usize> = (0..4)
            .map(|a| embed_pair_bits(rest, hi, lo, a >> 1, a & 1))
            .collect();
        for a in 0..4 {
            for b in 0..4 {
                entries[(a, b)] += amps[idx[a]] * amps[idx[b]].conj();
            }
        }
    }
    Ok(TwoQubitDensity { entries })
}

/// `(σ_y⊗σ_y) m* (σ_y⊗σ_y)`; applied to ρ this is the spin-flipped
/// matrix ρ̃, and it commutes with the Hermitian square root.
fn spin_flipped_linear(m: &Matrix4<Complex64>) -> Matrix4<Complex64> {
    // σ_y⊗σ_y is the antidiagonal (-1, 1, 1, -1) in basis order 00,01,10,11.
    let sign = |k: usize| if k == 0 || k == 3 { -1.0 } else { 1.0 };
    let mut out = Matrix4::zeros();
    for r in 0..4 {
        for c in 0..4 {
            out[(r, c)] = sign(r) * sign(c) * m[(3 - r, 3 - c)].conj();
        }
    }
    out
}

/// Wootters concurrence `C = max(0, λ₁ - λ₂ - λ₃ - λ₄)`, where the λ_k are the
/// decreasing square roots of the eigenvalues of ρρ̃.
///
/// Computed as the singular values of `√ρ̃ √ρ`: `(√ρ̃√ρ)^H (√ρ̃√ρ) = √ρ ρ̃ √ρ`
/// shares its spectrum with ρρ̃, and the SVD delivers the square roots
/// directly with absolute accuracy ~machine epsilon.
pub fn concurrence(rho: &TwoQubitDensity) -> f64 {
    let sqrt_rho = hermitian_sqrt(&rho.entries);
    // √ρ̃ = (σ_y⊗σ_y) (√ρ)* (σ_y⊗σ_y)
    let sqrt_flipped = spin_flipped_linear(&sqrt_rho);
    let b = sqrt_flipped * sqrt_rho;
    let svd = b.svd(false, false);
    let mut lambdas = [0.0f64; 4];
    for (k, v) in svd.singular_values.iter().enumerate() {
        lambdas[k] = *v;
    }
    lambdas.sort_by(|a, b| b.partial_cmp(a).unwrap());
    (lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]).clamp(0.0, 1.0)
}

/// `Tr(ρ²)`, in [1/4, 1] for a two-qubit state.
pub fn purity(rho: &TwoQubitDensity) -> f64 {
    rho.entries.iter().map(|z| z.norm_sqr()).sum()
}

/// `|⟨reference|state⟩|²`; insensitive to the global phase of either argument.
pub fn fidelity_pure(state: &StateVector, reference: &StateVector) -> Result<f64> {
    Ok(reference.inner_product(state)?.norm_sqr())
}

/// Concurrence of a requested pair of a pure chain state.
pub fn pair_concurrence(state: &StateVector, i: usize, j: usize) -> Result<f64> {
    Ok(concurrence(&reduce_to_pair(state, i, j)?))
}

/// One sample of a simulation run: time plus the derived observables.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TimeSeriesRecord {
    pub time: f64,
    pub pair_concurrences: Vec<PairConcurrence>,
    pub purity_1n: f64,
    pub norm: f64,
    pub energy: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairConcurrence {
    pub i: usize,
    pub j: usize,
    pub value: f64,
}
