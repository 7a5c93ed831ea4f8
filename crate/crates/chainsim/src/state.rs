//! Dense state-vector representation and single-spin y rotations.
//!
//! Basis convention: spins are numbered 1..=N, spin 1 is the most significant
//! bit of the basis index. Bit value `b_j ∈ {0,1}` maps to `z_j = 1 - 2*b_j`,
//! so `|0⟩` is the `s_z = +1/2` eigenstate.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Hard cap on the chain length (2^24 amplitudes ≈ 256 MiB).
pub const MAX_SPINS: usize = 24;

/// Pure state of an N-spin chain as 2^N complex amplitudes.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    n_spins: usize,
    amps: Vec<Complex64>,
}

/// Bit position (from the least significant end) of spin `j` in a basis index.
#[inline]
pub fn bit_position(n_spins: usize, spin: usize) -> usize {
    n_spins - spin
}

/// Bit value of spin `j` in basis index `index`.
#[inline]
pub fn spin_bit(index: usize, n_spins: usize, spin: usize) -> usize {
    (index >> bit_position(n_spins, spin)) & 1
}

impl StateVector {
    fn check_spin_count(n_spins: usize) -> Result<()> {
        if n_spins < 1 || n_spins > MAX_SPINS {
            return Err(Error::SpinCountOutOfRange(n_spins));
        }
        Ok(())
    }

    /// `|+⟩^N`: every amplitude equals `2^(-N/2)`.
    pub fn plus_state(n_spins: usize) -> Result<Self> {
        Self::check_spin_count(n_spins)?;
        let dim = 1usize << n_spins;
        let amp = Complex64::new((dim as f64).sqrt().recip(), 0.0);
        Ok(Self {
            n_spins,
            amps: vec![amp; dim],
        })
    }

    /// Computational basis state `|b⟩` for a given basis index.
    pub fn basis_state(n_spins: usize, index: usize) -> Result<Self> {
        Self::check_spin_count(n_spins)?;
        let dim = 1usize << n_spins;
        if index >= dim {
            return Err(Error::InvalidArgument(format!(
                "basis index {index} out of range for dimension {dim}"
            )));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(Self { n_spins, amps })
    }

    /// Builds a state from raw amplitudes without normalizing.
    pub fn from_amplitudes(n_spins: usize, amps: Vec<Complex64>) -> Result<Self> {
        Self::check_spin_count(n_spins)?;
        if amps.len() != 1usize << n_spins {
            return Err(Error::InvalidArgument(format!(
                "expected {} amplitudes, got {}",
                1usize << n_spins,
                amps.len()
            )));
        }
        Ok(Self { n_spins, amps })
    }

    pub fn n_spins(&self) -> usize {
        self.n_spins
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub(crate) fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Divides by the current norm. Intended for constructed reference states.
    pub fn normalized(mut self) -> Self {
        let n = self.norm();
        if n > 0.0 {
            let inv = 1.0 / n;
            for a in &mut self.amps {
                *a *= inv;
            }
        }
        self
    }

    fn check_target(&self, spin: usize) -> Result<()> {
        if spin < 1 || spin > self.n_spins {
            return Err(Error::SpinIndexOutOfRange {
                index: spin,
                n_spins: self.n_spins,
            });
        }
        Ok(())
    }

    /// Applies `R_j(θ) = exp(-iθ ŝ_y,j)` to every spin in `targets`.
    ///
    /// In the `(|0⟩, |1⟩)` basis the single-spin matrix is
    /// `[[cos(θ/2), -sin(θ/2)], [sin(θ/2), cos(θ/2)]]`; θ is the Bloch-sphere
    /// rotation angle, so θ = π flips `|0⟩ ↔ |1⟩` up to sign.
    pub fn apply_y_rotation(&self, targets: &[usize], theta: f64) -> Result<Self> {
        let mut out = self.clone();
        out.rotate_y_in_place(targets, theta)?;
        Ok(out)
    }

    pub(crate) fn rotate_y_in_place(&mut self, targets: &[usize], theta: f64) -> Result<()> {
        for (k, &t) in targets.iter().enumerate() {
            self.check_target(t)?;
            if targets[..k].contains(&t) {
                return Err(Error::InvalidArgument(format!(
                    "duplicate rotation target {t}"
                )));
            }
        }
        let c = (theta / 2.0).cos();
        let s = (theta / 2.0).sin();
        for &t in targets {
            let stride = 1usize << bit_position(self.n_spins, t);
            let dim = self.amps.len();
            let mut base = 0usize;
            while base < dim {
                for i0 in base..base + stride {
                    let i1 = i0 | stride;
                    let a0 = self.amps[i0];
                    let a1 = self.amps[i1];
                    self.amps[i0] = c * a0 - s * a1;
                    self.amps[i1] = s * a0 + c * a1;
                }
                base += stride << 1;
            }
        }
        Ok(())
    }

    /// `⟨self|other⟩` with the conjugate on `self`.
    pub fn inner_product(&self, other: &Self) -> Result<Complex64> {
        if self.n_spins != other.n_spins {
            return Err(Error::SizeMismatch(self.n_spins, other.n_spins));
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }
}
