//! Exact time evolution under the open-chain Ising Hamiltonian
//! `H = Σ_{j=1}^{N-1} J_j ŝ_z,j ŝ_z,j+1` (ŝ = σ/2, ħ = 1).
//!
//! H is diagonal in the computational basis, so evolution is a per-amplitude
//! phase and exact for any duration.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::state::{bit_position, StateVector, MAX_SPINS};

/// Chain length plus per-bond couplings and the on/off bond mask.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChainConfig {
    pub n_spins: usize,
    pub bond_couplings: Vec<f64>,
    pub bond_mask: Vec<bool>,
}

impl ChainConfig {
    /// All couplings 1.0, all bonds active.
    pub fn uniform(n_spins: usize) -> Result<Self> {
        if n_spins < 1 || n_spins > MAX_SPINS {
            return Err(Error::SpinCountOutOfRange(n_spins));
        }
        Ok(Self {
            n_spins,
            bond_couplings: vec![1.0; n_spins - 1],
            bond_mask: vec![true; n_spins - 1],
        })
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_spins < 1 || self.n_spins > MAX_SPINS {
            return Err(Error::SpinCountOutOfRange(self.n_spins));
        }
        if self.bond_couplings.len() != self.n_spins - 1
            || self.bond_mask.len() != self.n_spins - 1
        {
            return Err(Error::InvalidArgument(format!(
                "bond arrays must have length {}",
                self.n_spins - 1
            )));
        }
        Ok(())
    }

    /// Coupling of bond `j` (1-based, between spins j and j+1), 0 if masked off.
    pub fn effective_coupling(&self, bond: usize) -> f64 {
        if self.bond_mask[bond - 1] {
            self.bond_couplings[bond - 1]
        } else {
            0.0
        }
    }
}

/// Precomputed diagonal of H: `E(b) = Σ_j J_j (z_j/2)(z_j+1/2)`.
#[derive(Clone, Debug)]
pub struct DiagonalEnergyTable {
    n_spins: usize,
    energies: Vec<f64>,
}

impl DiagonalEnergyTable {
    pub fn n_spins(&self) -> usize {
        self.n_spins
    }

    pub fn energies(&self) -> &[f64] {
        &self.energies
    }
}

pub fn build_energy_table(config: &ChainConfig) -> Result<DiagonalEnergyTable> {
    config.validate()?;
    let n = config.n_spins;
    let dim = 1usize << n;
    let mut energies = vec![0.0; dim];
    for (index, e) in energies.iter_mut().enumerate() {
        let mut sum = 0.0;
        for bond in 1..n {
            let b_left = (index >> bit_position(n, bond)) & 1;
            let b_right = (index >> bit_position(n, bond + 1)) & 1;
            let z_left = 1.0 - 2.0 * b_left as f64;
            let z_right = 1.0 - 2.0 * b_right as f64;
            sum += config.effective_coupling(bond) * z_left * z_right / 4.0;
        }
        *e = sum;
    }
    Ok(DiagonalEnergyTable { n_spins: n, energies })
}

/// `e^{-i t H}`: multiplies amplitude `b` by `exp(-i·duration·E(b))`.
/// Negative durations give the inverse evolution.
pub fn evolve(
    state: &StateVector,
    table: &DiagonalEnergyTable,
    duration: f64,
) -> Result<StateVector> {
    let mut out = state.clone();
    evolve_in_place(&mut out, table, duration)?;
    Ok(out)
}

pub(crate) fn evolve_in_place(
    state: &mut StateVector,
    table: &DiagonalEnergyTable,
    duration: f64,
) -> Result<()> {
    if state.n_spins() != table.n_spins {
        return Err(Error::SizeMismatch(state.n_spins(), table.n_spins));
    }
    for (a, &e) in state.amplitudes_mut().iter_mut().zip(&table.energies) {
        *a *= Complex64::from_polar(1.0, -duration * e);
    }
    Ok(())
}

/// `⟨ψ|H|ψ⟩ = Σ_b |a_b|² E(b)`.
pub fn energy_expectation(state: &StateVector, table: &DiagonalEnergyTable) -> Result<f64> {
    if state.n_spins() != table.n_spins {
        return Err(Error::SizeMismatch(state.n_spins(), table.n_spins));
    }
    Ok(state
        .amplitudes()
        .iter()
        .zip(&table.energies)
        .map(|(a, &e)| a.norm_sqr() * e)
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    const TOL: f64 = 1e-12;

    #[test]
    fn two_spin_energies() {
        let table = build_energy_table(&ChainConfig::uniform(2).unwrap()).unwrap();
        assert_eq!(table.energies(), &[0.25, -0.25, -0.25, 0.25]);
    }

    #[test]
    fn three_spin_energies() {
        let table = build_energy_table(&ChainConfig::uniform(3).unwrap()).unwrap();
        // indices: 000=0, 010=2, 001=1
        assert!((table.energies()[0b000] - 0.5).abs() < TOL);
        assert!((table.energies()[0b010] + 0.5).abs() < TOL);
        assert!(table.energies()[0b001].abs() < TOL);
    }

    #[test]
    fn masked_bond_contributes_zero() {
        let mut config = ChainConfig::uniform(3).unwrap();
        config.bond_mask[1] = false;
        let table = build_energy_table(&config).unwrap();
        // E(011) = z1 z2 / 4 = (+1)(-1)/4
        assert!((table.energies()[0b011] + 0.25).abs() < TOL);
    }

    #[test]
    fn global_flip_symmetry_and_extremes() {
        let n = 5;
        let table = build_energy_table(&ChainConfig::uniform(n).unwrap()).unwrap();
        let dim = 1usize << n;
        for b in 0..dim {
            let flipped = !b & (dim - 1);
            assert!((table.energies()[b] - table.energies()[flipped]).abs() < TOL);
        }
        let min = table.energies().iter().cloned().fold(f64::INFINITY, f64::min);
        let max = table.energies().iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        assert!((min + (n - 1) as f64 / 4.0).abs() < TOL);
        assert!((max - (n - 1) as f64 / 4.0).abs() < TOL);
    }

    #[test]
    fn evolve_zero_duration_is_identity() {
        let table = build_energy_table(&ChainConfig::uniform(3).unwrap()).unwrap();
        let psi = StateVector::plus_state(3).unwrap();
        let out = evolve(&psi, &table, 0.0).unwrap();
        assert_eq!(psi, out);
    }

    #[test]
    fn evolve_basis_state_phase() {
        let table = build_energy_table(&ChainConfig::uniform(2).unwrap()).unwrap();
        let psi = StateVector::basis_state(2, 0).unwrap();
        let t = 1.7;
        let out = evolve(&psi, &table, t).unwrap();
        let expect = Complex64::from_polar(1.0, -t / 4.0);
        assert!((out.amplitudes()[0] - expect).norm() < TOL);
    }

    #[test]
    fn evolve_then_reverse() {
        let table = build_energy_table(&ChainConfig::uniform(4).unwrap()).unwrap();
        let psi = StateVector::plus_state(4)
            .unwrap()
            .apply_y_rotation(&[2], 0.7)
            .unwrap();
        let back = evolve(&evolve(&psi, &table, 2.3).unwrap(), &table, -2.3).unwrap();
        for (a, b) in psi.amplitudes().iter().zip(back.amplitudes()) {
            assert!((a - b).norm() < TOL);
        }
    }

    #[test]
    fn energy_expectation_values() {
        let table2 = build_energy_table(&ChainConfig::uniform(2).unwrap()).unwrap();
        let e00 = energy_expectation(&StateVector::basis_state(2, 0b00).unwrap(), &table2).unwrap();
        let e01 = energy_expectation(&StateVector::basis_state(2, 0b01).unwrap(), &table2).unwrap();
        assert!((e00 - 0.25).abs() < TOL);
        assert!((e01 + 0.25).abs() < TOL);
        for n in [2, 3, 5] {
            let table = build_energy_table(&ChainConfig::uniform(n).unwrap()).unwrap();
            let plus = StateVector::plus_state(n).unwrap();
            assert!(energy_expectation(&plus, &table).unwrap().abs() < TOL);
        }
    }

    #[test]
    fn eight_pi_periodicity() {
        let table = build_energy_table(&ChainConfig::uniform(4).unwrap()).unwrap();
        let psi = StateVector::plus_state(4)
            .unwrap()
            .apply_y_rotation(&[1, 3], 1.1)
            .unwrap();
        let out = evolve(&psi, &table, 8.0 * PI).unwrap();
        for (a, b) in psi.amplitudes().iter().zip(out.amplitudes()) {
            assert!((a - b).norm() < TOL);
        }
    }

    #[test]
    fn kick_and_evolution_do_not_commute() {
        let table = build_energy_table(&ChainConfig::uniform(2).unwrap()).unwrap();
        let psi = StateVector::plus_state(2).unwrap();
        let a = evolve(&psi, &table, PI)
            .unwrap()
            .apply_y_rotation(&[1], PI)
            .unwrap();
        let b = evolve(&psi.apply_y_rotation(&[1], PI).unwrap(), &table, PI).unwrap();
        let diff: f64 = a
            .amplitudes()
            .iter()
            .zip(b.amplitudes())
            .map(|(x, y)| (x - y).norm_sqr())
            .sum::<f64>()
            .sqrt();
        assert!(diff > 0.1, "diff = {diff}");
    }

    #[test]
    fn size_mismatch_errors() {
        let table = build_energy_table(&ChainConfig::uniform(3).unwrap()).unwrap();
        let psi = StateVector::plus_state(2).unwrap();
        assert!(evolve(&psi, &table, 1.0).is_err());
        assert!(energy_expectation(&psi, &table).is_err());
    }
}
