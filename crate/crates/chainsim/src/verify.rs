//! Oracle-equivalence checks: runs the kicked simulation for a chosen N and
//! reports the maximum deviation from each closed-form curve.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ising::ChainConfig;
use crate::measures::fidelity_pure;
use crate::oracle;
use crate::protocol::{
    build_standard_schedule, run_schedule, uniform_samples, ObservableSet, PulseSchedule,
};

pub const VERIFY_TOL: f64 = 1e-9;

/// Maximum |simulated - oracle| for one formula.
#[derive(Clone, Debug, Serialize)]
pub struct FormulaDeviation {
    pub formula: String,
    pub max_deviation: f64,
    pub tolerance: f64,
}

impl FormulaDeviation {
    pub fn passed(&self) -> bool {
        self.max_deviation <= self.tolerance
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub n_spins: usize,
    pub angle_magnitude: f64,
    pub deviations: Vec<FormulaDeviation>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.deviations.iter().all(FormulaDeviation::passed)
    }
}

fn dev(formula: &str, max_deviation: f64) -> FormulaDeviation {
    FormulaDeviation {
        formula: formula.to_string(),
        max_deviation,
        tolerance: VERIFY_TOL,
    }
}

/// Compares the simulator against every closed form applicable to `n_spins`.
pub fn verify_against_oracles(n_spins: usize, angle_magnitude: f64) -> Result<VerifyReport> {
    if n_spins < 3 {
        return Err(Error::InvalidArgument(format!(
            "verification needs N >= 3 (got {n_spins})"
        )));
    }
    let config = ChainConfig::uniform(n_spins)?;
    let mut deviations = Vec::new();

    // Free evolution: edge and middle neighbor pairs, and non-neighbors.
    let free_samples = uniform_samples(4.0 * PI, 257)?;
    let free_records = run_schedule(
        &config,
        &PulseSchedule::empty(),
        &free_samples,
        &ObservableSet::all_pairs(n_spins),
    )?;
    let mut edge_dev: f64 = 0.0;
    let mut middle_dev: f64 = 0.0;
    let mut nonneighbor_dev: f64 = 0.0;
    for rec in &free_records {
        for pc in &rec.pair_concurrences {
            if pc.j == pc.i + 1 {
                if pc.i == 1 || pc.j == n_spins {
                    edge_dev = edge_dev.max((pc.value - oracle::c_edge(rec.time)).abs());
                } else {
                    middle_dev = middle_dev.max((pc.value - oracle::c_middle(rec.time)).abs());
                }
            } else {
                nonneighbor_dev = nonneighbor_dev.max(pc.value);
            }
        }
    }
    deviations.push(dev("edge pairs, no kicks: |sin t|/2", edge_dev));
    if n_spins >= 4 {
        deviations.push(dev(
            "middle pairs, no kicks: max(0, |sin t|/2 - sin^2(t/2)/2)",
            middle_dev,
        ));
    }
    deviations.push(dev(
        "non-neighbor pairs, no kicks: identically zero",
        nonneighbor_dev,
    ));

    // Kicked protocol: end-pair concurrence against the closed form.
    let schedule = build_standard_schedule(n_spins, angle_magnitude)?;
    let t_max = (n_spins + 2) as f64 * PI;
    let kicked_samples = uniform_samples(t_max, (n_spins + 2) * 64 + 1)?;
    let kicked_records = run_schedule(
        &config,
        &schedule,
        &kicked_samples,
        &ObservableSet::ends(n_spins),
    )?;
    let mut ends_dev: f64 = 0.0;
    for rec in &kicked_records {
        let expect = if n_spins == 3 {
            oracle::c_three_spin_ends(rec.time)
        } else {
            oracle::c_ends(rec.time, n_spins)?
        };
        ends_dev = ends_dev.max((rec.pair_concurrences[0].value - expect).abs());
    }
    let label = if n_spins == 3 {
        "kicked end pair: cos^2(t/2) for t >= pi"
    } else if n_spins % 2 == 0 {
        "kicked end pair: max(0, |sin(t/2)| - cos^2(t/2)/2) for t >= (N-2)pi"
    } else {
        "kicked end pair: max(0, |cos(t/2)| - sin^2(t/2)/2) for t >= (N-2)pi"
    };
    deviations.push(dev(label, ends_dev));

    // Final state at t = (N-1)pi.
    let final_time = (n_spins - 1) as f64 * PI;
    let sim_final = simulate_state_at(&config, &schedule, final_time)?;
    let reference = oracle::build_final_state(n_spins)?;
    let infidelity = 1.0 - fidelity_pure(&sim_final, &reference)?;
    deviations.push(dev("final-state infidelity at t = (N-1)pi", infidelity));

    Ok(VerifyReport {
        n_spins,
        angle_magnitude,
        deviations,
    })
}

/// The chain state at a single time under a schedule (kicks at τ act at τ⁺).
pub fn simulate_state_at(
    config: &ChainConfig,
    schedule: &PulseSchedule,
    time: f64,
) -> Result<crate::state::StateVector> {
    use crate::ising::{build_energy_table, evolve_in_place};
    let table = build_energy_table(config)?;
    let mut state = crate::state::StateVector::plus_state(config.n_spins)?;
    let mut now = 0.0;
    for event in schedule.events() {
        if event.time > time {
            break;
        }
        evolve_in_place(&mut state, &table, event.time - now)?;
        state.rotate_y_in_place(&event.targets, event.sign as f64 * event.angle_magnitude)?;
        now = event.time;
    }
    evolve_in_place(&mut state, &table, time - now)?;
    Ok(state)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::protocol::DEFAULT_KICK_ANGLE;

    #[test]
    fn verify_small_chains_pass() {
        for n in [3, 4, 5] {
            let report = verify_against_oracles(n, DEFAULT_KICK_ANGLE).unwrap();
            assert!(
                report.all_passed(),
                "N = {n}: {:?}",
                report
                    .deviations
                    .iter()
                    .filter(|d| !d.passed())
                    .collect::<Vec<_>>()
            );
        }
    }

    #[test]
    fn wrong_angle_fails_verification() {
        let report = verify_against_oracles(3, std::f64::consts::PI).unwrap();
        assert!(!report.all_passed());
    }

    #[test]
    fn verify_rejects_short_chains() {
        assert!(verify_against_oracles(2, DEFAULT_KICK_ANGLE).is_err());
    }
}
