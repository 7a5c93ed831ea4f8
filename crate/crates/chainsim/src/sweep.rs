//! Exhaustive two-kick sweeps: the end-pair concurrence at a fixed evaluation
//! time as a function of the two kick times, on a uniform (t₁, t₂) grid.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ising::ChainConfig;
use crate::protocol::{run_schedule, ObservableSet, PulseEvent, PulseSchedule};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AxisRange {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl AxisRange {
    pub fn value(&self, k: usize) -> f64 {
        if self.count == 1 {
            self.min
        } else {
            self.min + (self.max - self.min) * k as f64 / (self.count - 1) as f64
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepGrid {
    pub t1_range: AxisRange,
    pub t2_range: AxisRange,
    pub eval_time: f64,
    pub n_spins: usize,
    pub angle_magnitude: f64,
}

impl SweepGrid {
    pub fn validate(&self) -> Result<()> {
        for (name, r) in [("t1", &self.t1_range), ("t2", &self.t2_range)] {
            if r.count < 2 || !r.min.is_finite() || !r.max.is_finite() || r.min >= r.max {
                return Err(Error::InvalidArgument(format!(
                    "{name} range must be finite with min < max and count >= 2"
                )));
            }
        }
        if self.eval_time < self.t2_range.max {
            return Err(Error::InvalidArgument(format!(
                "eval_time {} must be >= max t2 {}",
                self.eval_time, self.t2_range.max
            )));
        }
        if self.n_spins < 3 {
            return Err(Error::InvalidArgument(
                "two-kick sweep needs at least 3 spins".into(),
            ));
        }
        Ok(())
    }
}

/// Row-major values (t1 index is the row); cells with t2 <= t1 are `None`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub grid: SweepGrid,
    pub values: Vec<Option<f64>>,
    pub argmax: (f64, f64, f64),
}

impl SweepResult {
    pub fn value(&self, i1: usize, i2: usize) -> Option<f64> {
        self.values[i1 * self.grid.t2_range.count + i2]
    }
}

/// Concurrence of the (1, N) pair at `eval_time` for a single kick pair:
/// (t₁, +1) then (t₂, −1) on spins 1..N−1.
pub fn two_kick_concurrence(
    n_spins: usize,
    t1: f64,
    t2: f64,
    eval_time: f64,
    angle_magnitude: f64,
) -> Result<f64> {
    let targets: Vec<usize> = (1..n_spins).collect();
    let schedule = PulseSchedule::new(vec![
        PulseEvent {
            time: t1,
            targets: targets.clone(),
            sign: 1,
            angle_magnitude,
        },
        PulseEvent {
            time: t2,
            targets,
            sign: -1,
            angle_magnitude,
        },
    ])?;
    let config = ChainConfig::uniform(n_spins)?;
    let records = run_schedule(&config, &schedule, &[eval_time], &ObservableSet::ends(n_spins))?;
    Ok(records[0].pair_concurrences[0].value)
}

pub fn sweep_two_kicks(grid: &SweepGrid) -> Result<SweepResult> {
    grid.validate()?;
    let cells: Vec<(usize, usize)> = (0..grid.t1_range.count)
        .flat_map(|i1| (0..grid.t2_range.count).map(move |i2| (i1, i2)))
        .collect();
    let values: Vec<Option<f64>> = cells
        .par_iter()
        .map(|&(i1, i2)| {
            let t1 = grid.t1_range.value(i1);
            let t2 = grid.t2_range.value(i2);
            if t2 <= t1 {
                Ok(None)
            } else {
                two_kick_concurrence(grid.n_spins, t1, t2, grid.eval_time, grid.angle_magnitude)
                    .map(Some)
            }
        })
        .collect::<Result<_>>()?;
    let result = SweepResult {
        argmax: argmax_of(grid, &values)?,
        grid: grid.clone(),
        values,
    };
    Ok(result)
}

/// Lexicographically-first cell (row-major) attaining the maximum value.
fn argmax_of(grid: &SweepGrid, values: &[Option<f64>]) -> Result<(f64, f64, f64)> {
    let mut best: Option<(usize, usize, f64)> = None;
    for i1 in 0..grid.t1_range.count {
        for i2 in 0..grid.t2_range.count {
            if let Some(v) = values[i1 * grid.t2_range.count + i2] {
                if best.map_or(true, |(_, _, b)| v > b) {
                    best = Some((i1, i2, v));
                }
            }
        }
    }
    let (i1, i2, v) =
        best.ok_or_else(|| Error::InvalidArgument("sweep grid has no valid cell".into()))?;
    Ok((grid.t1_range.value(i1), grid.t2_range.value(i2), v))
}

pub fn find_argmax(result: &SweepResult) -> (f64, f64, f64) {
    result.argmax
}
