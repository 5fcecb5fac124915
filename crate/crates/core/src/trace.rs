//! Boundary-by-boundary evolution traces and momentum sweeps.

use serde::Serialize;

use crate::error::{check_finite, check_mass, Error, Result};
use crate::exec::Execution;
use crate::fockspace::{lift, probabilities, FockVector, Probabilities};
use crate::kinematics::Spin;
use crate::transfer::{chain_steps, AmplitudePair, BogoliubovMatrix, PotentialSchedule};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TraceRow {
    pub time: f64,
    /// Slice the state is expressed in (the one entered at `time`).
    pub slice_index: usize,
    pub kick: f64,
    pub probabilities: Probabilities,
    pub f_abs: f64,
    pub g_abs: f64,
    /// Cumulative in-to-slice transformation.
    #[serde(skip)]
    pub transform: BogoliubovMatrix,
}

/// One row for the in region followed by one row per slice boundary.
pub fn evolve_trace(
    schedule: &PotentialSchedule,
    mass: f64,
    p: f64,
    spin: Spin,
    initial: &FockVector,
    amplitudes: AmplitudePair,
) -> Result<Vec<TraceRow>> {
    let row = |time, slice_index, kick, transform: BogoliubovMatrix| -> Result<TraceRow> {
        let state = lift(&transform)?.apply(initial);
        let amp = transform.apply(amplitudes);
        Ok(TraceRow {
            time,
            slice_index,
            kick,
            probabilities: probabilities(&state)?,
            f_abs: amp.f.norm(),
            g_abs: amp.g_star.norm(),
            transform,
        })
    };
    let mut rows = vec![row(0.0, 0, 0.0, BogoliubovMatrix::identity())?];
    for step in chain_steps(schedule, mass, p, spin)? {
        rows.push(row(step.time, step.slice_index, step.kick, step.cumulative)?);
    }
    Ok(rows)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepStatus {
    Ok,
    SubThreshold,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub p: f64,
    pub status: SweepStatus,
    /// Vacuum probability in the out region, starting from the vacuum.
    pub final_vacuum: f64,
    /// Largest pair probability over the interior windows.
    pub interior_pair: f64,
    /// `|u11| + |u22|` of the transformation into the first window.
    pub barrier_diagonal_norm: f64,
}

impl SweepRow {
    pub fn sub_threshold(p: f64) -> Self {
        SweepRow {
            p,
            status: SweepStatus::SubThreshold,
            final_vacuum: f64::NAN,
            interior_pair: f64::NAN,
            barrier_diagonal_norm: f64::NAN,
        }
    }

    /// Reduces a vacuum-started trace to sweep quantities.
    ///
    /// Windows are the interior field-free slices. A schedule without one
    /// uses every interior slice, and the barrier runs to the end of the
    /// schedule.
    pub fn from_trace(p: f64, schedule: &PotentialSchedule, rows: &[TraceRow]) -> Self {
        let interior: Vec<&TraceRow> = rows.iter().filter(|r| schedule.is_interior(r.slice_index)).collect();
        let windows: Vec<&TraceRow> = interior.iter().copied().filter(|r| r.kick == 0.0).collect();
        let pool = if windows.is_empty() { &interior } else { &windows };
        let last = rows.last().expect("trace has at least the initial row");
        let barrier = windows.first().copied().unwrap_or(last);
        SweepRow {
            p,
            status: SweepStatus::Ok,
            final_vacuum: last.probabilities.vacuum,
            interior_pair: pool.iter().map(|r| r.probabilities.pair).fold(0.0, f64::max),
            barrier_diagonal_norm: barrier.transform.diagonal_norm(),
        }
    }
}

/// Evenly spaced momenta from `min` to `max` inclusive; a single point
/// sits at `min`.
pub fn momentum_grid(min: f64, max: f64, count: usize) -> Result<Vec<f64>> {
    check_finite("grid min", min)?;
    check_finite("grid max", max)?;
    if count == 0 {
        return Err(Error::InvalidInput("grid count must be >= 1".into()));
    }
    if min > max {
        return Err(Error::InvalidInput(format!("grid min {min} exceeds max {max}")));
    }
    if count == 1 {
        return Ok(vec![min]);
    }
    let step = (max - min) / (count - 1) as f64;
    let mut grid: Vec<f64> = (0..count).map(|i| min + step * i as f64).collect();
    grid[count - 1] = max;
    Ok(grid)
}

/// Sweep rows for a fixed schedule, one per momentum, in input order.
pub fn sweep(
    schedule: &PotentialSchedule,
    mass: f64,
    spin: Spin,
    momenta: &[f64],
    exec: Execution,
) -> Result<Vec<SweepRow>> {
    check_mass(mass)?;
    exec.map(momenta, |&p| {
        let rows = evolve_trace(schedule, mass, p, spin, &FockVector::vacuum(), AmplitudePair::default())?;
        Ok(SweepRow::from_trace(p, schedule, &rows))
    })
    .into_iter()
    .collect()
}
