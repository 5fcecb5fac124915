//! Fine-tuned pulse sequences that hold a pair for a bounded time.
//!
//! A trap is the time-symmetric schedule
//! `(0 | q, Δt1 | 0, Δt2 | q, Δt1 | 0)`. Each field pulse is a barrier
//! whose Bogoliubov matrix `u_B` is an SU(2) rotation about the axis
//! `(−mq, 0, m² + p² + pq) / (E(p) E(p+q))` by the angle `E(p+q) Δt1`.
//! The diagonal of `u_B` vanishes, turning the vacuum into a pair, when
//!
//! * `m² + p² + pq = 0`, which needs `|q| >= 2m`, and
//! * `E(p+q) Δt1 = (n + 1/2) π`,
//!
//! in which case `u_B = iσ1`. With `E(p) Δt2 = (2n + 1) π` the full trap
//! composes to the identity.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{check_finite, check_mass, Error, Result};
use crate::fockspace::{lift, probabilities, FockOperator, FockVector, ELECTRON, POSITRON};
use crate::kinematics::{on_shell, Spin};
use crate::transfer::{compose_chain, propagation2, BogoliubovMatrix, PotentialSchedule, Slice};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Branch {
    /// Root closer to zero.
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl std::str::FromStr for Branch {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "+" | "plus" => Ok(Branch::Plus),
            "-" | "minus" => Ok(Branch::Minus),
            other => Err(Error::InvalidInput(format!("unknown branch {other:?}"))),
        }
    }
}

impl std::fmt::Display for Branch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Branch::Plus => "+",
            Branch::Minus => "-",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentumRoots {
    pub near: f64,
    pub far: f64,
    /// `|q| = 2m`: both roots equal `-q/2`.
    pub degenerate: bool,
}

impl MomentumRoots {
    pub fn select(&self, branch: Branch) -> f64 {
        match branch {
            Branch::Plus => self.near,
            Branch::Minus => self.far,
        }
    }
}

/// Real roots of `p² + qp + m² = 0`.
pub fn momentum_roots(mass: f64, q: f64) -> Result<MomentumRoots> {
    check_mass(mass)?;
    check_finite("q", q)?;
    let excess = q.abs() - 2.0 * mass;
    if excess < 0.0 {
        return Err(Error::SubThreshold { mass, q });
    }
    let sq = (excess * (q.abs() + 2.0 * mass)).sqrt();
    // The far root has no cancellation; the near one follows from the
    // product of roots m².
    let far = -0.5 * (q + q.signum() * sq);
    let near = mass * mass / far;
    Ok(MomentumRoots { near, far, degenerate: excess == 0.0 })
}

/// Unit rotation axis of an untuned barrier at canonical momentum `p`.
pub fn barrier_axis(mass: f64, p: f64, q: f64) -> [f64; 3] {
    let pq = p + q;
    let denom = on_shell(mass, p * p) * on_shell(mass, pq * pq);
    [-mass * q / denom, 0.0, (mass * mass + p * p + p * q) / denom]
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrapDesign {
    pub mass: f64,
    pub q: f64,
    pub branch: Branch,
    pub n_barrier: u32,
    pub n_interior: u32,
    pub p: f64,
    pub degenerate: bool,
    /// `t1 − t0 = t3 − t2`.
    pub dt_barrier: f64,
    /// `t2 − t1`.
    pub dt_interior: f64,
}

impl TrapDesign {
    pub fn energy_inside(&self) -> f64 {
        let k = self.p + self.q;
        on_shell(self.mass, k * k)
    }

    pub fn energy_outside(&self) -> f64 {
        on_shell(self.mass, self.p * self.p)
    }

    pub fn barrier_slice(&self) -> Slice {
        Slice::new(self.dt_barrier, self.q)
    }

    pub fn schedule(&self) -> PotentialSchedule {
        let b = self.barrier_slice();
        PotentialSchedule::from_interior([b, Slice::field_free(self.dt_interior), b])
            .expect("trap durations are validated at construction")
    }

    pub fn barrier_schedule(&self) -> PotentialSchedule {
        PotentialSchedule::from_interior([self.barrier_slice()]).expect("validated at construction")
    }

    /// Same design with replaced durations; used to detune a trap.
    pub fn with_durations(&self, dt_barrier: f64, dt_interior: f64) -> Result<Self> {
        for (name, v) in [("dt_barrier", dt_barrier), ("dt_interior", dt_interior)] {
            if !(v.is_finite() && v >= 0.0) {
                return Err(Error::InvalidInput(format!("{name} must be finite and >= 0, got {v}")));
            }
        }
        Ok(TrapDesign { dt_barrier, dt_interior, ..*self })
    }
}

pub fn design_trap(mass: f64, q: f64, branch: Branch, n_barrier: u32, n_interior: u32) -> Result<TrapDesign> {
    let roots = momentum_roots(mass, q)?;
    let p = roots.select(branch);
    let inside = on_shell(mass, (p + q) * (p + q));
    let outside = on_shell(mass, p * p);
    Ok(TrapDesign {
        mass,
        q,
        branch,
        n_barrier,
        n_interior,
        p,
        degenerate: roots.degenerate,
        dt_barrier: (f64::from(n_barrier) + 0.5) * PI / inside,
        dt_interior: f64::from(2 * n_interior + 1) * PI / outside,
    })
}

/// Bogoliubov matrix of one pulse for spin `+`.
pub fn barrier_matrix(design: &TrapDesign) -> Result<BogoliubovMatrix> {
    barrier_matrix_for_spin(design, Spin::Up)
}

pub fn barrier_matrix_for_spin(design: &TrapDesign, spin: Spin) -> Result<BogoliubovMatrix> {
    compose_chain(&design.barrier_schedule(), design.mass, design.p, spin)
}

/// `u_B · diag(e^{−iE(p)Δt2}, e^{iE(p)Δt2}) · u_B`.
pub fn trap_matrix(design: &TrapDesign) -> Result<BogoliubovMatrix> {
    let barrier = barrier_matrix(design)?;
    Ok(barrier * propagation2(design.energy_outside(), design.dt_interior) * barrier)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrapReport {
    /// `|u_B,11| + |u_B,22|`.
    pub barrier_diagonal_norm: f64,
    /// `max |u_T − I|`.
    pub trap_identity_deviation: f64,
    /// Pair probability of `Û_B|0⟩`.
    pub pair_probability_interior: f64,
    /// Vacuum probability of `Û_T|0⟩`.
    pub vacuum_probability_final: f64,
    /// How far `Û_B` and `Û_T` move either single-particle state away from
    /// itself, ignoring phase.
    pub one_particle_transparency_deviation: f64,
}

impl TrapReport {
    /// Largest departure from an ideal trap across all fields.
    pub fn max_deviation(&self) -> f64 {
        [
            self.barrier_diagonal_norm,
            self.trap_identity_deviation,
            (1.0 - self.pair_probability_interior).abs(),
            (1.0 - self.vacuum_probability_final).abs(),
            self.one_particle_transparency_deviation,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

fn stays_put(op: &FockOperator, index: usize) -> f64 {
    let state = FockVector::basis(index);
    let out = op.apply(&state);
    let kept = state.scaled(out.amplitude(index));
    (out.0 - kept.0).norm()
}

pub fn verify_trap(design: &TrapDesign) -> Result<TrapReport> {
    let barrier = barrier_matrix(design)?;
    let trap = trap_matrix(design)?;
    let barrier_hat = lift(&barrier)?;
    let trap_hat = lift(&trap)?;
    let interior = probabilities(&barrier_hat.apply(&FockVector::vacuum()))?;
    let after = probabilities(&trap_hat.apply(&FockVector::vacuum()))?;
    let transparency = [&barrier_hat, &trap_hat]
        .into_iter()
        .flat_map(|op| [stays_put(op, ELECTRON), stays_put(op, POSITRON)])
        .fold(0.0, f64::max);
    Ok(TrapReport {
        barrier_diagonal_norm: barrier.diagonal_norm(),
        trap_identity_deviation: trap.distance_from_identity(),
        pair_probability_interior: interior.pair,
        vacuum_probability_final: after.vacuum,
        one_particle_transparency_deviation: transparency,
    })
}

/// `periods` trap blocks separated by field-free gaps of length
/// `2π / E(p)`, whose free evolution is exactly the identity.
pub fn time_crystal_schedule(design: &TrapDesign, periods: u32) -> Result<PotentialSchedule> {
    if periods == 0 {
        return Err(Error::InvalidInput("periods must be >= 1".into()));
    }
    let b = design.barrier_slice();
    let gap = Slice::field_free(2.0 * PI / design.energy_outside());
    let mut interior = Vec::with_capacity(4 * periods as usize);
    for k in 0..periods {
        if k > 0 {
            interior.push(gap);
        }
        interior.extend([b, Slice::field_free(design.dt_interior), b]);
    }
    PotentialSchedule::from_interior(interior)
}

pub fn time_crystal(design: &TrapDesign, periods: u32) -> Result<BogoliubovMatrix> {
    compose_chain(&time_crystal_schedule(design, periods)?, design.mass, design.p, Spin::Up)
}
