//! Time-slice transfer matrices for a single momentum mode.
//!
//! Inside slice `n` the vector potential is constant, so the mode is a
//! superposition of free solutions at the kinetic momentum `p + q_n`.
//! Continuity of the field at each slice boundary relates the amplitude
//! vectors `(a(+), a(-), b†(+), b†(-))` of adjacent slices through the
//! matrix of bispinor overlaps `W(p + q_to)† W(p + q_from)`.
//!
//! Chains are reported in the interaction picture: amplitudes are read at
//! the first and last interface times, so the free phases of the
//! semi-infinite in and out slices do not appear.

use std::ops::Mul;

use nalgebra::{Matrix2, Matrix4};
use serde::{Deserialize, Serialize};

use crate::error::{check_finite, check_mass, Error, Result};
use crate::kinematics::{bispinor_basis, on_shell, Momentum3, Spin};
use crate::linalg::{c, max_abs_diff, unitarity_deviation, C64, I};

/// Entries of a 4x4 transfer matrix coupling opposite spins above this
/// value make the longitudinal reduction fail.
pub const NON_LONGITUDINAL_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Slice {
    /// Ignored for the first and last slice.
    #[serde(default)]
    pub duration: f64,
    /// Momentum kick `q = eA` carried by the slice.
    pub kick: f64,
}

impl Slice {
    pub fn new(duration: f64, kick: f64) -> Self {
        Slice { duration, kick }
    }

    pub fn field_free(duration: f64) -> Self {
        Slice { duration, kick: 0.0 }
    }
}

/// Ordered time slices of a piecewise-constant vector potential. The first
/// and last slices are the field-free in and out regions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Slice>", into = "Vec<Slice>")]
pub struct PotentialSchedule {
    slices: Vec<Slice>,
}

impl PotentialSchedule {
    pub fn new(slices: Vec<Slice>) -> Result<Self> {
        let n = slices.len();
        if n == 0 {
            return Err(Error::InvalidSchedule("schedule has no slices".into()));
        }
        for (i, s) in slices.iter().enumerate() {
            check_finite("slice kick", s.kick)
                .map_err(|_| Error::InvalidSchedule(format!("slice {i}: kick is not finite")))?;
            let interior = i > 0 && i + 1 < n;
            if interior && !(s.duration.is_finite() && s.duration >= 0.0) {
                return Err(Error::InvalidSchedule(format!(
                    "slice {i}: interior duration must be finite and >= 0, got {}",
                    s.duration
                )));
            }
        }
        if slices[0].kick != 0.0 || slices[n - 1].kick != 0.0 {
            return Err(Error::InvalidSchedule(
                "first and last slices must be field-free (kick = 0)".into(),
            ));
        }
        Ok(PotentialSchedule { slices })
    }

    /// Field-free in region, interior slices, field-free out region.
    pub fn from_interior(interior: impl IntoIterator<Item = Slice>) -> Result<Self> {
        let mut slices = vec![Slice::field_free(0.0)];
        slices.extend(interior);
        slices.push(Slice::field_free(0.0));
        Self::new(slices)
    }

    pub fn slices(&self) -> &[Slice] {
        &self.slices
    }

    pub fn interface_count(&self) -> usize {
        self.slices.len() - 1
    }

    pub fn is_interior(&self, index: usize) -> bool {
        index > 0 && index + 1 < self.slices.len()
    }

    /// Times of the slice boundaries, with the first boundary at t = 0.
    pub fn interface_times(&self) -> Vec<f64> {
        let mut t = 0.0;
        (0..self.interface_count())
            .map(|k| {
                if k > 0 {
                    t += self.slices[k].duration;
                }
                t
            })
            .collect()
    }

    pub fn reversed(&self) -> Self {
        let mut slices = self.slices.clone();
        slices.reverse();
        let n = slices.len();
        slices[0].duration = 0.0;
        slices[n - 1].duration = 0.0;
        PotentialSchedule { slices }
    }
}

impl TryFrom<Vec<Slice>> for PotentialSchedule {
    type Error = Error;

    fn try_from(slices: Vec<Slice>) -> Result<Self> {
        Self::new(slices)
    }
}

impl From<PotentialSchedule> for Vec<Slice> {
    fn from(s: PotentialSchedule) -> Self {
        s.slices
    }
}

/// 4x4 interface matrix in the basis `(a(+), a(-), b†(+), b†(-))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransferMatrix4(pub(crate) Matrix4<C64>);

impl TransferMatrix4 {
    pub fn identity() -> Self {
        TransferMatrix4(Matrix4::identity())
    }

    pub fn matrix(&self) -> &Matrix4<C64> {
        &self.0
    }

    pub fn unitarity_deviation(&self) -> f64 {
        unitarity_deviation(&self.0)
    }

    /// Largest modulus among entries that couple opposite spins.
    pub fn max_mixed_spin(&self) -> f64 {
        let mut max = 0.0f64;
        for i in 0..4 {
            for j in 0..4 {
                if i % 2 != j % 2 {
                    max = max.max(self.0[(i, j)].norm());
                }
            }
        }
        max
    }
}

impl Mul for TransferMatrix4 {
    type Output = TransferMatrix4;

    fn mul(self, rhs: Self) -> Self {
        TransferMatrix4(self.0 * rhs.0)
    }
}

/// 2x2 Bogoliubov transformation acting on `(a, b†)` of one spin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BogoliubovMatrix(pub(crate) Matrix2<C64>);

impl BogoliubovMatrix {
    pub fn new(u11: C64, u12: C64, u21: C64, u22: C64) -> Self {
        BogoliubovMatrix(Matrix2::new(u11, u12, u21, u22))
    }

    pub fn from_matrix(m: Matrix2<C64>) -> Self {
        BogoliubovMatrix(m)
    }

    pub fn identity() -> Self {
        BogoliubovMatrix(Matrix2::identity())
    }

    pub fn matrix(&self) -> &Matrix2<C64> {
        &self.0
    }

    /// Zero-based entry access: `get(0, 0)` is `u11`.
    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.0[(row, col)]
    }

    pub fn adjoint(&self) -> Self {
        BogoliubovMatrix(self.0.adjoint())
    }

    pub fn determinant(&self) -> C64 {
        self.0[(0, 0)] * self.0[(1, 1)] - self.0[(0, 1)] * self.0[(1, 0)]
    }

    /// `|u11| + |u22|`; zero exactly when the transformation maps the
    /// vacuum onto the pair state.
    pub fn diagonal_norm(&self) -> f64 {
        self.0[(0, 0)].norm() + self.0[(1, 1)].norm()
    }

    pub fn unitarity_deviation(&self) -> f64 {
        unitarity_deviation(&self.0)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        max_abs_diff(&self.0, &other.0)
    }

    pub fn distance_from_identity(&self) -> f64 {
        self.max_abs_diff(&Self::identity())
    }

    pub fn apply(&self, amp: AmplitudePair) -> AmplitudePair {
        AmplitudePair {
            f: self.0[(0, 0)] * amp.f + self.0[(0, 1)] * amp.g_star,
            g_star: self.0[(1, 0)] * amp.f + self.0[(1, 1)] * amp.g_star,
        }
    }
}

impl Mul for BogoliubovMatrix {
    type Output = BogoliubovMatrix;

    fn mul(self, rhs: Self) -> Self {
        BogoliubovMatrix(self.0 * rhs.0)
    }
}

/// c-number amplitudes that take the place of `(a, b†)` when the chain is
/// applied to a single Dirac wave function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AmplitudePair {
    pub f: C64,
    pub g_star: C64,
}

impl AmplitudePair {
    pub fn new(f: C64, g_star: C64) -> Self {
        AmplitudePair { f, g_star }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.f.norm_sqr() + self.g_star.norm_sqr()
    }
}

impl Default for AmplitudePair {
    fn default() -> Self {
        AmplitudePair { f: c(1.0, 0.0), g_star: c(0.0, 0.0) }
    }
}

/// Free evolution `diag(e^{-iE dt}, e^{iE dt})` within one slice.
pub fn propagation2(energy: f64, dt: f64) -> BogoliubovMatrix {
    let phase = (-I * (energy * dt)).exp();
    BogoliubovMatrix::new(phase, c(0.0, 0.0), c(0.0, 0.0), phase.conj())
}

/// Interface matrix for a kick change `q_from -> q_to` along z, built
/// from the 16 bispinor overlaps of the two slices.
pub fn transfer_full(mass: f64, p: &Momentum3, q_from: f64, q_to: f64) -> Result<TransferMatrix4> {
    check_finite("q_from", q_from)?;
    check_finite("q_to", q_to)?;
    let before = bispinor_basis(mass, &p.kicked(q_from))?;
    let after = bispinor_basis(mass, &p.kicked(q_to))?;
    Ok(TransferMatrix4(after.adjoint() * before))
}

/// The 2x2 block of `m` acting on `(a(spin), b†(spin))`.
pub fn reduce_longitudinal(m: &TransferMatrix4, spin: Spin) -> Result<BogoliubovMatrix> {
    let max_mixed = m.max_mixed_spin();
    if max_mixed > NON_LONGITUDINAL_TOL {
        return Err(Error::NonLongitudinal { max_mixed });
    }
    let (a, b) = (spin.index(), spin.index() + 2);
    Ok(BogoliubovMatrix::new(m.0[(a, a)], m.0[(a, b)], m.0[(b, a)], m.0[(b, b)]))
}

/// Spin-reduced interface matrix between kicks `q_from` and `q_to` at
/// canonical longitudinal momentum `p`.
pub fn interface_matrix(mass: f64, p: f64, q_from: f64, q_to: f64, spin: Spin) -> Result<BogoliubovMatrix> {
    let full = transfer_full(mass, &Momentum3::longitudinal(p), q_from, q_to)?;
    reduce_longitudinal(&full, spin)
}

/// Closed-form spin-up interface matrix for a kick `0 -> q` at momentum
/// `p`. Real, with `m11 = m22` and `m12 = -m21`.
pub fn interface_closed_form(mass: f64, p: f64, q: f64) -> Result<BogoliubovMatrix> {
    check_mass(mass)?;
    check_finite("p", p)?;
    check_finite("q", q)?;
    let pq = p + q;
    let (e0, e1) = (on_shell(mass, p * p), on_shell(mass, pq * pq));
    let (k0, k1) = (e0 + mass, e1 + mass);
    let denom = 2.0 * (e1 * e0 * k1 * k0).sqrt();
    let diag = (k1 * k0 + p * pq) / denom;
    let off = (p * e1 - pq * e0 - mass * q) / denom;
    Ok(BogoliubovMatrix::new(c(diag, 0.0), c(off, 0.0), c(-off, 0.0), c(diag, 0.0)))
}

/// Cumulative transformation right after one slice boundary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChainStep {
    /// Index of the slice entered at this boundary.
    pub slice_index: usize,
    pub time: f64,
    pub kick: f64,
    /// Maps in-region `(a, b†)` to the amplitudes of `slice_index`.
    pub cumulative: BogoliubovMatrix,
}

pub fn chain_steps(schedule: &PotentialSchedule, mass: f64, p: f64, spin: Spin) -> Result<Vec<ChainStep>> {
    check_mass(mass)?;
    check_finite("p", p)?;
    let slices = schedule.slices();
    let times = schedule.interface_times();
    let mut u = BogoliubovMatrix::identity();
    let mut steps = Vec::with_capacity(schedule.interface_count());
    for k in 0..schedule.interface_count() {
        if k > 0 {
            let s = slices[k];
            let kin = p + s.kick;
            u = propagation2(on_shell(mass, kin * kin), s.duration) * u;
        }
        u = interface_matrix(mass, p, slices[k].kick, slices[k + 1].kick, spin)? * u;
        steps.push(ChainStep {
            slice_index: k + 1,
            time: times[k],
            kick: slices[k + 1].kick,
            cumulative: u,
        });
    }
    Ok(steps)
}

/// Total in-to-out transformation of the schedule.
pub fn compose_chain(schedule: &PotentialSchedule, mass: f64, p: f64, spin: Spin) -> Result<BogoliubovMatrix> {
    Ok(chain_steps(schedule, mass, p, spin)?
        .last()
        .map_or_else(BogoliubovMatrix::identity, |s| s.cumulative))
}

/// Amplitudes right after each slice boundary.
pub fn evolve_amplitudes(
    schedule: &PotentialSchedule,
    mass: f64,
    p: f64,
    spin: Spin,
    init: AmplitudePair,
) -> Result<Vec<AmplitudePair>> {
    Ok(chain_steps(schedule, mass, p, spin)?
        .iter()
        .map(|s| s.cumulative.apply(init))
        .collect())
}
