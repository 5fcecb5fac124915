//! The four-state Fock space of one electron/positron mode pair.
//!
//! Basis order: `|0⟩, a†|0⟩, b†|0⟩, a†b†|0⟩`. The pair state is `a†b†|0⟩`
//! with `a†` to the left.
//!
//! A 2x2 Bogoliubov matrix `u` is lifted to the Fock-space unitary `Û`
//! satisfying `u11 a + u12 b† = Û† a Û` and `u21 a + u22 b† = Û† b† Û`.
//! Two constructions are provided and must agree: the exponential of the
//! generator `ξ0 G0 + ξ·G`, and the normal-ordered closed form.

use std::ops::Mul;

use nalgebra::{Matrix4, SymmetricEigen, Vector4};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{c, max_abs_diff, unitarity_deviation, C64, I};
use crate::su2param::{decompose, Su2Params};
use crate::transfer::BogoliubovMatrix;

pub const VACUUM: usize = 0;
pub const ELECTRON: usize = 1;
pub const POSITRON: usize = 2;
pub const PAIR: usize = 3;

/// [`probabilities`] rejects vectors whose squared norm is further than
/// this from one.
pub const NORMALIZATION_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FockVector(pub(crate) Vector4<C64>);

impl FockVector {
    pub fn from_amplitudes(amps: [C64; 4]) -> Self {
        FockVector(Vector4::from(amps))
    }

    pub fn basis(index: usize) -> Self {
        let mut v = Vector4::zeros();
        v[index] = c(1.0, 0.0);
        FockVector(v)
    }

    pub fn vacuum() -> Self {
        Self::basis(VACUUM)
    }

    pub fn electron() -> Self {
        Self::basis(ELECTRON)
    }

    pub fn positron() -> Self {
        Self::basis(POSITRON)
    }

    pub fn pair() -> Self {
        Self::basis(PAIR)
    }

    pub fn amplitudes(&self) -> [C64; 4] {
        [self.0[0], self.0[1], self.0[2], self.0[3]]
    }

    pub fn amplitude(&self, index: usize) -> C64 {
        self.0[index]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0.norm_squared()
    }

    pub fn scaled(&self, factor: C64) -> Self {
        FockVector(self.0 * factor)
    }

    pub fn add(&self, other: &Self) -> Self {
        FockVector(self.0 + other.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FockOperator(pub(crate) Matrix4<C64>);

impl FockOperator {
    pub fn from_matrix(m: Matrix4<C64>) -> Self {
        FockOperator(m)
    }

    pub fn identity() -> Self {
        FockOperator(Matrix4::identity())
    }

    pub fn matrix(&self) -> &Matrix4<C64> {
        &self.0
    }

    pub fn adjoint(&self) -> Self {
        FockOperator(self.0.adjoint())
    }

    pub fn apply(&self, v: &FockVector) -> FockVector {
        FockVector(self.0 * v.0)
    }

    pub fn unitarity_deviation(&self) -> f64 {
        unitarity_deviation(&self.0)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        max_abs_diff(&self.0, &other.0)
    }

    /// Largest entry coupling the even sector `{|0⟩, pair}` to the odd
    /// sector `{a†|0⟩, b†|0⟩}`.
    pub fn parity_leak(&self) -> f64 {
        let even = |i: usize| i == VACUUM || i == PAIR;
        let mut max = 0.0f64;
        for i in 0..4 {
            for j in 0..4 {
                if even(i) != even(j) {
                    max = max.max(self.0[(i, j)].norm());
                }
            }
        }
        max
    }

    /// Best unit phase `φ` with `self ≈ φ·other`, and the residual
    /// `max |self − φ·other|`.
    pub fn phase_relative_to(&self, other: &Self) -> (C64, f64) {
        let overlap = (other.0.adjoint() * self.0).trace();
        let phase = if overlap.norm() > 0.0 { overlap / overlap.norm() } else { c(1.0, 0.0) };
        (phase, max_abs_diff(&self.0, &(other.0 * phase)))
    }
}

impl Mul for FockOperator {
    type Output = FockOperator;

    fn mul(self, rhs: Self) -> Self {
        FockOperator(self.0 * rhs.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ladder {
    pub a: Matrix4<C64>,
    pub b: Matrix4<C64>,
    pub a_dag: Matrix4<C64>,
    pub b_dag: Matrix4<C64>,
}

pub fn ladder_matrices() -> Ladder {
    let one = c(1.0, 0.0);
    let mut a = Matrix4::zeros();
    a[(VACUUM, ELECTRON)] = one;
    a[(POSITRON, PAIR)] = one;
    let mut b_dag = Matrix4::zeros();
    b_dag[(POSITRON, VACUUM)] = one;
    // b† a†|0⟩ = −a† b†|0⟩
    b_dag[(PAIR, ELECTRON)] = -one;
    Ladder { a, b: b_dag.adjoint(), a_dag: a.adjoint(), b_dag }
}

/// The four generators `[G0, G1, G2, G3]`.
pub fn generators() -> [Matrix4<C64>; 4] {
    let Ladder { a, b, a_dag, b_dag } = ladder_matrices();
    let na = a_dag * a;
    let nb = b_dag * b;
    let ab = a * b;
    let ba_dag = b_dag * a_dag;
    [na - nb, ab + ba_dag, (ab - ba_dag) * I, -na - nb]
}

/// `ξ0 G0 + ξ·G`.
pub fn generator(params: &Su2Params) -> Matrix4<C64> {
    let [g0, g1, g2, g3] = generators();
    let [x1, x2, x3] = params.xi;
    g0 * c(params.xi0, 0.0) + g1 * c(x1, 0.0) + g2 * c(x2, 0.0) + g3 * c(x3, 0.0)
}

/// `exp(i(ξ0 G0 + ξ·G))` through the eigendecomposition of the Hermitian
/// generator.
pub fn u_hat_exponential(params: &Su2Params) -> FockOperator {
    let h = generator(params);
    let eig = SymmetricEigen::new(h);
    let phases = Matrix4::from_diagonal(&eig.eigenvalues.map(|l| (I * l).exp()));
    FockOperator(eig.eigenvectors * phases * eig.eigenvectors.adjoint())
}

/// Normal-ordered closed form of the same unitary.
pub fn u_hat_closed_form(params: &Su2Params) -> FockOperator {
    let Ladder { a, b, a_dag, b_dag } = ladder_matrices();
    let [x1, x2, x3] = params.xi;
    let norm = params.xi_norm();
    let s = params.sinc();
    let na = a_dag * a;
    let nb = b_dag * b;
    let id = Matrix4::<C64>::identity();

    let empty = (id - na - nb) * c(norm.cos(), x3 * s);
    let single = na * (I * params.xi0).exp() + nb * (-I * params.xi0).exp();
    let pair = a_dag * b_dag * b * a * c(2.0 * (norm.cos() - params.xi0.cos()), 0.0);
    let mixing = (a * b * c(x1, x2) - a_dag * b_dag * c(x1, -x2)) * (I * s);

    FockOperator((empty + single + pair + mixing) * (-I * x3).exp())
}

/// Fock-space unitary implementing the Bogoliubov matrix `u`.
pub fn lift(u: &BogoliubovMatrix) -> Result<FockOperator> {
    Ok(u_hat_closed_form(&decompose(u)?))
}

/// Frobenius-norm mismatch between `u` acting on `(a, b†)` and the
/// conjugation `Û† (a, b†) Û`.
pub fn conjugation_check(u: &BogoliubovMatrix, u_hat: &FockOperator) -> f64 {
    let Ladder { a, b_dag, .. } = ladder_matrices();
    let uh = u_hat.0;
    let uh_dag = uh.adjoint();
    let row = |i: usize, op: &Matrix4<C64>| {
        let linear = a * u.get(i, 0) + b_dag * u.get(i, 1);
        (linear - uh_dag * op * uh).norm()
    };
    row(0, &a).max(row(1, &b_dag))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Probabilities {
    pub vacuum: f64,
    pub electron: f64,
    pub positron: f64,
    pub pair: f64,
}

impl Probabilities {
    pub fn total(&self) -> f64 {
        self.vacuum + self.electron + self.positron + self.pair
    }
}

pub fn probabilities(v: &FockVector) -> Result<Probabilities> {
    let deviation = (v.norm_sqr() - 1.0).abs();
    if deviation.is_nan() || deviation > NORMALIZATION_TOL {
        return Err(Error::NotNormalized { deviation });
    }
    let p = v.0.map(|z| z.norm_sqr());
    Ok(Probabilities { vacuum: p[VACUUM], electron: p[ELECTRON], positron: p[POSITRON], pair: p[PAIR] })
}
