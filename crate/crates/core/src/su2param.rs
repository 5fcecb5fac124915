//! Four-parameter form of 2x2 unitaries:
//! `U = e^{iξ0} [cos|ξ| − i (ξ·σ) sin|ξ| / |ξ|]`.
//!
//! [`decompose`] picks a unique representative: `ξ0 = arg(det U) / 2` on
//! `(−π/2, π/2]` and `|ξ| ∈ [0, π]`. At `|ξ| = π` the direction is
//! arbitrary; the representative `ξ = (−π, 0, 0)` is returned.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{c, pauli, C64, I};
use crate::transfer::BogoliubovMatrix;

/// Inputs further than this from unitary are rejected by [`decompose`].
pub const UNITARITY_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Su2Params {
    pub xi0: f64,
    pub xi: [f64; 3],
}

impl Su2Params {
    pub fn new(xi0: f64, xi: [f64; 3]) -> Self {
        Su2Params { xi0, xi }
    }

    pub fn xi_norm(&self) -> f64 {
        let [a, b, c] = self.xi;
        (a * a + b * b + c * c).sqrt()
    }

    /// `sin|ξ| / |ξ|`, continuous at zero.
    pub(crate) fn sinc(&self) -> f64 {
        sinc(self.xi_norm())
    }
}

pub(crate) fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-5 {
        // Taylor to x^4; error below 1e-26 on this range.
        let x2 = x * x;
        1.0 - x2 / 6.0 + x2 * x2 / 120.0
    } else {
        x.sin() / x
    }
}

pub fn to_matrix(params: &Su2Params) -> BogoliubovMatrix {
    let norm = params.xi_norm();
    let s = params.sinc();
    let [s1, s2, s3] = pauli();
    let xs = s1 * c(params.xi[0], 0.0) + s2 * c(params.xi[1], 0.0) + s3 * c(params.xi[2], 0.0);
    let su2 = nalgebra::Matrix2::<C64>::identity() * c(norm.cos(), 0.0) - xs * (I * s);
    BogoliubovMatrix::from_matrix(su2 * (I * params.xi0).exp())
}

pub fn decompose(u: &BogoliubovMatrix) -> Result<Su2Params> {
    let deviation = u.unitarity_deviation();
    if deviation.is_nan() || deviation > UNITARITY_TOL {
        return Err(Error::NotUnitary { deviation });
    }
    let mut xi0 = u.determinant().arg() / 2.0;
    if xi0 <= -FRAC_PI_2 {
        xi0 += PI;
    }
    let v = u.matrix() * (-I * xi0).exp();
    let cos = 0.5 * (v[(0, 0)] + v[(1, 1)]).re;
    // i tr(V σ_k) / 2 = sin|ξ| ξ_k / |ξ|
    let sin_dir = [
        (0.5 * I * (v[(0, 1)] + v[(1, 0)])).re,
        (0.5 * I * I * (v[(0, 1)] - v[(1, 0)])).re,
        (0.5 * I * (v[(0, 0)] - v[(1, 1)])).re,
    ];
    let sin = sin_dir.iter().map(|x| x * x).sum::<f64>().sqrt();
    let xi = if sin == 0.0 {
        if cos >= 0.0 {
            [0.0; 3]
        } else {
            [-PI, 0.0, 0.0]
        }
    } else {
        let angle = sin.atan2(cos);
        sin_dir.map(|x| angle * x / sin)
    };
    Ok(Su2Params { xi0, xi })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_params_close(a: Su2Params, b: Su2Params, tol: f64) {
        assert!((a.xi0 - b.xi0).abs() < tol, "{a:?} vs {b:?}");
        for k in 0..3 {
            assert!((a.xi[k] - b.xi[k]).abs() < tol, "{a:?} vs {b:?}");
        }
    }

    #[test]
    fn identity_round_trip() {
        assert_eq!(to_matrix(&Su2Params::default()), BogoliubovMatrix::identity());
        assert_params_close(decompose(&BogoliubovMatrix::identity()).unwrap(), Su2Params::default(), 1e-15);
    }

    #[test]
    fn barrier_form() {
        let p = Su2Params::new(0.0, [-FRAC_PI_2, 0.0, 0.0]);
        let expect = BogoliubovMatrix::new(c(0.0, 0.0), I, I, c(0.0, 0.0));
        assert!(to_matrix(&p).max_abs_diff(&expect) < 1e-15);
        assert_params_close(decompose(&expect).unwrap(), p, 1e-15);
    }

    #[test]
    fn pure_phase() {
        let p = Su2Params::new(PI / 4.0, [0.0; 3]);
        let expect = BogoliubovMatrix::from_matrix(nalgebra::Matrix2::identity() * (I * (PI / 4.0)).exp());
        assert!(to_matrix(&p).max_abs_diff(&expect) < 1e-15);
        assert_params_close(decompose(&expect).unwrap(), p, 1e-15);
    }

    #[test]
    fn determinant_is_twice_phase() {
        let p = Su2Params::new(0.7, [0.3, -1.1, 0.4]);
        let d = to_matrix(&p).determinant();
        assert!((d - (I * 1.4).exp()).norm() < 1e-15);
    }

    #[test]
    fn antipodal_branch() {
        let minus = BogoliubovMatrix::from_matrix(-nalgebra::Matrix2::identity());
        // det(-I) = 1, so the phase stays 0 and |ξ| = π
        let p = decompose(&minus).unwrap();
        assert_params_close(p, Su2Params::new(0.0, [-PI, 0.0, 0.0]), 1e-15);
        assert!(to_matrix(&p).max_abs_diff(&minus) < 1e-15);
    }

    #[test]
    fn phase_branch_boundary() {
        // det = -1 sits on the cut; ξ0 must land on +π/2
        let u = BogoliubovMatrix::new(I, c(0.0, 0.0), c(0.0, 0.0), I);
        let p = decompose(&u).unwrap();
        assert!((p.xi0 - FRAC_PI_2).abs() < 1e-15);
        assert!(to_matrix(&p).max_abs_diff(&u) < 1e-15);
    }

    #[test]
    fn rejects_non_unitary() {
        let u = BogoliubovMatrix::new(c(1.0, 0.0), c(0.1, 0.0), c(0.0, 0.0), c(1.0, 0.0));
        assert!(matches!(decompose(&u), Err(Error::NotUnitary { .. })));
        let nan = BogoliubovMatrix::new(c(f64::NAN, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0));
        assert!(decompose(&nan).is_err());
    }

    #[test]
    fn small_angle_sinc() {
        for x in [0.0_f64, 1e-9, 1e-6, 9.9e-6, 1e-5, 1e-3] {
            let exact = if x == 0.0 { 1.0 } else { x.sin() / x };
            assert!((sinc(x) - exact).abs() < 1e-16);
        }
        let p = Su2Params::new(0.0, [1e-9, 0.0, 0.0]);
        assert!(to_matrix(&p).unitarity_deviation() < 1e-15);
    }
}
