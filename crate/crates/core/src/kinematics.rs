//! Free-particle kinematics and the Weyl-representation bispinors.
//!
//! Bispinor components follow the top-to-bottom order of the standard
//! chiral form used throughout the crate:
//!
//! ```text
//! u(p,+) = N [ K+pz,  px+ipy,  K-pz, -px-ipy ]
//! u(p,-) = N [ px-ipy, K-pz, -px+ipy,  K+pz ]
//! v(p,+) = N [ -K+pz, px+ipy,  K+pz,  px+ipy ]
//! v(p,-) = N [ px-ipy, -K-pz,  px-ipy, K-pz ]
//! ```
//!
//! with `E = sqrt(p^2 + m^2)`, `K = E + m` and `N = 1 / (2 sqrt(K E))`.
//! The four columns at a fixed momentum are orthonormal: `u(p,s)` spans
//! the positive-energy eigenspace of the free Dirac Hamiltonian at `p` and
//! `v(p,s)` the negative-energy one at the same `p`.

use std::fmt;
use std::str::FromStr;

use nalgebra::{Matrix2, Matrix4, Vector4};
use serde::{Deserialize, Serialize};

use crate::error::{check_finite, check_mass, Error, Result};
use crate::linalg::{block2x2, c, pauli, C64};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Spin {
    #[serde(rename = "+")]
    Up,
    #[serde(rename = "-")]
    Down,
}

impl Spin {
    pub const BOTH: [Spin; 2] = [Spin::Up, Spin::Down];

    /// Position of the `a(s)` entry in the `(a(+), a(-), b†(+), b†(-))` basis.
    pub fn index(self) -> usize {
        match self {
            Spin::Up => 0,
            Spin::Down => 1,
        }
    }
}

impl fmt::Display for Spin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Spin::Up => "+",
            Spin::Down => "-",
        })
    }
}

impl FromStr for Spin {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "+" | "up" | "plus" => Ok(Spin::Up),
            "-" | "down" | "minus" => Ok(Spin::Down),
            other => Err(Error::InvalidInput(format!("unknown spin label {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Momentum3 {
    pub px: f64,
    pub py: f64,
    pub pz: f64,
}

impl Momentum3 {
    pub fn new(px: f64, py: f64, pz: f64) -> Self {
        Momentum3 { px, py, pz }
    }

    pub fn longitudinal(pz: f64) -> Self {
        Momentum3 { px: 0.0, py: 0.0, pz }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.px * self.px + self.py * self.py + self.pz * self.pz
    }

    pub fn is_longitudinal(&self) -> bool {
        self.px == 0.0 && self.py == 0.0
    }

    /// Momentum after a kick `q` along z.
    pub fn kicked(&self, q: f64) -> Self {
        Momentum3 { pz: self.pz + q, ..*self }
    }

    pub fn neg(&self) -> Self {
        Momentum3::new(-self.px, -self.py, -self.pz)
    }

    fn validate(&self) -> Result<()> {
        check_finite("px", self.px)?;
        check_finite("py", self.py)?;
        check_finite("pz", self.pz)
    }
}

/// One longitudinal Dirac mode: mass, canonical momentum along the field
/// and spin.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModeContext {
    mass: f64,
    p: f64,
    spin: Spin,
}

impl ModeContext {
    pub fn new(mass: f64, p: f64, spin: Spin) -> Result<Self> {
        check_mass(mass)?;
        check_finite("p", p)?;
        Ok(ModeContext { mass, p, spin })
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn spin(&self) -> Spin {
        self.spin
    }

    pub fn energy(&self) -> f64 {
        on_shell(self.mass, self.p * self.p)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BispinorKind {
    U,
    V,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bispinor(pub(crate) Vector4<C64>);

impl Bispinor {
    pub fn from_components(components: [C64; 4]) -> Self {
        Bispinor(Vector4::from(components))
    }

    pub fn components(&self) -> [C64; 4] {
        [self.0[0], self.0[1], self.0[2], self.0[3]]
    }

    pub fn as_vector(&self) -> &Vector4<C64> {
        &self.0
    }

    /// Hermitian inner product, antilinear in `self`: `self† · other`.
    pub fn inner(&self, other: &Bispinor) -> C64 {
        self.0.dotc(&other.0)
    }

    pub fn norm(&self) -> f64 {
        self.0.norm()
    }
}

#[inline]
pub(crate) fn on_shell(mass: f64, p_sqr: f64) -> f64 {
    (p_sqr + mass * mass).sqrt()
}

pub fn energy(mass: f64, p: &Momentum3) -> Result<f64> {
    check_mass(mass)?;
    p.validate()?;
    Ok(on_shell(mass, p.norm_sqr()))
}

fn prefactors(mass: f64, p: &Momentum3) -> Result<(f64, f64)> {
    let e = energy(mass, p)?;
    let k = e + mass;
    Ok((k, 0.5 / (k * e).sqrt()))
}

pub fn bispinor_u(mass: f64, p: &Momentum3, spin: Spin) -> Result<Bispinor> {
    let (k, n) = prefactors(mass, p)?;
    let Momentum3 { px, py, pz } = *p;
    let comps = match spin {
        Spin::Up => [c(k + pz, 0.0), c(px, py), c(k - pz, 0.0), c(-px, -py)],
        Spin::Down => [c(px, -py), c(k - pz, 0.0), c(-px, py), c(k + pz, 0.0)],
    };
    Ok(Bispinor::from_components(comps.map(|z| z * n)))
}

pub fn bispinor_v(mass: f64, p: &Momentum3, spin: Spin) -> Result<Bispinor> {
    let (k, n) = prefactors(mass, p)?;
    let Momentum3 { px, py, pz } = *p;
    let comps = match spin {
        Spin::Up => [c(-k + pz, 0.0), c(px, py), c(k + pz, 0.0), c(px, py)],
        Spin::Down => [c(px, -py), c(-k - pz, 0.0), c(px, -py), c(k - pz, 0.0)],
    };
    Ok(Bispinor::from_components(comps.map(|z| z * n)))
}

/// The four bispinors at one momentum as matrix columns, ordered
/// `(u(+), u(-), v(+), v(-))`.
pub fn bispinor_basis(mass: f64, p: &Momentum3) -> Result<Matrix4<C64>> {
    let cols = [
        bispinor_u(mass, p, Spin::Up)?,
        bispinor_u(mass, p, Spin::Down)?,
        bispinor_v(mass, p, Spin::Up)?,
        bispinor_v(mass, p, Spin::Down)?,
    ];
    Ok(Matrix4::from_columns(&cols.map(|b| b.0)))
}

/// Chiral gamma matrices `[γ⁰, γ¹, γ², γ³]` with
/// `γ⁰ = [[0, I], [I, 0]]` and `γⁱ = [[0, -σⁱ], [σⁱ, 0]]`.
pub fn gamma_matrices() -> [Matrix4<C64>; 4] {
    let id = Matrix2::<C64>::identity();
    let zero = Matrix2::<C64>::zeros();
    let [s1, s2, s3] = pauli();
    let spatial = |s: Matrix2<C64>| block2x2(&zero, &(-s), &s, &zero);
    [block2x2(&zero, &id, &id, &zero), spatial(s1), spatial(s2), spatial(s3)]
}

/// Norm of the momentum-space Dirac operator applied to `b`.
///
/// For `u` columns the operator is `γ⁰E − γ·p − m`. The `v(p)` columns
/// carry the same spatial phase `e^{ip·r}` as `u(p)` but negative
/// frequency, so they are annihilated by `γ⁰E + γ·p + m`.
pub fn dirac_residual(b: &Bispinor, kind: BispinorKind, mass: f64, p: &Momentum3) -> f64 {
    let e = on_shell(mass, p.norm_sqr());
    let [g0, g1, g2, g3] = gamma_matrices();
    let gp = g1 * c(p.px, 0.0) + g2 * c(p.py, 0.0) + g3 * c(p.pz, 0.0);
    let id = Matrix4::<C64>::identity();
    let op = match kind {
        BispinorKind::U => g0 * c(e, 0.0) - gp - id * c(mass, 0.0),
        BispinorKind::V => g0 * c(e, 0.0) + gp + id * c(mass, 0.0),
    };
    (op * b.0).norm()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn energy_examples() {
        assert_eq!(energy(1.0, &Momentum3::default()).unwrap(), 1.0);
        let e = energy(1.0, &Momentum3::longitudinal(2.618034)).unwrap();
        assert_abs_diff_eq!(e, 2.802517, epsilon = 5e-7);
        let e = energy(0.5, &Momentum3::longitudinal(0.5)).unwrap();
        assert_abs_diff_eq!(e, std::f64::consts::FRAC_1_SQRT_2, epsilon = 1e-15);
    }

    #[test]
    fn energy_rejects_bad_input() {
        assert!(energy(0.0, &Momentum3::default()).is_err());
        assert!(energy(-1.0, &Momentum3::default()).is_err());
        assert!(energy(1.0, &Momentum3::new(f64::NAN, 0.0, 0.0)).is_err());
        assert!(energy(1.0, &Momentum3::longitudinal(f64::INFINITY)).is_err());
    }

    #[test]
    fn rest_frame_columns() {
        let u = bispinor_u(1.0, &Momentum3::default(), Spin::Up).unwrap();
        let v = bispinor_v(1.0, &Momentum3::default(), Spin::Up).unwrap();
        let h = FRAC_1_SQRT_2;
        let expect_u = [h, 0.0, h, 0.0];
        let expect_v = [-h, 0.0, h, 0.0];
        for i in 0..4 {
            assert_abs_diff_eq!(u.components()[i].re, expect_u[i], epsilon = 1e-15);
            assert_abs_diff_eq!(v.components()[i].re, expect_v[i], epsilon = 1e-15);
            assert_eq!(u.components()[i].im, 0.0);
        }
    }

    #[test]
    fn moving_u_plus_matches_direct_evaluation() {
        let u = bispinor_u(1.0, &Momentum3::longitudinal(1.0), Spin::Up).unwrap();
        let e = 2f64.sqrt();
        let k = 1.0 + e;
        let n = 1.0 / (2.0 * (k * e).sqrt());
        let expect = [(k + 1.0) * n, 0.0, (k - 1.0) * n, 0.0];
        for (z, x) in u.components().iter().zip(expect) {
            assert_abs_diff_eq!(z.re, x, epsilon = 1e-15);
        }
        assert_abs_diff_eq!(u.norm(), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn trap_momentum_v_is_unit() {
        let v = bispinor_v(1.0, &Momentum3::longitudinal(-0.381966), Spin::Up).unwrap();
        assert_abs_diff_eq!(v.norm(), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn u_v_orthogonal_at_same_momentum() {
        let p = Momentum3::new(0.3, -1.2, 0.7);
        for s in Spin::BOTH {
            for t in Spin::BOTH {
                let u = bispinor_u(1.4, &p, s).unwrap();
                let v = bispinor_v(1.4, &p, t).unwrap();
                assert!(u.inner(&v).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn residual_examples() {
        let rest = Momentum3::default();
        let u = bispinor_u(1.0, &rest, Spin::Up).unwrap();
        assert!(dirac_residual(&u, BispinorKind::U, 1.0, &rest) < 1e-15);

        let p = Momentum3::longitudinal(1.0);
        let v = bispinor_v(1.0, &p, Spin::Down).unwrap();
        assert!(dirac_residual(&v, BispinorKind::V, 1.0, &p) < 1e-14);

        let mut comps = u.components();
        comps[0] = -comps[0];
        let broken = Bispinor::from_components(comps);
        assert!(dirac_residual(&broken, BispinorKind::U, 1.0, &rest) > 0.1);
    }

    #[test]
    fn residual_distinguishes_kinds() {
        let p = Momentum3::new(0.2, 0.4, -0.9);
        let u = bispinor_u(1.0, &p, Spin::Up).unwrap();
        assert!(dirac_residual(&u, BispinorKind::V, 1.0, &p) > 0.1);
    }

    #[test]
    fn spin_labels_round_trip() {
        for s in Spin::BOTH {
            assert_eq!(s.to_string().parse::<Spin>().unwrap(), s);
        }
        assert!("x".parse::<Spin>().is_err());
    }

    #[test]
    fn mode_context_validates() {
        assert!(ModeContext::new(1.0, -3.0, Spin::Up).is_ok());
        assert!(ModeContext::new(0.0, 1.0, Spin::Up).is_err());
        assert!(ModeContext::new(1.0, f64::NAN, Spin::Down).is_err());
        let m = ModeContext::new(1.0, 0.0, Spin::Down).unwrap();
        assert_eq!(m.energy(), 1.0);
    }
}
