//! Small helpers shared by the fixed-size complex matrix code.

use nalgebra::{Complex, ComplexField, Matrix2, Matrix4, SMatrix};

pub type C64 = Complex<f64>;

pub(crate) const I: C64 = C64::new(0.0, 1.0);

pub(crate) fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Largest entrywise modulus of `a - b`.
pub fn max_abs_diff<const R: usize, const K: usize>(
    a: &SMatrix<C64, R, K>,
    b: &SMatrix<C64, R, K>,
) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, |m, d| if d.is_nan() || d > m { d } else { m })
}

/// max |U^dag U - I| over entries.
pub fn unitarity_deviation<const N: usize>(u: &SMatrix<C64, N, N>) -> f64 {
    let gram = u.adjoint() * u;
    max_abs_diff(&gram, &SMatrix::<C64, N, N>::identity())
}

pub(crate) fn pauli() -> [Matrix2<C64>; 3] {
    let (o, z) = (c(1.0, 0.0), c(0.0, 0.0));
    [
        Matrix2::new(z, o, o, z),
        Matrix2::new(z, -I, I, z),
        Matrix2::new(o, z, z, -o),
    ]
}

pub(crate) fn block2x2(
    a: &Matrix2<C64>,
    b: &Matrix2<C64>,
    c_: &Matrix2<C64>,
    d: &Matrix2<C64>,
) -> Matrix4<C64> {
    let mut m = Matrix4::zeros();
    m.fixed_view_mut::<2, 2>(0, 0).copy_from(a);
    m.fixed_view_mut::<2, 2>(0, 2).copy_from(b);
    m.fixed_view_mut::<2, 2>(2, 0).copy_from(c_);
    m.fixed_view_mut::<2, 2>(2, 2).copy_from(d);
    m
}
