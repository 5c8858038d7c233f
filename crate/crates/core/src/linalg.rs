//! Small dense-matrix helpers shared by the zeta, walk and spectral modules.

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_rational::BigRational;

use crate::poly::rational_from_f64;

pub type CMatrix = DMatrix<Complex64>;

/// Denominators up to this bound are recognised when rationalizing entries.
pub const MAX_RATIONAL_DENOMINATOR: i64 = 1_000_000;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    max_abs(&(a - b))
}

/// max(‖M*M − I‖_max, ‖MM* − I‖_max)
pub fn unitarity_residual(m: &CMatrix) -> f64 {
    let n = m.nrows();
    let id = CMatrix::identity(n, n);
    let adj = m.adjoint();
    max_abs(&(&adj * m - &id)).max(max_abs(&(m * &adj - &id)))
}

pub fn to_rows(m: &CMatrix) -> Vec<Vec<Complex64>> {
    (0..m.nrows()).map(|i| m.row(i).iter().copied().collect()).collect()
}

/// Exact rational entries when every entry is real and, up to a few ulps, a
/// small-denominator fraction.
pub fn rationalize(m: &CMatrix) -> Option<Vec<Vec<BigRational>>> {
    (0..m.nrows())
        .map(|i| {
            (0..m.ncols())
                .map(|j| {
                    let z = m[(i, j)];
                    if z.im != 0.0 {
                        return None;
                    }
                    rational_from_f64(z.re, MAX_RATIONAL_DENOMINATOR)
                })
                .collect()
        })
        .collect()
}

/// `‖U^k − I‖_max` for k = 1..=n.
pub fn power_residuals(u: &CMatrix, n: usize) -> Vec<f64> {
    let id = CMatrix::identity(u.nrows(), u.ncols());
    let mut p = id.clone();
    (1..=n)
        .map(|_| {
            p = u * &p;
            max_abs_diff(&p, &id)
        })
        .collect()
}

pub fn matrix_power(u: &CMatrix, k: u64) -> CMatrix {
    let mut result = CMatrix::identity(u.nrows(), u.ncols());
    let mut base = u.clone();
    let mut e = k;
    while e > 0 {
        if e & 1 == 1 {
            result = &result * &base;
        }
        base = &base * &base;
        e >>= 1;
    }
    result
}
