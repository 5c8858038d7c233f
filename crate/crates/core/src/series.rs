//! Complex power series in `t`, truncated at a fixed order.

use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// `c_0 + c_1 t + ... + c_L t^L`; everything of degree above `L` is dropped.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries {
    coeffs: Vec<Complex64>,
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        Self { coeffs: vec![Complex64::new(0.0, 0.0); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = Complex64::new(1.0, 0.0);
        s
    }

    /// Truncates or zero-pads `coeffs` to `order`.
    pub fn from_coeffs(mut coeffs: Vec<Complex64>, order: usize) -> Self {
        coeffs.resize(order + 1, Complex64::new(0.0, 0.0));
        Self { coeffs }
    }

    /// `1 - c t^k`, the building block of the Euler product.
    pub fn one_minus_monomial(c: Complex64, k: usize, order: usize) -> Self {
        let mut s = Self::one(order);
        if k <= order {
            s.coeffs[k] -= c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or_default()
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self { coeffs: self.coeffs.iter().map(|&x| x * c).collect() }
    }

    /// Multiplicative inverse; needs a non-zero constant term.
    pub fn reciprocal(&self) -> Result<Self> {
        let c0 = self.coeffs[0];
        if c0 == Complex64::new(0.0, 0.0) {
            return Err(Error::Numerical("series with zero constant term has no reciprocal".into()));
        }
        let n = self.coeffs.len();
        let mut inv = vec![Complex64::new(0.0, 0.0); n];
        inv[0] = c0.inv();
        for k in 1..n {
            let s: Complex64 = (1..=k).map(|j| self.coeffs[j] * inv[k - j]).sum();
            inv[k] = -s * inv[0];
        }
        Ok(Self { coeffs: inv })
    }

    /// exp(f); the constant term contributes the factor exp(c_0).
    pub fn exp(&self) -> Self {
        let n = self.coeffs.len();
        let mut g = vec![Complex64::new(0.0, 0.0); n];
        g[0] = self.coeffs[0].exp();
        // g' = f' g  =>  k g_k = sum_{j=1}^k j f_j g_{k-j}
        for k in 1..n {
            let s: Complex64 = (1..=k).map(|j| self.coeffs[j] * g[k - j] * j as f64).sum();
            g[k] = s / k as f64;
        }
        Self { coeffs: g }
    }

    /// Principal log; needs a non-zero constant term.
    pub fn log(&self) -> Result<Self> {
        let g0 = self.coeffs[0];
        if g0 == Complex64::new(0.0, 0.0) {
            return Err(Error::Numerical("log of a series with zero constant term".into()));
        }
        let n = self.coeffs.len();
        let mut f = vec![Complex64::new(0.0, 0.0); n];
        f[0] = g0.ln();
        // g f' = g'  =>  k f_k g_0 = k g_k - sum_{j=1}^{k-1} j f_j g_{k-j}
        for k in 1..n {
            let s: Complex64 = (1..k).map(|j| f[j] * self.coeffs[k - j] * j as f64).sum();
            f[k] = (self.coeffs[k] * k as f64 - s) / (g0 * k as f64);
        }
        Ok(Self { coeffs: f })
    }

    /// Largest coefficientwise absolute difference.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n).map(|k| (self.coeff(k) - other.coeff(k)).norm()).fold(0.0, f64::max)
    }

    /// Largest difference scaled by `max(1, |a_k|, |b_k|)` per coefficient.
    pub fn max_scaled_diff(&self, other: &Self) -> f64 {
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n)
            .map(|k| {
                let (a, b) = (self.coeff(k), other.coeff(k));
                (a - b).norm() / 1f64.max(a.norm()).max(b.norm())
            })
            .fold(0.0, f64::max)
    }

    fn check_order(&self, other: &Self) {
        assert_eq!(self.order(), other.order(), "series orders differ");
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn add(self, rhs: Self) -> TruncatedSeries {
        self.check_order(rhs);
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect();
        TruncatedSeries { coeffs }
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn sub(self, rhs: Self) -> TruncatedSeries {
        self.check_order(rhs);
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect();
        TruncatedSeries { coeffs }
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn mul(self, rhs: Self) -> TruncatedSeries {
        self.check_order(rhs);
        let n = self.coeffs.len();
        let mut out = vec![Complex64::new(0.0, 0.0); n];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == Complex64::new(0.0, 0.0) {
                continue;
            }
            for (j, &b) in rhs.coeffs[..n - i].iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        TruncatedSeries { coeffs: out }
    }
}
