//! Dense univariate polynomials (ascending coefficients) over a field, the
//! Faddeev–LeVerrier characteristic polynomial, and cyclotomic factoring.

use std::ops::Neg;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, Signed, ToPrimitive, Zero};

/// Coefficient field for the generic routines below.
pub trait Scalar: Num + Clone + Neg<Output = Self> + FromPrimitive {}

impl<T: Num + Clone + Neg<Output = T> + FromPrimitive> Scalar for T {}

/// Drops trailing (highest-degree) zeros, keeping at least one coefficient.
pub fn trim<T: Scalar>(mut p: Vec<T>) -> Vec<T> {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    if p.is_empty() {
        p.push(T::zero());
    }
    p
}

pub fn degree<T: Scalar>(p: &[T]) -> usize {
    p.iter().rposition(|c| !c.is_zero()).unwrap_or(0)
}

pub fn add<T: Scalar>(a: &[T], b: &[T]) -> Vec<T> {
    let n = a.len().max(b.len());
    let get = |p: &[T], i: usize| p.get(i).cloned().unwrap_or_else(T::zero);
    trim((0..n).map(|i| get(a, i) + get(b, i)).collect())
}

pub fn sub<T: Scalar>(a: &[T], b: &[T]) -> Vec<T> {
    let n = a.len().max(b.len());
    let get = |p: &[T], i: usize| p.get(i).cloned().unwrap_or_else(T::zero);
    trim((0..n).map(|i| get(a, i) - get(b, i)).collect())
}

pub fn mul<T: Scalar>(a: &[T], b: &[T]) -> Vec<T> {
    let mut out = vec![T::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].clone() + x.clone() * y.clone();
        }
    }
    trim(out)
}

pub fn pow<T: Scalar>(p: &[T], e: usize) -> Vec<T> {
    (0..e).fold(vec![T::one()], |acc, _| mul(&acc, p))
}

/// Quotient and remainder; `b` must have a non-zero leading coefficient.
pub fn div_rem<T: Scalar>(a: &[T], b: &[T]) -> (Vec<T>, Vec<T>) {
    let b = trim(b.to_vec());
    let db = degree(&b);
    let lead = b[db].clone();
    assert!(!lead.is_zero(), "division by the zero polynomial");
    let mut rem = trim(a.to_vec());
    if degree(&rem) < db || (rem.len() == 1 && rem[0].is_zero()) {
        return (vec![T::zero()], rem);
    }
    let mut quot = vec![T::zero(); degree(&rem) - db + 1];
    while !(rem.len() == 1 && rem[0].is_zero()) && degree(&rem) >= db {
        let dr = degree(&rem);
        let c = rem[dr].clone() / lead.clone();
        let shift = dr - db;
        for (i, bi) in b.iter().enumerate().take(db + 1) {
            rem[shift + i] = rem[shift + i].clone() - c.clone() * bi.clone();
        }
        // Force the cancelled leading term to an exact zero.
        rem[dr] = T::zero();
        quot[shift] = c;
        rem = trim(rem);
    }
    (trim(quot), rem)
}

/// Horner evaluation.
pub fn eval<T: Scalar>(p: &[T], x: &T) -> T {
    p.iter().rev().fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
}

/// Coefficients of det(λI − A), ascending, via the Faddeev–LeVerrier
/// recurrence: N_k = A N_{k−1} + c_{n−k+1} I, c_{n−k} = −tr(A N_k)/k.
///
/// Over the integers every division by k is exact.
pub fn faddeev_leverrier<T: Scalar>(a: &[Vec<T>]) -> Vec<T> {
    let n = a.len();
    let rows: Vec<Vec<(usize, T)>> = a
        .iter()
        .map(|r| r.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(l, x)| (l, x.clone())).collect())
        .collect();
    let mut coeffs = vec![T::zero(); n + 1];
    coeffs[n] = T::one();
    let mut acc: Vec<Vec<T>> = vec![vec![T::zero(); n]; n];
    for k in 1..=n {
        // acc <- A * acc + c_{n-k+1} I
        let mut next = vec![vec![T::zero(); n]; n];
        for (i, row) in rows.iter().enumerate() {
            let out = &mut next[i];
            for (l, ail) in row {
                for (o, x) in out.iter_mut().zip(&acc[*l]) {
                    if !x.is_zero() {
                        *o = o.clone() + ail.clone() * x.clone();
                    }
                }
            }
            out[i] = out[i].clone() + coeffs[n - k + 1].clone();
        }
        acc = next;
        // tr(A * acc)
        let mut tr = T::zero();
        for (i, row) in rows.iter().enumerate() {
            for (l, ail) in row {
                if !acc[*l][i].is_zero() {
                    tr = tr + ail.clone() * acc[*l][i].clone();
                }
            }
        }
        coeffs[n - k] = -(tr / T::from_usize(k).expect("small integer"));
    }
    coeffs
}

/// Exact characteristic polynomial of a rational matrix, computed on the
/// integer matrix B = L·A (L the lcm of all denominators) and rescaled:
/// c_j(A) = c_j(B) / L^{n−j}.
pub fn char_poly_rational(a: &[Vec<BigRational>]) -> Vec<BigRational> {
    let n = a.len();
    let l = a
        .iter()
        .flatten()
        .fold(BigInt::one(), |acc, x| num_integer::Integer::lcm(&acc, x.denom()));
    let b: Vec<Vec<BigInt>> = a
        .iter()
        .map(|r| r.iter().map(|x| (x * BigRational::from_integer(l.clone())).to_integer()).collect())
        .collect();
    let cb = faddeev_leverrier(&b);
    let mut scale = BigInt::one();
    let mut out = vec![BigRational::zero(); n + 1];
    for j in (0..=n).rev() {
        out[j] = BigRational::new(cb[j].clone(), scale.clone());
        scale *= &l;
    }
    out
}

/// Recovers `p/q` with `q <= max_den` when it reproduces `x` to within four ulps.
pub fn rational_from_f64(x: f64, max_den: i64) -> Option<BigRational> {
    if !x.is_finite() {
        return None;
    }
    if x == x.trunc() && x.abs() < 9.0e15 {
        return Some(BigRational::from_integer(BigInt::from(x as i64)));
    }
    // Continued-fraction convergents of |x|.
    let sign = if x < 0.0 { -1i64 } else { 1 };
    let target = x.abs();
    let (mut h_prev, mut h) = (0i64, 1i64);
    let (mut k_prev, mut k) = (1i64, 0i64);
    let mut rest = target;
    for _ in 0..64 {
        let a = rest.floor();
        if a > 9.0e15 {
            break;
        }
        let a = a as i64;
        let h_next = a.checked_mul(h)?.checked_add(h_prev)?;
        let k_next = a.checked_mul(k)?.checked_add(k_prev)?;
        if k_next > max_den {
            break;
        }
        (h_prev, h, k_prev, k) = (h, h_next, k, k_next);
        if ((h as f64) / (k as f64) - target).abs() <= 4.0 * f64::EPSILON * target {
            return Some(BigRational::new(BigInt::from(sign * h), BigInt::from(k)));
        }
        let frac = rest - a as f64;
        if frac == 0.0 {
            break;
        }
        rest = 1.0 / frac;
    }
    None
}

pub fn rational_to_complex(r: &BigRational) -> Complex64 {
    Complex64::new(r.to_f64().unwrap_or(f64::NAN), 0.0)
}

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

fn mobius(mut n: u64) -> i32 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

pub fn euler_phi(n: u64) -> u64 {
    (1..=n).filter(|&k| num_integer::gcd(k, n) == 1).count() as u64
}

/// Φ_n with integer coefficients, from Φ_n = ∏_{d|n} (x^d − 1)^{μ(n/d)}.
pub fn cyclotomic(n: u64) -> Vec<BigRational> {
    assert!(n >= 1);
    let one = BigRational::one();
    let mut num = vec![one.clone()];
    let mut den = vec![one.clone()];
    for d in divisors(n) {
        let mut factor = vec![BigRational::zero(); d as usize + 1];
        factor[0] = -one.clone();
        factor[d as usize] = one.clone();
        match mobius(n / d) {
            1 => num = mul(&num, &factor),
            -1 => den = mul(&den, &factor),
            _ => {}
        }
    }
    let (q, r) = div_rem(&num, &den);
    debug_assert!(r.iter().all(Zero::is_zero));
    q
}

/// Result of stripping cyclotomic factors from a rational polynomial.
#[derive(Debug, Clone, PartialEq)]
pub struct CyclotomicFactorization {
    /// `(n, multiplicity)` for every Φ_n dividing the polynomial, ascending in n.
    pub orders: Vec<(u64, usize)>,
    /// Degree of what remains after all cyclotomic factors with n <= n_max are removed.
    pub remainder_degree: usize,
}

impl CyclotomicFactorization {
    /// Every root is a root of unity of order at most `n_max`.
    pub fn all_roots_of_unity(&self) -> bool {
        self.remainder_degree == 0
    }

    /// LCM of the orders when every root is a root of unity.
    pub fn period(&self) -> Option<u64> {
        self.all_roots_of_unity()
            .then(|| self.orders.iter().fold(1u64, |l, &(n, _)| num_integer::lcm(l, n)))
    }
}

/// Exact cyclotomic factoring of `p` (ascending, rational) over Φ_1..Φ_{n_max}.
pub fn cyclotomic_factorization(p: &[BigRational], n_max: u64) -> CyclotomicFactorization {
    let mut rem = trim(p.to_vec());
    let mut orders = Vec::new();
    // Roots of unity are algebraic integers: a monic factor with a non-integer
    // coefficient cannot be a product of cyclotomic polynomials, but a
    // cyclotomic factor may still split off, so keep dividing.
    for n in 1..=n_max {
        let dr = degree(&rem);
        if dr == 0 {
            break;
        }
        if euler_phi(n) as usize > dr {
            continue;
        }
        let phi = cyclotomic(n);
        let mut mult = 0;
        loop {
            let (q, r) = div_rem(&rem, &phi);
            if r.iter().all(Zero::is_zero) {
                rem = q;
                mult += 1;
            } else {
                break;
            }
        }
        if mult > 0 {
            orders.push((n, mult));
        }
    }
    CyclotomicFactorization { orders, remainder_degree: degree(&rem) }
}

/// True when every coefficient is an integer.
pub fn has_integer_coefficients(p: &[BigRational]) -> bool {
    p.iter().all(|c| c.is_integer())
}

/// Largest |a_k − b_k| over two exact polynomials, as f64.
pub fn max_abs_diff_exact(a: &[BigRational], b: &[BigRational]) -> f64 {
    let d = sub(a, b);
    d.iter().map(|c| c.abs().to_f64().unwrap_or(f64::INFINITY)).fold(0.0, f64::max)
}
