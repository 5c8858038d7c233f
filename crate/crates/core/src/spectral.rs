//! Characteristic polynomials, eigenvalues, the Konno–Sato factorization of
//! the Grover walk and periodicity analysis.

use nalgebra::{DMatrix, Schur, SymmetricEigen};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::graph::{Multigraph, SymmetricDigraph};
use crate::linalg::{c, matrix_power, max_abs_diff, rationalize, unitarity_residual, CMatrix};
use crate::poly::{self, CyclotomicFactorization};
use crate::walk::{self, Provenance, TransitionMatrix};

pub const DEFAULT_N_MAX: u64 = 720;
pub const DEFAULT_TOL: f64 = 1e-8;
/// Residual bound for accepting ‖U^k − I‖ as zero.
pub const PERIOD_VERIFY_TOL: f64 = 1e-8;

/// det(λI − M), coefficients ascending in λ.
#[derive(Debug, Clone, PartialEq)]
pub struct CharPoly {
    coeffs: Vec<Complex64>,
    exact: Option<Vec<BigRational>>,
}

impl CharPoly {
    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Rational coefficients, present when every entry of M was rational.
    pub fn exact(&self) -> Option<&[BigRational]> {
        self.exact.as_deref()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, x: Complex64) -> Complex64 {
        poly::eval(&self.coeffs, &x)
    }
}

pub fn char_poly(m: &CMatrix) -> Result<CharPoly> {
    if !m.is_square() {
        return Err(Error::input(format!("matrix is {}x{}, not square", m.nrows(), m.ncols())));
    }
    if let Some(rows) = rationalize(m) {
        let exact = poly::char_poly_rational(&rows);
        let coeffs = exact.iter().map(poly::rational_to_complex).collect();
        return Ok(CharPoly { coeffs, exact: Some(exact) });
    }
    let rows: Vec<Vec<Complex64>> = (0..m.nrows()).map(|i| m.row(i).iter().copied().collect()).collect();
    Ok(CharPoly { coeffs: poly::faddeev_leverrier(&rows), exact: None })
}

/// Characteristic polynomial of an exact rational matrix.
pub fn char_poly_exact(rows: &[Vec<BigRational>]) -> CharPoly {
    let exact = poly::char_poly_rational(rows);
    let coeffs = exact.iter().map(poly::rational_to_complex).collect();
    CharPoly { coeffs, exact: Some(exact) }
}

/// T_uv = |arc_uv| / deg(u), exact.
///
/// On simple graphs this is the usual 1/deg(u) at neighbours.
pub fn t_matrix_exact(g: &Multigraph) -> Result<Vec<Vec<BigRational>>> {
    let d = SymmetricDigraph::new(g.clone());
    d.require_no_isolated()?;
    let n = d.n_vertices();
    let mut rows = vec![vec![BigRational::zero(); n]; n];
    for a in d.arcs() {
        let deg = d.out_arcs(a.tail).len() as i64;
        rows[a.tail][a.head] += BigRational::new(1.into(), deg.into());
    }
    Ok(rows)
}

pub fn t_matrix(g: &Multigraph) -> Result<DMatrix<f64>> {
    let rows = t_matrix_exact(g)?;
    let n = rows.len();
    Ok(DMatrix::from_fn(n, n, |i, j| rows[i][j].to_f64().unwrap_or(f64::NAN)))
}

/// Eigenvalues of T, ascending. T is similar to the symmetric matrix
/// D^{-1/2} A D^{-1/2}, so they are real.
pub fn t_spectrum(g: &Multigraph) -> Result<Vec<f64>> {
    let t = t_matrix(g)?;
    let d = SymmetricDigraph::new(g.clone());
    let degs: Vec<f64> = d.degrees().into_iter().map(|x| x as f64).collect();
    let n = t.nrows();
    // A_uv = deg(u) T_uv
    let sym = DMatrix::from_fn(n, n, |i, j| t[(i, j)] * degs[i] / (degs[i] * degs[j]).sqrt());
    let mut mu: Vec<f64> = SymmetricEigen::new(sym).eigenvalues.iter().copied().collect();
    mu.sort_by(f64::total_cmp);
    Ok(mu)
}

/// The pair of roots of λ² − 2μλ + 1 contributed by one eigenvalue μ of T.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadraticFactor {
    pub mu: f64,
    pub roots: [Complex64; 2],
}

impl QuadraticFactor {
    pub fn new(mu: f64) -> Self {
        let s = (1.0 - mu * mu).max(0.0).sqrt();
        Self { mu, roots: [c(mu, s), c(mu, -s)] }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct KonnoSatoReport {
    pub n_vertices: usize,
    pub n_edges: usize,
    pub simple: bool,
    pub connected: bool,
    /// Hypothesis violations; when non-empty the comparison is informational.
    pub warnings: Vec<String>,
    /// m − n
    pub exponent: i64,
    /// det(λI − U_Gr), ascending.
    pub lhs: Vec<BigRational>,
    /// (λ² − 1)^{m−n} det((λ² + 1)I − 2λT), ascending; `None` when the
    /// division for m < n leaves a remainder.
    pub rhs: Option<Vec<BigRational>>,
    /// Largest coefficient difference in exact arithmetic.
    pub residual: f64,
    /// Same comparison with the left side computed in double precision.
    pub numeric_residual: f64,
    pub t_spectrum: Vec<f64>,
    pub quadratic_factors: Vec<QuadraticFactor>,
}

impl KonnoSatoReport {
    pub fn hypothesis_holds(&self) -> bool {
        self.warnings.is_empty()
    }
}

/// det(sI − 2λT) with s = λ² + 1, from q(x) = det(xI − T) = Σ q_j x^j:
/// Σ_j q_j (λ² + 1)^j (2λ)^{n−j}.
fn determinant_side(q: &[BigRational]) -> Vec<BigRational> {
    let n = q.len() - 1;
    let one = BigRational::one();
    let two = BigRational::from_integer(2.into());
    let s = vec![one.clone(), BigRational::zero(), one.clone()];
    let mut out = vec![BigRational::zero()];
    for (j, qj) in q.iter().enumerate() {
        if qj.is_zero() {
            continue;
        }
        let mut term = poly::pow(&s, j);
        let scale = qj * num_traits::pow(two.clone(), n - j);
        term = term.into_iter().map(|x| x * &scale).collect();
        // multiply by λ^{n−j}
        let mut shifted = vec![BigRational::zero(); n - j];
        shifted.extend(term);
        out = poly::add(&out, &shifted);
    }
    poly::trim(out)
}

/// Compares the characteristic polynomial of U_Gr against the Konno–Sato
/// right-hand side, exactly. Non-simple or disconnected inputs still run,
/// with warnings, using the multigraph T.
pub fn konno_sato_check(g: &Multigraph) -> Result<KonnoSatoReport> {
    let d = SymmetricDigraph::new(g.clone());
    d.require_no_isolated()?;
    let mut warnings = Vec::new();
    let simple = g.is_simple();
    let connected = g.is_connected();
    if !simple {
        warnings.push("graph is not simple; T uses arc multiplicities".to_string());
    }
    if !connected {
        warnings.push("graph is not connected".to_string());
    }
    let (n, m) = (g.n_vertices(), g.edge_count());
    let exponent = m as i64 - n as i64;

    let u_exact = walk::grover_transition_exact(&d)?;
    let lhs = poly::char_poly_rational(&u_exact);

    let q = poly::char_poly_rational(&t_matrix_exact(g)?);
    let det_side = determinant_side(&q);
    let one = BigRational::one();
    let trivial = vec![-one.clone(), BigRational::zero(), one];
    let trivial_pow = poly::pow(&trivial, exponent.unsigned_abs() as usize);
    let rhs = if exponent >= 0 {
        Some(poly::mul(&det_side, &trivial_pow))
    } else {
        let (quot, rem) = poly::div_rem(&det_side, &trivial_pow);
        rem.iter().all(Zero::is_zero).then_some(quot)
    };

    let (residual, numeric_residual) = match &rhs {
        Some(r) => {
            let u = grover_numeric(&d)?;
            let numeric = char_poly_numeric(&u);
            let rc: Vec<Complex64> = r.iter().map(poly::rational_to_complex).collect();
            (poly::max_abs_diff_exact(&lhs, r), coeff_diff(&numeric, &rc))
        }
        None => {
            warnings.push("(λ² − 1)^{n−m} does not divide the determinant side".to_string());
            (f64::INFINITY, f64::INFINITY)
        }
    };

    let t_spec = t_spectrum(g)?;
    let quadratic_factors = t_spec.iter().map(|&mu| QuadraticFactor::new(mu)).collect();
    Ok(KonnoSatoReport {
        n_vertices: n,
        n_edges: m,
        simple,
        connected,
        warnings,
        exponent,
        lhs,
        rhs,
        residual,
        numeric_residual,
        t_spectrum: t_spec,
        quadratic_factors,
    })
}

fn grover_numeric(d: &SymmetricDigraph) -> Result<CMatrix> {
    Ok(walk::grover_transition(d)?.matrix().clone())
}

/// Faddeev–LeVerrier in double precision regardless of entry type.
pub fn char_poly_numeric(m: &CMatrix) -> Vec<Complex64> {
    let rows: Vec<Vec<Complex64>> = (0..m.nrows()).map(|i| m.row(i).iter().copied().collect()).collect();
    poly::faddeev_leverrier(&rows)
}

fn coeff_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    let n = a.len().max(b.len());
    (0..n)
        .map(|k| {
            let x = a.get(k).copied().unwrap_or_default();
            let y = b.get(k).copied().unwrap_or_default();
            (x - y).norm()
        })
        .fold(0.0, f64::max)
}

/// Eigenvalues sorted by argument then modulus.
///
/// Unitary input goes through [`normal_spectrum`]; anything else through a
/// complex Schur decomposition.
pub fn spectrum(m: &CMatrix) -> Result<Vec<Complex64>> {
    if !m.is_square() {
        return Err(Error::input(format!("matrix is {}x{}, not square", m.nrows(), m.ncols())));
    }
    if m.nrows() == 0 {
        return Ok(Vec::new());
    }
    let mut eigs = if unitarity_residual(m) < walk::UNITARY_TOL {
        normal_spectrum(m)?
    } else {
        let schur = Schur::try_new(m.clone(), f64::EPSILON, 10_000)
            .ok_or_else(|| Error::Numerical("Schur iteration did not converge".into()))?;
        schur.unpack().1.diagonal().iter().copied().collect()
    };
    if eigs.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::Numerical("eigenvalues are not finite".into()));
    }
    eigs.sort_by(|a, b| sort_key(a).partial_cmp(&sort_key(b)).expect("finite"));
    Ok(eigs)
}

/// Eigenvalues of a normal matrix from two Hermitian problems.
///
/// H = (M + M*)/2 and K = (M − M*)/2i commute. Eigenspaces of H are split by
/// K restricted to them, and each eigenvalue is the Rayleigh quotient w*Mw.
/// Unlike shifted QR this does not stall on large repeated eigenvalues such
/// as the ±1 blocks of Grover walks.
pub fn normal_spectrum(m: &CMatrix) -> Result<Vec<Complex64>> {
    const CLUSTER_GAP: f64 = 1e-6;
    let adj = m.adjoint();
    let h = (m + &adj) * c(0.5, 0.0);
    let k = (m - &adj) * c(0.0, -0.5);
    let eig = SymmetricEigen::try_new(h, f64::EPSILON, 0)
        .ok_or_else(|| Error::Numerical("Hermitian eigen-iteration did not converge".into()))?;
    let mut order: Vec<usize> = (0..m.nrows()).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let mut out = Vec::with_capacity(m.nrows());
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && eig.eigenvalues[order[end]] - eig.eigenvalues[order[end - 1]] < CLUSTER_GAP {
            end += 1;
        }
        let v = CMatrix::from_fn(m.nrows(), end - start, |r, col| eig.eigenvectors[(r, order[start + col])]);
        let b = v.adjoint() * &k * &v;
        let inner = SymmetricEigen::try_new(b, f64::EPSILON, 0)
            .ok_or_else(|| Error::Numerical("Hermitian eigen-iteration did not converge".into()))?;
        let w = &v * inner.eigenvectors;
        for col in w.column_iter() {
            out.push((col.adjoint() * m * col)[(0, 0)]);
        }
        start = end;
    }
    Ok(out)
}

fn sort_key(z: &Complex64) -> (f64, f64) {
    // Fold arguments within 1e-12 of −π onto π so −1 sorts consistently.
    let mut arg = z.arg();
    if arg < -std::f64::consts::PI + 1e-12 {
        arg = std::f64::consts::PI;
    }
    (arg, z.norm())
}

/// Smallest n ≤ n_max with |λⁿ − 1| < tol, per eigenvalue.
pub fn eigenvalue_orders(eigs: &[Complex64], n_max: u64, tol: f64) -> Vec<Option<u64>> {
    eigs.iter()
        .map(|&lambda| {
            let mut z = Complex64::one();
            (1..=n_max).find(|_| {
                z *= lambda;
                (z - Complex64::one()).norm() < tol
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct Periodicity {
    pub periodic: bool,
    pub period: Option<u64>,
    pub orders: Vec<Option<u64>>,
    pub n_max: u64,
    pub tol: f64,
    /// ‖U^period − I‖_max when a candidate period was tested.
    pub verification_residual: Option<f64>,
}

/// Period as the LCM of eigenvalue orders, confirmed by a matrix power.
pub fn periodicity(u: &CMatrix, eigs: &[Complex64], n_max: u64, tol: f64) -> Periodicity {
    let orders = eigenvalue_orders(eigs, n_max, tol);
    let candidate = orders.iter().try_fold(1u64, |l, o| {
        let n = (*o)?;
        let g = num_integer::gcd(l, n);
        (l / g).checked_mul(n)
    });
    let verification_residual = candidate.map(|k| {
        let id = CMatrix::identity(u.nrows(), u.ncols());
        max_abs_diff(&matrix_power(u, k), &id)
    });
    let periodic = verification_residual.is_some_and(|r| r < PERIOD_VERIFY_TOL);
    Periodicity {
        periodic,
        period: if periodic { candidate } else { None },
        orders,
        n_max,
        tol,
        verification_residual,
    }
}

/// Exact root-of-unity test on a rational characteristic polynomial.
pub fn cyclotomic_verdict(cp: &CharPoly, n_max: u64) -> Option<CyclotomicFactorization> {
    cp.exact().map(|p| poly::cyclotomic_factorization(p, n_max))
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumReport {
    pub eigenvalues: Vec<Complex64>,
    pub char_poly: CharPoly,
    /// Present for Grover walks only.
    pub konno_sato: Option<KonnoSatoReport>,
    pub periodicity: Periodicity,
    pub cyclotomic: Option<CyclotomicFactorization>,
}

impl SpectrumReport {
    /// Numeric and exact verdicts, combined: when the exact test is
    /// available it decides.
    pub fn is_periodic(&self) -> bool {
        match &self.cyclotomic {
            Some(f) => f.all_roots_of_unity(),
            None => self.periodicity.periodic,
        }
    }
}

pub fn spectrum_report(
    d: &SymmetricDigraph,
    u: &TransitionMatrix,
    n_max: u64,
    tol: f64,
) -> Result<SpectrumReport> {
    let eigenvalues = spectrum(u.matrix())?;
    let cp = char_poly(u.matrix())?;
    let konno_sato = match u.provenance() {
        Provenance::Grover => Some(konno_sato_check(d.graph())?),
        _ => None,
    };
    let periodicity = periodicity(u.matrix(), &eigenvalues, n_max, tol);
    let cyclotomic = cyclotomic_verdict(&cp, n_max);
    Ok(SpectrumReport { eigenvalues, char_poly: cp, konno_sato, periodicity, cyclotomic })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn ints(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| q(x, 1)).collect()
    }

    fn grover(g: Multigraph) -> (SymmetricDigraph, TransitionMatrix) {
        let d = SymmetricDigraph::new(g);
        let u = walk::grover_transition(&d).unwrap();
        (d, u)
    }

    #[test]
    fn small_char_polys() {
        let id = CMatrix::identity(2, 2);
        assert_eq!(char_poly(&id).unwrap().exact().unwrap(), ints(&[1, -2, 1]).as_slice());
        let flip = CMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]);
        assert_eq!(char_poly(&flip).unwrap().exact().unwrap(), ints(&[-1, 0, 1]).as_slice());
        assert!(char_poly(&CMatrix::zeros(2, 3)).is_err());
        let rot = CMatrix::from_row_slice(1, 1, &[c(0.0, 1.0)]);
        let cp = char_poly(&rot).unwrap();
        assert!(cp.exact().is_none());
        assert_eq!(cp.coeffs(), &[c(0.0, -1.0), c(1.0, 0.0)]);
    }

    #[test]
    fn triangle_grover_char_poly() {
        let (_, u) = grover(families::cycle(3));
        let cp = char_poly(u.matrix()).unwrap();
        // (λ − 1)² (λ² + λ + 1)²
        let expected = poly::mul(&poly::pow(&ints(&[-1, 1]), 2), &poly::pow(&ints(&[1, 1, 1]), 2));
        assert_eq!(cp.exact().unwrap(), expected.as_slice());
        assert_eq!(cp.degree(), 6);
        let x = c(0.3, -0.7);
        let direct = (CMatrix::identity(6, 6) * x - u.matrix()).determinant();
        assert!((cp.eval(x) - direct).norm() < 1e-12);
    }

    #[test]
    fn t_matrices() {
        let t = t_matrix_exact(&families::cycle(3)).unwrap();
        assert_eq!(t[0], vec![q(0, 1), q(1, 2), q(1, 2)]);
        let mu = t_spectrum(&families::cycle(3)).unwrap();
        assert!((mu[0] + 0.5).abs() < 1e-12 && (mu[1] + 0.5).abs() < 1e-12 && (mu[2] - 1.0).abs() < 1e-12);
        let mu = t_spectrum(&families::complete(4)).unwrap();
        for (m, e) in mu.iter().zip([-1.0 / 3.0, -1.0 / 3.0, -1.0 / 3.0, 1.0]) {
            assert!((m - e).abs() < 1e-12);
        }
        let t = t_matrix(&families::path(2)).unwrap();
        assert_eq!(t, DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0]));
        assert!(t_matrix(&Multigraph::new(3, vec![(0, 1)]).unwrap()).is_err());
        let multi = t_matrix_exact(&Multigraph::parse("0 1\n0 1\n1 1").unwrap()).unwrap();
        assert_eq!(multi, vec![vec![q(0, 1), q(1, 1)], vec![q(1, 2), q(1, 2)]]);
    }

    #[test]
    fn konno_sato_examples() {
        let r = konno_sato_check(&families::cycle(3)).unwrap();
        assert_eq!(r.exponent, 0);
        assert_eq!(r.residual, 0.0);
        assert!(r.numeric_residual < 1e-10);
        assert!(r.hypothesis_holds());

        let r = konno_sato_check(&families::complete(4)).unwrap();
        assert_eq!(r.exponent, 2);
        assert_eq!(r.residual, 0.0);
        assert!(r.numeric_residual < 1e-10);

        let r = konno_sato_check(&families::star(3)).unwrap();
        assert_eq!(r.exponent, -1);
        assert_eq!(r.rhs.as_deref(), Some(r.lhs.as_slice()));
        assert_eq!(r.residual, 0.0);
    }

    #[test]
    fn konno_sato_warns_outside_hypothesis() {
        let g = Multigraph::parse("0 1\n0 1\n1 2").unwrap();
        let r = konno_sato_check(&g).unwrap();
        assert!(!r.simple);
        assert!(!r.hypothesis_holds());
        let g = Multigraph::parse("0 1\n2 3").unwrap();
        let r = konno_sato_check(&g).unwrap();
        assert!(!r.connected);
    }

    #[test]
    fn spectra() {
        let (_, u) = grover(families::cycle(3));
        let eigs = spectrum(u.matrix()).unwrap();
        assert_eq!(eigs.len(), 6);
        let w = Complex64::from_polar(1.0, std::f64::consts::TAU / 3.0);
        for target in [c(1.0, 0.0), w, w.conj()] {
            assert_eq!(eigs.iter().filter(|z| (*z - target).norm() < 1e-7).count(), 2);
        }

        let d = SymmetricDigraph::new(families::cycle(5));
        let eigs = spectrum(&walk::shift_matrix(&d)).unwrap();
        assert_eq!(eigs.iter().filter(|z| (*z - c(1.0, 0.0)).norm() < 1e-9).count(), 5);
        assert_eq!(eigs.iter().filter(|z| (*z + c(1.0, 0.0)).norm() < 1e-9).count(), 5);

        let (_, u) = grover(families::complete(4));
        let eigs = spectrum(u.matrix()).unwrap();
        assert!(eigs.iter().all(|z| (z.norm() - 1.0).abs() < 1e-8));
        let quad = eigs.iter().filter(|z| (*z * *z + *z * (2.0 / 3.0) + 1.0).norm() < 1e-7).count();
        assert_eq!(quad, 6);
        let prod: Complex64 = eigs.iter().product();
        let cp = char_poly(u.matrix()).unwrap();
        assert!((prod - cp.coeffs()[0]).norm() < 1e-8);
    }

    #[test]
    fn periodicity_examples() {
        let (_, u) = grover(families::cycle(3));
        let eigs = spectrum(u.matrix()).unwrap();
        let p = periodicity(u.matrix(), &eigs, DEFAULT_N_MAX, DEFAULT_TOL);
        assert!(p.periodic);
        assert_eq!(p.period, Some(3));

        let (d, u) = grover(families::complete(4));
        let report = spectrum_report(&d, &u, DEFAULT_N_MAX, DEFAULT_TOL).unwrap();
        assert!(!report.periodicity.periodic);
        assert!(!report.is_periodic());
        let cyc = report.cyclotomic.as_ref().unwrap();
        assert!(!cyc.all_roots_of_unity());
        assert_eq!(cyc.remainder_degree, 6);
        assert!(report.konno_sato.as_ref().unwrap().residual < 1e-10);

        let id = CMatrix::identity(4, 4);
        let p = periodicity(&id, &spectrum(&id).unwrap(), DEFAULT_N_MAX, DEFAULT_TOL);
        assert_eq!(p.period, Some(1));
    }

    #[test]
    fn determinant_side_of_single_vertex_pair() {
        // K_2: T = [[0,1],[1,0]], q = x² − 1; det = (λ²+1)² − 4λ²
        let out = determinant_side(&ints(&[-1, 0, 1]));
        assert_eq!(out, ints(&[1, 0, -2, 0, 1]));
    }
}
