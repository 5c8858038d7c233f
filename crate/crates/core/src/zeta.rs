//! Weight schemes, edge matrices and the expressions of the generalized
//! weighted zeta function.
//!
//! The weight is θ(a, a′) = τ(a′)·[head(a) = tail(a′)] − υ(a′)·[a′ = ā]. It
//! satisfies the adjacency condition, so the exponential (closed-path sum),
//! Euler (cycle product) and Hashimoto (determinant) expressions coincide as
//! formal power series. The Ihara expression gives the reciprocal through a
//! vertex-sized determinant.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::cycles;
use crate::error::{Error, Result};
use crate::graph::SymmetricDigraph;
use crate::linalg::{c, CMatrix};
use crate::series::TruncatedSeries;
use crate::spectral;

/// Default truncation order of zeta series.
pub const DEFAULT_ORDER: usize = 8;
/// Default longest closed path that explicit enumeration will visit.
pub const DEFAULT_CYCLE_CAP: usize = 10;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    /// τ ≡ υ ≡ 1
    Ihara,
    /// υ(a) = (q − 1) τ(a)
    Bartholdi,
    /// τ = υ
    MizunoSato,
    /// υ ≡ 1
    Sato,
    /// υ ≡ 1, τ(a) = 2 / deg(tail(a))
    Grover,
    Custom,
}

impl Preset {
    pub fn name(self) -> &'static str {
        match self {
            Preset::Ihara => "ihara",
            Preset::Bartholdi => "bartholdi",
            Preset::MizunoSato => "mizuno_sato",
            Preset::Sato => "sato",
            Preset::Grover => "grover",
            Preset::Custom => "custom",
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "ihara" => Preset::Ihara,
            "bartholdi" => Preset::Bartholdi,
            "mizuno_sato" | "mizunosato" => Preset::MizunoSato,
            "sato" => Preset::Sato,
            "grover" => Preset::Grover,
            "custom" => Preset::Custom,
            other => return Err(Error::input(format!("unknown weight preset `{other}`"))),
        })
    }
}

/// Optional parameters for [`make_weights`].
#[derive(Debug, Clone, Default)]
pub struct WeightParams {
    pub q: Option<Complex64>,
    pub tau: Option<Vec<Complex64>>,
    pub upsilon: Option<Vec<Complex64>>,
}

/// Per-arc (τ, υ) pair, indexed by arc id.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightScheme {
    tau: Vec<Complex64>,
    upsilon: Vec<Complex64>,
    preset: Preset,
    q: Option<Complex64>,
}

impl WeightScheme {
    /// A custom scheme; both arrays must have one entry per arc.
    pub fn new(d: &SymmetricDigraph, tau: Vec<Complex64>, upsilon: Vec<Complex64>) -> Result<Self> {
        check_len(d, &tau, "tau")?;
        check_len(d, &upsilon, "upsilon")?;
        Ok(Self { tau, upsilon, preset: Preset::Custom, q: None })
    }

    pub(crate) fn tagged(tau: Vec<Complex64>, upsilon: Vec<Complex64>, preset: Preset) -> Self {
        Self { tau, upsilon, preset, q: None }
    }

    pub fn tau(&self) -> &[Complex64] {
        &self.tau
    }

    pub fn upsilon(&self) -> &[Complex64] {
        &self.upsilon
    }

    pub fn preset(&self) -> Preset {
        self.preset
    }

    pub fn q(&self) -> Option<Complex64> {
        self.q
    }

    pub fn len(&self) -> usize {
        self.tau.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tau.is_empty()
    }

    /// Drops the preset tag.
    pub fn into_custom(mut self) -> Self {
        self.preset = Preset::Custom;
        self.q = None;
        self
    }

    /// Whether υ ≡ 1, the Sato specialization.
    pub fn is_sato_form(&self, tol: f64) -> bool {
        self.upsilon.iter().all(|u| (u - ONE).norm() <= tol)
    }

    /// Checks the constraints implied by the preset tag.
    pub fn preset_holds(&self, d: &SymmetricDigraph, tol: f64) -> bool {
        let close = |a: Complex64, b: Complex64| (a - b).norm() <= tol;
        let pairs = || self.tau.iter().zip(&self.upsilon);
        match self.preset {
            Preset::Ihara => pairs().all(|(&t, &u)| close(t, ONE) && close(u, ONE)),
            Preset::Bartholdi => {
                let q = self.q.unwrap_or(ONE);
                pairs().all(|(&t, &u)| close(u, (q - ONE) * t))
            }
            Preset::MizunoSato => pairs().all(|(&t, &u)| close(t, u)),
            Preset::Sato => self.is_sato_form(tol),
            Preset::Grover => d.arcs().iter().all(|a| {
                let deg = d.out_arcs(a.tail).len() as f64;
                close(self.tau[a.id], c(2.0 / deg, 0.0)) && close(self.upsilon[a.id], ONE)
            }),
            Preset::Custom => true,
        }
    }
}

fn check_len(d: &SymmetricDigraph, v: &[Complex64], name: &str) -> Result<()> {
    if v.len() != d.arc_count() {
        return Err(Error::input(format!(
            "{name} has {} entries but the digraph has {} arcs",
            v.len(),
            d.arc_count()
        )));
    }
    Ok(())
}

/// Builds the weights of a named specialization.
///
/// Free τ arrays (Bartholdi, Mizuno–Sato, Sato) default to τ ≡ 1; Bartholdi
/// requires `q`, custom requires both arrays.
pub fn make_weights(d: &SymmetricDigraph, preset: Preset, params: &WeightParams) -> Result<WeightScheme> {
    let n = d.arc_count();
    let free_tau = || -> Result<Vec<Complex64>> {
        match &params.tau {
            Some(t) => {
                check_len(d, t, "tau")?;
                Ok(t.clone())
            }
            None => Ok(vec![ONE; n]),
        }
    };
    let (tau, upsilon) = match preset {
        Preset::Ihara => (vec![ONE; n], vec![ONE; n]),
        Preset::Bartholdi => {
            let q = params
                .q
                .ok_or_else(|| Error::input("bartholdi preset requires the parameter q"))?;
            let tau = free_tau()?;
            let upsilon = tau.iter().map(|&t| (q - ONE) * t).collect();
            let mut w = WeightScheme::tagged(tau, upsilon, preset);
            w.q = Some(q);
            return Ok(w);
        }
        Preset::MizunoSato => {
            let tau = free_tau()?;
            (tau.clone(), tau)
        }
        Preset::Sato => (free_tau()?, vec![ONE; n]),
        Preset::Grover => {
            let tau = d
                .arcs()
                .iter()
                .map(|a| c(2.0 / d.out_arcs(a.tail).len() as f64, 0.0))
                .collect();
            (tau, vec![ONE; n])
        }
        Preset::Custom => {
            let (Some(tau), Some(upsilon)) = (&params.tau, &params.upsilon) else {
                return Err(Error::input("custom preset requires both tau and upsilon arrays"));
            };
            return WeightScheme::new(d, tau.clone(), upsilon.clone());
        }
    };
    Ok(WeightScheme::tagged(tau, upsilon, preset))
}

/// θ(a, a′) = τ(a′)·[head(a) = tail(a′)] − υ(a′)·[a′ = ā]
pub fn theta(d: &SymmetricDigraph, w: &WeightScheme, a: usize, a2: usize) -> Complex64 {
    let mut v = ZERO;
    if d.arc(a).head == d.arc(a2).tail {
        v += w.tau[a2];
    }
    if d.mate(a) == a2 {
        v -= w.upsilon[a2];
    }
    v
}

/// M_θ, indexed by arcs.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeMatrix(CMatrix);

impl EdgeMatrix {
    pub fn matrix(&self) -> &CMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> CMatrix {
        self.0
    }

    pub fn entry(&self, a: usize, a2: usize) -> Complex64 {
        self.0[(a, a2)]
    }

    pub fn transpose(&self) -> CMatrix {
        self.0.transpose()
    }

    /// Every non-zero entry (a, a′) has head(a) = tail(a′).
    pub fn satisfies_adjacency_condition(&self, d: &SymmetricDigraph) -> bool {
        let n = self.0.nrows();
        (0..n).all(|a| {
            (0..n).all(|b| self.0[(a, b)] == ZERO || d.arc(a).head == d.arc(b).tail)
        })
    }
}

pub fn edge_matrix(d: &SymmetricDigraph, w: &WeightScheme) -> EdgeMatrix {
    let n = d.arc_count();
    EdgeMatrix(CMatrix::from_fn(n, n, |a, b| theta(d, w, a, b)))
}

/// Graph distance from every vertex to `target`.
fn distances_to(d: &SymmetricDigraph, target: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; d.n_vertices()];
    let mut queue = std::collections::VecDeque::from([target]);
    dist[target] = 0;
    while let Some(v) = queue.pop_front() {
        for &a in d.out_arcs(v) {
            let h = d.arc(a).head;
            if dist[h] == usize::MAX {
                dist[h] = dist[v] + 1;
                queue.push_back(h);
            }
        }
    }
    dist
}

/// Depth-first enumeration of closed paths rooted at `root` of length at
/// most `max_len`, calling `visit(path, circ_θ)` on each. Branches that are
/// too far from `tail(root)` to close in time, or whose product is zero,
/// are pruned.
fn weighted_closed_walks<A, V>(
    d: &SymmetricDigraph,
    w: &WeightScheme,
    root: usize,
    max_len: usize,
    allow: A,
    mut visit: V,
) where
    A: Fn(usize) -> bool,
    V: FnMut(&[usize], Complex64),
{
    let start = d.arc(root).tail;
    let dist = distances_to(d, start);
    let close = |path: &[usize], prod: Complex64, visit: &mut V| {
        let last = path[path.len() - 1];
        if d.arc(last).head == start {
            let circ = prod * theta(d, w, last, root);
            if circ != ZERO {
                visit(path, circ);
            }
        }
    };
    let mut path = vec![root];
    let mut products = vec![ONE];
    let mut cursors = vec![0usize];
    if dist[d.arc(root).head] > max_len - 1 {
        return;
    }
    close(&path, ONE, &mut visit);
    while let Some(&cursor) = cursors.last() {
        let last = *path.last().expect("path mirrors cursors");
        let options = d.out_arcs(d.arc(last).head);
        if path.len() >= max_len || cursor >= options.len() {
            cursors.pop();
            path.pop();
            products.pop();
            continue;
        }
        *cursors.last_mut().expect("non-empty") += 1;
        let next = options[cursor];
        if !allow(next) || dist[d.arc(next).head] > max_len - path.len() - 1 {
            continue;
        }
        let step = theta(d, w, last, next);
        if step == ZERO {
            continue;
        }
        let prod = products.last().expect("non-empty") * step;
        path.push(next);
        products.push(prod);
        cursors.push(0);
        close(&path, prod, &mut visit);
    }
}

fn check_order(order: usize, cap: usize) -> Result<()> {
    if order == 0 {
        return Err(Error::input("series order must be at least 1"));
    }
    if order > cap {
        return Err(Error::Resource(format!(
            "order {order} exceeds the closed-path enumeration cap {cap}"
        )));
    }
    Ok(())
}

/// N_k(circ_θ) = Σ_{C ∈ X_k} circ_θ(C) for k = 1..=max_len (entry k−1),
/// by explicit enumeration of rooted closed paths.
pub fn closed_path_sums(d: &SymmetricDigraph, w: &WeightScheme, max_len: usize) -> Vec<Complex64> {
    let mut sums = vec![ZERO; max_len];
    if max_len == 0 {
        return sums;
    }
    for root in 0..d.arc_count() {
        weighted_closed_walks(d, w, root, max_len, |_| true, |p, circ| sums[p.len() - 1] += circ);
    }
    sums
}

/// Z = exp(Σ_k N_k t^k / k), truncated at `order`.
pub fn zeta_exponential(d: &SymmetricDigraph, w: &WeightScheme, order: usize) -> Result<TruncatedSeries> {
    zeta_exponential_capped(d, w, order, DEFAULT_CYCLE_CAP)
}

pub fn zeta_exponential_capped(
    d: &SymmetricDigraph,
    w: &WeightScheme,
    order: usize,
    cap: usize,
) -> Result<TruncatedSeries> {
    check_order(order, cap)?;
    let sums = closed_path_sums(d, w, order);
    let mut log = vec![ZERO; order + 1];
    for (k, n_k) in sums.into_iter().enumerate() {
        log[k + 1] = n_k / (k + 1) as f64;
    }
    Ok(TruncatedSeries::from_coeffs(log, order).exp())
}

/// Calls `f(cycle, circ_θ)` for every rotation class of primitive closed
/// paths up to `max_len` with non-zero circular product.
pub fn for_each_weighted_cycle<F>(d: &SymmetricDigraph, w: &WeightScheme, max_len: usize, mut f: F)
where
    F: FnMut(&[usize], Complex64),
{
    if max_len == 0 {
        return;
    }
    for root in 0..d.arc_count() {
        weighted_closed_walks(d, w, root, max_len, |a| a >= root, |p, circ| {
            // The minimal rotation of a primitive class is a Lyndon word.
            if cycles::is_lyndon(p) {
                f(p, circ);
            }
        });
    }
}

/// E = Π_{[C]} (1 − circ_θ(C) t^{|C|})^{-1} over primitive cycle classes with
/// |C| ≤ order. Classes with backtracking are included; for weights where
/// θ(a, ā) = 0 they contribute the factor 1 and the product runs over prime
/// cycles only.
pub fn zeta_euler(d: &SymmetricDigraph, w: &WeightScheme, order: usize) -> Result<TruncatedSeries> {
    zeta_euler_capped(d, w, order, DEFAULT_CYCLE_CAP)
}

pub fn zeta_euler_capped(
    d: &SymmetricDigraph,
    w: &WeightScheme,
    order: usize,
    cap: usize,
) -> Result<TruncatedSeries> {
    check_order(order, cap)?;
    let mut coeffs = vec![ZERO; order + 1];
    coeffs[0] = ONE;
    for_each_weighted_cycle(d, w, order, |p, circ| {
        // s <- s / (1 − circ t^k):  s_n += circ · s_{n−k}, ascending in n.
        let k = p.len();
        for n in k..=order {
            let prev = coeffs[n - k];
            coeffs[n] += circ * prev;
        }
    });
    Ok(TruncatedSeries::from_coeffs(coeffs, order))
}

/// Coefficients of det(I − tM_θ) in ascending powers of t: the characteristic
/// polynomial of M_θ read from the top.
pub fn reciprocal_hashimoto_coeffs(d: &SymmetricDigraph, w: &WeightScheme) -> Vec<Complex64> {
    let cp = spectral::char_poly(edge_matrix(d, w).matrix()).expect("edge matrix is square");
    cp.coeffs().iter().rev().copied().collect()
}

/// H = 1 / det(I − tM_θ), truncated at `order`.
pub fn zeta_hashimoto(d: &SymmetricDigraph, w: &WeightScheme, order: usize) -> Result<TruncatedSeries> {
    if order == 0 {
        return Err(Error::input("series order must be at least 1"));
    }
    TruncatedSeries::from_coeffs(reciprocal_hashimoto_coeffs(d, w), order).reciprocal()
}

/// det(I − tM_θ) by LU factorization at a single point.
pub fn hashimoto_determinant(d: &SymmetricDigraph, w: &WeightScheme, t: Complex64) -> Complex64 {
    let m = edge_matrix(d, w).into_matrix();
    let n = m.nrows();
    (CMatrix::identity(n, n) - m * t).determinant()
}

/// 1 − t² υ(a_e) υ(ā_e) for every edge, erroring at a pole.
fn edge_denominators(d: &SymmetricDigraph, w: &WeightScheme, t: Complex64) -> Result<Vec<Complex64>> {
    (0..d.graph().edge_count())
        .map(|e| {
            let (a, b) = (2 * e, 2 * e + 1);
            let den = ONE - t * t * w.upsilon[a] * w.upsilon[b];
            if den.norm() <= 1e-14 {
                Err(Error::Singularity { edge: e, t })
            } else {
                Ok(den)
            }
        })
        .collect()
}

/// A_θ: A_uv = Σ_{a ∈ arc_uv} τ(a) / (1 − t² υ(a) υ(ā)).
pub fn weighted_adjacency(d: &SymmetricDigraph, w: &WeightScheme, t: Complex64) -> Result<CMatrix> {
    let dens = edge_denominators(d, w, t)?;
    let n = d.n_vertices();
    let mut m = CMatrix::zeros(n, n);
    for a in d.arcs() {
        m[(a.tail, a.head)] += w.tau[a.id] / dens[a.edge];
    }
    Ok(m)
}

/// D_θ: diagonal, D_uu = Σ_{a ∈ arc_u*} τ(a) υ(ā) / (1 − t² υ(a) υ(ā)).
pub fn weighted_degree(d: &SymmetricDigraph, w: &WeightScheme, t: Complex64) -> Result<CMatrix> {
    let dens = edge_denominators(d, w, t)?;
    let n = d.n_vertices();
    let mut m = CMatrix::zeros(n, n);
    for a in d.arcs() {
        m[(a.tail, a.tail)] += w.tau[a.id] * w.upsilon[a.mate] / dens[a.edge];
    }
    Ok(m)
}

/// The reciprocal zeta value Π_e (1 − t² υ(a_e) υ(ā_e)) · det(I − tA_θ + t²D_θ).
pub fn zeta_ihara_expression(d: &SymmetricDigraph, w: &WeightScheme, t: Complex64) -> Result<Complex64> {
    let dens = edge_denominators(d, w, t)?;
    let a = weighted_adjacency(d, w, t)?;
    let dm = weighted_degree(d, w, t)?;
    let n = d.n_vertices();
    let det = (CMatrix::identity(n, n) - a * t + dm * (t * t)).determinant();
    Ok(dens.into_iter().product::<Complex64>() * det)
}

/// The 16 default sample points for pointwise checks: two rings (|t| = 0.15
/// and 0.3) of eight points each, offset from the real axis so that most are
/// genuinely complex.
pub fn default_t_samples() -> Vec<Complex64> {
    let mut out = Vec::with_capacity(16);
    for (ring, radius) in [0.15f64, 0.3].into_iter().enumerate() {
        for j in 0..8 {
            let angle = std::f64::consts::TAU * (j as f64 + 0.25 * (ring as f64 + 1.0)) / 8.0;
            out.push(Complex64::from_polar(radius, angle));
        }
    }
    out
}
