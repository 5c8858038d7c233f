//! Unitarity criteria for edge matrices, and constructors for the Sato and
//! generalized-weighted unitary families.
//!
//! Up to a permutation of rows, M_θ is block diagonal by vertex: the block of
//! u pairs arcs into u with arcs out of u, so unitarity is decided vertex by
//! vertex.

use std::f64::consts::FRAC_PI_2;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::graph::SymmetricDigraph;
use crate::linalg::{c, unitarity_residual};
use crate::zeta::{edge_matrix, Preset, WeightScheme};

/// Tolerance for the per-vertex conditions.
pub const DEFAULT_TOL: f64 = 1e-9;
/// Bound that constructor output must meet on ‖M*M − I‖_max.
pub const CONSTRUCT_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Condition {
    /// τ(a) = τ(a′) for a, a′ ∈ arc_{u*}
    TauConstancy,
    /// |τ| = 2cos(arg τ)/deg(u), or τ = 0
    TauMagnitude,
    /// |υ(a)| = 1 at a vertex of degree ≥ 2
    UpsilonModulus,
    /// τ(a)·conj(υ(a)) common to arc_{u*}
    RatioConstancy,
    /// τ/υ = dR²/2 + iR√(4 − d²R²)/2 for real R ∈ [−2/d, 2/d]
    RatioForm,
    /// |τ(a) − υ(a)| = 1 at a degree-1 vertex
    LeafCircle,
}

impl Condition {
    pub fn name(self) -> &'static str {
        match self {
            Condition::TauConstancy => "tau constant on out-arcs",
            Condition::TauMagnitude => "tau magnitude |tau| = 2cos(arg tau)/deg",
            Condition::UpsilonModulus => "upsilon modulus |upsilon| = 1",
            Condition::RatioConstancy => "tau/upsilon constant on out-arcs",
            Condition::RatioForm => "tau/upsilon = dR^2/2 + iR sqrt(4 - d^2R^2)/2",
            Condition::LeafCircle => "leaf circle |tau - upsilon| = 1",
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Violation {
    pub vertex: usize,
    pub arc: Option<usize>,
    pub condition: Condition,
    pub residual: f64,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "vertex {}", self.vertex)?;
        if let Some(a) = self.arc {
            write!(f, ", arc {a}")?;
        }
        write!(f, ": {} (residual {:e})", self.condition, self.residual)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Criterion {
    Sato,
    GeneralizedWeighted,
}

impl Criterion {
    pub fn name(self) -> &'static str {
        match self {
            Criterion::Sato => "sato",
            Criterion::GeneralizedWeighted => "generalized_weighted",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct UnitarityReport {
    pub criterion: Criterion,
    /// Verdict of the per-vertex conditions.
    pub unitary: bool,
    pub violations: Vec<Violation>,
    /// max(‖M*M − I‖_max, ‖MM* − I‖_max)
    pub direct_residual: f64,
    pub direct_unitary: bool,
    /// Recovered R_u per vertex (generalized-weighted criterion, degree ≥ 2).
    pub amplitudes: Vec<Option<f64>>,
}

impl UnitarityReport {
    /// Whether the condition verdict matches the direct test.
    pub fn agrees(&self) -> bool {
        self.unitary == self.direct_unitary
    }
}

fn direct(d: &SymmetricDigraph, w: &WeightScheme, tol: f64) -> (f64, bool) {
    let r = unitarity_residual(edge_matrix(d, w).matrix());
    (r, r <= tol)
}

fn check_weights_len(d: &SymmetricDigraph, w: &WeightScheme) -> Result<()> {
    if w.len() != d.arc_count() {
        return Err(Error::input(format!(
            "weight scheme has {} arcs but the digraph has {}",
            w.len(),
            d.arc_count()
        )));
    }
    Ok(())
}

/// Residual of d|τ|² = 2 Re τ written as ||τ| − 2cos(arg τ)/d|; τ ≈ 0 passes.
fn magnitude_residual(tau: Complex64, deg: usize, tol: f64) -> f64 {
    let r = tau.norm();
    if r <= tol {
        return 0.0;
    }
    (r - 2.0 * tau.re / (deg as f64 * r)).abs()
}

/// Sato criterion: υ ≡ 1, τ constant on every arc_{u*}, and the magnitude
/// condition on that constant.
pub fn check_sato(d: &SymmetricDigraph, w: &WeightScheme, tol: f64) -> Result<UnitarityReport> {
    check_weights_len(d, w)?;
    let one = c(1.0, 0.0);
    if let Some(a) = (0..w.len()).find(|&a| (w.upsilon()[a] - one).norm() > tol) {
        return Err(Error::Precondition(format!(
            "sato criterion requires upsilon = 1; arc {a} has {}",
            w.upsilon()[a]
        )));
    }
    let mut violations = Vec::new();
    for u in 0..d.n_vertices() {
        let out = d.out_arcs(u);
        let Some(&first) = out.first() else { continue };
        let t0 = w.tau()[first];
        for &a in &out[1..] {
            let r = (w.tau()[a] - t0).norm();
            if r > tol {
                violations.push(Violation { vertex: u, arc: Some(a), condition: Condition::TauConstancy, residual: r });
            }
        }
        let r = magnitude_residual(t0, out.len(), tol);
        if r > tol {
            violations.push(Violation { vertex: u, arc: None, condition: Condition::TauMagnitude, residual: r });
        }
    }
    let (direct_residual, direct_unitary) = direct(d, w, tol);
    Ok(UnitarityReport {
        criterion: Criterion::Sato,
        unitary: violations.is_empty(),
        violations,
        direct_residual,
        direct_unitary,
        amplitudes: vec![None; d.n_vertices()],
    })
}

/// τ/υ on the generalized-weighted curve for amplitude R and degree d.
pub fn gw_ratio(r: f64, deg: usize) -> Complex64 {
    let d = deg as f64;
    let disc = (4.0 - d * d * r * r).max(0.0);
    c(d * r * r / 2.0, r * disc.sqrt() / 2.0)
}

/// R with Re z = dR²/2, clamped to [−2/d, 2/d], signed by Im z.
pub fn recover_amplitude(z: Complex64, deg: usize) -> f64 {
    let d = deg as f64;
    let r = (2.0 * z.re.max(0.0) / d).sqrt().min(2.0 / d);
    if z.im < 0.0 {
        -r
    } else {
        r
    }
}

/// Generalized-weighted criterion: |τ − υ| = 1 at leaves; elsewhere |υ| = 1
/// and a common ratio τ/υ on the curve parameterized by R.
///
/// The degree-≥2 conditions are sufficient but not necessary at degree-2
/// vertices, where non-unit υ pairs can still give a unitary block; compare
/// [`UnitarityReport::agrees`].
pub fn check_gw(d: &SymmetricDigraph, w: &WeightScheme, tol: f64) -> Result<UnitarityReport> {
    check_weights_len(d, w)?;
    let (tau, ups) = (w.tau(), w.upsilon());
    let mut violations = Vec::new();
    let mut amplitudes = vec![None; d.n_vertices()];
    for (u, amplitude) in amplitudes.iter_mut().enumerate() {
        let out = d.out_arcs(u);
        match out.len() {
            0 => {}
            1 => {
                let a = out[0];
                let r = ((tau[a] - ups[a]).norm_sqr() - 1.0).abs();
                if r > tol {
                    violations.push(Violation { vertex: u, arc: Some(a), condition: Condition::LeafCircle, residual: r });
                }
            }
            deg => {
                for &a in out {
                    let r = (ups[a].norm() - 1.0).abs();
                    if r > tol {
                        violations.push(Violation {
                            vertex: u,
                            arc: Some(a),
                            condition: Condition::UpsilonModulus,
                            residual: r,
                        });
                    }
                }
                let ratio = |a: usize| tau[a] * ups[a].conj();
                let z0 = ratio(out[0]);
                for &a in &out[1..] {
                    let r = (ratio(a) - z0).norm();
                    if r > tol {
                        violations.push(Violation {
                            vertex: u,
                            arc: Some(a),
                            condition: Condition::RatioConstancy,
                            residual: r,
                        });
                    }
                }
                let r_u = recover_amplitude(z0, deg);
                *amplitude = Some(r_u);
                let r = (z0 - gw_ratio(r_u, deg)).norm();
                if r > tol {
                    violations.push(Violation { vertex: u, arc: None, condition: Condition::RatioForm, residual: r });
                }
            }
        }
    }
    let (direct_residual, direct_unitary) = direct(d, w, tol);
    Ok(UnitarityReport {
        criterion: Criterion::GeneralizedWeighted,
        unitary: violations.is_empty(),
        violations,
        direct_residual,
        direct_unitary,
        amplitudes,
    })
}

/// The Sato criterion when υ ≡ 1, the generalized-weighted one otherwise.
pub fn check(d: &SymmetricDigraph, w: &WeightScheme, tol: f64) -> Result<UnitarityReport> {
    if w.is_sato_form(tol) {
        check_sato(d, w, tol)
    } else {
        check_gw(d, w, tol)
    }
}

/// Per-vertex phase f_v, or τ ≡ 0 on the vertex's out-arcs when `zero[v]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SatoParams {
    pub phases: Vec<f64>,
    pub zero: Vec<bool>,
}

impl SatoParams {
    pub fn uniform(n_vertices: usize, phase: f64) -> Self {
        Self { phases: vec![phase; n_vertices], zero: vec![false; n_vertices] }
    }

    pub fn all_zero(n_vertices: usize) -> Self {
        Self { phases: vec![0.0; n_vertices], zero: vec![true; n_vertices] }
    }
}

/// τ(a) = (2cos f_v / deg(v))·e^{i f_v} on arc_{v*}, υ ≡ 1.
pub fn construct_sato(d: &SymmetricDigraph, p: &SatoParams) -> Result<WeightScheme> {
    let n = d.n_vertices();
    if p.phases.len() != n || p.zero.len() != n {
        return Err(Error::input(format!("sato parameters must have one entry per vertex ({n})")));
    }
    for v in 0..n {
        let f = p.phases[v];
        if !p.zero[v] && !(f > -FRAC_PI_2 && f < FRAC_PI_2) {
            return Err(Error::input(format!("phase {f} at vertex {v} is outside (-pi/2, pi/2)")));
        }
    }
    let tau = d
        .arcs()
        .iter()
        .map(|a| {
            let v = a.tail;
            if p.zero[v] {
                return c(0.0, 0.0);
            }
            let f = p.phases[v];
            let deg = d.out_arcs(v).len() as f64;
            Complex64::from_polar(2.0 * f.cos() / deg, f)
        })
        .collect();
    let w = WeightScheme::tagged(tau, vec![c(1.0, 0.0); d.arc_count()], Preset::Sato);
    validate(d, w)
}

/// Parameters of the generalized-weighted family.
///
/// Vertices of degree ≥ 2 take an amplitude `r[u]` and per-arc unit
/// υ(a) = e^{i·upsilon_phase[a]}. Degree-1 vertices take υ(a) =
/// `leaf_upsilon[a]` and τ(a) = υ(a) + e^{i·leaf_phase[a]}.
#[derive(Debug, Clone, PartialEq)]
pub struct GWParams {
    pub r: Vec<f64>,
    pub upsilon_phase: Vec<f64>,
    pub leaf_upsilon: Vec<Complex64>,
    pub leaf_phase: Vec<f64>,
}

impl GWParams {
    /// R_u = 2/deg(u), υ ≡ 1, leaf τ = 2.
    pub fn grover(d: &SymmetricDigraph) -> Self {
        Self {
            r: d.degrees().iter().map(|&k| if k == 0 { 0.0 } else { 2.0 / k as f64 }).collect(),
            upsilon_phase: vec![0.0; d.arc_count()],
            leaf_upsilon: vec![c(1.0, 0.0); d.arc_count()],
            leaf_phase: vec![0.0; d.arc_count()],
        }
    }
}

pub fn construct_gw(d: &SymmetricDigraph, p: &GWParams) -> Result<WeightScheme> {
    let (n, m) = (d.n_vertices(), d.arc_count());
    if p.r.len() != n {
        return Err(Error::input(format!("amplitudes must have one entry per vertex ({n})")));
    }
    if p.upsilon_phase.len() != m || p.leaf_upsilon.len() != m || p.leaf_phase.len() != m {
        return Err(Error::input(format!("per-arc parameters must have one entry per arc ({m})")));
    }
    let degs = d.degrees();
    for (u, &deg) in degs.iter().enumerate() {
        let bound = 2.0 / deg as f64;
        if deg >= 2 && (p.r[u].is_nan() || p.r[u].abs() > bound) {
            return Err(Error::input(format!(
                "amplitude {} at vertex {u} is outside [-{bound}, {bound}]",
                p.r[u]
            )));
        }
    }
    let mut tau = Vec::with_capacity(m);
    let mut ups = Vec::with_capacity(m);
    for a in d.arcs() {
        let deg = degs[a.tail];
        if deg == 1 {
            let y = p.leaf_upsilon[a.id];
            ups.push(y);
            tau.push(y + Complex64::from_polar(1.0, p.leaf_phase[a.id]));
        } else {
            let y = Complex64::from_polar(1.0, p.upsilon_phase[a.id]);
            ups.push(y);
            tau.push(y * gw_ratio(p.r[a.tail], deg));
        }
    }
    validate(d, WeightScheme::tagged(tau, ups, Preset::Custom))
}

fn validate(d: &SymmetricDigraph, w: WeightScheme) -> Result<WeightScheme> {
    let report = check(d, &w, DEFAULT_TOL)?;
    if !report.unitary || report.direct_residual >= CONSTRUCT_TOL {
        return Err(Error::Numerical(format!(
            "constructed weights failed validation (residual {:e}, {} violations)",
            report.direct_residual,
            report.violations.len()
        )));
    }
    Ok(w)
}
