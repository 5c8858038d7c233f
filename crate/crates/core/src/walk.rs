//! Discrete-time quantum walks on the arcs of a symmetric digraph.
//!
//! States live in ℂ^{arcs}. The shift S reverses arcs, (SΨ)(a) = Ψ(ā), and a
//! transition matrix is U = S·C for a unitary coin C. The Grover coin is
//! (C_Gr Ψ)(a) = Σ_{a′ ∈ arc_{*head(a)}} (2/deg(head(a)) − δ_a(a′)) Ψ(a′).

use nalgebra::DVector;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::SymmetricDigraph;
use crate::linalg::{c, unitarity_residual, CMatrix};
use crate::unitarity::{self, UnitarityReport};
use crate::zeta::{edge_matrix, WeightScheme};

/// Unitarity tolerance for constructed transition matrices.
pub const UNITARY_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Grover,
    FromZeta,
    CustomCoin,
}

#[derive(Debug, Clone)]
pub struct TransitionMatrix {
    matrix: CMatrix,
    provenance: Provenance,
}

impl TransitionMatrix {
    /// Wraps `matrix`, rejecting it unless ‖U*U − I‖_max < 1e−10.
    pub fn new(matrix: CMatrix, provenance: Provenance) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::input("transition matrix must be square"));
        }
        let residual = unitarity_residual(&matrix);
        if residual.is_nan() || residual >= UNITARY_TOL {
            return Err(Error::Precondition(format!(
                "transition matrix is not unitary (residual {residual:e})"
            )));
        }
        Ok(Self { matrix, provenance })
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// C = S⁻¹U = SU for the given digraph.
    pub fn coin(&self, d: &SymmetricDigraph) -> CMatrix {
        shift_matrix(d) * &self.matrix
    }
}

/// The arc-reversal operator: S δ_a = δ_ā.
pub fn shift_matrix(d: &SymmetricDigraph) -> CMatrix {
    let n = d.arc_count();
    CMatrix::from_fn(n, n, |a, b| if d.mate(a) == b { c(1.0, 0.0) } else { c(0.0, 0.0) })
}

pub fn grover_coin(d: &SymmetricDigraph) -> Result<CMatrix> {
    d.require_no_isolated()?;
    let degs = d.degrees();
    let n = d.arc_count();
    let mut m = CMatrix::zeros(n, n);
    for a in d.arcs() {
        let v = a.head;
        for &b in d.in_arcs(v) {
            let delta = if b == a.id { 1.0 } else { 0.0 };
            m[(a.id, b)] = c(2.0 / degs[v] as f64 - delta, 0.0);
        }
    }
    Ok(m)
}

/// U_Gr = S·C_Gr
pub fn grover_transition(d: &SymmetricDigraph) -> Result<TransitionMatrix> {
    let u = shift_matrix(d) * grover_coin(d)?;
    TransitionMatrix::new(u, Provenance::Grover)
}

/// U_Gr in exact rational arithmetic, from the element formula
/// (a, a′) ↦ (2/deg(tail(a)))·[head(a′) = tail(a)] − [a′ = ā].
pub fn grover_transition_exact(d: &SymmetricDigraph) -> Result<Vec<Vec<BigRational>>> {
    d.require_no_isolated()?;
    let degs = d.degrees();
    let n = d.arc_count();
    let mut rows = vec![vec![BigRational::zero(); n]; n];
    for a in d.arcs() {
        let share = BigRational::new(2.into(), (degs[a.tail] as i64).into());
        for &b in d.in_arcs(a.tail) {
            rows[a.id][b] = share.clone();
        }
        rows[a.id][a.mate] -= BigRational::one();
    }
    Ok(rows)
}

/// U = ᵗM_θ, accepted when the edge matrix is unitary.
///
/// The family conditions are evaluated as well; on rejection the error
/// lists the violated ones.
pub fn transition_from_weights(d: &SymmetricDigraph, w: &WeightScheme) -> Result<TransitionMatrix> {
    let report = unitarity::check(d, w, unitarity::DEFAULT_TOL)?;
    if !report.direct_unitary {
        return Err(Error::Precondition(rejection_message(&report)));
    }
    TransitionMatrix::new(edge_matrix(d, w).transpose(), Provenance::FromZeta)
}

fn rejection_message(report: &UnitarityReport) -> String {
    let list: Vec<String> = report.violations.iter().map(ToString::to_string).collect();
    format!(
        "weights do not give a unitary edge matrix (‖M*M − I‖ = {:e}); violated: {}",
        report.direct_residual,
        if list.is_empty() { "none reported".to_string() } else { list.join("; ") }
    )
}

/// Ψ_n together with its time index.
#[derive(Debug, Clone, PartialEq)]
pub struct WalkState {
    amplitudes: DVector<Complex64>,
    time: u64,
}

impl WalkState {
    /// Normalizes `amplitudes`; errors on the zero vector.
    pub fn new(amplitudes: DVector<Complex64>) -> Result<Self> {
        let norm = amplitudes.norm();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::input("initial state must have non-zero finite norm"));
        }
        Ok(Self { amplitudes: amplitudes / c(norm, 0.0), time: 0 })
    }

    /// δ_a
    pub fn delta(d: &SymmetricDigraph, arc: usize) -> Result<Self> {
        if arc >= d.arc_count() {
            return Err(Error::input(format!("arc {arc} does not exist")));
        }
        let mut v = DVector::zeros(d.arc_count());
        v[arc] = c(1.0, 0.0);
        Ok(Self { amplitudes: v, time: 0 })
    }

    /// Equal amplitude on every arc.
    pub fn uniform(d: &SymmetricDigraph) -> Result<Self> {
        Self::new(DVector::from_element(d.arc_count(), c(1.0, 0.0)))
    }

    pub fn amplitudes(&self) -> &DVector<Complex64> {
        &self.amplitudes
    }

    pub fn time(&self) -> u64 {
        self.time
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.norm()
    }
}

pub fn step(u: &TransitionMatrix, s: &WalkState) -> Result<WalkState> {
    if u.dim() != s.amplitudes.len() {
        return Err(Error::input(format!(
            "state has {} amplitudes but the transition matrix is {}x{}",
            s.amplitudes.len(),
            u.dim(),
            u.dim()
        )));
    }
    Ok(WalkState { amplitudes: u.matrix() * &s.amplitudes, time: s.time + 1 })
}

/// Ψ_{t+n} = Uⁿ Ψ_t
pub fn evolve(u: &TransitionMatrix, s: &WalkState, n: u64) -> Result<WalkState> {
    let mut state = s.clone();
    for _ in 0..n {
        state = step(u, &state)?;
    }
    Ok(state)
}

/// p_v = Σ_{a ∈ arc_{*v}} |Ψ(a)|²
pub fn observe(d: &SymmetricDigraph, s: &WalkState) -> Vec<f64> {
    (0..d.n_vertices())
        .map(|v| d.in_arcs(v).iter().map(|&a| s.amplitudes[a].norm_sqr()).sum())
        .collect()
}
