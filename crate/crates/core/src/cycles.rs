//! Closed paths, rotation classes and prime cycles on a symmetric digraph.
//!
//! Enumeration here is exhaustive depth-first search and grows exponentially
//! with the length. It serves as the path-sum side of the zeta identities.

use crate::error::{Error, Result};
use crate::graph::SymmetricDigraph;

/// A closed path `(a_1, ..., a_k)`: `head(a_i) = tail(a_{i+1})` cyclically.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClosedPath(Vec<usize>);

impl ClosedPath {
    pub fn new(d: &SymmetricDigraph, arcs: Vec<usize>) -> Result<Self> {
        if arcs.is_empty() {
            return Err(Error::input("a closed path needs at least one arc"));
        }
        if let Some(&bad) = arcs.iter().find(|&&a| a >= d.arc_count()) {
            return Err(Error::input(format!("arc {bad} does not exist")));
        }
        let k = arcs.len();
        for i in 0..k {
            let (a, b) = (arcs[i], arcs[(i + 1) % k]);
            if d.arc(a).head != d.arc(b).tail {
                return Err(Error::input(format!(
                    "arcs {a} and {b} are not consecutive: head({a}) != tail({b})"
                )));
            }
        }
        Ok(Self(arcs))
    }

    pub fn arcs(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// σ(p) = (a_2, ..., a_k, a_1)
    pub fn rotate(&self) -> Self {
        let mut arcs = self.0.clone();
        arcs.rotate_left(1);
        Self(arcs)
    }

    /// Smallest `r` with σ^r(p) = p. Equals `len()` exactly when `p` is not
    /// a proper power of a shorter closed path.
    pub fn rotation_period(&self) -> usize {
        rotation_period(&self.0)
    }

    pub fn is_primitive(&self) -> bool {
        self.rotation_period() == self.len()
    }

    /// True when some cyclically consecutive pair is `(a, ā)`.
    pub fn has_backtracking(&self, d: &SymmetricDigraph) -> bool {
        let k = self.0.len();
        (0..k).any(|i| self.0[(i + 1) % k] == d.mate(self.0[i]))
    }

    /// No backtracking and not of the form q^m with m >= 2.
    pub fn is_prime(&self, d: &SymmetricDigraph) -> bool {
        !self.has_backtracking(d) && self.is_primitive()
    }

    /// The lexicographically smallest rotation.
    pub fn canonical(&self) -> Self {
        let k = self.0.len();
        (0..k)
            .map(|r| {
                let mut v = self.0.clone();
                v.rotate_left(r);
                v
            })
            .min()
            .map(Self)
            .unwrap_or_else(|| self.clone())
    }

    /// circ_θ(p) = θ(c_1, c_2) θ(c_2, c_3) ... θ(c_k, c_1)
    pub fn circular_product<T, F>(&self, mut theta: F) -> T
    where
        T: std::ops::Mul<Output = T> + num_traits::One,
        F: FnMut(usize, usize) -> T,
    {
        let k = self.0.len();
        (0..k).fold(T::one(), |acc, i| acc * theta(self.0[i], self.0[(i + 1) % k]))
    }
}

fn rotation_period(arcs: &[usize]) -> usize {
    let k = arcs.len();
    (1..=k)
        .filter(|r| k.is_multiple_of(*r))
        .find(|&r| (0..k).all(|i| arcs[i] == arcs[(i + r) % k]))
        .unwrap_or(k)
}

/// Lyndon test: strictly smaller than every proper rotation.
pub(crate) fn is_lyndon(arcs: &[usize]) -> bool {
    let k = arcs.len();
    (1..k).all(|r| {
        let rotated = arcs[r..].iter().chain(&arcs[..r]);
        arcs.iter().cmp(rotated) == std::cmp::Ordering::Less
    })
}

/// An equivalence class `[p]` of closed paths under rotation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Cycle {
    /// Lexicographically minimal rotation.
    pub representative: ClosedPath,
    /// Number of distinct rotations in the class.
    pub period: usize,
}

impl Cycle {
    pub fn of(p: &ClosedPath) -> Self {
        Self { representative: p.canonical(), period: p.rotation_period() }
    }

    pub fn len(&self) -> usize {
        self.representative.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representative.is_empty()
    }
}

/// Depth-first visit of every path of length `1..=max_len` that starts at
/// `root`, only stepping onto arcs accepted by `allow`. `visit` sees the
/// current path and returns whether to descend further.
fn walk_from<A, V>(d: &SymmetricDigraph, root: usize, max_len: usize, allow: &A, visit: &mut V)
where
    A: Fn(usize) -> bool,
    V: FnMut(&[usize]) -> bool,
{
    let mut path = vec![root];
    // Per-depth cursor into the out-arcs of the current head.
    let mut cursors = vec![0usize];
    if !visit(&path) {
        return;
    }
    while let Some(&depth_cursor) = cursors.last() {
        let last = *path.last().expect("path mirrors cursors");
        let next_arcs = d.out_arcs(d.arc(last).head);
        if path.len() >= max_len || depth_cursor >= next_arcs.len() {
            cursors.pop();
            path.pop();
            continue;
        }
        *cursors.last_mut().expect("non-empty") += 1;
        let next = next_arcs[depth_cursor];
        if !allow(next) {
            continue;
        }
        path.push(next);
        if visit(&path) {
            cursors.push(0);
        } else {
            path.pop();
        }
    }
}

/// Calls `f` on every closed path of length exactly `k`, as rooted arc
/// sequences (rotations are distinct elements).
pub fn for_each_closed_path<F: FnMut(&[usize])>(d: &SymmetricDigraph, k: usize, mut f: F) {
    if k == 0 {
        return;
    }
    for root in 0..d.arc_count() {
        let start = d.arc(root).tail;
        walk_from(d, root, k, &|_| true, &mut |p: &[usize]| {
            if p.len() == k {
                if d.arc(p[k - 1]).head == start {
                    f(p);
                }
                false
            } else {
                true
            }
        });
    }
}

/// X_k, every closed path of length `k` exactly once.
pub fn enumerate_closed_paths(d: &SymmetricDigraph, k: usize) -> Vec<ClosedPath> {
    let mut out = Vec::new();
    for_each_closed_path(d, k, |p| out.push(ClosedPath(p.to_vec())));
    out
}

/// Calls `f` once per rotation class of primitive closed paths with length
/// `<= max_len`, passing the minimal rotation. Backtracking paths are included.
pub fn for_each_primitive_cycle<F: FnMut(&[usize])>(d: &SymmetricDigraph, max_len: usize, mut f: F) {
    for root in 0..d.arc_count() {
        let start = d.arc(root).tail;
        // A Lyndon word starts with its smallest letter.
        walk_from(d, root, max_len, &|a| a >= root, &mut |p: &[usize]| {
            if d.arc(p[p.len() - 1]).head == start && is_lyndon(p) {
                f(p);
            }
            true
        });
    }
}

/// Rotation classes of primitive closed paths (backtracking allowed), sorted
/// by length then representative.
pub fn enumerate_primitive_cycles(d: &SymmetricDigraph, max_len: usize) -> Vec<Cycle> {
    let mut out = Vec::new();
    for_each_primitive_cycle(d, max_len, |p| {
        out.push(Cycle { representative: ClosedPath(p.to_vec()), period: p.len() })
    });
    sort_cycles(&mut out);
    out
}

/// Prime cycles: classes of closed paths without backtracking (checked
/// cyclically) that are not proper powers.
pub fn enumerate_prime_cycles(d: &SymmetricDigraph, max_len: usize) -> Vec<Cycle> {
    let mut out = Vec::new();
    for_each_primitive_cycle(d, max_len, |p| {
        let path = ClosedPath(p.to_vec());
        if !path.has_backtracking(d) {
            out.push(Cycle { representative: path, period: p.len() });
        }
    });
    sort_cycles(&mut out);
    out
}

fn sort_cycles(cycles: &mut [Cycle]) {
    cycles.sort_by(|a, b| {
        a.len()
            .cmp(&b.len())
            .then_with(|| a.representative.cmp(&b.representative))
    });
}
