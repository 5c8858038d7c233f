#![allow(dead_code)]

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use zetawalk::graph::{families, Multigraph, SymmetricDigraph};
use zetawalk::unitarity::{GWParams, SatoParams};
use zetawalk::WeightScheme;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Connected simple graph on `n` vertices: a random spanning tree plus extra
/// edges with probability `p`.
pub fn random_connected_simple(rng: &mut impl Rng, n: usize, p: f64) -> Multigraph {
    let mut edges: Vec<(usize, usize)> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
    let tree = edges.clone();
    for u in 0..n {
        for v in u + 1..n {
            if !tree.contains(&(u, v)) && rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Multigraph::new(n, edges).unwrap()
}

/// Multigraph with up to `max_n` vertices and `max_m` edges; loops and
/// parallel edges occur naturally.
pub fn random_multigraph(rng: &mut impl Rng, max_n: usize, max_m: usize) -> Multigraph {
    let n = rng.gen_range(1..=max_n);
    let m = rng.gen_range(1..=max_m);
    let mut edges: Vec<(usize, usize)> = (0..m).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n))).collect();
    if rng.gen_bool(0.3) {
        let v = rng.gen_range(0..n);
        edges.push((v, v));
    }
    if rng.gen_bool(0.3) {
        let e = edges[0];
        edges.push(e);
    }
    edges.truncate(max_m);
    Multigraph::new(n, edges).unwrap()
}

/// Number of arc sequences a_1..a_k with head(a_i) = tail(a_{i+1}), summed
/// over 1 <= k <= `max_len`: the search-tree size of closed-path enumeration
/// without pruning.
pub fn walk_count(g: &Multigraph, max_len: usize) -> f64 {
    let d = SymmetricDigraph::new(g.clone());
    let mut ending: Vec<f64> = vec![1.0; d.arc_count()];
    let mut total = ending.iter().sum::<f64>();
    for _ in 1..max_len {
        let mut next = vec![0.0; d.arc_count()];
        for a in d.arcs() {
            for &b in d.out_arcs(a.head) {
                next[b] += ending[a.id];
            }
        }
        ending = next;
        total += ending.iter().sum::<f64>();
    }
    total
}

/// [`random_multigraph`] redrawn until closed-path enumeration to
/// `max_len` visits at most `budget` partial paths.
pub fn random_multigraph_budgeted(
    rng: &mut impl Rng,
    max_n: usize,
    max_m: usize,
    max_len: usize,
    budget: f64,
) -> Multigraph {
    loop {
        let g = random_multigraph(rng, max_n, max_m);
        if walk_count(&g, max_len) <= budget {
            return g;
        }
    }
}

/// Like [`random_multigraph`] but every vertex has an incident edge.
pub fn random_multigraph_covering(rng: &mut impl Rng, max_n: usize, max_m: usize) -> Multigraph {
    loop {
        let g = random_multigraph(rng, max_n, max_m);
        let d = SymmetricDigraph::new(g.clone());
        if d.require_no_isolated().is_ok() {
            return g;
        }
    }
}

/// Uniform in the unit disk.
pub fn random_unit_disk(rng: &mut impl Rng) -> Complex64 {
    let r: f64 = rng.gen::<f64>().sqrt();
    Complex64::from_polar(r, rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI))
}

pub fn random_weights(rng: &mut impl Rng, d: &SymmetricDigraph) -> WeightScheme {
    let n = d.arc_count();
    let tau = (0..n).map(|_| random_unit_disk(rng)).collect();
    let ups = (0..n).map(|_| random_unit_disk(rng)).collect();
    WeightScheme::new(d, tau, ups).unwrap()
}

pub fn random_phase(rng: &mut impl Rng) -> f64 {
    rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI)
}

pub fn random_sato_params(rng: &mut impl Rng, d: &SymmetricDigraph) -> SatoParams {
    let n = d.n_vertices();
    let h = std::f64::consts::FRAC_PI_2 * 0.999;
    SatoParams {
        phases: (0..n).map(|_| rng.gen_range(-h..h)).collect(),
        zero: (0..n).map(|_| rng.gen_bool(0.15)).collect(),
    }
}

pub fn random_gw_params(rng: &mut impl Rng, d: &SymmetricDigraph) -> GWParams {
    let m = d.arc_count();
    let r = d
        .degrees()
        .iter()
        .map(|&k| {
            let bound = if k == 0 { 0.0 } else { 2.0 / k as f64 };
            rng.gen_range(-1.0..=1.0) * bound
        })
        .collect();
    GWParams {
        r,
        upsilon_phase: (0..m).map(|_| random_phase(rng)).collect(),
        leaf_upsilon: (0..m).map(|_| random_unit_disk(rng) * 2.0).collect(),
        leaf_phase: (0..m).map(|_| random_phase(rng)).collect(),
    }
}

/// Off-family copy of `w`: one arc's τ or υ moved by a random complex offset
/// of modulus in [1e-3, 1e-1].
pub fn perturb(rng: &mut impl Rng, d: &SymmetricDigraph, w: &WeightScheme) -> WeightScheme {
    let (mut tau, mut ups) = (w.tau().to_vec(), w.upsilon().to_vec());
    let a = rng.gen_range(0..tau.len());
    let size = 10f64.powf(rng.gen_range(-3.0..-1.0));
    let delta = Complex64::from_polar(size, random_phase(rng));
    if rng.gen_bool(0.5) {
        tau[a] += delta;
    } else {
        ups[a] += delta;
    }
    WeightScheme::new(d, tau, ups).unwrap()
}

/// Named connected simple graphs used for Konno–Sato and Grover checks.
pub fn named_simple_corpus() -> Vec<(String, Multigraph)> {
    let mut out = Vec::new();
    for n in 3..=8 {
        out.push((format!("C_{n}"), families::cycle(n)));
    }
    for n in 2..=6 {
        out.push((format!("P_{n}"), families::path(n)));
    }
    out.push(("K_4".into(), families::complete(4)));
    out.push(("K_5".into(), families::complete(5)));
    out.push(("K_1,3".into(), families::star(3)));
    out.push(("Petersen".into(), families::petersen()));
    out
}

/// Named corpus plus 20 random connected simple graphs on 2..=7 vertices.
pub fn simple_corpus(seed: u64) -> Vec<(String, Multigraph)> {
    let mut out = named_simple_corpus();
    let mut r = rng(seed);
    for i in 0..20 {
        let n = r.gen_range(2..=7);
        let p = r.gen_range(0.1..0.7);
        out.push((format!("random_{i}"), random_connected_simple(&mut r, n, p)));
    }
    out
}
