//! Finite multigraphs and their symmetric digraphs.
//!
//! Every undirected edge `e_k = {u, v}` becomes the arc pair `2k = (u, v)` and
//! `2k + 1 = (v, u)`, which are each other's mate. A loop `{v, v}` therefore
//! yields two distinct arcs, both with tail and head `v`. Arc numbering depends
//! only on edge-list order, so matrices indexed by arcs are reproducible.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::{Error, Result};

/// An undirected graph whose edge set is a multiset; loops are allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multigraph {
    n_vertices: usize,
    edges: Vec<(usize, usize)>,
}

impl Multigraph {
    pub fn new(n_vertices: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        for (k, &(u, v)) in edges.iter().enumerate() {
            if u >= n_vertices || v >= n_vertices {
                return Err(Error::input(format!(
                    "edge {k} = {{{u}, {v}}} has an endpoint outside 0..{n_vertices}"
                )));
            }
        }
        Ok(Self { n_vertices, edges })
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// No loops and at most one edge between any two vertices.
    pub fn is_simple(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.edges
            .iter()
            .all(|&(u, v)| u != v && seen.insert((u.min(v), u.max(v))))
    }

    pub fn is_connected(&self) -> bool {
        if self.n_vertices == 0 {
            return true;
        }
        let mut parent: Vec<usize> = (0..self.n_vertices).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut components = self.n_vertices;
        for &(u, v) in &self.edges {
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            if ru != rv {
                parent[ru] = rv;
                components -= 1;
            }
        }
        components == 1
    }

    /// Parses the edge-list text format.
    ///
    /// An optional header `n <count>` declares the vertex count; otherwise it is
    /// one more than the largest index seen. Each remaining line holds one edge
    /// `u v`. `#` starts a comment, blank lines are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut declared: Option<usize> = None;
        let mut edges = Vec::new();
        let mut edge_lines = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields[0] == "n" {
                if declared.is_some() || !edges.is_empty() {
                    return Err(parse_err(line_no, "header `n <count>` must precede all edges"));
                }
                if fields.len() != 2 {
                    return Err(parse_err(line_no, "expected `n <count>`"));
                }
                declared = Some(parse_index(fields[1], line_no)?);
                continue;
            }
            if fields.len() != 2 {
                return Err(parse_err(
                    line_no,
                    format!("expected two vertex indices, found {} fields", fields.len()),
                ));
            }
            let u = parse_index(fields[0], line_no)?;
            let v = parse_index(fields[1], line_no)?;
            edges.push((u, v));
            edge_lines.push(line_no);
        }
        let inferred = edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
        let n = match declared {
            Some(n) => {
                if let Some(k) = edges.iter().position(|&(u, v)| u >= n || v >= n) {
                    return Err(parse_err(
                        edge_lines[k],
                        format!("vertex index exceeds declared count {n}"),
                    ));
                }
                n
            }
            None => inferred,
        };
        Ok(Self { n_vertices: n, edges })
    }

    /// Serializes to the edge-list format with an explicit header.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("n {}\n", self.n_vertices);
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }
}

impl FromStr for Multigraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn parse_index(field: &str, line: usize) -> Result<usize> {
    if field.starts_with('-') {
        return Err(parse_err(line, format!("negative vertex index `{field}`")));
    }
    field
        .parse::<usize>()
        .map_err(|_| parse_err(line, format!("`{field}` is not a vertex index")))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Arc {
    pub id: usize,
    pub tail: usize,
    pub head: usize,
    /// Index of the reversed arc ā.
    pub mate: usize,
    /// Index of the edge this arc came from.
    pub edge: usize,
}

/// Δ(G): each undirected edge replaced by a pair of mutually inverse arcs.
#[derive(Debug, Clone)]
pub struct SymmetricDigraph {
    graph: Multigraph,
    arcs: Vec<Arc>,
    out_index: Vec<Vec<usize>>,
    in_index: Vec<Vec<usize>>,
}

impl SymmetricDigraph {
    pub fn new(graph: Multigraph) -> Self {
        let n = graph.n_vertices;
        let mut arcs = Vec::with_capacity(2 * graph.edges.len());
        let mut out_index = vec![Vec::new(); n];
        let mut in_index = vec![Vec::new(); n];
        for (k, &(u, v)) in graph.edges.iter().enumerate() {
            let (a, b) = (2 * k, 2 * k + 1);
            arcs.push(Arc { id: a, tail: u, head: v, mate: b, edge: k });
            arcs.push(Arc { id: b, tail: v, head: u, mate: a, edge: k });
            out_index[u].push(a);
            in_index[v].push(a);
            out_index[v].push(b);
            in_index[u].push(b);
        }
        Self { graph, arcs, out_index, in_index }
    }

    pub fn graph(&self) -> &Multigraph {
        &self.graph
    }

    pub fn n_vertices(&self) -> usize {
        self.graph.n_vertices
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn arc(&self, id: usize) -> &Arc {
        &self.arcs[id]
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn mate(&self, id: usize) -> usize {
        self.arcs[id].mate
    }

    /// arc_{v*}
    pub fn out_arcs(&self, v: usize) -> &[usize] {
        &self.out_index[v]
    }

    /// arc_{*v}
    pub fn in_arcs(&self, v: usize) -> &[usize] {
        &self.in_index[v]
    }

    /// arc_{uv}
    pub fn arcs_between(&self, u: usize, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.out_index[u].iter().copied().filter(move |&a| self.arcs[a].head == v)
    }

    /// `|arc_{v*}|`; a loop at `v` contributes 2.
    pub fn degree(&self, v: usize) -> Result<usize> {
        if v >= self.n_vertices() {
            return Err(Error::input(format!(
                "vertex {v} out of range for graph with {} vertices",
                self.n_vertices()
            )));
        }
        Ok(self.out_index[v].len())
    }

    /// Degrees of all vertices, indexed by vertex.
    pub fn degrees(&self) -> Vec<usize> {
        self.out_index.iter().map(Vec::len).collect()
    }

    /// Errors naming the first vertex of degree zero, if any.
    pub fn require_no_isolated(&self) -> Result<()> {
        match self.out_index.iter().position(Vec::is_empty) {
            Some(v) => Err(Error::input(format!("vertex {v} is isolated (degree 0)"))),
            None => Ok(()),
        }
    }
}

/// Builds Δ(G) after validating the endpoints of `g`.
pub fn build_symmetric_digraph(g: Multigraph) -> Result<SymmetricDigraph> {
    let g = Multigraph::new(g.n_vertices, g.edges)?;
    Ok(SymmetricDigraph::new(g))
}

/// Standard graph families used by tests, the acceptance suite, and examples.
pub mod families {
    use super::Multigraph;

    /// C_n, edges `{i, i+1 mod n}`.
    pub fn cycle(n: usize) -> Multigraph {
        let edges = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Multigraph { n_vertices: n, edges }
    }

    /// P_n on `n` vertices.
    pub fn path(n: usize) -> Multigraph {
        let edges = (1..n).map(|i| (i - 1, i)).collect();
        Multigraph { n_vertices: n, edges }
    }

    pub fn complete(n: usize) -> Multigraph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Multigraph { n_vertices: n, edges }
    }

    /// K_{1,k} with center 0.
    pub fn star(k: usize) -> Multigraph {
        let edges = (1..=k).map(|i| (0, i)).collect();
        Multigraph { n_vertices: k + 1, edges }
    }

    pub fn petersen() -> Multigraph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        Multigraph { n_vertices: 10, edges }
    }
}

#[cfg(test)]
mod tests {
    use super::families::*;
    use super::*;

    fn digraph(text: &str) -> SymmetricDigraph {
        SymmetricDigraph::new(text.parse().unwrap())
    }

    #[test]
    fn triangle_arcs() {
        let d = SymmetricDigraph::new(cycle(3));
        assert_eq!(d.arc_count(), 6);
        for v in 0..3 {
            assert_eq!(d.out_arcs(v).len(), 2);
            assert_eq!(d.in_arcs(v).len(), 2);
            assert_eq!(d.degree(v).unwrap(), 2);
        }
        assert_eq!(d.arc(0), &Arc { id: 0, tail: 0, head: 1, mate: 1, edge: 0 });
        assert_eq!(d.arc(5), &Arc { id: 5, tail: 0, head: 2, mate: 4, edge: 2 });
    }

    #[test]
    fn single_loop() {
        let d = digraph("0 0");
        assert_eq!(d.arc_count(), 2);
        for a in d.arcs() {
            assert_eq!((a.tail, a.head), (0, 0));
        }
        assert_eq!(d.mate(0), 1);
        assert_eq!(d.mate(1), 0);
        // arc_{0*} = {0, 1}
        assert_eq!(d.out_arcs(0), &[0, 1]);
        assert_eq!(d.degree(0).unwrap(), 2);
    }

    #[test]
    fn double_edge() {
        let d = digraph("0 1\n0 1");
        let pairs: Vec<_> = d.arcs().iter().map(|a| (a.tail, a.head)).collect();
        assert_eq!(pairs, vec![(0, 1), (1, 0), (0, 1), (1, 0)]);
        assert_eq!(d.arcs_between(0, 1).collect::<Vec<_>>(), vec![0, 2]);
        assert!(!d.graph().is_simple());
    }

    #[test]
    fn path_degree() {
        let d = SymmetricDigraph::new(path(2));
        assert_eq!(d.degree(0).unwrap(), 1);
        assert!(d.degree(2).is_err());
    }

    #[test]
    fn out_of_range_endpoint() {
        assert!(Multigraph::new(2, vec![(0, 2)]).is_err());
        let bad = Multigraph { n_vertices: 1, edges: vec![(0, 3)] };
        assert!(build_symmetric_digraph(bad).is_err());
    }

    #[test]
    fn parse_formats() {
        assert_eq!(Multigraph::parse("0 1\n1 2\n2 0").unwrap(), cycle(3));
        let g = Multigraph::parse("# header\nn 4\n0 1 # trailing\n\n").unwrap();
        assert_eq!(g.n_vertices(), 4);
        assert_eq!(g.edges(), &[(0, 1)]);
        assert_eq!(Multigraph::parse("").unwrap().n_vertices(), 0);
    }

    #[test]
    fn parse_errors_name_line() {
        match Multigraph::parse("0 1\n1 -2") {
            Err(Error::Parse { line, message }) => {
                assert_eq!(line, 2);
                assert!(message.contains("negative"));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(Multigraph::parse("0 1 2"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(Multigraph::parse("0 x"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(Multigraph::parse("n 2\n0 1\n1 2"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(Multigraph::parse("0 1\nn 3"), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn families_shape() {
        assert_eq!(petersen().edge_count(), 15);
        let d = SymmetricDigraph::new(petersen());
        assert!(d.degrees().iter().all(|&k| k == 3));
        assert!(petersen().is_simple() && petersen().is_connected());
        assert_eq!(star(3).edge_count(), 3);
        assert_eq!(complete(5).edge_count(), 10);
        assert!(!Multigraph::new(3, vec![(0, 1)]).unwrap().is_connected());
    }

    #[test]
    fn isolated_vertex_detected() {
        let d = SymmetricDigraph::new(Multigraph::new(3, vec![(0, 1)]).unwrap());
        assert!(d.require_no_isolated().is_err());
    }
}
