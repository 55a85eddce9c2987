//! Multigraph storage and the basic structural queries used everywhere else.
//!
//! Vertices are `0..n`. Edges are stored in insertion order and addressed by
//! their index; parallel edges and loops are allowed. A loop contributes two
//! to the degree of its vertex and appears twice in that vertex's incidence
//! list.

use std::collections::VecDeque;
use std::fmt;
use std::ops::Deref;

use crate::error::{Error, Result};

pub type Vertex = usize;
pub type EdgeId = usize;

/// Largest order accepted by the graph6 reader and the bitset helpers.
pub const VERTEX_CAP: usize = 128;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Multigraph {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
    incidence: Vec<Vec<EdgeId>>,
}

impl fmt::Debug for Multigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Multigraph(n={}, edges={:?})", self.n, self.edges)
    }
}

impl Multigraph {
    pub fn new(n: usize) -> Self {
        Multigraph {
            n,
            edges: Vec::new(),
            incidence: vec![Vec::new(); n],
        }
    }

    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut g = Multigraph::new(n);
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::Structure(format!(
                    "edge {a}-{b} has an endpoint outside 0..{n}"
                )));
            }
            g.add_edge(a, b);
        }
        Ok(g)
    }

    /// Appends an edge and returns its index. Panics on out-of-range endpoints.
    pub fn add_edge(&mut self, a: Vertex, b: Vertex) -> EdgeId {
        assert!(a < self.n && b < self.n, "endpoint out of range");
        let id = self.edges.len();
        self.edges.push((a, b));
        self.incidence[a].push(id);
        self.incidence[b].push(id);
        id
    }

    pub fn add_vertex(&mut self) -> Vertex {
        self.incidence.push(Vec::new());
        self.n += 1;
        self.n - 1
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn endpoints(&self, e: EdgeId) -> (Vertex, Vertex) {
        self.edges[e]
    }

    /// The endpoint of `e` that is not `v` (or `v` itself for a loop).
    pub fn other(&self, e: EdgeId, v: Vertex) -> Vertex {
        let (a, b) = self.edges[e];
        if a == v {
            b
        } else {
            debug_assert_eq!(b, v);
            a
        }
    }

    pub fn is_loop(&self, e: EdgeId) -> bool {
        let (a, b) = self.edges[e];
        a == b
    }

    /// Incident edge ids of `v`; a loop is listed twice.
    pub fn incident(&self, v: Vertex) -> &[EdgeId] {
        &self.incidence[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.incidence[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    /// Neighbours with multiplicity, in incidence order.
    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.incidence[v].iter().map(move |&e| self.other(e, v))
    }

    pub fn edge_multiplicity(&self, a: Vertex, b: Vertex) -> usize {
        let count = self.incidence[a]
            .iter()
            .filter(|&&e| self.other(e, a) == b)
            .count();
        if a == b {
            count / 2
        } else {
            count
        }
    }

    pub fn has_edge(&self, a: Vertex, b: Vertex) -> bool {
        self.incidence[a].iter().any(|&e| self.other(e, a) == b)
    }

    /// First edge joining `a` and `b`, if any.
    pub fn find_edge(&self, a: Vertex, b: Vertex) -> Option<EdgeId> {
        self.incidence[a]
            .iter()
            .copied()
            .find(|&e| self.other(e, a) == b)
    }

    pub fn has_loops(&self) -> bool {
        self.edges.iter().any(|&(a, b)| a == b)
    }

    pub fn is_simple(&self) -> bool {
        if self.has_loops() {
            return false;
        }
        let mut seen = std::collections::HashSet::with_capacity(self.edges.len());
        self.edges
            .iter()
            .all(|&(a, b)| seen.insert((a.min(b), a.max(b))))
    }

    pub fn is_regular(&self, d: usize) -> bool {
        (0..self.n).all(|v| self.degree(v) == d)
    }

    /// Component id per vertex and the number of components.
    pub fn components(&self) -> (Vec<usize>, usize) {
        self.components_without(&[])
    }

    /// Components of the graph with the listed edges ignored.
    pub fn components_without(&self, removed: &[EdgeId]) -> (Vec<usize>, usize) {
        let mut skip = vec![false; self.edges.len()];
        for &e in removed {
            skip[e] = true;
        }
        let mut comp = vec![usize::MAX; self.n];
        let mut count = 0;
        let mut queue = VecDeque::new();
        for s in 0..self.n {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = count;
            queue.push_back(s);
            while let Some(v) = queue.pop_front() {
                for &e in &self.incidence[v] {
                    if skip[e] {
                        continue;
                    }
                    let w = self.other(e, v);
                    if comp[w] == usize::MAX {
                        comp[w] = count;
                        queue.push_back(w);
                    }
                }
            }
            count += 1;
        }
        (comp, count)
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().1 == 1
    }

    /// Edge ids of all bridges (cut edges). Parallel edges are never bridges.
    pub fn bridges(&self) -> Vec<EdgeId> {
        self.bridges_without(&[])
    }

    pub fn bridges_without(&self, removed: &[EdgeId]) -> Vec<EdgeId> {
        let mut skip = vec![false; self.edges.len()];
        for &e in removed {
            skip[e] = true;
        }
        let mut disc = vec![usize::MAX; self.n];
        let mut low = vec![0usize; self.n];
        let mut out = Vec::new();
        let mut time = 0;
        // (vertex, parent edge, next incidence position)
        let mut stack: Vec<(Vertex, Option<EdgeId>, usize)> = Vec::new();
        for root in 0..self.n {
            if disc[root] != usize::MAX {
                continue;
            }
            disc[root] = time;
            low[root] = time;
            time += 1;
            stack.push((root, None, 0));
            while let Some(&(v, parent, pos)) = stack.last() {
                if pos < self.incidence[v].len() {
                    let e = self.incidence[v][pos];
                    stack.last_mut().unwrap().2 += 1;
                    if skip[e] || Some(e) == parent || self.is_loop(e) {
                        continue;
                    }
                    let w = self.other(e, v);
                    if disc[w] == usize::MAX {
                        disc[w] = time;
                        low[w] = time;
                        time += 1;
                        stack.push((w, Some(e), 0));
                    } else {
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if let (Some(pe), Some(&(u, _, _))) = (parent, stack.last()) {
                        low[u] = low[u].min(low[v]);
                        if low[v] > disc[u] {
                            out.push(pe);
                        }
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Length of a shortest cycle (loops count 1, parallel pairs 2), if any.
    pub fn girth(&self) -> Option<usize> {
        if self.has_loops() {
            return Some(1);
        }
        if !self.is_simple() {
            return Some(2);
        }
        let mut best: Option<usize> = None;
        for s in 0..self.n {
            let mut dist = vec![usize::MAX; self.n];
            let mut via = vec![usize::MAX; self.n];
            dist[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &e in &self.incidence[v] {
                    if e == via[v] {
                        continue;
                    }
                    let w = self.other(e, v);
                    if dist[w] == usize::MAX {
                        dist[w] = dist[v] + 1;
                        via[w] = e;
                        queue.push_back(w);
                    } else {
                        let len = dist[v] + dist[w] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    /// A fresh graph keeping only the edges for which `keep` holds.
    /// Returns the graph and, per new edge, the old edge id.
    pub fn filter_edges(&self, mut keep: impl FnMut(EdgeId) -> bool) -> (Multigraph, Vec<EdgeId>) {
        let mut g = Multigraph::new(self.n);
        let mut origin = Vec::new();
        for (e, &(a, b)) in self.edges.iter().enumerate() {
            if keep(e) {
                g.add_edge(a, b);
                origin.push(e);
            }
        }
        (g, origin)
    }

    /// Relabels vertices by `perm` (old vertex `v` becomes `perm[v]`),
    /// keeping edge order.
    pub fn relabel(&self, perm: &[Vertex]) -> Multigraph {
        assert_eq!(perm.len(), self.n);
        let mut g = Multigraph::new(self.n);
        for &(a, b) in &self.edges {
            g.add_edge(perm[a], perm[b]);
        }
        g
    }

    /// Subgraph induced by `vertices` (in the given order, renumbered from 0).
    pub fn induced(&self, vertices: &[Vertex]) -> Multigraph {
        let mut map = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            map[v] = i;
        }
        let mut g = Multigraph::new(vertices.len());
        for &(a, b) in &self.edges {
            if map[a] != usize::MAX && map[b] != usize::MAX {
                g.add_edge(map[a], map[b]);
            }
        }
        g
    }

    /// Bitset adjacency rows of the underlying simple graph (loops and
    /// multiplicities dropped). Only available up to [`VERTEX_CAP`] vertices.
    pub fn adjacency_bits(&self) -> Result<Vec<u128>> {
        if self.n > VERTEX_CAP {
            return Err(Error::Structure(format!(
                "{} vertices exceed the cap of {VERTEX_CAP}",
                self.n
            )));
        }
        let mut rows = vec![0u128; self.n];
        for &(a, b) in &self.edges {
            if a != b {
                rows[a] |= 1 << b;
                rows[b] |= 1 << a;
            }
        }
        Ok(rows)
    }

    /// Plain-text edge list: `n m` then one `a b` line per edge.
    pub fn to_edge_list(&self) -> String {
        let mut s = format!("{} {}\n", self.n, self.edges.len());
        for &(a, b) in &self.edges {
            s.push_str(&format!("{a} {b}\n"));
        }
        s
    }

    pub fn parse_edge_list(text: &str) -> Result<Multigraph> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = lines.next().ok_or(Error::EdgeList {
            line: 1,
            message: "missing header".into(),
        })?;
        let parse_pair = |line: usize, l: &str| -> Result<(usize, usize)> {
            let mut it = l.split_whitespace();
            let mut next = || -> Result<usize> {
                it.next()
                    .ok_or_else(|| Error::EdgeList {
                        line,
                        message: "expected two integers".into(),
                    })?
                    .parse()
                    .map_err(|e| Error::EdgeList {
                        line,
                        message: format!("{e}"),
                    })
            };
            let a = next()?;
            let b = next()?;
            Ok((a, b))
        };
        let (n, m) = parse_pair(hline, header)?;
        let mut g = Multigraph::new(n);
        for _ in 0..m {
            let (line, l) = lines.next().ok_or(Error::EdgeList {
                line: hline,
                message: format!("expected {m} edges"),
            })?;
            let (a, b) = parse_pair(line, l)?;
            if a >= n || b >= n {
                return Err(Error::EdgeList {
                    line,
                    message: format!("vertex out of range 0..{n}"),
                });
            }
            g.add_edge(a, b);
        }
        if let Some((line, _)) = lines.next() {
            return Err(Error::EdgeList {
                line,
                message: "trailing data after the declared edges".into(),
            });
        }
        Ok(g)
    }
}

/// A 3-regular multigraph.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CubicGraph {
    graph: Multigraph,
    simple: bool,
}

impl CubicGraph {
    pub fn new(graph: Multigraph) -> Result<Self> {
        if let Some(v) = (0..graph.vertex_count()).find(|&v| graph.degree(v) != 3) {
            return Err(Error::Structure(format!(
                "vertex {v} has degree {}, expected 3",
                graph.degree(v)
            )));
        }
        let simple = graph.is_simple();
        Ok(CubicGraph { graph, simple })
    }

    /// Like [`CubicGraph::new`] but additionally rejects loops and parallel edges.
    pub fn new_simple(graph: Multigraph) -> Result<Self> {
        let g = CubicGraph::new(graph)?;
        if !g.simple {
            return Err(Error::Structure("graph has loops or parallel edges".into()));
        }
        Ok(g)
    }

    pub fn graph(&self) -> &Multigraph {
        &self.graph
    }

    pub fn into_graph(self) -> Multigraph {
        self.graph
    }

    pub fn is_simple(&self) -> bool {
        self.simple
    }
}

impl Deref for CubicGraph {
    type Target = Multigraph;

    fn deref(&self) -> &Multigraph {
        &self.graph
    }
}

/// A colour in `1..=3` per edge index.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EdgeColoring {
    colors: Vec<u8>,
}

impl EdgeColoring {
    pub fn new(colors: Vec<u8>) -> Self {
        EdgeColoring { colors }
    }

    pub fn color(&self, e: EdgeId) -> u8 {
        self.colors[e]
    }

    pub fn colors(&self) -> &[u8] {
        &self.colors
    }

    /// Edges carrying colour `c`.
    pub fn class(&self, c: u8) -> Vec<EdgeId> {
        (0..self.colors.len()).filter(|&e| self.colors[e] == c).collect()
    }

    /// Checks that every edge has a colour in 1..=3, no loop is present and
    /// edges sharing a vertex differ.
    pub fn check_proper(&self, g: &Multigraph) -> Result<()> {
        if self.colors.len() != g.edge_count() {
            return Err(Error::Structure(format!(
                "coloring has {} entries for {} edges",
                self.colors.len(),
                g.edge_count()
            )));
        }
        if let Some(e) = (0..g.edge_count()).find(|&e| !(1..=3).contains(&self.colors[e])) {
            return Err(Error::Structure(format!("edge {e} has colour {}", self.colors[e])));
        }
        for v in 0..g.vertex_count() {
            let inc = g.incident(v);
            for (i, &e) in inc.iter().enumerate() {
                for &f in &inc[i + 1..] {
                    if self.colors[e] == self.colors[f] {
                        return Err(Error::Structure(format!(
                            "edges {e} and {f} meet at vertex {v} with colour {}",
                            self.colors[e]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_proper(&self, g: &Multigraph) -> bool {
        self.check_proper(g).is_ok()
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    pub fn k4() -> Multigraph {
        Multigraph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    pub fn prism() -> Multigraph {
        Multigraph::from_edges(
            6,
            &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)],
        )
        .unwrap()
    }

    pub fn cube() -> Multigraph {
        let mut edges = Vec::new();
        for v in 0..8usize {
            for bit in 0..3 {
                let w = v ^ (1 << bit);
                if v < w {
                    edges.push((v, w));
                }
            }
        }
        Multigraph::from_edges(8, &edges).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn loops_count_twice() {
        let mut g = Multigraph::new(2);
        g.add_edge(0, 0);
        g.add_edge(0, 1);
        assert_eq!(g.degree(0), 3);
        assert_eq!(g.edge_multiplicity(0, 0), 1);
        assert!(!g.is_simple());
        assert_eq!(g.girth(), Some(1));
    }

    #[test]
    fn bridges_of_a_barbell() {
        // two triangles joined by the edge 2-3
        let g = Multigraph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3)])
            .unwrap();
        assert_eq!(g.bridges(), vec![3]);
        let mut h = g.clone();
        h.add_edge(2, 3);
        assert!(h.bridges().is_empty());
    }

    #[test]
    fn girth_of_small_graphs() {
        assert_eq!(k4().girth(), Some(3));
        assert_eq!(cube().girth(), Some(4));
        assert_eq!(Multigraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap().girth(), None);
    }

    #[test]
    fn edge_list_roundtrip() {
        let mut g = prism();
        g.add_edge(0, 3);
        let text = g.to_edge_list();
        assert_eq!(Multigraph::parse_edge_list(&text).unwrap(), g);
        let err = Multigraph::parse_edge_list("2 1\n0 5\n").unwrap_err();
        assert!(matches!(err, Error::EdgeList { line: 2, .. }));
    }

    #[test]
    fn cubic_wrapper_rejects_wrong_degree() {
        assert!(CubicGraph::new(k4()).unwrap().is_simple());
        let err = CubicGraph::new(Multigraph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap());
        assert!(err.is_err());
        let mut theta = Multigraph::new(2);
        for _ in 0..3 {
            theta.add_edge(0, 1);
        }
        assert!(!CubicGraph::new(theta.clone()).unwrap().is_simple());
        assert!(CubicGraph::new_simple(theta).is_err());
    }

    #[test]
    fn proper_coloring_check() {
        let g = k4();
        // perfect matchings {01,23}, {02,13}, {03,12}
        let c = EdgeColoring::new(vec![1, 2, 3, 3, 2, 1]);
        assert!(c.is_proper(&g));
        let bad = EdgeColoring::new(vec![1, 1, 3, 3, 2, 1]);
        assert!(!bad.is_proper(&g));
    }
}
