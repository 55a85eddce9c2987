//! Cycles, cycle sets and the searches built on them.

mod ccd;
mod reduce;

pub use ccd::{
    ccd_from_coloring, cdc_from_ccd, coloring_from_ccd, enumerate_ccds, find_ccd,
    find_compatible_decomposition, for_each_compatible_decomposition, verify_compatible,
};
pub use reduce::{sabidussi_reduce, ReductionLevel, ReductionTag, ReductionTrace};

use std::fmt;
use std::ops::ControlFlow;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Multigraph, Vertex};
use crate::ppm::Dart;

/// A vertex-simple closed walk. `edges[i]` joins `vertices[i]` and
/// `vertices[i + 1]` (cyclically). Loops are cycles of length 1 and a pair
/// of parallel edges forms a cycle of length 2.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cycle {
    vertices: Vec<Vertex>,
    edges: Vec<EdgeId>,
}

impl Cycle {
    /// Builds a cycle and checks it against `g`.
    pub fn new(g: &Multigraph, vertices: Vec<Vertex>, edges: Vec<EdgeId>) -> Result<Self> {
        let c = Cycle { vertices, edges };
        c.check_in(g)?;
        Ok(c)
    }

    pub(crate) fn new_unchecked(vertices: Vec<Vertex>, edges: Vec<EdgeId>) -> Self {
        Cycle { vertices, edges }
    }

    /// The cycle through the given vertices in order; needs a unique choice
    /// of edge between consecutive vertices except for 2-cycles.
    pub fn from_vertices(g: &Multigraph, vertices: &[Vertex]) -> Result<Self> {
        let k = vertices.len();
        if k == 0 {
            return Err(Error::CycleSet("empty cycle".into()));
        }
        if let Some(&v) = vertices.iter().find(|&&v| v >= g.vertex_count()) {
            return Err(Error::CycleSet(format!("vertex {v} out of range")));
        }
        let mut edges = Vec::with_capacity(k);
        for i in 0..k {
            let (a, b) = (vertices[i], vertices[(i + 1) % k]);
            let e = g
                .incident(a)
                .iter()
                .copied()
                .find(|&e| g.other(e, a) == b && !edges.contains(&e))
                .ok_or_else(|| Error::CycleSet(format!("no edge between {a} and {b}")))?;
            edges.push(e);
        }
        Cycle::new(g, vertices.to_vec(), edges)
    }

    /// Orders an edge set into a cycle.
    pub fn from_edges(g: &Multigraph, edges: &[EdgeId]) -> Result<Self> {
        let mut cycles = split_two_regular_checked(g, edges)?;
        if cycles.len() != 1 {
            return Err(Error::CycleSet(format!(
                "edge set splits into {} cycles",
                cycles.len()
            )));
        }
        Ok(cycles.pop().unwrap())
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edge_set(&self) -> Vec<EdgeId> {
        let mut s = self.edges.clone();
        s.sort_unstable();
        s
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        self.vertices.contains(&v)
    }

    pub fn check_in(&self, g: &Multigraph) -> Result<()> {
        let k = self.vertices.len();
        if k == 0 || self.edges.len() != k {
            return Err(Error::CycleSet("cycle needs equally many vertices and edges".into()));
        }
        let mut vs = self.vertices.clone();
        vs.sort_unstable();
        vs.dedup();
        if vs.len() != k {
            return Err(Error::CycleSet("cycle repeats a vertex".into()));
        }
        let mut es = self.edges.clone();
        es.sort_unstable();
        es.dedup();
        if es.len() != k {
            return Err(Error::CycleSet("cycle repeats an edge".into()));
        }
        for i in 0..k {
            let e = self.edges[i];
            if e >= g.edge_count() || vs.last().is_some_and(|&v| v >= g.vertex_count()) {
                return Err(Error::CycleSet(format!("edge {e} out of range")));
            }
            let (a, b) = g.endpoints(e);
            let (x, y) = (self.vertices[i], self.vertices[(i + 1) % k]);
            if !((a == x && b == y) || (a == y && b == x)) {
                return Err(Error::CycleSet(format!("edge {e} does not join {x} and {y}")));
            }
        }
        Ok(())
    }

    /// Starts at the least vertex and heads towards the smaller neighbour
    /// (for 2-cycles, along the smaller edge id).
    pub fn normalized(&self) -> Cycle {
        let k = self.vertices.len();
        let start = (0..k).min_by_key(|&i| self.vertices[i]).unwrap();
        let forward = Cycle {
            vertices: (0..k).map(|i| self.vertices[(start + i) % k]).collect(),
            edges: (0..k).map(|i| self.edges[(start + i) % k]).collect(),
        };
        if k < 2 {
            return forward;
        }
        let backward = forward.reversed();
        let keep_forward = if k == 2 {
            forward.edges[0] <= backward.edges[0]
        } else {
            forward.vertices[1] <= backward.vertices[1]
        };
        if keep_forward {
            forward
        } else {
            backward
        }
    }

    /// Same start vertex, opposite direction.
    pub fn reversed(&self) -> Cycle {
        let k = self.vertices.len();
        let vertices = (0..k).map(|i| self.vertices[(k - i) % k]).collect();
        let edges = (0..k).map(|i| self.edges[(2 * k - 1 - i) % k]).collect();
        Cycle { vertices, edges }
    }

    /// `(arriving dart, leaving dart)` at each vertex of the cycle.
    pub fn darts(&self, g: &Multigraph) -> Vec<(Dart, Dart)> {
        let k = self.edges.len();
        if k == 1 {
            let e = self.edges[0];
            return vec![(2 * e + 1, 2 * e)];
        }
        (0..k)
            .map(|i| {
                let v = self.vertices[i];
                let at = |e: EdgeId| if g.endpoints(e).0 == v { 2 * e } else { 2 * e + 1 };
                (at(self.edges[(i + k - 1) % k]), at(self.edges[i]))
            })
            .collect()
    }
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.vertices.iter().map(|v| v.to_string()).collect();
        write!(f, "{} {}", parts.join(" "), self.vertices[0])
    }
}

/// Splits a 2-regular edge set into its cycles. Each cycle starts at the
/// first endpoint of its least edge.
pub fn split_two_regular(g: &Multigraph, edges: &[EdgeId]) -> Vec<Cycle> {
    split_two_regular_checked(g, edges).expect("edge set is 2-regular")
}

fn split_two_regular_checked(g: &Multigraph, edges: &[EdgeId]) -> Result<Vec<Cycle>> {
    let mut local: Vec<Vec<EdgeId>> = vec![Vec::new(); g.vertex_count()];
    let mut sorted = edges.to_vec();
    sorted.sort_unstable();
    for &e in &sorted {
        let (a, b) = g.endpoints(e);
        local[a].push(e);
        local[b].push(e);
    }
    if let Some(v) = local.iter().position(|l| !l.is_empty() && l.len() != 2) {
        return Err(Error::CycleSet(format!("vertex {v} has degree {} in the edge set", local[v].len())));
    }
    let mut used = vec![false; g.edge_count()];
    let mut out = Vec::new();
    for &e0 in &sorted {
        if used[e0] {
            continue;
        }
        used[e0] = true;
        let (a, b) = g.endpoints(e0);
        let mut vertices = vec![a];
        let mut cycle_edges = vec![e0];
        let (mut cur, mut prev) = (b, e0);
        while cur != a {
            let f = if local[cur][0] == prev { local[cur][1] } else { local[cur][0] };
            used[f] = true;
            vertices.push(cur);
            cycle_edges.push(f);
            cur = g.other(f, cur);
            prev = f;
        }
        out.push(Cycle { vertices, edges: cycle_edges });
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Role {
    Decomposition,
    Ccd,
    Cdc,
}

impl Role {
    fn multiplicity(self) -> usize {
        match self {
            Role::Decomposition | Role::Ccd => 1,
            Role::Cdc => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleSet {
    pub cycles: Vec<Cycle>,
    pub role: Role,
}

impl CycleSet {
    pub fn new(cycles: Vec<Cycle>, role: Role) -> Self {
        CycleSet { cycles, role }
    }

    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    /// Sorted edge sets of the cycles, sorted; equal for two sets that
    /// agree as families of edge sets.
    pub fn edge_family(&self) -> Vec<Vec<EdgeId>> {
        let mut fam: Vec<Vec<EdgeId>> = self.cycles.iter().map(|c| c.edge_set()).collect();
        fam.sort();
        fam
    }

    /// One cycle per line as a vertex sequence.
    pub fn to_text(&self) -> String {
        self.cycles.iter().map(|c| format!("{c}\n")).collect()
    }

    pub fn parse_text(g: &Multigraph, text: &str, role: Role) -> Result<Self> {
        let mut cycles = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut vs: Vec<Vertex> = line
                .split_whitespace()
                .map(|t| t.parse().map_err(|_| Error::CycleSet(format!("line {}: bad vertex {t:?}", i + 1))))
                .collect::<Result<_>>()?;
            if vs.len() > 1 && vs.first() == vs.last() {
                vs.pop();
            }
            cycles.push(
                Cycle::from_vertices(g, &vs)
                    .map_err(|e| Error::CycleSet(format!("line {}: {e}", i + 1)))?,
            );
        }
        Ok(CycleSet::new(cycles, role))
    }
}

fn times(k: usize) -> String {
    match k {
        0 => "zero times".into(),
        1 => "once".into(),
        2 => "twice".into(),
        3 => "three times".into(),
        k => format!("{k} times"),
    }
}

/// Checks every member is a cycle of `g` and every edge is covered as
/// often as the role demands; reports the first violating edge.
pub fn verify_cycle_set(g: &Multigraph, s: &CycleSet) -> Result<()> {
    let mut count = vec![0usize; g.edge_count()];
    for (i, c) in s.cycles.iter().enumerate() {
        c.check_in(g)
            .map_err(|e| Error::CycleSet(format!("member {i}: {e}")))?;
        for &e in c.edges() {
            count[e] += 1;
        }
    }
    let want = s.role.multiplicity();
    if let Some(e) = (0..g.edge_count()).find(|&e| count[e] != want) {
        return Err(Error::CycleSet(format!("edge {e} covered {}", times(count[e]))));
    }
    Ok(())
}

/// One vertex per cycle, adjacent when the cycles share a vertex.
pub fn intersection_graph(cycles: &[Cycle]) -> Multigraph {
    let mut g = Multigraph::new(cycles.len());
    for i in 0..cycles.len() {
        for j in i + 1..cycles.len() {
            if cycles[i].vertices().iter().any(|&v| cycles[j].contains_vertex(v)) {
                g.add_edge(i, j);
            }
        }
    }
    g
}

/// Exact chromatic number of the underlying simple graph. Loops are ignored.
pub fn chromatic_number(g: &Multigraph) -> usize {
    if g.vertex_count() == 0 {
        return 0;
    }
    (1..=g.vertex_count())
        .find(|&k| vertex_coloring(g, k).is_some())
        .unwrap()
}

/// A proper vertex colouring with colours `0..k`, if one exists.
pub fn vertex_coloring(g: &Multigraph, k: usize) -> Option<Vec<usize>> {
    let n = g.vertex_count();
    let adj: Vec<Vec<Vertex>> = (0..n)
        .map(|v| {
            let mut a: Vec<Vertex> = g.neighbors(v).filter(|&w| w != v).collect();
            a.sort_unstable();
            a.dedup();
            a
        })
        .collect();
    let mut order: Vec<Vertex> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(adj[v].len()));
    let mut color = vec![usize::MAX; n];
    fn go(i: usize, order: &[Vertex], adj: &[Vec<Vertex>], color: &mut [usize], k: usize, used: usize) -> bool {
        if i == order.len() {
            return true;
        }
        let v = order[i];
        // A fresh colour is interchangeable with any other fresh one.
        for c in 0..k.min(used + 1) {
            if adj[v].iter().all(|&w| color[w] != c) {
                color[v] = c;
                if go(i + 1, order, adj, color, k, used.max(c + 1)) {
                    return true;
                }
                color[v] = usize::MAX;
            }
        }
        false
    }
    go(0, &order, &adj, &mut color, k, 0).then_some(color)
}

/// Visits every cycle of `g` exactly once.
pub fn for_each_cycle(g: &Multigraph, mut visit: impl FnMut(&Cycle) -> ControlFlow<()>) {
    let _ = cycles_inner(g, &mut visit);
}

fn cycles_inner(g: &Multigraph, visit: &mut impl FnMut(&Cycle) -> ControlFlow<()>) -> ControlFlow<()> {
    for (e, &(a, b)) in g.edges().iter().enumerate() {
        if a == b {
            visit(&Cycle { vertices: vec![a], edges: vec![e] })?;
        }
    }
    for (e, &(a, b)) in g.edges().iter().enumerate() {
        for (f, &(c, d)) in g.edges().iter().enumerate().skip(e + 1) {
            if a != b && ((a, b) == (c, d) || (a, b) == (d, c)) {
                let (lo, hi) = (a.min(b), a.max(b));
                visit(&Cycle { vertices: vec![lo, hi], edges: vec![e, f] })?;
            }
        }
    }
    let n = g.vertex_count();
    let mut on_path = vec![false; n];
    for s in 0..n {
        let mut vertices = vec![s];
        let mut edges = Vec::new();
        on_path[s] = true;
        long_cycles_from(g, s, &mut vertices, &mut edges, &mut on_path, visit)?;
        on_path[s] = false;
    }
    ControlFlow::Continue(())
}

fn long_cycles_from(
    g: &Multigraph,
    s: Vertex,
    vertices: &mut Vec<Vertex>,
    edges: &mut Vec<EdgeId>,
    on_path: &mut [bool],
    visit: &mut impl FnMut(&Cycle) -> ControlFlow<()>,
) -> ControlFlow<()> {
    let x = *vertices.last().unwrap();
    for &e in g.incident(x) {
        let y = g.other(e, x);
        if y == x {
            continue;
        }
        if y == s {
            if vertices.len() >= 3 && vertices[1] < x {
                edges.push(e);
                let c = Cycle { vertices: vertices.clone(), edges: edges.clone() };
                edges.pop();
                visit(&c)?;
            }
            continue;
        }
        if y < s || on_path[y] {
            continue;
        }
        on_path[y] = true;
        vertices.push(y);
        edges.push(e);
        let flow = long_cycles_from(g, s, vertices, edges, on_path, visit);
        edges.pop();
        vertices.pop();
        on_path[y] = false;
        flow?;
    }
    ControlFlow::Continue(())
}

/// No edge has both endpoints off the cycle.
pub fn is_dominating(g: &Multigraph, c: &Cycle) -> bool {
    let mut on = vec![false; g.vertex_count()];
    for &v in c.vertices() {
        on[v] = true;
    }
    g.edges().iter().all(|&(a, b)| on[a] || on[b])
}

/// Dominating cycles of `g`, at most `limit` of them when a limit is given.
pub fn find_dominating_cycles(g: &Multigraph, limit: Option<usize>) -> Vec<Cycle> {
    let mut out = Vec::new();
    if limit == Some(0) {
        return out;
    }
    for_each_cycle(g, |c| {
        if is_dominating(g, c) {
            out.push(c.clone());
            if limit.is_some_and(|l| out.len() >= l) {
                return ControlFlow::Break(());
            }
        }
        ControlFlow::Continue(())
    });
    out
}

/// Default search budget (recursion steps) for superset-cycle searches.
pub const STABILITY_BUDGET: u64 = 50_000_000;

/// No other cycle passes through all vertices of `c`.
pub fn is_stable(g: &Multigraph, c: &Cycle) -> Result<bool> {
    let mut found = false;
    superset_cycles(g, c, STABILITY_BUDGET, |_| {
        found = true;
        ControlFlow::Break(())
    })?;
    Ok(!found)
}

/// Visits the cycles `D != c` with `V(c) ⊆ V(D)`. Fails with
/// [`Error::Undecided`] when the step budget runs out.
pub fn superset_cycles(
    g: &Multigraph,
    c: &Cycle,
    budget: u64,
    mut visit: impl FnMut(&Cycle) -> ControlFlow<()>,
) -> Result<()> {
    let n = g.vertex_count();
    let mut required = vec![false; n];
    for &v in c.vertices() {
        required[v] = true;
    }
    let own = c.edge_set();
    let mut wrapped = |d: &Cycle| {
        if d.edge_set() == own || !c.vertices().iter().all(|&v| d.contains_vertex(v)) {
            ControlFlow::Continue(())
        } else {
            visit(d)
        }
    };
    if c.len() <= 2 {
        // Short cycles: a full enumeration is cheap enough at this size.
        let mut steps = 0u64;
        let mut out_of_budget = false;
        for_each_cycle(g, |d| {
            steps += 1;
            if steps > budget {
                out_of_budget = true;
                return ControlFlow::Break(());
            }
            wrapped(d)
        });
        return if out_of_budget {
            Err(Error::Undecided("superset cycle search exceeded its budget".into()))
        } else {
            Ok(())
        };
    }
    let s = *c.vertices().iter().min().unwrap();
    let mut search = Superset {
        g,
        s,
        required: &required,
        on_path: vec![false; n],
        vertices: vec![s],
        edges: Vec::new(),
        steps: 0,
        budget,
    };
    search.on_path[s] = true;
    match search.extend(&mut wrapped) {
        Err(e) => Err(e),
        Ok(_) => Ok(()),
    }
}

struct Superset<'a> {
    g: &'a Multigraph,
    s: Vertex,
    required: &'a [bool],
    on_path: Vec<bool>,
    vertices: Vec<Vertex>,
    edges: Vec<EdgeId>,
    steps: u64,
    budget: u64,
}

impl Superset<'_> {
    /// Every required vertex off the path keeps two usable edges.
    fn feasible(&self) -> bool {
        let x = *self.vertices.last().unwrap();
        (0..self.g.vertex_count()).all(|r| {
            if !self.required[r] || self.on_path[r] {
                return true;
            }
            let usable = self
                .g
                .incident(r)
                .iter()
                .filter(|&&e| {
                    let w = self.g.other(e, r);
                    w != r && (!self.on_path[w] || w == x || w == self.s)
                })
                .count();
            usable >= 2
        })
    }

    fn extend(&mut self, visit: &mut impl FnMut(&Cycle) -> ControlFlow<()>) -> Result<ControlFlow<()>> {
        self.steps += 1;
        if self.steps > self.budget {
            return Err(Error::Undecided("superset cycle search exceeded its budget".into()));
        }
        if !self.feasible() {
            return Ok(ControlFlow::Continue(()));
        }
        let x = *self.vertices.last().unwrap();
        for &e in self.g.incident(x) {
            let y = self.g.other(e, x);
            if y == x {
                continue;
            }
            if y == self.s {
                if self.vertices.len() >= 3 && self.vertices[1] < x {
                    self.edges.push(e);
                    let c = Cycle { vertices: self.vertices.clone(), edges: self.edges.clone() };
                    self.edges.pop();
                    if visit(&c).is_break() {
                        return Ok(ControlFlow::Break(()));
                    }
                }
                continue;
            }
            if self.on_path[y] {
                continue;
            }
            self.on_path[y] = true;
            self.vertices.push(y);
            self.edges.push(e);
            let flow = self.extend(visit);
            self.edges.pop();
            self.vertices.pop();
            self.on_path[y] = false;
            if flow?.is_break() {
                return Ok(ControlFlow::Break(()));
            }
        }
        Ok(ControlFlow::Continue(()))
    }
}
