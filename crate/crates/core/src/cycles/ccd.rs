//! Compatible cycle decompositions and their lifts to cycle double covers.

use std::ops::ControlFlow;

use super::{split_two_regular, Cycle, CycleSet, Role};
use crate::error::{Error, Result};
use crate::graph::{EdgeColoring, EdgeId, Multigraph, Vertex};
use crate::ppm::{
    complement_cycles, contract, reverse, Component, ContractedGraph, Dart, PseudoMatching,
    TransitionSystem,
};

/// Visits each decomposition of `g` into vertex-simple cycles that never
/// pass through both darts of a transition pair. Each decomposition is
/// visited once; the cycle through the lowest unused edge is built first
/// and traversed from that edge's first endpoint.
pub fn for_each_compatible_decomposition(
    g: &Multigraph,
    t: &TransitionSystem,
    mut visit: impl FnMut(&[Cycle]) -> ControlFlow<()>,
) {
    let mut search = Search {
        g,
        partner: t.partner_table(g),
        used: vec![false; g.edge_count()],
        on_path: vec![false; g.vertex_count()],
        cycles: Vec::new(),
        vertices: Vec::new(),
        edges: Vec::new(),
        start_dart: 0,
    };
    if (0..g.vertex_count()).all(|v| search.pairable(v)) {
        let _ = search.next_cycle(&mut visit);
    }
}

pub fn find_compatible_decomposition(g: &Multigraph, t: &TransitionSystem) -> Option<CycleSet> {
    let mut found = None;
    for_each_compatible_decomposition(g, t, |cycles| {
        found = Some(CycleSet::new(cycles.to_vec(), Role::Ccd));
        ControlFlow::Break(())
    });
    found
}

/// A compatible cycle decomposition of the quotient, if one exists.
pub fn find_ccd(cg: &ContractedGraph) -> Option<CycleSet> {
    find_compatible_decomposition(&cg.graph, &cg.transitions)
}

/// Every compatible cycle decomposition of the quotient, up to `limit`.
pub fn enumerate_ccds(cg: &ContractedGraph, limit: Option<usize>) -> Vec<CycleSet> {
    let mut out = Vec::new();
    if limit == Some(0) {
        return out;
    }
    for_each_compatible_decomposition(&cg.graph, &cg.transitions, |cycles| {
        out.push(CycleSet::new(cycles.to_vec(), Role::Ccd));
        if limit.is_some_and(|l| out.len() >= l) {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    out
}

struct Search<'a> {
    g: &'a Multigraph,
    partner: Vec<Option<Dart>>,
    used: Vec<bool>,
    on_path: Vec<bool>,
    cycles: Vec<Cycle>,
    vertices: Vec<Vertex>,
    edges: Vec<EdgeId>,
    start_dart: Dart,
}

impl Search<'_> {
    fn forbidden(&self, a: Dart, b: Dart) -> bool {
        self.partner[a] == Some(b)
    }

    fn dart_at(&self, e: EdgeId, v: Vertex) -> Dart {
        if self.g.endpoints(e).0 == v {
            2 * e
        } else {
            2 * e + 1
        }
    }

    /// The unused darts at `v` can still be paired into cycle passages.
    fn pairable(&self, v: Vertex) -> bool {
        let mut free: Vec<Dart> = Vec::new();
        let mut seen_loops: Vec<EdgeId> = Vec::new();
        for &e in self.g.incident(v) {
            if self.used[e] {
                continue;
            }
            if self.g.is_loop(e) {
                if !seen_loops.contains(&e) {
                    seen_loops.push(e);
                    if self.forbidden(2 * e, 2 * e + 1) {
                        return false;
                    }
                }
            } else {
                free.push(self.dart_at(e, v));
            }
        }
        self.perfect_pairing(&mut free)
    }

    fn perfect_pairing(&self, free: &mut Vec<Dart>) -> bool {
        let Some(first) = free.pop() else {
            return true;
        };
        for i in 0..free.len() {
            if self.forbidden(first, free[i]) {
                continue;
            }
            let other = free.swap_remove(i);
            let ok = self.perfect_pairing(free);
            free.push(other);
            let last = free.len() - 1;
            free.swap(i, last);
            if ok {
                free.push(first);
                return true;
            }
        }
        free.push(first);
        false
    }

    fn next_cycle(&mut self, visit: &mut impl FnMut(&[Cycle]) -> ControlFlow<()>) -> ControlFlow<()> {
        let Some(e0) = self.used.iter().position(|&u| !u) else {
            return visit(&self.cycles);
        };
        let (a, b) = self.g.endpoints(e0);
        self.used[e0] = true;
        if a == b {
            if !self.forbidden(2 * e0, 2 * e0 + 1) {
                self.cycles.push(Cycle::new_unchecked(vec![a], vec![e0]));
                let flow = self.next_cycle(visit);
                self.cycles.pop();
                self.used[e0] = false;
                return flow;
            }
            self.used[e0] = false;
            return ControlFlow::Continue(());
        }
        self.on_path[a] = true;
        self.on_path[b] = true;
        self.vertices = vec![a, b];
        self.edges = vec![e0];
        self.start_dart = 2 * e0;
        let flow = self.extend(b, 2 * e0 + 1, visit);
        self.on_path[a] = false;
        self.on_path[b] = false;
        self.used[e0] = false;
        flow
    }

    fn extend(
        &mut self,
        x: Vertex,
        din: Dart,
        visit: &mut impl FnMut(&[Cycle]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        let s = self.vertices[0];
        let incident = self.g.incident(x).to_vec();
        for f in incident {
            if self.used[f] || self.g.is_loop(f) {
                continue;
            }
            let dout = self.dart_at(f, x);
            if self.forbidden(din, dout) {
                continue;
            }
            let y = self.g.other(f, x);
            if y == s {
                if self.forbidden(reverse(dout), self.start_dart) {
                    continue;
                }
                self.used[f] = true;
                if self.pairable(x) && self.pairable(s) {
                    let mut edges = self.edges.clone();
                    edges.push(f);
                    let cycle = Cycle::new_unchecked(self.vertices.clone(), edges);
                    let (saved_v, saved_e, saved_s) =
                        (self.vertices.clone(), self.edges.clone(), self.start_dart);
                    for &v in cycle.vertices() {
                        self.on_path[v] = false;
                    }
                    self.cycles.push(cycle);
                    let flow = self.next_cycle(visit);
                    self.cycles.pop();
                    for &v in &saved_v {
                        self.on_path[v] = true;
                    }
                    self.vertices = saved_v;
                    self.edges = saved_e;
                    self.start_dart = saved_s;
                    if flow.is_break() {
                        self.used[f] = false;
                        return flow;
                    }
                }
                self.used[f] = false;
            } else if !self.on_path[y] {
                self.used[f] = true;
                if self.pairable(x) {
                    self.on_path[y] = true;
                    self.vertices.push(y);
                    self.edges.push(f);
                    let flow = self.extend(y, reverse(dout), visit);
                    self.edges.pop();
                    self.vertices.pop();
                    self.on_path[y] = false;
                    if flow.is_break() {
                        self.used[f] = false;
                        return flow;
                    }
                }
                self.used[f] = false;
            }
        }
        ControlFlow::Continue(())
    }
}

/// Checks that `s` decomposes `g` and that no member uses both darts of a
/// transition pair.
pub fn verify_compatible(g: &Multigraph, t: &TransitionSystem, s: &CycleSet) -> Result<()> {
    let as_decomposition = CycleSet::new(s.cycles.clone(), Role::Decomposition);
    super::verify_cycle_set(g, &as_decomposition)?;
    let partner = t.partner_table(g);
    for (i, c) in s.cycles.iter().enumerate() {
        // A cycle may meet a transition pair only where it passes a vertex.
        for (din, dout) in c.darts(g) {
            if partner[din] == Some(dout) {
                return Err(Error::CycleSet(format!(
                    "member {i} uses both darts {din} and {dout} of a transition"
                )));
            }
        }
    }
    Ok(())
}

/// Lifts each compatible cycle of `G/M` through the components it passes
/// and adds the cycles of `G - E(M)`.
pub fn cdc_from_ccd(g: &Multigraph, m: &PseudoMatching, ccd: &CycleSet) -> Result<CycleSet> {
    let cg = contract(g, m)?;
    verify_compatible(&cg.graph, &cg.transitions, ccd)?;
    let mut cycles = Vec::with_capacity(ccd.len());
    for c in &ccd.cycles {
        cycles.push(lift_cycle(g, m, &cg, c)?);
    }
    cycles.extend(complement_cycles(g, m));
    let cdc = CycleSet::new(cycles, Role::Cdc);
    super::verify_cycle_set(g, &cdc)
        .map_err(|e| Error::Invariant(format!("lifted cover fails verification: {e}")))?;
    Ok(cdc)
}

fn lift_cycle(g: &Multigraph, m: &PseudoMatching, cg: &ContractedGraph, c: &Cycle) -> Result<Cycle> {
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    for (din, dout) in c.darts(&cg.graph) {
        let u = cg.dart_origin(g, din);
        let w = cg.dart_origin(g, dout);
        if u == w {
            return Err(Error::Invariant(format!("cycle enters and leaves through vertex {u}")));
        }
        match m.components()[cg.component_of[u]] {
            Component::K2(e) => {
                vertices.extend([u, w]);
                edges.push(e);
            }
            Component::Claw { center, edges: spokes } => {
                let spoke = |x: Vertex| *spokes.iter().find(|&&e| g.other(e, center) == x).unwrap();
                vertices.extend([u, center, w]);
                edges.extend([spoke(u), spoke(w)]);
            }
        }
        edges.push(cg.edge_origin[dout / 2]);
    }
    let lifted = Cycle::new_unchecked(vertices, edges);
    lifted
        .check_in(g)
        .map_err(|e| Error::Invariant(format!("lift is not a cycle: {e}")))?;
    Ok(lifted)
}

/// Pushes a proper colouring to `G/M` and splits each colour class into
/// cycles.
pub fn ccd_from_coloring(g: &Multigraph, m: &PseudoMatching, coloring: &EdgeColoring) -> Result<CycleSet> {
    coloring
        .check_proper(g)
        .map_err(|e| Error::Precondition(format!("colouring is not proper: {e}")))?;
    let cg = contract(g, m)?;
    let mut cycles = Vec::new();
    for color in 1..=3u8 {
        let class: Vec<EdgeId> = (0..cg.graph.edge_count())
            .filter(|&q| coloring.color(cg.edge_origin[q]) == color)
            .collect();
        cycles.extend(split_two_regular(&cg.graph, &class));
    }
    let s = CycleSet::new(cycles, Role::Ccd);
    verify_compatible(&cg.graph, &cg.transitions, &s)
        .map_err(|e| Error::Invariant(format!("colour classes are not compatible: {e}")))?;
    Ok(s)
}

/// Colours the edges of `G` from a CCD of `G/M` and a proper colouring of
/// its intersection graph with colours `0..3` (one entry per cycle). Each
/// edge of `M` receives the colour missing at its endpoints.
pub fn coloring_from_ccd(
    g: &Multigraph,
    m: &PseudoMatching,
    ccd: &CycleSet,
    cycle_colors: &[usize],
) -> Result<EdgeColoring> {
    if cycle_colors.len() != ccd.len() || cycle_colors.iter().any(|&c| c > 2) {
        return Err(Error::Parameter("need one colour in 0..3 per cycle".into()));
    }
    let cg = contract(g, m)?;
    let mut colors = vec![0u8; g.edge_count()];
    for (i, c) in ccd.cycles.iter().enumerate() {
        for &q in c.edges() {
            colors[cg.edge_origin[q]] = cycle_colors[i] as u8 + 1;
        }
    }
    let mut is_center = vec![false; g.vertex_count()];
    for c in m.components() {
        if let Component::Claw { center, .. } = *c {
            is_center[center] = true;
        }
    }
    for e in m.edges() {
        let (a, b) = g.endpoints(e);
        // The end that is not a claw centre carries two coloured edges.
        let end = if is_center[a] { b } else { a };
        let seen: u8 = g.incident(end).iter().map(|&f| colors[f]).sum();
        colors[e] = 6u8.saturating_sub(seen);
    }
    let coloring = EdgeColoring::new(colors);
    coloring
        .check_proper(g)
        .map_err(|e| Error::Invariant(format!("induced colouring is not proper: {e}")))?;
    Ok(coloring)
}
