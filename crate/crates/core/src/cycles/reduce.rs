//! The reduction loop behind the dominating-cycle argument: while the
//! dominating cycle is not stable, replace it by a larger one, peel off the
//! cycles it leaves behind, suppress degree-2 vertices and start over.

use std::ops::ControlFlow;

use super::{
    find_compatible_decomposition, is_dominating, split_two_regular, superset_cycles, verify_compatible, Cycle,
    CycleSet, Role, STABILITY_BUDGET,
};
use crate::constructions::{associate_trail, transitions_from_trail};
use crate::error::{Error, Result};
use crate::graph::{CubicGraph, EdgeId, Multigraph};
use crate::ppm::{contract, dart_edge, dart_vertex, ppm_from_dominating_cycle, reverse, ContractedGraph, Dart};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ReductionTag {
    /// A level's cycle was stable and its quotient had a compatible
    /// decomposition.
    Stable,
    /// The residual graph collapsed to a single cycle.
    Cycle,
    /// A level's cycle was stable but its quotient has no compatible
    /// decomposition.
    Stuck,
}

impl std::fmt::Display for ReductionTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ReductionTag::Stable => "stable",
            ReductionTag::Cycle => "cycle",
            ReductionTag::Stuck => "stuck",
        })
    }
}

#[derive(Clone, Debug)]
pub struct ReductionLevel {
    pub cubic: CubicGraph,
    pub cycle: Cycle,
    pub stable: bool,
    /// The least cycle through all vertices of `cycle`, when not stable.
    pub superset: Option<Cycle>,
    /// Cycles removed at this level, as cycles of the base quotient.
    pub extracted: Vec<Cycle>,
}

#[derive(Clone, Debug)]
pub struct ReductionTrace {
    /// `G3 / (G3 - E(C))` of the input, with the transitions of `C`.
    pub base: ContractedGraph,
    pub levels: Vec<ReductionLevel>,
    pub tag: ReductionTag,
    /// All extracted cycles plus the final piece, as a decomposition of the
    /// base quotient. Absent when stuck.
    pub decomposition: Option<CycleSet>,
}

impl ReductionTrace {
    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    /// The level at which the search got stuck.
    pub fn stuck_level(&self) -> Option<&ReductionLevel> {
        (self.tag == ReductionTag::Stuck).then(|| self.levels.last()).flatten()
    }
}

/// Current eulerian graph, its trail, and the base darts behind each edge.
struct State {
    h: Multigraph,
    trail: Vec<Dart>,
    paths: Vec<Vec<Dart>>,
}

impl State {
    fn expand(&self, darts: &[Dart], base: &Multigraph) -> Result<Cycle> {
        let mut out = Vec::new();
        for &d in darts {
            let path = &self.paths[dart_edge(d)];
            if d % 2 == 0 {
                out.extend(path.iter().copied());
            } else {
                out.extend(path.iter().rev().map(|&x| reverse(x)));
            }
        }
        darts_to_cycle(base, &out)
    }

    fn expand_cycle(&self, c: &Cycle, base: &Multigraph) -> Result<Cycle> {
        let leaving: Vec<Dart> = c.darts(&self.h).into_iter().map(|(_, out)| out).collect();
        self.expand(&leaving, base)
    }
}

fn darts_to_cycle(g: &Multigraph, darts: &[Dart]) -> Result<Cycle> {
    let vertices = darts.iter().map(|&d| dart_vertex(g, d)).collect();
    let edges = darts.iter().map(|&d| dart_edge(d)).collect();
    let c = Cycle::new_unchecked(vertices, edges);
    c.check_in(g)
        .map_err(|e| Error::Invariant(format!("reassembled walk is not a cycle: {e}")))?;
    Ok(c)
}

/// Runs the reduction from a dominating cycle of a cubic graph.
pub fn sabidussi_reduce(g3: &CubicGraph, c: &Cycle) -> Result<ReductionTrace> {
    c.check_in(g3)?;
    if !is_dominating(g3, c) {
        return Err(Error::Precondition("cycle is not dominating".into()));
    }
    let m = ppm_from_dominating_cycle(g3, c)?;
    let base = contract(g3, &m)?;
    // Walking C gives the trail in the quotient.
    let mut quotient_edge = vec![usize::MAX; g3.edge_count()];
    for (q, &e) in base.edge_origin.iter().enumerate() {
        quotient_edge[e] = q;
    }
    let trail: Vec<Dart> = c
        .darts(g3)
        .into_iter()
        .map(|(_, d)| 2 * quotient_edge[dart_edge(d)] + d % 2)
        .collect();
    let mut state = State {
        h: base.graph.clone(),
        trail,
        paths: (0..base.graph.edge_count()).map(|q| vec![2 * q]).collect(),
    };
    let mut levels = Vec::new();
    let mut pieces: Vec<Cycle> = Vec::new();
    loop {
        let assoc = associate_trail(&state.h, &state.trail)?;
        let mut level = ReductionLevel {
            cubic: assoc.graph.clone(),
            cycle: assoc.cycle.clone(),
            stable: false,
            superset: None,
            extracted: Vec::new(),
        };
        let superset = least_superset(&assoc.graph, &assoc.cycle)?;
        let Some(c1) = superset else {
            level.stable = true;
            levels.push(level);
            let t = transitions_from_trail(&state.h, &state.trail);
            let Some(s) = find_compatible_decomposition(&state.h, &t) else {
                return Ok(ReductionTrace { base, levels, tag: ReductionTag::Stuck, decomposition: None });
            };
            for cyc in &s.cycles {
                pieces.push(state.expand_cycle(cyc, &base.graph)?);
            }
            return finish(base, levels, ReductionTag::Stable, pieces);
        };
        // The cycle edges of C1, in order, form a closed trail T1.
        let t1: Vec<Dart> = c1
            .darts(&assoc.graph)
            .into_iter()
            .filter_map(|(_, d)| assoc.trail_dart(d))
            .collect();
        let mut in_t1 = vec![false; state.h.edge_count()];
        for &d in &t1 {
            in_t1[dart_edge(d)] = true;
        }
        let rest: Vec<EdgeId> = (0..state.h.edge_count()).filter(|&e| !in_t1[e]).collect();
        for cyc in split_two_regular(&state.h, &rest) {
            let lifted = state.expand_cycle(&cyc, &base.graph)?;
            level.extracted.push(lifted.clone());
            pieces.push(lifted);
        }
        level.superset = Some(c1);
        levels.push(level);
        match suppress(&state, &t1) {
            Suppressed::Cycle => {
                pieces.push(state.expand(&t1, &base.graph)?);
                return finish(base, levels, ReductionTag::Cycle, pieces);
            }
            Suppressed::Next(next) => state = next,
        }
    }
}

fn finish(
    base: ContractedGraph,
    levels: Vec<ReductionLevel>,
    tag: ReductionTag,
    pieces: Vec<Cycle>,
) -> Result<ReductionTrace> {
    let s = CycleSet::new(pieces, Role::Ccd);
    verify_compatible(&base.graph, &base.transitions, &s)
        .map_err(|e| Error::Invariant(format!("reassembled decomposition: {e}")))?;
    Ok(ReductionTrace { base, levels, tag, decomposition: Some(s) })
}

/// Least cycle (by sorted edge ids) through all vertices of `c`, other
/// than `c` itself.
fn least_superset(g: &Multigraph, c: &Cycle) -> Result<Option<Cycle>> {
    let mut best: Option<(Vec<EdgeId>, Cycle)> = None;
    superset_cycles(g, c, STABILITY_BUDGET, |d| {
        let key = d.edge_set();
        if best.as_ref().is_none_or(|(k, _)| key < *k) {
            best = Some((key, d.clone()));
        }
        ControlFlow::Continue(())
    })?;
    Ok(best.map(|(_, d)| d))
}

enum Suppressed {
    Cycle,
    Next(State),
}

/// Restricts to the edges of `t1` and merges runs through degree-2 vertices.
fn suppress(state: &State, t1: &[Dart]) -> Suppressed {
    let h = &state.h;
    let mut degree = vec![0usize; h.vertex_count()];
    for &d in t1 {
        degree[dart_vertex(h, d)] += 1;
        degree[dart_vertex(h, reverse(d))] += 1;
    }
    let Some(start) = t1.iter().position(|&d| degree[dart_vertex(h, d)] > 2) else {
        return Suppressed::Cycle;
    };
    let k = t1.len();
    let rotated: Vec<Dart> = (0..k).map(|i| t1[(start + i) % k]).collect();
    let mut index = vec![usize::MAX; h.vertex_count()];
    let mut next_h = Multigraph::new(0);
    let mut vertex = |v: usize, g: &mut Multigraph| {
        if index[v] == usize::MAX {
            index[v] = g.add_vertex();
        }
        index[v]
    };
    let mut paths = Vec::new();
    let mut trail = Vec::new();
    let mut i = 0;
    while i < k {
        let from = dart_vertex(h, rotated[i]);
        let mut path = Vec::new();
        let mut to;
        loop {
            let d = rotated[i];
            let p = &state.paths[dart_edge(d)];
            if d.is_multiple_of(2) {
                path.extend(p.iter().copied());
            } else {
                path.extend(p.iter().rev().map(|&x| reverse(x)));
            }
            to = dart_vertex(h, reverse(d));
            i += 1;
            if degree[to] > 2 {
                break;
            }
        }
        let a = vertex(from, &mut next_h);
        let b = vertex(to, &mut next_h);
        let e = next_h.add_edge(a, b);
        trail.push(2 * e);
        paths.push(path);
    }
    Suppressed::Next(State { h: next_h, trail, paths })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::{k4, prism};

    #[test]
    fn k4_hamiltonian_cycle_collapses_in_one_level() {
        let g = CubicGraph::new(k4()).unwrap();
        let c = Cycle::from_vertices(&g, &[0, 1, 2, 3]).unwrap();
        let trace = sabidussi_reduce(&g, &c).unwrap();
        assert_eq!(trace.tag, ReductionTag::Cycle);
        assert_eq!(trace.depth(), 1);
        assert!(trace.decomposition.is_some());
    }

    #[test]
    fn prism_five_cycle_needs_two_levels() {
        let g = CubicGraph::new(prism()).unwrap();
        let c = Cycle::from_vertices(&g, &[0, 1, 2, 5, 3]).unwrap();
        let trace = sabidussi_reduce(&g, &c).unwrap();
        assert!(trace.depth() >= 2, "depth {}", trace.depth());
        assert_ne!(trace.tag, ReductionTag::Stuck);
    }

    #[test]
    fn non_dominating_cycle_is_rejected() {
        let g = CubicGraph::new(prism()).unwrap();
        let c = Cycle::from_vertices(&g, &[0, 1, 2]).unwrap();
        assert!(matches!(sabidussi_reduce(&g, &c), Err(Error::Precondition(_))));
    }
}
