//! Proper 3-edge-colourings of cubic multigraphs and the snark predicate.

use std::ops::ControlFlow;

use crate::connectivity::cyclic_edge_connectivity_at_least;
use crate::error::{Error, Result};
use crate::graph::{CubicGraph, EdgeColoring, EdgeId, Multigraph, Vertex};

/// A proper 3-edge-colouring, if one exists.
pub fn find_3_edge_coloring(g: &CubicGraph) -> Option<EdgeColoring> {
    let mut found = None;
    for_each_3_edge_coloring(g, |c| {
        found = Some(c.clone());
        ControlFlow::Break(())
    });
    found
}

pub fn is_3_edge_colorable(g: &CubicGraph) -> bool {
    find_3_edge_coloring(g).is_some()
}

/// Visits proper 3-edge-colourings. The edges at the lowest vertex of each
/// component get colours 1, 2, 3 in incidence order, so each colouring is
/// visited once per permutation class rather than six times.
pub fn for_each_3_edge_coloring(
    g: &Multigraph,
    mut visit: impl FnMut(&EdgeColoring) -> ControlFlow<()>,
) {
    if g.has_loops() || !g.is_regular(3) {
        return;
    }
    let mut colors = vec![0u8; g.edge_count()];
    let (comp, count) = g.components();
    let mut seen = vec![false; count];
    for v in 0..g.vertex_count() {
        if !seen[comp[v]] {
            seen[comp[v]] = true;
            for (i, &e) in g.incident(v).iter().enumerate() {
                colors[e] = i as u8 + 1;
            }
        }
    }
    if colors.iter().enumerate().any(|(e, &c)| c != 0 && available(g, &colors, e) & (1 << c) == 0) {
        return;
    }
    let _ = search(g, &mut colors, &mut visit);
}

/// Bit mask (bits 1..=3) of colours not used on edges adjacent to `e`.
fn available(g: &Multigraph, colors: &[u8], e: EdgeId) -> u8 {
    let (a, b) = g.endpoints(e);
    let mut mask = 0b1110u8;
    for v in [a, b] {
        for &f in g.incident(v) {
            if f != e {
                mask &= !(1 << colors[f]);
            }
        }
    }
    mask & 0b1110
}

fn search(
    g: &Multigraph,
    colors: &mut Vec<u8>,
    visit: &mut impl FnMut(&EdgeColoring) -> ControlFlow<()>,
) -> ControlFlow<()> {
    // Most constrained uncoloured edge; ties by index.
    let mut pick: Option<(EdgeId, u8)> = None;
    for e in 0..colors.len() {
        if colors[e] != 0 {
            continue;
        }
        let mask = available(g, colors, e);
        if mask == 0 {
            return ControlFlow::Continue(());
        }
        if pick.is_none_or(|(_, best)| mask.count_ones() < best.count_ones()) {
            pick = Some((e, mask));
            if mask.count_ones() == 1 {
                break;
            }
        }
    }
    let Some((e, mask)) = pick else {
        return visit(&EdgeColoring::new(colors.clone()));
    };
    for c in 1..=3u8 {
        if mask & (1 << c) != 0 {
            colors[e] = c;
            let flow = search(g, colors, visit);
            colors[e] = 0;
            flow?;
        }
    }
    ControlFlow::Continue(())
}

/// Cyclically 4-edge-connected and not 3-edge-colourable. Girth 4 is
/// allowed; disconnected graphs are not snarks.
pub fn is_snark(g: &CubicGraph) -> Result<bool> {
    if !g.is_simple() {
        return Err(Error::Structure("snark test needs a simple graph".into()));
    }
    if !g.is_connected() {
        return Ok(false);
    }
    Ok(cyclic_edge_connectivity_at_least(g, 4)? && !is_3_edge_colorable(g))
}

/// Boundary colourings of a vertex set: the colour tuples on its boundary
/// edges (in the given order) that extend to a proper colouring of the
/// edges inside.
pub fn boundary_colorings(g: &Multigraph, inside: &[Vertex], boundary: &[EdgeId]) -> Vec<Vec<u8>> {
    let mut within = vec![false; g.vertex_count()];
    for &v in inside {
        within[v] = true;
    }
    let internal: Vec<EdgeId> = (0..g.edge_count())
        .filter(|&e| {
            let (a, b) = g.endpoints(e);
            within[a] && within[b]
        })
        .collect();
    let mut out = Vec::new();
    let k = boundary.len();
    for code in 0..3usize.pow(k as u32) {
        let mut colors = vec![0u8; g.edge_count()];
        let mut c = code;
        for &e in boundary {
            colors[e] = (c % 3) as u8 + 1;
            c /= 3;
        }
        if extends(g, &within, &internal, &mut colors, 0) {
            out.push(boundary.iter().map(|&e| colors[e]).collect());
        }
    }
    out
}

fn extends(g: &Multigraph, within: &[bool], internal: &[EdgeId], colors: &mut [u8], i: usize) -> bool {
    let Some(&e) = internal.get(i) else {
        return true;
    };
    for c in 1..=3u8 {
        let (a, b) = g.endpoints(e);
        let clash = [a, b]
            .iter()
            .any(|&v| within[v] && g.incident(v).iter().any(|&f| f != e && colors[f] == c));
        if !clash {
            colors[e] = c;
            if extends(g, within, internal, colors, i + 1) {
                colors[e] = 0;
                return true;
            }
            colors[e] = 0;
        }
    }
    false
}

struct Pole {
    boundary: Vec<EdgeId>,
    allowed: Vec<Vec<u8>>,
}

/// 3-edge-colourability decided through disjoint vertex sets (`poles`):
/// each is replaced by the relation its boundary colourings define, and
/// only the remaining edges are searched. Exact for any disjoint family.
pub fn is_3_edge_colorable_with_poles(g: &CubicGraph, poles: &[Vec<Vertex>]) -> Result<bool> {
    let n = g.vertex_count();
    let mut pole_of = vec![usize::MAX; n];
    for (i, p) in poles.iter().enumerate() {
        for &v in p {
            if pole_of[v] != usize::MAX {
                return Err(Error::Parameter(format!("vertex {v} lies in two poles")));
            }
            pole_of[v] = i;
        }
    }
    let poles: Vec<Pole> = poles
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let boundary: Vec<EdgeId> = (0..g.edge_count())
                .filter(|&e| {
                    let (a, b) = g.endpoints(e);
                    (pole_of[a] == i) != (pole_of[b] == i)
                })
                .collect();
            let allowed = boundary_colorings(g, p, &boundary);
            Pole { boundary, allowed }
        })
        .collect();
    if poles.iter().any(|p| p.allowed.is_empty()) {
        return Ok(false);
    }
    let outer: Vec<EdgeId> = (0..g.edge_count())
        .filter(|&e| {
            let (a, b) = g.endpoints(e);
            pole_of[a] == usize::MAX || pole_of[a] != pole_of[b]
        })
        .collect();
    let mut colors = vec![0u8; g.edge_count()];
    if let Some(v) = (0..n).find(|&v| pole_of[v] == usize::MAX) {
        for (i, &e) in g.incident(v).iter().enumerate() {
            colors[e] = i as u8 + 1;
        }
    }
    let ctx = PoleSearch { g, pole_of: &pole_of, poles: &poles, outer: &outer };
    Ok(ctx.consistent(&colors) && ctx.search(&mut colors))
}

struct PoleSearch<'a> {
    g: &'a Multigraph,
    pole_of: &'a [usize],
    poles: &'a [Pole],
    outer: &'a [EdgeId],
}

impl PoleSearch<'_> {
    fn mask(&self, colors: &[u8], e: EdgeId) -> u8 {
        let (a, b) = self.g.endpoints(e);
        let mut mask = 0b1110u8;
        for v in [a, b] {
            let p = self.pole_of[v];
            if p == usize::MAX {
                for &f in self.g.incident(v) {
                    if f != e {
                        mask &= !(1 << colors[f]);
                    }
                }
            } else {
                let pole = &self.poles[p];
                let slot = pole.boundary.iter().position(|&f| f == e).expect("boundary edge");
                let mut ok = 0u8;
                for t in &pole.allowed {
                    let fits = pole.boundary.iter().enumerate().all(|(i, &f)| i == slot || colors[f] == 0 || colors[f] == t[i]);
                    if fits {
                        ok |= 1 << t[slot];
                    }
                }
                mask &= ok;
            }
        }
        mask & 0b1110
    }

    fn consistent(&self, colors: &[u8]) -> bool {
        self.outer.iter().all(|&e| colors[e] == 0 || self.mask(colors, e) & (1 << colors[e]) != 0)
    }

    fn search(&self, colors: &mut [u8]) -> bool {
        let mut pick: Option<(EdgeId, u8)> = None;
        for &e in self.outer {
            if colors[e] != 0 {
                continue;
            }
            let mask = self.mask(colors, e);
            if mask == 0 {
                return false;
            }
            if pick.is_none_or(|(_, best)| mask.count_ones() < best.count_ones()) {
                pick = Some((e, mask));
                if mask.count_ones() == 1 {
                    break;
                }
            }
        }
        let Some((e, mask)) = pick else {
            return true;
        };
        for c in 1..=3u8 {
            if mask & (1 << c) != 0 {
                colors[e] = c;
                if self.search(colors) {
                    colors[e] = 0;
                    return true;
                }
                colors[e] = 0;
            }
        }
        false
    }
}
