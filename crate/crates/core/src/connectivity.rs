//! Cyclic edge connectivity by bond enumeration.
//!
//! A smallest cyclic edge cut is always a bond (both sides connected), so it
//! suffices to enumerate bonds of increasing size. Bonds are generated with
//! their edges in increasing index order: the first `c - 1` edges must leave
//! the graph connected and the last edge must then be a bridge.

use crate::error::{Error, Result};
use crate::graph::{CubicGraph, EdgeId, Multigraph};

/// True iff no edge cut of fewer than `k` edges separates two subgraphs
/// that both contain a cycle. Graphs without two disjoint cycles (such as
/// K4) satisfy this for every `k`.
pub fn cyclic_edge_connectivity_at_least(g: &CubicGraph, k: usize) -> Result<bool> {
    if !(2..=6).contains(&k) {
        return Err(Error::Parameter(format!("k = {k} outside 2..=6")));
    }
    require_connected(g)?;
    for size in 1..k {
        if first_cyclic_bond(g, size).is_some() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Size of a smallest cyclic edge cut, or `None` if there is none of size
/// at most `max`.
pub fn cyclic_edge_connectivity(g: &Multigraph, max: usize) -> Result<Option<usize>> {
    require_connected(g)?;
    Ok((1..=max).find(|&size| first_cyclic_bond(g, size).is_some()))
}

/// Every cyclic bond with exactly `size` edges, each sorted by edge id.
pub fn cyclic_bonds(g: &Multigraph, size: usize) -> Result<Vec<Vec<EdgeId>>> {
    require_connected(g)?;
    let mut out = Vec::new();
    visit_bonds(g, size, &mut |bond| {
        out.push(bond.to_vec());
        true
    });
    Ok(out)
}

fn require_connected(g: &Multigraph) -> Result<()> {
    if g.is_connected() {
        Ok(())
    } else {
        Err(Error::Structure("graph is disconnected".into()))
    }
}

fn first_cyclic_bond(g: &Multigraph, size: usize) -> Option<Vec<EdgeId>> {
    let mut found = None;
    visit_bonds(g, size, &mut |bond| {
        found = Some(bond.to_vec());
        false
    });
    found
}

/// Calls `visit` on each cyclic bond of the given size until it returns false.
fn visit_bonds(g: &Multigraph, size: usize, visit: &mut dyn FnMut(&[EdgeId]) -> bool) {
    if size == 0 {
        return;
    }
    let mut chosen = Vec::with_capacity(size);
    extend(g, size, 0, &mut chosen, visit);
}

fn extend(
    g: &Multigraph,
    size: usize,
    from: EdgeId,
    chosen: &mut Vec<EdgeId>,
    visit: &mut dyn FnMut(&[EdgeId]) -> bool,
) -> bool {
    if chosen.len() + 1 == size {
        for bridge in g.bridges_without(chosen) {
            if bridge < from || g.is_loop(bridge) {
                continue;
            }
            chosen.push(bridge);
            let keep_going = !is_cyclic_split(g, chosen) || visit(chosen);
            chosen.pop();
            if !keep_going {
                return false;
            }
        }
        return true;
    }
    for e in from..g.edge_count() {
        if g.is_loop(e) {
            continue;
        }
        chosen.push(e);
        let proceed = g.components_without(chosen).1 == 1;
        let keep_going = !proceed || extend(g, size, e + 1, chosen, visit);
        chosen.pop();
        if !keep_going {
            return false;
        }
    }
    true
}

/// Both sides of the two-component split contain a cycle.
fn is_cyclic_split(g: &Multigraph, cut: &[EdgeId]) -> bool {
    let (comp, count) = g.components_without(cut);
    if count != 2 {
        return false;
    }
    let mut vertices = [0usize; 2];
    let mut edges = [0usize; 2];
    for &c in &comp {
        vertices[c] += 1;
    }
    for (e, &(a, b)) in g.edges().iter().enumerate() {
        if !cut.contains(&e) && comp[a] == comp[b] {
            edges[comp[a]] += 1;
        }
    }
    edges[0] >= vertices[0] && edges[1] >= vertices[1]
}
