//! Small exhaustive corpora, deduplicated by canonical form.

use std::collections::HashSet;

use crate::canon::{canonical_form, CanonicalForm};
use crate::graph::{EdgeId, Multigraph};

/// All simple graphs on `n` vertices up to isomorphism, built by adding a
/// vertex with every possible neighbourhood to the graphs on `n - 1`.
pub fn all_graphs(n: usize) -> Vec<Multigraph> {
    let mut level = vec![Multigraph::new(0)];
    for k in 1..=n {
        let mut seen: HashSet<CanonicalForm> = HashSet::new();
        let mut next = Vec::new();
        for g in &level {
            for mask in 0u32..(1 << (k - 1)) {
                let mut h = g.clone();
                let v = h.add_vertex();
                for u in 0..k - 1 {
                    if mask >> u & 1 == 1 {
                        h.add_edge(u, v);
                    }
                }
                let form = canonical_form(&h);
                if seen.insert(form.clone()) {
                    next.push(form.to_graph());
                }
            }
        }
        level = next;
    }
    level
}

pub fn connected_graphs(n: usize) -> Vec<Multigraph> {
    all_graphs(n).into_iter().filter(|g| g.is_connected()).collect()
}

/// Connected cubic multigraphs on `n` vertices (`n` even, at least 2),
/// loops allowed. Each level subdivides two edges of a smaller graph
/// (possibly the same edge twice) and joins the two new vertices.
pub fn connected_cubic_multigraphs(n: usize) -> Vec<Multigraph> {
    assert!(n >= 2 && n.is_multiple_of(2), "cubic graphs need an even order");
    let mut level = vec![
        Multigraph::from_edges(2, &[(0, 1), (0, 1), (0, 1)]).unwrap(),
        Multigraph::from_edges(2, &[(0, 0), (0, 1), (1, 1)]).unwrap(),
    ];
    for _ in 0..(n - 2) / 2 {
        let mut seen: HashSet<CanonicalForm> = HashSet::new();
        let mut next = Vec::new();
        for g in &level {
            let m = g.edge_count();
            for e in 0..m {
                for f in e..m {
                    let h = insert_edge(g, e, f);
                    let form = canonical_form(&h);
                    if seen.insert(form.clone()) {
                        next.push(form.to_graph());
                    }
                }
            }
        }
        level = next;
    }
    level
}

/// Connected simple cubic graphs on `n` vertices up to isomorphism.
pub fn connected_cubic_graphs(n: usize) -> Vec<Multigraph> {
    connected_cubic_multigraphs(n)
        .into_iter()
        .filter(|g| g.is_simple())
        .collect()
}

fn insert_edge(g: &Multigraph, e: EdgeId, f: EdgeId) -> Multigraph {
    let mut edges: Vec<(usize, usize)> = Vec::with_capacity(g.edge_count() + 3);
    let x = g.vertex_count();
    let y = x + 1;
    for (i, &(a, b)) in g.edges().iter().enumerate() {
        if i == e && i == f {
            edges.extend([(a, x), (x, y), (y, b)]);
        } else if i == e {
            edges.extend([(a, x), (x, b)]);
        } else if i == f {
            edges.extend([(a, y), (y, b)]);
        } else {
            edges.push((a, b));
        }
    }
    edges.push((x, y));
    Multigraph::from_edges(x + 2, &edges).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_counts() {
        let counts: Vec<usize> = (1..=6).map(|n| all_graphs(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 4, 11, 34, 156]);
        let connected: Vec<usize> = (1..=6).map(|n| connected_graphs(n).len()).collect();
        assert_eq!(connected, vec![1, 1, 2, 6, 21, 112]);
    }

    #[test]
    fn cubic_counts() {
        let counts: Vec<usize> = [4, 6, 8, 10, 12].iter().map(|&n| connected_cubic_graphs(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 5, 19, 85]);
    }
}
