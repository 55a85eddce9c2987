use crate::cycles::Cycle;
use crate::error::{Error, Result};
use crate::graph::{CubicGraph, EdgeId, Multigraph, Vertex};
use crate::ppm::{dart_edge, dart_vertex, reverse, Dart, TransitionSystem};

/// A cubic graph `G3` with dominating cycle `C_ε` built from an eulerian
/// graph and a closed trail.
#[derive(Clone, Debug)]
pub struct Association {
    pub graph: CubicGraph,
    pub cycle: Cycle,
    /// The trail as leaving darts of the eulerian graph; cycle edge `i`
    /// of `G3` is `trail[i]`.
    pub trail: Vec<Dart>,
    /// Eulerian vertex that each `G3` vertex was split from.
    pub vertex_origin: Vec<Vertex>,
    /// Eulerian edge of each `G3` edge on the cycle; `None` for splitting
    /// and hub edges.
    pub edge_origin: Vec<Option<EdgeId>>,
}

impl Association {
    /// The eulerian dart traversed by a `G3` dart on the cycle.
    pub fn trail_dart(&self, d: Dart) -> Option<Dart> {
        let e = dart_edge(d);
        self.edge_origin[e]?;
        let fwd = self.trail[e];
        Some(if d.is_multiple_of(2) { fwd } else { reverse(fwd) })
    }
}

/// Follows the transitions from dart 0 and returns the closed trail as a
/// list of leaving darts.
pub fn trail_from_transitions(g: &Multigraph, t: &TransitionSystem) -> Result<Vec<Dart>> {
    let fail = || Error::Precondition("transitions do not form one eulerian trail".into());
    t.check(g)?;
    let m = g.edge_count();
    if m == 0 {
        return Err(fail());
    }
    let partner = t.partner_table(g);
    let mut used = vec![false; m];
    let mut trail = Vec::with_capacity(m);
    let mut d: Dart = 0;
    loop {
        if std::mem::replace(&mut used[dart_edge(d)], true) {
            return Err(fail());
        }
        trail.push(d);
        let next = partner[reverse(d)].ok_or_else(fail)?;
        if next == 0 {
            break;
        }
        d = next;
    }
    if trail.len() != m {
        return Err(fail());
    }
    Ok(trail)
}

/// Consecutive pairs of a closed trail, listed at the vertex where they meet.
pub fn transitions_from_trail(g: &Multigraph, trail: &[Dart]) -> TransitionSystem {
    let k = trail.len();
    let mut pairs = vec![Vec::new(); g.vertex_count()];
    for i in 0..k {
        let arriving = reverse(trail[(i + k - 1) % k]);
        let leaving = trail[i];
        pairs[dart_vertex(g, leaving)].push((arriving, leaving));
    }
    TransitionSystem::new(pairs)
}

/// Splits every vertex of an eulerian graph with degrees 4 and 6 along the
/// trail given by `t`. A degree-4 vertex becomes two trail vertices joined
/// by an edge; a degree-6 vertex becomes three trail vertices joined to a
/// new hub.
pub fn associate(g: &Multigraph, t: &TransitionSystem) -> Result<Association> {
    if let Some(v) = (0..g.vertex_count()).find(|&v| !matches!(g.degree(v), 4 | 6)) {
        return Err(Error::Precondition(format!(
            "vertex {v} has degree {}, expected 4 or 6",
            g.degree(v)
        )));
    }
    if !g.is_connected() {
        return Err(Error::Precondition("eulerian graph is disconnected".into()));
    }
    let trail = trail_from_transitions(g, t)?;
    associate_trail(g, &trail)
}

pub(crate) fn associate_trail(g: &Multigraph, trail: &[Dart]) -> Result<Association> {
    let m = trail.len();
    let mut h = Multigraph::new(m);
    let mut vertex_origin: Vec<Vertex> = Vec::with_capacity(m);
    let mut passages: Vec<Vec<Vertex>> = vec![Vec::new(); g.vertex_count()];
    for (i, &d) in trail.iter().enumerate() {
        let v = dart_vertex(g, d);
        vertex_origin.push(v);
        passages[v].push(i);
    }
    let mut edge_origin = Vec::new();
    for (i, &d) in trail.iter().enumerate() {
        h.add_edge(i, (i + 1) % m);
        edge_origin.push(Some(dart_edge(d)));
    }
    for (v, ps) in passages.iter().enumerate() {
        match ps.as_slice() {
            &[a, b] => {
                h.add_edge(a, b);
                edge_origin.push(None);
            }
            &[a, b, c] => {
                let hub = h.add_vertex();
                vertex_origin.push(v);
                for p in [a, b, c] {
                    h.add_edge(hub, p);
                    edge_origin.push(None);
                }
            }
            other => {
                return Err(Error::Precondition(format!(
                    "trail passes vertex {v} {} times, expected 2 or 3",
                    other.len()
                )))
            }
        }
    }
    let graph = CubicGraph::new(h)?;
    let cycle = Cycle::new(&graph, (0..m).collect(), (0..m).collect())?;
    Ok(Association { graph, cycle, trail: trail.to_vec(), vertex_origin, edge_origin })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_loops_give_a_theta() {
        let g = Multigraph::from_edges(1, &[(0, 0), (0, 0)]).unwrap();
        // Leave along loop 0, come back, leave along loop 1.
        let t = TransitionSystem::new(vec![vec![(1, 2), (3, 0)]]);
        let a = associate(&g, &t).unwrap();
        assert_eq!(a.graph.vertex_count(), 2);
        assert_eq!(a.graph.edge_multiplicity(0, 1), 3);
        assert_eq!(a.cycle.len(), 2);
    }

    #[test]
    fn crossing_transitions_are_not_a_single_trail() {
        let g = Multigraph::from_edges(1, &[(0, 0), (0, 0)]).unwrap();
        let t = TransitionSystem::new(vec![vec![(0, 1), (2, 3)]]);
        assert!(matches!(associate(&g, &t), Err(Error::Precondition(_))));
    }

    #[test]
    fn wrong_degrees_are_rejected() {
        let g = Multigraph::from_edges(2, &[(0, 1), (0, 1)]).unwrap();
        let t = TransitionSystem::new(vec![vec![], vec![]]);
        assert!(associate(&g, &t).is_err());
    }

    #[test]
    fn trail_round_trip() {
        // Two vertices joined by four parallel edges.
        let g = Multigraph::from_edges(2, &[(0, 1), (0, 1), (0, 1), (0, 1)]).unwrap();
        let trail = vec![0, 3, 4, 7];
        let t = transitions_from_trail(&g, &trail);
        assert_eq!(trail_from_transitions(&g, &t).unwrap(), trail);
        let a = associate(&g, &t).unwrap();
        assert_eq!(a.graph.vertex_count(), 4);
        assert!(crate::cycles::is_dominating(&a.graph, &a.cycle));
    }
}
