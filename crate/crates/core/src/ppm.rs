//! Perfect pseudo-matchings: validation, enumeration, contraction and
//! classification of the contracted graph.

use std::fmt::Write as _;
use std::ops::ControlFlow;

use crate::cycles::{split_two_regular, Cycle};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, Multigraph, Vertex};
use crate::minors::{has_k5_minor, is_planar};

/// A half-edge: `2 * e` is the end of edge `e` at its first endpoint,
/// `2 * e + 1` the end at its second endpoint.
pub type Dart = usize;

pub fn dart_edge(d: Dart) -> EdgeId {
    d / 2
}

pub fn dart_vertex(g: &Multigraph, d: Dart) -> Vertex {
    let (a, b) = g.endpoints(d / 2);
    if d.is_multiple_of(2) {
        a
    } else {
        b
    }
}

/// The dart at the other end of the same edge.
pub fn reverse(d: Dart) -> Dart {
    d ^ 1
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Component {
    K2(EdgeId),
    Claw { center: Vertex, edges: [EdgeId; 3] },
}

impl Component {
    pub fn edges(&self) -> Vec<EdgeId> {
        match *self {
            Component::K2(e) => vec![e],
            Component::Claw { edges, .. } => edges.to_vec(),
        }
    }

    /// Vertices of the component; a claw lists its centre first.
    pub fn vertices(&self, g: &Multigraph) -> Vec<Vertex> {
        match *self {
            Component::K2(e) => {
                let (a, b) = g.endpoints(e);
                vec![a, b]
            }
            Component::Claw { center, edges } => {
                let mut out = vec![center];
                out.extend(edges.iter().map(|&e| g.other(e, center)));
                out
            }
        }
    }

    pub fn is_claw(&self) -> bool {
        matches!(self, Component::Claw { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PseudoMatching {
    components: Vec<Component>,
}

impl PseudoMatching {
    pub fn new(components: Vec<Component>) -> Self {
        PseudoMatching { components }
    }

    /// Groups an edge set into its connected pieces, each of which must be a
    /// single edge or a claw.
    pub fn from_edge_set(g: &Multigraph, edges: &[EdgeId]) -> Result<Self> {
        let (sub, origin) = {
            let mut keep = vec![false; g.edge_count()];
            for &e in edges {
                if e >= g.edge_count() {
                    return Err(Error::Structure(format!("edge {e} out of range")));
                }
                keep[e] = true;
            }
            g.filter_edges(|e| keep[e])
        };
        let (comp, count) = sub.components();
        let mut groups: Vec<Vec<EdgeId>> = vec![Vec::new(); count];
        for (i, &(a, _)) in sub.edges().iter().enumerate() {
            groups[comp[a]].push(origin[i]);
        }
        let mut components = Vec::new();
        for group in groups.into_iter().filter(|g| !g.is_empty()) {
            match group.as_slice() {
                &[e] => components.push(Component::K2(e)),
                &[e, f, h] => {
                    let center = [g.endpoints(e).0, g.endpoints(e).1]
                        .into_iter()
                        .find(|&c| [f, h].iter().all(|&x| {
                            let (p, q) = g.endpoints(x);
                            p == c || q == c
                        }))
                        .ok_or_else(|| Error::Ppm(format!("edges {e}, {f}, {h} do not form a claw")))?;
                    components.push(Component::Claw { center, edges: [e, f, h] });
                }
                other => {
                    return Err(Error::Ppm(format!(
                        "component with edges {other:?} is neither K2 nor a claw"
                    )))
                }
            }
        }
        let m = PseudoMatching { components };
        Ok(m)
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn edges(&self) -> Vec<EdgeId> {
        let mut out: Vec<EdgeId> = self.components.iter().flat_map(|c| c.edges()).collect();
        out.sort_unstable();
        out
    }

    pub fn claw_count(&self) -> usize {
        self.components.iter().filter(|c| c.is_claw()).count()
    }

    pub fn is_perfect_matching(&self) -> bool {
        self.claw_count() == 0
    }

    /// Index of the component containing each vertex.
    pub fn component_of(&self, g: &Multigraph) -> Vec<usize> {
        let mut out = vec![usize::MAX; g.vertex_count()];
        for (i, c) in self.components.iter().enumerate() {
            for v in c.vertices(g) {
                out[v] = i;
            }
        }
        out
    }

    /// Sidecar text: one `K2 a b` or `CLAW c x y z` line per component.
    pub fn to_sidecar(&self, g: &Multigraph) -> String {
        let mut out = String::new();
        for c in &self.components {
            let vs = c.vertices(g);
            match c {
                Component::K2(_) => writeln!(out, "K2 {} {}", vs[0], vs[1]),
                Component::Claw { .. } => {
                    writeln!(out, "CLAW {} {} {} {}", vs[0], vs[1], vs[2], vs[3])
                }
            }
            .unwrap();
        }
        out
    }

    pub fn parse_sidecar(g: &Multigraph, text: &str) -> Result<Self> {
        let mut components = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |message: String| Error::Sidecar { line: i + 1, message };
            let mut parts = line.split_whitespace();
            let kind = parts.next().unwrap();
            let ids: Vec<Vertex> = parts
                .map(|p| p.parse().map_err(|_| err(format!("bad vertex id {p:?}"))))
                .collect::<Result<_>>()?;
            if let Some(&v) = ids.iter().find(|&&v| v >= g.vertex_count()) {
                return Err(err(format!("vertex {v} out of range")));
            }
            let edge = |a: Vertex, b: Vertex| {
                g.find_edge(a, b)
                    .ok_or_else(|| err(format!("no edge between {a} and {b}")))
            };
            match (kind, ids.as_slice()) {
                ("K2", &[a, b]) => components.push(Component::K2(edge(a, b)?)),
                ("CLAW", &[c, x, y, z]) => components.push(Component::Claw {
                    center: c,
                    edges: [edge(c, x)?, edge(c, y)?, edge(c, z)?],
                }),
                _ => return Err(err(format!("expected `K2 a b` or `CLAW c x y z`, got {line:?}"))),
            }
        }
        Ok(PseudoMatching { components })
    }
}

/// Checks that `m` is a spanning family of vertex-disjoint K2 and K1,3
/// subgraphs of `g`.
pub fn validate_ppm(g: &Multigraph, m: &PseudoMatching) -> Result<()> {
    for c in m.components() {
        if let Some(e) = c.edges().into_iter().find(|&e| e >= g.edge_count()) {
            return Err(Error::Structure(format!("edge {e} out of range")));
        }
    }
    let mut owner = vec![usize::MAX; g.vertex_count()];
    for (i, c) in m.components().iter().enumerate() {
        match *c {
            Component::K2(e) => {
                if g.is_loop(e) {
                    return Err(Error::Ppm(format!("component {i} is a loop")));
                }
            }
            Component::Claw { center, edges } => {
                for &e in &edges {
                    let (a, b) = g.endpoints(e);
                    if (a != center && b != center) || a == b {
                        return Err(Error::Ppm(format!(
                            "component {i}: edge {e} is not a claw edge at vertex {center}"
                        )));
                    }
                }
                let leaves: Vec<Vertex> = edges.iter().map(|&e| g.other(e, center)).collect();
                if leaves[0] == leaves[1] || leaves[0] == leaves[2] || leaves[1] == leaves[2] {
                    return Err(Error::Ppm(format!(
                        "component {i}: claw at vertex {center} has a repeated leaf"
                    )));
                }
            }
        }
        for v in c.vertices(g) {
            if owner[v] != usize::MAX {
                return Err(Error::Ppm(format!("vertex {v} in two components")));
            }
            owner[v] = i;
        }
    }
    if let Some(v) = owner.iter().position(|&o| o == usize::MAX) {
        return Err(Error::Ppm(format!("uncovered vertex {v}")));
    }
    Ok(())
}

/// Options for [`for_each_ppm`].
#[derive(Clone, Copy, Debug, Default)]
pub struct PpmFilter {
    pub matchings_only: bool,
    /// Skip perfect matchings, emitting only PPMs with at least one claw.
    pub claws_required: bool,
}

/// Visits every PPM exactly once. Branching covers the lowest uncovered
/// vertex by an incident edge, by the claw centred at it, or by a claw
/// centred at a neighbour.
pub fn for_each_ppm(
    g: &Multigraph,
    filter: PpmFilter,
    mut visit: impl FnMut(&PseudoMatching) -> ControlFlow<()>,
) {
    let mut covered = vec![false; g.vertex_count()];
    let mut current = Vec::new();
    let _ = ppm_branch(g, filter, &mut covered, &mut current, &mut visit);
}

pub fn enumerate_ppms(g: &Multigraph, filter: PpmFilter) -> Vec<PseudoMatching> {
    let mut out = Vec::new();
    for_each_ppm(g, filter, |m| {
        out.push(m.clone());
        ControlFlow::Continue(())
    });
    out
}

fn claw_at(g: &Multigraph, center: Vertex, covered: &[bool]) -> Option<Component> {
    let inc = g.incident(center);
    if covered[center] || inc.len() != 3 {
        return None;
    }
    let leaves: Vec<Vertex> = inc.iter().map(|&e| g.other(e, center)).collect();
    let distinct = leaves[0] != leaves[1] && leaves[0] != leaves[2] && leaves[1] != leaves[2];
    if !distinct || leaves.iter().any(|&l| l == center || covered[l]) {
        return None;
    }
    Some(Component::Claw { center, edges: [inc[0], inc[1], inc[2]] })
}

fn ppm_branch(
    g: &Multigraph,
    filter: PpmFilter,
    covered: &mut Vec<bool>,
    current: &mut Vec<Component>,
    visit: &mut impl FnMut(&PseudoMatching) -> ControlFlow<()>,
) -> ControlFlow<()> {
    let Some(v) = covered.iter().position(|&c| !c) else {
        if filter.claws_required && current.iter().all(|c| !c.is_claw()) {
            return ControlFlow::Continue(());
        }
        return visit(&PseudoMatching::new(current.clone()));
    };
    let mut options: Vec<Component> = Vec::new();
    for &e in g.incident(v) {
        let w = g.other(e, v);
        if w != v && !covered[w] {
            options.push(Component::K2(e));
        }
    }
    if !filter.matchings_only {
        options.extend(claw_at(g, v, covered));
        let mut centers: Vec<Vertex> = g.neighbors(v).filter(|&u| u != v).collect();
        centers.sort_unstable();
        centers.dedup();
        for u in centers {
            options.extend(claw_at(g, u, covered));
        }
    }
    for option in options {
        let vs = option.vertices(g);
        for &x in &vs {
            covered[x] = true;
        }
        current.push(option);
        let flow = ppm_branch(g, filter, covered, current, visit);
        current.pop();
        for &x in &vs {
            covered[x] = false;
        }
        flow?;
    }
    ControlFlow::Continue(())
}

/// The cycles of `G - E(M)`, each starting at its least vertex and heading
/// to the smaller neighbour. Claw centres are isolated and not listed.
pub fn complement_cycles(g: &Multigraph, m: &PseudoMatching) -> Vec<Cycle> {
    let in_m = edge_mask(g, m);
    let keep: Vec<EdgeId> = (0..g.edge_count()).filter(|&e| !in_m[e]).collect();
    let mut cycles: Vec<Cycle> = split_two_regular(g, &keep)
        .into_iter()
        .map(|c| c.normalized())
        .collect();
    cycles.sort_by_key(|c| c.vertices()[0]);
    cycles
}

fn edge_mask(g: &Multigraph, m: &PseudoMatching) -> Vec<bool> {
    let mut mask = vec![false; g.edge_count()];
    for e in m.edges() {
        mask[e] = true;
    }
    mask
}

/// Disjoint dart pairs at each vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitionSystem {
    pairs: Vec<Vec<(Dart, Dart)>>,
}

impl TransitionSystem {
    pub fn new(pairs: Vec<Vec<(Dart, Dart)>>) -> Self {
        TransitionSystem { pairs }
    }

    pub fn at(&self, v: Vertex) -> &[(Dart, Dart)] {
        &self.pairs[v]
    }

    pub fn all(&self) -> &[Vec<(Dart, Dart)>] {
        &self.pairs
    }

    /// The dart paired with `d`, if any.
    pub fn partner_table(&self, g: &Multigraph) -> Vec<Option<Dart>> {
        let mut out = vec![None; 2 * g.edge_count()];
        for pairs in &self.pairs {
            for &(a, b) in pairs {
                out[a] = Some(b);
                out[b] = Some(a);
            }
        }
        out
    }

    /// Pairs are disjoint and consist of darts at the vertex they are listed under.
    pub fn check(&self, g: &Multigraph) -> Result<()> {
        if self.pairs.len() != g.vertex_count() {
            return Err(Error::Structure("transition system vertex count mismatch".into()));
        }
        let mut seen = vec![false; 2 * g.edge_count()];
        for (v, pairs) in self.pairs.iter().enumerate() {
            for &(a, b) in pairs {
                for d in [a, b] {
                    if d >= seen.len() || dart_vertex(g, d) != v {
                        return Err(Error::Structure(format!("dart {d} is not at vertex {v}")));
                    }
                    if std::mem::replace(&mut seen[d], true) {
                        return Err(Error::Structure(format!("dart {d} in two transitions")));
                    }
                }
            }
        }
        Ok(())
    }
}

/// The quotient `G/M` with its induced transitions and the maps back to `G`.
#[derive(Clone, Debug)]
pub struct ContractedGraph {
    pub graph: Multigraph,
    pub transitions: TransitionSystem,
    /// Quotient vertex of each vertex of `G`; equals the component index.
    pub component_of: Vec<usize>,
    /// `G` edge of each quotient edge.
    pub edge_origin: Vec<EdgeId>,
}

impl ContractedGraph {
    /// The `G` vertex at which a quotient dart attaches.
    pub fn dart_origin(&self, g: &Multigraph, d: Dart) -> Vertex {
        dart_vertex(g, 2 * self.edge_origin[dart_edge(d)] + d % 2)
    }
}

/// Contracts every component of `m` to a vertex. Quotient edges keep the
/// orientation of their `G` edges, and quotient edge ids follow increasing
/// `G` edge ids. Loops arise when two leaves of a claw are adjacent.
pub fn contract(g: &Multigraph, m: &PseudoMatching) -> Result<ContractedGraph> {
    validate_ppm(g, m)?;
    let component_of = m.component_of(g);
    let in_m = edge_mask(g, m);
    let mut graph = Multigraph::new(m.components().len());
    let mut edge_origin = Vec::new();
    let mut dart_at: Vec<Option<Dart>> = vec![None; 2 * g.edge_count()];
    for (e, &(a, b)) in g.edges().iter().enumerate() {
        if in_m[e] {
            continue;
        }
        let q = graph.add_edge(component_of[a], component_of[b]);
        edge_origin.push(e);
        dart_at[2 * e] = Some(2 * q);
        dart_at[2 * e + 1] = Some(2 * q + 1);
    }
    let mut pairs = vec![Vec::new(); graph.vertex_count()];
    for v in 0..g.vertex_count() {
        let darts: Vec<Dart> = g
            .incident(v)
            .iter()
            .filter(|&&e| !in_m[e])
            .flat_map(|&e| {
                let (a, b) = g.endpoints(e);
                let mut ds = Vec::new();
                if a == v {
                    ds.push(2 * e);
                }
                if b == v {
                    ds.push(2 * e + 1);
                }
                ds
            })
            .collect();
        let mut darts = darts;
        darts.sort_unstable();
        darts.dedup();
        match darts.as_slice() {
            [] => {}
            &[x, y] => pairs[component_of[v]].push((dart_at[x].unwrap(), dart_at[y].unwrap())),
            other => {
                return Err(Error::Invariant(format!(
                    "vertex {v} has {} edges outside the pseudo-matching",
                    other.len()
                )))
            }
        }
    }
    Ok(ContractedGraph {
        graph,
        transitions: TransitionSystem::new(pairs),
        component_of,
        edge_origin,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PpmClass {
    Planarizing,
    K5MinorFreeOnly,
    Neither,
}

impl std::fmt::Display for PpmClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            PpmClass::Planarizing => "planarizing",
            PpmClass::K5MinorFreeOnly => "k5_minor_free_only",
            PpmClass::Neither => "neither",
        })
    }
}

pub fn classify_ppm(g: &Multigraph, m: &PseudoMatching) -> Result<PpmClass> {
    let cg = contract(g, m)?;
    classify_quotient(&cg.graph)
}

pub fn classify_quotient(q: &Multigraph) -> Result<PpmClass> {
    if is_planar(q).is_some() {
        debug_assert!(!has_k5_minor(q).unwrap_or(false));
        return Ok(PpmClass::Planarizing);
    }
    Ok(if has_k5_minor(q)? {
        PpmClass::Neither
    } else {
        PpmClass::K5MinorFreeOnly
    })
}

/// `G - E(C)` for a dominating cycle `C`.
pub fn ppm_from_dominating_cycle(g: &Multigraph, c: &Cycle) -> Result<PseudoMatching> {
    c.check_in(g)?;
    let mut on = vec![false; g.vertex_count()];
    for &v in c.vertices() {
        on[v] = true;
    }
    if let Some((e, &(a, b))) = g.edges().iter().enumerate().find(|(_, &(a, b))| !on[a] && !on[b]) {
        return Err(Error::Precondition(format!(
            "cycle is not dominating: edge {e} ({a}, {b}) avoids it"
        )));
    }
    let mut in_c = vec![false; g.edge_count()];
    for &e in c.edges() {
        in_c[e] = true;
    }
    let rest: Vec<EdgeId> = (0..g.edge_count()).filter(|&e| !in_c[e]).collect();
    let m = PseudoMatching::from_edge_set(g, &rest)?;
    validate_ppm(g, &m)?;
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;

    /// Every edge subset, kept when its pieces are K2s and claws covering
    /// all vertices.
    fn brute_force_count(g: &Multigraph, matchings_only: bool) -> usize {
        let m = g.edge_count();
        (0u32..1 << m)
            .filter(|&mask| {
                let edges: Vec<EdgeId> = (0..m).filter(|&e| mask >> e & 1 == 1).collect();
                match PseudoMatching::from_edge_set(g, &edges) {
                    Ok(p) => validate_ppm(g, &p).is_ok() && (!matchings_only || p.is_perfect_matching()),
                    Err(_) => false,
                }
            })
            .count()
    }

    #[test]
    fn k4_counts() {
        let g = k4();
        let pms = enumerate_ppms(&g, PpmFilter { matchings_only: true, ..Default::default() });
        assert_eq!(pms.len(), 3);
        let claws = enumerate_ppms(&g, PpmFilter { claws_required: true, ..Default::default() });
        assert_eq!(claws.len(), 4);
        assert_eq!(brute_force_count(&g, false), 7);
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for g in [prism(), cube()] {
            for only in [false, true] {
                let all = enumerate_ppms(&g, PpmFilter { matchings_only: only, ..Default::default() });
                assert_eq!(all.len(), brute_force_count(&g, only));
                let mut distinct: Vec<_> = all.iter().map(|m| m.edges()).collect();
                distinct.sort();
                distinct.dedup();
                assert_eq!(distinct.len(), all.len());
            }
        }
    }

    #[test]
    fn validation_messages() {
        let g = k4();
        let m = PseudoMatching::new(vec![Component::K2(0)]);
        assert_eq!(validate_ppm(&g, &m), Err(Error::Ppm("uncovered vertex 2".into())));
        let m = PseudoMatching::new(vec![Component::K2(0), Component::K2(1)]);
        assert_eq!(validate_ppm(&g, &m), Err(Error::Ppm("vertex 0 in two components".into())));
        let m = PseudoMatching::new(vec![Component::K2(17)]);
        assert!(matches!(validate_ppm(&g, &m), Err(Error::Structure(_))));
    }

    #[test]
    fn perfect_matching_quotient_is_four_regular() {
        let g = cube();
        for m in enumerate_ppms(&g, PpmFilter::default()) {
            let cg = contract(&g, &m).unwrap();
            assert_eq!(cg.graph.vertex_count(), m.components().len());
            assert_eq!(cg.graph.edge_count(), g.edge_count() - m.edges().len());
            let sixes = cg.graph.degrees().iter().filter(|&&d| d == 6).count();
            assert_eq!(sixes, m.claw_count());
            assert!(cg.graph.degrees().iter().all(|&d| d == 4 || d == 6));
            cg.transitions.check(&cg.graph).unwrap();
        }
    }

    #[test]
    fn sidecar_roundtrip() {
        let g = k4();
        for m in enumerate_ppms(&g, PpmFilter::default()) {
            let text = m.to_sidecar(&g);
            assert_eq!(PseudoMatching::parse_sidecar(&g, &text).unwrap(), m);
        }
        assert!(matches!(
            PseudoMatching::parse_sidecar(&g, "K2 0 1\nCLAW 0 1\n"),
            Err(Error::Sidecar { line: 2, .. })
        ));
    }

    #[test]
    fn hamiltonian_cycle_of_k4() {
        let g = k4();
        let c = Cycle::from_vertices(&g, &[0, 1, 2, 3]).unwrap();
        let m = ppm_from_dominating_cycle(&g, &c).unwrap();
        assert!(m.is_perfect_matching());
        assert_eq!(m.components().len(), 2);
    }

    #[test]
    fn non_dominating_cycle_rejected() {
        let g = prism();
        let c = Cycle::from_vertices(&g, &[0, 1, 2]).unwrap();
        assert!(matches!(ppm_from_dominating_cycle(&g, &c), Err(Error::Precondition(_))));
    }
}
