//! Drawings as planarizations: every crossing becomes a degree-4 dummy
//! vertex, and the drawing is a rotation system of the planarized graph.

use std::collections::{HashSet, VecDeque};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Multigraph, Vertex};
use crate::minors::{is_planar, PlanarEmbedding};
use crate::ppm::{contract, dart_edge, dart_vertex, reverse, validate_ppm, Component, ContractedGraph, Dart, PseudoMatching};

/// A drawing of `G`. Vertices `0..vertex_count` of `planarized` are the
/// vertices of `G`; vertex `vertex_count + i` is the dummy of crossing `i`.
#[derive(Clone, Debug)]
pub struct Drawing {
    pub vertex_count: usize,
    pub planarized: Multigraph,
    pub embedding: PlanarEmbedding,
    /// Crossing `i` as `(e, f)` with `e < f`, original edge ids.
    pub crossings: Vec<(EdgeId, EdgeId)>,
    /// Planarized edges of each original edge, in order from its first
    /// endpoint to its second.
    pub segment_map: Vec<Vec<EdgeId>>,
}

impl Drawing {
    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn dummy(&self, crossing: usize) -> Vertex {
        self.vertex_count + crossing
    }

    /// Original edge of each planarized edge.
    pub fn segment_origin(&self) -> Vec<EdgeId> {
        let mut out = vec![usize::MAX; self.planarized.edge_count()];
        for (e, path) in self.segment_map.iter().enumerate() {
            for &s in path {
                out[s] = e;
            }
        }
        out
    }

    /// Graphviz source; dummies are drawn as small squares.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph drawing {\n");
        for v in 0..self.planarized.vertex_count() {
            if v < self.vertex_count {
                let _ = writeln!(out, "  {v} [shape=circle];");
            } else {
                let _ = writeln!(out, "  {v} [shape=square, label=\"\", width=0.15];");
            }
        }
        let origin = self.segment_origin();
        for (s, &(a, b)) in self.planarized.edges().iter().enumerate() {
            let _ = writeln!(out, "  {a} -- {b} [label=\"{}\"];", origin[s]);
        }
        out.push_str("}\n");
        out
    }
}

/// Checks the structural invariants of a drawing of `(g, m)`.
pub fn validate_drawing(g: &Multigraph, m: &PseudoMatching, d: &Drawing) -> Result<()> {
    let bad = |msg: String| Err(Error::Invariant(msg));
    let p = &d.planarized;
    if d.vertex_count != g.vertex_count() || p.vertex_count() != d.vertex_count + d.crossings.len() {
        return bad("vertex counts do not match the crossings".into());
    }
    if d.segment_map.len() != g.edge_count() {
        return bad("segment map does not cover every edge".into());
    }
    let origin = d.segment_origin();
    if let Some(s) = origin.iter().position(|&o| o == usize::MAX) {
        return bad(format!("planarized edge {s} belongs to no edge"));
    }
    for (e, path) in d.segment_map.iter().enumerate() {
        let (a, b) = g.endpoints(e);
        let mut cur = a;
        for &s in path {
            let (x, y) = p.endpoints(s);
            cur = if x == cur { y } else if y == cur { x } else {
                return bad(format!("segments of edge {e} do not form a path"));
            };
        }
        if cur != b || (path.len() > 1 && path[..path.len() - 1].iter().any(|&s| {
            let (x, y) = p.endpoints(s);
            x < d.vertex_count && y < d.vertex_count
        })) {
            return bad(format!("segments of edge {e} do not join its endpoints"));
        }
    }
    let in_m: HashSet<EdgeId> = m.edges().into_iter().collect();
    let mut seen = HashSet::new();
    for (i, &(e, f)) in d.crossings.iter().enumerate() {
        if in_m.contains(&e) || in_m.contains(&f) {
            return bad(format!("crossing {i} involves an edge of the pseudo-matching"));
        }
        if !seen.insert((e, f)) || e >= f {
            return bad(format!("edges {e} and {f} cross more than once"));
        }
        let (a, b) = g.endpoints(e);
        let (x, y) = g.endpoints(f);
        if a == x || a == y || b == x || b == y {
            return bad(format!("adjacent edges {e} and {f} cross"));
        }
        let z = d.dummy(i);
        let rot = d.embedding.rotation(z);
        let o: Vec<EdgeId> = rot.iter().map(|&r| origin[dart_edge(r)]).collect();
        if rot.len() != 4 || o[0] != o[2] || o[1] != o[3] || o[0] == o[1] {
            return bad(format!("dummy {z} does not have its two edges opposite"));
        }
        let mut pair = [o[0], o[1]];
        pair.sort_unstable();
        if pair != [e, f] {
            return bad(format!("dummy {z} does not carry edges {e} and {f}"));
        }
    }
    PlanarEmbedding::new(p, d.embedding.rotations().to_vec())?;
    if !d.embedding.satisfies_euler(p) {
        return bad("planarized rotation system is not planar".into());
    }
    Ok(())
}

/// Every crossing pair meets two different vertices of a single component
/// of `m`.
pub fn check_theorem3(g: &Multigraph, m: &PseudoMatching, d: &Drawing) -> bool {
    let comp = m.component_of(g);
    d.crossings.iter().all(|&(e, f)| {
        let (a, b) = g.endpoints(e);
        let (x, y) = g.endpoints(f);
        [a, b].iter().any(|&u| [x, y].iter().any(|&w| u != w && comp[u] == comp[w]))
    })
}

/// Planarization under construction.
struct Plan {
    ends: Vec<(Vertex, Vertex)>,
    origin: Vec<EdgeId>,
    rot: Vec<Vec<Dart>>,
}

impl Plan {
    fn tail(&self, d: Dart) -> Vertex {
        let (a, b) = self.ends[d / 2];
        if d.is_multiple_of(2) { a } else { b }
    }

    fn faces(&self) -> (Vec<usize>, Vec<Vec<Dart>>) {
        let darts = 2 * self.ends.len();
        let mut succ = vec![usize::MAX; darts];
        for order in &self.rot {
            for (i, &d) in order.iter().enumerate() {
                succ[d] = order[(i + 1) % order.len()];
            }
        }
        let mut face_of = vec![usize::MAX; darts];
        let mut faces = Vec::new();
        for s in 0..darts {
            if face_of[s] != usize::MAX {
                continue;
            }
            let mut face = Vec::new();
            let mut d = s;
            while face_of[d] == usize::MAX {
                face_of[d] = faces.len();
                face.push(d);
                d = succ[reverse(d)];
            }
            faces.push(face);
        }
        (face_of, faces)
    }

    fn add_edge(&mut self, a: Vertex, b: Vertex, origin: EdgeId) -> EdgeId {
        self.ends.push((a, b));
        self.origin.push(origin);
        self.ends.len() - 1
    }

    fn insert_before(&mut self, v: Vertex, before: Dart, d: Dart) {
        let i = self.rot[v].iter().position(|&x| x == before).expect("dart at vertex");
        self.rot[v].insert(i, d);
    }

    /// Splits segment `dart_edge(c)` at a new vertex. Returns the vertex,
    /// the dart from it back to `tail(c)` and the dart onward to the head.
    fn split(&mut self, c: Dart) -> (Vertex, Dart, Dart) {
        let s = dart_edge(c);
        let (u, v) = self.ends[s];
        let z = self.rot.len();
        self.rot.push(Vec::new());
        let t = self.add_edge(z, v, self.origin[s]);
        self.ends[s] = (u, z);
        let at_v = self.rot[v].iter().position(|&x| x == 2 * s + 1).expect("dart at vertex");
        self.rot[v][at_v] = 2 * t + 1;
        if c.is_multiple_of(2) {
            (z, 2 * s + 1, 2 * t)
        } else {
            (z, 2 * t, 2 * s + 1)
        }
    }
}

/// Routes `e` through the dual, crossing only allowed segments. Returns the
/// start face dart at `x`, the crossed darts, and the end face dart at `y`.
fn route(
    plan: &Plan,
    g: &Multigraph,
    e: EdgeId,
    allowed: &dyn Fn(EdgeId) -> bool,
    banned: &HashSet<EdgeId>,
) -> Option<(Dart, Vec<Dart>, Dart)> {
    let (x, y) = g.endpoints(e);
    let (face_of, faces) = plan.faces();
    let at = |f: usize, v: Vertex| faces[f].iter().copied().find(|&d| plan.tail(d) == v);
    let mut parent: Vec<Option<(usize, Dart)>> = vec![None; faces.len()];
    let mut seen = vec![false; faces.len()];
    let mut queue = VecDeque::new();
    for (f, _) in faces.iter().enumerate() {
        if at(f, x).is_some() {
            seen[f] = true;
            queue.push_back(f);
        }
    }
    while let Some(f) = queue.pop_front() {
        if let Some(dy) = at(f, y) {
            let mut crossed = Vec::new();
            let mut cur = f;
            while let Some((prev, c)) = parent[cur] {
                crossed.push(c);
                cur = prev;
            }
            crossed.reverse();
            return Some((at(cur, x).unwrap(), crossed, dy));
        }
        for &c in &faces[f] {
            let s = dart_edge(c);
            if banned.contains(&s) || !allowed(plan.origin[s]) {
                continue;
            }
            let nf = face_of[reverse(c)];
            if !seen[nf] {
                seen[nf] = true;
                parent[nf] = Some((f, c));
                queue.push_back(nf);
            }
        }
    }
    None
}

/// A drawing whose crossings avoid the edges of `m`: the insertion
/// heuristic below, or the witness built from a planar `G/M` when that has
/// fewer crossings. The crossing count is not minimised.
pub fn draw_m_avoiding(g: &Multigraph, m: &PseudoMatching) -> Result<Drawing> {
    validate_ppm(g, m)?;
    if !g.is_connected() {
        return Err(Error::Precondition("graph is disconnected".into()));
    }
    let heuristic = insert_edges(g, m)?;
    match seek_planarizing_drawing(g, m)? {
        Some(w) if w.crossing_count() <= heuristic.crossing_count() => Ok(w),
        _ => Ok(heuristic),
    }
}

/// Starts from a maximal planar subgraph containing `m` and inserts the
/// remaining edges along shortest dual paths.
pub fn insert_edges(g: &Multigraph, m: &PseudoMatching) -> Result<Drawing> {
    validate_ppm(g, m)?;
    if !g.is_connected() {
        return Err(Error::Precondition("graph is disconnected".into()));
    }
    let n = g.vertex_count();
    let mut in_m = vec![false; g.edge_count()];
    for e in m.edges() {
        in_m[e] = true;
    }
    let mut order: Vec<EdgeId> = (0..g.edge_count()).collect();
    order.sort_by_key(|&e| {
        let (a, b) = g.endpoints(e);
        (std::cmp::Reverse(g.degree(a) + g.degree(b)), e)
    });
    let mut keep: Vec<bool> = (0..g.edge_count()).map(|e| in_m[e] || g.is_loop(e)).collect();
    for &e in &order {
        if keep[e] {
            continue;
        }
        keep[e] = true;
        if is_planar(&g.filter_edges(|f| keep[f]).0).is_none() {
            keep[e] = false;
        }
    }
    let (sub, origin) = g.filter_edges(|f| keep[f]);
    let emb = is_planar(&sub).ok_or_else(|| Error::Invariant("seed subgraph is not planar".into()))?;
    let mut plan = Plan {
        ends: sub.edges().to_vec(),
        origin,
        rot: emb.rotations().to_vec(),
    };
    let mut crossings: Vec<(EdgeId, EdgeId)> = Vec::new();
    for &e in order.iter().filter(|&&e| !keep[e]) {
        let (x, y) = g.endpoints(e);
        let allowed = |f: EdgeId| {
            let (a, b) = g.endpoints(f);
            !in_m[f] && a != b && a != x && a != y && b != x && b != y
        };
        let mut banned = HashSet::new();
        let (dx, crossed, dy) = loop {
            let Some((dx, crossed, dy)) = route(&plan, g, e, &allowed, &banned) else {
                return Err(Error::Invariant(format!("no admissible route for edge {e}")));
            };
            let mut hit = HashSet::new();
            if let Some(&c) = crossed.iter().find(|&&c| !hit.insert(plan.origin[dart_edge(c)])) {
                log::warn!("route for edge {e} crosses edge {} twice; rerouting", plan.origin[dart_edge(c)]);
                banned.insert(dart_edge(c));
                continue;
            }
            break (dx, crossed, dy);
        };
        let mut stops = vec![x];
        let mut sides = Vec::new();
        for &c in &crossed {
            let f = plan.origin[dart_edge(c)];
            let (z, back, onward) = plan.split(c);
            debug_assert_eq!(z, n + crossings.len());
            crossings.push((e.min(f), e.max(f)));
            stops.push(z);
            sides.push((back, onward));
        }
        stops.push(y);
        let legs: Vec<EdgeId> = stops.windows(2).map(|w| plan.add_edge(w[0], w[1], e)).collect();
        plan.insert_before(x, dx, 2 * legs[0]);
        plan.insert_before(y, dy, 2 * legs[legs.len() - 1] + 1);
        for (i, &(back, onward)) in sides.iter().enumerate() {
            let z = stops[i + 1];
            plan.rot[z] = vec![back, 2 * legs[i] + 1, onward, 2 * legs[i + 1]];
        }
    }
    finish(g, plan, crossings)
}

fn finish(g: &Multigraph, plan: Plan, crossings: Vec<(EdgeId, EdgeId)>) -> Result<Drawing> {
    let planarized = Multigraph::from_edges(plan.rot.len(), &plan.ends)?;
    let embedding = PlanarEmbedding::new(&planarized, plan.rot)?;
    if !embedding.satisfies_euler(&planarized) {
        return Err(Error::Invariant("planarization is not planar".into()));
    }
    let segment_map = (0..g.edge_count())
        .map(|e| {
            let (a, b) = g.endpoints(e);
            let mut pieces: Vec<EdgeId> = (0..plan.ends.len()).filter(|&s| plan.origin[s] == e).collect();
            let mut path = Vec::with_capacity(pieces.len());
            let mut cur = a;
            while !pieces.is_empty() {
                let i = pieces
                    .iter()
                    .position(|&s| plan.ends[s].0 == cur || plan.ends[s].1 == cur)
                    .expect("segments form a path");
                let s = pieces.swap_remove(i);
                let (p, q) = plan.ends[s];
                cur = if p == cur { q } else { p };
                path.push(s);
            }
            debug_assert_eq!(cur, b);
            path
        })
        .collect();
    Ok(Drawing {
        vertex_count: g.vertex_count(),
        planarized,
        embedding,
        crossings,
        segment_map,
    })
}

/// A drawing in which every crossing is local to one component of `m`,
/// built from a planar embedding of `G/M`; absent when `m` is not
/// planarizing. Embeddings are tried until one lets every component be
/// untangled.
pub fn seek_planarizing_drawing(g: &Multigraph, m: &PseudoMatching) -> Result<Option<Drawing>> {
    let cg = contract(g, m)?;
    if is_planar(&cg.graph).is_none() {
        return Ok(None);
    }
    search_embeddings(g, m, &cg, false, u64::MAX)?
        .ok_or_else(|| Error::Invariant("no embedding of G/M can be untangled".into()))
        .map(Some)
}

/// Whether two disjoint edges are joined by an edge of `g`.
pub fn are_linked(g: &Multigraph, e: EdgeId, f: EdgeId) -> bool {
    let (a, b) = g.endpoints(e);
    let (x, y) = g.endpoints(f);
    [a, b].iter().any(|&u| [x, y].iter().any(|&w| g.find_edge(u, w).is_some()))
}

/// Crossings of `d` whose two edges are joined by an edge of `g`. Replacing
/// such a crossing leaves a cyclic 4-cut around the block and the joining
/// edge.
pub fn linked_crossings(g: &Multigraph, d: &Drawing) -> Vec<usize> {
    (0..d.crossing_count()).filter(|&i| are_linked(g, d.crossings[i].0, d.crossings[i].1)).collect()
}

/// A component-local drawing with no linked crossings, found by trying
/// the embedding found by the planarity test and then every rotation system
/// of `G/M` in turn; gives up after `budget` of them.
pub fn seek_unlinked_drawing(g: &Multigraph, m: &PseudoMatching, budget: u64) -> Result<Option<Drawing>> {
    let cg = contract(g, m)?;
    search_embeddings(g, m, &cg, true, budget)
}

fn search_embeddings(
    g: &Multigraph,
    m: &PseudoMatching,
    cg: &ContractedGraph,
    unlinked: bool,
    budget: u64,
) -> Result<Option<Drawing>> {
    let h = &cg.graph;
    let Some(first) = is_planar(h) else {
        return Ok(None);
    };
    if let Some(d) = from_embedding(g, m, cg, &first, unlinked)? {
        return Ok(Some(d));
    }
    // Odometer over cyclic orders with the first dart of each vertex fixed.
    let mut base: Vec<Vec<Dart>> = vec![Vec::new(); h.vertex_count()];
    for d in 0..2 * h.edge_count() {
        base[dart_vertex(h, d)].push(d);
    }
    let mut perms: Vec<Vec<usize>> = base.iter().map(|r| (0..r.len()).collect()).collect();
    let mut tried = 0u64;
    loop {
        let rot: Vec<Vec<Dart>> = base.iter().zip(&perms).map(|(r, p)| p.iter().map(|&i| r[i]).collect()).collect();
        let emb = PlanarEmbedding::new(h, rot)?;
        if emb.satisfies_euler(h) {
            if let Some(d) = from_embedding(g, m, cg, &emb, unlinked)? {
                return Ok(Some(d));
            }
        }
        tried += 1;
        if tried >= budget {
            return Ok(None);
        }
        let Some(v) = (0..perms.len()).find(|&v| perms[v].len() > 1 && next_permutation(&mut perms[v][1..])) else {
            return Ok(None);
        };
        for p in &mut perms[..v] {
            p[1..].sort_unstable();
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// The drawing induced by a planar embedding of `G/M`, or `None` when some
/// component cannot be untangled. With `unlinked`, linked pairs may not
/// cross.
fn from_embedding(
    g: &Multigraph,
    m: &PseudoMatching,
    cg: &ContractedGraph,
    emb: &PlanarEmbedding,
    unlinked: bool,
) -> Result<Option<Drawing>> {
    let label = |d: Dart| cg.dart_origin(g, d);
    let g_edge = |d: Dart| cg.edge_origin[dart_edge(d)];
    let adjacent = |e: EdgeId, f: EdgeId| {
        let (a, b) = g.endpoints(e);
        let (x, y) = g.endpoints(f);
        e == f || a == x || a == y || b == x || b == y || (unlinked && are_linked(g, e, f))
    };
    let mut crossed: HashSet<(EdgeId, EdgeId)> = HashSet::new();
    // Per component: the swaps (outer to inner) and the final order.
    let mut swaps: Vec<Vec<(Dart, Dart)>> = Vec::new();
    let mut finals: Vec<Vec<Dart>> = Vec::new();
    for k in 0..cg.graph.vertex_count() {
        let start = emb.rotation(k).to_vec();
        let labels: Vec<Vertex> = start.iter().map(|&d| label(d)).collect();
        let Some((seq, fin)) = untangle(&start, &labels, &g_edge, &|a, b| {
            let (e, f) = (g_edge(a), g_edge(b));
            !adjacent(e, f) && !crossed.contains(&(e.min(f), e.max(f)))
        }) else {
            return Ok(None);
        };
        for &(a, b) in &seq {
            let (e, f) = (g_edge(a), g_edge(b));
            crossed.insert((e.min(f), e.max(f)));
        }
        swaps.push(seq);
        finals.push(fin);
    }
    let n = g.vertex_count();
    let mut ends: Vec<(Vertex, Vertex)> = Vec::new();
    let mut origin: Vec<EdgeId> = Vec::new();
    let mut crossings = Vec::new();
    let dart_count = 2 * cg.graph.edge_count();
    let mut dummies_of: Vec<Vec<Vertex>> = vec![Vec::new(); dart_count];
    let mut dummy_pairs = Vec::new();
    for seq in &swaps {
        for &(a, b) in seq {
            let z = n + dummy_pairs.len();
            dummies_of[a].push(z);
            dummies_of[b].push(z);
            dummy_pairs.push((a, b));
            let (e, f) = (g_edge(a), g_edge(b));
            crossings.push((e.min(f), e.max(f)));
        }
    }
    let total = n + dummy_pairs.len();
    let mut m_dart_at: Vec<Vec<(Vertex, Dart)>> = vec![Vec::new(); n];
    for e in m.edges() {
        let s = ends.len();
        let (a, b) = g.endpoints(e);
        ends.push((a, b));
        origin.push(e);
        m_dart_at[a].push((b, 2 * s));
        m_dart_at[b].push((a, 2 * s + 1));
    }
    // For each quotient dart: the dart at the vertex of `G` it attaches to,
    // and at each of its dummies the darts towards the outside and inside.
    let mut inner_dart = vec![0; dart_count];
    let mut at_dummy: Vec<Vec<(Vertex, Dart, Dart)>> = vec![Vec::new(); dart_count];
    for q in 0..cg.graph.edge_count() {
        let (a, b) = (label(2 * q), label(2 * q + 1));
        let mut chain = vec![a];
        chain.extend(dummies_of[2 * q].iter().rev());
        chain.extend(dummies_of[2 * q + 1].iter());
        chain.push(b);
        let first = ends.len();
        for w in chain.windows(2) {
            ends.push((w[0], w[1]));
            origin.push(cg.edge_origin[q]);
        }
        let last = ends.len() - 1;
        inner_dart[2 * q] = 2 * first;
        inner_dart[2 * q + 1] = 2 * last + 1;
        let k = dummies_of[2 * q].len();
        for (j, &z) in chain[1..chain.len() - 1].iter().enumerate() {
            let toward_a = 2 * (first + j) + 1;
            let toward_b = 2 * (first + j + 1);
            if j < k {
                at_dummy[2 * q].push((z, toward_b, toward_a));
            } else {
                at_dummy[2 * q + 1].push((z, toward_a, toward_b));
            }
        }
    }
    let mut rot: Vec<Vec<Dart>> = vec![Vec::new(); total];
    for (i, &(a, b)) in dummy_pairs.iter().enumerate() {
        let z = n + i;
        let find = |d: Dart| *at_dummy[d].iter().find(|t| t.0 == z).expect("dummy on strand");
        let (_, a_out, a_in) = find(a);
        let (_, b_out, b_in) = find(b);
        rot[z] = vec![a_out, b_out, a_in, b_in];
    }
    for (k, fin) in finals.iter().enumerate() {
        let blocks = blocks_of(fin, &|d| label(d));
        match m.components()[k] {
            Component::K2(_) => {
                for (u, block) in &blocks {
                    rot[*u] = block.iter().map(|&d| inner_dart[d]).collect();
                    rot[*u].extend(m_dart_at[*u].iter().map(|&(_, d)| d));
                }
            }
            Component::Claw { center, .. } => {
                for (u, block) in &blocks {
                    rot[*u] = block.iter().map(|&d| inner_dart[d]).collect();
                    rot[*u].extend(m_dart_at[*u].iter().map(|&(_, d)| d));
                }
                rot[center] = blocks
                    .iter()
                    .map(|(u, _)| m_dart_at[center].iter().find(|&&(w, _)| w == *u).unwrap().1)
                    .collect();
            }
        }
    }
    let plan = Plan { ends, origin, rot };
    finish(g, plan, crossings).map(Some)
}

/// Cyclic blocks of equal labels, in order, each with its darts in order.
fn blocks_of(order: &[Dart], label: &dyn Fn(Dart) -> Vertex) -> Vec<(Vertex, Vec<Dart>)> {
    let k = order.len();
    let start = (0..k).find(|&i| label(order[i]) != label(order[(i + k - 1) % k])).unwrap_or(0);
    let mut blocks: Vec<(Vertex, Vec<Dart>)> = Vec::new();
    for i in 0..k {
        let d = order[(start + i) % k];
        match blocks.last_mut() {
            Some((u, block)) if *u == label(d) => block.push(d),
            _ => blocks.push((label(d), vec![d])),
        }
    }
    blocks
}

fn contiguous(labels: &[Vertex]) -> bool {
    let k = labels.len();
    let mut distinct = labels.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    let changes = (0..k).filter(|&i| labels[i] != labels[(i + 1) % k]).count();
    distinct.len() <= 1 || changes == distinct.len()
}

type Swaps = Vec<(Dart, Dart)>;

/// Fewest adjacent swaps of differently labelled darts that make every
/// label class contiguous, each pair of edges (per `edge_of`; the two darts
/// of a loop share one) swapped at most once and only when `may_swap`
/// allows it.
fn untangle(
    start: &[Dart],
    labels: &[Vertex],
    edge_of: &dyn Fn(Dart) -> EdgeId,
    may_swap: &dyn Fn(Dart, Dart) -> bool,
) -> Option<(Swaps, Vec<Dart>)> {
    let k = start.len();
    let label_of = |d: Dart| labels[start.iter().position(|&x| x == d).unwrap()];
    let mut seen: HashSet<(Vec<Dart>, Swaps)> = HashSet::new();
    let mut queue: VecDeque<(Vec<Dart>, Swaps)> = VecDeque::new();
    seen.insert((start.to_vec(), Vec::new()));
    queue.push_back((start.to_vec(), Vec::new()));
    while let Some((arr, path)) = queue.pop_front() {
        let ls: Vec<Vertex> = arr.iter().map(|&d| label_of(d)).collect();
        if contiguous(&ls) {
            return Some((path, arr));
        }
        if k < 2 {
            continue;
        }
        for i in 0..k {
            let j = (i + 1) % k;
            if k == 2 && i == 1 {
                break;
            }
            let (a, b) = (arr[i], arr[j]);
            let key = |x: Dart, y: Dart| {
                let (e, f) = (edge_of(x), edge_of(y));
                (e.min(f), e.max(f))
            };
            if ls[i] == ls[j] || path.iter().any(|&(x, y)| key(x, y) == key(a, b)) || !may_swap(a, b) {
                continue;
            }
            let mut next = arr.clone();
            next.swap(i, j);
            let mut p = path.clone();
            p.push((a, b));
            let mut pkey = p.iter().map(|&(x, y)| (x.min(y), x.max(y))).collect::<Vec<_>>();
            pkey.sort_unstable();
            if seen.insert((next.clone(), pkey)) {
                queue.push_back((next, p));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::prism;
    use crate::ppm::{classify_ppm, enumerate_ppms, PpmClass, PpmFilter};

    fn petersen() -> (Multigraph, PseudoMatching) {
        let inst = crate::families::petersen();
        (inst.graph.graph().clone(), inst.designated_ppm)
    }

    #[test]
    fn planar_input_has_no_crossings() {
        let g = prism();
        for m in enumerate_ppms(&g, PpmFilter::default()) {
            let d = draw_m_avoiding(&g, &m).unwrap();
            assert_eq!(d.crossing_count(), 0);
            validate_drawing(&g, &m, &d).unwrap();
            assert!(check_theorem3(&g, &m, &d));
        }
    }

    #[test]
    fn petersen_drawing_is_valid() {
        let (g, m) = petersen();
        let d = draw_m_avoiding(&g, &m).unwrap();
        assert!(d.crossing_count() >= 1);
        validate_drawing(&g, &m, &d).unwrap();
        validate_drawing(&g, &m, &insert_edges(&g, &m).unwrap()).unwrap();
        let w = seek_planarizing_drawing(&g, &m).unwrap().expect("planarizing");
        validate_drawing(&g, &m, &w).unwrap();
        assert!(check_theorem3(&g, &m, &w));
        assert!(w.to_dot().starts_with("graph drawing {"));
    }

    #[test]
    fn petersen_perfect_matchings_have_no_witness() {
        let (g, _) = petersen();
        let pms = enumerate_ppms(&g, PpmFilter { matchings_only: true, ..Default::default() });
        assert_eq!(pms.len(), 6);
        for m in pms {
            assert_ne!(classify_ppm(&g, &m).unwrap(), PpmClass::Planarizing);
            assert!(seek_planarizing_drawing(&g, &m).unwrap().is_none());
            let d = draw_m_avoiding(&g, &m).unwrap();
            validate_drawing(&g, &m, &d).unwrap();
            assert!(!check_theorem3(&g, &m, &d));
            validate_drawing(&g, &m, &insert_edges(&g, &m).unwrap()).unwrap();
        }
    }

    #[test]
    fn family_witnesses_are_component_local() {
        let insts = [
            crate::families::goldberg_snark(5).unwrap(),
            crate::families::flower_snark(5).unwrap(),
            crate::families::blanusa_snark(1, 1).unwrap(),
            crate::families::blanusa_snark(2, 2).unwrap(),
        ];
        for inst in insts {
            let g = inst.graph.graph();
            let m = &inst.designated_ppm;
            let d = seek_planarizing_drawing(g, m).unwrap().expect("planarizing");
            validate_drawing(g, m, &d).unwrap();
            assert!(check_theorem3(g, m, &d), "{}", inst.family);
            validate_drawing(g, m, &draw_m_avoiding(g, m).unwrap()).unwrap();
        }
    }

    #[test]
    fn unlinked_drawings() {
        let j5 = crate::families::flower_snark(5).unwrap();
        let (g, m) = (j5.graph.graph(), &j5.designated_ppm);
        let d = seek_unlinked_drawing(g, m, 10_000).unwrap().expect("claw crossings are unlinked");
        validate_drawing(g, m, &d).unwrap();
        assert!(linked_crossings(g, &d).is_empty());
        // Every rotation system of the quotient is tried here.
        let (g, m) = petersen();
        assert!(seek_unlinked_drawing(&g, &m, u64::MAX).unwrap().is_none());
    }

    #[test]
    fn next_permutation_cycles() {
        let mut p = [0, 1, 2];
        let mut n = 1;
        while next_permutation(&mut p) {
            n += 1;
        }
        assert_eq!(n, 6);
        assert_eq!(p, [2, 1, 0]);
    }

    #[test]
    fn contiguity() {
        assert!(contiguous(&[1, 1, 2, 2]));
        assert!(contiguous(&[1, 2, 2, 1]));
        assert!(!contiguous(&[1, 2, 1, 2]));
        assert!(contiguous(&[3, 1, 1, 2, 2, 3]));
    }
}
