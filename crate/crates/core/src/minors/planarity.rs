//! Planarity by path addition (Demoucron, Malgrange and Pertuiset) on each
//! biconnected block, with the block rotations concatenated at cut
//! vertices and loops inserted as empty faces.

use std::collections::VecDeque;

use super::embedding::PlanarEmbedding;
use crate::graph::{EdgeId, Multigraph, Vertex};
use crate::ppm::{reverse, Dart};

/// An embedding of `g` if it is planar.
pub fn is_planar(g: &Multigraph) -> Option<PlanarEmbedding> {
    let mut rotation: Vec<Vec<Dart>> = vec![Vec::new(); g.vertex_count()];
    for block in biconnected_blocks(g) {
        if block.len() == 1 {
            let e = block[0];
            let (a, b) = g.endpoints(e);
            rotation[a].push(2 * e);
            rotation[b].push(2 * e + 1);
            continue;
        }
        for (v, order) in embed_block(g, &block)? {
            rotation[v].extend(order);
        }
    }
    for (e, &(a, b)) in g.edges().iter().enumerate() {
        if a == b {
            rotation[a].extend([2 * e, 2 * e + 1]);
        }
    }
    let emb = PlanarEmbedding::new_unchecked(rotation);
    debug_assert!(emb.satisfies_euler(g));
    Some(emb)
}

/// Edge sets of the biconnected blocks; loops are left out.
pub(crate) fn biconnected_blocks(g: &Multigraph) -> Vec<Vec<EdgeId>> {
    struct State<'a> {
        g: &'a Multigraph,
        disc: Vec<usize>,
        low: Vec<usize>,
        time: usize,
        stack: Vec<EdgeId>,
        blocks: Vec<Vec<EdgeId>>,
    }
    fn dfs(s: &mut State, v: Vertex, parent: Option<EdgeId>) {
        s.disc[v] = s.time;
        s.low[v] = s.time;
        s.time += 1;
        for i in 0..s.g.incident(v).len() {
            let e = s.g.incident(v)[i];
            if Some(e) == parent || s.g.is_loop(e) {
                continue;
            }
            let w = s.g.other(e, v);
            if s.disc[w] == usize::MAX {
                s.stack.push(e);
                dfs(s, w, Some(e));
                s.low[v] = s.low[v].min(s.low[w]);
                if s.low[w] >= s.disc[v] {
                    let mut block = Vec::new();
                    while let Some(f) = s.stack.pop() {
                        block.push(f);
                        if f == e {
                            break;
                        }
                    }
                    block.sort_unstable();
                    s.blocks.push(block);
                }
            } else if s.disc[w] < s.disc[v] {
                s.stack.push(e);
                s.low[v] = s.low[v].min(s.disc[w]);
            }
        }
    }
    let n = g.vertex_count();
    let mut s = State {
        g,
        disc: vec![usize::MAX; n],
        low: vec![0; n],
        time: 0,
        stack: Vec::new(),
        blocks: Vec::new(),
    };
    for v in 0..n {
        if s.disc[v] == usize::MAX {
            dfs(&mut s, v, None);
        }
    }
    s.blocks
}

fn dart_from(g: &Multigraph, e: EdgeId, x: Vertex) -> Dart {
    if g.endpoints(e).0 == x {
        2 * e
    } else {
        2 * e + 1
    }
}

fn tail(g: &Multigraph, d: Dart) -> Vertex {
    crate::ppm::dart_vertex(g, d)
}

struct Fragment {
    edges: Vec<EdgeId>,
    attachments: Vec<Vertex>,
}

/// Rotations of the block's darts at each of its vertices, or `None` if the
/// block is not planar.
fn embed_block(g: &Multigraph, block: &[EdgeId]) -> Option<Vec<(Vertex, Vec<Dart>)>> {
    let n = g.vertex_count();
    let mut in_block = vec![false; g.edge_count()];
    let mut local: Vec<Vec<EdgeId>> = vec![Vec::new(); n];
    for &e in block {
        in_block[e] = true;
        let (a, b) = g.endpoints(e);
        local[a].push(e);
        local[b].push(e);
    }
    let mut emb_v = vec![false; n];
    let mut emb_e = vec![false; g.edge_count()];

    // Initial cycle: the first edge plus a path back avoiding it.
    let e0 = block[0];
    let (a, b) = g.endpoints(e0);
    let back = bfs_path(g, &local, b, a, |e| e != e0, |_| true)?;
    let mut forward = vec![dart_from(g, e0, a)];
    forward.extend(back.iter().copied());
    let backward: Vec<Dart> = forward.iter().rev().map(|&d| reverse(d)).collect();
    for &d in &forward {
        emb_e[d / 2] = true;
        emb_v[tail(g, d)] = true;
    }
    let mut faces = vec![forward, backward];
    let mut remaining = block.len() - faces[0].len();

    while remaining > 0 {
        let fragments = fragments(g, &local, &in_block, &emb_v, &emb_e);
        let face_sets: Vec<Vec<bool>> = faces
            .iter()
            .map(|f| {
                let mut s = vec![false; n];
                for &d in f {
                    s[tail(g, d)] = true;
                }
                s
            })
            .collect();
        let mut choice: Option<(usize, usize, usize)> = None; // (count, fragment, face)
        for (i, frag) in fragments.iter().enumerate() {
            let admissible: Vec<usize> = (0..faces.len())
                .filter(|&f| frag.attachments.iter().all(|&v| face_sets[f][v]))
                .collect();
            if admissible.is_empty() {
                return None;
            }
            if choice.is_none_or(|(c, _, _)| admissible.len() < c) {
                choice = Some((admissible.len(), i, admissible[0]));
            }
            if admissible.len() == 1 {
                break;
            }
        }
        let (_, fi, face_index) = choice.expect("unembedded edges form a fragment");
        let frag = &fragments[fi];
        let path = fragment_path(g, &local, frag, &emb_v, &emb_e);
        let start = tail(g, path[0]);
        let end = tail(g, reverse(*path.last().unwrap()));
        let face = &faces[face_index];
        let i = face.iter().position(|&d| tail(g, d) == start).unwrap();
        let j = face.iter().position(|&d| tail(g, d) == end).unwrap();
        let k = face.len();
        let f1: Vec<Dart> = (0..(j + k - i) % k).map(|t| face[(i + t) % k]).collect();
        let f2: Vec<Dart> = (0..(i + k - j) % k).map(|t| face[(j + t) % k]).collect();
        let rev_path: Vec<Dart> = path.iter().rev().map(|&d| reverse(d)).collect();
        let mut new1 = f1;
        new1.extend(rev_path);
        let mut new2 = path.clone();
        new2.extend(f2);
        faces[face_index] = new1;
        faces.push(new2);
        for &d in &path {
            emb_e[d / 2] = true;
            emb_v[tail(g, d)] = true;
        }
        remaining -= path.len();
    }

    let mut succ = vec![usize::MAX; 2 * g.edge_count()];
    for f in &faces {
        for t in 0..f.len() {
            succ[reverse(f[t])] = f[(t + 1) % f.len()];
        }
    }
    let mut out = Vec::new();
    for (v, edges) in local.iter().enumerate() {
        if edges.is_empty() {
            continue;
        }
        let first = dart_from(g, edges[0], v);
        let mut order = vec![first];
        let mut d = succ[first];
        while d != first {
            order.push(d);
            d = succ[d];
        }
        debug_assert_eq!(order.len(), edges.len());
        out.push((v, order));
    }
    Some(out)
}

/// Darts of a shortest path from `s` to `t` using edges allowed by
/// `edge_ok` and intermediate vertices allowed by `vertex_ok`.
fn bfs_path(
    g: &Multigraph,
    local: &[Vec<EdgeId>],
    s: Vertex,
    t: Vertex,
    edge_ok: impl Fn(EdgeId) -> bool,
    vertex_ok: impl Fn(Vertex) -> bool,
) -> Option<Vec<Dart>> {
    let mut via: Vec<Option<Dart>> = vec![None; g.vertex_count()];
    let mut seen = vec![false; g.vertex_count()];
    seen[s] = true;
    let mut queue = VecDeque::from([s]);
    while let Some(x) = queue.pop_front() {
        for &e in &local[x] {
            if !edge_ok(e) {
                continue;
            }
            let y = g.other(e, x);
            if seen[y] || (y != t && !vertex_ok(y)) {
                continue;
            }
            seen[y] = true;
            via[y] = Some(dart_from(g, e, x));
            if y == t {
                let mut path = Vec::new();
                let mut cur = t;
                while cur != s {
                    let d = via[cur].unwrap();
                    path.push(d);
                    cur = tail(g, d);
                }
                path.reverse();
                return Some(path);
            }
            queue.push_back(y);
        }
    }
    None
}

fn fragments(
    g: &Multigraph,
    local: &[Vec<EdgeId>],
    in_block: &[bool],
    emb_v: &[bool],
    emb_e: &[bool],
) -> Vec<Fragment> {
    let n = g.vertex_count();
    let mut out = Vec::new();
    for (e, &(a, b)) in g.edges().iter().enumerate() {
        if in_block[e] && !emb_e[e] && emb_v[a] && emb_v[b] {
            out.push(Fragment { edges: vec![e], attachments: vec![a, b] });
        }
    }
    let mut seen = vec![false; n];
    for s in 0..n {
        if emb_v[s] || seen[s] || local[s].is_empty() {
            continue;
        }
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        let mut edges = Vec::new();
        let mut attachments = Vec::new();
        while let Some(x) = queue.pop_front() {
            for &e in &local[x] {
                let y = g.other(e, x);
                if emb_v[y] {
                    edges.push(e);
                    attachments.push(y);
                } else {
                    if g.endpoints(e).0 == x {
                        edges.push(e);
                    }
                    if !seen[y] {
                        seen[y] = true;
                        queue.push_back(y);
                    }
                }
            }
        }
        attachments.sort_unstable();
        attachments.dedup();
        edges.sort_unstable();
        edges.dedup();
        out.push(Fragment { edges, attachments });
    }
    out
}

/// A path through the fragment between two distinct attachments.
fn fragment_path(
    g: &Multigraph,
    local: &[Vec<EdgeId>],
    frag: &Fragment,
    emb_v: &[bool],
    emb_e: &[bool],
) -> Vec<Dart> {
    if frag.edges.len() == 1 && frag.attachments.len() == 2 && emb_v[g.endpoints(frag.edges[0]).0] && emb_v[g.endpoints(frag.edges[0]).1] {
        let e = frag.edges[0];
        return vec![2 * e];
    }
    let a = frag.attachments[0];
    let b = frag.attachments[1];
    bfs_path(g, local, a, b, |e| !emb_e[e] && frag.edges.binary_search(&e).is_ok(), |v| !emb_v[v])
        .expect("a fragment of a biconnected block joins two attachments")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;

    fn complete(n: usize) -> Multigraph {
        let mut g = Multigraph::new(n);
        for i in 0..n {
            for j in i + 1..n {
                g.add_edge(i, j);
            }
        }
        g
    }

    #[test]
    fn small_cases() {
        let emb = is_planar(&k4()).unwrap();
        assert_eq!(emb.faces(&k4()).len(), 4);
        assert!(emb.satisfies_euler(&k4()));
        assert!(is_planar(&complete(5)).is_none());
        let k33 = Multigraph::from_edges(
            6,
            &[(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)],
        )
        .unwrap();
        assert!(is_planar(&k33).is_none());
        for g in [prism(), cube()] {
            let emb = is_planar(&g).unwrap();
            assert!(emb.satisfies_euler(&g));
            assert_eq!(emb.faces(&g).len(), 2 + g.edge_count() - g.vertex_count());
        }
    }

    #[test]
    fn multigraph_with_loops_and_cut_vertices() {
        let g = Multigraph::from_edges(
            5,
            &[(0, 1), (0, 1), (1, 2), (2, 0), (2, 2), (2, 3), (3, 4), (4, 2), (3, 4), (4, 4)],
        )
        .unwrap();
        let emb = is_planar(&g).unwrap();
        assert!(PlanarEmbedding::new(&g, emb.rotations().to_vec()).is_ok());
        assert!(emb.satisfies_euler(&g));
    }

    #[test]
    fn blocks_of_a_bowtie() {
        let g = Multigraph::from_edges(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]).unwrap();
        let mut blocks = biconnected_blocks(&g);
        blocks.sort();
        assert_eq!(blocks, vec![vec![0, 1, 2], vec![3, 4, 5]]);
    }
}
