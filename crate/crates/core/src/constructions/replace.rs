use std::sync::OnceLock;

use crate::cycles::{verify_cycle_set, Cycle, CycleSet, Role};
use crate::drawing::Drawing;
use crate::error::{Error, Result};
use crate::families::{BlanusaBlock, BlockKind};
use crate::graph::{CubicGraph, EdgeId, Multigraph, Vertex};
use crate::minors::{is_planar, PlanarEmbedding};
use crate::ppm::{dart_edge, Component, Dart, PseudoMatching};

/// One crossing `(xx''', x'x'')` replaced by a copy of `B0` on `x0..x7`.
///
/// Edge ids of the two crossing edges are reused for `x x0` and `x' x2`;
/// `x7 x'''` and `x5 x''` get new ids, followed by the ten block edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossingReplacementRecord {
    /// The replaced crossing as `(xx''', x'x'')`, ids before replacement.
    pub crossing: (EdgeId, EdgeId),
    pub x: Vertex,
    pub x3: Vertex,
    pub x1: Vertex,
    pub x2: Vertex,
    /// `x0..x7`.
    pub block: [Vertex; 8],
    /// `x x0`, `x7 x'''`, `x' x2`, `x5 x''`.
    pub attachments: [EdgeId; 4],
    /// Block edges in the order of `BlanusaBlock::new(BlockKind::B0).edges`.
    pub block_edges: Vec<EdgeId>,
}

impl CrossingReplacementRecord {
    /// Id of the block edge between local vertices `a` and `b`.
    pub fn block_edge(&self, a: usize, b: usize) -> EdgeId {
        let b0 = BlanusaBlock::new(BlockKind::B0);
        let i = b0
            .edges
            .iter()
            .position(|&(p, q)| (p, q) == (a, b) || (q, p) == (a, b))
            .unwrap_or_else(|| panic!("no block edge x{a}x{b}"));
        self.block_edges[i]
    }

    /// The four edges with exactly one end in the block.
    pub fn block_cut(&self) -> Vec<EdgeId> {
        let mut cut = self.attachments.to_vec();
        cut.sort_unstable();
        cut
    }
}

#[derive(Clone, Debug)]
pub struct Replacement {
    pub graph: CubicGraph,
    pub ppm: PseudoMatching,
    pub drawing: Drawing,
    pub record: CrossingReplacementRecord,
}

/// Which edge of the enlarged graph a local segment of the block drawing
/// belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Piece {
    /// Block edge, by index into the `B0` edge list.
    Block(usize),
    /// Attachment edge at `ATTACH[slot]`.
    Attach(usize),
}

/// A drawing of `B0` in place of a crossing, whose own crossings are
/// local to components of the enlarged pseudo-matching. Local vertices
/// `0..8` are `x0..x7`, then come the new dummies, then the outside; the
/// four segments at the outside are the pieces of the old segments at the
/// replaced dummy.
struct BlockDrawing {
    segments: Vec<(usize, usize, Piece)>,
    dummies: usize,
    rot: Vec<Vec<Dart>>,
}

impl BlockDrawing {
    fn outside(&self) -> usize {
        8 + self.dummies
    }
}

/// Block vertices joined to the outside, in the cyclic order the outside
/// sees them: the two ends of each old edge face each other.
const ATTACH: [usize; 4] = [0, 2, 7, 5];

type ModelEdge = (usize, usize, Piece);

fn block_drawing() -> &'static BlockDrawing {
    static CELL: OnceLock<BlockDrawing> = OnceLock::new();
    CELL.get_or_init(|| {
        let b0 = BlanusaBlock::new(BlockKind::B0);
        let in_m = [(0, 1), (1, 2), (1, 6), (3, 5), (4, 7)];
        let component = [0, 0, 0, 1, 2, 1, 0, 2];
        const OUT: usize = usize::MAX;
        let mut edges: Vec<ModelEdge> =
            ATTACH.iter().enumerate().map(|(i, &k)| (k, OUT, Piece::Attach(i))).collect();
        edges.extend(b0.edges.iter().enumerate().map(|(j, &(a, b))| (a, b, Piece::Block(j))));
        let free: Vec<usize> = (0..edges.len()).filter(|&i| !in_m.contains(&(edges[i].0, edges[i].1))).collect();
        let inner = |i: usize| [edges[i].0, edges[i].1].into_iter().filter(|&v| v < 8);
        let local_pair = |p: usize, q: usize| {
            let shares = inner(p).any(|v| inner(q).any(|w| v == w));
            let meets = inner(p).any(|u| inner(q).any(|w| u != w && component[u] == component[w]));
            !shares && meets
        };
        let pairs: Vec<(usize, usize)> = free
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| free[i + 1..].iter().map(move |&q| (p, q)))
            .filter(|&(p, q)| local_pair(p, q))
            .collect();
        let mut candidates: Vec<Vec<(usize, usize)>> = pairs.iter().map(|&c| vec![c]).collect();
        for (i, &c) in pairs.iter().enumerate() {
            for &d in &pairs[i + 1..] {
                candidates.push(vec![c, d]);
                candidates.push(vec![d, c]);
            }
        }
        candidates
            .iter()
            .find_map(|crossings| draw_block(&edges, crossings))
            .expect("block admits a drawing with local crossings")
    })
}

/// Tries to draw the block with the given crossings; dummy `j` sits on
/// both edges of `crossings[j]`, and an edge crossed twice meets its
/// dummies in list order.
fn draw_block(edges: &[ModelEdge], crossings: &[(usize, usize)]) -> Option<BlockDrawing> {
    let k = crossings.len();
    let outside = 8 + k;
    let mut segments: Vec<ModelEdge> = Vec::new();
    // Segment ends at each dummy, as [p_in, q_in, p_out, q_out].
    let mut at_dummy = vec![[usize::MAX; 4]; k];
    let mut at_outside = [usize::MAX; 4];
    for (i, &(a, b, piece)) in edges.iter().enumerate() {
        let stops: Vec<usize> = (0..k).filter(|&j| crossings[j].0 == i || crossings[j].1 == i).collect();
        let b = if b == usize::MAX { outside } else { b };
        let mut path = vec![a];
        path.extend(stops.iter().map(|&j| 8 + j));
        path.push(b);
        for w in path.windows(2) {
            let s = segments.len();
            segments.push((w[0], w[1], piece));
            for (end, v) in [(0, w[0]), (1, w[1])] {
                if (8..outside).contains(&v) {
                    let j = v - 8;
                    let side = usize::from(crossings[j].0 != i);
                    // Arriving at the dummy is "in", leaving is "out".
                    at_dummy[j][side + if end == 0 { 2 } else { 0 }] = s;
                } else if v == outside {
                    let Piece::Attach(slot) = piece else { unreachable!() };
                    at_outside[slot] = s;
                }
            }
        }
    }
    let model = Multigraph::from_edges(outside + 1, &segments.iter().map(|&(a, b, _)| (a, b)).collect::<Vec<_>>()).ok()?;
    // Gadget: every dummy and the outside become a 4-cycle in the wanted
    // order, which any planar embedding must respect up to reflection.
    let mut gadget_ends: Vec<(usize, usize)> = segments.iter().map(|&(a, b, _)| (a, b)).collect();
    let mut next = outside + 1;
    let mut rings = Vec::new();
    for order in at_dummy.iter().chain(std::iter::once(&at_outside)) {
        let ring: Vec<usize> = (0..4).map(|t| next + t).collect();
        next += 4;
        for (t, &s) in order.iter().enumerate() {
            let centre = if rings.len() < k { 8 + rings.len() } else { outside };
            let (a, b) = gadget_ends[s];
            gadget_ends[s] = if a == centre { (ring[t], b) } else { (a, ring[t]) };
        }
        rings.push(ring);
    }
    for ring in &rings {
        for t in 0..4 {
            gadget_ends.push((ring[t], ring[(t + 1) % 4]));
        }
    }
    let gadget = Multigraph::from_edges(next, &gadget_ends).ok()?;
    let emb = is_planar(&gadget)?;
    let dart_at = |s: usize, v: usize| if segments[s].0 == v { 2 * s } else { 2 * s + 1 };
    let mut rot: Vec<Vec<Dart>> = (0..8).map(|v| emb.rotation(v).to_vec()).collect();
    let centres: Vec<(usize, [usize; 4])> =
        (0..k).map(|j| (8 + j, at_dummy[j])).chain(std::iter::once((outside, at_outside))).collect();
    for (v, order) in &centres {
        rot.push(order.iter().map(|&s| dart_at(s, *v)).collect());
    }
    for flips in 0..1u32 << centres.len() {
        let mut r = rot.clone();
        for (t, (v, _)) in centres.iter().enumerate() {
            if flips >> t & 1 == 1 {
                r[*v].reverse();
            }
        }
        if let Ok(e) = PlanarEmbedding::new(&model, r.clone()) {
            if e.satisfies_euler(&model) {
                return Some(BlockDrawing { segments, dummies: k, rot: r });
            }
        }
    }
    None
}

/// Replaces crossing `which` of `d` by a copy of `B0` and extends `m`.
pub fn replace_crossing(
    g: &CubicGraph,
    d: &Drawing,
    which: usize,
    m: &PseudoMatching,
) -> Result<Replacement> {
    let &(e, f) = d
        .crossings
        .get(which)
        .ok_or_else(|| Error::Parameter(format!("no crossing {which}")))?;
    if m.edges().iter().any(|&k| k == e || k == f) {
        return Err(Error::Precondition(format!("crossing {e}/{f} involves an edge of the pseudo-matching")));
    }
    let n = g.vertex_count();
    let m0 = g.edge_count();
    let ends = |k: EdgeId| {
        let (a, b) = g.endpoints(k);
        (a.min(b), a.max(b))
    };
    let (x, x3) = ends(e);
    let (x1, x2) = ends(f);
    let block: [Vertex; 8] = std::array::from_fn(|k| n + k);
    let b0 = BlanusaBlock::new(BlockKind::B0);

    let mut edges = g.edges().to_vec();
    edges[e] = (x, block[0]);
    edges[f] = (x1, block[2]);
    edges.push((block[7], x3));
    edges.push((block[5], x2));
    let block_edges: Vec<EdgeId> = (0..b0.edges.len()).map(|i| m0 + 2 + i).collect();
    edges.extend(b0.edges.iter().map(|&(a, b)| (block[a], block[b])));
    let graph = CubicGraph::new(Multigraph::from_edges(n + 8, &edges)?)?;
    let record = CrossingReplacementRecord {
        crossing: (e, f),
        x,
        x3,
        x1,
        x2,
        block,
        attachments: [e, m0, f, m0 + 1],
        block_edges,
    };

    let mut comps: Vec<Component> = m.components().to_vec();
    comps.push(Component::Claw {
        center: block[1],
        edges: [record.block_edge(1, 0), record.block_edge(1, 2), record.block_edge(1, 6)],
    });
    comps.push(Component::K2(record.block_edge(3, 5)));
    comps.push(Component::K2(record.block_edge(4, 7)));
    let ppm = PseudoMatching::new(comps);

    let drawing = replace_in_drawing(g, d, which, &record)?;
    Ok(Replacement { graph, ppm, drawing, record })
}

/// The segments of `edge` on either side of dummy `z`, ordered from `low`.
fn split_at(d: &Drawing, first: Vertex, edge: EdgeId, low: Vertex, z: Vertex) -> (Vec<EdgeId>, Vec<EdgeId>) {
    let p = &d.planarized;
    let mut path = d.segment_map[edge].clone();
    if first != low {
        path.reverse();
    }
    let mut cur = low;
    for (i, &s) in path.iter().enumerate() {
        let (u, v) = p.endpoints(s);
        cur = if u == cur { v } else { u };
        if cur == z {
            return (path[..=i].to_vec(), path[i + 1..].to_vec());
        }
    }
    unreachable!("dummy lies on the edge")
}

fn replace_in_drawing(
    old: &CubicGraph,
    d: &Drawing,
    which: usize,
    rec: &CrossingReplacementRecord,
) -> Result<Drawing> {
    let n = d.vertex_count;
    let z = d.dummy(which);
    let (e, f) = rec.crossing;
    let (e_in, e_out) = split_at(d, old.endpoints(e).0, e, rec.x, z);
    let (f_in, f_out) = split_at(d, old.endpoints(f).0, f, rec.x1, z);
    let renumber = |v: Vertex| -> Vertex {
        if v < n {
            v
        } else if v < z {
            v + 8
        } else {
            v + 7
        }
    };
    let p = &d.planarized;
    let bd = block_drawing();
    let first_new = p.vertex_count() + 7;
    let total = first_new + bd.dummies;
    let outside = bd.outside();
    let local = |k: usize| if k < 8 { rec.block[k] } else { first_new + k - 8 };
    // Old segments at z, by attachment slot (x0, x2, x7, x5).
    let at_z_seg = [*e_in.last().unwrap(), *f_in.last().unwrap(), *e_out.first().unwrap(), *f_out.first().unwrap()];
    let mut ends: Vec<(Vertex, Vertex)> = p.edges().iter().map(|&(a, b)| (renumber(a), renumber(b))).collect();
    let mut at_z: [Dart; 4] = [0; 4];
    let mut new_id = vec![usize::MAX; bd.segments.len()];
    for (ls, &(a, b, piece)) in bd.segments.iter().enumerate() {
        if b == outside {
            let Piece::Attach(i) = piece else { unreachable!("only attachments reach the outside") };
            let s = at_z_seg[i];
            if p.endpoints(s).0 == z {
                ends[s].0 = local(a);
                at_z[i] = 2 * s;
            } else {
                ends[s].1 = local(a);
                at_z[i] = 2 * s + 1;
            }
        } else {
            new_id[ls] = ends.len();
            ends.push((local(a), local(b)));
        }
    }

    let mut old_rot: Vec<Vec<Dart>> = vec![Vec::new(); total];
    for v in 0..p.vertex_count() {
        if v != z {
            old_rot[renumber(v)] = d.embedding.rotation(v).to_vec();
        }
    }
    let planarized = Multigraph::from_edges(total, &ends)?;
    let mut found = None;
    for mirrored in [false, true] {
        let mut rot = old_rot.clone();
        for k in 0..outside {
            let mut r: Vec<Dart> = bd.rot[k]
                .iter()
                .map(|&ld| {
                    let ls = dart_edge(ld);
                    match bd.segments[ls] {
                        (_, b, Piece::Attach(i)) if b == outside => at_z[i],
                        _ => 2 * new_id[ls] + ld % 2,
                    }
                })
                .collect();
            if mirrored {
                r.reverse();
            }
            rot[local(k)] = r;
        }
        if let Ok(emb) = PlanarEmbedding::new(&planarized, rot) {
            if emb.satisfies_euler(&planarized) {
                found = Some(emb);
                break;
            }
        }
    }
    let embedding = found.ok_or_else(|| Error::Invariant("block does not fit the crossing's rotation".into()))?;

    // Pieces of each attachment inside the block, listed from the block end.
    let inner = |i: usize| -> Vec<EdgeId> {
        bd.segments
            .iter()
            .enumerate()
            .filter(|&(ls, &(_, _, piece))| piece == Piece::Attach(i) && new_id[ls] != usize::MAX)
            .map(|(ls, _)| new_id[ls])
            .collect()
    };
    let mut e_in = e_in;
    let mut f_in = f_in;
    e_in.extend(inner(0));
    f_in.extend(inner(1));
    let e_out = [inner(2), e_out].concat();
    let f_out = [inner(3), f_out].concat();
    let mut segment_map = d.segment_map.clone();
    segment_map[e] = e_in;
    segment_map[f] = f_in;
    segment_map.push(e_out);
    segment_map.push(f_out);
    let block_edge_count = BlanusaBlock::new(BlockKind::B0).edges.len();
    segment_map.extend((0..block_edge_count).map(|j| {
        (0..bd.segments.len()).filter(|&ls| bd.segments[ls].2 == Piece::Block(j)).map(|ls| new_id[ls]).collect()
    }));
    // Every path runs from its edge's first endpoint.
    let mut origin = vec![usize::MAX; ends.len()];
    for (k, path) in segment_map.iter().enumerate() {
        for &s in path {
            origin[s] = k;
        }
    }
    let dummies = total - (n + 8);
    let crossings = (0..dummies)
        .map(|i| {
            let r = embedding.rotation(n + 8 + i);
            let (a, b) = (origin[dart_edge(r[0])], origin[dart_edge(r[1])]);
            (a.min(b), a.max(b))
        })
        .collect();
    Ok(Drawing { vertex_count: n + 8, planarized, embedding, crossings, segment_map })
}

/// Lifts a cycle double cover across one replacement by routing the cycles
/// through the block along the four paths and adding the block's 8-cycle.
pub fn extend_cdc(
    g: &Multigraph,
    enlarged: &Multigraph,
    cdc: &CycleSet,
    rec: &CrossingReplacementRecord,
) -> Result<CycleSet> {
    verify_cycle_set(g, &CycleSet::new(cdc.cycles.clone(), Role::Cdc))?;
    let path = |vs: &[usize]| -> Vec<EdgeId> { vs.windows(2).map(|w| rec.block_edge(w[0], w[1])).collect() };
    let p1 = path(&[0, 3, 4, 7]);
    let p2 = path(&[0, 1, 6, 7]);
    let p3 = path(&[2, 1, 6, 5]);
    let p4 = path(&[2, 4, 3, 5]);
    let (e, f) = rec.crossing;
    let [_, e_out, _, f_out] = rec.attachments;
    let on = |c: &Cycle, k: EdgeId| c.edges().contains(&k);
    // Which of P1/P2 each e-cycle takes, and P3/P4 for f-cycles.
    let mut e_choice: Vec<Option<bool>> = vec![None; cdc.len()];
    let mut f_choice: Vec<Option<bool>> = vec![None; cdc.len()];
    let e_cycles: Vec<usize> = (0..cdc.len()).filter(|&i| on(&cdc.cycles[i], e)).collect();
    let f_cycles: Vec<usize> = (0..cdc.len()).filter(|&i| on(&cdc.cycles[i], f)).collect();
    for (k, &i) in e_cycles.iter().enumerate() {
        e_choice[i] = Some(k == 0);
    }
    // A cycle through both edges keeps its two paths disjoint: P1 with P3,
    // P2 with P4.
    let mut taken = [false, false];
    for &i in &f_cycles {
        if let Some(first) = e_choice[i] {
            f_choice[i] = Some(first);
            taken[usize::from(!first)] = true;
        }
    }
    for &i in &f_cycles {
        if f_choice[i].is_none() {
            let first = !taken[0];
            taken[usize::from(!first)] = true;
            f_choice[i] = Some(first);
        }
    }
    let mut out = Vec::with_capacity(cdc.len() + 1);
    for (i, c) in cdc.cycles.iter().enumerate() {
        let mut edges = c.edges().to_vec();
        if let Some(first) = e_choice[i] {
            edges.push(e_out);
            edges.extend(if first { &p1 } else { &p2 });
        }
        if let Some(first) = f_choice[i] {
            edges.push(f_out);
            edges.extend(if first { &p3 } else { &p4 });
        }
        out.push(Cycle::from_edges(enlarged, &edges)?);
    }
    let ring = [0, 1, 2, 4, 7, 6, 5, 3, 0];
    out.push(Cycle::from_edges(enlarged, &path(&ring))?);
    let s = CycleSet::new(out, Role::Cdc);
    verify_cycle_set(enlarged, &s).map_err(|err| Error::Invariant(format!("extended cover: {err}")))?;
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycles::{cdc_from_ccd, find_ccd};
    use crate::drawing::{draw_m_avoiding, validate_drawing};
    use crate::families::petersen;
    use crate::ppm::{contract, validate_ppm};

    #[test]
    fn one_replacement_on_petersen() {
        let inst = petersen();
        let (g, m) = (&inst.graph, &inst.designated_ppm);
        let d = draw_m_avoiding(g, m).unwrap();
        let r = replace_crossing(g, &d, 0, m).unwrap();
        assert_eq!(r.graph.vertex_count(), 18);
        // Two edges give way to four attachments and ten block edges.
        assert_eq!(r.graph.edge_count(), 15 + 12);
        validate_ppm(&r.graph, &r.ppm).unwrap();
        validate_drawing(&r.graph, &r.ppm, &r.drawing).unwrap();
        let inner = r.drawing.crossing_count() + 1 - d.crossing_count();
        assert_eq!(inner, block_drawing().dummies);
        assert!(crate::drawing::check_theorem3(&r.graph, &r.ppm, &r.drawing) || d.crossing_count() > 1);

        let ccd = find_ccd(&contract(g, m).unwrap()).unwrap();
        let cdc = cdc_from_ccd(g, m, &ccd).unwrap();
        let lifted = extend_cdc(g, &r.graph, &cdc, &r.record).unwrap();
        assert_eq!(lifted.len(), cdc.len() + 1);
    }

    #[test]
    fn crossing_index_out_of_range() {
        let inst = petersen();
        let d = draw_m_avoiding(&inst.graph, &inst.designated_ppm).unwrap();
        let n = d.crossing_count();
        assert!(matches!(
            replace_crossing(&inst.graph, &d, n, &inst.designated_ppm),
            Err(Error::Parameter(_))
        ));
    }
}
