//! Named snark families with their designated pseudo-matchings.
//!
//! Vertex numbering is block-major:
//! - Petersen: `v0..v9` are ids `0..9`.
//! - Blanuša `B_n^j`: block `i` (0-based) occupies ids `8i..`, the last
//!   block being `B_j`; local names `u0..u7`, `v0..v9`, `w0..w9` keep their
//!   index.
//! - Flower `J_k`: `v_i, u_i^1, u_i^2, u_i^3` are `4(i-1) + 0..3`.
//! - Goldberg `G_k`: `v_j^t` is `8(t-1) + (j-1)`.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{CubicGraph, EdgeColoring, EdgeId, Multigraph, Vertex};
use crate::ppm::{validate_ppm, PseudoMatching};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BlockKind {
    B0,
    B1,
    B2,
}

/// Local vertices carrying the four half-edges of a block.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HalfEdges {
    pub a: usize,
    pub a_prime: usize,
    pub b: usize,
    pub b_prime: usize,
}

/// A Blanuša block: internal edges over local vertex ids plus the vertices
/// that carry the dangling half-edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlanusaBlock {
    pub kind: BlockKind,
    pub vertex_count: usize,
    pub edges: Vec<(usize, usize)>,
    pub half_edges: HalfEdges,
}

impl BlanusaBlock {
    pub fn new(kind: BlockKind) -> Self {
        let (vertex_count, edges, half_edges): (usize, &[(usize, usize)], HalfEdges) = match kind {
            BlockKind::B0 => (
                8,
                &[(0, 1), (1, 2), (3, 4), (5, 6), (6, 7), (0, 3), (3, 5), (1, 6), (2, 4), (4, 7)],
                HalfEdges { a: 0, a_prime: 7, b: 5, b_prime: 2 },
            ),
            BlockKind::B1 => (
                10,
                &[
                    (0, 1), (1, 2), (2, 8), (3, 4), (5, 6), (6, 7), (7, 9),
                    (0, 3), (3, 5), (1, 6), (2, 4), (4, 7), (8, 9),
                ],
                HalfEdges { a: 0, a_prime: 9, b: 5, b_prime: 8 },
            ),
            BlockKind::B2 => (
                10,
                &[
                    (0, 1), (1, 2), (3, 9), (9, 4), (5, 6), (6, 7),
                    (0, 3), (3, 5), (1, 8), (8, 6), (2, 4), (4, 7), (8, 9),
                ],
                HalfEdges { a: 0, a_prime: 7, b: 5, b_prime: 2 },
            ),
        };
        BlanusaBlock { kind, vertex_count, edges: edges.to_vec(), half_edges }
    }

    /// Degree of each local vertex counting its half-edge.
    pub fn degrees_with_half_edges(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertex_count];
        for &(a, b) in &self.edges {
            deg[a] += 1;
            deg[b] += 1;
        }
        let h = self.half_edges;
        for v in [h.a, h.a_prime, h.b, h.b_prime] {
            deg[v] += 1;
        }
        deg
    }
}

/// Which family an instance belongs to, with its parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Petersen,
    Blanusa { n: usize, j: usize },
    Flower { k: usize },
    Goldberg { k: usize },
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Petersen => write!(f, "petersen"),
            Family::Blanusa { n, j } => write!(f, "blanusa(n={n},j={j})"),
            Family::Flower { k } => write!(f, "flower(k={k})"),
            Family::Goldberg { k } => write!(f, "goldberg(k={k})"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct FamilyInstance {
    pub graph: CubicGraph,
    pub designated_ppm: PseudoMatching,
    pub family: Family,
}

fn instance(
    n: usize,
    edges: &[(Vertex, Vertex)],
    ppm_edges: &[(Vertex, Vertex)],
    family: Family,
) -> FamilyInstance {
    let graph = CubicGraph::new(Multigraph::from_edges(n, edges).expect("family edges in range"))
        .expect("family graphs are cubic");
    let ids: Vec<EdgeId> = ppm_edges
        .iter()
        .map(|&(a, b)| graph.find_edge(a, b).unwrap_or_else(|| panic!("{family}: no edge {a}-{b}")))
        .collect();
    let designated_ppm = PseudoMatching::from_edge_set(&graph, &ids).expect("designated edges form a PPM");
    validate_ppm(&graph, &designated_ppm).expect("designated PPM is valid");
    FamilyInstance { graph, designated_ppm, family }
}

/// The Petersen graph with the claw at `v0` and the matching
/// `v2v7, v3v8, v6v9`; its complement is the 9-cycle `v1v2v3v4v9v7v5v8v6`.
pub fn petersen() -> FamilyInstance {
    let edges = [
        (2, 3), (1, 2), (1, 6), (4, 9), (6, 8), (7, 9), (5, 7), (5, 8),
        (3, 4), (0, 1), (0, 5), (0, 4), (6, 9), (2, 7), (3, 8),
    ];
    let m = [(0, 1), (0, 4), (0, 5), (6, 9), (2, 7), (3, 8)];
    instance(10, &edges, &m, Family::Petersen)
}

/// `B_n^j`: `n - 1` copies of `B0` followed by one `B_j`, with `a'`, `b'`
/// of each block joined to `a`, `b` of the next, cyclically.
pub fn blanusa_snark(n: usize, j: usize) -> Result<FamilyInstance> {
    if n == 0 {
        return Err(Error::Parameter("blanusa_snark needs n >= 1".into()));
    }
    let last = match j {
        1 => BlockKind::B1,
        2 => BlockKind::B2,
        _ => return Err(Error::Parameter(format!("blanusa_snark needs j in {{1, 2}}, got {j}"))),
    };
    let blocks: Vec<BlanusaBlock> = (0..n)
        .map(|i| BlanusaBlock::new(if i + 1 < n { BlockKind::B0 } else { last }))
        .collect();
    let offsets: Vec<usize> = (0..n).map(|i| 8 * i).collect();
    let total = 8 * (n - 1) + 10;
    let mut edges = Vec::new();
    let mut m = Vec::new();
    for (i, block) in blocks.iter().enumerate() {
        let o = offsets[i];
        edges.extend(block.edges.iter().map(|&(a, b)| (a + o, b + o)));
        let local: &[(usize, usize)] = match (block.kind, j) {
            (BlockKind::B0, 1) => &[(1, 0), (1, 2), (1, 6), (3, 5), (4, 7)],
            (BlockKind::B0, _) => &[(3, 0), (3, 4), (3, 5), (1, 2), (6, 7)],
            (BlockKind::B1, _) => &[(1, 0), (1, 2), (1, 6), (3, 5), (4, 7), (8, 9)],
            (BlockKind::B2, _) => &[(0, 1), (2, 4), (3, 5), (6, 7), (8, 9)],
        };
        m.extend(local.iter().map(|&(a, b)| (a + o, b + o)));
        let next = (i + 1) % n;
        let (h, hn) = (block.half_edges, blocks[next].half_edges);
        edges.push((h.a_prime + o, hn.a + offsets[next]));
        edges.push((h.b_prime + o, hn.b + offsets[next]));
    }
    Ok(instance(total, &edges, &m, Family::Blanusa { n, j }))
}

fn flower_edges(k: usize) -> Vec<(Vertex, Vertex)> {
    let v = |i: usize| 4 * i;
    let u = |i: usize, s: usize| 4 * i + s;
    let mut edges = Vec::new();
    for i in 0..k {
        edges.extend([(v(i), u(i, 1)), (v(i), u(i, 2)), (v(i), u(i, 3))]);
        edges.push((u(i, 1), u((i + 1) % k, 1)));
    }
    // C2 runs through u^2_1..u^2_k and then u^3_1..u^3_k.
    for i in 0..k - 1 {
        edges.push((u(i, 2), u(i + 1, 2)));
        edges.push((u(i, 3), u(i + 1, 3)));
    }
    edges.push((u(k - 1, 2), u(0, 3)));
    edges.push((u(k - 1, 3), u(0, 2)));
    edges
}

fn flower_claws(k: usize) -> Vec<(Vertex, Vertex)> {
    (0..k).flat_map(|i| (1..=3).map(move |s| (4 * i, 4 * i + s))).collect()
}

/// The flower snark `J_k` with its claw pseudo-matching.
pub fn flower_snark(k: usize) -> Result<FamilyInstance> {
    if k < 3 || k.is_multiple_of(2) {
        return Err(Error::Parameter(format!("flower_snark needs odd k >= 3, got {k}")));
    }
    Ok(flower_graph(k))
}

/// The flower construction for any `k >= 3`; for even `k` it is
/// 3-edge-colourable (see [`flower_even_coloring`]).
pub fn flower_graph(k: usize) -> FamilyInstance {
    assert!(k >= 3, "flower construction needs k >= 3");
    instance(4 * k, &flower_edges(k), &flower_claws(k), Family::Flower { k })
}

/// The explicit colouring of the even flower graph: `C1` alternates 2 and
/// 3, `u_i^j v_i` gets `j` for `j = 2, 3`, `u^3_{2i-1}u^3_{2i}` gets 2,
/// `u^2_{2i-1}u^2_{2i}` gets 3, all else 1.
pub fn flower_even_coloring(inst: &FamilyInstance) -> Result<EdgeColoring> {
    let Family::Flower { k } = inst.family else {
        return Err(Error::Parameter("not a flower instance".into()));
    };
    if k % 2 == 1 {
        return Err(Error::Parameter(format!("no explicit colouring for odd k = {k}")));
    }
    let g = &inst.graph;
    let mut colors = vec![1u8; g.edge_count()];
    let mut set = |a: Vertex, b: Vertex, c: u8| colors[g.find_edge(a, b).expect("flower edge")] = c;
    for i in 0..k {
        set(4 * i + 1, 4 * ((i + 1) % k) + 1, if i % 2 == 0 { 2 } else { 3 });
        set(4 * i, 4 * i + 2, 2);
        set(4 * i, 4 * i + 3, 3);
    }
    for i in (0..k).step_by(2) {
        set(4 * i + 3, 4 * (i + 1) + 3, 2);
        set(4 * i + 2, 4 * (i + 1) + 2, 3);
    }
    let coloring = EdgeColoring::new(colors);
    coloring.check_proper(g)?;
    Ok(coloring)
}

/// The Goldberg snark `G_k` with the perfect matching
/// `{v1v7, v2v8, v3v4, v5v6}` in every block.
pub fn goldberg_snark(k: usize) -> Result<FamilyInstance> {
    if k < 5 || k.is_multiple_of(2) {
        return Err(Error::Parameter(format!("goldberg_snark needs odd k >= 5, got {k}")));
    }
    let v = |t: usize, j: usize| 8 * (t % k) + (j - 1);
    let block = [(1, 2), (1, 7), (2, 8), (3, 4), (3, 8), (4, 7), (5, 6), (6, 7), (6, 8)];
    let mut edges = Vec::new();
    let mut m = Vec::new();
    for t in 0..k {
        edges.extend(block.iter().map(|&(a, b)| (v(t, a), v(t, b))));
        edges.extend([(v(t, 2), v(t + 1, 1)), (v(t, 4), v(t + 1, 3)), (v(t, 5), v(t + 1, 5))]);
        m.extend([(v(t, 1), v(t, 7)), (v(t, 2), v(t, 8)), (v(t, 3), v(t, 4)), (v(t, 5), v(t, 6))]);
    }
    Ok(instance(8 * k, &edges, &m, Family::Goldberg { k }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::is_snark;
    use crate::ppm::complement_cycles;

    #[test]
    fn blocks_have_four_half_edges_and_cubic_interiors() {
        for kind in [BlockKind::B0, BlockKind::B1, BlockKind::B2] {
            let b = BlanusaBlock::new(kind);
            assert!(b.degrees_with_half_edges().iter().all(|&d| d == 3), "{kind:?}");
        }
    }

    #[test]
    fn b1_claw_centre_is_adjacent_to_the_other_three() {
        let b = BlanusaBlock::new(BlockKind::B1);
        let adj = |x, y| b.edges.iter().any(|&e| e == (x, y) || e == (y, x));
        assert!([0, 2, 6].iter().all(|&x| adj(1, x)));
        for c in [0, 2, 6] {
            assert!(![0, 1, 2, 6].iter().filter(|&&x| x != c).all(|&x| adj(c, x)));
        }
    }

    #[test]
    fn orders() {
        for n in 1..=4 {
            for j in 1..=2 {
                let b = blanusa_snark(n, j).unwrap();
                assert_eq!(b.graph.vertex_count(), 8 * (n - 1) + 10);
            }
        }
        assert_eq!(flower_snark(5).unwrap().graph.vertex_count(), 20);
        assert_eq!(goldberg_snark(5).unwrap().graph.vertex_count(), 40);
    }

    #[test]
    fn bad_parameters() {
        assert!(matches!(blanusa_snark(2, 3), Err(Error::Parameter(_))));
        assert!(matches!(blanusa_snark(0, 1), Err(Error::Parameter(_))));
        assert!(flower_snark(4).is_err());
        assert!(flower_snark(1).is_err());
        assert!(goldberg_snark(3).is_err());
        assert!(goldberg_snark(6).is_err());
    }

    #[test]
    fn petersen_complement_and_components() {
        let p = petersen();
        assert_eq!(p.designated_ppm.claw_count(), 1);
        assert_eq!(p.designated_ppm.components().len(), 4);
        let cs = complement_cycles(&p.graph, &p.designated_ppm);
        assert_eq!(cs.len(), 1);
        assert_eq!(cs[0].to_string(), "1 2 3 4 9 7 5 8 6 1");
        assert!(is_snark(&p.graph).unwrap());
    }

    #[test]
    fn flower_complement_lengths() {
        let f = flower_snark(5).unwrap();
        let mut lens: Vec<usize> = complement_cycles(&f.graph, &f.designated_ppm).iter().map(|c| c.len()).collect();
        lens.sort_unstable();
        assert_eq!(lens, vec![5, 10]);
    }

    #[test]
    fn even_flower_coloring_is_proper() {
        for k in [4, 6, 8] {
            let f = flower_graph(k);
            assert!(flower_even_coloring(&f).is_ok());
        }
        assert!(flower_even_coloring(&flower_graph(5)).is_err());
    }

    #[test]
    fn goldberg_matching() {
        let g = goldberg_snark(5).unwrap();
        assert!(g.designated_ppm.is_perfect_matching());
        assert_eq!(g.designated_ppm.components().len(), 20);
    }
}
