use std::collections::HashSet;

use super::replace::{extend_cdc, replace_crossing, Replacement};
use super::CrossingReplacementRecord;
use crate::canon::{canonical_form, CanonicalForm};
use crate::coloring::is_3_edge_colorable_with_poles;
use crate::connectivity::{cyclic_bonds, cyclic_edge_connectivity_at_least};
use crate::cycles::CycleSet;
use crate::drawing::{draw_m_avoiding, linked_crossings, seek_unlinked_drawing, validate_drawing, Drawing};
use crate::error::{Error, Result};
use crate::graph::{CubicGraph, EdgeId, Multigraph, Vertex};
use crate::ppm::{validate_ppm, PseudoMatching};

/// Local block edges whose removal leaves the two through-paths
/// `x0 x3 x4 x7` and `x2 x1 x6 x5`.
const CHORDS: [(usize, usize); 4] = [(0, 1), (6, 7), (2, 4), (3, 5)];

#[derive(Clone, Debug)]
pub struct StarConstruction {
    pub graph: CubicGraph,
    pub ppm: PseudoMatching,
    /// The drawing of the input that was resolved.
    pub drawing: Drawing,
    /// The final drawing; its crossings all lie inside blocks.
    pub final_drawing: Drawing,
    /// Replacements in the order applied; each carries the graph after it.
    pub steps: Vec<Replacement>,
}

impl StarConstruction {
    pub fn records(&self) -> impl Iterator<Item = &CrossingReplacementRecord> {
        self.steps.iter().map(|s| &s.record)
    }

    /// Carries a cycle double cover of the input through every replacement.
    pub fn lift_cdc(&self, g: &Multigraph, cdc: &CycleSet) -> Result<CycleSet> {
        let mut cur = cdc.clone();
        let mut prev = g;
        for step in &self.steps {
            cur = extend_cdc(prev, &step.graph, &cur, &step.record)?;
            prev = &step.graph;
        }
        Ok(cur)
    }

    /// Snark test for the output, colouring through the blocks as 4-poles.
    pub fn is_snark(&self) -> Result<bool> {
        let poles: Vec<Vec<Vertex>> = self.blocks().iter().map(|b| b.to_vec()).collect();
        Ok(self.graph.is_simple()
            && self.graph.is_connected()
            && cyclic_edge_connectivity_at_least(&self.graph, 4)?
            && !is_3_edge_colorable_with_poles(&self.graph, &poles)?)
    }

    /// Vertex sets of the blocks in the final graph.
    pub fn blocks(&self) -> Vec<[Vertex; 8]> {
        self.records().map(|r| r.block).collect()
    }
}

/// Replaces every crossing of an M-avoiding drawing, always the first one
/// left.
pub fn star_construction(g: &CubicGraph, m: &PseudoMatching) -> Result<StarConstruction> {
    star_construction_with(g, m, |_| 0)
}

/// As [`star_construction`], with `choose(remaining)` picking which of the
/// remaining crossings to replace next.
pub fn star_construction_with(
    g: &CubicGraph,
    m: &PseudoMatching,
    mut choose: impl FnMut(usize) -> usize,
) -> Result<StarConstruction> {
    validate_ppm(g, m)?;
    let drawing = draw_m_avoiding(g, m)?;
    build(g, m, drawing, &mut choose)
}

/// As [`star_construction`], resolving a given M-avoiding drawing.
pub fn star_construction_on(g: &CubicGraph, m: &PseudoMatching, drawing: Drawing) -> Result<StarConstruction> {
    validate_ppm(g, m)?;
    validate_drawing(g, m, &drawing)?;
    build(g, m, drawing, &mut |_| 0)
}

fn build(
    g: &CubicGraph,
    m: &PseudoMatching,
    drawing: Drawing,
    choose: &mut dyn FnMut(usize) -> usize,
) -> Result<StarConstruction> {
    if !cyclic_edge_connectivity_at_least(g, 4)? {
        return Err(Error::Precondition("graph is not cyclically 4-edge-connected".into()));
    }
    let mut graph = g.clone();
    let mut ppm = m.clone();
    let mut current = drawing.clone();
    let mut steps = Vec::new();
    // Each replacement drops its crossing and appends the block's own
    // crossings, so the original ones stay at the front.
    for remaining in (1..=drawing.crossing_count()).rev() {
        let which = choose(remaining) % remaining;
        let step = replace_crossing(&graph, &current, which, &ppm)?;
        graph = step.graph.clone();
        ppm = step.ppm.clone();
        current = step.drawing.clone();
        steps.push(step);
    }
    Ok(StarConstruction { graph, ppm, drawing, final_drawing: current, steps })
}

/// Deletes four chords of every block (blocks occupy `n + 8i ..`) and
/// suppresses the resulting degree-2 vertices, leaving a graph on the
/// original `n` vertices.
pub fn suppress_blocks(g_star: &Multigraph, n: usize) -> Result<Multigraph> {
    let extra = g_star.vertex_count() - n;
    if !extra.is_multiple_of(8) {
        return Err(Error::Structure(format!("{extra} vertices beyond the original are not whole blocks")));
    }
    let mut removed = HashSet::new();
    for b in 0..extra / 8 {
        for &(p, q) in &CHORDS {
            let e = g_star
                .find_edge(n + 8 * b + p, n + 8 * b + q)
                .ok_or_else(|| Error::Structure(format!("block {b} lacks chord x{p}x{q}")))?;
            removed.insert(e);
        }
    }
    let (h, _) = g_star.filter_edges(|e| !removed.contains(&e));
    let mut out = Multigraph::new(n);
    let mut used = vec![false; h.edge_count()];
    for v in 0..n {
        for &start in h.incident(v) {
            if used[start] {
                continue;
            }
            used[start] = true;
            let mut at = h.other(start, v);
            let mut via = start;
            while at >= n {
                let next = h
                    .incident(at)
                    .iter()
                    .copied()
                    .find(|&e| e != via)
                    .ok_or_else(|| Error::Structure(format!("vertex {at} is not on a through-path")))?;
                if h.degree(at) != 2 {
                    return Err(Error::Structure(format!("vertex {at} keeps degree {}", h.degree(at))));
                }
                used[next] = true;
                via = next;
                at = h.other(next, at);
            }
            out.add_edge(v, at);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct InstanceCensus {
    pub input_order: usize,
    pub crossings: usize,
    /// Crossings whose two edges are joined by an edge of the input.
    pub linked_crossings: usize,
    pub output_order: usize,
    pub output_form: CanonicalForm,
    pub cyclically_4_connected: bool,
    pub cyclic_4_cuts: usize,
    /// Cyclic 4-cuts that do not isolate a block.
    pub foreign_cuts: Vec<Vec<EdgeId>>,
    /// Foreign cuts that do not isolate a block together with an edge
    /// joining its two crossed edges.
    pub unexplained_cuts: Vec<Vec<EdgeId>>,
}

#[derive(Clone, Debug)]
pub struct InjectivityReport {
    pub instances: Vec<InstanceCensus>,
}

impl InjectivityReport {
    pub fn block_cuts_only(&self) -> bool {
        self.instances.iter().all(|c| c.foreign_cuts.is_empty())
    }
}

/// Rotation systems of `G/M` tried per instance when looking for a drawing
/// without linked crossings.
const UNLINKED_BUDGET: u64 = 200_000;

/// Builds `G*` for each input, from a drawing without linked crossings when
/// one turns up, and checks that non-isomorphic inputs give
/// non-isomorphic outputs; also lists the cyclic 4-cuts of each output.
pub fn injectivity_experiment(instances: &[(CubicGraph, PseudoMatching)]) -> Result<InjectivityReport> {
    for (i, (g, _)) in instances.iter().enumerate() {
        if !cyclic_edge_connectivity_at_least(g, 5)? {
            return Err(Error::Precondition(format!("instance {i} is not cyclically 5-edge-connected")));
        }
    }
    let inputs: Vec<CanonicalForm> = instances.iter().map(|(g, _)| canonical_form(g)).collect();
    let mut out = Vec::with_capacity(instances.len());
    for (g, m) in instances {
        let drawing = match seek_unlinked_drawing(g, m, UNLINKED_BUDGET)? {
            Some(d) => d,
            None => draw_m_avoiding(g, m)?,
        };
        let linked = linked_crossings(g, &drawing).len();
        let star = star_construction_on(g, m, drawing)?;
        let gs: &Multigraph = &star.graph;
        let block_cuts: HashSet<Vec<EdgeId>> = star.blocks().iter().map(|blk| boundary(gs, blk)).collect();
        let mut explained = HashSet::new();
        for rec in star.records() {
            for u in [rec.x, rec.x3] {
                for w in [rec.x1, rec.x2] {
                    if gs.find_edge(u, w).is_some() {
                        let mut side = rec.block.to_vec();
                        side.extend([u, w]);
                        explained.insert(boundary(gs, &side));
                    }
                }
            }
        }
        let cuts = cyclic_bonds(gs, 4)?;
        let foreign_cuts: Vec<Vec<EdgeId>> = cuts.iter().filter(|c| !block_cuts.contains(*c)).cloned().collect();
        let unexplained_cuts = foreign_cuts.iter().filter(|c| !explained.contains(*c)).cloned().collect();
        out.push(InstanceCensus {
            input_order: g.vertex_count(),
            crossings: star.drawing.crossing_count(),
            linked_crossings: linked,
            output_order: gs.vertex_count(),
            output_form: canonical_form(gs),
            cyclically_4_connected: cyclic_edge_connectivity_at_least(&star.graph, 4)?,
            cyclic_4_cuts: cuts.len(),
            foreign_cuts,
            unexplained_cuts,
        });
    }
    for i in 0..out.len() {
        for j in i + 1..out.len() {
            if inputs[i] != inputs[j] && out[i].output_form == out[j].output_form {
                return Err(Error::Invariant(format!(
                    "non-isomorphic inputs {i} and {j} give isomorphic outputs"
                )));
            }
        }
    }
    Ok(InjectivityReport { instances: out })
}

/// Sorted edges with exactly one end in `side`.
fn boundary(g: &Multigraph, side: &[Vertex]) -> Vec<EdgeId> {
    let inside = |v: Vertex| side.contains(&v);
    (0..g.edge_count())
        .filter(|&e| {
            let (a, b) = g.endpoints(e);
            inside(a) != inside(b)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::are_isomorphic;
    use crate::cycles::{cdc_from_ccd, find_ccd};
    use crate::drawing::check_theorem3;
    use crate::ppm::{classify_ppm, contract, PpmClass};
    use proptest::prelude::*;
    use crate::graph::fixtures::cube;
    use crate::ppm::{enumerate_ppms, PpmFilter};

    #[test]
    fn planar_input_is_a_fixpoint() {
        let g = CubicGraph::new(cube()).unwrap();
        let m = enumerate_ppms(&g, PpmFilter::default()).remove(0);
        let s = star_construction(&g, &m).unwrap();
        assert!(s.steps.is_empty());
        assert_eq!(s.graph.edges(), g.edges());
        assert_eq!(s.ppm, m);
    }

    #[test]
    fn petersen_star_reduces_back() {
        let inst = crate::families::petersen();
        let s = star_construction(&inst.graph, &inst.designated_ppm).unwrap();
        assert_eq!(s.graph.vertex_count(), 10 + 8 * s.drawing.crossing_count());
        let back = suppress_blocks(&s.graph, 10).unwrap();
        assert!(are_isomorphic(&back, &inst.graph));
        validate_drawing(&s.graph, &s.ppm, &s.final_drawing).unwrap();
        assert!(check_theorem3(&s.graph, &s.ppm, &s.final_drawing));
        assert_eq!(classify_ppm(&s.graph, &s.ppm).unwrap(), PpmClass::Planarizing);
    }

    #[test]
    fn petersen_cover_lifts() {
        let inst = crate::families::petersen();
        let (g, m) = (&inst.graph, &inst.designated_ppm);
        let s = star_construction(g, m).unwrap();
        let cdc = cdc_from_ccd(g, m, &find_ccd(&contract(g, m).unwrap()).unwrap()).unwrap();
        let lifted = s.lift_cdc(g, &cdc).unwrap();
        assert_eq!(lifted.len(), cdc.len() + s.steps.len());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(8))]
        #[test]
        fn replacement_order_is_irrelevant(picks in proptest::collection::vec(0usize..16, 8)) {
            let inst = crate::families::petersen();
            let (g, m) = (&inst.graph, &inst.designated_ppm);
            let first = star_construction(g, m).unwrap();
            let mut i = 0;
            let other = star_construction_with(g, m, |_| { i += 1; picks[(i - 1) % picks.len()] }).unwrap();
            prop_assert_eq!(canonical_form(&first.graph), canonical_form(&other.graph));
        }
    }

    #[test]
    fn petersen_has_one_cut_beside_the_blocks() {
        let inst = crate::families::petersen();
        let r = injectivity_experiment(&[(inst.graph, inst.designated_ppm)]).unwrap();
        let c = &r.instances[0];
        assert_eq!(c.output_order, 26);
        assert!(c.cyclically_4_connected);
        assert_eq!(c.linked_crossings, 1);
        assert_eq!(c.foreign_cuts.len(), 1);
        assert!(c.unexplained_cuts.is_empty());
        assert!(!r.block_cuts_only());
    }

    #[test]
    fn flower_outputs_are_distinct_with_block_cuts_only() {
        let insts: Vec<_> = [5, 7]
            .into_iter()
            .map(|k| {
                let f = crate::families::flower_snark(k).unwrap();
                (f.graph, f.designated_ppm)
            })
            .collect();
        let r = injectivity_experiment(&insts).unwrap();
        assert!(r.block_cuts_only());
        assert_ne!(r.instances[0].output_form, r.instances[1].output_form);
        for c in &r.instances {
            // One cut around each block and no other.
            assert_eq!(c.cyclic_4_cuts, c.crossings);
            assert_eq!(c.linked_crossings, 0);
        }
    }

    #[test]
    fn injectivity_needs_cyclic_five_connectivity() {
        let g = CubicGraph::new(cube()).unwrap();
        let m = enumerate_ppms(&g, PpmFilter::default()).remove(0);
        assert!(matches!(injectivity_experiment(&[(g, m)]), Err(Error::Precondition(_))));
    }

    #[test]
    fn prism_fails_the_connectivity_precondition() {
        let g = CubicGraph::new(crate::graph::fixtures::prism()).unwrap();
        let m = enumerate_ppms(&g, PpmFilter::default()).remove(0);
        assert!(matches!(star_construction(&g, &m), Err(Error::Precondition(_))));
    }
}
