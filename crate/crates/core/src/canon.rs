//! Canonical forms by colour refinement plus individualisation, with
//! automorphism pruning of the search tree.
//!
//! The canonical form is the least relabelled edge list over the leaves of
//! the refinement search tree. It is a complete isomorphism invariant for
//! multigraphs (loops and edge multiplicities included) but is not
//! compatible with any external tool's canonical labels.

use std::cmp::Ordering;

use crate::graph::{Multigraph, Vertex};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    vertex_count: usize,
    edges: Vec<(u32, u32)>,
}

impl CanonicalForm {
    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// The canonical edge list, each pair `(a, b)` with `a <= b`, sorted.
    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn to_graph(&self) -> Multigraph {
        let edges: Vec<_> = self
            .edges
            .iter()
            .map(|&(a, b)| (a as usize, b as usize))
            .collect();
        Multigraph::from_edges(self.vertex_count, &edges).expect("canonical edges in range")
    }
}

pub fn canonical_form(g: &Multigraph) -> CanonicalForm {
    canonical_labeling(g).0
}

/// Canonical form together with the labelling that produces it:
/// `labeling[v]` is the canonical label of vertex `v`.
pub fn canonical_labeling(g: &Multigraph) -> (CanonicalForm, Vec<usize>) {
    let mut search = Search::new(g);
    let initial = search.initial_partition();
    let mut path = Vec::new();
    search.explore(initial, &mut path);
    let best = search.best.expect("search visits at least one leaf");
    (
        CanonicalForm {
            vertex_count: g.vertex_count(),
            edges: best.cert,
        },
        best.labeling,
    )
}

pub fn are_isomorphic(a: &Multigraph, b: &Multigraph) -> bool {
    if a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count() {
        return false;
    }
    let mut da = a.degrees();
    let mut db = b.degrees();
    da.sort_unstable();
    db.sort_unstable();
    da == db && canonical_form(a) == canonical_form(b)
}

/// Generators found while searching; each maps vertex `v` to `perm[v]`.
pub fn automorphism_generators(g: &Multigraph) -> Vec<Vec<Vertex>> {
    let mut search = Search::new(g);
    let initial = search.initial_partition();
    let mut path = Vec::new();
    search.explore(initial, &mut path);
    search.automorphisms
}

struct Leaf {
    cert: Vec<(u32, u32)>,
    labeling: Vec<usize>,
}

struct Search<'a> {
    g: &'a Multigraph,
    /// Neighbours other than the vertex itself, with multiplicity.
    nbrs: Vec<Vec<(Vertex, usize)>>,
    loops: Vec<usize>,
    first: Option<Leaf>,
    best: Option<Leaf>,
    automorphisms: Vec<Vec<Vertex>>,
}

const MAX_STORED_AUTOMORPHISMS: usize = 256;

type Partition = Vec<Vec<Vertex>>;

impl<'a> Search<'a> {
    fn new(g: &'a Multigraph) -> Self {
        let n = g.vertex_count();
        let mut nbrs: Vec<Vec<(Vertex, usize)>> = vec![Vec::new(); n];
        let mut loops = vec![0; n];
        for &(a, b) in g.edges() {
            if a == b {
                loops[a] += 1;
                continue;
            }
            for (x, y) in [(a, b), (b, a)] {
                match nbrs[x].iter_mut().find(|(w, _)| *w == y) {
                    Some(entry) => entry.1 += 1,
                    None => nbrs[x].push((y, 1)),
                }
            }
        }
        Search {
            g,
            nbrs,
            loops,
            first: None,
            best: None,
            automorphisms: Vec::new(),
        }
    }

    fn initial_partition(&self) -> Partition {
        let n = self.g.vertex_count();
        let mut keyed: Vec<((usize, usize), Vertex)> = (0..n)
            .map(|v| ((self.loops[v], self.g.degree(v)), v))
            .collect();
        keyed.sort_unstable();
        let mut cells: Partition = Vec::new();
        let mut last = None;
        for (key, v) in keyed {
            if last != Some(key) {
                cells.push(Vec::new());
                last = Some(key);
            }
            cells.last_mut().unwrap().push(v);
        }
        cells
    }

    /// Splits cells by the multiset of neighbouring cells until stable.
    fn refine(&self, mut cells: Partition) -> Partition {
        let n = self.g.vertex_count();
        let mut cell_of = vec![0usize; n];
        loop {
            for (i, cell) in cells.iter().enumerate() {
                for &v in cell {
                    cell_of[v] = i;
                }
            }
            let mut next: Partition = Vec::with_capacity(cells.len());
            let mut changed = false;
            for cell in &cells {
                if cell.len() == 1 {
                    next.push(cell.clone());
                    continue;
                }
                let mut keyed: Vec<(Vec<(usize, usize)>, Vertex)> = cell
                    .iter()
                    .map(|&v| {
                        let mut key: Vec<(usize, usize)> = self.nbrs[v]
                            .iter()
                            .map(|&(w, mult)| (cell_of[w], mult))
                            .collect();
                        key.sort_unstable();
                        (key, v)
                    })
                    .collect();
                keyed.sort();
                let before = next.len();
                let mut last: Option<&Vec<(usize, usize)>> = None;
                for (key, v) in &keyed {
                    if last != Some(key) {
                        next.push(Vec::new());
                        last = Some(key);
                    }
                    next.last_mut().unwrap().push(*v);
                }
                if next.len() - before > 1 {
                    changed = true;
                }
            }
            cells = next;
            if !changed {
                return cells;
            }
        }
    }

    fn explore(&mut self, cells: Partition, path: &mut Vec<Vertex>) {
        let cells = self.refine(cells);
        let Some(target) = cells.iter().position(|c| c.len() > 1) else {
            self.leaf(&cells);
            return;
        };
        let candidates = cells[target].clone();
        let mut tried: Vec<Vertex> = Vec::new();
        for &v in &candidates {
            if !tried.is_empty() {
                let orbit = self.orbits_fixing(path);
                let root = find(&orbit, v);
                if tried.iter().any(|&t| find(&orbit, t) == root) {
                    continue;
                }
            }
            tried.push(v);
            let mut child: Partition = Vec::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..target]);
            child.push(vec![v]);
            child.push(cells[target].iter().copied().filter(|&w| w != v).collect());
            child.extend_from_slice(&cells[target + 1..]);
            path.push(v);
            self.explore(child, path);
            path.pop();
        }
    }

    /// Union-find parents for the orbits of the stored automorphisms that
    /// fix `path` pointwise.
    fn orbits_fixing(&self, path: &[Vertex]) -> Vec<usize> {
        let n = self.g.vertex_count();
        let mut parent: Vec<usize> = (0..n).collect();
        for perm in &self.automorphisms {
            if path.iter().all(|&p| perm[p] == p) {
                for (v, &w) in perm.iter().enumerate() {
                    let (a, b) = (find(&parent, v), find(&parent, w));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
        parent
    }

    fn leaf(&mut self, cells: &Partition) {
        let n = self.g.vertex_count();
        let mut labeling = vec![0usize; n];
        for (i, cell) in cells.iter().enumerate() {
            labeling[cell[0]] = i;
        }
        let mut cert: Vec<(u32, u32)> = self
            .g
            .edges()
            .iter()
            .map(|&(a, b)| {
                let (x, y) = (labeling[a] as u32, labeling[b] as u32);
                (x.min(y), x.max(y))
            })
            .collect();
        cert.sort_unstable();
        let leaf = Leaf { cert, labeling };
        let Some(first) = &self.first else {
            self.best = Some(Leaf {
                cert: leaf.cert.clone(),
                labeling: leaf.labeling.clone(),
            });
            self.first = Some(leaf);
            return;
        };
        if leaf.cert == first.cert {
            let perm = compose_automorphism(&first.labeling, &leaf.labeling);
            self.store(perm);
            return;
        }
        let best = self.best.as_ref().unwrap();
        match leaf.cert.cmp(&best.cert) {
            Ordering::Equal => {
                let perm = compose_automorphism(&best.labeling, &leaf.labeling);
                self.store(perm);
            }
            Ordering::Less => self.best = Some(leaf),
            Ordering::Greater => {}
        }
    }

    fn store(&mut self, perm: Vec<Vertex>) {
        if self.automorphisms.len() < MAX_STORED_AUTOMORPHISMS
            && perm.iter().enumerate().any(|(i, &p)| i != p)
        {
            self.automorphisms.push(perm);
        }
    }
}

/// Two labellings with equal certificates differ by an automorphism:
/// `v -> reference^{-1}(other(v))`.
fn compose_automorphism(reference: &[usize], other: &[usize]) -> Vec<Vertex> {
    let mut inverse = vec![0; reference.len()];
    for (v, &l) in reference.iter().enumerate() {
        inverse[l] = v;
    }
    other.iter().map(|&l| inverse[l]).collect()
}

fn find(parent: &[usize], mut v: usize) -> usize {
    while parent[v] != v {
        v = parent[v];
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    fn shuffled(g: &Multigraph, rng: &mut rand::rngs::StdRng) -> Multigraph {
        let mut perm: Vec<usize> = (0..g.vertex_count()).collect();
        perm.shuffle(rng);
        let mut edges: Vec<(usize, usize)> = g
            .edges()
            .iter()
            .map(|&(a, b)| (perm[a], perm[b]))
            .collect();
        edges.shuffle(rng);
        Multigraph::from_edges(g.vertex_count(), &edges).unwrap()
    }

    #[test]
    fn relabeling_invariance() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        let mut multi = prism();
        multi.add_edge(0, 1);
        multi.add_edge(4, 4);
        for g in [k4(), prism(), cube(), multi, Multigraph::new(5)] {
            let reference = canonical_form(&g);
            for _ in 0..100 {
                assert_eq!(canonical_form(&shuffled(&g, &mut rng)), reference);
            }
        }
    }

    #[test]
    fn distinguishes_prism_from_k33() {
        let k33 = Multigraph::from_edges(
            6,
            &[(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)],
        )
        .unwrap();
        assert!(!are_isomorphic(&prism(), &k33));
        assert!(are_isomorphic(&k33, &k33.relabel(&[5, 4, 3, 2, 1, 0])));
    }

    #[test]
    fn multiplicity_matters() {
        let a = Multigraph::from_edges(3, &[(0, 1), (0, 1), (1, 2)]).unwrap();
        let b = Multigraph::from_edges(3, &[(0, 1), (1, 2), (1, 2)]).unwrap();
        let c = Multigraph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(are_isomorphic(&a, &b));
        assert!(!are_isomorphic(&a, &c));
    }

    #[test]
    fn cube_automorphisms_are_automorphisms() {
        let g = cube();
        let gens = automorphism_generators(&g);
        assert!(!gens.is_empty());
        let reference = canonical_form(&g);
        for p in gens {
            assert_eq!(canonical_form(&g.relabel(&p)), reference);
            let mut mapped: Vec<_> = g
                .edges()
                .iter()
                .map(|&(a, b)| (p[a].min(p[b]), p[a].max(p[b])))
                .collect();
            let mut orig: Vec<_> = g.edges().iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
            mapped.sort_unstable();
            orig.sort_unstable();
            assert_eq!(mapped, orig);
        }
    }

    #[test]
    fn form_roundtrips_to_isomorphic_graph() {
        let g = cube();
        let form = canonical_form(&g);
        assert!(are_isomorphic(&form.to_graph(), &g));
    }
}
