//! K5-minor detection. A graph has a K5 minor iff some contraction of it
//! contains K5, so the search contracts one edge at a time, memoised on
//! isomorphism classes. Shortcuts: degree reductions, planarity, block and
//! 2-cut splitting, and the fact that a 4-connected nonplanar graph always
//! has a K5 minor.

use std::collections::HashMap;

use super::planarity::{biconnected_blocks, is_planar};
use crate::canon::{canonical_form, CanonicalForm};
use crate::error::{Error, Result};
use crate::graph::Multigraph;

/// Default node budget; far above what graphs with at most 40 vertices need.
pub const K5_BUDGET: u64 = 2_000_000;

pub fn has_k5_minor(g: &Multigraph) -> Result<bool> {
    has_k5_minor_with_budget(g, K5_BUDGET)
}

pub fn has_k5_minor_with_budget(g: &Multigraph, budget: u64) -> Result<bool> {
    let mut s = Solver { memo: HashMap::new(), nodes: 0, budget };
    s.solve(Simple::from_multigraph(g))
}

/// Simple graph as sorted adjacency lists over a compact vertex range.
#[derive(Clone, Debug)]
struct Simple {
    adj: Vec<Vec<usize>>,
}

impl Simple {
    fn from_multigraph(g: &Multigraph) -> Self {
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); g.vertex_count()];
        for &(a, b) in g.edges() {
            if a != b {
                adj[a].push(b);
                adj[b].push(a);
            }
        }
        for l in &mut adj {
            l.sort_unstable();
            l.dedup();
        }
        Simple { adj }
    }

    fn n(&self) -> usize {
        self.adj.len()
    }

    fn m(&self) -> usize {
        self.adj.iter().map(|l| l.len()).sum::<usize>() / 2
    }

    fn to_multigraph(&self) -> Multigraph {
        let mut g = Multigraph::new(self.n());
        for (v, l) in self.adj.iter().enumerate() {
            for &w in l {
                if v < w {
                    g.add_edge(v, w);
                }
            }
        }
        g
    }

    fn has(&self, a: usize, b: usize) -> bool {
        self.adj[a].binary_search(&b).is_ok()
    }

    fn add(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        if let Err(i) = self.adj[a].binary_search(&b) {
            self.adj[a].insert(i, b);
        }
        if let Err(i) = self.adj[b].binary_search(&a) {
            self.adj[b].insert(i, a);
        }
    }

    /// Keeps the listed vertices, renumbered in the given order.
    fn induced(&self, keep: &[usize]) -> Simple {
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let adj = keep
            .iter()
            .map(|&v| {
                let mut l: Vec<usize> = self.adj[v]
                    .iter()
                    .filter(|&&w| index[w] != usize::MAX)
                    .map(|&w| index[w])
                    .collect();
                l.sort_unstable();
                l
            })
            .collect();
        Simple { adj }
    }

    fn contract(&self, a: usize, b: usize) -> Simple {
        let mut h = self.clone();
        for w in self.adj[b].clone() {
            h.add(a, w);
        }
        let keep: Vec<usize> = (0..self.n()).filter(|&v| v != b).collect();
        h.induced(&keep)
    }

    /// Deletes vertices of degree at most 1 and suppresses degree-2 vertices.
    fn reduce(mut self) -> Simple {
        loop {
            let n = self.n();
            let Some(v) = (0..n).find(|&v| self.adj[v].len() <= 2) else {
                return self;
            };
            if self.adj[v].len() == 2 {
                let (a, b) = (self.adj[v][0], self.adj[v][1]);
                self.add(a, b);
            }
            let keep: Vec<usize> = (0..n).filter(|&x| x != v).collect();
            self = self.induced(&keep);
        }
    }

    fn connected_without(&self, removed: &[usize]) -> bool {
        let n = self.n();
        let mut seen = vec![false; n];
        for &r in removed {
            seen[r] = true;
        }
        let Some(s) = (0..n).find(|&v| !seen[v]) else {
            return true;
        };
        let mut stack = vec![s];
        seen[s] = true;
        let mut count = removed.len() + 1;
        while let Some(v) = stack.pop() {
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == n
    }

    /// Components of the graph without `removed`, as vertex lists.
    fn components_without(&self, removed: &[usize]) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        for &r in removed {
            seen[r] = true;
        }
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                for &w in &self.adj[comp[i]] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
                i += 1;
            }
            out.push(comp);
        }
        out
    }

    fn contains_k5(&self) -> bool {
        let n = self.n();
        let cand: Vec<usize> = (0..n).filter(|&v| self.adj[v].len() >= 4).collect();
        let mut clique = Vec::new();
        fn grow(g: &Simple, cand: &[usize], from: usize, clique: &mut Vec<usize>) -> bool {
            if clique.len() == 5 {
                return true;
            }
            for i in from..cand.len() {
                let v = cand[i];
                if clique.iter().all(|&c| g.has(c, v)) {
                    clique.push(v);
                    if grow(g, cand, i + 1, clique) {
                        return true;
                    }
                    clique.pop();
                }
            }
            false
        }
        grow(self, &cand, 0, &mut clique)
    }
}

struct Solver {
    memo: HashMap<CanonicalForm, bool>,
    nodes: u64,
    budget: u64,
}

impl Solver {
    fn solve(&mut self, g: Simple) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::Undecided("K5 minor search exceeded its node budget".into()));
        }
        let g = g.reduce();
        if g.n() < 5 || g.m() < 10 {
            return Ok(false);
        }
        if g.contains_k5() {
            return Ok(true);
        }
        let mg = g.to_multigraph();
        let key = canonical_form(&mg);
        if let Some(&known) = self.memo.get(&key) {
            return Ok(known);
        }
        let answer = self.solve_reduced(&g, &mg)?;
        self.memo.insert(key, answer);
        Ok(answer)
    }

    fn solve_reduced(&mut self, g: &Simple, mg: &Multigraph) -> Result<bool> {
        if is_planar(mg).is_some() {
            return Ok(false);
        }
        let n = g.n();
        // A K5 minor lives inside one block.
        let blocks = biconnected_blocks(mg);
        if blocks.len() > 1 {
            for block in blocks {
                let mut vs: Vec<usize> = block
                    .iter()
                    .flat_map(|&e| {
                        let (a, b) = mg.endpoints(e);
                        [a, b]
                    })
                    .collect();
                vs.sort_unstable();
                vs.dedup();
                if vs.len() >= 5 && self.solve(g.induced(&vs))? {
                    return Ok(true);
                }
            }
            return Ok(false);
        }
        // 2-cuts: each side plus a virtual edge is a minor of g.
        for a in 0..n {
            for b in a + 1..n {
                let comps = g.components_without(&[a, b]);
                if comps.len() < 2 {
                    continue;
                }
                for comp in comps {
                    let mut vs = comp;
                    vs.extend([a, b]);
                    vs.sort_unstable();
                    let mut piece = g.induced(&vs);
                    let ia = vs.binary_search(&a).unwrap();
                    let ib = vs.binary_search(&b).unwrap();
                    piece.add(ia, ib);
                    if self.solve(piece)? {
                        return Ok(true);
                    }
                }
                return Ok(false);
            }
        }
        if self.is_four_connected(g) {
            return Ok(true);
        }
        // Every minor is a subgraph of a contraction, so it suffices to try
        // each single contraction.
        for v in 0..n {
            for &w in &g.adj[v] {
                if v < w && self.solve(g.contract(v, w))? {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }

    fn is_four_connected(&self, g: &Simple) -> bool {
        let n = g.n();
        if n < 5 {
            return false;
        }
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    if !g.connected_without(&[a, b, c]) {
                        return false;
                    }
                }
            }
        }
        true
    }
}
