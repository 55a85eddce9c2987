//! Brute-force oracles and corpora shared by the integration tests. None of
//! these use the library's own planarity, minor or decomposition searches.
#![allow(dead_code)]

use std::ops::ControlFlow;

use ppm_core::cycles::{for_each_cycle, Cycle};
use ppm_core::families::{blanusa_snark, flower_snark, goldberg_snark, petersen, FamilyInstance};
use ppm_core::generate::connected_cubic_graphs;
use ppm_core::Multigraph;

fn adjacency(g: &Multigraph) -> Vec<u32> {
    assert!(g.vertex_count() <= 32);
    let mut adj = vec![0u32; g.vertex_count()];
    for &(a, b) in g.edges() {
        if a != b {
            adj[a] |= 1 << b;
            adj[b] |= 1 << a;
        }
    }
    adj
}

fn subsets(n: usize, k: usize, from: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if cur.len() == k {
        out.push(cur.clone());
        return;
    }
    for v in from..n {
        cur.push(v);
        subsets(n, k, v + 1, cur, out);
        cur.pop();
    }
}

/// Routes each pair in `pairs` by a path whose inner vertices are unused
/// and outside `blocked`; paths are internally disjoint.
fn route(adj: &[u32], pairs: &[(usize, usize)], blocked: u32, used: u32) -> bool {
    let Some((&(a, b), rest)) = pairs.split_first() else {
        return true;
    };
    fn walk(adj: &[u32], at: usize, b: usize, free: u32, inner: u32, k: &mut dyn FnMut(u32) -> bool) -> bool {
        if adj[at] >> b & 1 == 1 && k(inner) {
            return true;
        }
        let mut next = adj[at] & free & !inner;
        while next != 0 {
            let w = next.trailing_zeros() as usize;
            next &= next - 1;
            if walk(adj, w, b, free, inner | 1 << w, k) {
                return true;
            }
        }
        false
    }
    let free = !(blocked | used);
    walk(adj, a, b, free, 0, &mut |inner| route(adj, rest, blocked, used | inner))
}

/// Nonplanar iff some subdivision of K5 or K3,3 is a subgraph.
pub fn kuratowski_nonplanar(g: &Multigraph) -> bool {
    let n = g.vertex_count();
    let adj = adjacency(g);
    let deg = |v: usize| adj[v].count_ones() as usize;
    let mut fives = Vec::new();
    subsets(n, 5, 0, &mut Vec::new(), &mut fives);
    for s in &fives {
        if s.iter().any(|&v| deg(v) < 4) {
            continue;
        }
        let mut pairs = Vec::new();
        for i in 0..5 {
            for j in i + 1..5 {
                pairs.push((s[i], s[j]));
            }
        }
        let blocked = s.iter().fold(0u32, |m, &v| m | 1 << v);
        if route(&adj, &pairs, blocked, 0) {
            return true;
        }
    }
    let mut sixes = Vec::new();
    subsets(n, 6, 0, &mut Vec::new(), &mut sixes);
    for s in &sixes {
        if s.iter().any(|&v| deg(v) < 3) {
            continue;
        }
        let blocked = s.iter().fold(0u32, |m, &v| m | 1 << v);
        // Sides containing s[0]: choose its two partners.
        for p in 1..6 {
            for q in p + 1..6 {
                let left = [s[0], s[p], s[q]];
                let right: Vec<usize> = (1..6).filter(|&i| i != p && i != q).map(|i| s[i]).collect();
                let pairs: Vec<(usize, usize)> =
                    left.iter().flat_map(|&a| right.iter().map(move |&b| (a, b))).collect();
                if route(&adj, &pairs, blocked, 0) {
                    return true;
                }
            }
        }
    }
    false
}

/// K5 minor by trying every assignment of vertices to five branch sets
/// (or to none), sets numbered in order of their least vertex.
pub fn k5_minor_by_partition(g: &Multigraph) -> bool {
    let n = g.vertex_count();
    if n < 5 {
        return false;
    }
    let adj = adjacency(g);
    let mut label = vec![usize::MAX; n];
    fn connected(adj: &[u32], set: u32) -> bool {
        let start = set.trailing_zeros();
        let mut seen = 1u32 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let new = adj[v] & set & !seen;
            seen |= new;
            frontier |= new;
        }
        seen == set
    }
    fn go(adj: &[u32], label: &mut Vec<usize>, v: usize, used: usize) -> bool {
        let n = label.len();
        if n - v < 5 - used {
            return false;
        }
        if v == n {
            let sets: Vec<u32> = (0..5)
                .map(|k| (0..n).filter(|&u| label[u] == k).fold(0u32, |m, u| m | 1 << u))
                .collect();
            if !sets.iter().all(|&s| connected(adj, s)) {
                return false;
            }
            let touch = |s: u32, t: u32| (0..n).any(|u| s >> u & 1 == 1 && adj[u] & t != 0);
            return (0..5).all(|i| (i + 1..5).all(|j| touch(sets[i], sets[j])));
        }
        let options = (0..used.min(5)).chain(if used < 5 { Some(used) } else { None }).chain(Some(usize::MAX));
        for k in options.collect::<Vec<_>>() {
            label[v] = k;
            let next = if k == used { used + 1 } else { used };
            if go(adj, label, v + 1, next) {
                return true;
            }
        }
        label[v] = usize::MAX;
        false
    }
    go(&adj, &mut label, 0, 0)
}

/// Whether some cycle double cover of `g` contains `c`.
pub fn cdc_containing(g: &Multigraph, c: &Cycle) -> bool {
    assert!(g.edge_count() <= 64);
    let mut cycles: Vec<u64> = Vec::new();
    for_each_cycle(g, |d| {
        cycles.push(d.edges().iter().fold(0u64, |m, &e| m | 1 << e));
        ControlFlow::Continue(())
    });
    let mut demand = vec![2u8; g.edge_count()];
    for &e in c.edges() {
        demand[e] -= 1;
    }
    fn cover(cycles: &[u64], demand: &mut Vec<u8>) -> bool {
        let Some(e) = demand.iter().position(|&d| d > 0) else {
            return true;
        };
        for &cy in cycles {
            if cy >> e & 1 == 0 {
                continue;
            }
            let edges = (0..demand.len()).filter(|&f| cy >> f & 1 == 1);
            if edges.clone().any(|f| demand[f] == 0) {
                continue;
            }
            for f in edges.clone() {
                demand[f] -= 1;
            }
            let ok = cover(cycles, demand);
            for f in edges {
                demand[f] += 1;
            }
            if ok {
                return true;
            }
        }
        false
    }
    cover(&cycles, &mut demand)
}

/// Connected simple cubic graphs on 4..=max vertices.
pub fn cubic_corpus(max: usize) -> Vec<Multigraph> {
    (4..=max).step_by(2).flat_map(connected_cubic_graphs).collect()
}

/// Family members with their designated PPMs.
pub fn family_corpus() -> Vec<FamilyInstance> {
    let mut out = vec![petersen()];
    for n in 1..=3 {
        for j in 1..=2 {
            out.push(blanusa_snark(n, j).unwrap());
        }
    }
    for k in [3, 5, 7] {
        out.push(flower_snark(k).unwrap());
    }
    out.push(goldberg_snark(5).unwrap());
    out
}
