//! Exhaustive corpus of small maps: every map whose graph is simple and
//! connected, up to orientation-preserving isomorphism, with a bounded
//! number of darts.

use std::collections::{BTreeMap, HashMap};

use petgraph::algo::is_isomorphic;
use petgraph::graph::UnGraph;
use rayon::prelude::*;

use crate::canon::canonical_code;
use crate::map::{Dart, Map, VertexId};

/// A simple graph on `n` vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmallGraph {
    pub n: usize,
    pub edges: Vec<(VertexId, VertexId)>,
}

impl SmallGraph {
    fn has_edge(&self, a: VertexId, b: VertexId) -> bool {
        self.edges
            .iter()
            .any(|&(x, y)| (x, y) == (a, b) || (x, y) == (b, a))
    }

    fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for &(a, b) in &self.edges {
            deg[a] += 1;
            deg[b] += 1;
        }
        deg
    }

    fn invariant(&self) -> (usize, Vec<usize>, Vec<(usize, usize)>) {
        let deg = self.degrees();
        let mut ds = deg.clone();
        ds.sort_unstable();
        let mut es: Vec<(usize, usize)> = self
            .edges
            .iter()
            .map(|&(a, b)| (deg[a].min(deg[b]), deg[a].max(deg[b])))
            .collect();
        es.sort_unstable();
        (self.n, ds, es)
    }

    fn petgraph(&self) -> UnGraph<(), ()> {
        let mut g = UnGraph::with_capacity(self.n, self.edges.len());
        let nodes: Vec<_> = (0..self.n).map(|_| g.add_node(())).collect();
        for &(a, b) in &self.edges {
            g.add_edge(nodes[a], nodes[b], ());
        }
        g
    }
}

/// Connected simple graphs with `1..=max_edges` edges, one per isomorphism
/// class, grouped by edge count.
pub fn connected_graphs(max_edges: usize) -> Vec<Vec<SmallGraph>> {
    let mut levels = vec![vec![SmallGraph {
        n: 2,
        edges: vec![(0, 1)],
    }]];
    while levels.len() < max_edges {
        let mut buckets: HashMap<_, Vec<(SmallGraph, UnGraph<(), ()>)>> = HashMap::new();
        let mut order = Vec::new();
        for g in levels.last().unwrap() {
            let mut children = Vec::new();
            for v in 0..g.n {
                let mut h = g.clone();
                h.edges.push((v, g.n));
                h.n += 1;
                children.push(h);
            }
            for a in 0..g.n {
                for b in a + 1..g.n {
                    if !g.has_edge(a, b) {
                        let mut h = g.clone();
                        h.edges.push((a, b));
                        children.push(h);
                    }
                }
            }
            for h in children {
                let key = h.invariant();
                let pg = h.petgraph();
                let bucket = buckets.entry(key).or_default();
                if bucket.iter().any(|(_, other)| is_isomorphic(other, &pg)) {
                    continue;
                }
                order.push(h.clone());
                bucket.push((h, pg));
            }
        }
        levels.push(order);
    }
    levels.truncate(max_edges);
    levels
}

/// Every map on `g`, one per rotation system, including isomorphic copies.
pub fn for_each_rotation_system(g: &SmallGraph, f: &mut dyn FnMut(Map)) {
    let mut at: Vec<Vec<Dart>> = vec![Vec::new(); g.n];
    for (e, &(a, b)) in g.edges.iter().enumerate() {
        at[a].push(2 * e);
        at[b].push(2 * e + 1);
    }
    let mut rot = at.clone();
    rotations_from(&at, &mut rot, 0, 1, f);
}

fn rotations_from(
    at: &[Vec<Dart>],
    rot: &mut Vec<Vec<Dart>>,
    v: usize,
    k: usize,
    f: &mut dyn FnMut(Map),
) {
    if v == at.len() {
        if let Ok(m) = Map::from_rotations(rot) {
            f(m);
        }
        return;
    }
    if k >= at[v].len() {
        return rotations_from(at, rot, v + 1, 1, f);
    }
    for i in k..at[v].len() {
        rot[v].swap(k, i);
        rotations_from(at, rot, v, k + 1, f);
        rot[v].swap(k, i);
    }
}

/// All maps with at most `max_darts` darts, sorted by canonical code.
pub fn map_corpus(max_darts: usize) -> Vec<Map> {
    let graphs: Vec<SmallGraph> = connected_graphs(max_darts / 2)
        .into_iter()
        .flatten()
        .collect();
    let per_graph: Vec<BTreeMap<_, Map>> = graphs
        .par_iter()
        .map(|g| {
            let mut seen = BTreeMap::new();
            for_each_rotation_system(g, &mut |m| {
                seen.entry(canonical_code(&m)).or_insert(m);
            });
            seen
        })
        .collect();
    let mut all = BTreeMap::new();
    for seen in per_graph {
        all.extend(seen);
    }
    all.into_values().collect()
}
