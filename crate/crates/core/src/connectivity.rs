//! Vertex connectivity and small vertex cut-sets.

use std::collections::{BTreeSet, VecDeque};

use thiserror::Error;

use crate::map::{Map, VertexId};

pub const DEFAULT_CUT_CAP: usize = 10_000;

/// Vertex count up to which connectivity is decided by subset deletion.
pub const BRUTE_FORCE_LIMIT: usize = 10;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConnectivityError {
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph needs at least two vertices")]
    TooSmall,
    #[error("vertex sequence is not a cycle of the map: {0}")]
    NotACycle(String),
}

/// Simple undirected graph; parallel edges and loops of a map collapse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<VertexId>>,
}

impl Graph {
    pub fn new(n: usize, edges: &[(VertexId, VertexId)]) -> Graph {
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in edges {
            if a != b {
                adj[a].push(b);
                adj[b].push(a);
            }
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Graph { adj }
    }

    pub fn from_map(map: &Map) -> Graph {
        Graph::new(map.num_vertices(), &map.edge_list())
    }

    pub fn num_vertices(&self) -> usize {
        self.adj.len()
    }

    pub fn num_edges(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adj[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, a: VertexId, b: VertexId) -> bool {
        self.adj[a].binary_search(&b).is_ok()
    }

    pub fn is_complete(&self) -> bool {
        let n = self.num_vertices();
        self.adj.iter().all(|l| l.len() + 1 == n)
    }

    /// Components of the graph with `removed` deleted, as sorted vertex lists.
    pub fn components_without(&self, removed: &[bool]) -> Vec<Vec<VertexId>> {
        let n = self.num_vertices();
        let mut seen = removed.to_vec();
        let mut comps = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut i = 0;
            while i < comp.len() {
                let v = comp[i];
                i += 1;
                for &u in &self.adj[v] {
                    if !seen[u] {
                        seen[u] = true;
                        comp.push(u);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.components_without(&vec![false; self.num_vertices()])
            .len()
            <= 1
    }

    /// True when deleting `set` leaves a disconnected (non-empty) graph.
    pub fn is_cut_set(&self, set: &[VertexId]) -> bool {
        let mut removed = vec![false; self.num_vertices()];
        for &v in set {
            removed[v] = true;
        }
        self.components_without(&removed).len() >= 2
    }
}

fn check_input(g: &Graph) -> Result<(), ConnectivityError> {
    if g.num_vertices() < 2 {
        return Err(ConnectivityError::TooSmall);
    }
    if !g.is_connected() {
        return Err(ConnectivityError::Disconnected);
    }
    Ok(())
}

/// Vertex connectivity; complete graphs `K_n` give `n - 1`.
pub fn vertex_connectivity(g: &Graph) -> Result<usize, ConnectivityError> {
    if g.num_vertices() <= BRUTE_FORCE_LIMIT {
        vertex_connectivity_brute_force(g)
    } else {
        vertex_connectivity_flow(g)
    }
}

pub fn map_connectivity(map: &Map) -> Result<usize, ConnectivityError> {
    vertex_connectivity(&Graph::from_map(map))
}

/// Smallest subset whose deletion disconnects the graph, by enumeration.
pub fn vertex_connectivity_brute_force(g: &Graph) -> Result<usize, ConnectivityError> {
    check_input(g)?;
    let n = g.num_vertices();
    if g.is_complete() {
        return Ok(n - 1);
    }
    for k in 1..n - 1 {
        let mut found = false;
        for_each_subset(n, k, &mut |set| {
            if g.is_cut_set(set) {
                found = true;
                return false;
            }
            true
        });
        if found {
            return Ok(k);
        }
    }
    Ok(n - 1)
}

/// Calls `f` on every k-subset of `0..n` in lexicographic order until it
/// returns false.
pub fn for_each_subset(n: usize, k: usize, f: &mut dyn FnMut(&[usize]) -> bool) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if !f(&idx) {
            return;
        }
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] < n - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Maximum number of internally vertex-disjoint s-t paths, stopping once
/// `limit` paths are found. Unit capacities on the split-vertex network.
pub fn local_connectivity(g: &Graph, s: VertexId, t: VertexId, limit: usize) -> usize {
    let n = g.num_vertices();
    // Node v_in = 2v, v_out = 2v + 1.
    let mut heads: Vec<usize> = Vec::new();
    let mut cap: Vec<i32> = Vec::new();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); 2 * n];
    let mut add = |a: usize, b: usize, c: i32, adj: &mut Vec<Vec<usize>>| {
        adj[a].push(heads.len());
        heads.push(b);
        cap.push(c);
        adj[b].push(heads.len());
        heads.push(a);
        cap.push(0);
    };
    let big = n as i32;
    for v in 0..n {
        let c = if v == s || v == t { big } else { 1 };
        add(2 * v, 2 * v + 1, c, &mut adj);
    }
    for v in 0..n {
        for &u in g.neighbors(v) {
            add(2 * v + 1, 2 * u, 1, &mut adj);
        }
    }
    let source = 2 * s + 1;
    let sink = 2 * t;
    let mut flow = 0;
    while flow < limit {
        let mut parent = vec![usize::MAX; 2 * n];
        let mut queue = VecDeque::new();
        queue.push_back(source);
        parent[source] = usize::MAX - 1;
        while let Some(x) = queue.pop_front() {
            if x == sink {
                break;
            }
            for &eid in &adj[x] {
                let y = heads[eid];
                if cap[eid] > 0 && parent[y] == usize::MAX {
                    parent[y] = eid;
                    queue.push_back(y);
                }
            }
        }
        if parent[sink] == usize::MAX {
            break;
        }
        let mut y = sink;
        while y != source {
            let eid = parent[y];
            cap[eid] -= 1;
            cap[eid ^ 1] += 1;
            y = heads[eid ^ 1];
        }
        flow += 1;
    }
    flow
}

/// Connectivity as the minimum local connectivity over non-adjacent pairs.
pub fn vertex_connectivity_flow(g: &Graph) -> Result<usize, ConnectivityError> {
    check_input(g)?;
    let n = g.num_vertices();
    if g.is_complete() {
        return Ok(n - 1);
    }
    let mut best = (0..n).map(|v| g.degree(v)).min().unwrap_or(0);
    for s in 0..n {
        for t in s + 1..n {
            if g.has_edge(s, t) {
                continue;
            }
            let k = local_connectivity(g, s, t, best);
            best = best.min(k);
        }
    }
    Ok(best)
}

/// Inclusion-minimal cut-sets of size at most `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutList {
    pub sets: Vec<Vec<VertexId>>,
    pub cap: usize,
    /// Enumeration stopped at `cap` sets.
    pub truncated: bool,
}

pub fn find_cutsets(g: &Graph, k: usize) -> CutList {
    find_cutsets_capped(g, k, DEFAULT_CUT_CAP)
}

pub fn find_cutsets_capped(g: &Graph, k: usize, cap: usize) -> CutList {
    let n = g.num_vertices();
    let mut sets: Vec<Vec<VertexId>> = Vec::new();
    let mut truncated = false;
    'sizes: for size in 1..=k.min(n.saturating_sub(2)) {
        let mut stop = false;
        for_each_subset(n, size, &mut |set| {
            let contains_smaller = sets
                .iter()
                .any(|s| s.iter().all(|v| set.binary_search(v).is_ok()));
            if !contains_smaller && g.is_cut_set(set) {
                if sets.len() == cap {
                    stop = true;
                    return false;
                }
                sets.push(set.to_vec());
            }
            true
        });
        if stop {
            truncated = true;
            break 'sizes;
        }
    }
    CutList {
        sets,
        cap,
        truncated,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutInventory {
    pub connectivity: usize,
    pub min_cuts: Vec<Vec<VertexId>>,
    pub cap: usize,
    pub truncated: bool,
}

pub fn cut_inventory(g: &Graph) -> Result<CutInventory, ConnectivityError> {
    let kappa = vertex_connectivity(g)?;
    let list = find_cutsets(g, kappa);
    Ok(CutInventory {
        connectivity: kappa,
        min_cuts: list.sets.into_iter().filter(|s| s.len() == kappa).collect(),
        cap: list.cap,
        truncated: list.truncated,
    })
}

/// True iff the vertices of the cycle `cycle` form a cut-set of the map's
/// graph. `cycle` lists distinct vertices with consecutive ones adjacent.
pub fn is_separating_cycle(map: &Map, cycle: &[VertexId]) -> Result<bool, ConnectivityError> {
    let g = Graph::from_map(map);
    let set: BTreeSet<VertexId> = cycle.iter().copied().collect();
    if cycle.len() < 3 || set.len() != cycle.len() {
        return Err(ConnectivityError::NotACycle(format!("{cycle:?}")));
    }
    for i in 0..cycle.len() {
        let (a, b) = (cycle[i], cycle[(i + 1) % cycle.len()]);
        if a >= g.num_vertices() || b >= g.num_vertices() || !g.has_edge(a, b) {
            return Err(ConnectivityError::NotACycle(format!(
                "{a}-{b} is not an edge"
            )));
        }
    }
    let v: Vec<VertexId> = set.into_iter().collect();
    Ok(g.is_cut_set(&v))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> Graph {
        let mut e = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                e.push((a, b));
            }
        }
        Graph::new(n, &e)
    }

    fn cycle(n: usize) -> Graph {
        Graph::new(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>())
    }

    #[test]
    fn small_graphs() {
        assert_eq!(vertex_connectivity(&complete(4)).unwrap(), 3);
        assert_eq!(vertex_connectivity(&cycle(5)).unwrap(), 2);
        assert_eq!(vertex_connectivity_flow(&cycle(5)).unwrap(), 2);
        assert_eq!(vertex_connectivity_flow(&complete(6)).unwrap(), 5);
    }

    #[test]
    fn disconnected_rejected() {
        let g = Graph::new(4, &[(0, 1), (2, 3)]);
        assert_eq!(
            vertex_connectivity(&g),
            Err(ConnectivityError::Disconnected)
        );
    }

    #[test]
    fn complete_graph_has_no_cuts() {
        assert!(find_cutsets(&complete(4), 2).sets.is_empty());
    }

    #[test]
    fn cutsets_are_minimal() {
        // Path 0-1-2-3: cut vertices 1 and 2; {1,2} is not minimal.
        let g = Graph::new(4, &[(0, 1), (1, 2), (2, 3)]);
        assert_eq!(find_cutsets(&g, 2).sets, vec![vec![1], vec![2]]);
    }

    #[test]
    fn cap_is_reported() {
        let g = cycle(8);
        let list = find_cutsets_capped(&g, 2, 3);
        assert_eq!(list.sets.len(), 3);
        assert!(list.truncated);
    }
}
