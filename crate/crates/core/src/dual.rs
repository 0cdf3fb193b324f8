//! Duals, dual-separating edge sets and their walk decomposition, and the
//! passage from small vertex cuts of a dual to edge cuts.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use thiserror::Error;

use crate::connectivity::Graph;
use crate::map::{edge_of, reverse, Dart, EdgeId, FaceId, Map, VertexId};
use crate::rot::emit_with_comments;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DualError {
    #[error("edge {0} is not an edge of the map")]
    UnknownEdge(EdgeId),
    #[error("vertex {0} is not a vertex of the map")]
    UnknownVertex(VertexId),
    #[error("cut must have one or two vertices, got {0}")]
    CutSize(usize),
    #[error("{0:?} is not a cut-set")]
    NotACut(Vec<VertexId>),
}

/// Loops and multi-edges of a dual. Both lists empty means simple.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DualSimplicity {
    /// Primal edges with the same face on both sides.
    pub loops: Vec<EdgeId>,
    /// Face pairs sharing two or more edges.
    pub multi: Vec<(FaceId, FaceId)>,
}

impl DualSimplicity {
    pub fn is_simple(&self) -> bool {
        self.loops.is_empty() && self.multi.is_empty()
    }
}

impl std::fmt::Display for DualSimplicity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_simple() {
            return write!(f, "simple");
        }
        let mut parts = Vec::new();
        if !self.loops.is_empty() {
            parts.push(format!("loop(edges {:?})", self.loops));
        }
        if !self.multi.is_empty() {
            let pairs: Vec<String> = self
                .multi
                .iter()
                .map(|(a, b)| format!("f{a}-f{b}"))
                .collect();
            parts.push(format!("multi({})", pairs.join(",")));
        }
        write!(f, "{}", parts.join(" "))
    }
}

/// The dual map. Dual vertex `i` is face `i` of the primal map, and dual
/// edge `e` crosses primal edge `e`: the dart ids are shared.
#[derive(Debug, Clone)]
pub struct DualReport {
    pub dual: Map,
    pub simplicity: DualSimplicity,
}

/// Number of edges shared by each unordered pair of distinct faces.
pub fn face_adjacency(map: &Map) -> BTreeMap<(FaceId, FaceId), usize> {
    let mut m = BTreeMap::new();
    for e in 0..map.num_edges() {
        let a = map.face_of(2 * e);
        let b = map.face_of(2 * e + 1);
        if a != b {
            *m.entry((a.min(b), a.max(b))).or_insert(0) += 1;
        }
    }
    m
}

pub fn dual_simplicity(map: &Map) -> DualSimplicity {
    let loops = (0..map.num_edges())
        .filter(|&e| map.face_of(2 * e) == map.face_of(2 * e + 1))
        .collect();
    let multi = face_adjacency(map)
        .into_iter()
        .filter(|&(_, c)| c >= 2)
        .map(|(p, _)| p)
        .collect();
    DualSimplicity { loops, multi }
}

pub fn dual(map: &Map) -> DualReport {
    let vertex: Vec<VertexId> = (0..map.num_darts()).map(|d| map.face_of(d)).collect();
    let next: Vec<Dart> = (0..map.num_darts())
        .map(|d| map.face_successor(d))
        .collect();
    let dual =
        Map::from_darts(map.num_faces(), vertex, next).expect("dual of a valid map is valid");
    DualReport {
        dual,
        simplicity: dual_simplicity(map),
    }
}

/// Dual in `.rot` form with a comment legend naming the primal face behind
/// every dual vertex.
pub fn emit_dual(map: &Map) -> String {
    let d = dual(map);
    let legend: Vec<String> = (0..map.num_faces())
        .map(|f| {
            let vs: Vec<String> = map.face_vertices(f).iter().map(|v| v.to_string()).collect();
            format!(
                "f{f}: size {} vertices {}",
                map.face(f).size(),
                vs.join(" ")
            )
        })
        .collect();
    emit_with_comments(&d.dual, &legend)
}

/// A dual-separating edge set with its decomposition into cyclic walks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutDecomposition {
    pub edges: BTreeSet<EdgeId>,
    /// Faces on the chosen side, sorted.
    pub side: Vec<FaceId>,
    /// Cyclic walks of darts of `edges` that have a face of `side` on their
    /// left, each starting at its smallest dart.
    pub walks: Vec<Vec<Dart>>,
    /// Vertices incident with `edges`.
    pub vertices: Vec<VertexId>,
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let nx = parent[y];
        parent[y] = r;
        y = nx;
    }
    r
}

/// Successor of `d` in the rotation restricted to darts of `edges`.
fn next_in_subgraph(map: &Map, edges: &BTreeSet<EdgeId>, d: Dart) -> Dart {
    let mut x = map.next(d);
    while !edges.contains(&edge_of(x)) {
        x = map.next(x);
    }
    x
}

/// Decides whether the duals of `edges` form an edge cut of the dual. When
/// they do, the side containing `anchor` (default: face 0) is `X_f`.
pub fn is_dual_separating(
    map: &Map,
    edges: &[EdgeId],
    anchor: Option<FaceId>,
) -> Result<Option<CutDecomposition>, DualError> {
    for &e in edges {
        if e >= map.num_edges() {
            return Err(DualError::UnknownEdge(e));
        }
    }
    let k: BTreeSet<EdgeId> = edges.iter().copied().collect();
    if k.is_empty() {
        return Ok(None);
    }
    let nf = map.num_faces();
    let mut parent: Vec<usize> = (0..nf).collect();
    for e in 0..map.num_edges() {
        if !k.contains(&e) {
            let a = find(&mut parent, map.face_of(2 * e));
            let b = find(&mut parent, map.face_of(2 * e + 1));
            parent[a] = b;
        }
    }
    let roots: Vec<usize> = (0..nf).map(|f| find(&mut parent, f)).collect();
    // Two-colour the quotient graph whose edges are the dual edges of K.
    let mut qadj: HashMap<usize, Vec<usize>> = HashMap::new();
    for &e in &k {
        let a = roots[map.face_of(2 * e)];
        let b = roots[map.face_of(2 * e + 1)];
        if a == b {
            return Ok(None);
        }
        qadj.entry(a).or_default().push(b);
        qadj.entry(b).or_default().push(a);
    }
    let anchor = anchor.unwrap_or(0);
    let mut colour: HashMap<usize, bool> = HashMap::new();
    let start = roots[anchor];
    colour.insert(start, true);
    let mut stack = vec![start];
    while let Some(x) = stack.pop() {
        let cx = colour[&x];
        for &y in qadj.get(&x).map(Vec::as_slice).unwrap_or(&[]) {
            match colour.get(&y) {
                Some(&cy) if cy == cx => return Ok(None),
                Some(_) => {}
                None => {
                    colour.insert(y, !cx);
                    stack.push(y);
                }
            }
        }
    }
    let side: Vec<FaceId> = (0..nf)
        .filter(|&f| colour.get(&roots[f]).copied().unwrap_or(false))
        .collect();
    let in_side: Vec<bool> = {
        let mut v = vec![false; nf];
        for &f in &side {
            v[f] = true;
        }
        v
    };

    let chosen: BTreeSet<Dart> = k
        .iter()
        .flat_map(|&e| [2 * e, 2 * e + 1])
        .filter(|&d| in_side[map.face_of(d)])
        .collect();
    let mut walks = Vec::new();
    let mut done = BTreeSet::new();
    for &s in &chosen {
        if done.contains(&s) {
            continue;
        }
        let mut walk = Vec::new();
        let mut x = s;
        while done.insert(x) {
            walk.push(x);
            x = next_in_subgraph(map, &k, reverse(x));
        }
        walks.push(walk);
    }
    let vertices: BTreeSet<VertexId> = k
        .iter()
        .flat_map(|&e| {
            let (a, b) = map.edge_endpoints(e);
            [a, b]
        })
        .collect();
    Ok(Some(CutDecomposition {
        edges: k,
        side,
        walks,
        vertices: vertices.into_iter().collect(),
    }))
}

impl CutDecomposition {
    /// Checks properties (i)-(iv) of the decomposition literally. Returns the
    /// list of failures; empty means all hold.
    pub fn check(&self, map: &Map) -> Vec<String> {
        let mut failures = Vec::new();
        let nf = map.num_faces();
        let mut in_side = vec![false; nf];
        for &f in &self.side {
            in_side[f] = true;
        }
        // (i)
        for &e in &self.edges {
            let a = in_side[map.face_of(2 * e)];
            let b = in_side[map.face_of(2 * e + 1)];
            if a == b {
                failures.push(format!("(i) edge {e} does not cross the cut"));
            }
        }
        // (iii) walks partition the chosen darts and are facial walks of the
        // subgraph formed by the edges.
        let chosen: BTreeSet<Dart> = self
            .edges
            .iter()
            .flat_map(|&e| [2 * e, 2 * e + 1])
            .filter(|&d| in_side[map.face_of(d)])
            .collect();
        let mut covered = BTreeSet::new();
        for w in &self.walks {
            for (i, &d) in w.iter().enumerate() {
                if !covered.insert(d) {
                    failures.push(format!("(iii) dart {d} repeated"));
                }
                let succ = next_in_subgraph(map, &self.edges, reverse(d));
                if succ != w[(i + 1) % w.len()] {
                    failures.push(format!("(iii) walk is not facial at dart {d}"));
                }
            }
        }
        if covered != chosen {
            failures.push("(iii) walks do not cover the chosen darts".into());
        }
        // (iii) the edges of side faces touching V(K) are K plus the edges
        // inside the angles of the walks.
        let vk: BTreeSet<VertexId> = self.vertices.iter().copied().collect();
        let lhs: BTreeSet<EdgeId> = (0..map.num_edges())
            .filter(|&e| {
                let (a, b) = map.edge_endpoints(e);
                (in_side[map.face_of(2 * e)] || in_side[map.face_of(2 * e + 1)])
                    && (vk.contains(&a) || vk.contains(&b))
            })
            .collect();
        let mut rhs: BTreeSet<EdgeId> = self.edges.clone();
        for w in &self.walks {
            for (i, &incoming) in w.iter().enumerate() {
                let outgoing = w[(i + 1) % w.len()];
                let mut x = map.next(reverse(incoming));
                while x != outgoing {
                    rhs.insert(edge_of(x));
                    x = map.next(x);
                }
            }
        }
        if lhs != rhs {
            failures.push(format!("(iii) left edges mismatch: {lhs:?} vs {rhs:?}"));
        }
        // (iv)
        if self.vertices.len() > self.edges.len() {
            failures.push(format!(
                "(iv) |V(K)| = {} > |K| = {}",
                self.vertices.len(),
                self.edges.len()
            ));
        }
        // (ii) vertices off V(K) on opposite sides are not joined by a path
        // avoiding V(K).
        let nv = map.num_vertices();
        let mut touches = vec![(false, false); nv];
        for d in 0..map.num_darts() {
            let v = map.vertex_of(d);
            if in_side[map.face_of(d)] {
                touches[v].0 = true;
            } else {
                touches[v].1 = true;
            }
        }
        let g = Graph::from_map(map);
        let mut removed = vec![false; nv];
        for &v in &vk {
            removed[v] = true;
        }
        for comp in g.components_without(&removed) {
            let a = comp.iter().any(|&v| touches[v].0);
            let b = comp.iter().any(|&v| touches[v].1);
            if a && b {
                failures.push(format!("(ii) component {comp:?} reaches both sides"));
            }
        }
        failures
    }

    /// `V(K)` separates vertices of the two sides, i.e. it is a cut-set with
    /// non-K vertices on both sides.
    pub fn separates_vertices(&self, map: &Map) -> bool {
        let in_side: BTreeSet<FaceId> = self.side.iter().copied().collect();
        let vk: BTreeSet<VertexId> = self.vertices.iter().copied().collect();
        let mut a = false;
        let mut b = false;
        for d in 0..map.num_darts() {
            let v = map.vertex_of(d);
            if vk.contains(&v) {
                continue;
            }
            if in_side.contains(&map.face_of(d)) {
                a = true;
            } else {
                b = true;
            }
        }
        a && b
    }
}

/// An edge cut derived from a one- or two-vertex cut of a graph embedded as
/// a map (typically a dual).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeCut {
    /// The side `X`, sorted; it contains the vertex cut.
    pub side: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
    /// `floor(sum of cut-vertex degrees / 2)`.
    pub bound: usize,
}

pub fn cut_to_edge_cut(map: &Map, cut: &[VertexId]) -> Result<EdgeCut, DualError> {
    let cset: BTreeSet<VertexId> = cut.iter().copied().collect();
    if cset.is_empty() || cset.len() > 2 {
        return Err(DualError::CutSize(cset.len()));
    }
    let nv = map.num_vertices();
    if let Some(&v) = cset.iter().find(|&&v| v >= nv) {
        return Err(DualError::UnknownVertex(v));
    }
    let g = Graph::from_map(map);
    let mut removed = vec![false; nv];
    for &v in &cset {
        removed[v] = true;
    }
    let comps = g.components_without(&removed);
    if comps.len() < 2 {
        return Err(DualError::NotACut(cset.into_iter().collect()));
    }
    let cut_edges = |side: &[bool]| -> Vec<EdgeId> {
        (0..map.num_edges())
            .filter(|&e| {
                let (a, b) = map.edge_endpoints(e);
                side[a] != side[b]
            })
            .collect()
    };
    let mut best: Option<EdgeCut> = None;
    for comp in &comps {
        let mut with_comp = vec![false; nv];
        for &v in comp.iter().chain(cset.iter()) {
            with_comp[v] = true;
        }
        let mut without_comp = vec![true; nv];
        for &v in comp {
            without_comp[v] = false;
        }
        for side in [with_comp, without_comp] {
            let edges = cut_edges(&side);
            let members: Vec<VertexId> = (0..nv).filter(|&v| side[v]).collect();
            let better = match &best {
                None => true,
                Some(b) => {
                    (edges.len(), members.len(), &members) < (b.edges.len(), b.side.len(), &b.side)
                }
            };
            if better {
                best = Some(EdgeCut {
                    side: members,
                    edges,
                    bound: 0,
                });
            }
        }
    }
    let degree_sum: usize = cset.iter().map(|&v| map.degree(v)).sum();
    let mut out = best.expect("at least two components");
    out.bound = degree_sum / 2;
    Ok(out)
}

/// Some vertex of one face occurs at two or more positions of the other
/// face's walk.
pub fn doubly_intersecting(map: &Map, f: FaceId, g: FaceId) -> bool {
    let one_way = |a: FaceId, b: FaceId| {
        let vb: BTreeSet<VertexId> = map.face_vertices(b).into_iter().collect();
        map.face_vertices(a)
            .iter()
            .filter(|v| vb.contains(v))
            .count()
            >= 2
    };
    one_way(f, g) || one_way(g, f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::canonical_code;
    use crate::rot::parse_map;

    const TETRA: &str = "vertices: 4\n0: 1 2 3\n1: 0 3 2\n2: 0 1 3\n3: 0 2 1\n";

    #[test]
    fn tetrahedron_is_self_dual_and_simple() {
        let t = parse_map(TETRA).unwrap();
        let d = dual(&t);
        assert!(d.simplicity.is_simple());
        assert_eq!(canonical_code(&d.dual), canonical_code(&t));
    }

    #[test]
    fn double_dual_is_identity() {
        let t = parse_map(TETRA).unwrap();
        let dd = dual(&dual(&t).dual).dual;
        assert_eq!(canonical_code(&dd), canonical_code(&t));
    }

    #[test]
    fn face_cut_of_tetrahedron() {
        let t = parse_map(TETRA).unwrap();
        let f = t.face(0);
        let edges: Vec<EdgeId> = f.darts.iter().map(|&d| edge_of(d)).collect();
        let dec = is_dual_separating(&t, &edges, Some(0)).unwrap().unwrap();
        assert_eq!(dec.walks.len(), 1);
        assert_eq!(dec.walks[0].len(), 3);
        assert_eq!(dec.vertices.len(), 3);
        assert!(dec.check(&t).is_empty(), "{:?}", dec.check(&t));
    }

    #[test]
    fn single_edge_is_not_dual_separating() {
        let t = parse_map(TETRA).unwrap();
        assert!(is_dual_separating(&t, &[0], None).unwrap().is_none());
        assert_eq!(
            is_dual_separating(&t, &[17], None),
            Err(DualError::UnknownEdge(17))
        );
    }

    #[test]
    fn digon_dual_has_loop_free_multi_edges() {
        // Triangle: both faces share all three edges.
        let tri = parse_map("vertices: 3\n0: 1 2\n1: 2 0\n2: 0 1\n").unwrap();
        let s = dual_simplicity(&tri);
        assert!(s.loops.is_empty());
        assert_eq!(s.multi, vec![(0, 1)]);
        // A single edge: one face on both sides.
        let k2 = parse_map("vertices: 2\n0: 1\n1: 0\n").unwrap();
        assert_eq!(dual_simplicity(&k2).loops, vec![0]);
    }

    #[test]
    fn path_dual_cut_vertex() {
        // Path 0-1-2 as a plane map; its middle vertex is a cut vertex.
        let p = parse_map("vertices: 3\n0: 1\n1: 0 2\n2: 1\n").unwrap();
        let cut = cut_to_edge_cut(&p, &[1]).unwrap();
        assert_eq!(cut.bound, 1);
        assert!(cut.edges.len() <= cut.bound);
        assert!(cut.side.contains(&1));
        assert_eq!(cut_to_edge_cut(&p, &[0]), Err(DualError::NotACut(vec![0])));
    }

    #[test]
    fn triangles_sharing_an_edge_doubly_intersect() {
        let t = parse_map(TETRA).unwrap();
        assert!(doubly_intersecting(&t, 0, 1));
    }
}
