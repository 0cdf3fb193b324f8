//! Dart-based rotation systems.
//!
//! Every edge `e` owns the two darts `2e` and `2e + 1`; the edge involution is
//! therefore `d ^ 1`. A map stores the clockwise rotation successor of every
//! dart together with the vertex the dart leaves from. Faces are orbits of the
//! facial successor `d -> next(reverse(d))`, so every face lies on the left of
//! its darts.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

pub type Dart = usize;
pub type VertexId = usize;
pub type EdgeId = usize;
pub type FaceId = usize;

#[inline(always)]
pub fn reverse(d: Dart) -> Dart {
    d ^ 1
}

#[inline(always)]
pub fn edge_of(d: Dart) -> EdgeId {
    d >> 1
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// A vertex lists a neighbour that does not list it back often enough.
    DanglingDart {
        vertex: VertexId,
        neighbor: VertexId,
    },
    NeighborOutOfRange {
        vertex: VertexId,
        neighbor: VertexId,
    },
    OddDartCount(usize),
    NotAPermutation,
    RotationLeavesVertex {
        dart: Dart,
    },
    SplitRotation {
        vertex: VertexId,
        cycles: usize,
    },
    IsolatedVertex(VertexId),
    Disconnected {
        components: usize,
    },
    OddEulerCharacteristic(i64),
    EulerCharacteristicAboveTwo(i64),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DanglingDart { vertex, neighbor } => {
                write!(f, "dangling dart: {vertex} -> {neighbor} has no partner")
            }
            Violation::NeighborOutOfRange { vertex, neighbor } => {
                write!(f, "vertex {vertex} lists unknown neighbor {neighbor}")
            }
            Violation::OddDartCount(n) => write!(f, "odd number of darts ({n})"),
            Violation::NotAPermutation => write!(f, "rotation is not a permutation"),
            Violation::RotationLeavesVertex { dart } => {
                write!(f, "rotation successor of dart {dart} leaves its vertex")
            }
            Violation::SplitRotation { vertex, cycles } => {
                write!(f, "vertex {vertex} has {cycles} rotation cycles")
            }
            Violation::IsolatedVertex(v) => write!(f, "isolated vertex {v}"),
            Violation::Disconnected { components } => {
                write!(f, "map is disconnected ({components} components)")
            }
            Violation::OddEulerCharacteristic(chi) => {
                write!(f, "odd Euler characteristic {chi}")
            }
            Violation::EulerCharacteristicAboveTwo(chi) => {
                write!(f, "Euler characteristic {chi} exceeds 2")
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MapStats {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub euler_characteristic: i64,
    /// `None` when the characteristic is odd or above two.
    pub genus: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub stats: Option<MapStats>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            write!(f, "valid")?;
        } else {
            write!(f, "invalid:")?;
            for v in &self.violations {
                write!(f, " {v};")?;
            }
        }
        if let Some(s) = &self.stats {
            write!(
                f,
                " V={} E={} F={} chi={}",
                s.vertices, s.edges, s.faces, s.euler_characteristic
            )?;
            if let Some(g) = s.genus {
                write!(f, " g={g}")?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MapError {
    #[error("invalid map: {0}")]
    Invalid(ValidationReport),
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("unknown edge {0}")]
    UnknownEdge(EdgeId),
    #[error("unknown face {0}")]
    UnknownFace(FaceId),
}

/// A facial walk, rotated to start at its smallest dart.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Face {
    pub darts: Vec<Dart>,
}

impl Face {
    pub fn size(&self) -> usize {
        self.darts.len()
    }

    /// Consecutive dart pairs of the walk, including the wrap-around pair.
    pub fn angles(&self) -> impl Iterator<Item = Angle> + '_ {
        let n = self.darts.len();
        (0..n).map(move |i| Angle {
            incoming: self.darts[i],
            outgoing: self.darts[(i + 1) % n],
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Angle {
    pub incoming: Dart,
    pub outgoing: Dart,
}

/// A connected rotation system on an orientable surface. Construction
/// validates every invariant, so a `Map` value is always well formed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Map {
    next: Vec<Dart>,
    prev: Vec<Dart>,
    vertex: Vec<VertexId>,
    /// Smallest dart leaving each vertex.
    first: Vec<Dart>,
    face_of: Vec<FaceId>,
    faces: Vec<Face>,
}

impl fmt::Debug for Map {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Map")
            .field("rotations", &self.rotations())
            .finish()
    }
}

/// Checks raw dart data against every map invariant.
pub fn validate_darts(num_vertices: usize, vertex: &[VertexId], next: &[Dart]) -> ValidationReport {
    let n = next.len();
    let mut violations = Vec::new();
    if n % 2 == 1 || vertex.len() != n {
        violations.push(Violation::OddDartCount(n));
        return ValidationReport {
            violations,
            stats: None,
        };
    }
    let mut seen = vec![false; n];
    for &d in next {
        if d >= n || seen[d] {
            violations.push(Violation::NotAPermutation);
            return ValidationReport {
                violations,
                stats: None,
            };
        }
        seen[d] = true;
    }
    if vertex.iter().any(|&v| v >= num_vertices) {
        violations.push(Violation::NotAPermutation);
        return ValidationReport {
            violations,
            stats: None,
        };
    }
    for d in 0..n {
        if vertex[next[d]] != vertex[d] {
            violations.push(Violation::RotationLeavesVertex { dart: d });
        }
    }
    if !violations.is_empty() {
        return ValidationReport {
            violations,
            stats: None,
        };
    }

    // Rotation cycles per vertex.
    let mut cycles = vec![0usize; num_vertices];
    let mut mark = vec![false; n];
    for d in 0..n {
        if !mark[d] {
            cycles[vertex[d]] += 1;
            let mut x = d;
            while !mark[x] {
                mark[x] = true;
                x = next[x];
            }
        }
    }
    for (v, &c) in cycles.iter().enumerate() {
        if c == 0 {
            violations.push(Violation::IsolatedVertex(v));
        } else if c > 1 {
            violations.push(Violation::SplitRotation {
                vertex: v,
                cycles: c,
            });
        }
    }

    // Orbits of <next, reverse>.
    let mut comp = vec![usize::MAX; n];
    let mut components = 0;
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        let mut stack = vec![s];
        comp[s] = components;
        while let Some(d) = stack.pop() {
            for x in [next[d], reverse(d)] {
                if comp[x] == usize::MAX {
                    comp[x] = components;
                    stack.push(x);
                }
            }
        }
        components += 1;
    }
    if components > 1 {
        violations.push(Violation::Disconnected { components });
    }

    let mut faces = 0;
    let mut mark = vec![false; n];
    for d in 0..n {
        if !mark[d] {
            faces += 1;
            let mut x = d;
            while !mark[x] {
                mark[x] = true;
                x = next[reverse(x)];
            }
        }
    }
    let edges = n / 2;
    let chi = num_vertices as i64 - edges as i64 + faces as i64;
    if chi % 2 != 0 {
        violations.push(Violation::OddEulerCharacteristic(chi));
    } else if chi > 2 {
        violations.push(Violation::EulerCharacteristicAboveTwo(chi));
    }
    let genus = if chi % 2 == 0 && chi <= 2 {
        Some(((2 - chi) / 2) as usize)
    } else {
        None
    };
    ValidationReport {
        violations,
        stats: Some(MapStats {
            vertices: num_vertices,
            edges,
            faces,
            euler_characteristic: chi,
            genus,
        }),
    }
}

impl Map {
    /// Builds a map from the vertex of every dart and its rotation successor.
    pub fn from_darts(
        num_vertices: usize,
        vertex: Vec<VertexId>,
        next: Vec<Dart>,
    ) -> Result<Map, MapError> {
        let report = validate_darts(num_vertices, &vertex, &next);
        if !report.is_valid() {
            return Err(MapError::Invalid(report));
        }
        Ok(Self::assemble(num_vertices, vertex, next))
    }

    /// Builds a map from the clockwise list of darts leaving each vertex.
    /// Every dart `0..2E` must appear exactly once overall.
    pub fn from_rotations(rotations: &[Vec<Dart>]) -> Result<Map, MapError> {
        let n: usize = rotations.iter().map(Vec::len).sum();
        let mut vertex = vec![usize::MAX; n];
        let mut next = vec![usize::MAX; n];
        for (v, rot) in rotations.iter().enumerate() {
            for (i, &d) in rot.iter().enumerate() {
                if d >= n || vertex[d] != usize::MAX {
                    let report = ValidationReport {
                        violations: vec![Violation::NotAPermutation],
                        stats: None,
                    };
                    return Err(MapError::Invalid(report));
                }
                vertex[d] = v;
                next[d] = rot[(i + 1) % rot.len()];
            }
        }
        Self::from_darts(rotations.len(), vertex, next)
    }

    fn assemble(num_vertices: usize, vertex: Vec<VertexId>, next: Vec<Dart>) -> Map {
        let n = next.len();
        let mut prev = vec![0; n];
        for d in 0..n {
            prev[next[d]] = d;
        }
        let mut first = vec![usize::MAX; num_vertices];
        for d in (0..n).rev() {
            first[vertex[d]] = d;
        }
        let mut face_of = vec![usize::MAX; n];
        let mut faces = Vec::new();
        for d in 0..n {
            if face_of[d] != usize::MAX {
                continue;
            }
            let id = faces.len();
            let mut darts = Vec::new();
            let mut x = d;
            while face_of[x] == usize::MAX {
                face_of[x] = id;
                darts.push(x);
                x = next[reverse(x)];
            }
            faces.push(Face { darts });
        }
        Map {
            next,
            prev,
            vertex,
            first,
            face_of,
            faces,
        }
    }

    pub fn num_darts(&self) -> usize {
        self.next.len()
    }

    pub fn num_edges(&self) -> usize {
        self.next.len() / 2
    }

    pub fn num_vertices(&self) -> usize {
        self.first.len()
    }

    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    #[inline]
    pub fn next(&self, d: Dart) -> Dart {
        self.next[d]
    }

    #[inline]
    pub fn prev(&self, d: Dart) -> Dart {
        self.prev[d]
    }

    /// Vertex the dart leaves from.
    #[inline]
    pub fn vertex_of(&self, d: Dart) -> VertexId {
        self.vertex[d]
    }

    /// Vertex the dart points to.
    #[inline]
    pub fn head(&self, d: Dart) -> VertexId {
        self.vertex[reverse(d)]
    }

    #[inline]
    pub fn face_successor(&self, d: Dart) -> Dart {
        self.next[reverse(d)]
    }

    #[inline]
    pub fn face_of(&self, d: Dart) -> FaceId {
        self.face_of[d]
    }

    pub fn edge_endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        (self.vertex[2 * e], self.vertex[2 * e + 1])
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.darts_at(v).count()
    }

    /// Darts leaving `v` in clockwise order, starting at the smallest.
    pub fn darts_at(&self, v: VertexId) -> impl Iterator<Item = Dart> + '_ {
        let start = self.first[v];
        let mut cur = Some(start);
        std::iter::from_fn(move || {
            let d = cur?;
            let nx = self.next[d];
            cur = if nx == start { None } else { Some(nx) };
            Some(d)
        })
    }

    pub fn rotations(&self) -> Vec<Vec<Dart>> {
        (0..self.num_vertices())
            .map(|v| self.darts_at(v).collect())
            .collect()
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.darts_at(v).map(|d| self.head(d))
    }

    /// Facial walks ordered by smallest dart, each starting at that dart.
    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, f: FaceId) -> &Face {
        &self.faces[f]
    }

    /// Vertices visited by a face, in walk order (with repetitions).
    pub fn face_vertices(&self, f: FaceId) -> Vec<VertexId> {
        self.faces[f]
            .darts
            .iter()
            .map(|&d| self.vertex[d])
            .collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.num_vertices() as i64 - self.num_edges() as i64 + self.num_faces() as i64
    }

    pub fn genus(&self) -> usize {
        ((2 - self.euler_characteristic()) / 2) as usize
    }

    pub fn stats(&self) -> MapStats {
        MapStats {
            vertices: self.num_vertices(),
            edges: self.num_edges(),
            faces: self.num_faces(),
            euler_characteristic: self.euler_characteristic(),
            genus: Some(self.genus()),
        }
    }

    pub fn has_loops(&self) -> bool {
        (0..self.num_edges()).any(|e| {
            let (a, b) = self.edge_endpoints(e);
            a == b
        })
    }

    pub fn has_parallel_edges(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        (0..self.num_edges()).any(|e| {
            let (a, b) = self.edge_endpoints(e);
            !seen.insert((a.min(b), a.max(b)))
        })
    }

    /// No loops and no parallel edges.
    pub fn is_simple_graph(&self) -> bool {
        !self.has_loops() && !self.has_parallel_edges()
    }

    pub fn min_degree(&self) -> usize {
        (0..self.num_vertices())
            .map(|v| self.degree(v))
            .min()
            .unwrap_or(0)
    }

    pub fn degree_multiset(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for v in 0..self.num_vertices() {
            *m.entry(self.degree(v)).or_insert(0) += 1;
        }
        m
    }

    pub fn face_size_multiset(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for f in &self.faces {
            *m.entry(f.size()).or_insert(0) += 1;
        }
        m
    }

    /// Sorted face sizes, largest first.
    pub fn face_sizes_desc(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.faces.iter().map(Face::size).collect();
        s.sort_unstable_by(|a, b| b.cmp(a));
        s
    }

    /// The same map seen from the other side of the surface.
    pub fn mirror(&self) -> Map {
        Self::assemble(self.num_vertices(), self.vertex.clone(), self.prev.clone())
    }

    /// Relabels the map: edge `e` becomes `edge_order[e]`, its darts are
    /// swapped when `flip[e]` holds, and vertex `v` becomes `vertex_order[v]`.
    pub fn relabeled(
        &self,
        edge_order: &[EdgeId],
        flip: &[bool],
        vertex_order: &[VertexId],
    ) -> Map {
        let n = self.num_darts();
        let map_dart = |d: Dart| -> Dart {
            let e = edge_of(d);
            let side = (d & 1) ^ usize::from(flip[e]);
            2 * edge_order[e] + side
        };
        let mut vertex = vec![0; n];
        let mut next = vec![0; n];
        for d in 0..n {
            vertex[map_dart(d)] = vertex_order[self.vertex[d]];
            next[map_dart(d)] = map_dart(self.next[d]);
        }
        Self::assemble(self.num_vertices(), vertex, next)
    }

    /// Underlying vertex pairs of the edges, in edge order.
    pub fn edge_list(&self) -> Vec<(VertexId, VertexId)> {
        (0..self.num_edges())
            .map(|e| self.edge_endpoints(e))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn tetrahedron() -> Map {
        // Edges: 0:{0,1} 1:{0,2} 2:{0,3} 3:{1,2} 4:{1,3} 5:{2,3}
        Map::from_rotations(&[vec![0, 2, 4], vec![1, 8, 6], vec![3, 7, 10], vec![5, 11, 9]])
            .unwrap()
    }

    #[test]
    fn tetrahedron_counts() {
        let t = tetrahedron();
        assert_eq!(t.num_vertices(), 4);
        assert_eq!(t.num_edges(), 6);
        assert_eq!(t.num_faces(), 4);
        assert_eq!(t.genus(), 0);
        assert!(t.faces().iter().all(|f| f.size() == 3));
        assert!(t.is_simple_graph());
    }

    #[test]
    fn faces_partition_darts_and_start_at_min() {
        let t = tetrahedron();
        let mut all: Vec<Dart> = t.faces().iter().flat_map(|f| f.darts.clone()).collect();
        all.sort();
        assert_eq!(all, (0..12).collect::<Vec<_>>());
        let mins: Vec<Dart> = t.faces().iter().map(|f| f.darts[0]).collect();
        for f in t.faces() {
            assert_eq!(f.darts[0], *f.darts.iter().min().unwrap());
        }
        assert!(mins.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn single_edge_has_one_face_of_size_two() {
        let k2 = Map::from_rotations(&[vec![0], vec![1]]).unwrap();
        assert_eq!(k2.num_faces(), 1);
        assert_eq!(k2.faces()[0].size(), 2);
        assert_eq!(k2.genus(), 0);
    }

    #[test]
    fn split_rotation_is_rejected() {
        let report = validate_darts(2, &[0, 1, 0, 1], &[0, 1, 2, 3]);
        assert!(report.violations.iter().any(|v| matches!(
            v,
            Violation::SplitRotation {
                vertex: 0,
                cycles: 2
            }
        )));
    }

    #[test]
    fn disconnected_is_rejected() {
        // Two separate edges.
        let err = Map::from_rotations(&[vec![0], vec![1], vec![2], vec![3]]).unwrap_err();
        match err {
            MapError::Invalid(r) => assert!(r
                .violations
                .iter()
                .any(|v| matches!(v, Violation::Disconnected { components: 2 }))),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn mirror_reverses_faces() {
        let t = tetrahedron();
        let m = t.mirror();
        assert_eq!(m.num_faces(), 4);
        assert_eq!(m.genus(), 0);
        assert_eq!(m.mirror(), t);
    }

    #[test]
    fn angles_follow_face_successor() {
        let t = tetrahedron();
        for f in t.faces() {
            for a in f.angles() {
                assert_eq!(t.face_successor(a.incoming), a.outgoing);
            }
        }
    }
}
