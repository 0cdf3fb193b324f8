//! Map surgery: vertex deletion, face gluing, edge subdivision and the
//! explicit gadgets used to build threshold witnesses.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::connectivity::{map_connectivity, ConnectivityError};
use crate::map::{edge_of, reverse, Dart, EdgeId, FaceId, Map, MapError, VertexId};
use crate::rot::parse_map;

pub mod pipeline;

pub use pipeline::{pipeline_delta1_witness, Ingredients, PipelineOutput};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SurgeryError {
    #[error("unknown face {0}")]
    UnknownFace(FaceId),
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("unknown edge {0}")]
    UnknownEdge(EdgeId),
    #[error("face {0} is not a simple cycle")]
    NotACycle(FaceId),
    #[error("faces have different sizes ({0} and {1})")]
    SizeMismatch(usize, usize),
    #[error("the faces share a vertex")]
    FacesTouch,
    #[error("the result has a loop or a parallel edge")]
    NotSimple,
    #[error("deleting vertex {0} disconnects the map")]
    Disconnects(VertexId),
    #[error("face {face} has size {size}, at least {need} needed")]
    FaceTooSmall {
        face: FaceId,
        size: usize,
        need: usize,
    },
    #[error("face {0} has a chord")]
    Chord(FaceId),
    #[error("host is {found}-connected, {need} needed")]
    ConnectivityTooLow { found: usize, need: usize },
    #[error("unsupported parameter c = {0}")]
    UnsupportedC(usize),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("postcondition failed: {0}")]
    Postcondition(String),
    #[error("missing ingredient: {0}")]
    MissingIngredient(String),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Connectivity(#[from] ConnectivityError),
}

/// Rebuilds a map from rotation lists after edges and vertices were dropped.
/// Surviving edges and vertices keep their relative order.
fn compact(rot: &[Vec<Dart>], removed_vertex: &[bool]) -> Result<Map, MapError> {
    let mut edges = BTreeSet::new();
    for (v, list) in rot.iter().enumerate() {
        if !removed_vertex[v] {
            edges.extend(list.iter().map(|&d| edge_of(d)));
        }
    }
    let mut new_id = std::collections::HashMap::new();
    for (i, &e) in edges.iter().enumerate() {
        new_id.insert(e, i);
    }
    let out: Vec<Vec<Dart>> = rot
        .iter()
        .enumerate()
        .filter(|&(v, _)| !removed_vertex[v])
        .map(|(_, list)| {
            list.iter()
                .map(|&d| 2 * new_id[&edge_of(d)] + (d & 1))
                .collect()
        })
        .collect();
    Map::from_rotations(&out)
}

fn face_cycle(map: &Map, f: FaceId) -> Result<Vec<Dart>, SurgeryError> {
    if f >= map.num_faces() {
        return Err(SurgeryError::UnknownFace(f));
    }
    let darts = map.face(f).darts.clone();
    let verts: BTreeSet<_> = darts.iter().map(|&d| map.vertex_of(d)).collect();
    if verts.len() != darts.len() {
        return Err(SurgeryError::NotACycle(f));
    }
    Ok(darts)
}

/// Deletes `v` and every edge at it; all faces around `v` merge into one.
pub fn delete_vertex(map: &Map, v: VertexId) -> Result<Map, SurgeryError> {
    if v >= map.num_vertices() {
        return Err(SurgeryError::UnknownVertex(v));
    }
    let doomed: BTreeSet<EdgeId> = map.darts_at(v).map(edge_of).collect();
    let rot: Vec<Vec<Dart>> = map
        .rotations()
        .into_iter()
        .map(|list| {
            list.into_iter()
                .filter(|d| !doomed.contains(&edge_of(*d)))
                .collect()
        })
        .collect();
    let mut removed = vec![false; map.num_vertices()];
    removed[v] = true;
    compact(&rot, &removed).map_err(|_| SurgeryError::Disconnects(v))
}

/// How two faces are matched when glued. Position `i` of `face_a` (the tail
/// of its `i`-th dart) is identified with position `offset - i` of `face_b`,
/// which reverses the walk as orientability requires. With `mirror_b` the
/// second map is reflected first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GlueSpec {
    pub face_a: FaceId,
    pub face_b: FaceId,
    pub offset: usize,
    pub mirror_b: bool,
    pub require_simple: bool,
}

impl GlueSpec {
    pub fn new(face_a: FaceId, face_b: FaceId, offset: usize) -> GlueSpec {
        GlueSpec {
            face_a,
            face_b,
            offset,
            mirror_b: false,
            require_simple: true,
        }
    }
}

/// Glues two vertex-disjoint simple facial cycles of one set of rotations.
/// `vertex` gives the tail of every dart.
fn glue_raw(
    rot: &mut [Vec<Dart>],
    vertex: &[VertexId],
    fa: &[Dart],
    fb: &[Dart],
    offset: usize,
    removed: &mut [bool],
) {
    let m = fa.len();
    let mut merged = Vec::with_capacity(m);
    for i in 0..m {
        let j = (offset % m + m - i) % m;
        let a = vertex[fa[i]];
        let b = vertex[fb[j]];
        let ra = &rot[a];
        let pa = ra.iter().position(|&d| d == fa[i]).unwrap();
        let mut list: Vec<Dart> = (0..ra.len()).map(|k| ra[(pa + k) % ra.len()]).collect();
        let rb = &rot[b];
        let pb = rb.iter().position(|&d| d == fb[j]).unwrap();
        list.extend((1..rb.len() - 1).map(|k| rb[(pb + k) % rb.len()]));
        merged.push((a, b, list));
    }
    for (a, b, list) in merged {
        rot[a] = list;
        rot[b].clear();
        removed[b] = true;
    }
}

fn dart_tails(rot: &[Vec<Dart>]) -> Vec<VertexId> {
    let n: usize = rot.iter().map(Vec::len).sum();
    let mut vertex = vec![0; n];
    for (v, list) in rot.iter().enumerate() {
        for &d in list {
            vertex[d] = v;
        }
    }
    vertex
}

fn finish_glue(
    rot: &[Vec<Dart>],
    removed: &[bool],
    spec: &GlueSpec,
    expect: (usize, usize, usize),
) -> Result<Map, SurgeryError> {
    let out = compact(rot, removed)?;
    let got = (out.num_vertices(), out.num_edges(), out.num_faces());
    if got != expect {
        return Err(SurgeryError::Postcondition(format!(
            "glued map has V,E,F = {got:?}, expected {expect:?}"
        )));
    }
    if spec.require_simple && !out.is_simple_graph() {
        return Err(SurgeryError::NotSimple);
    }
    Ok(out)
}

/// Identifies a face of `a` with a face of `b` of the same length and
/// deletes both faces. Vertices of `a` keep their numbers; the remaining
/// vertices of `b` follow.
pub fn glue_faces(a: &Map, b: &Map, spec: &GlueSpec) -> Result<Map, SurgeryError> {
    let b_owned;
    let (b, fb) = if spec.mirror_b {
        let cyc = face_cycle(b, spec.face_b)?;
        b_owned = b.mirror();
        let f = b_owned.face_of(reverse(cyc[0]));
        (&b_owned, f)
    } else {
        (b, spec.face_b)
    };
    let ca = face_cycle(a, spec.face_a)?;
    let cb = face_cycle(b, fb)?;
    if ca.len() != cb.len() {
        return Err(SurgeryError::SizeMismatch(ca.len(), cb.len()));
    }
    let shift = a.num_darts();
    let mut rot = a.rotations();
    rot.extend(
        b.rotations()
            .into_iter()
            .map(|list| list.into_iter().map(|d| d + shift).collect::<Vec<_>>()),
    );
    let cb: Vec<Dart> = cb.iter().map(|d| d + shift).collect();
    let vertex = dart_tails(&rot);
    let mut removed = vec![false; rot.len()];
    glue_raw(&mut rot, &vertex, &ca, &cb, spec.offset, &mut removed);
    let m = ca.len();
    let expect = (
        a.num_vertices() + b.num_vertices() - m,
        a.num_edges() + b.num_edges() - m,
        a.num_faces() + b.num_faces() - 2,
    );
    finish_glue(&rot, &removed, spec, expect)
}

/// Glues two vertex-disjoint faces of the same map, adding a handle.
pub fn glue_faces_within(map: &Map, spec: &GlueSpec) -> Result<Map, SurgeryError> {
    let ca = face_cycle(map, spec.face_a)?;
    let cb = face_cycle(map, spec.face_b)?;
    if ca.len() != cb.len() {
        return Err(SurgeryError::SizeMismatch(ca.len(), cb.len()));
    }
    let va: BTreeSet<_> = ca.iter().map(|&d| map.vertex_of(d)).collect();
    if cb.iter().any(|&d| va.contains(&map.vertex_of(d))) {
        return Err(SurgeryError::FacesTouch);
    }
    let mut rot = map.rotations();
    let vertex = dart_tails(&rot);
    let mut removed = vec![false; rot.len()];
    glue_raw(&mut rot, &vertex, &ca, &cb, spec.offset, &mut removed);
    let m = ca.len();
    let expect = (
        map.num_vertices() - m,
        map.num_edges() - m,
        map.num_faces() - 2,
    );
    finish_glue(&rot, &removed, spec, expect)
}

/// Puts a new vertex of degree two in the middle of edge `e`. The new vertex
/// gets the next free number and the far half becomes a new last edge.
pub fn subdivide_edge(map: &Map, e: EdgeId) -> Result<Map, SurgeryError> {
    if e >= map.num_edges() {
        return Err(SurgeryError::UnknownEdge(e));
    }
    let fresh = map.num_edges();
    let mut rot = map.rotations();
    let v = map.vertex_of(2 * e + 1);
    for d in rot[v].iter_mut() {
        if *d == 2 * e + 1 {
            *d = 2 * fresh + 1;
        }
    }
    rot.push(vec![2 * e + 1, 2 * fresh]);
    Ok(Map::from_rotations(&rot)?)
}

/// Two plane tetrahedra sharing one vertex; the shared vertex sits in a
/// hexagonal face.
pub fn k4_wedge() -> Map {
    parse_map(
        "vertices: 7\n0: 1 2 3 4 5 6\n1: 0 3 2\n2: 0 1 3\n3: 0 2 1\n4: 0 6 5\n5: 0 4 6\n6: 0 5 4\n",
    )
    .expect("static map")
}

/// The circulant on `Z_c` with steps 1 and 2, rotation `i-2, i-1, i+1, i+2`
/// at every vertex. Edge `i` is `{i, i+1}` and edge `c+i` is `{i, i+2}`.
pub fn zc_raw(c: usize) -> Result<Map, SurgeryError> {
    if c < 3 {
        return Err(SurgeryError::UnsupportedC(c));
    }
    let a = |i: usize| 2 * (i % c);
    let b = |i: usize| 2 * (c + i % c);
    let rot: Vec<Vec<Dart>> = (0..c)
        .map(|i| vec![b(i + c - 2) + 1, a(i + c - 1) + 1, a(i), b(i)])
        .collect();
    Ok(Map::from_rotations(&rot)?)
}

/// The gadget around the central face; for `c = 3` the step-2 edges are
/// subdivided to remove the parallel pairs.
pub fn build_zc_gadget(c: usize) -> Result<Map, SurgeryError> {
    if ![3, 5, 6, 7].contains(&c) {
        return Err(SurgeryError::UnsupportedC(c));
    }
    let mut map = zc_raw(c)?;
    if c == 3 {
        for e in c..2 * c {
            map = subdivide_edge(&map, e)?;
        }
    }
    Ok(map)
}

/// The largest face, ties broken by id.
pub fn central_face(map: &Map) -> FaceId {
    (0..map.num_faces())
        .max_by_key(|&f| (map.face(f).size(), std::cmp::Reverse(f)))
        .unwrap_or(0)
}

/// Result of [`interior_fill`]: the new map and its inner `l`-face.
#[derive(Debug, Clone)]
pub struct Fill {
    pub map: Map,
    pub inner_face: FaceId,
    pub inner_vertices: Vec<VertexId>,
}

/// Places an `l`-cycle `w_0..w_{l-1}` inside face `f` of a `c`-connected
/// host. Writing `v_0..v_{c'-1}` for the face boundary, `w_i` is joined to
/// `v_{i(c-1)}..v_{(i+1)(c-1)}` and `w_{l-1}` to all remaining boundary
/// vertices up to `v_0`.
pub fn interior_fill(host: &Map, f: FaceId, c: usize, l: usize) -> Result<Fill, SurgeryError> {
    if c < 2 || l < 3 {
        return Err(SurgeryError::Precondition(format!(
            "need c >= 2 and l >= 3, got c={c}, l={l}"
        )));
    }
    let cyc = face_cycle(host, f)?;
    let size = cyc.len();
    if size < l * (c - 1) {
        return Err(SurgeryError::FaceTooSmall {
            face: f,
            size,
            need: l * (c - 1),
        });
    }
    let boundary: Vec<VertexId> = cyc.iter().map(|&d| host.vertex_of(d)).collect();
    let on_face: BTreeSet<VertexId> = boundary.iter().copied().collect();
    let face_edges: BTreeSet<EdgeId> = cyc.iter().map(|&d| edge_of(d)).collect();
    for e in 0..host.num_edges() {
        let (x, y) = host.edge_endpoints(e);
        if on_face.contains(&x) && on_face.contains(&y) && !face_edges.contains(&e) {
            return Err(SurgeryError::Chord(f));
        }
    }
    let kappa = map_connectivity(host)?;
    if kappa < c {
        return Err(SurgeryError::ConnectivityTooLow {
            found: kappa,
            need: c,
        });
    }

    let n = host.num_vertices();
    let mut next_edge = host.num_edges();
    let mut rot = host.rotations();
    rot.extend((0..l).map(|_| Vec::new()));
    let step = c - 1;
    let fan = |i: usize| -> Vec<usize> {
        if i + 1 < l {
            (i * step..=(i + 1) * step).collect()
        } else {
            (i * step..size).chain(std::iter::once(0)).collect()
        }
    };
    // Darts leaving each boundary position toward the w's, lowest w first.
    let mut to_w: Vec<Vec<(usize, Dart)>> = vec![Vec::new(); size];
    let mut w_fans: Vec<Vec<(usize, Dart)>> = vec![Vec::new(); l];
    for i in 0..l {
        for k in fan(i) {
            let e = next_edge;
            next_edge += 1;
            w_fans[i].push((k, 2 * e));
            to_w[k].push((i, 2 * e + 1));
        }
    }
    // At v_0 the last fan comes before the first.
    to_w[0].sort_by_key(|&(i, _)| std::cmp::Reverse(i));
    let mut cycle_darts: Vec<(Dart, Dart)> = Vec::with_capacity(l);
    for _ in 0..l {
        let e = next_edge;
        next_edge += 1;
        cycle_darts.push((2 * e, 2 * e + 1));
    }
    for i in 0..l {
        let mut list: Vec<Dart> = w_fans[i].iter().rev().map(|&(_, d)| d).collect();
        list.push(cycle_darts[(i + l - 1) % l].1);
        list.push(cycle_darts[i].0);
        rot[n + i] = list;
    }
    for k in 0..size {
        let v = boundary[k];
        let before = reverse(cyc[(k + size - 1) % size]);
        let pos = rot[v].iter().position(|&d| d == before).unwrap();
        let insert: Vec<Dart> = to_w[k].iter().map(|&(_, d)| d).collect();
        rot[v].splice(pos + 1..pos + 1, insert);
    }
    let map = Map::from_rotations(&rot)?;
    let inner_vertices: Vec<VertexId> = (n..n + l).collect();
    let inner_face = map.face_of(cycle_darts[0].0);
    let fill = Fill {
        map,
        inner_face,
        inner_vertices,
    };
    let problems = check_fill(&fill, c, l);
    if problems.is_empty() {
        Ok(fill)
    } else {
        Err(SurgeryError::Postcondition(problems.join("; ")))
    }
}

/// The properties an inner-face ingredient must have: `c`-connected, the
/// designated face is a chordless `l`-cycle, every other face meets it in at
/// most one edge and the faces touching the new vertices are triangles.
pub fn check_fill(fill: &Fill, c: usize, l: usize) -> Vec<String> {
    let map = &fill.map;
    let mut out = Vec::new();
    let face = map.face(fill.inner_face);
    if face.size() != l {
        out.push(format!("inner face has size {}, expected {l}", face.size()));
    }
    out.extend(face_ingredient_problems(map, fill.inner_face));
    let news: BTreeSet<VertexId> = fill.inner_vertices.iter().copied().collect();
    for (g, other) in map.faces().iter().enumerate() {
        if g != fill.inner_face
            && other
                .darts
                .iter()
                .any(|&d| news.contains(&map.vertex_of(d)))
            && other.size() != 3
        {
            out.push(format!("new face {g} has size {}", other.size()));
        }
    }
    for &w in &fill.inner_vertices {
        if map.degree(w) < c {
            out.push(format!("inner vertex {w} has degree {}", map.degree(w)));
        }
    }
    match map_connectivity(map) {
        Ok(k) if k >= c => {}
        Ok(k) => out.push(format!("result is only {k}-connected")),
        Err(e) => out.push(e.to_string()),
    }
    out
}

/// Chordless simple cycle, and no other face shares two edges with it.
pub fn face_ingredient_problems(map: &Map, f: FaceId) -> Vec<String> {
    let mut out = Vec::new();
    let face = map.face(f);
    let verts: BTreeSet<VertexId> = face.darts.iter().map(|&d| map.vertex_of(d)).collect();
    if verts.len() != face.size() {
        out.push(format!("face {f} repeats a vertex"));
    }
    let edges: BTreeSet<EdgeId> = face.darts.iter().map(|&d| edge_of(d)).collect();
    for e in 0..map.num_edges() {
        let (x, y) = map.edge_endpoints(e);
        if verts.contains(&x) && verts.contains(&y) && !edges.contains(&e) {
            out.push(format!("face {f} has chord {x}-{y}"));
        }
    }
    let mut shared = vec![0usize; map.num_faces()];
    for &d in &face.darts {
        shared[map.face_of(reverse(d))] += 1;
    }
    for (g, &s) in shared.iter().enumerate() {
        if g != f && s > 1 {
            out.push(format!("face {g} shares {s} edges with face {f}"));
        }
    }
    out
}

/// Order of the two new darts placed in each triangle's angle at its pivot.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PivotOrder {
    PreviousFirst,
    NextFirst,
}

#[derive(Debug, Clone)]
pub struct CycleInsertion {
    pub map: Map,
    pub big_face: FaceId,
    pub hexagon: FaceId,
}

/// Adds the 6-cycle `p_1..p_6` through pivots of six vertex-disjoint
/// triangular faces, drawing each new edge through the triangles at its
/// ends. The six triangles fuse into one 24-gon beside a new hexagon.
pub fn insert_cycle_in_triangles(
    map: &Map,
    triangles: &[FaceId; 6],
    pivots: &[VertexId; 6],
    order: PivotOrder,
) -> Result<CycleInsertion, SurgeryError> {
    let mut seen = BTreeSet::new();
    let mut gap_after = [0; 6];
    for i in 0..6 {
        let t = triangles[i];
        if t >= map.num_faces() {
            return Err(SurgeryError::UnknownFace(t));
        }
        let face = map.face(t);
        if face.size() != 3 {
            return Err(SurgeryError::Precondition(format!(
                "face {t} is not a triangle"
            )));
        }
        for &d in &face.darts {
            if !seen.insert(map.vertex_of(d)) {
                return Err(SurgeryError::FacesTouch);
            }
        }
        let Some(&arrive) = face.darts.iter().find(|&&d| map.head(d) == pivots[i]) else {
            return Err(SurgeryError::Precondition(format!(
                "pivot {} is not on face {t}",
                pivots[i]
            )));
        };
        gap_after[i] = reverse(arrive);
    }
    for i in 0..6 {
        let (p, q) = (pivots[i], pivots[(i + 1) % 6]);
        if map.neighbors(p).any(|x| x == q) {
            return Err(SurgeryError::Precondition(format!(
                "pivots {p} and {q} already adjacent"
            )));
        }
    }
    let base = map.num_edges();
    let mut rot = map.rotations();
    for i in 0..6 {
        // Edge base+i runs from p_i to p_{i+1}.
        let to_next = 2 * (base + i);
        let to_prev = 2 * (base + (i + 5) % 6) + 1;
        let insert = match order {
            PivotOrder::PreviousFirst => [to_prev, to_next],
            PivotOrder::NextFirst => [to_next, to_prev],
        };
        let v = pivots[i];
        let pos = rot[v].iter().position(|&d| d == gap_after[i]).unwrap();
        rot[v].splice(pos + 1..pos + 1, insert);
    }
    let out = Map::from_rotations(&rot)?;
    let hexagon = out.face_of(2 * base);
    let other = out.face_of(2 * base + 1);
    let (big_face, hexagon) = if out.face(hexagon).size() == 6 {
        (other, hexagon)
    } else {
        (hexagon, other)
    };
    let mut problems = Vec::new();
    if out.num_faces() + 4 != map.num_faces() {
        problems.push(format!(
            "face count {} -> {}",
            map.num_faces(),
            out.num_faces()
        ));
    }
    if out.genus() != map.genus() + 5 {
        problems.push(format!("genus {} -> {}", map.genus(), out.genus()));
    }
    if out.face(big_face).size() != 24 || out.face(hexagon).size() != 6 {
        problems.push("new faces are not a 24-gon and a hexagon".into());
    }
    if out
        .face(hexagon)
        .darts
        .iter()
        .any(|&d| out.face_of(reverse(d)) != big_face)
    {
        problems.push("hexagon borders a face other than the 24-gon".into());
    }
    if problems.is_empty() {
        Ok(CycleInsertion {
            map: out,
            big_face,
            hexagon,
        })
    } else {
        Err(SurgeryError::Postcondition(problems.join("; ")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{cube, tetrahedron, wheel};

    #[test]
    fn delete_hub_of_wheel() {
        let c5 = delete_vertex(&wheel(5), 0).unwrap();
        assert_eq!(c5.face_sizes_desc(), vec![5, 5]);
        let tri = delete_vertex(&tetrahedron(), 3).unwrap();
        assert_eq!(tri.face_sizes_desc(), vec![3, 3]);
    }

    #[test]
    fn glue_two_tetrahedra() {
        let t = tetrahedron();
        let g = glue_faces(&t, &t, &GlueSpec::new(0, 0, 0)).unwrap();
        assert_eq!(
            (g.num_vertices(), g.num_edges(), g.num_faces(), g.genus()),
            (5, 9, 6, 0)
        );
    }

    #[test]
    fn glue_two_cubes() {
        let c = cube();
        for offset in 0..4 {
            let g = glue_faces(&c, &c, &GlueSpec::new(0, 3, offset)).unwrap();
            assert_eq!(
                (g.num_vertices(), g.num_edges(), g.num_faces(), g.genus()),
                (12, 20, 10, 0)
            );
        }
    }

    #[test]
    fn subdivide_grows_faces() {
        let t = tetrahedron();
        let s = subdivide_edge(&t, 0).unwrap();
        assert_eq!(s.face_sizes_desc(), vec![4, 4, 3, 3]);
        let s2 = subdivide_edge(&s, 0).unwrap();
        assert_eq!(s2.face_sizes_desc(), vec![5, 5, 3, 3]);
        assert_eq!(s2.genus(), 0);
    }

    #[test]
    fn wedge_counts() {
        let w = k4_wedge();
        assert_eq!(
            (w.num_vertices(), w.num_edges(), w.num_faces(), w.genus()),
            (7, 12, 7, 0)
        );
        assert_eq!(w.face_sizes_desc(), vec![6, 3, 3, 3, 3, 3, 3]);
    }

    #[test]
    fn gadget_faces() {
        assert_eq!(build_zc_gadget(3).unwrap().face_sizes_desc(), vec![9, 6, 3]);
        assert_eq!(
            build_zc_gadget(5).unwrap().face_sizes_desc(),
            vec![10, 5, 5]
        );
        assert_eq!(
            build_zc_gadget(6).unwrap().face_sizes_desc(),
            vec![12, 6, 3, 3]
        );
        assert_eq!(
            build_zc_gadget(7).unwrap().face_sizes_desc(),
            vec![14, 7, 7]
        );
        assert!(build_zc_gadget(4).is_err());
    }

    #[test]
    fn fill_wheel_rim() {
        let w = wheel(8);
        let rim = central_face(&w);
        let fill = interior_fill(&w, rim, 3, 4).unwrap();
        assert_eq!(fill.map.face(fill.inner_face).size(), 4);
        assert!(interior_fill(&w, rim, 3, 5).is_err());
    }

    #[test]
    fn cycle_through_six_triangles() {
        let g = crate::families::torus_grid(6, 6);
        // Triangles (i, j), (i+1, j), (i+1, j+1) for i, j in {0, 2, 4} x {0, 3}.
        let mut tris = Vec::new();
        let mut pivots = Vec::new();
        for &(i, j) in &[(0, 0), (0, 3), (2, 3), (4, 3), (4, 0), (2, 0)] {
            let want: BTreeSet<usize> = [i * 6 + j, (i + 1) * 6 + j, (i + 1) * 6 + j + 1].into();
            let f = (0..g.num_faces())
                .find(|&f| g.face_vertices(f).into_iter().collect::<BTreeSet<_>>() == want)
                .unwrap();
            tris.push(f);
            pivots.push(i * 6 + j);
        }
        let tris: [FaceId; 6] = tris.try_into().unwrap();
        let pivots: [VertexId; 6] = pivots.try_into().unwrap();
        for order in [PivotOrder::PreviousFirst, PivotOrder::NextFirst] {
            let out = insert_cycle_in_triangles(&g, &tris, &pivots, order).unwrap();
            assert_eq!(out.map.num_edges(), g.num_edges() + 6);
            assert_eq!(out.map.genus(), 6);
        }
    }
}
