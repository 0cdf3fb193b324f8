//! Searches for small maps showing that a face-size threshold is sharp.

use std::collections::BTreeMap;

use super::empty::{check_empty, EmptyCircuitSpec, SideConstraint};
use super::tracer::{seed_walks, trace, NeighborRule, Rules, SizeRule};
use super::{run_seeds, SearchBudget, SearchResult};
use crate::connectivity::{map_connectivity, vertex_connectivity, Graph};
use crate::dual::{doubly_intersecting, dual, dual_simplicity, face_adjacency};
use crate::map::{reverse, Map};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DualDemand {
    Simple,
    /// Connectivity of the dual is exactly one.
    HasOneCut,
    /// Connectivity of the dual is exactly two.
    HasTwoCut,
}

/// A `c`-connected map with two faces `f, f'` of total size `pair_sum`,
/// every other face a triangle, on at most `max_vertices` vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessSpec {
    pub c: usize,
    pub pair_sum: usize,
    /// Whether `f` and `f'` must be doubly intersecting.
    pub doubly_intersecting: bool,
    pub dual: Vec<DualDemand>,
    pub max_vertices: usize,
    pub max_edges: Option<usize>,
    pub stop_at_first: bool,
}

impl WitnessSpec {
    /// Two doubly intersecting faces of total size `sum`, simple dual with
    /// a 2-cut.
    pub fn two_cut(c: usize, sum: usize, max_vertices: usize) -> WitnessSpec {
        WitnessSpec {
            c,
            pair_sum: sum,
            doubly_intersecting: true,
            dual: vec![DualDemand::Simple, DualDemand::HasTwoCut],
            max_vertices,
            max_edges: None,
            stop_at_first: true,
        }
    }

    /// Size pairs `(a, b)` with `a >= b >= 3`.
    pub fn splits(&self) -> Vec<(usize, usize)> {
        (3..=self.pair_sum / 2)
            .rev()
            .map(|b| (self.pair_sum - b, b))
            .collect()
    }
}

/// Independent check of every demand in `spec`.
pub fn check_witness(map: &Map, spec: &WitnessSpec) -> bool {
    if map.num_vertices() > spec.max_vertices || !map.is_simple_graph() {
        return false;
    }
    if spec.max_edges.is_some_and(|m| map.num_edges() > m) {
        return false;
    }
    let nf = map.num_faces();
    let pair_ok = (0..nf).any(|f| {
        (f + 1..nf).any(|g| {
            map.face(f).size() + map.face(g).size() == spec.pair_sum
                && (!spec.doubly_intersecting || doubly_intersecting(map, f, g))
                && (0..nf).all(|h| h == f || h == g || map.face(h).size() == 3)
        })
    });
    if !pair_ok {
        return false;
    }
    let simple = dual_simplicity(map).is_simple();
    let dual_kappa = || vertex_connectivity(&Graph::from_map(&dual(map).dual)).ok();
    for d in &spec.dual {
        let ok = match d {
            DualDemand::Simple => simple,
            DualDemand::HasOneCut => dual_kappa() == Some(1),
            DualDemand::HasTwoCut => dual_kappa() == Some(2),
        };
        if !ok {
            return false;
        }
    }
    matches!(map_connectivity(map), Ok(k) if k >= spec.c)
}

/// All witnesses up to isomorphism within the vertex budget, or the first
/// one found when `spec.stop_at_first` holds. An empty complete result
/// certifies that none exist on at most `max_vertices` vertices.
pub fn search_witness(spec: &WitnessSpec, budget: &SearchBudget) -> SearchResult {
    let mut seeds = Vec::new();
    for (a, b) in spec.splits() {
        for walk in seed_walks(&[a], spec.max_vertices.min(a)) {
            seeds.push((walk, b));
        }
    }
    let n = spec.max_vertices;
    let simple = spec.dual.contains(&DualDemand::Simple);
    run_seeds(
        &seeds,
        budget,
        spec.stop_at_first,
        |(walks, b), shared, cancel, emit| {
            let rules = Rules {
                max_vertices: n,
                new_vertices: true,
                seed_share_limit: simple.then_some(1),
                neighbor: NeighborRule::Any,
                sizes: SizeRule::TrianglesAnd(vec![*b]),
                min_degree: spec.c,
                max_edges: spec.max_edges.unwrap_or(n * (n - 1) / 2),
            };
            trace(&rules, walks, shared, cancel, &mut |m| {
                if check_witness(&m, spec) {
                    return emit(m);
                }
                true
            });
        },
    )
}

/// Target shape of the genus-3 empty 9-cycle: nine vertices on a spanning
/// 9-gon, one 15-gon holding every edge of the 9-gon and six triangles.
/// Euler's formula then forces 21 edges.
pub const NINE_CYCLE_EDGES: usize = 21;
pub const NINE_CYCLE_TRIANGLES: usize = 6;

/// Independent check of the empty 9-cycle shape.
pub fn check_empty_9_cycle(map: &Map) -> bool {
    let spec = EmptyCircuitSpec::circuit(9, &[SideConstraint::SingleNeighborFace]);
    if map.num_vertices() != 9 || map.num_edges() != NINE_CYCLE_EDGES || map.genus() != 3 {
        return false;
    }
    let sizes: BTreeMap<usize, usize> = map.face_size_multiset();
    if sizes != BTreeMap::from([(3, NINE_CYCLE_TRIANGLES), (9, 1), (15, 1)]) {
        return false;
    }
    let nine = (0..map.num_faces())
        .find(|&f| map.face(f).size() == 9)
        .unwrap();
    let fifteen = (0..map.num_faces())
        .find(|&f| map.face(f).size() == 15)
        .unwrap();
    let only_big = map
        .face(nine)
        .darts
        .iter()
        .all(|&d| map.face_of(reverse(d)) == fifteen);
    let multi_ok = face_adjacency(map)
        .into_iter()
        .all(|((a, b), n)| n < 2 || (a, b) == (nine.min(fifteen), nine.max(fifteen)));
    only_big && multi_ok && check_empty(map, &spec)
}

/// Looks for the empty 9-cycle of genus 3. A search that ends without a map
/// means not found within the budget, never non-existence.
pub fn search_empty_9_cycle(budget: &SearchBudget, stop_at_first: bool) -> SearchResult {
    let seeds = vec![vec![(0..9).collect::<Vec<u8>>()]];
    run_seeds(
        &seeds,
        budget,
        stop_at_first,
        |walks, shared, cancel, emit| {
            let rules = Rules {
                max_vertices: 9,
                new_vertices: false,
                seed_share_limit: None,
                neighbor: NeighborRule::Single,
                sizes: SizeRule::TrianglesAnd(vec![15]),
                min_degree: 0,
                max_edges: NINE_CYCLE_EDGES,
            };
            trace(&rules, walks, shared, cancel, &mut |m| {
                if check_empty_9_cycle(&m) {
                    return emit(m);
                }
                true
            });
        },
    )
}

/// Triangular embeddings of the complete graph `K_n`, traced face by face
/// from one triangle.
pub fn search_complete_triangulation(
    n: usize,
    budget: &SearchBudget,
    stop_at_first: bool,
) -> SearchResult {
    let seeds = vec![vec![vec![0u8, 1, 2]]];
    run_seeds(
        &seeds,
        budget,
        stop_at_first,
        |walks, shared, cancel, emit| {
            let rules = Rules {
                max_vertices: n,
                new_vertices: true,
                seed_share_limit: None,
                neighbor: NeighborRule::Any,
                sizes: SizeRule::TrianglesAnd(Vec::new()),
                min_degree: n - 1,
                max_edges: n * (n - 1) / 2,
            };
            trace(&rules, walks, shared, cancel, &mut |m| {
                let complete = m.num_vertices() == n
                    && m.is_simple_graph()
                    && m.num_edges() == n * (n - 1) / 2
                    && m.faces().iter().all(|f| f.size() == 3);
                if complete {
                    return emit(m);
                }
                true
            });
        },
    )
}
