//! Empty circuits and pairs: maps on at most `k` vertices spanned by one
//! face of size `k`, or by two faces of total size `k` sharing no edge,
//! whose dual has no loops and whose dual multi-edges all meet the spanning
//! faces.

use std::collections::BTreeSet;
use std::fmt;
use std::time::Duration;

use super::tracer::{first_use, seed_walks, trace, NeighborRule, Rules, SizeRule};
use super::{run_seeds, SearchBudget, SearchResult};
use crate::dual::{dual_simplicity, face_adjacency};
use crate::map::{reverse, FaceId, Map};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Circuit,
    /// Two spanning faces; `None` allows every split with both sizes at least 3.
    Pair(Option<(usize, usize)>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SideConstraint {
    /// The spanning edges border pairwise different faces.
    DistinctNeighborFaces,
    /// The spanning edges all border one face.
    SingleNeighborFace,
    /// Some face shares no edge with the spanning faces.
    FaceNotSharingEdge,
    MinFaceCount(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmptyCircuitSpec {
    pub k: usize,
    pub mode: Mode,
    pub constraints: Vec<SideConstraint>,
}

impl EmptyCircuitSpec {
    pub fn circuit(k: usize, constraints: &[SideConstraint]) -> Self {
        EmptyCircuitSpec {
            k,
            mode: Mode::Circuit,
            constraints: constraints.to_vec(),
        }
    }

    pub fn pair(k: usize, constraints: &[SideConstraint]) -> Self {
        EmptyCircuitSpec {
            k,
            mode: Mode::Pair(None),
            constraints: constraints.to_vec(),
        }
    }

    /// Sizes of the spanning faces for every admissible split.
    pub fn splits(&self) -> Vec<Vec<usize>> {
        match self.mode {
            Mode::Circuit => vec![vec![self.k]],
            Mode::Pair(Some((a, b))) => vec![vec![a, b]],
            Mode::Pair(None) => (3..=self.k / 2)
                .rev()
                .map(|b| vec![self.k - b, b])
                .collect(),
        }
    }

    fn neighbor_rule(&self) -> NeighborRule {
        if self
            .constraints
            .contains(&SideConstraint::DistinctNeighborFaces)
        {
            NeighborRule::Distinct
        } else if self
            .constraints
            .contains(&SideConstraint::SingleNeighborFace)
        {
            NeighborRule::Single
        } else {
            NeighborRule::Any
        }
    }
}

impl fmt::Display for EmptyCircuitSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.mode {
            Mode::Circuit => write!(f, "empty {}-circuit", self.k)?,
            Mode::Pair(None) => write!(f, "empty {}-pair", self.k)?,
            Mode::Pair(Some((a, b))) => write!(f, "empty {}-pair ({a}+{b})", self.k)?,
        }
        for c in &self.constraints {
            match c {
                SideConstraint::DistinctNeighborFaces => write!(f, ", distinct neighbour faces")?,
                SideConstraint::SingleNeighborFace => write!(f, ", single neighbour face")?,
                SideConstraint::FaceNotSharingEdge => write!(f, ", a face sharing no edge")?,
                SideConstraint::MinFaceCount(m) => write!(f, ", at least {m} faces")?,
            }
        }
        Ok(())
    }
}

/// Rotating a walk, or swapping two walks of equal length, gives the same
/// map; only the least relabelled form is traced.
fn is_least_form(walks: &[Vec<u8>]) -> bool {
    let flat = |ws: &[Vec<u8>]| -> Vec<u8> { ws.concat() };
    let own = flat(walks);
    let rotations = |w: &Vec<u8>| -> Vec<Vec<u8>> {
        (0..w.len())
            .map(|r| w[r..].iter().chain(&w[..r]).copied().collect())
            .collect()
    };
    let mut orders: Vec<Vec<&Vec<u8>>> = vec![walks.iter().collect()];
    if walks.len() == 2 && walks[0].len() == walks[1].len() {
        orders.push(vec![&walks[1], &walks[0]]);
    }
    for order in orders {
        let choices: Vec<Vec<Vec<u8>>> = order.iter().map(|w| rotations(w)).collect();
        let mut idx = vec![0; choices.len()];
        loop {
            let pick: Vec<Vec<u8>> = idx
                .iter()
                .zip(&choices)
                .map(|(&i, c)| c[i].clone())
                .collect();
            if flat(&first_use(&pick, 0)) < own {
                return false;
            }
            let mut p = 0;
            while p < idx.len() {
                idx[p] += 1;
                if idx[p] < choices[p].len() {
                    break;
                }
                idx[p] = 0;
                p += 1;
            }
            if p == idx.len() {
                break;
            }
        }
    }
    true
}

fn seed_face(map: &Map, walk: &[u8]) -> FaceId {
    let (a, b) = (walk[0] as usize, walk[1] as usize);
    let d = map
        .darts_at(a)
        .find(|&d| map.head(d) == b)
        .expect("seed edge present");
    map.face_of(d)
}

/// Checks left to the end of generation, using the known spanning faces.
fn final_checks(map: &Map, spec: &EmptyCircuitSpec, walks: &[Vec<u8>]) -> bool {
    let seeds: Vec<FaceId> = walks.iter().map(|w| seed_face(map, w)).collect();
    spec.constraints.iter().all(|c| match *c {
        SideConstraint::MinFaceCount(m) => map.num_faces() >= m,
        SideConstraint::FaceNotSharingEdge => (0..map.num_faces()).any(|g| {
            !seeds.contains(&g)
                && map
                    .face(g)
                    .darts
                    .iter()
                    .all(|&d| !seeds.contains(&map.face_of(reverse(d))))
        }),
        _ => true,
    })
}

/// Every empty circuit or pair matching `spec`, up to orientation-preserving
/// isomorphism, each re-checked by [`check_empty`].
pub fn enumerate_empty(spec: &EmptyCircuitSpec, budget: &SearchBudget) -> SearchResult {
    assert!(spec.k <= 9, "spanning size above 9 is out of range");
    let mut seeds = Vec::new();
    for sizes in spec.splits() {
        if sizes.iter().any(|&s| s < 3) {
            continue;
        }
        seeds.extend(
            seed_walks(&sizes, spec.k)
                .into_iter()
                .filter(|w| is_least_form(w)),
        );
    }
    let rule = spec.neighbor_rule();
    let result = run_seeds(&seeds, budget, false, |walks, shared, cancel, emit| {
        let n = walks
            .iter()
            .flatten()
            .copied()
            .max()
            .map_or(0, |m| m as usize + 1);
        let rules = Rules {
            max_vertices: n,
            new_vertices: false,
            seed_share_limit: None,
            neighbor: rule,
            sizes: SizeRule::AtMost(n * n),
            min_degree: 0,
            max_edges: n * (n - 1) / 2,
        };
        trace(&rules, walks, shared, cancel, &mut |m| {
            if final_checks(&m, spec, walks) {
                return emit(m);
            }
            true
        });
    });
    debug_assert!(result.maps.iter().all(|m| check_empty(m, spec)));
    result
}

/// Independent test of the definition: some choice of spanning face (or
/// pair) satisfies every requirement of `spec`.
pub fn check_empty(map: &Map, spec: &EmptyCircuitSpec) -> bool {
    let k = spec.k;
    if map.num_vertices() > k || !map.is_simple_graph() {
        return false;
    }
    let simplicity = dual_simplicity(map);
    if !simplicity.loops.is_empty() {
        return false;
    }
    let adjacency = face_adjacency(map);
    let shared = |a: FaceId, b: FaceId| adjacency.get(&(a.min(b), a.max(b))).copied().unwrap_or(0);
    let all: BTreeSet<usize> = (0..map.num_vertices()).collect();
    let covers = |faces: &[FaceId]| -> bool {
        let seen: BTreeSet<usize> = faces.iter().flat_map(|&f| map.face_vertices(f)).collect();
        seen == all
    };
    let mut choices: Vec<Vec<FaceId>> = Vec::new();
    let sizes = spec.splits();
    let nf = map.num_faces();
    for f in 0..nf {
        match spec.mode {
            Mode::Circuit => {
                if map.face(f).size() == k && covers(&[f]) {
                    choices.push(vec![f]);
                }
            }
            Mode::Pair(_) => {
                for g in 0..nf {
                    let pair = vec![map.face(f).size(), map.face(g).size()];
                    if f != g && sizes.contains(&pair) && shared(f, g) == 0 && covers(&[f, g]) {
                        choices.push(vec![f, g]);
                    }
                }
            }
        }
    }
    choices.iter().any(|chosen| {
        if simplicity
            .multi
            .iter()
            .any(|(a, b)| !chosen.contains(a) && !chosen.contains(b))
        {
            return false;
        }
        let neighbours: Vec<FaceId> = chosen
            .iter()
            .flat_map(|&f| map.face(f).darts.iter().map(|&d| map.face_of(reverse(d))))
            .collect();
        spec.constraints.iter().all(|c| match *c {
            SideConstraint::DistinctNeighborFaces => {
                let set: BTreeSet<FaceId> = neighbours.iter().copied().collect();
                set.len() == neighbours.len() && set.iter().all(|g| !chosen.contains(g))
            }
            SideConstraint::SingleNeighborFace => neighbours.windows(2).all(|w| w[0] == w[1]),
            SideConstraint::FaceNotSharingEdge => {
                (0..nf).any(|g| !chosen.contains(&g) && chosen.iter().all(|&f| shared(f, g) == 0))
            }
            SideConstraint::MinFaceCount(m) => nf >= m,
        })
    })
}

/// What a case of the remark claims about its enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Claim {
    None,
    /// Every map has exactly this many vertices and at least this many edges.
    VerticesAndMinEdges(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CaseStatus {
    Certified,
    /// The enumeration produced a map contradicting the claim.
    Refuted(String),
    BudgetExhausted,
}

#[derive(Debug, Clone)]
pub struct CaseReport {
    pub case: String,
    pub spec: EmptyCircuitSpec,
    pub claim: Claim,
    pub status: CaseStatus,
    pub found: usize,
    pub nodes: u64,
    pub elapsed: Duration,
}

impl fmt::Display for CaseReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let claim = match self.claim {
            Claim::None => "none exist".to_string(),
            Claim::VerticesAndMinEdges(v, e) => format!("{v} vertices and at least {e} edges"),
        };
        let status = match &self.status {
            CaseStatus::Certified => "certified".to_string(),
            CaseStatus::Refuted(why) => format!("refuted ({why})"),
            CaseStatus::BudgetExhausted => "budget exhausted".to_string(),
        };
        write!(
            f,
            "case {}: {}; claim: {claim}; status: {status}; found: {}; nodes: {}; seconds: {:.3}",
            self.case,
            self.spec,
            self.found,
            self.nodes,
            self.elapsed.as_secs_f64()
        )
    }
}

/// The ten cases of the remark, with `k` expanded for the first two.
pub fn remark24_cases() -> Vec<(String, EmptyCircuitSpec, Claim)> {
    use SideConstraint::*;
    let mut out = Vec::new();
    for k in 3..=5 {
        out.push((
            format!("i/k={k}"),
            EmptyCircuitSpec::circuit(k, &[DistinctNeighborFaces]),
            Claim::None,
        ));
    }
    for k in 3..=5 {
        out.push((
            format!("ii/k={k}"),
            EmptyCircuitSpec::circuit(k, &[FaceNotSharingEdge]),
            Claim::None,
        ));
    }
    let rows = [
        (
            "iii",
            EmptyCircuitSpec::circuit(6, &[DistinctNeighborFaces]),
            Claim::VerticesAndMinEdges(6, 13),
        ),
        (
            "iv",
            EmptyCircuitSpec::circuit(6, &[SingleNeighborFace, MinFaceCount(3)]),
            Claim::None,
        ),
        (
            "v",
            EmptyCircuitSpec::pair(6, &[DistinctNeighborFaces]),
            Claim::VerticesAndMinEdges(6, 12),
        ),
        (
            "vi",
            EmptyCircuitSpec::pair(6, &[SingleNeighborFace, MinFaceCount(4)]),
            Claim::None,
        ),
        (
            "vii",
            EmptyCircuitSpec::circuit(7, &[DistinctNeighborFaces]),
            Claim::VerticesAndMinEdges(7, 15),
        ),
        (
            "viii",
            EmptyCircuitSpec::circuit(7, &[SingleNeighborFace, MinFaceCount(3)]),
            Claim::None,
        ),
        (
            "ix",
            EmptyCircuitSpec::pair(7, &[DistinctNeighborFaces]),
            Claim::VerticesAndMinEdges(7, 14),
        ),
        (
            "x",
            EmptyCircuitSpec::pair(7, &[SingleNeighborFace, MinFaceCount(4)]),
            Claim::None,
        ),
    ];
    out.extend(rows.into_iter().map(|(n, s, c)| (n.to_string(), s, c)));
    out
}

/// Enumerates one case and tests its claim on every map found.
pub fn run_case(
    case: &str,
    spec: &EmptyCircuitSpec,
    claim: Claim,
    budget: &SearchBudget,
) -> CaseReport {
    let result = enumerate_empty(spec, budget);
    let bad = result.maps.iter().find_map(|m| {
        let (v, e) = (m.num_vertices(), m.num_edges());
        match claim {
            Claim::None => Some(format!("found a map with V={v} E={e}")),
            Claim::VerticesAndMinEdges(cv, ce) if v != cv || e < ce => {
                Some(format!("found a map with V={v} E={e}"))
            }
            _ => None,
        }
    });
    let status = match (bad, result.complete) {
        (Some(why), _) => CaseStatus::Refuted(why),
        (None, true) => CaseStatus::Certified,
        (None, false) => CaseStatus::BudgetExhausted,
    };
    CaseReport {
        case: case.to_string(),
        spec: spec.clone(),
        claim,
        status,
        found: result.maps.len(),
        nodes: result.nodes,
        elapsed: result.elapsed,
    }
}

/// Runs the selected cases (all when `only` is empty) in order.
pub fn verify_remark24(only: &[&str], budget: &SearchBudget) -> Vec<CaseReport> {
    remark24_cases()
        .into_iter()
        .filter(|(name, _, _)| {
            only.is_empty()
                || only
                    .iter()
                    .any(|o| name == o || name.split('/').next() == Some(o))
        })
        .map(|(name, spec, claim)| run_case(&name, &spec, claim, budget))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_is_the_only_empty_3_circuit() {
        let r = enumerate_empty(&EmptyCircuitSpec::circuit(3, &[]), &SearchBudget::default());
        assert!(r.complete);
        assert_eq!(r.maps.len(), 1);
        assert_eq!(r.maps[0].face_sizes_desc(), vec![3, 3]);
    }

    #[test]
    fn no_distinct_neighbour_4_circuit() {
        let spec = EmptyCircuitSpec::circuit(4, &[SideConstraint::DistinctNeighborFaces]);
        let r = enumerate_empty(&spec, &SearchBudget::default());
        assert!(r.complete && r.maps.is_empty());
    }

    #[test]
    fn least_form_keeps_one_rotation() {
        let walks = seed_walks(&[4], 4);
        let kept: Vec<_> = walks.iter().filter(|w| is_least_form(w)).collect();
        assert!(kept.contains(&&vec![vec![0, 1, 2, 3]]));
        assert!(
            !kept.contains(&&vec![vec![0, 1, 0, 2]]) || !kept.contains(&&vec![vec![0, 1, 2, 1]])
        );
    }
}
