//! The `.rot` text format.
//!
//! ```text
//! # tetrahedron
//! vertices: 4
//! 0: 1 2 3
//! 1: 0 3 2
//! 2: 0 1 3
//! 3: 0 2 1
//! ```
//!
//! Each vertex line lists its neighbours in clockwise order. Parallel edges
//! are written with matching multiplicity on both endpoints and paired by
//! order of occurrence; the two occurrences of a loop are consecutive
//! occurrences in the same list.

use std::collections::HashMap;

use thiserror::Error;

use crate::map::{validate_darts, Dart, Map, MapError, ValidationReport, VertexId, Violation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Error)]
pub enum RotError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Map(#[from] MapError),
}

/// Neighbour lists exactly as written in a `.rot` file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rotations {
    pub neighbors: Vec<Vec<VertexId>>,
}

fn err(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        column,
        message: message.into(),
    }
}

/// Parses the text form. Structural problems of the rotation data itself
/// (dangling darts, odd Euler characteristic) are left to [`Rotations::validate`].
pub fn parse(text: &str) -> Result<Rotations, ParseError> {
    let mut count: Option<usize> = None;
    let mut neighbors: Vec<Option<Vec<VertexId>>> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let Some(colon) = content.find(':') else {
            return Err(err(line_no, 1, "expected ':'"));
        };
        let key = content[..colon].trim();
        let rest = &content[colon + 1..];
        let rest_col = colon + 2;
        match count {
            None => {
                if key != "vertices" {
                    return Err(err(line_no, 1, "expected 'vertices: N' header"));
                }
                let n: usize = rest
                    .trim()
                    .parse()
                    .map_err(|_| err(line_no, rest_col, "invalid vertex count"))?;
                count = Some(n);
                neighbors = vec![None; n];
            }
            Some(n) => {
                let v: usize = key
                    .parse()
                    .map_err(|_| err(line_no, 1, format!("invalid vertex id '{key}'")))?;
                if v >= n {
                    return Err(err(line_no, 1, format!("vertex {v} out of range")));
                }
                if neighbors[v].is_some() {
                    return Err(err(line_no, 1, format!("vertex {v} listed twice")));
                }
                let mut list = Vec::new();
                let mut offset = 0;
                for tok in rest.split_whitespace() {
                    let pos = rest[offset..].find(tok).unwrap() + offset;
                    offset = pos + tok.len();
                    let u: usize = tok.parse().map_err(|_| {
                        err(line_no, rest_col + pos, format!("invalid neighbor '{tok}'"))
                    })?;
                    if u >= n {
                        return Err(err(
                            line_no,
                            rest_col + pos,
                            format!("neighbor {u} out of range"),
                        ));
                    }
                    list.push(u);
                }
                neighbors[v] = Some(list);
            }
        }
    }
    if count.is_none() {
        return Err(err(1, 1, "missing 'vertices: N' header"));
    }
    Ok(Rotations {
        neighbors: neighbors
            .into_iter()
            .map(Option::unwrap_or_default)
            .collect(),
    })
}

impl Rotations {
    pub fn num_vertices(&self) -> usize {
        self.neighbors.len()
    }

    /// Pairs occurrences into darts. Returns the per-vertex dart lists, or
    /// the dangling occurrences.
    fn pair(&self) -> Result<Vec<Vec<Dart>>, Vec<Violation>> {
        let mut occurrences: HashMap<(VertexId, VertexId), Vec<(VertexId, usize)>> = HashMap::new();
        for (v, list) in self.neighbors.iter().enumerate() {
            for (i, &u) in list.iter().enumerate() {
                occurrences
                    .entry((v.min(u), v.max(u)))
                    .or_default()
                    .push((v, i));
            }
        }
        // Edge ids follow the first occurrence in reading order.
        let mut dart_at: Vec<Vec<Option<Dart>>> =
            self.neighbors.iter().map(|l| vec![None; l.len()]).collect();
        let mut next_edge = 0;
        let mut violations = Vec::new();
        for (v, list) in self.neighbors.iter().enumerate() {
            for (i, &u) in list.iter().enumerate() {
                if dart_at[v][i].is_some() {
                    continue;
                }
                let occ = &occurrences[&(v.min(u), v.max(u))];
                let partner = if u == v {
                    let mine: Vec<usize> = occ.iter().map(|&(_, p)| p).collect();
                    let k = mine.iter().position(|&p| p == i).unwrap();
                    if k % 2 == 0 {
                        mine.get(k + 1).map(|&p| (v, p))
                    } else {
                        None
                    }
                } else {
                    let k = occ.iter().filter(|&&(w, p)| w == v && p < i).count();
                    occ.iter().filter(|&&(w, _)| w == u).nth(k).copied()
                };
                match partner {
                    Some((w, p)) => {
                        dart_at[v][i] = Some(2 * next_edge);
                        dart_at[w][p] = Some(2 * next_edge + 1);
                        next_edge += 1;
                    }
                    None => violations.push(Violation::DanglingDart {
                        vertex: v,
                        neighbor: u,
                    }),
                }
            }
        }
        if violations.is_empty() {
            Ok(dart_at
                .into_iter()
                .map(|l| l.into_iter().map(Option::unwrap).collect())
                .collect())
        } else {
            Err(violations)
        }
    }

    fn darts(&self, rot: &[Vec<Dart>]) -> (Vec<VertexId>, Vec<Dart>) {
        let n: usize = rot.iter().map(Vec::len).sum();
        let mut vertex = vec![0; n];
        let mut next = vec![0; n];
        for (v, list) in rot.iter().enumerate() {
            for (i, &d) in list.iter().enumerate() {
                vertex[d] = v;
                next[d] = list[(i + 1) % list.len()];
            }
        }
        (vertex, next)
    }

    pub fn validate(&self) -> ValidationReport {
        match self.pair() {
            Err(violations) => ValidationReport {
                violations,
                stats: None,
            },
            Ok(rot) => {
                let (vertex, next) = self.darts(&rot);
                validate_darts(self.num_vertices(), &vertex, &next)
            }
        }
    }

    pub fn to_map(&self) -> Result<Map, MapError> {
        let rot = self.pair().map_err(|violations| {
            MapError::Invalid(ValidationReport {
                violations,
                stats: None,
            })
        })?;
        Map::from_rotations(&rot)
    }
}

pub fn parse_map(text: &str) -> Result<Map, RotError> {
    Ok(parse(text)?.to_map()?)
}

/// Writes the canonical text form: vertices ascending, each rotation
/// starting at its smallest neighbour. Where parallel edges or loops make the
/// starting point matter for occurrence pairing, a consistent start is chosen.
pub fn emit(map: &Map) -> String {
    emit_with_comments(map, &[])
}

pub fn emit_with_comments(map: &Map, comments: &[String]) -> String {
    let starts = choose_starts(map);
    let mut out = String::new();
    for c in comments {
        out.push_str("# ");
        out.push_str(c);
        out.push('\n');
    }
    out.push_str(&format!("vertices: {}\n", map.num_vertices()));
    for v in 0..map.num_vertices() {
        let rot: Vec<Dart> = map.darts_at(v).collect();
        let s = starts[v];
        out.push_str(&format!("{v}:"));
        for i in 0..rot.len() {
            out.push(' ');
            out.push_str(&map.head(rot[(s + i) % rot.len()]).to_string());
        }
        out.push('\n');
    }
    out
}

fn choose_starts(map: &Map) -> Vec<usize> {
    let nv = map.num_vertices();
    let rots = map.rotations();
    let default: Vec<usize> = rots
        .iter()
        .map(|rot| {
            (0..rot.len())
                .min_by_key(|&i| (map.head(rot[i]), i))
                .unwrap_or(0)
        })
        .collect();
    if map.is_simple_graph() {
        return default;
    }
    // Vertices whose start affects pairing.
    let mut count: HashMap<(VertexId, VertexId), usize> = HashMap::new();
    for (a, b) in map.edge_list() {
        *count.entry((a.min(b), a.max(b))).or_default() += 1;
    }
    let mut critical = vec![false; nv];
    for (&(a, b), &c) in &count {
        if c > 1 || a == b {
            critical[a] = true;
            critical[b] = true;
        }
    }
    let order: Vec<VertexId> = (0..nv).filter(|&v| critical[v]).collect();
    let mut starts = default.clone();
    let mut assigned = vec![false; nv];
    for v in 0..nv {
        assigned[v] = !critical[v];
    }
    if backtrack(map, &rots, &order, 0, &default, &mut starts, &mut assigned) {
        starts
    } else {
        default
    }
}

fn seq_to(map: &Map, rot: &[Dart], start: usize, target: VertexId) -> Vec<usize> {
    (0..rot.len())
        .map(|i| rot[(start + i) % rot.len()])
        .filter(|&d| map.head(d) == target)
        .map(crate::map::edge_of)
        .collect()
}

fn consistent(
    map: &Map,
    rots: &[Vec<Dart>],
    starts: &[usize],
    assigned: &[bool],
    v: VertexId,
) -> bool {
    let rot = &rots[v];
    let mut nbrs: Vec<VertexId> = rot.iter().map(|&d| map.head(d)).collect();
    nbrs.sort_unstable();
    nbrs.dedup();
    for u in nbrs {
        if u == v {
            let loops: Vec<Dart> = (0..rot.len())
                .map(|i| rot[(starts[v] + i) % rot.len()])
                .filter(|&d| map.head(d) == v)
                .collect();
            if loops.chunks(2).any(|c| c.len() != 2 || c[0] ^ 1 != c[1]) {
                return false;
            }
        } else if assigned[u]
            && seq_to(map, rot, starts[v], u) != seq_to(map, &rots[u], starts[u], v)
        {
            return false;
        }
    }
    true
}

fn backtrack(
    map: &Map,
    rots: &[Vec<Dart>],
    order: &[VertexId],
    idx: usize,
    default: &[usize],
    starts: &mut Vec<usize>,
    assigned: &mut Vec<bool>,
) -> bool {
    let Some(&v) = order.get(idx) else {
        return true;
    };
    let len = rots[v].len();
    let candidates = std::iter::once(default[v]).chain((0..len).filter(|&i| i != default[v]));
    for s in candidates {
        starts[v] = s;
        assigned[v] = true;
        if consistent(map, rots, starts, assigned, v)
            && backtrack(map, rots, order, idx + 1, default, starts, assigned)
        {
            return true;
        }
        assigned[v] = false;
    }
    starts[v] = default[v];
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    const TETRA: &str = "vertices: 4\n0: 1 2 3\n1: 0 3 2\n2: 0 1 3\n3: 0 2 1\n";

    #[test]
    fn tetrahedron_round_trip_is_byte_exact() {
        let m = parse_map(TETRA).unwrap();
        assert_eq!(m.num_faces(), 4);
        assert_eq!(emit(&m), TETRA);
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let text = "# a comment\n\nvertices: 4 # four\n0: 1 2 3\n1: 0 3 2\n2: 0 1 3\n3: 0 2 1\n";
        assert_eq!(emit(&parse_map(text).unwrap()), TETRA);
    }

    #[test]
    fn parallel_edges_pair_by_occurrence() {
        // A digon: two parallel edges between 0 and 1.
        let m = parse_map("vertices: 2\n0: 1 1\n1: 0 0\n").unwrap();
        assert_eq!(m.num_edges(), 2);
        assert!(m.has_parallel_edges());
        assert_eq!(m.num_faces(), 2);
        let again = parse_map(&emit(&m)).unwrap();
        assert_eq!(again.face_sizes_desc(), m.face_sizes_desc());
    }

    #[test]
    fn dangling_dart_reported() {
        let r = parse("vertices: 3\n0: 1 2\n1: 0\n2: 1\n").unwrap();
        let report = r.validate();
        assert!(!report.is_valid());
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::DanglingDart { .. })));
    }

    #[test]
    fn odd_euler_characteristic_parses_but_fails_validation() {
        // An edge plus an isolated vertex: V=3, E=1, F=1, chi=3.
        let r = parse("vertices: 3\n0: 1\n1: 0\n").unwrap();
        let report = r.validate();
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::OddEulerCharacteristic(3))));
    }

    #[test]
    fn parse_errors_carry_position() {
        let e = parse("vertices: 2\n0: 1 x\n").unwrap_err();
        assert_eq!(e.line, 2);
        assert_eq!(e.column, 6);
        let e = parse("0: 1\n").unwrap_err();
        assert_eq!(e.line, 1);
    }
}
