//! Canonical codes for maps up to orientation-preserving isomorphism.
//!
//! From a start dart the darts are numbered in breadth-first order of
//! discovery through `reverse` and `next`; the code lists, for every dart in
//! numbering order, the numbers of its reverse and rotation successor. The
//! code fixes both permutations, so two maps share the minimum code over all
//! start darts exactly when they are isomorphic.

use crate::map::{reverse, Dart, Map};

/// Opaque byte string; equal codes mean isomorphic maps.
pub type CanonicalCode = Vec<u8>;

fn code_from(map: &Map, start: Dart, best: Option<&[u32]>) -> Option<Vec<u32>> {
    let n = map.num_darts();
    let mut number = vec![u32::MAX; n];
    let mut order = Vec::with_capacity(n);
    number[start] = 0;
    order.push(start);
    let mut code = Vec::with_capacity(2 * n);
    let mut smaller = false;
    let mut head = 0;
    while head < order.len() {
        let d = order[head];
        head += 1;
        for x in [reverse(d), map.next(d)] {
            if number[x] == u32::MAX {
                number[x] = order.len() as u32;
                order.push(x);
            }
            let val = number[x];
            if let (Some(b), false) = (best, smaller) {
                let pos = code.len();
                match val.cmp(&b[pos]) {
                    std::cmp::Ordering::Greater => return None,
                    std::cmp::Ordering::Less => smaller = true,
                    std::cmp::Ordering::Equal => {}
                }
            }
            code.push(val);
        }
    }
    Some(code)
}

fn min_code(map: &Map, starts: impl Iterator<Item = Dart>) -> Vec<u32> {
    let mut best: Option<Vec<u32>> = None;
    for s in starts {
        if let Some(c) = code_from(map, s, best.as_deref()) {
            best = Some(c);
        }
    }
    best.unwrap_or_default()
}

fn to_bytes(map: &Map, code: &[u32]) -> CanonicalCode {
    let mut out = Vec::with_capacity(8 + 4 * code.len());
    out.extend_from_slice(&(map.num_darts() as u32).to_be_bytes());
    out.extend_from_slice(&(map.num_vertices() as u32).to_be_bytes());
    for &c in code {
        out.extend_from_slice(&c.to_be_bytes());
    }
    out
}

/// Minimum breadth-first code over every start dart.
pub fn canonical_code(map: &Map) -> CanonicalCode {
    // Only darts at vertices of the least (degree, face size) signature can
    // start a minimal code; the signature is an isomorphism invariant, so
    // restricting starts to that class keeps the code canonical.
    let sig = |d: Dart| {
        (
            map.degree(map.vertex_of(d)),
            map.face(map.face_of(d)).size(),
        )
    };
    let best_sig = (0..map.num_darts()).map(sig).min();
    let starts = (0..map.num_darts()).filter(|&d| Some(sig(d)) == best_sig);
    to_bytes(map, &min_code(map, starts))
}

/// Canonical code that also identifies a map with its mirror image.
pub fn unoriented_code(map: &Map) -> CanonicalCode {
    let a = canonical_code(map);
    let b = canonical_code(&map.mirror());
    a.min(b)
}

pub fn is_isomorphic(a: &Map, b: &Map) -> bool {
    a.num_darts() == b.num_darts()
        && a.num_vertices() == b.num_vertices()
        && canonical_code(a) == canonical_code(b)
}

/// Isomorphic to the mirror image of the other map.
pub fn is_mirror_equivalent(a: &Map, b: &Map) -> bool {
    is_isomorphic(a, &b.mirror())
}

/// A dart bijection respecting rotation and involution, found by plain
/// backtracking. Independent of the breadth-first code; used as an oracle.
pub fn brute_force_isomorphism(a: &Map, b: &Map) -> Option<Vec<Dart>> {
    let n = a.num_darts();
    if n != b.num_darts() || a.num_vertices() != b.num_vertices() || a.num_faces() != b.num_faces()
    {
        return None;
    }
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn consistent(a: &Map, b: &Map, image: &[usize], d: Dart) -> bool {
        let img = image[d];
        let checks = [
            (reverse(d), reverse(img)),
            (a.next(d), b.next(img)),
            (a.prev(d), b.prev(img)),
        ];
        checks
            .iter()
            .all(|&(x, y)| image[x] == usize::MAX || image[x] == y)
    }
    fn go(a: &Map, b: &Map, image: &mut Vec<usize>, used: &mut Vec<bool>, d: Dart) -> bool {
        if d == image.len() {
            return true;
        }
        for y in 0..image.len() {
            if used[y] {
                continue;
            }
            image[d] = y;
            used[y] = true;
            if consistent(a, b, image, d) && go(a, b, image, used, d + 1) {
                return true;
            }
            used[y] = false;
            image[d] = usize::MAX;
        }
        false
    }
    if go(a, b, &mut image, &mut used, 0) {
        Some(image)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rot::parse_map;

    fn tetra() -> Map {
        parse_map("vertices: 4\n0: 1 2 3\n1: 0 3 2\n2: 0 1 3\n3: 0 2 1\n").unwrap()
    }

    #[test]
    fn relabelings_share_code() {
        let t = tetra();
        let r = t.relabeled(
            &[5, 3, 1, 0, 2, 4],
            &[true, false, true, true, false, false],
            &[2, 0, 3, 1],
        );
        assert_eq!(canonical_code(&t), canonical_code(&r));
        assert!(brute_force_isomorphism(&t, &r).is_some());
    }

    #[test]
    fn different_sizes_differ() {
        let k2 = parse_map("vertices: 2\n0: 1\n1: 0\n").unwrap();
        assert_ne!(canonical_code(&tetra()), canonical_code(&k2));
    }

    #[test]
    fn tetrahedron_is_mirror_symmetric() {
        let t = tetra();
        assert!(is_mirror_equivalent(&t, &t));
        assert_eq!(unoriented_code(&t), unoriented_code(&t.mirror()));
    }
}
