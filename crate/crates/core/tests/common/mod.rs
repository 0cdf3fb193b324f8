//! Brute-force generators shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use ormaps::{canonical_code, CanonicalCode, Map};

/// Every cyclic order of `items`, each starting with `items[0]`.
fn cyclic_orders(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 2 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    let mut rest = items[1..].to_vec();
    permute(&mut rest, 0, &mut |p| {
        let mut v = vec![items[0]];
        v.extend_from_slice(p);
        out.push(v);
    });
    out
}

fn permute(xs: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == xs.len() {
        f(xs);
        return;
    }
    for i in k..xs.len() {
        xs.swap(k, i);
        permute(xs, k + 1, f);
        xs.swap(k, i);
    }
}

/// Calls `f` on every map whose graph is the given simple graph on `n`
/// vertices, one per rotation system.
pub fn for_each_embedding(n: usize, edges: &[(usize, usize)], f: &mut dyn FnMut(Map)) {
    let mut at: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (e, &(a, b)) in edges.iter().enumerate() {
        at[a].push(2 * e);
        at[b].push(2 * e + 1);
    }
    if at.iter().any(|l| l.is_empty()) {
        return;
    }
    let choices: Vec<Vec<Vec<usize>>> = at.iter().map(|l| cyclic_orders(l)).collect();
    let mut idx = vec![0; n];
    loop {
        let rot: Vec<Vec<usize>> = (0..n).map(|v| choices[v][idx[v]].clone()).collect();
        if let Ok(m) = Map::from_rotations(&rot) {
            f(m);
        }
        let mut p = 0;
        while p < n {
            idx[p] += 1;
            if idx[p] < choices[p].len() {
                break;
            }
            idx[p] = 0;
            p += 1;
        }
        if p == n {
            return;
        }
    }
}

/// Every connected simple graph on exactly `n` labelled vertices, as edge lists.
pub fn connected_graphs(n: usize) -> Vec<Vec<(usize, usize)>> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .collect();
    let mut out = Vec::new();
    for mask in 0u64..(1 << pairs.len()) {
        let edges: Vec<(usize, usize)> = (0..pairs.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| pairs[i])
            .collect();
        let mut comp: Vec<usize> = (0..n).collect();
        fn find(c: &mut Vec<usize>, x: usize) -> usize {
            if c[x] != x {
                let r = find(c, c[x]);
                c[x] = r;
            }
            c[x]
        }
        for &(a, b) in &edges {
            let (ra, rb) = (find(&mut comp, a), find(&mut comp, b));
            comp[ra] = rb;
        }
        let root = find(&mut comp, 0);
        if (0..n).all(|v| find(&mut comp, v) == root) {
            out.push(edges);
        }
    }
    out
}

/// Canonical codes of all maps on at most `max_n` vertices passing `keep`.
pub fn brute_force_codes(max_n: usize, keep: &dyn Fn(&Map) -> bool) -> BTreeSet<CanonicalCode> {
    let mut out = BTreeSet::new();
    for n in 2..=max_n {
        for edges in connected_graphs(n) {
            for_each_embedding(n, &edges, &mut |m| {
                if keep(&m) {
                    out.insert(canonical_code(&m));
                }
            });
        }
    }
    out
}
