//! Face-by-face construction of rotation systems on subgraphs of `K_n`.
//!
//! Faces are traced one dart at a time. Taking the step `u -> v -> w` fixes
//! `next(v->u) = v->w` in the rotation at `v`, so each vertex collects a
//! partial cyclic order. A chain may only close into a cycle once it holds
//! every neighbour of the vertex, which then accepts no new edges. After a
//! face closes, the next one starts at the least dart whose reverse is
//! already traced; with no such dart left the map is complete.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::Instant;

use crate::map::{Dart, Map};

const NONE: u8 = u8::MAX;

/// Which faces may border the seeded faces, and how often.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NeighborRule {
    Any,
    /// Every seeded edge borders a different face.
    Distinct,
    /// All seeded edges border one and the same face.
    Single,
}

/// Sizes allowed for faces traced after the seeds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SizeRule {
    AtMost(usize),
    /// Triangles, plus exactly these larger sizes once each.
    TrianglesAnd(Vec<usize>),
}

#[derive(Debug, Clone)]
pub struct Rules {
    pub max_vertices: usize,
    /// Whether unseeded faces may introduce vertices.
    pub new_vertices: bool,
    /// Edges a seeded face may share with one other face; `None` for no limit.
    pub seed_share_limit: Option<usize>,
    pub neighbor: NeighborRule,
    pub sizes: SizeRule,
    pub min_degree: usize,
    pub max_edges: usize,
}

/// Shared node and time budget for a batch of traces.
#[derive(Debug)]
pub struct Budget {
    pub max_nodes: u64,
    pub deadline: Option<Instant>,
    nodes: AtomicU64,
    exhausted: AtomicBool,
}

impl Budget {
    pub fn new(max_nodes: u64, deadline: Option<Instant>) -> Budget {
        Budget {
            max_nodes,
            deadline,
            nodes: AtomicU64::new(0),
            exhausted: AtomicBool::new(false),
        }
    }

    pub fn nodes(&self) -> u64 {
        self.nodes.load(Ordering::Relaxed)
    }

    pub fn exhausted(&self) -> bool {
        self.exhausted.load(Ordering::Relaxed)
    }

    fn tick(&self) -> bool {
        let n = self.nodes.fetch_add(1, Ordering::Relaxed);
        if n >= self.max_nodes {
            self.exhausted.store(true, Ordering::Relaxed);
        }
        if n.is_multiple_of(4096) {
            if let Some(d) = self.deadline {
                if Instant::now() >= d {
                    self.exhausted.store(true, Ordering::Relaxed);
                }
            }
        }
        !self.exhausted()
    }
}

#[derive(Clone)]
struct Current {
    start: (u8, u8),
    last: (u8, u8),
    id: u8,
    darts: Vec<(u8, u8)>,
    seed_border: usize,
    max_len: usize,
}

#[derive(Clone)]
struct State {
    n: usize,
    touched: usize,
    face_of: Vec<u8>,
    nxt: Vec<u8>,
    prv: Vec<u8>,
    nbr: Vec<u32>,
    closed: Vec<bool>,
    edges: usize,
    faces: u8,
    seeded: u8,
    seed_len: usize,
    sizes_left: Vec<usize>,
    cur: Option<Current>,
}

impl State {
    fn idx(&self, a: u8, b: u8) -> usize {
        a as usize * self.n + b as usize
    }

    fn dart_face(&self, a: u8, b: u8) -> u8 {
        self.face_of[self.idx(a, b)]
    }

    fn link(&mut self, rules: &Rules, v: u8, u: u8, w: u8, seeding: bool) -> bool {
        let (iu, iw) = (self.idx(v, u), self.idx(v, w));
        if w == u || self.nxt[iu] != NONE || self.prv[iw] != NONE {
            return false;
        }
        if self.nbr[v as usize] & (1 << w) == 0 {
            if self.closed[v as usize] || (w as usize) < self.touched && self.closed[w as usize] {
                return false;
            }
            if w as usize == self.touched {
                if !(seeding || rules.new_vertices) || self.touched >= self.n {
                    return false;
                }
                self.touched += 1;
            } else if w as usize > self.touched {
                return false;
            }
            self.nbr[v as usize] |= 1 << w;
            self.nbr[w as usize] |= 1 << v;
            self.edges += 1;
            if self.edges > rules.max_edges {
                return false;
            }
        }
        self.nxt[iu] = w;
        self.prv[iw] = u;
        let mut len = 1;
        let mut x = w;
        loop {
            let y = self.nxt[self.idx(v, x)];
            if y == NONE {
                return true;
            }
            if y == w {
                break;
            }
            len += 1;
            x = y;
        }
        let deg = self.nbr[v as usize].count_ones() as usize;
        if len != deg || deg < rules.min_degree {
            return false;
        }
        self.closed[v as usize] = true;
        true
    }

    /// Appends the dart `a -> b` to the current face.
    fn add_dart(&mut self, rules: &Rules, a: u8, b: u8) -> bool {
        let id = self.cur.as_ref().unwrap().id;
        let i = self.idx(a, b);
        if self.face_of[i] != NONE {
            return false;
        }
        self.face_of[i] = id;
        let other = self.dart_face(b, a);
        let seeded = self.seeded;
        let seed_len = self.seed_len;
        let face_of = &self.face_of;
        let n = self.n;
        let cur = self.cur.as_mut().unwrap();
        cur.darts.push((a, b));
        cur.last = (a, b);
        if cur.darts.len() > cur.max_len {
            return false;
        }
        if other == NONE {
            return true;
        }
        if other == id {
            return false;
        }
        let shared = cur
            .darts
            .iter()
            .filter(|&&(x, y)| face_of[y as usize * n + x as usize] == other)
            .count();
        let in_seed = id < seeded;
        if other < seeded {
            if in_seed {
                return false;
            }
            cur.seed_border += 1;
            if rules.neighbor == NeighborRule::Distinct && cur.seed_border > 1 {
                return false;
            }
            if rules.neighbor == NeighborRule::Single
                && cur.max_len - cur.darts.len() < seed_len - cur.seed_border
            {
                return false;
            }
            if let Some(l) = rules.seed_share_limit {
                if shared > l {
                    return false;
                }
            }
            true
        } else if in_seed {
            rules.seed_share_limit.is_none_or(|l| shared <= l)
        } else {
            shared <= 1
        }
    }

    fn close_face(&mut self, rules: &Rules) -> bool {
        let cur = self.cur.take().unwrap();
        let len = cur.darts.len();
        if len < 3 {
            return false;
        }
        if cur.id >= self.seeded {
            if len > 3 {
                if let SizeRule::TrianglesAnd(_) = rules.sizes {
                    match self.sizes_left.iter().position(|&s| s == len) {
                        Some(p) => {
                            self.sizes_left.remove(p);
                        }
                        None => return false,
                    }
                }
            }
            if rules.neighbor == NeighborRule::Single
                && cur.seed_border > 0
                && cur.seed_border != self.seed_len
            {
                return false;
            }
        }
        self.faces += 1;
        true
    }

    fn max_len(&self, rules: &Rules) -> usize {
        match &rules.sizes {
            SizeRule::AtMost(m) => *m,
            SizeRule::TrianglesAnd(_) => self.sizes_left.iter().copied().max().unwrap_or(3).max(3),
        }
    }

    fn open_face(&mut self, rules: &Rules, a: u8, b: u8, max_len: usize) -> bool {
        if self.faces as usize >= NONE as usize - 1 {
            return false;
        }
        self.cur = Some(Current {
            start: (a, b),
            last: (a, b),
            id: self.faces,
            darts: Vec::new(),
            seed_border: 0,
            max_len,
        });
        self.add_dart(rules, a, b)
    }

    /// Continues the current face from its last dart to vertex `w`.
    fn advance(&self, rules: &Rules, w: u8, seeding: bool) -> Option<State> {
        let mut s = self.clone();
        let cur = s.cur.as_ref().unwrap();
        let (u, v) = cur.last;
        let start = cur.start;
        let forced = s.nxt[s.idx(v, u)];
        if forced == NONE {
            if !s.link(rules, v, u, w, seeding) {
                return None;
            }
        } else if forced != w {
            return None;
        }
        let ok = if (v, w) == start {
            s.close_face(rules)
        } else {
            s.add_dart(rules, v, w)
        };
        ok.then_some(s)
    }

    fn pending(&self) -> Option<(u8, u8)> {
        for a in 0..self.touched as u8 {
            for b in 0..self.touched as u8 {
                if self.dart_face(a, b) == NONE && a != b && self.dart_face(b, a) != NONE {
                    return Some((a, b));
                }
            }
        }
        None
    }

    fn connected(&self) -> bool {
        let mut seen: u32 = 1;
        let mut stack = vec![0usize];
        while let Some(v) = stack.pop() {
            let fresh = self.nbr[v] & !seen;
            seen |= fresh;
            stack.extend((0..self.touched).filter(|&w| fresh >> w & 1 == 1));
        }
        seen.count_ones() as usize == self.touched
    }

    fn to_map(&self) -> Map {
        let t = self.touched;
        let mut edge_id = vec![usize::MAX; t * t];
        let mut e = 0;
        for a in 0..t {
            for b in a + 1..t {
                if self.nbr[a] & (1 << b) != 0 {
                    edge_id[a * t + b] = e;
                    edge_id[b * t + a] = e;
                    e += 1;
                }
            }
        }
        let dart = |a: usize, b: usize| -> Dart { 2 * edge_id[a * t + b] + usize::from(a > b) };
        let rotations: Vec<Vec<Dart>> = (0..t)
            .map(|v| {
                let first = self.nbr[v].trailing_zeros() as usize;
                let deg = self.nbr[v].count_ones() as usize;
                let mut list = Vec::with_capacity(deg);
                let mut x = first;
                for _ in 0..deg {
                    list.push(dart(v, x));
                    x = self.nxt[v * self.n + x] as usize;
                }
                list
            })
            .collect();
        Map::from_rotations(&rotations).expect("traced rotation system is valid")
    }
}

/// Traces every completion of the seeded faces. `seeds` are closed vertex
/// walks whose labels appear in first-use order starting from 0. Returns
/// `false` when the visitor asked to stop.
pub fn trace(
    rules: &Rules,
    seeds: &[Vec<u8>],
    budget: &Budget,
    cancel: &dyn Fn() -> bool,
    visit: &mut dyn FnMut(Map) -> bool,
) -> bool {
    let n = rules.max_vertices;
    assert!(n <= 32, "at most 32 vertices");
    let mut s = State {
        n,
        touched: 0,
        face_of: vec![NONE; n * n],
        nxt: vec![NONE; n * n],
        prv: vec![NONE; n * n],
        nbr: vec![0; n],
        closed: vec![false; n],
        edges: 0,
        faces: 0,
        seeded: seeds.len() as u8,
        seed_len: seeds.iter().map(Vec::len).sum(),
        sizes_left: match &rules.sizes {
            SizeRule::TrianglesAnd(v) => v.iter().copied().filter(|&x| x > 3).collect(),
            SizeRule::AtMost(_) => Vec::new(),
        },
        cur: None,
    };
    for walk in seeds {
        let k = walk.len();
        if k < 3 {
            return true;
        }
        for &x in &walk[..2] {
            if x as usize == s.touched && s.touched < n {
                s.touched += 1;
            }
        }
        if walk[0] as usize >= s.touched || walk[1] as usize >= s.touched || walk[0] == walk[1] {
            return true;
        }
        // Opening adds the edge only once the first link is made; record it now.
        let (a, b) = (walk[0], walk[1]);
        if s.nbr[a as usize] & (1 << b) == 0 {
            if s.closed[a as usize] || s.closed[b as usize] {
                return true;
            }
            s.nbr[a as usize] |= 1 << b;
            s.nbr[b as usize] |= 1 << a;
            s.edges += 1;
        }
        if !s.open_face(rules, a, b, k) {
            return true;
        }
        for i in 2..=k + 1 {
            let w = walk[i % k];
            match s.advance(rules, w, true) {
                Some(t) => s = t,
                None => return true,
            }
        }
        if s.cur.is_some() {
            return true;
        }
    }
    let mut ctx = Ctx {
        rules,
        budget,
        cancel,
        visit,
    };
    ctx.dfs(s)
}

struct Ctx<'a> {
    rules: &'a Rules,
    budget: &'a Budget,
    cancel: &'a dyn Fn() -> bool,
    visit: &'a mut dyn FnMut(Map) -> bool,
}

impl Ctx<'_> {
    fn dfs(&mut self, s: State) -> bool {
        let rules = self.rules;
        if !self.budget.tick() || (self.cancel)() {
            return false;
        }
        let Some(cur) = s.cur.as_ref() else {
            return match s.pending() {
                Some((a, b)) => {
                    let mut t = s.clone();
                    let max_len = t.max_len(rules);
                    if t.open_face(rules, a, b, max_len) {
                        self.dfs(t)
                    } else {
                        true
                    }
                }
                None if s.connected() => (self.visit)(s.to_map()),
                None => true,
            };
        };
        let (u, v) = cur.last;
        let forced = s.nxt[s.idx(v, u)];
        if forced != NONE {
            return match s.advance(rules, forced, false) {
                Some(t) => self.dfs(t),
                None => true,
            };
        }
        if cur.darts.len() == cur.max_len {
            if v != cur.start.0 {
                return true;
            }
            return match s.advance(rules, cur.start.1, false) {
                Some(t) => self.dfs(t),
                None => true,
            };
        }
        let limit = if rules.new_vertices {
            (s.touched + 1).min(s.n)
        } else {
            s.touched
        };
        for w in 0..limit as u8 {
            if w == v || w == u {
                continue;
            }
            if let Some(t) = s.advance(rules, w, false) {
                if !self.dfs(t) {
                    return false;
                }
            }
        }
        true
    }
}

/// Seed walks with the given lengths, labelled in first-use order over
/// their concatenation with at most `max_vertices` labels. Each walk is
/// closed, consecutive vertices differ and no dart repeats.
pub fn seed_walks(lengths: &[usize], max_vertices: usize) -> Vec<Vec<Vec<u8>>> {
    fn go(total: usize, cur: &mut Vec<u8>, next_new: u8, max: u8, out: &mut Vec<Vec<u8>>) {
        if cur.len() == total {
            out.push(cur.clone());
            return;
        }
        for x in 0..=next_new.min(max - 1) {
            cur.push(x);
            go(
                total,
                cur,
                if x == next_new {
                    next_new + 1
                } else {
                    next_new
                },
                max,
                out,
            );
            cur.pop();
        }
    }
    let total: usize = lengths.iter().sum();
    let mut flat = Vec::new();
    go(total, &mut Vec::new(), 0, max_vertices as u8, &mut flat);
    flat.into_iter()
        .filter_map(|f| {
            let mut walks = Vec::new();
            let mut at = 0;
            for &l in lengths {
                walks.push(f[at..at + l].to_vec());
                at += l;
            }
            let mut darts: Vec<(u8, u8)> = walks
                .iter()
                .flat_map(|w| (0..w.len()).map(move |i| (w[i], w[(i + 1) % w.len()])))
                .collect();
            if darts.iter().any(|&(a, b)| a == b) {
                return None;
            }
            darts.sort_unstable();
            darts.windows(2).all(|p| p[0] != p[1]).then_some(walks)
        })
        .collect()
}

/// Renames labels to first-use order, relative to labels below `base`
/// which stay fixed.
pub fn first_use(walks: &[Vec<u8>], base: u8) -> Vec<Vec<u8>> {
    let mut map = [NONE; 256];
    for x in 0..base {
        map[x as usize] = x;
    }
    let mut next = base;
    walks
        .iter()
        .map(|w| {
            w.iter()
                .map(|&x| {
                    if map[x as usize] == NONE {
                        map[x as usize] = next;
                        next += 1;
                    }
                    map[x as usize]
                })
                .collect()
        })
        .collect()
}
