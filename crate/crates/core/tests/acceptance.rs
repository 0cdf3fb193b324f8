//! Acceptance run: one line per criterion, non-zero exit if any fails.
//!
//! Set `ORMAPS_LONG=1` to also run the optional empty 9-cycle search.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use ormaps::bounds::{
    check_1cut_threshold, check_2cut_threshold, g_min, genus_lower_bound, min1f, min2f,
    ThresholdVerdict,
};
use ormaps::canon::brute_force_isomorphism;
use ormaps::connectivity::{
    map_connectivity, vertex_connectivity, vertex_connectivity_brute_force,
    vertex_connectivity_flow, Graph,
};
use ormaps::corpus::{connected_graphs, for_each_rotation_system, map_corpus};
use ormaps::dual::{doubly_intersecting, dual, dual_simplicity};
use ormaps::families;
use ormaps::search::witness::check_witness;
use ormaps::search::{
    search_empty_9_cycle, search_witness, verify_remark24, CaseStatus, SearchBudget, WitnessSpec,
};
use ormaps::surgery::pipeline::{pipeline_delta1_witness, Ingredients};
use ormaps::surgery::{glue_faces, insert_cycle_in_triangles, GlueSpec, PivotOrder};
use ormaps::{canonical_code, FaceId, Map, VertexId};

struct Outcome {
    pass: Option<bool>,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome {
        pass: Some(pass),
        detail,
    }
}

fn secs(d: Duration) -> f64 {
    d.as_secs_f64()
}

fn dual_kappa(map: &Map) -> Option<usize> {
    vertex_connectivity(&Graph::from_map(&dual(map).dual)).ok()
}

fn criterion_1() -> Outcome {
    let budget = SearchBudget {
        max_nodes: u64::MAX,
        time_limit: Some(Duration::from_secs(2 * 3600)),
    };
    let reports = verify_remark24(&[], &budget);
    let mut ok = reports.len() == 14;
    let mut worst_small: f64 = 0.0;
    let mut worst_seven: f64 = 0.0;
    for r in &reports {
        println!("    {r}");
        ok &= r.status == CaseStatus::Certified;
        if r.spec.k == 7 {
            worst_seven = worst_seven.max(secs(r.elapsed));
        } else {
            worst_small = worst_small.max(secs(r.elapsed));
        }
    }
    ok &= worst_small <= 600.0 && worst_seven <= 7200.0;
    let certified = reports
        .iter()
        .filter(|r| r.status == CaseStatus::Certified)
        .count();
    outcome(
        ok,
        format!(
            "{certified}/{} sub-cases certified; slowest k<=6 {worst_small:.1}s (limit 600s), slowest k=7 {worst_seven:.1}s (limit 7200s)",
            reports.len()
        ),
    )
}

fn criterion_2(outputs: &mut Vec<Map>) -> Outcome {
    let expect = [(1, 6), (3, 9)];
    let mut ok = true;
    let mut parts = Vec::new();
    for (c, size) in expect {
        let t = Instant::now();
        let r = pipeline_delta1_witness(c, &Ingredients::default());
        let elapsed = secs(t.elapsed());
        let Ok(out) = r else {
            ok = false;
            parts.push(format!("c={c}: pipeline failed: {}", r.unwrap_err()));
            continue;
        };
        let m = out.map;
        let kappa = map_connectivity(&m).ok();
        let simple = dual_simplicity(&m).is_simple();
        let dk = dual_kappa(&m);
        let mut sizes = m.face_sizes_desc();
        let largest = sizes.remove(0);
        let faces_ok = largest == size && min1f(c) == size && sizes.iter().all(|&s| s == 3);
        let good = kappa == Some(c) && simple && dk == Some(1) && faces_ok && elapsed <= 60.0;
        ok &= good;
        parts.push(format!(
            "c={c}: V={} E={} genus={} kappa={kappa:?} dual simple={simple} kappa(dual)={dk:?} faces={{{largest},3x{}}} {elapsed:.2}s",
            m.num_vertices(),
            m.num_edges(),
            m.genus(),
            sizes.len()
        ));
        outputs.push(m);
    }
    outcome(ok, parts.join("; "))
}

fn criterion_3(outputs: &mut Vec<Map>) -> Outcome {
    let budget = SearchBudget {
        max_nodes: u64::MAX,
        time_limit: Some(Duration::from_secs(1800)),
    };
    let runs = [(2, 7, true), (4, 10, true), (2, 6, false), (4, 9, false)];
    let mut ok = true;
    let mut parts = Vec::new();
    for (c, sum, want) in runs {
        let spec = WitnessSpec::two_cut(c, sum, 8);
        let r = search_witness(&spec, &budget);
        let found = !r.maps.is_empty();
        let mut good = r.complete && found == want;
        for m in &r.maps {
            good &= check_witness(m, &spec) && independent_two_cut_check(m, c, sum);
        }
        ok &= good;
        let shape = r.maps.first().map_or("none".to_string(), |m| {
            format!(
                "V={} E={} genus={} faces={:?}",
                m.num_vertices(),
                m.num_edges(),
                m.genus(),
                m.face_sizes_desc()
            )
        });
        parts.push(format!(
            "c={c} sum={sum}: {shape}, complete={} {:.1}s",
            r.complete,
            secs(r.elapsed)
        ));
        outputs.extend(r.maps);
    }
    outcome(ok, parts.join("; "))
}

/// Rebuilds the demands from primitives: a doubly intersecting pair of the
/// given total size, triangles elsewhere, simple dual with connectivity 2,
/// and a c-connected map.
fn independent_two_cut_check(m: &Map, c: usize, sum: usize) -> bool {
    let nf = m.num_faces();
    let pair = (0..nf).any(|f| {
        (f + 1..nf).any(|g| {
            m.face(f).size() + m.face(g).size() == sum
                && doubly_intersecting(m, f, g)
                && (0..nf).all(|h| h == f || h == g || m.face(h).size() == 3)
        })
    });
    let g = Graph::from_map(m);
    pair && dual_simplicity(m).is_simple()
        && dual_kappa(m) == Some(2)
        && vertex_connectivity_brute_force(&g).is_ok_and(|k| k >= c)
}

fn criterion_4(corpus: &[Map], extra: &[Map]) -> Outcome {
    let t = Instant::now();
    let mut checked = 0;
    let mut guaranteed = 0;
    let mut counterexamples = 0;
    for m in corpus.iter().chain(extra) {
        let Ok(kappa) = map_connectivity(m) else {
            continue;
        };
        if !m.is_simple_graph() || !dual_simplicity(m).is_simple() {
            continue;
        }
        let measured = dual_kappa(m);
        for c in 1..=kappa {
            for verdict in [check_2cut_threshold(m, c), check_1cut_threshold(m, c)] {
                let Ok(v) = verdict else { continue };
                checked += 1;
                if let ThresholdVerdict::Guaranteed(k) = v {
                    guaranteed += 1;
                    if measured.is_none_or(|d| d < k) {
                        counterexamples += 1;
                    }
                }
            }
        }
    }
    let elapsed = secs(t.elapsed());
    outcome(
        counterexamples == 0 && elapsed <= 1800.0,
        format!(
            "{} maps ({} corpus), {checked} verdicts, {guaranteed} guarantees, {counterexamples} counterexamples, {elapsed:.1}s",
            corpus.len() + extra.len(),
            corpus.len()
        ),
    )
}

fn criterion_5() -> Outcome {
    let lb = genus_lower_bound(7, 0, 11);
    let table1: Vec<usize> = (1..=8).map(min1f).collect();
    let table2: Vec<usize> = (1..=8).map(min2f).collect();
    let ok = g_min(7) == 2
        && lb == Ok(4)
        && lb == Ok(g_min(7) + 2)
        && table1 == [6, 9, 9, 10, 10, 12, 14, 15]
        && table2 == [7, 7, 10, 10, 12, 12, 12, 12];
    outcome(
        ok,
        format!(
            "g_min(7)={} genus_lower_bound(7,0,11)={lb:?} min1f(1..8)={table1:?} min2f(1..8)={table2:?}",
            g_min(7)
        ),
    )
}

fn criterion_6(extra: &mut Vec<Map>) -> Outcome {
    let t = Instant::now();
    let g = families::torus_grid(6, 6);
    let mut tris = [0; 6];
    let mut pivots = [0; 6];
    let corners = [(0, 0), (0, 3), (2, 3), (4, 3), (4, 0), (2, 0)];
    for (k, &(i, j)) in corners.iter().enumerate() {
        let mut want = vec![i * 6 + j, (i + 1) * 6 + j, (i + 1) * 6 + j + 1];
        want.sort_unstable();
        tris[k] = (0..g.num_faces())
            .find(|&f| {
                let mut vs = g.face_vertices(f);
                vs.sort_unstable();
                vs == want
            })
            .expect("grid triangle");
        pivots[k] = i * 6 + j;
    }
    let mut ok = g.num_vertices() >= 33;
    let mut detail = String::new();
    for order in [PivotOrder::PreviousFirst, PivotOrder::NextFirst] {
        match insert_cycle_in_triangles(&g, &tris, &pivots, order) {
            Ok(r) => {
                let m = &r.map;
                let de = m.num_edges() as i64 - g.num_edges() as i64;
                let df = m.num_faces() as i64 - g.num_faces() as i64;
                let dg = m.genus() as i64 - g.genus() as i64;
                let dchi = m.euler_characteristic() - g.euler_characteristic();
                let hex_ok = m.face(r.hexagon).size() == 6
                    && m.face(r.hexagon)
                        .darts
                        .iter()
                        .all(|&d| m.face_of(d ^ 1) == r.big_face);
                let good = de == 6
                    && df == -4
                    && dg == 5
                    && dchi == -10
                    && m.face(r.big_face).size() == 24
                    && hex_ok;
                ok &= good;
                if detail.is_empty() {
                    detail = format!(
                        "V={} dE={de:+} dF={df:+} dgenus={dg:+} dchi={dchi:+} 24-gon and edge-disjoint hexagon={}",
                        g.num_vertices(),
                        m.face(r.big_face).size() == 24 && hex_ok
                    );
                }
                extra.push(r.map);
            }
            Err(e) => {
                ok = false;
                detail = format!("insertion failed: {e}");
            }
        }
    }
    let (glued, tries) = random_gluings(100);
    ok &= glued == 100;
    let elapsed = secs(t.elapsed());
    ok &= elapsed <= 300.0;
    outcome(
        ok,
        format!("{detail}; {glued}/100 random gluings additive ({tries} attempts); {elapsed:.2}s"),
    )
}

fn cycle_faces(m: &Map) -> Vec<FaceId> {
    (0..m.num_faces())
        .filter(|&f| {
            let mut vs: Vec<VertexId> = m.face_vertices(f);
            let n = vs.len();
            vs.sort_unstable();
            vs.dedup();
            vs.len() == n && n >= 3
        })
        .collect()
}

/// Glues random face pairs of small maps and checks that genus, vertex,
/// edge and face counts add up. Returns successes and attempts.
fn random_gluings(target: usize) -> (usize, usize) {
    let mut pool: Vec<Map> = map_corpus(12)
        .into_iter()
        .filter(|m| !cycle_faces(m).is_empty())
        .collect();
    pool.extend([
        families::tetrahedron(),
        families::cube(),
        families::octahedron(),
        families::wheel(5),
        families::k7_torus(),
        families::torus_grid(3, 4),
    ]);
    let mut rng = StdRng::seed_from_u64(20);
    let (mut done, mut tries) = (0, 0);
    while done < target && tries < 100 * target {
        tries += 1;
        let a = pool.choose(&mut rng).unwrap();
        let b = pool.choose(&mut rng).unwrap();
        let fa = *cycle_faces(a).choose(&mut rng).unwrap();
        let size = a.face(fa).size();
        let fbs: Vec<FaceId> = cycle_faces(b)
            .into_iter()
            .filter(|&f| b.face(f).size() == size)
            .collect();
        let Some(&fb) = fbs.choose(&mut rng) else {
            continue;
        };
        let spec = GlueSpec {
            face_a: fa,
            face_b: fb,
            offset: rng.gen_range(0..size),
            mirror_b: rng.gen(),
            require_simple: false,
        };
        let Ok(m) = glue_faces(a, b, &spec) else {
            continue;
        };
        let additive = m.genus() == a.genus() + b.genus()
            && m.num_vertices() + size == a.num_vertices() + b.num_vertices()
            && m.num_edges() + size == a.num_edges() + b.num_edges()
            && m.num_faces() + 2 == a.num_faces() + b.num_faces();
        if !additive {
            return (done, tries);
        }
        done += 1;
    }
    (done, tries)
}

fn criterion_7(corpus: &[Map]) -> Outcome {
    let t = Instant::now();
    let involution = corpus
        .iter()
        .filter(|m| canonical_code(&dual(&dual(m).dual).dual) == canonical_code(m))
        .count();

    let mut flow_checked = 0;
    let mut flow_agree = 0;
    for m in corpus.iter().filter(|m| m.num_vertices() <= 10) {
        let g = Graph::from_map(m);
        flow_checked += 1;
        if vertex_connectivity_flow(&g).ok() == vertex_connectivity_brute_force(&g).ok() {
            flow_agree += 1;
        }
    }

    let (pairs, iso_agree) = canonical_vs_brute_force();
    let ok = involution == corpus.len() && flow_agree == flow_checked && iso_agree == pairs;
    outcome(
        ok,
        format!(
            "dual involution {involution}/{}; flow=brute kappa {flow_agree}/{flow_checked}; code=iso {iso_agree}/{pairs} pairs; {:.1}s",
            corpus.len(),
            secs(t.elapsed())
        ),
    )
}

/// Compares canonical-code equality with brute-force isomorphism on every
/// pair of rotation systems of each graph with at most 6 edges, on a random
/// relabelling of each, and on every pair of distinct corpus maps.
fn canonical_vs_brute_force() -> (usize, usize) {
    let mut rng = StdRng::seed_from_u64(7);
    let (mut pairs, mut agree) = (0, 0);
    let mut check = |a: &Map, b: &Map| {
        pairs += 1;
        let by_code = canonical_code(a) == canonical_code(b);
        if by_code == brute_force_isomorphism(a, b).is_some() {
            agree += 1;
        }
    };
    for g in connected_graphs(6).into_iter().flatten() {
        let mut maps = Vec::new();
        for_each_rotation_system(&g, &mut |m| maps.push(m));
        for i in 0..maps.len() {
            let r = shuffled(&maps[i], &mut rng);
            check(&maps[i], &r);
            for j in i + 1..maps.len() {
                check(&maps[i], &maps[j]);
            }
        }
    }
    let small = map_corpus(12);
    for i in 0..small.len() {
        for j in i + 1..small.len() {
            check(&small[i], &small[j]);
        }
    }
    (pairs, agree)
}

fn shuffled(m: &Map, rng: &mut StdRng) -> Map {
    let mut edges: Vec<usize> = (0..m.num_edges()).collect();
    edges.shuffle(rng);
    let flip: Vec<bool> = (0..m.num_edges()).map(|_| rng.gen()).collect();
    let mut verts: Vec<usize> = (0..m.num_vertices()).collect();
    verts.shuffle(rng);
    m.relabeled(&edges, &flip, &verts)
}

fn optional_nine_cycle() {
    if std::env::var("ORMAPS_LONG").is_err() {
        println!("    optional: empty 9-cycle search skipped (set ORMAPS_LONG=1)");
        return;
    }
    let r = search_empty_9_cycle(&SearchBudget::default(), true);
    let shape = r
        .maps
        .first()
        .map_or("not found within budget".to_string(), |m| {
            format!(
                "V={} E={} genus={} faces={:?}",
                m.num_vertices(),
                m.num_edges(),
                m.genus(),
                m.face_size_multiset()
            )
        });
    println!(
        "    optional: empty 9-cycle {shape}, {} nodes, {:.1}s",
        r.nodes,
        secs(r.elapsed)
    );
}

fn main() {
    let start = Instant::now();
    let corpus = map_corpus(16);
    let mut by_edges: BTreeMap<usize, usize> = BTreeMap::new();
    for m in &corpus {
        *by_edges.entry(m.num_edges()).or_default() += 1;
    }
    println!(
        "corpus: {} maps with at most 16 darts, by edge count {by_edges:?}",
        corpus.len()
    );

    let mut extra = vec![
        families::tetrahedron(),
        families::octahedron(),
        families::cube(),
        families::wheel(6),
        families::k7_torus(),
        families::torus_grid(6, 6),
    ];
    let mut results: Vec<(u8, &str, Outcome)> = Vec::new();
    results.push((1, "empty circuit certification", criterion_1()));
    results.push((2, "one-cut witnesses c=1,3", criterion_2(&mut extra)));
    results.push((3, "two-cut witness searches", criterion_3(&mut extra)));
    results.push((6, "surgery arithmetic", criterion_6(&mut extra)));
    results.push((4, "threshold corpus sweep", criterion_4(&corpus, &extra)));
    results.push((5, "formula checks", criterion_5()));
    results.push((7, "oracle equivalences", criterion_7(&corpus)));
    optional_nine_cycle();
    results.push((
        8,
        "declared not reproducible",
        Outcome {
            pass: None,
            detail: "end-to-end delta_1 bound for large c (needs external complete-graph embeddings), c>=5 two-cut witnesses, K9/K10 host embeddings".into(),
        },
    ));
    results.sort_by_key(|r| r.0);

    let mut failed = 0;
    for (n, name, o) in &results {
        let tag = match o.pass {
            Some(true) => "PASS",
            Some(false) => {
                failed += 1;
                "FAIL"
            }
            None => "DECLARED",
        };
        println!("criterion {n} [{tag}] {name}: {}", o.detail);
    }
    println!(
        "acceptance: {failed} failed, total {:.1}s",
        secs(start.elapsed())
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
