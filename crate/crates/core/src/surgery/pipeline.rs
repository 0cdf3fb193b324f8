//! Witnesses for the one-cut threshold: `c`-connected maps whose simple dual
//! has a cut-vertex at a face of size `min1f(c)`, all other faces triangles.

use std::collections::BTreeSet;

use super::{
    build_zc_gadget, central_face, face_ingredient_problems, glue_faces, glue_faces_within,
    interior_fill, k4_wedge, GlueSpec, SurgeryError,
};
use crate::bounds::min1f;
use crate::connectivity::{map_connectivity, vertex_connectivity, Graph};
use crate::dual::{dual, dual_simplicity};
use crate::families::wheel;
use crate::map::{Dart, FaceId, Map, VertexId};

/// Maps supplied by the caller. `fills` are inner-face ingredients: each is
/// `c`-connected with one chordless face of the length to be glued and
/// triangles elsewhere. `torus` is a 6-connected triangulation of the torus.
#[derive(Debug, Clone, Default)]
pub struct Ingredients {
    pub fills: Vec<Map>,
    pub torus: Option<Map>,
}

#[derive(Debug, Clone)]
pub struct PipelineOutput {
    pub map: Map,
    pub steps: Vec<String>,
}

impl PipelineOutput {
    /// Plain-text provenance: one line per step, then the final checks.
    pub fn manifest(&self) -> String {
        let mut out = String::new();
        for (i, s) in self.steps.iter().enumerate() {
            out.push_str(&format!("step {}: {s}\n", i + 1));
        }
        out
    }
}

fn describe(map: &Map) -> String {
    format!(
        "V={} E={} F={} genus={}",
        map.num_vertices(),
        map.num_edges(),
        map.num_faces(),
        map.genus()
    )
}

/// Faces of `map` usable as the glued face of length `l`.
fn ingredient_faces(map: &Map, c: usize, l: usize) -> Result<Vec<FaceId>, SurgeryError> {
    if !map.is_simple_graph() {
        return Err(SurgeryError::MissingIngredient(
            "ingredient is not a simple graph".into(),
        ));
    }
    let kappa = map_connectivity(map)?;
    if kappa < c {
        return Err(SurgeryError::MissingIngredient(format!(
            "ingredient is {kappa}-connected, {c} needed"
        )));
    }
    let odd: Vec<FaceId> = (0..map.num_faces())
        .filter(|&f| map.face(f).size() != 3)
        .collect();
    let candidates: Vec<FaceId> = match (l, odd.as_slice()) {
        (3, []) => (0..map.num_faces()).collect(),
        (_, [f]) if map.face(*f).size() == l => vec![*f],
        _ => {
            return Err(SurgeryError::MissingIngredient(format!(
                "ingredient needs exactly one {l}-face with triangles elsewhere"
            )))
        }
    };
    let good: Vec<FaceId> = candidates
        .into_iter()
        .filter(|&f| face_ingredient_problems(map, f).is_empty())
        .collect();
    if good.is_empty() {
        return Err(SurgeryError::MissingIngredient(format!(
            "no chordless {l}-face meeting its neighbours once"
        )));
    }
    Ok(good)
}

/// Everything the witness must satisfy; empty when it does.
pub fn witness_problems(map: &Map, c: usize) -> Vec<String> {
    let mut out = Vec::new();
    match map_connectivity(map) {
        Ok(k) if k == c => {}
        Ok(k) => out.push(format!("connectivity {k}, expected {c}")),
        Err(e) => out.push(e.to_string()),
    }
    if !dual_simplicity(map).is_simple() {
        out.push("dual is not simple".into());
    }
    let g = Graph::from_map(&dual(map).dual);
    match vertex_connectivity(&g) {
        Ok(1) => {}
        Ok(k) => out.push(format!("dual is {k}-connected, expected a cut-vertex")),
        Err(e) => out.push(format!("dual: {e}")),
    }
    let mut sizes = map.face_sizes_desc();
    let want = min1f(c);
    if sizes.first() != Some(&want) || sizes.drain(1..).any(|s| s != 3) {
        out.push(format!(
            "faces {:?}, expected one {want}-gon and triangles",
            map.face_sizes_desc()
        ));
    }
    out
}

/// One pending identification of a gadget face, named by a dart of the
/// gadget; gadget darts survive every gluing unchanged.
struct Step {
    dart: Dart,
    fill: usize,
}

struct Search<'a> {
    c: usize,
    fills: &'a [(Map, Vec<FaceId>)],
    budget: usize,
}

impl Search<'_> {
    fn run(&mut self, map: &Map, steps: &[Step], log: &mut Vec<String>) -> Option<Map> {
        let Some((step, rest)) = steps.split_first() else {
            return Some(map.clone());
        };
        let (ingredient, faces) = &self.fills[step.fill];
        let fa = map.face_of(step.dart);
        let l = map.face(fa).size();
        for &fb in faces {
            for mirror_b in [false, true] {
                for offset in 0..l {
                    if self.budget == 0 {
                        return None;
                    }
                    self.budget -= 1;
                    let spec = GlueSpec {
                        face_a: fa,
                        face_b: fb,
                        offset,
                        mirror_b,
                        require_simple: true,
                    };
                    let Ok(next) = glue_faces(map, ingredient, &spec) else {
                        continue;
                    };
                    let done = if rest.is_empty() {
                        witness_problems(&next, self.c)
                            .is_empty()
                            .then(|| next.clone())
                    } else {
                        let mark = log.len();
                        let found = self.run(&next, rest, log);
                        if found.is_none() {
                            log.truncate(mark);
                        }
                        found
                    };
                    if let Some(out) = done {
                        log.insert(
                            0,
                            format!(
                                "glue {l}-face with ingredient {} face {fb} offset {offset}{}: {}",
                                step.fill,
                                if mirror_b { " mirrored" } else { "" },
                                describe(&next)
                            ),
                        );
                        return Some(out);
                    }
                }
            }
        }
        None
    }
}

const GLUE_BUDGET: usize = 20_000;

/// Builds a one-cut witness for `c`. `c = 1` is the wedge of two
/// tetrahedra; other values glue inner-face ingredients onto the non-central
/// faces of the `Z_c` gadget. For `c = 3` the ingredients are filled wheels
/// and need not be supplied; `c = 2` and `c = 4` reuse the maps for `3` and `5`.
pub fn pipeline_delta1_witness(
    c: usize,
    ingredients: &Ingredients,
) -> Result<PipelineOutput, SurgeryError> {
    let mut steps = Vec::new();
    let map = match c {
        1 => {
            let w = k4_wedge();
            steps.push(format!("wedge of two tetrahedra: {}", describe(&w)));
            w
        }
        2 | 4 => {
            let mut out = pipeline_delta1_witness(c + 1, ingredients)?;
            out.steps
                .push(format!("a {}-connected map is {c}-connected", c + 1));
            let problems = witness_problems_at_least(&out.map, c);
            if !problems.is_empty() {
                return Err(SurgeryError::Postcondition(problems.join("; ")));
            }
            return Ok(out);
        }
        3 | 5 | 7 => gadget_pipeline(c, ingredients, &mut steps)?,
        6 => torus_pipeline(ingredients, &mut steps)?,
        _ => return Err(SurgeryError::UnsupportedC(c)),
    };
    let problems = witness_problems(&map, c);
    if !problems.is_empty() {
        return Err(SurgeryError::Postcondition(problems.join("; ")));
    }
    steps.push(format!(
        "checks passed: connectivity {c}, simple dual with a cut-vertex, faces {{{}, 3, ...}}",
        min1f(c)
    ));
    Ok(PipelineOutput { map, steps })
}

/// As [`witness_problems`] but with connectivity at least `c`.
fn witness_problems_at_least(map: &Map, c: usize) -> Vec<String> {
    let k = map_connectivity(map).unwrap_or(0);
    let mut out = witness_problems(map, k);
    if k < c {
        out.push(format!("connectivity {k} below {c}"));
    }
    if min1f(k) != min1f(c) {
        out.push(format!("largest face should be {}", min1f(c)));
    }
    out
}

fn default_fill(c: usize, l: usize, steps: &mut Vec<String>) -> Result<Map, SurgeryError> {
    let host = wheel(l * (c - 1));
    let fill = interior_fill(&host, central_face(&host), c, l)?;
    steps.push(format!(
        "ingredient: {l}-cycle filled into the rim of the wheel W{}: {}",
        l * (c - 1),
        describe(&fill.map)
    ));
    Ok(fill.map)
}

/// Supplied fill for an `l`-face, or a filled wheel when `c = 3`.
fn fill_for(
    c: usize,
    l: usize,
    ingredients: &Ingredients,
    steps: &mut Vec<String>,
) -> Result<(Map, Vec<FaceId>), SurgeryError> {
    for m in &ingredients.fills {
        if let Ok(faces) = ingredient_faces(m, c, l) {
            steps.push(format!(
                "ingredient for {l}-faces supplied: {}",
                describe(m)
            ));
            return Ok((m.clone(), faces));
        }
    }
    if c == 3 {
        let m = default_fill(c, l, steps)?;
        let faces = ingredient_faces(&m, c, l)?;
        return Ok((m, faces));
    }
    Err(SurgeryError::MissingIngredient(format!(
        "a {c}-connected map with one chordless {l}-face and triangles elsewhere"
    )))
}

fn gadget_steps(gadget: &Map, fills: &[(Map, Vec<FaceId>)]) -> Vec<Step> {
    let centre = central_face(gadget);
    let mut out = Vec::new();
    for f in 0..gadget.num_faces() {
        if f == centre {
            continue;
        }
        let l = gadget.face(f).size();
        let fill = fills
            .iter()
            .position(|(m, faces)| m.face(faces[0]).size() == l)
            .unwrap();
        out.push(Step {
            dart: gadget.face(f).darts[0],
            fill,
        });
    }
    out
}

fn gadget_pipeline(
    c: usize,
    ingredients: &Ingredients,
    steps: &mut Vec<String>,
) -> Result<Map, SurgeryError> {
    let gadget = build_zc_gadget(c)?;
    steps.push(format!(
        "Z_{c} gadget{}: {} faces {:?}",
        if c == 3 {
            " with step-2 edges subdivided"
        } else {
            ""
        },
        describe(&gadget),
        gadget.face_sizes_desc()
    ));
    let centre = central_face(&gadget);
    let lengths: BTreeSet<usize> = (0..gadget.num_faces())
        .filter(|&f| f != centre)
        .map(|f| gadget.face(f).size())
        .collect();
    let mut fills = Vec::new();
    for &l in &lengths {
        fills.push(fill_for(c, l, ingredients, steps)?);
    }
    let plan = gadget_steps(&gadget, &fills);
    let mut search = Search {
        c,
        fills: &fills,
        budget: GLUE_BUDGET,
    };
    let mut log = Vec::new();
    match search.run(&gadget, &plan, &mut log) {
        Some(map) => {
            steps.extend(log);
            Ok(map)
        }
        None => Err(SurgeryError::Postcondition(format!(
            "no alignment of the ingredients gives a witness for c = {c}"
        ))),
    }
}

/// Two triangular faces whose vertex sets are disjoint and non-adjacent.
pub fn distant_triangles(map: &Map) -> Vec<(FaceId, FaceId)> {
    let verts = |f: FaceId| -> BTreeSet<VertexId> { map.face_vertices(f).into_iter().collect() };
    let mut out = Vec::new();
    for f in 0..map.num_faces() {
        if map.face(f).size() != 3 {
            continue;
        }
        let vf = verts(f);
        let near: BTreeSet<VertexId> = vf
            .iter()
            .flat_map(|&v| map.neighbors(v))
            .chain(vf.iter().copied())
            .collect();
        for g in f + 1..map.num_faces() {
            if map.face(g).size() == 3 && verts(g).is_disjoint(&near) {
                out.push((f, g));
            }
        }
    }
    out
}

/// `c = 6`: the hexagon of the gadget takes a supplied fill, one triangle is
/// glued to a triangle of the torus map and the other triangle to a second,
/// distant triangle of the same torus map, adding a handle.
fn torus_pipeline(ingredients: &Ingredients, steps: &mut Vec<String>) -> Result<Map, SurgeryError> {
    let c = 6;
    let torus = ingredients.torus.as_ref().ok_or_else(|| {
        SurgeryError::MissingIngredient("a 6-connected triangulation of the torus".into())
    })?;
    if torus.genus() != 1
        || torus.faces().iter().any(|f| f.size() != 3)
        || map_connectivity(torus)? < c
    {
        return Err(SurgeryError::MissingIngredient(
            "torus map must be a 6-connected triangulation of genus 1".into(),
        ));
    }
    let gadget = build_zc_gadget(c)?;
    steps.push(format!(
        "Z_6 gadget: {} faces {:?}",
        describe(&gadget),
        gadget.face_sizes_desc()
    ));
    let hex_fill = fill_for(c, 6, ingredients, steps)?;
    let centre = central_face(&gadget);
    let hexagon = (0..gadget.num_faces())
        .find(|&f| gadget.face(f).size() == 6)
        .unwrap();
    let triangles: Vec<Dart> = (0..gadget.num_faces())
        .filter(|&f| f != centre && gadget.face(f).size() == 3)
        .map(|f| gadget.face(f).darts[0])
        .collect();
    let pairs = distant_triangles(torus);
    if pairs.is_empty() {
        return Err(SurgeryError::MissingIngredient(
            "torus map has no two triangles at distance 2".into(),
        ));
    }
    steps.push(format!("torus ingredient: {}", describe(torus)));
    let fills = [hex_fill];
    let plan = [Step {
        dart: gadget.face(hexagon).darts[0],
        fill: 0,
    }];
    let mut budget = GLUE_BUDGET;
    for &(t1, t2) in pairs.iter().take(8) {
        let t2_verts = torus.face_vertices(t2);
        for o1 in 0..3 {
            let spec = GlueSpec::new(gadget.face_of(triangles[0]), t1, o1);
            let Ok(with_torus) = glue_faces(&gadget, torus, &spec) else {
                continue;
            };
            // Surviving torus vertices are renumbered in order after the gadget's.
            let removed: BTreeSet<VertexId> = torus.face_vertices(t1).into_iter().collect();
            let shift = gadget.num_vertices();
            let renum = |v: VertexId| shift + v - removed.iter().filter(|&&r| r < v).count();
            let target: BTreeSet<VertexId> = t2_verts.iter().map(|&v| renum(v)).collect();
            let Some(t2_new) = (0..with_torus.num_faces()).find(|&f| {
                with_torus.face(f).size() == 3
                    && with_torus
                        .face_vertices(f)
                        .into_iter()
                        .collect::<BTreeSet<_>>()
                        == target
            }) else {
                continue;
            };
            for o2 in 0..3 {
                let spec = GlueSpec::new(t2_new, with_torus.face_of(triangles[1]), o2);
                let Ok(handled) = glue_faces_within(&with_torus, &spec) else {
                    continue;
                };
                let mut search = Search {
                    c,
                    fills: &fills,
                    budget,
                };
                let mut log = Vec::new();
                let found = search.run(&handled, &plan, &mut log);
                budget = search.budget;
                if let Some(map) = found {
                    steps.push(format!(
                        "glue triangle with torus face {t1} offset {o1}: {}",
                        describe(&with_torus)
                    ));
                    steps.push(format!(
                        "glue second triangle with torus face {t2} offset {o2}: {}",
                        describe(&handled)
                    ));
                    steps.extend(log);
                    return Ok(map);
                }
                if budget == 0 {
                    break;
                }
            }
        }
    }
    Err(SurgeryError::Postcondition(
        "no alignment of the ingredients gives a witness for c = 6".into(),
    ))
}
