//! Command-line front end. Every command prints plain `key: value` style text
//! and leaves a run manifest on stderr or in the file given by `--manifest`.
//!
//! Exit codes: 0 success, 1 I/O or usage, 2 invalid input or failed
//! precondition, 3 search budget exhausted.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use sha2::{Digest, Sha256};

use crate::bounds::{
    check_1cut_threshold, check_2cut_threshold, check_hypotheses, ThresholdVerdict,
};
use crate::canon::canonical_code;
use crate::connectivity::{cut_inventory, Graph};
use crate::dual::{dual, emit_dual};
use crate::map::Map;
use crate::rot::{self, emit, emit_with_comments};
use crate::search::{
    empty_spec_text, enumerate_empty, parse_empty_spec, parse_witness_spec, search_empty_9_cycle,
    search_witness, verify_remark24, witness_spec_text, CaseStatus, SearchBudget, SearchResult,
};
use crate::surgery::pipeline::{pipeline_delta1_witness, Ingredients};
use crate::surgery::{
    build_zc_gadget, glue_faces, glue_faces_within, insert_cycle_in_triangles, interior_fill,
    k4_wedge, GlueSpec, PivotOrder,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "ormaps", version, about = "Maps on orientable surfaces")]
pub struct Cli {
    /// Worker threads for parallel searches.
    #[arg(long, global = true, env = "ORMAPS_JOBS")]
    pub jobs: Option<usize>,
    /// Write the run manifest here instead of stderr.
    #[arg(long, global = true)]
    pub manifest: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a `.rot` file and print its counts.
    Validate { file: PathBuf },
    /// List the facial walks.
    Faces { file: PathBuf },
    /// Print the genus.
    Genus { file: PathBuf },
    /// Report dual simplicity and self-duality.
    Dual {
        file: PathBuf,
        /// Write the dual as a `.rot` file.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Vertex connectivity and a minimum cut.
    Connectivity {
        file: PathBuf,
        /// Analyse the dual instead.
        #[arg(long)]
        dual: bool,
    },
    /// Evaluate the face-size thresholds for a c-connected map.
    CheckThresholds {
        file: PathBuf,
        #[arg(long)]
        c: usize,
    },
    /// Run a surgery and write the resulting map.
    #[command(subcommand)]
    Construct(Construct),
    /// Exhaustive searches.
    #[command(subcommand)]
    Search(SearchCmd),
    /// Write a generic labelled-graph description.
    Export {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = ExportFormat::GraphDescription)]
        format: ExportFormat,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ExportFormat {
    GraphDescription,
}

#[derive(Debug, Args)]
pub struct OutArg {
    /// Output `.rot` file; stdout when absent.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum OrderArg {
    PreviousFirst,
    NextFirst,
}

#[derive(Debug, Subcommand)]
pub enum Construct {
    /// Two tetrahedra sharing a vertex.
    K4Wedge(OutArg),
    /// The Z_c gadget.
    Zc {
        #[arg(long)]
        c: usize,
        #[command(flatten)]
        out: OutArg,
    },
    /// Fill a face of the host with a c-connected interior.
    InteriorFill {
        host: PathBuf,
        #[arg(long)]
        face: usize,
        #[arg(long)]
        c: usize,
        #[arg(long)]
        l: usize,
        #[command(flatten)]
        out: OutArg,
    },
    /// Glue two faces, of two maps or of one map.
    Glue {
        a: PathBuf,
        b: Option<PathBuf>,
        #[arg(long)]
        face_a: usize,
        #[arg(long)]
        face_b: usize,
        #[arg(long, default_value_t = 0)]
        offset: usize,
        /// Reflect the second map first.
        #[arg(long)]
        mirror: bool,
        /// Accept a result with parallel edges.
        #[arg(long)]
        allow_multi_edges: bool,
        #[command(flatten)]
        out: OutArg,
    },
    /// Add a 6-cycle through six vertex-disjoint triangles.
    InsertCycle {
        file: PathBuf,
        #[arg(long, value_delimiter = ',')]
        triangles: Vec<usize>,
        #[arg(long, value_delimiter = ',')]
        pivots: Vec<usize>,
        #[arg(long, value_enum, default_value_t = OrderArg::PreviousFirst)]
        order: OrderArg,
        #[command(flatten)]
        out: OutArg,
    },
    /// A c-connected map whose simple dual has a cut-vertex.
    Delta1Witness {
        #[arg(long)]
        c: usize,
        /// Inner-face ingredient maps.
        #[arg(long)]
        fill: Vec<PathBuf>,
        /// A 6-connected triangulation of the torus.
        #[arg(long)]
        torus: Option<PathBuf>,
        #[command(flatten)]
        out: OutArg,
    },
}

#[derive(Debug, Args)]
pub struct BudgetArgs {
    #[arg(long, default_value_t = 2_000_000_000)]
    pub max_nodes: u64,
    /// Wall-clock limit in seconds.
    #[arg(long)]
    pub time_limit: Option<f64>,
}

impl BudgetArgs {
    fn budget(&self) -> SearchBudget {
        SearchBudget {
            max_nodes: self.max_nodes,
            time_limit: self.time_limit.map(Duration::from_secs_f64),
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum SearchCmd {
    /// Empty circuits and pairs. `--spec` takes the text form or `@file`.
    Empty {
        #[arg(long)]
        spec: String,
        #[command(flatten)]
        budget: BudgetArgs,
        /// Write every map found as `<dir>/map-N.rot`.
        #[arg(long)]
        output_dir: Option<PathBuf>,
    },
    /// Threshold witnesses. `--spec` takes the text form or `@file`.
    Witness {
        #[arg(long)]
        spec: String,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long)]
        output_dir: Option<PathBuf>,
    },
    /// Certify the ten cases on empty circuits and pairs.
    Remark24 {
        /// Case names such as `i`, `ii/k=4` or `vii`; all when absent.
        #[arg(long = "case")]
        cases: Vec<String>,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// The genus-3 empty 9-cycle.
    Empty9Cycle {
        #[arg(long)]
        stop_at_first: bool,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long)]
        output_dir: Option<PathBuf>,
    },
}

/// Failure with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

fn io_err(path: &Path, e: impl std::fmt::Display) -> Failure {
    Failure {
        code: EXIT_IO,
        message: format!("{}: {e}", path.display()),
    }
}

fn invalid(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_INVALID,
        message: message.into(),
    }
}

/// Machine-readable record of one run.
#[derive(Debug, Default, Clone)]
pub struct RunManifest {
    pub command: String,
    pub inputs: Vec<(String, String)>,
    pub parameters: Vec<(String, String)>,
    pub checks: Vec<(String, bool)>,
    pub outcome: String,
    pub exit_code: i32,
    pub elapsed: Duration,
}

impl RunManifest {
    fn param(&mut self, key: &str, value: impl ToString) {
        self.parameters.push((key.to_string(), value.to_string()));
    }

    fn check(&mut self, name: &str, ok: bool) {
        self.checks.push((name.to_string(), ok));
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "command: {}", self.command);
        for (path, hash) in &self.inputs {
            let _ = writeln!(s, "input: {path} sha256={hash}");
        }
        for (k, v) in &self.parameters {
            let _ = writeln!(s, "param: {k}={v}");
        }
        for (name, ok) in &self.checks {
            let _ = writeln!(s, "check: {name}={}", if *ok { "pass" } else { "fail" });
        }
        let _ = writeln!(s, "outcome: {}", self.outcome);
        let _ = writeln!(s, "exit: {}", self.exit_code);
        let _ = writeln!(s, "seconds: {:.3}", self.elapsed.as_secs_f64());
        s
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes)
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// The `.rot` text inside a graph description, or the whole text otherwise.
pub fn rot_block(text: &str) -> &str {
    match (text.find("begin rot\n"), text.find("end rot")) {
        (Some(a), Some(b)) if a < b => &text[a + "begin rot\n".len()..b],
        _ => text,
    }
}

fn read_text(path: &Path, manifest: &mut RunManifest) -> Result<String, Failure> {
    let bytes = std::fs::read(path).map_err(|e| io_err(path, e))?;
    manifest
        .inputs
        .push((path.display().to_string(), sha256_hex(&bytes)));
    String::from_utf8(bytes).map_err(|e| invalid(format!("{}: {e}", path.display())))
}

fn read_map(path: &Path, manifest: &mut RunManifest) -> Result<Map, Failure> {
    let text = read_text(path, manifest)?;
    rot::parse_map(rot_block(&text)).map_err(|e| invalid(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| io_err(path, e))
}

fn spec_text(arg: &str, manifest: &mut RunManifest) -> Result<String, Failure> {
    match arg.strip_prefix('@') {
        Some(p) => read_text(Path::new(p), manifest),
        None => Ok(arg.to_string()),
    }
}

fn stats_line(map: &Map) -> String {
    format!(
        "vertices: {}\nedges: {}\nfaces: {}\ngenus: {}\n",
        map.num_vertices(),
        map.num_edges(),
        map.num_faces(),
        map.genus()
    )
}

fn validate(file: &Path, out: &mut String, m: &mut RunManifest) -> Result<i32, Failure> {
    let text = read_text(file, m)?;
    let rots =
        rot::parse(rot_block(&text)).map_err(|e| invalid(format!("{}: {e}", file.display())))?;
    let report = rots.validate();
    m.check("valid", report.is_valid());
    if !report.is_valid() {
        let _ = writeln!(out, "valid: no");
        for v in &report.violations {
            let _ = writeln!(out, "violation: {v}");
        }
        return Ok(EXIT_INVALID);
    }
    let map = rots.to_map().map_err(|e| invalid(e.to_string()))?;
    let _ = writeln!(out, "valid: yes");
    out.push_str(&stats_line(&map));
    let _ = writeln!(out, "simple graph: {}", yes_no(map.is_simple_graph()));
    Ok(EXIT_OK)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn faces(map: &Map, out: &mut String) {
    let _ = writeln!(out, "faces: {}", map.num_faces());
    for f in 0..map.num_faces() {
        let walk: Vec<String> = map.face_vertices(f).iter().map(|v| v.to_string()).collect();
        let _ = writeln!(
            out,
            "f{f}: size {}; walk {}",
            map.face(f).size(),
            walk.join(" ")
        );
    }
}

fn dual_cmd(
    map: &Map,
    output: Option<&Path>,
    out: &mut String,
    m: &mut RunManifest,
) -> Result<i32, Failure> {
    let d = dual(map);
    let self_dual = canonical_code(&d.dual) == canonical_code(map);
    let _ = writeln!(out, "{}; self-dual: {}", d.simplicity, yes_no(self_dual));
    m.check("dual simple", d.simplicity.is_simple());
    if let Some(p) = output {
        write_file(p, &emit_dual(map))?;
    }
    Ok(EXIT_OK)
}

fn connectivity_cmd(map: &Map, use_dual: bool, out: &mut String) -> Result<i32, Failure> {
    let (g, label, prefix) = if use_dual {
        (Graph::from_map(&dual(map).dual), "kappa(dual)", "f")
    } else {
        (Graph::from_map(map), "kappa", "")
    };
    let inv = cut_inventory(&g).map_err(|e| invalid(e.to_string()))?;
    let cut = inv
        .min_cuts
        .first()
        .map(|c| {
            c.iter()
                .map(|v| format!("{prefix}{v}"))
                .collect::<Vec<_>>()
                .join(",")
        })
        .unwrap_or_default();
    let _ = writeln!(out, "{label}={}; cut={{{cut}}}", inv.connectivity);
    let _ = writeln!(
        out,
        "minimum cuts: {}{}",
        inv.min_cuts.len(),
        if inv.truncated { " (truncated)" } else { "" }
    );
    Ok(EXIT_OK)
}

/// Both threshold verdicts, cross-checked against the measured dual
/// connectivity.
fn thresholds(map: &Map, c: usize, out: &mut String, m: &mut RunManifest) -> Result<i32, Failure> {
    let kappa = check_hypotheses(map, c).map_err(|e| invalid(format!("hypothesis: {e}")))?;
    let two = check_2cut_threshold(map, c).map_err(|e| invalid(e.to_string()))?;
    let one = check_1cut_threshold(map, c).map_err(|e| invalid(e.to_string()))?;
    let measured = crate::connectivity::vertex_connectivity(&Graph::from_map(&dual(map).dual))
        .map_err(|e| invalid(e.to_string()))?;
    let _ = writeln!(out, "kappa: {kappa}");
    let _ = writeln!(out, "3-connected dual threshold: {two}");
    let _ = writeln!(out, "2-connected dual threshold: {one}");
    let _ = writeln!(out, "kappa(dual): {measured}");
    let mut consistent = true;
    for v in [&two, &one] {
        if let ThresholdVerdict::Guaranteed(k) = v {
            consistent &= measured >= *k;
        }
    }
    m.check("guarantee holds", consistent);
    if !consistent {
        let _ = writeln!(out, "theorem check: VIOLATED");
        return Err(invalid("measured dual connectivity is below the guarantee"));
    }
    let _ = writeln!(out, "theorem check: consistent");
    Ok(EXIT_OK)
}

/// Vertices, edges and face walks, followed by the map itself in a
/// `begin rot` / `end rot` block that [`rot_block`] recovers.
pub fn graph_description(map: &Map) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "format: graph-description");
    s.push_str(&stats_line(map));
    for v in 0..map.num_vertices() {
        let _ = writeln!(s, "vertex {v}: degree {}", map.degree(v));
    }
    for (e, (a, b)) in map.edge_list().into_iter().enumerate() {
        let _ = writeln!(s, "edge {e}: {a} {b}");
    }
    for f in 0..map.num_faces() {
        let walk: Vec<String> = map.face_vertices(f).iter().map(|v| v.to_string()).collect();
        let _ = writeln!(
            s,
            "face {f}: size {}; walk {}",
            map.face(f).size(),
            walk.join(" ")
        );
    }
    s.push_str("begin rot\n");
    s.push_str(&emit(map));
    s.push_str("end rot\n");
    s
}

fn write_map(map: &Map, note: &str, out: &OutArg, text: &mut String) -> Result<(), Failure> {
    let body = emit_with_comments(map, &[note.to_string()]);
    match &out.output {
        Some(p) => {
            write_file(p, &body)?;
            text.push_str(&stats_line(map));
            let _ = writeln!(text, "written: {}", p.display());
        }
        None => text.push_str(&body),
    }
    Ok(())
}

fn surgery_err(e: impl std::fmt::Display) -> Failure {
    invalid(format!("surgery: {e}"))
}

fn construct(cmd: &Construct, text: &mut String, m: &mut RunManifest) -> Result<i32, Failure> {
    match cmd {
        Construct::K4Wedge(out) => write_map(&k4_wedge(), "k4-wedge", out, text)?,
        Construct::Zc { c, out } => {
            m.param("c", c);
            let g = build_zc_gadget(*c).map_err(surgery_err)?;
            write_map(&g, &format!("Z_{c} gadget"), out, text)?;
        }
        Construct::InteriorFill {
            host,
            face,
            c,
            l,
            out,
        } => {
            m.param("face", face);
            m.param("c", c);
            m.param("l", l);
            let host = read_map(host, m)?;
            let fill = interior_fill(&host, *face, *c, *l).map_err(surgery_err)?;
            write_map(
                &fill.map,
                &format!("interior fill, inner face f{}", fill.inner_face),
                out,
                text,
            )?;
            let _ = writeln!(text, "inner face: f{}", fill.inner_face);
        }
        Construct::Glue {
            a,
            b,
            face_a,
            face_b,
            offset,
            mirror,
            allow_multi_edges,
            out,
        } => {
            let spec = GlueSpec {
                face_a: *face_a,
                face_b: *face_b,
                offset: *offset,
                mirror_b: *mirror,
                require_simple: !allow_multi_edges,
            };
            m.param("spec", format!("{spec:?}"));
            let ma = read_map(a, m)?;
            let glued = match b {
                Some(b) => {
                    let mb = read_map(b, m)?;
                    let g = glue_faces(&ma, &mb, &spec).map_err(surgery_err)?;
                    m.check("genus additive", g.genus() == ma.genus() + mb.genus());
                    g
                }
                None => {
                    let g = glue_faces_within(&ma, &spec).map_err(surgery_err)?;
                    m.check("genus plus one", g.genus() == ma.genus() + 1);
                    g
                }
            };
            write_map(&glued, "glued", out, text)?;
        }
        Construct::InsertCycle {
            file,
            triangles,
            pivots,
            order,
            out,
        } => {
            let map = read_map(file, m)?;
            let t: [usize; 6] = triangles
                .as_slice()
                .try_into()
                .map_err(|_| invalid("need six triangles"))?;
            let p: [usize; 6] = pivots
                .as_slice()
                .try_into()
                .map_err(|_| invalid("need six pivots"))?;
            let order = match order {
                OrderArg::PreviousFirst => PivotOrder::PreviousFirst,
                OrderArg::NextFirst => PivotOrder::NextFirst,
            };
            m.param("triangles", format!("{t:?}"));
            m.param("pivots", format!("{p:?}"));
            let r = insert_cycle_in_triangles(&map, &t, &p, order).map_err(surgery_err)?;
            m.check("edges +6", r.map.num_edges() == map.num_edges() + 6);
            m.check("faces -4", r.map.num_faces() + 4 == map.num_faces());
            m.check("genus +5", r.map.genus() == map.genus() + 5);
            write_map(&r.map, "six-cycle insertion", out, text)?;
            let _ = writeln!(text, "24-gon: f{}\nhexagon: f{}", r.big_face, r.hexagon);
        }
        Construct::Delta1Witness {
            c,
            fill,
            torus,
            out,
        } => {
            m.param("c", c);
            let mut ing = Ingredients::default();
            for p in fill {
                ing.fills.push(read_map(p, m)?);
            }
            if let Some(p) = torus {
                ing.torus = Some(read_map(p, m)?);
            }
            let r = pipeline_delta1_witness(*c, &ing).map_err(surgery_err)?;
            write_map(&r.map, &format!("one-cut witness for c={c}"), out, text)?;
            text.push_str(&r.manifest());
            let _ = writeln!(text, "face sizes: {:?}", r.map.face_sizes_desc());
            m.check("witness", true);
        }
    }
    Ok(EXIT_OK)
}

fn dump_maps(maps: &[Map], dir: Option<&Path>, text: &mut String) -> Result<(), Failure> {
    for (i, map) in maps.iter().enumerate() {
        let _ = writeln!(
            text,
            "map {i}: V={} E={} genus={} faces={:?}",
            map.num_vertices(),
            map.num_edges(),
            map.genus(),
            map.face_sizes_desc()
        );
    }
    if let Some(dir) = dir {
        std::fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
        for (i, map) in maps.iter().enumerate() {
            write_file(&dir.join(format!("map-{i}.rot")), &emit(map))?;
        }
    }
    Ok(())
}

fn summary(r: &SearchResult, text: &mut String) {
    let _ = writeln!(text, "found: {}", r.maps.len());
    let _ = writeln!(text, "complete: {}", yes_no(r.complete));
    let _ = writeln!(text, "nodes: {}", r.nodes);
    let _ = writeln!(text, "seconds: {:.3}", r.elapsed.as_secs_f64());
}

fn search(cmd: &SearchCmd, text: &mut String, m: &mut RunManifest) -> Result<i32, Failure> {
    match cmd {
        SearchCmd::Empty {
            spec,
            budget,
            output_dir,
        } => {
            let spec =
                parse_empty_spec(&spec_text(spec, m)?).map_err(|e| invalid(e.to_string()))?;
            m.param("spec", empty_spec_text(&spec).trim().replace('\n', "; "));
            let r = enumerate_empty(&spec, &budget.budget());
            let _ = writeln!(text, "search: {spec}");
            summary(&r, text);
            dump_maps(&r.maps, output_dir.as_deref(), text)?;
            m.check("complete", r.complete);
            Ok(if r.complete { EXIT_OK } else { EXIT_BUDGET })
        }
        SearchCmd::Witness {
            spec,
            budget,
            output_dir,
        } => {
            let spec =
                parse_witness_spec(&spec_text(spec, m)?).map_err(|e| invalid(e.to_string()))?;
            m.param("spec", witness_spec_text(&spec).trim().replace('\n', "; "));
            let r = search_witness(&spec, &budget.budget());
            summary(&r, text);
            dump_maps(&r.maps, output_dir.as_deref(), text)?;
            let code = match (r.maps.is_empty(), r.complete) {
                (false, _) => {
                    let _ = writeln!(text, "result: found");
                    EXIT_OK
                }
                (true, true) => {
                    let _ = writeln!(
                        text,
                        "result: none on at most {} vertices",
                        spec.max_vertices
                    );
                    EXIT_OK
                }
                (true, false) => {
                    let _ = writeln!(text, "result: budget exhausted");
                    EXIT_BUDGET
                }
            };
            Ok(code)
        }
        SearchCmd::Remark24 { cases, budget } => {
            let only: Vec<&str> = cases.iter().map(String::as_str).collect();
            m.param(
                "cases",
                if only.is_empty() {
                    "all".into()
                } else {
                    only.join(",")
                },
            );
            let reports = verify_remark24(&only, &budget.budget());
            if reports.is_empty() {
                return Err(invalid("no case matches"));
            }
            let mut code = EXIT_OK;
            for r in &reports {
                let _ = writeln!(text, "{r}");
                m.check(
                    &format!("case {}", r.case),
                    r.status == CaseStatus::Certified,
                );
                code = code.max(match r.status {
                    CaseStatus::Certified => EXIT_OK,
                    CaseStatus::Refuted(_) => EXIT_INVALID,
                    CaseStatus::BudgetExhausted => EXIT_BUDGET,
                });
            }
            Ok(
                if reports
                    .iter()
                    .any(|r| matches!(r.status, CaseStatus::Refuted(_)))
                {
                    EXIT_INVALID
                } else {
                    code
                },
            )
        }
        SearchCmd::Empty9Cycle {
            stop_at_first,
            budget,
            output_dir,
        } => {
            m.param("stop-at-first", stop_at_first);
            let r = search_empty_9_cycle(&budget.budget(), *stop_at_first);
            summary(&r, text);
            dump_maps(&r.maps, output_dir.as_deref(), text)?;
            if r.maps.is_empty() {
                let _ = writeln!(text, "result: not found within budget");
                return Ok(if r.complete {
                    EXIT_INVALID
                } else {
                    EXIT_BUDGET
                });
            }
            let _ = writeln!(text, "result: found");
            Ok(EXIT_OK)
        }
    }
}

fn dispatch(cli: &Cli, text: &mut String, m: &mut RunManifest) -> Result<i32, Failure> {
    match &cli.command {
        Command::Validate { file } => validate(file, text, m),
        Command::Faces { file } => {
            faces(&read_map(file, m)?, text);
            Ok(EXIT_OK)
        }
        Command::Genus { file } => {
            let _ = writeln!(text, "{}", read_map(file, m)?.genus());
            Ok(EXIT_OK)
        }
        Command::Dual { file, output } => dual_cmd(&read_map(file, m)?, output.as_deref(), text, m),
        Command::Connectivity { file, dual } => connectivity_cmd(&read_map(file, m)?, *dual, text),
        Command::CheckThresholds { file, c } => {
            m.param("c", c);
            thresholds(&read_map(file, m)?, *c, text, m)
        }
        Command::Construct(c) => construct(c, text, m),
        Command::Search(s) => search(s, text, m),
        Command::Export {
            file,
            format: ExportFormat::GraphDescription,
            output,
        } => {
            let desc = graph_description(&read_map(file, m)?);
            match output {
                Some(p) => write_file(p, &desc)?,
                None => text.push_str(&desc),
            }
            Ok(EXIT_OK)
        }
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let shown = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = stdout.write_all(shown.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = stderr.write_all(shown.as_bytes());
                    EXIT_IO
                }
            };
        }
    };
    let start = Instant::now();
    let mut manifest = RunManifest {
        command: args
            .iter()
            .skip(1)
            .map(|a| a.to_string_lossy().into_owned())
            .collect::<Vec<_>>()
            .join(" "),
        ..Default::default()
    };
    if let Some(j) = cli.jobs {
        manifest.param("jobs", j);
    }
    let mut text = String::new();
    let result = match cli.jobs.filter(|&j| j > 0) {
        Some(j) => match rayon::ThreadPoolBuilder::new().num_threads(j).build() {
            Ok(pool) => pool.install(|| dispatch(&cli, &mut text, &mut manifest)),
            Err(e) => Err(Failure {
                code: EXIT_IO,
                message: format!("thread pool: {e}"),
            }),
        },
        None => dispatch(&cli, &mut text, &mut manifest),
    };
    let code = match result {
        Ok(code) => {
            manifest.outcome = match code {
                EXIT_OK => "ok",
                EXIT_BUDGET => "budget exhausted",
                _ => "failed",
            }
            .to_string();
            code
        }
        Err(f) => {
            let _ = writeln!(text, "error: {}", f.message);
            manifest.outcome = format!("error: {}", f.message);
            f.code
        }
    };
    let _ = stdout.write_all(text.as_bytes());
    manifest.exit_code = code;
    manifest.elapsed = start.elapsed();
    let rendered = manifest.render();
    match &cli.manifest {
        Some(p) => {
            if let Err(e) = std::fs::write(p, &rendered) {
                let _ = writeln!(stderr, "{}: {e}", p.display());
                return EXIT_IO;
            }
        }
        None => {
            let _ = stderr.write_all(rendered.as_bytes());
        }
    }
    code
}
