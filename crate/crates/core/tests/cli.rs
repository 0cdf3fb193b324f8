//! The command-line front end, run in-process.

use std::path::PathBuf;

use ormaps::cli::{rot_block, run};
use ormaps::rot::parse_map;

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn ormaps(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let all = std::iter::once("ormaps").chain(args.iter().copied());
    let code = run(all, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

#[test]
fn tetrahedron_dual_is_simple_and_self_dual() {
    let (code, out, _) = ormaps(&["dual", &data("tetrahedron.rot")]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().next(), Some("simple; self-dual: yes"));
}

#[test]
fn wedge_dual_has_the_hexagon_as_cut_vertex() {
    let (code, out, _) = ormaps(&["connectivity", &data("k4wedge.rot"), "--dual"]);
    assert_eq!(code, 0);
    let (_, faces, _) = ormaps(&["faces", &data("k4wedge.rot")]);
    let hexagon = faces
        .lines()
        .find(|l| l.contains("size 6"))
        .and_then(|l| l.split(':').next())
        .unwrap()
        .to_string();
    assert_eq!(
        out.lines().next().unwrap(),
        format!("kappa(dual)=1; cut={{{hexagon}}}")
    );
}

#[test]
fn k6_on_the_torus_has_genus_one() {
    let (code, out, _) = ormaps(&["genus", &data("k6torus.rot")]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "1");
}

#[test]
fn export_lists_records_and_round_trips() {
    let (code, out, _) = ormaps(&[
        "export",
        &data("tetrahedron.rot"),
        "--format",
        "graph-description",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("vertices: 4\n") && out.contains("edges: 6\n"));
    assert_eq!(out.lines().filter(|l| l.starts_with("face ")).count(), 4);
    let original = std::fs::read_to_string(data("tetrahedron.rot")).unwrap();
    let a = parse_map(&original).unwrap();
    let b = parse_map(rot_block(&out)).unwrap();
    assert_eq!(ormaps::rot::emit(&a), ormaps::rot::emit(&b));

    let (_, wedge, _) = ormaps(&["export", &data("k4wedge.rot")]);
    assert!(wedge
        .lines()
        .any(|l| l.starts_with("face ") && l.contains("size 6")));
}

#[test]
fn threshold_check_reports_both_verdicts() {
    let (code, out, _) = ormaps(&["check-thresholds", &data("cube.rot"), "--c", "3"]);
    assert_eq!(code, 0);
    assert!(out.contains("3-connected dual threshold: guaranteed"));
    assert!(out.contains("theorem check: consistent"));
    let (code, out, _) = ormaps(&["check-thresholds", &data("cube.rot"), "--c", "4"]);
    assert_eq!(code, 2, "{out}");
}

#[test]
fn exit_codes() {
    assert_eq!(ormaps(&["genus", "/no/such/file.rot"]).0, 1);
    assert_eq!(ormaps(&["no-such-command"]).0, 1);
    assert_eq!(ormaps(&["--help"]).0, 0);
    let dir = std::env::temp_dir().join("ormaps-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("dangling.rot");
    std::fs::write(&bad, "vertices: 3\n0: 1\n1: 0 2\n2: 0\n").unwrap();
    let (code, out, _) = ormaps(&["validate", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(out.contains("valid: no"));
    let (code, _, _) = ormaps(&["search", "remark24", "--case", "vii", "--max-nodes", "100"]);
    assert_eq!(code, 3);
}

#[test]
fn manifest_records_inputs_and_checks() {
    let (_, _, err) = ormaps(&["validate", &data("k7torus.rot")]);
    assert!(err.contains("command: validate"));
    assert!(err
        .lines()
        .any(|l| l.starts_with("input: ") && l.contains("sha256=")));
    assert!(err.contains("check: valid=pass"));
    assert!(err.contains("exit: 0"));
}

#[test]
fn searches_are_deterministic() {
    let args = [
        "--jobs",
        "3",
        "search",
        "empty",
        "--spec",
        "k: 6; mode: pair; constraints: distinct",
    ];
    let (c1, a, _) = ormaps(&args);
    let (c2, b, _) = ormaps(&args);
    assert_eq!((c1, c2), (0, 0));
    let strip = |s: &str| -> String {
        s.lines()
            .filter(|l| !l.starts_with("seconds:"))
            .collect::<Vec<_>>()
            .join("\n")
    };
    assert_eq!(strip(&a), strip(&b));
    assert!(a.contains("found: 4"));
}

#[test]
fn constructs_write_maps() {
    let dir = std::env::temp_dir().join("ormaps-cli-construct");
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("w3.rot");
    let (code, text, _) = ormaps(&[
        "construct",
        "delta1-witness",
        "--c",
        "3",
        "-o",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{text}");
    let m = parse_map(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(m.face_sizes_desc()[..2], [9, 3]);
    let (code, text, _) = ormaps(&["construct", "delta1-witness", "--c", "6"]);
    assert_eq!(code, 2, "{text}");
    let (code, _, _) = ormaps(&[
        "construct",
        "glue",
        &data("tetrahedron.rot"),
        &data("cube.rot"),
        "--face-a",
        "0",
        "--face-b",
        "0",
    ]);
    assert_eq!(code, 2);
}
