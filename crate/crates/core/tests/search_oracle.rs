mod common;

use std::collections::BTreeSet;

use ormaps::canonical_code;
use ormaps::search::{
    check_empty, enumerate_empty, EmptyCircuitSpec, SearchBudget, SideConstraint,
};

fn compare(spec: &EmptyCircuitSpec) {
    let found = enumerate_empty(spec, &SearchBudget::default());
    assert!(found.complete);
    let codes: BTreeSet<_> = found.maps.iter().map(canonical_code).collect();
    assert_eq!(
        codes.len(),
        found.maps.len(),
        "duplicate outputs for {spec}"
    );
    for m in &found.maps {
        assert!(
            check_empty(m, spec),
            "generator output fails the checker: {spec}"
        );
    }
    let brute = common::brute_force_codes(spec.k, &|m| check_empty(m, spec));
    assert_eq!(codes, brute, "{spec}");
}

#[test]
fn circuits_match_brute_force() {
    use SideConstraint::*;
    for k in 3..=4 {
        for constraints in [
            vec![],
            vec![DistinctNeighborFaces],
            vec![SingleNeighborFace],
            vec![FaceNotSharingEdge],
        ] {
            compare(&EmptyCircuitSpec::circuit(k, &constraints));
        }
    }
}

#[test]
fn empty_3_circuit_is_the_triangle() {
    let found = enumerate_empty(&EmptyCircuitSpec::circuit(3, &[]), &SearchBudget::default());
    assert_eq!(found.maps.len(), 1);
    assert_eq!(found.maps[0].num_faces(), 2);
}

#[test]
fn enumeration_is_deterministic() {
    let spec = EmptyCircuitSpec::circuit(6, &[SideConstraint::DistinctNeighborFaces]);
    let a = enumerate_empty(&spec, &SearchBudget::default());
    let b = enumerate_empty(&spec, &SearchBudget::default());
    let ca: Vec<_> = a.maps.iter().map(canonical_code).collect();
    let cb: Vec<_> = b.maps.iter().map(canonical_code).collect();
    assert_eq!(ca, cb);
    for m in &a.maps {
        assert_eq!(m.num_vertices(), 6);
        assert!(m.num_edges() >= 13);
    }
}

#[test]
fn k7_triangulates_the_torus_in_one_chiral_pair() {
    let r =
        ormaps::search::witness::search_complete_triangulation(7, &SearchBudget::default(), false);
    assert!(r.complete);
    assert_eq!(r.maps.len(), 2);
    assert!(r.maps.iter().all(|m| m.genus() == 1));
    assert!(ormaps::canon::is_mirror_equivalent(&r.maps[0], &r.maps[1]));
}
