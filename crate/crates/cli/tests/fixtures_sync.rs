//! Keeps the bundled JSON fixtures in lock-step with the programmatic
//! fixtures of the core crate.
//!
//! `bundled_fixtures_match_the_generators` fails whenever a fixture file on
//! disk differs from what the generators produce; run
//! `cargo test -p catbound-cli --test fixtures_sync -- --ignored` to rewrite
//! the files after an intentional change.

use std::fs;
use std::path::PathBuf;

use catbound::fixtures;
use catbound::simplicial::{ComplexFile, MapFile, SimplicialComplex, SimplicialMap};

fn fixtures_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn complex_json(complex: &SimplicialComplex) -> String {
    let mut text = serde_json::to_string_pretty(&ComplexFile::from_complex(complex)).unwrap();
    text.push('\n');
    text
}

fn map_json(map: &SimplicialMap) -> String {
    let mut text = serde_json::to_string_pretty(&MapFile::from_map(map)).unwrap();
    text.push('\n');
    text
}

const DEGREE_P_CIRCLE: &str = r#"{
    "name": "degree_p_circle",
    "complexes": ["../complexes/circle9.json", "../complexes/circle3.json"],
    "maps": ["../maps/wind3_circle9.json"],
    "entities": [
        {"name": "X", "kind": "space", "complex": "circle9"},
        {"name": "Y", "kind": "space", "complex": "circle3"},
        {"name": "diag", "kind": "pair"},
        {"name": "f", "kind": "map", "source": "X", "target": "Y", "map": "wind3_circle9"},
        {"name": "fbar", "kind": "map", "source": "diag", "target": "diag",
         "relation": {"type": "pairOfPowers", "map": "f", "n": 2}}
    ],
    "assertions": [
        {"entity": "diag", "slot": "srelcat", "lo": 1, "hi": 1,
         "label": "known value for the diagonal pair of the circle"}
    ],
    "requests": [
        {"entity": "f", "slot": "TC_2"}
    ],
    "options": {"field": "q", "grades": [2]}
}
"#;

const DISK_PAIR: &str = r#"{
    "name": "disk_pair",
    "complexes": ["../complexes/disk2.json"],
    "maps": ["../maps/id_disk2.json"],
    "entities": [
        {"name": "D", "kind": "pair", "complex": "disk2", "subcomplex": "boundary"},
        {"name": "id", "kind": "map", "source": "D", "target": "D", "map": "id_disk2"}
    ],
    "assertions": [
        {"entity": "id", "slot": "srelcat", "hi": 1,
         "label": "known value for the identity of the disk pair"}
    ],
    "requests": [
        {"entity": "id", "slot": "srelcat"}
    ],
    "options": {"field": "q", "grades": [2]}
}
"#;

const CONTRADICTION: &str = r#"{
    "name": "contradiction",
    "complexes": ["../complexes/circle9.json", "../complexes/circle3.json"],
    "maps": ["../maps/wind3_circle9.json"],
    "entities": [
        {"name": "X", "kind": "space", "complex": "circle9"},
        {"name": "Y", "kind": "space", "complex": "circle3"},
        {"name": "diag", "kind": "pair"},
        {"name": "f", "kind": "map", "source": "X", "target": "Y", "map": "wind3_circle9"},
        {"name": "fbar", "kind": "map", "source": "diag", "target": "diag",
         "relation": {"type": "pairOfPowers", "map": "f", "n": 2}}
    ],
    "assertions": [
        {"entity": "diag", "slot": "srelcat", "lo": 1, "hi": 1,
         "label": "known value for the diagonal pair of the circle"},
        {"entity": "f", "slot": "TC_2", "lo": 2,
         "label": "deliberately inconsistent claim"}
    ],
    "requests": [
        {"entity": "f", "slot": "TC_2"}
    ],
    "options": {"field": "q", "grades": [2]}
}
"#;

/// Every bundled fixture as `(relative path, expected content)`.
fn bundled() -> Vec<(&'static str, String)> {
    let tri = fixtures::circle(3);
    let hex = fixtures::circle(6);
    let nine = fixtures::circle(9);
    let disk = fixtures::disk_pair();
    let torus = fixtures::torus9();
    vec![
        ("complexes/point.json", complex_json(&fixtures::point())),
        ("complexes/circle3.json", complex_json(&tri)),
        ("complexes/circle6.json", complex_json(&hex)),
        ("complexes/circle9.json", complex_json(&nine)),
        ("complexes/sphere2.json", complex_json(&fixtures::sphere2())),
        ("complexes/disk2.json", complex_json(&disk)),
        ("complexes/torus9.json", complex_json(&torus)),
        ("maps/wind1_circle3.json", map_json(&fixtures::degree_map(&tri, &tri))),
        ("maps/wind2_circle6.json", map_json(&fixtures::degree_map(&hex, &tri))),
        ("maps/wind3_circle9.json", map_json(&fixtures::degree_map(&nine, &tri))),
        (
            "maps/const_circle3_circle3.json",
            map_json(&fixtures::constant_map(&tri, &tri, 0)),
        ),
        (
            "maps/const_circle6_circle3.json",
            map_json(&fixtures::constant_map(&hex, &tri, 0)),
        ),
        (
            "maps/id_disk2.json",
            map_json(&fixtures::identity_map_on_pair(&disk, "boundary")),
        ),
        (
            "maps/id_torus9.json",
            map_json(&fixtures::identity_map_on_pair(&torus, "diag")),
        ),
        ("scenarios/degree_p_circle.json", DEGREE_P_CIRCLE.to_string()),
        ("scenarios/disk_pair.json", DISK_PAIR.to_string()),
        ("scenarios/contradiction.json", CONTRADICTION.to_string()),
    ]
}

#[test]
fn bundled_fixtures_match_the_generators() {
    let dir = fixtures_dir();
    let mut missing = Vec::new();
    for (rel, expected) in bundled() {
        let path = dir.join(rel);
        match fs::read_to_string(&path) {
            Ok(actual) => assert_eq!(actual, expected, "fixture `{rel}` is out of date"),
            Err(_) => missing.push(rel),
        }
    }
    assert!(
        missing.is_empty(),
        "missing fixtures {missing:?}; run the ignored regenerate test"
    );
}

#[test]
#[ignore = "rewrites the bundled fixture files"]
fn regenerate_bundled_fixtures() {
    let dir = fixtures_dir();
    for (rel, content) in bundled() {
        let path = dir.join(rel);
        fs::create_dir_all(path.parent().unwrap()).unwrap();
        fs::write(&path, content).unwrap();
    }
}
