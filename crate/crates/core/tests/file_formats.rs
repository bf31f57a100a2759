use std::sync::Arc;

use decaynet::config::{ExperimentConfig, GraphSpec, MatrixSpec};
use decaynet::covering::{maximal_disjoint_set, FusionSet};
use decaynet::families::random_decaying;
use decaynet::graph::{lattice_box, random_connected};
use decaynet::io::{format_graph, format_matrix, format_sequence, read_graph, read_matrix, read_sequence};
use decaynet::powers::ConvSequence;
use decaynet::{BeurlingParams, Error, GraphMetrics};
use num_complex::Complex64;

#[test]
fn graph_file_round_trip_preserves_metrics() {
    let dir = tempfile::tempdir().unwrap();
    let g = random_connected(40, 0.1, 3).unwrap();
    let p = dir.path().join("g.txt");
    std::fs::write(&p, format_graph(&g)).unwrap();
    let h = read_graph(&p).unwrap();
    assert_eq!(h.edges(), g.edges());
    assert!(h.label().starts_with("file:"));
    let (mg, mh) = (GraphMetrics::new(&g, 2.0).unwrap(), GraphMetrics::new(&h, 2.0).unwrap());
    assert_eq!(mg, mh);

    let spec: GraphSpec = format!("file:{}", p.display()).parse().unwrap();
    assert_eq!(spec.build(0).unwrap().edges(), g.edges());
}

#[test]
fn matrix_file_round_trip_is_exact() {
    let dir = tempfile::tempdir().unwrap();
    let g = Arc::new(lattice_box(2, 5).unwrap());
    let a = random_decaying(&g, 3, 17);
    let p = dir.path().join("a.txt");
    std::fs::write(&p, format_matrix(&a)).unwrap();
    assert_eq!(read_matrix(&g, &p).unwrap(), a);
    let spec: MatrixSpec = format!("file:{}", p.display()).parse().unwrap();
    assert_eq!(spec.build(&g, 0).unwrap(), a);

    let small = Arc::new(lattice_box(2, 4).unwrap());
    assert!(matches!(read_matrix(&small, &p), Err(Error::DimensionMismatch(_))));
}

#[test]
fn sequence_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let a = ConvSequence::new(-2, vec![Complex64::new(0.25, 0.0), Complex64::new(0.0, -0.5), Complex64::new(0.125, 0.125)])
        .unwrap();
    let p = dir.path().join("s.txt");
    std::fs::write(&p, format!("# three taps\n{}", format_sequence(&a))).unwrap();
    assert_eq!(read_sequence(&p).unwrap(), a);
}

#[test]
fn fusion_set_json_round_trip() {
    let g = Arc::new(lattice_box(2, 8).unwrap());
    let f = maximal_disjoint_set(&g, 2).unwrap();
    let text = serde_json::to_string(&f).unwrap();
    let back = FusionSet::from_json(&g, &text).unwrap();
    assert_eq!(back.vertices(), f.vertices());
    assert_eq!(back.radius(), 2);
    // two centres at distance 1 are not 2-disjoint
    assert!(matches!(FusionSet::from_parts(&g, 2, vec![0, 1]), Err(Error::BadParams(_))));
    assert!(FusionSet::from_json(&g, r#"{"N": 2, "vertices": [0, 64]}"#).is_err());
}

#[test]
fn experiment_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let c = ExperimentConfig {
        experiment: "invert".into(),
        graph: "path:200".parse().unwrap(),
        matrix: Some("a_gamma_path:0.1".parse().unwrap()),
        params: BeurlingParams::new(2.0, 1.5, 1.0).unwrap(),
        seed: 7,
        output: None,
    };
    let p = dir.path().join("c.json");
    std::fs::write(&p, c.to_json().unwrap()).unwrap();
    let back = ExperimentConfig::from_json(&std::fs::read_to_string(&p).unwrap()).unwrap();
    assert_eq!(back, c);
    back.validate().unwrap();
}

#[test]
fn missing_file_is_an_io_error() {
    assert!(matches!(read_graph("/nonexistent/graph.txt"), Err(Error::Io(_))));
}
