use qlayout::collapse::collapse_to_original;
use qlayout::fixtures;
use qlayout::generate;
use qlayout::graph::{Graph, RotationSystem};
use qlayout::io::{parse_delta_matched, parse_graph};
use qlayout::pipeline::{layout_graph, PipelineOptions};
use qlayout::preprocess::{SubdivisionRecord, VertexOrigin};
use qlayout::verify::{exact_queue_number, validate_layout};
use qlayout::{Error, QueueLayout};

#[test]
fn k4_example_layout_needs_its_second_queue() {
    let (g, layout) = fixtures::k4_two_queue_layout();
    let report = validate_layout(&g, &layout).unwrap();
    assert!(report.valid);
    assert_eq!(layout.num_queues, 2);
    // merging the queues exposes the nested pair
    let merged = QueueLayout::new(layout.order.clone(), g.edges().iter().map(|&e| (e, 0)));
    let report = validate_layout(&g, &merged).unwrap();
    assert_eq!(report.witness, Some(((0, 3), (1, 2))));
    assert_eq!(exact_queue_number(&g, 9).unwrap(), 2);
}

#[test]
fn octahedron_uses_root_enabler_and_collapses() {
    let f = fixtures::octahedron();
    let out = layout_graph(&f.graph, f.rotation.as_ref(), &PipelineOptions::default()).unwrap();
    assert!(out
        .record
        .added
        .iter()
        .any(|a| a.origin == VertexOrigin::RootEnabler));
    assert_eq!(out.layout.order.len(), 6);
    assert!(validate_layout(&f.graph, &out.layout).unwrap().valid);
    assert!(out.report.q_final <= 6);
    assert_eq!(out.report.theorem1_bound, 3_764_767);
}

#[test]
fn explicit_root_is_honoured() {
    let g = generate::prism(6).unwrap();
    // every prism vertex has degree 3, so a user root must have degree 2
    let err = layout_graph(&g.graph, g.rotation.as_ref(), &PipelineOptions { root: Some(0) });
    assert!(err.is_err());
    let f = generate::path_with_chord(8).unwrap();
    let out = layout_graph(&f.graph, f.rotation.as_ref(), &PipelineOptions { root: Some(0) }).unwrap();
    assert!(validate_layout(&f.graph, &out.layout).unwrap().valid);
}

#[test]
fn malformed_inputs_are_rejected() {
    // K4 with a rotation that does not describe a planar drawing
    let json = r#"{"n":4,"edges":[[0,1],[0,2],[0,3],[1,2],[1,3],[2,3]],
        "rotation":{"0":[1,2,3],"1":[0,2,3],"2":[0,1,3],"3":[0,1,2]}}"#;
    assert!(matches!(parse_graph(json), Err(Error::NotPlanar { .. })));

    let disconnected = Graph::new(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
    let rot = RotationSystem::new(
        &disconnected,
        vec![vec![1, 2], vec![2, 0], vec![0, 1], vec![4, 5], vec![5, 3], vec![3, 4]],
    )
    .unwrap();
    let star = generate::tree(3, 1).unwrap();
    assert!(layout_graph(&star.graph, None, &PipelineOptions::default()).is_err());
    // max degree 2 takes the short path even when disconnected
    let out = layout_graph(&disconnected, Some(&rot), &PipelineOptions::default()).unwrap();
    assert_eq!(out.layout.num_queues, 1);

    assert!(parse_delta_matched(r#"{"delta":3,"tree":{"children":{"0":[1,2]}},"matching":[]}"#).is_err());
    assert!(parse_delta_matched("not json").is_err());
}

#[test]
fn collapse_detects_foreign_records() {
    let f = fixtures::k4_embedded();
    let out = layout_graph(&f.graph, f.rotation.as_ref(), &PipelineOptions::default()).unwrap();
    let normalized = out.normalized.unwrap();
    let record = SubdivisionRecord::identity(&generate::complete_graph(normalized.order.len() + 1));
    let err = collapse_to_original(&normalized, &record, 3);
    assert!(matches!(err, Err(Error::RecordMismatch(_))));
}

#[test]
fn trees_and_grids_stay_small() {
    for (arity, h) in [(2, 5), (3, 3)] {
        let g = generate::tree(arity, h).unwrap();
        let out = layout_graph(&g.graph, g.rotation.as_ref(), &PipelineOptions::default()).unwrap();
        assert!(validate_layout(&g.graph, &out.layout).unwrap().valid);
    }
    let g = generate::grid(30).unwrap();
    let out = layout_graph(&g.graph, g.rotation.as_ref(), &PipelineOptions::default()).unwrap();
    assert!(validate_layout(&g.graph, &out.layout).unwrap().valid);
    assert!(out.report.q1 <= 6);
}
