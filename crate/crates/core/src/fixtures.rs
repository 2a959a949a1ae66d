//! Small hand-built instances used across tests and examples.

use crate::delta_matched::DeltaMatchedInstance;
use crate::generate::{self, Generated};
use crate::graph::{rotation_from_coordinates, Graph};
use crate::layout::QueueLayout;

/// K4 drawn as a triangle with a centre vertex (3).
pub fn k4_embedded() -> Generated {
    generate::complete(4).expect("planar")
}

/// K4 under the order 0, 1, 2, 3 with edge (1, 2) alone in its own queue:
/// it is the only edge nested by (0, 3).
pub fn k4_two_queue_layout() -> (Graph, QueueLayout) {
    let g = generate::complete_graph(4);
    let assignment = g
        .edges()
        .iter()
        .map(|&e| (e, usize::from(e == (1, 2))))
        .collect::<Vec<_>>();
    (g, QueueLayout::new(vec![0, 1, 2, 3], assignment))
}

/// Octahedron: outer triangle 0, 1, 2 and inner triangle 3, 4, 5, each inner
/// vertex adjacent to the two outer vertices it sits between.
pub fn octahedron() -> Generated {
    let edges = [
        (0, 1),
        (1, 2),
        (2, 0),
        (3, 4),
        (4, 5),
        (5, 3),
        (3, 1),
        (3, 2),
        (4, 2),
        (4, 0),
        (5, 0),
        (5, 1),
    ];
    let graph = Graph::new(6, edges).expect("simple");
    let at = |r: f64, deg: f64| [r * deg.to_radians().cos(), r * deg.to_radians().sin()];
    let coords = vec![
        at(10.0, 90.0),
        at(10.0, 210.0),
        at(10.0, 330.0),
        at(3.0, 270.0),
        at(3.0, 30.0),
        at(3.0, 150.0),
    ];
    let rotation = rotation_from_coordinates(&graph, &coords).expect("straight-line drawing");
    Generated {
        graph,
        rotation: Some(rotation),
        coords: Some(coords),
    }
}

/// Path 0..5 with the chord (0, 2); rooted at 1 the chord is a level edge
/// whose endpoint 2 has degree three.
pub fn path_with_chord() -> Generated {
    generate::path_with_chord(6).expect("valid size")
}

/// Complete binary tree of height 4 (vertices in BFS order, leaves 15..=30)
/// with a matching whose deepest edge is nested by four others.
pub fn fig5_instance() -> DeltaMatchedInstance {
    let children = (0..31)
        .map(|v| if v < 15 { vec![2 * v + 1, 2 * v + 2] } else { vec![] })
        .collect();
    let matching = vec![
        (15, 16),
        (17, 18),
        (19, 20),
        (21, 30),
        (22, 29),
        (23, 28),
        (24, 27),
        (25, 26),
    ];
    DeltaMatchedInstance::new(3, children, matching).expect("valid instance")
}
