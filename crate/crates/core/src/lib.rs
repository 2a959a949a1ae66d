//! Queue layouts of planar graphs of bounded degree.
//!
//! The pipeline normalizes an embedded planar graph into a BFS-layered form
//! whose non-tree edges all lie within a layer, reads per-layer orders off the
//! embedding, labels vertices with nesting-derived group numbers and produces
//! a layout of the normalized graph with at most `2Δ - 2` queues. Collapsing
//! the subdivisions back yields a layout of the input graph, whose queue
//! count is then recomputed exactly for the resulting order.
//!
//! ```
//! use qlayout::{fixtures, pipeline, verify};
//!
//! let g = fixtures::octahedron();
//! let out = pipeline::layout_graph(&g.graph, g.rotation.as_ref(), &Default::default()).unwrap();
//! assert!(verify::validate_layout(&g.graph, &out.layout).unwrap().valid);
//! ```

pub mod bench;
pub mod collapse;
pub mod concentric;
pub mod delta_matched;
pub mod error;
pub mod fixtures;
pub mod generate;
pub mod graph;
pub mod io;
pub mod layout;
pub mod pipeline;
pub mod preprocess;
pub mod render;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{Edge, Graph, RotationSystem};
pub use layout::{QueueEdge, QueueLayout};
