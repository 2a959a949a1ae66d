//! Per-layer left-to-right orders of the BFS tree, read off the embedding
//! after cutting it open at the root, and the order in which level edges
//! reach the outermost layer.
//!
//! After normalization every non-tree edge joins two degree-2 vertices, so
//! its endpoints are leaves of the BFS tree. Cutting the sphere along the
//! tree leaves a disk bounded by the tree's Euler tour; non-tree edges are
//! chords of that disk, hence they never interleave along the leaf sequence.
//! The leaf sequence is the outermost line once every higher-layer leaf is
//! extended down by its virtual subtree.

use num_bigint::BigUint;

use crate::delta_matched::{innermost_nesters, layer_powers};
use crate::error::{Error, Result};
use crate::graph::Edge;
use crate::preprocess::PreparedGraph;

/// Direction in which children are enumerated around each vertex.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Orientation {
    /// Counter-clockwise successors of the parent edge.
    #[default]
    Forward,
    /// Clockwise; yields every layer order reversed.
    Reverse,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConcentricOrder {
    pub root: usize,
    pub height: usize,
    /// `layers[i]` lists the vertices of layer `i < height` left to right.
    pub layers: Vec<Vec<usize>>,
    /// Index of each vertex inside its layer (0 for the root).
    pub position: Vec<usize>,
    /// Ordered tree children.
    pub children: Vec<Vec<usize>>,
    /// All tree leaves, left to right.
    pub leaf_sequence: Vec<usize>,
    /// Rotation slot at the root of the first child visited.
    pub cut: usize,
    pub orientation: Orientation,
}

impl ConcentricOrder {
    /// Tree edges between consecutive layers must not cross: walking a layer
    /// left to right, parent positions never decrease.
    pub fn check_planarity(&self, parent: &[Option<usize>]) -> Result<()> {
        for (i, layer) in self.layers.iter().enumerate() {
            let mut last = 0;
            for &v in layer {
                let p = parent[v].ok_or_else(|| {
                    Error::EmbeddingMismatch(format!("vertex {v} on layer {i} has no parent"))
                })?;
                let pos = self.position[p];
                if pos < last {
                    return Err(Error::EmbeddingMismatch(format!(
                        "tree edge ({v}, {p}) crosses an earlier tree edge between layers {i} and {}",
                        i + 1
                    )));
                }
                last = pos;
            }
        }
        Ok(())
    }
}

/// Root slot where the cut leaves: the corner of the root on the designated
/// outer face, or slot 0.
fn cut_slot(prepared: &PreparedGraph) -> usize {
    let root = prepared.layering.root;
    let rot = &prepared.rotation;
    let Some(dart) = rot.outer_face() else {
        return 0;
    };
    for (a, b) in rot.trace_face(dart) {
        if a == root {
            return rot.slot(root, b).unwrap();
        }
    }
    0
}

pub fn build_concentric_order(prepared: &PreparedGraph) -> Result<ConcentricOrder> {
    build_concentric_order_with(prepared, Orientation::Forward)
}

pub fn build_concentric_order_with(
    prepared: &PreparedGraph,
    orientation: Orientation,
) -> Result<ConcentricOrder> {
    let layering = &prepared.layering;
    let rot = &prepared.rotation;
    let n = prepared.graph.n();
    let root = layering.root;
    let cut = cut_slot(prepared);

    let mut children = vec![Vec::new(); n];
    for (v, kids) in children.iter_mut().enumerate() {
        let around = rot.around(v);
        let d = around.len();
        if d == 0 {
            continue;
        }
        // first slot to visit, then step through the rotation
        let start = match layering.parent[v] {
            Some(p) => rot.slot(v, p).unwrap(),
            None => (cut + d - 1) % d,
        };
        for i in 1..=d {
            let slot = match orientation {
                Orientation::Forward => (start + i) % d,
                Orientation::Reverse => {
                    let base = if layering.parent[v].is_some() { start } else { cut };
                    (base + d * 2 - i) % d
                }
            };
            let w = around[slot];
            if layering.parent[w] == Some(v) {
                kids.push(w);
            }
        }
    }

    let height = layering.height;
    let mut layers = vec![Vec::new(); height];
    let mut position = vec![0; n];
    let mut leaf_sequence = Vec::new();
    let mut stack = vec![root];
    let mut visited = 0;
    while let Some(v) = stack.pop() {
        visited += 1;
        if v != root {
            let l = layering.layer[v];
            position[v] = layers[l].len();
            layers[l].push(v);
        }
        if children[v].is_empty() {
            leaf_sequence.push(v);
        }
        stack.extend(children[v].iter().rev());
    }
    if visited != n {
        return Err(Error::EmbeddingMismatch(format!(
            "tree traversal reached {visited} of {n} vertices"
        )));
    }
    let order = ConcentricOrder {
        root,
        height,
        layers,
        position,
        children,
        leaf_sequence,
        cut,
        orientation,
    };
    order.check_planarity(&layering.parent)?;
    Ok(order)
}

/// One entry of the extended outermost line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RouteSlot {
    /// A real vertex of layer 0.
    Vertex(usize),
    /// Where the route of a higher-layer leaf meets the outermost line.
    Anchor(usize),
}

impl RouteSlot {
    pub fn vertex(self) -> usize {
        match self {
            RouteSlot::Vertex(v) | RouteSlot::Anchor(v) => v,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelRoute {
    pub edge: Edge,
    pub layer: usize,
    /// Positions of the two endpoints in the extended sequence, ascending.
    pub anchors: (usize, usize),
    /// `(delta - 1)^layer`: the size of the matching replacing this edge.
    pub weight: BigUint,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OuterRouteOrder {
    pub delta: usize,
    pub sequence: Vec<RouteSlot>,
    pub routes: Vec<LevelRoute>,
}

impl OuterRouteOrder {
    /// Anchor intervals must be nested or disjoint.
    pub fn check_laminar(&self) -> Result<()> {
        let intervals: Vec<(usize, usize)> = self.routes.iter().map(|r| r.anchors).collect();
        innermost_nesters(self.sequence.len(), &intervals).map(|_| ())
    }
}

pub fn build_outer_routes(prepared: &PreparedGraph, order: &ConcentricOrder) -> Result<OuterRouteOrder> {
    let layering = &prepared.layering;
    let n = prepared.graph.n();
    let mut slot_of = vec![usize::MAX; n];
    let sequence: Vec<RouteSlot> = order
        .leaf_sequence
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            slot_of[v] = i;
            if layering.layer[v] == 0 {
                RouteSlot::Vertex(v)
            } else {
                RouteSlot::Anchor(v)
            }
        })
        .collect();
    let powers = layer_powers(prepared.delta, layering.height);
    let mut routes = Vec::new();
    for (u, v) in prepared.level_edges() {
        let (a, b) = (slot_of[u], slot_of[v]);
        if a == usize::MAX || b == usize::MAX {
            return Err(Error::EmbeddingMismatch(format!(
                "level edge ({u}, {v}) has an endpoint that is not a tree leaf"
            )));
        }
        let layer = layering.layer[u];
        routes.push(LevelRoute {
            edge: (u, v),
            layer,
            anchors: (a.min(b), a.max(b)),
            weight: powers[layer].clone(),
        });
    }
    let out = OuterRouteOrder {
        delta: prepared.delta,
        sequence,
        routes,
    };
    out.check_laminar()?;
    Ok(out)
}
