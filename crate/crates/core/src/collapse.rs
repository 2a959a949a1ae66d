//! Layout of the normalized graph and its projection back to the input graph.

use serde::{Deserialize, Serialize};

use crate::concentric::{ConcentricOrder, OuterRouteOrder};
use crate::delta_matched::{layout_layered, LayeredMatching, VertexLabels};
use crate::error::{Error, Result};
use crate::graph::Edge;
use crate::layout::QueueLayout;
use crate::preprocess::{PreparedGraph, SubdivisionRecord};

/// Labelling input for the normalized graph: level edges play the role of
/// matching edges, weighted by the size of the matching they stand for.
pub fn layered_from_prepared(
    prepared: &PreparedGraph,
    order: &ConcentricOrder,
    routes: &OuterRouteOrder,
) -> LayeredMatching {
    let layering = &prepared.layering;
    let mut layer_orders = order.layers.clone();
    layer_orders.push(vec![order.root]);
    LayeredMatching {
        delta: prepared.delta,
        root: order.root,
        children: order.children.clone(),
        layer: layering.layer.clone(),
        height: layering.height,
        layer_orders,
        endpoint_sequence: routes.sequence.iter().map(|s| s.vertex()).collect(),
        edges: routes.routes.iter().map(|r| r.edge).collect(),
        weights: routes.routes.iter().map(|r| r.weight.clone()).collect(),
    }
}

pub fn layout_prepared_with_labels(
    prepared: &PreparedGraph,
    order: &ConcentricOrder,
    routes: &OuterRouteOrder,
) -> Result<(QueueLayout, VertexLabels)> {
    layout_layered(&layered_from_prepared(prepared, order, routes))
}

/// Queue layout of the normalized graph with at most `2 delta - 2` queues.
pub fn layout_prepared(prepared: &PreparedGraph) -> Result<QueueLayout> {
    let order = crate::concentric::build_concentric_order(prepared)?;
    let routes = crate::concentric::build_outer_routes(prepared, &order)?;
    layout_prepared_with_labels(prepared, &order, &routes).map(|(l, _)| l)
}

/// Assigns each edge the number of edges in the longest strictly nested chain
/// enclosing it. This is the least number of queues for the given order.
pub fn greedy_queues(position: &[usize], edges: &[Edge]) -> Vec<usize> {
    let spans: Vec<(usize, usize)> = edges
        .iter()
        .map(|&(u, v)| {
            let (a, b) = (position[u], position[v]);
            (a.min(b), a.max(b))
        })
        .collect();
    let mut idx: Vec<usize> = (0..edges.len()).collect();
    idx.sort_unstable_by(|&i, &j| spans[i].0.cmp(&spans[j].0).then(spans[j].1.cmp(&spans[i].1)));
    // reach[d]: largest right end among processed edges at depth d; strictly decreasing
    let mut reach: Vec<usize> = Vec::new();
    let mut depth = vec![0; edges.len()];
    let mut start = 0;
    while start < idx.len() {
        let left = spans[idx[start]].0;
        let mut end = start;
        while end < idx.len() && spans[idx[end]].0 == left {
            let e = idx[end];
            depth[e] = reach.partition_point(|&r| r > spans[e].1);
            end += 1;
        }
        for &e in &idx[start..end] {
            let d = depth[e];
            if d == reach.len() {
                reach.push(spans[e].1);
            } else if reach[d] < spans[e].1 {
                reach[d] = spans[e].1;
            }
        }
        start = end;
    }
    depth
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    /// Maximum degree of the input graph.
    pub delta: usize,
    /// Queues used on the normalized graph.
    pub q1: usize,
    /// Most subdivision vertices placed on one input edge.
    pub k: usize,
    pub lemma1_bound: Option<u128>,
    pub theorem1_bound: u128,
    pub q_final: usize,
    pub within_bound: bool,
}

/// `32 (2 delta - 1)^6 - 1`.
pub fn theoretical_bound(delta: usize) -> Result<u128> {
    if delta < 3 {
        return Err(Error::InvalidDelta(delta));
    }
    let overflow = || Error::BoundOverflow(delta);
    let base = u128::try_from(delta)
        .ok()
        .and_then(|d| d.checked_mul(2))
        .map(|d| d - 1)
        .ok_or_else(overflow)?;
    base.checked_pow(6)
        .and_then(|p| p.checked_mul(32))
        .map(|p| p - 1)
        .ok_or_else(overflow)
}

/// Queues after contracting paths of at most `k + 1` edges back into single
/// edges, starting from `q` queues: `(2q + 2)^(2k) / 2 - 1`, or `q` when
/// nothing was subdivided. `None` on overflow.
pub fn lemma1_bound(q: usize, k: usize) -> Option<u128> {
    if k == 0 {
        return Some(q as u128);
    }
    let base = (q as u128).checked_mul(2)?.checked_add(2)?;
    let exp = u32::try_from(k.checked_mul(2)?).ok()?;
    Some(base.checked_pow(exp)? / 2 - 1)
}

/// Restricts the normalized layout to the original vertices and reassigns
/// queues greedily on the original edges.
pub fn collapse_to_original(
    layout1: &QueueLayout,
    record: &SubdivisionRecord,
    delta: usize,
) -> Result<(QueueLayout, BoundReport)> {
    let n = record.original_n;
    let order: Vec<usize> = layout1.order.iter().copied().filter(|&v| v < n).collect();
    let mut position = vec![usize::MAX; n];
    for (i, &v) in order.iter().enumerate() {
        if position[v] != usize::MAX {
            return Err(Error::RecordMismatch(format!("vertex {v} appears twice")));
        }
        position[v] = i;
    }
    if order.len() != n {
        return Err(Error::RecordMismatch(format!(
            "layout covers {} of {n} original vertices",
            order.len()
        )));
    }
    let edges: Vec<Edge> = record.original_edges().collect();
    let queues = greedy_queues(&position, &edges);
    let layout = QueueLayout::new(order, edges.into_iter().zip(queues));
    let theorem1_bound = theoretical_bound(delta.max(3))?;
    let k = record.max_subdivisions();
    let report = BoundReport {
        delta,
        q1: layout1.num_queues,
        k,
        lemma1_bound: lemma1_bound(layout1.num_queues, k),
        theorem1_bound,
        q_final: layout.num_queues,
        within_bound: layout.num_queues as u128 <= theorem1_bound,
    };
    Ok((layout, report))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bound_values() {
        assert_eq!(theoretical_bound(3).unwrap(), 499_999);
        assert_eq!(theoretical_bound(4).unwrap(), 3_764_767);
        assert!(matches!(theoretical_bound(2), Err(Error::InvalidDelta(2))));
        assert!(matches!(theoretical_bound(usize::MAX), Err(Error::BoundOverflow(_))));
    }

    #[test]
    fn lemma1_values() {
        assert_eq!(lemma1_bound(4, 0), Some(4));
        assert_eq!(lemma1_bound(4, 1), Some(49));
        assert_eq!(lemma1_bound(1, 2), Some(127));
        assert_eq!(lemma1_bound(4, 40), None);
    }

    #[test]
    fn greedy_counts_rainbow_depth() {
        // order 0..6: (0,5) ⊃ (1,4) ⊃ (2,3); (0,1) shares an end with (0,5)
        let pos: Vec<usize> = (0..6).collect();
        let edges = [(0, 5), (1, 4), (2, 3), (0, 1), (3, 5)];
        assert_eq!(greedy_queues(&pos, &edges), vec![0, 1, 2, 0, 0]);
    }

    #[test]
    fn greedy_equal_left_ends_do_not_nest() {
        let pos: Vec<usize> = (0..4).collect();
        let edges = [(0, 3), (0, 2), (0, 1), (1, 2)];
        assert_eq!(greedy_queues(&pos, &edges), vec![0, 0, 0, 1]);
    }
}
