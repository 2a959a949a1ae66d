//! End-to-end layout of an embedded planar graph.

use std::collections::VecDeque;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::collapse::{collapse_to_original, greedy_queues, layout_prepared_with_labels, BoundReport};
use crate::concentric::{build_concentric_order, build_outer_routes};
use crate::error::{Error, Result};
use crate::graph::{Graph, RotationSystem};
use crate::layout::QueueLayout;
use crate::preprocess::{prepare, SubdivisionRecord};

#[derive(Clone, Debug, Default)]
pub struct PipelineOptions {
    /// Root of the BFS layering; must have degree two after the degree-one
    /// repair. Chosen automatically when absent.
    pub root: Option<usize>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct StageTimings {
    pub preprocess_ms: f64,
    pub concentric_ms: f64,
    pub labels_ms: f64,
    pub collapse_ms: f64,
}

impl StageTimings {
    pub fn total_ms(&self) -> f64 {
        self.preprocess_ms + self.concentric_ms + self.labels_ms + self.collapse_ms
    }

    /// Stage-wise minimum.
    pub fn min(self, other: StageTimings) -> StageTimings {
        StageTimings {
            preprocess_ms: self.preprocess_ms.min(other.preprocess_ms),
            concentric_ms: self.concentric_ms.min(other.concentric_ms),
            labels_ms: self.labels_ms.min(other.labels_ms),
            collapse_ms: self.collapse_ms.min(other.collapse_ms),
        }
    }
}

fn ms(d: Duration) -> f64 {
    d.as_secs_f64() * 1e3
}

#[derive(Clone, Debug)]
pub struct PipelineOutput {
    /// Layout of the input graph.
    pub layout: QueueLayout,
    /// Layout of the normalized graph, before collapsing.
    pub normalized: Option<QueueLayout>,
    pub record: SubdivisionRecord,
    pub report: BoundReport,
    pub timings: StageTimings,
    /// Largest label bit length.
    pub label_bits: u64,
}

/// Paths and cycles: BFS order from vertex 0 and greedy queues.
fn layout_low_degree(graph: &Graph) -> PipelineOutput {
    let start = Instant::now();
    let n = graph.n();
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in graph.neighbors(v) {
                if !std::mem::replace(&mut seen[w], true) {
                    queue.push_back(w);
                }
            }
        }
    }
    let mut position = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    let queues = greedy_queues(&position, graph.edges());
    let layout = QueueLayout::new(order, graph.edges().iter().copied().zip(queues));
    let q = layout.num_queues;
    PipelineOutput {
        record: SubdivisionRecord::identity(graph),
        report: BoundReport {
            delta: graph.max_degree(),
            q1: q,
            k: 0,
            lemma1_bound: Some(q as u128),
            theorem1_bound: 1,
            q_final: q,
            within_bound: q <= 1,
        },
        layout,
        normalized: None,
        timings: StageTimings {
            labels_ms: ms(start.elapsed()),
            ..Default::default()
        },
        label_bits: 0,
    }
}

/// Queue layout of a connected planar graph with the given embedding.
pub fn layout_graph(
    graph: &Graph,
    rotation: Option<&RotationSystem>,
    options: &PipelineOptions,
) -> Result<PipelineOutput> {
    if graph.max_degree() <= 2 {
        return Ok(layout_low_degree(graph));
    }
    let rotation = rotation.ok_or(Error::MissingEmbedding)?;
    graph.require_connected()?;
    let delta = graph.max_degree();

    let t = Instant::now();
    let prepared = prepare(graph.clone(), rotation.clone(), options.root)?;
    let preprocess_ms = ms(t.elapsed());

    let t = Instant::now();
    let order = build_concentric_order(&prepared)?;
    let routes = build_outer_routes(&prepared, &order)?;
    let concentric_ms = ms(t.elapsed());

    let t = Instant::now();
    let (normalized, labels) = layout_prepared_with_labels(&prepared, &order, &routes)?;
    let labels_ms = ms(t.elapsed());

    let t = Instant::now();
    let (layout, report) = collapse_to_original(&normalized, &prepared.record, delta)?;
    let collapse_ms = ms(t.elapsed());

    Ok(PipelineOutput {
        layout,
        normalized: Some(normalized),
        record: prepared.record,
        report,
        timings: StageTimings {
            preprocess_ms,
            concentric_ms,
            labels_ms,
            collapse_ms,
        },
        label_bits: labels.max_bits(),
    })
}
