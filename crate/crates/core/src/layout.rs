use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::graph::{edge_key, Edge};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QueueEdge {
    pub edge: [usize; 2],
    pub queue: usize,
}

/// A vertex order with a queue per edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QueueLayout {
    pub order: Vec<usize>,
    pub queues: Vec<QueueEdge>,
    pub num_queues: usize,
}

impl QueueLayout {
    /// Edges are normalized and sorted; `num_queues` is one past the largest
    /// queue index used.
    pub fn new(order: Vec<usize>, assignment: impl IntoIterator<Item = (Edge, usize)>) -> Self {
        let mut queues: Vec<QueueEdge> = assignment
            .into_iter()
            .map(|((u, v), queue)| {
                let (a, b) = edge_key(u, v);
                QueueEdge { edge: [a, b], queue }
            })
            .collect();
        queues.sort_unstable_by_key(|q| q.edge);
        let num_queues = queues.iter().map(|q| q.queue + 1).max().unwrap_or(0);
        QueueLayout {
            order,
            queues,
            num_queues,
        }
    }

    /// Position of each vertex in the order; `usize::MAX` for absent ids.
    pub fn positions(&self) -> Vec<usize> {
        let len = self.order.iter().max().map_or(0, |&v| v + 1);
        let mut pos = vec![usize::MAX; len];
        for (i, &v) in self.order.iter().enumerate() {
            pos[v] = i;
        }
        pos
    }

    pub fn queue_map(&self) -> HashMap<Edge, usize> {
        self.queues
            .iter()
            .map(|q| ((q.edge[0], q.edge[1]), q.queue))
            .collect()
    }

    pub fn queue_of(&self, u: usize, v: usize) -> Option<usize> {
        let (a, b) = edge_key(u, v);
        self.queues
            .binary_search_by_key(&[a, b], |q| q.edge)
            .ok()
            .map(|i| self.queues[i].queue)
    }

    /// Edges grouped by queue.
    pub fn by_queue(&self) -> Vec<Vec<Edge>> {
        let mut out = vec![Vec::new(); self.num_queues];
        for q in &self.queues {
            out[q.queue].push((q.edge[0], q.edge[1]));
        }
        out
    }
}
