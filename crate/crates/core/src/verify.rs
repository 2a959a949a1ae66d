//! Layout validation, rainbow measurement and an exact queue-number search
//! for small graphs.

use std::collections::{BTreeMap, HashSet};
use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{edge_key, Edge, Graph};
use crate::layout::QueueLayout;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub valid: bool,
    /// First nesting pair found: the outer edge, then the inner one.
    pub witness: Option<(Edge, Edge)>,
    pub max_rainbow_per_queue: BTreeMap<usize, usize>,
}

fn positions(order: &[usize], n: usize) -> Result<Vec<usize>> {
    let mut pos = vec![usize::MAX; n];
    for (i, &v) in order.iter().enumerate() {
        if v >= n {
            return Err(Error::NotPermutation(format!("vertex {v} out of range")));
        }
        if pos[v] != usize::MAX {
            return Err(Error::NotPermutation(format!("vertex {v} appears twice")));
        }
        pos[v] = i;
    }
    if order.len() != n {
        return Err(Error::NotPermutation(format!("order has {} of {n} vertices", order.len())));
    }
    Ok(pos)
}

/// Finds a strictly nested pair among `spans`, scanning by left end and
/// comparing against the farthest-reaching edge with a smaller left end.
fn find_nesting(spans: &[((usize, usize), Edge)]) -> Option<(Edge, Edge)> {
    let mut sorted: Vec<&((usize, usize), Edge)> = spans.iter().collect();
    sorted.sort_unstable_by(|a, b| a.0 .0.cmp(&b.0 .0).then(b.0 .1.cmp(&a.0 .1)));
    let mut best: Option<&((usize, usize), Edge)> = None;
    let mut i = 0;
    while i < sorted.len() {
        let left = sorted[i].0 .0;
        let mut j = i;
        while j < sorted.len() && sorted[j].0 .0 == left {
            if let Some(outer) = best {
                if outer.0 .1 > sorted[j].0 .1 {
                    return Some((outer.1, sorted[j].1));
                }
            }
            j += 1;
        }
        if best.is_none_or(|b| b.0 .1 < sorted[i].0 .1) {
            best = Some(sorted[i]);
        }
        i = j;
    }
    None
}

/// Checks that `layout` is a queue layout of `graph`.
pub fn validate_layout(graph: &Graph, layout: &QueueLayout) -> Result<ValidationReport> {
    let pos = positions(&layout.order, graph.n())?;
    let mut seen = HashSet::with_capacity(layout.queues.len());
    // queue -> (endpoint positions, edge)
    type Spans = Vec<((usize, usize), Edge)>;
    let mut by_queue: BTreeMap<usize, Spans> = BTreeMap::new();
    for q in &layout.queues {
        let e = edge_key(q.edge[0], q.edge[1]);
        if !graph.has_edge(e.0, e.1) {
            return Err(Error::InvalidParams(format!("layout assigns ({}, {}), which is not an edge", e.0, e.1)));
        }
        if !seen.insert(e) {
            return Err(Error::DuplicateEdge(e.0, e.1));
        }
        let (a, b) = (pos[e.0], pos[e.1]);
        by_queue.entry(q.queue).or_default().push(((a.min(b), a.max(b)), e));
    }
    if let Some(&(u, v)) = graph.edges().iter().find(|e| !seen.contains(e)) {
        return Err(Error::UnassignedEdge(u, v));
    }
    let mut witness = None;
    let mut max_rainbow_per_queue = BTreeMap::new();
    for (q, spans) in &by_queue {
        if witness.is_none() {
            witness = find_nesting(spans);
        }
        let intervals: Vec<(usize, usize)> = spans.iter().map(|s| s.0).collect();
        max_rainbow_per_queue.insert(*q, rainbow_of_spans(&intervals));
    }
    Ok(ValidationReport {
        valid: witness.is_none(),
        witness,
        max_rainbow_per_queue,
    })
}

/// Longest chain of strictly nested intervals. Uses a Fenwick tree over
/// right ends holding the deepest chain ending inside each suffix.
fn rainbow_of_spans(spans: &[(usize, usize)]) -> usize {
    if spans.is_empty() {
        return 0;
    }
    let width = spans.iter().map(|s| s.1).max().unwrap() + 1;
    // index by reversed right end so "right end > r" becomes a prefix
    let mut tree = vec![0usize; width + 1];
    let query = |tree: &[usize], mut i: usize| {
        let mut best = 0;
        while i > 0 {
            best = best.max(tree[i]);
            i &= i - 1;
        }
        best
    };
    let mut sorted = spans.to_vec();
    sorted.sort_unstable();
    let mut best = 0;
    let mut i = 0;
    let mut pending = Vec::new();
    while i < sorted.len() {
        let left = sorted[i].0;
        pending.clear();
        while i < sorted.len() && sorted[i].0 == left {
            let r = sorted[i].1;
            // reversed index of r is width-1-r; strictly greater right ends
            // occupy reversed indices below it, i.e. prefix length width-1-r
            let depth = query(&tree, width - 1 - r) + 1;
            pending.push((r, depth));
            i += 1;
        }
        for &(r, depth) in &pending {
            best = best.max(depth);
            let mut k = width - r;
            while k <= width {
                if tree[k] < depth {
                    tree[k] = depth;
                }
                k += k & k.wrapping_neg();
            }
        }
    }
    best
}

/// Size of the largest rainbow of `edges` under `order`.
pub fn max_rainbow(order: &[usize], edges: &[Edge]) -> Result<usize> {
    let n = order.iter().max().map_or(0, |&v| v + 1);
    let mut pos = vec![usize::MAX; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut spans = Vec::with_capacity(edges.len());
    for &(u, v) in edges {
        let (a, b) = (
            pos.get(u).copied().unwrap_or(usize::MAX),
            pos.get(v).copied().unwrap_or(usize::MAX),
        );
        if a == usize::MAX || b == usize::MAX {
            return Err(Error::UnknownVertex(if a == usize::MAX { u } else { v }));
        }
        spans.push((a.min(b), a.max(b)));
    }
    Ok(rainbow_of_spans(&spans))
}

pub const DEFAULT_EXACT_LIMIT: usize = 9;

struct Search<'a> {
    n: usize,
    edges: &'a [Edge],
    best: &'a AtomicUsize,
    floor: usize,
}

impl Search<'_> {
    /// Rainbow forced by a prefix: completed edges plus edges leaving the
    /// prefix, which end somewhere after every placed vertex.
    fn forced(&self, pos: &[usize], len: usize) -> usize {
        let open_end = len;
        let spans: Vec<(usize, usize)> = self
            .edges
            .iter()
            .filter_map(|&(u, v)| match (pos[u], pos[v]) {
                (usize::MAX, usize::MAX) => None,
                (a, usize::MAX) | (usize::MAX, a) => Some((a, open_end)),
                (a, b) => Some((a.min(b), a.max(b))),
            })
            .collect();
        rainbow_of_spans(&spans)
    }

    fn run(&self, pos: &mut Vec<usize>, prefix: &mut Vec<usize>) {
        if self.best.load(Ordering::Relaxed) <= self.floor {
            return;
        }
        let len = prefix.len();
        let forced = self.forced(pos, len);
        if forced >= self.best.load(Ordering::Relaxed) {
            return;
        }
        if len == self.n {
            if self.n < 2 || prefix[0] < prefix[self.n - 1] {
                self.best.fetch_min(forced, Ordering::Relaxed);
            }
            return;
        }
        for v in 0..self.n {
            if pos[v] != usize::MAX {
                continue;
            }
            pos[v] = len;
            prefix.push(v);
            self.run(pos, prefix);
            prefix.pop();
            pos[v] = usize::MAX;
        }
    }
}

/// Exact queue number by branch and bound over vertex orders; limited to
/// `limit` vertices. Orders are explored up to reversal.
pub fn exact_queue_number(graph: &Graph, limit: usize) -> Result<usize> {
    let n = graph.n();
    if n > limit {
        return Err(Error::TooLarge { n, limit });
    }
    let m = graph.m();
    if m <= 1 {
        return Ok(m);
    }
    let best = AtomicUsize::new(m + 1);
    let search = Search {
        n,
        edges: graph.edges(),
        best: &best,
        floor: 1,
    };
    (0..n).into_par_iter().for_each(|first| {
        let mut pos = vec![usize::MAX; n];
        pos[first] = 0;
        let mut prefix = vec![first];
        search.run(&mut pos, &mut prefix);
    });
    Ok(best.into_inner())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Expectation {
    Exactly(usize),
    AtMost(usize),
}

impl Expectation {
    pub fn accepts(self, value: usize) -> bool {
        match self {
            Expectation::Exactly(k) => value == k,
            Expectation::AtMost(k) => value <= k,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnownValueRow {
    pub name: String,
    pub n: usize,
    pub m: usize,
    pub expected: Expectation,
    pub computed: usize,
    pub pass: bool,
}

/// Small graphs with known queue numbers: complete graphs (half the vertex
/// count, rounded down), trees and cycles (one), outerplanar graphs (at most
/// two).
pub fn known_value_fixtures() -> Vec<(String, Graph, Expectation)> {
    use crate::generate;
    let mut out = Vec::new();
    for n in 2..=9 {
        out.push((format!("complete-{n}"), generate::complete_graph(n), Expectation::Exactly(n / 2)));
    }
    for n in 3..=9 {
        out.push((format!("cycle-{n}"), generate::cycle(n).unwrap().graph, Expectation::Exactly(1)));
    }
    for n in 2..=9 {
        out.push((format!("path-{n}"), generate::path(n).unwrap().graph, Expectation::Exactly(1)));
    }
    for (arity, height) in [(2, 1), (2, 2), (3, 1), (4, 1), (8, 1)] {
        let g = generate::tree(arity, height).unwrap().graph;
        out.push((format!("tree-{arity}-{height}"), g, Expectation::Exactly(1)));
    }
    let caterpillar = Graph::new(9, [(0, 1), (1, 2), (2, 3), (0, 4), (1, 5), (2, 6), (3, 7), (3, 8)]).unwrap();
    out.push(("caterpillar-9".into(), caterpillar, Expectation::Exactly(1)));
    let spider = Graph::new(9, [(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6), (0, 7), (7, 8)]).unwrap();
    out.push(("spider-9".into(), spider, Expectation::Exactly(1)));
    for n in 4..=9 {
        out.push((format!("fan-{n}"), generate::outerplanar_fan(n).unwrap().graph, Expectation::AtMost(2)));
    }
    // triangulated octagon: zigzag diagonals
    let mut zigzag: Vec<Edge> = (0..8).map(|i| (i, (i + 1) % 8)).collect();
    zigzag.extend([(0, 2), (2, 7), (7, 3), (3, 6), (6, 4)]);
    out.push(("zigzag-8".into(), Graph::new(8, zigzag).unwrap(), Expectation::AtMost(2)));
    out
}

pub fn known_value_suite() -> Result<Vec<KnownValueRow>> {
    known_value_fixtures()
        .into_iter()
        .map(|(name, graph, expected)| {
            let computed = exact_queue_number(&graph, DEFAULT_EXACT_LIMIT)?;
            Ok(KnownValueRow {
                name,
                n: graph.n(),
                m: graph.m(),
                expected,
                computed,
                pass: expected.accepts(computed),
            })
        })
        .collect()
}
