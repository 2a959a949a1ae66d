//! Layouts of Δ-matched trees: a rooted tree whose leaves all share one depth,
//! plus a non-crossing perfect matching on the leaves.
//!
//! The same labelling drives the general pipeline, where level edges carry
//! weights and tree leaves above the bottom layer act as anchors.

use std::collections::VecDeque;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::graph::{edge_key, Edge, Graph};
use crate::layout::QueueLayout;

/// `(delta - 1)^l` for `l` in `0..=height`.
pub fn layer_powers(delta: usize, height: usize) -> Vec<BigUint> {
    let base = BigUint::from(delta.saturating_sub(1));
    let mut out = Vec::with_capacity(height + 1);
    let mut p = BigUint::one();
    for _ in 0..=height {
        out.push(p.clone());
        p *= &base;
    }
    out
}

/// For intervals over positions `0..len`, returns the innermost strictly
/// enclosing interval of each one. Fails if two intervals interleave or share
/// a position.
pub fn innermost_nesters(len: usize, intervals: &[(usize, usize)]) -> Result<Vec<Option<usize>>> {
    let mut at = vec![usize::MAX; len];
    for (i, &(a, b)) in intervals.iter().enumerate() {
        if a >= b || b >= len {
            return Err(Error::InvalidInstance(format!("interval ({a}, {b}) is malformed")));
        }
        for p in [a, b] {
            if at[p] != usize::MAX {
                let j = at[p];
                let (c, d) = intervals[j];
                return Err(Error::InvalidInstance(format!(
                    "intervals ({a}, {b}) and ({c}, {d}) share position {p}"
                )));
            }
            at[p] = i;
        }
    }
    let mut out = vec![None; intervals.len()];
    let mut stack: Vec<usize> = Vec::new();
    for (p, &i) in at.iter().enumerate() {
        if i == usize::MAX {
            continue;
        }
        if intervals[i].0 == p {
            out[i] = stack.last().copied();
            stack.push(i);
        } else {
            let top = stack.pop().unwrap();
            if top != i {
                let (a, b) = intervals[i];
                let (c, d) = intervals[top];
                return Err(Error::NotLaminar(a, b, c, d));
            }
        }
    }
    Ok(out)
}

/// Common input of the labelling: an ordered rooted tree with layers counted
/// from the bottom, and weighted non-crossing edges between tree leaves.
#[derive(Clone, Debug)]
pub struct LayeredMatching {
    pub delta: usize,
    pub root: usize,
    pub children: Vec<Vec<usize>>,
    pub layer: Vec<usize>,
    pub height: usize,
    /// Left-to-right vertices of each layer; the last entry is `[root]`.
    pub layer_orders: Vec<Vec<usize>>,
    /// Leaves (or their anchors) along the outermost line.
    pub endpoint_sequence: Vec<usize>,
    pub edges: Vec<Edge>,
    pub weights: Vec<BigUint>,
}

impl LayeredMatching {
    pub fn n(&self) -> usize {
        self.children.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexLabels {
    /// Per matching edge: total weight of the edges strictly enclosing it.
    pub nesting: Vec<BigUint>,
    /// Per vertex: smallest nesting value in its subtree.
    pub matching: Vec<BigUint>,
    /// Per vertex: `matching / (delta - 1)^layer`.
    pub group: Vec<BigUint>,
}

impl VertexLabels {
    /// Largest bit length over all labels.
    pub fn max_bits(&self) -> u64 {
        self.nesting
            .iter()
            .chain(&self.matching)
            .chain(&self.group)
            .map(|x| x.bits())
            .max()
            .unwrap_or(0)
    }
}

pub fn nesting_values(lm: &LayeredMatching) -> Result<Vec<BigUint>> {
    let mut pos = vec![usize::MAX; lm.n()];
    for (i, &v) in lm.endpoint_sequence.iter().enumerate() {
        pos[v] = i;
    }
    let mut intervals = Vec::with_capacity(lm.edges.len());
    for &(u, v) in &lm.edges {
        let (a, b) = (pos[u], pos[v]);
        if a == usize::MAX || b == usize::MAX {
            return Err(Error::InvalidInstance(format!(
                "edge ({u}, {v}) has an endpoint off the outermost line"
            )));
        }
        intervals.push((a.min(b), a.max(b)));
    }
    let parent = innermost_nesters(lm.endpoint_sequence.len(), &intervals)?;
    // parents open before their children, so sorting by left end suffices
    let mut by_left: Vec<usize> = (0..intervals.len()).collect();
    by_left.sort_unstable_by_key(|&i| intervals[i].0);
    let mut nv = vec![BigUint::zero(); intervals.len()];
    for i in by_left {
        if let Some(p) = parent[i] {
            nv[i] = &nv[p] + &lm.weights[p];
        }
    }
    Ok(nv)
}

pub fn matching_values(lm: &LayeredMatching, nesting: &[BigUint]) -> Result<Vec<BigUint>> {
    let n = lm.n();
    let mut best: Vec<Option<BigUint>> = vec![None; n];
    for (i, &(u, v)) in lm.edges.iter().enumerate() {
        for w in [u, v] {
            match &best[w] {
                Some(b) if b <= &nesting[i] => {}
                _ => best[w] = Some(nesting[i].clone()),
            }
        }
    }
    for layer in &lm.layer_orders {
        for &v in layer {
            for &c in &lm.children[v] {
                let cand = best[c].clone().ok_or(Error::NoMatchingValue(c))?;
                match &best[v] {
                    Some(b) if *b <= cand => {}
                    _ => best[v] = Some(cand),
                }
            }
        }
    }
    best.into_iter()
        .enumerate()
        .map(|(v, b)| b.ok_or(Error::NoMatchingValue(v)))
        .collect()
}

pub fn layer_groups(lm: &LayeredMatching, matching: &[BigUint]) -> Vec<BigUint> {
    let powers = layer_powers(lm.delta, lm.height);
    matching
        .iter()
        .zip(&lm.layer)
        .map(|(mv, &l)| if l == 0 { mv.clone() } else { mv / &powers[l] })
        .collect()
}

pub fn compute_labels(lm: &LayeredMatching) -> Result<VertexLabels> {
    let nesting = nesting_values(lm)?;
    let matching = matching_values(lm, &nesting)?;
    let group = layer_groups(lm, &matching);
    Ok(VertexLabels {
        nesting,
        matching,
        group,
    })
}

/// Layers bottom to top; inside a layer, by group, ties kept in layer order.
pub fn linear_order(lm: &LayeredMatching, labels: &VertexLabels) -> Result<Vec<usize>> {
    let n = lm.n();
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for layer in &lm.layer_orders {
        let mut seq = layer.clone();
        seq.sort_by(|&a, &b| labels.group[a].cmp(&labels.group[b]));
        for &v in &seq {
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::NotPermutation(format!("vertex {v} appears twice")));
            }
        }
        order.extend(seq);
    }
    if order.len() != n {
        return Err(Error::NotPermutation(format!("layers hold {} of {n} vertices", order.len())));
    }
    Ok(order)
}

/// Matching edges go to queue 0; a tree edge from child `x` to parent `y`
/// goes to queue `1 + g(x) - (delta - 1) g(y)`.
pub fn assign_queues(lm: &LayeredMatching, labels: &VertexLabels) -> Result<Vec<(Edge, usize)>> {
    let base = BigUint::from(lm.delta - 1);
    let max = 2 * lm.delta - 4;
    let mut out: Vec<(Edge, usize)> = lm.edges.iter().map(|&(u, v)| (edge_key(u, v), 0)).collect();
    for (y, kids) in lm.children.iter().enumerate() {
        let scaled = &labels.group[y] * &base;
        for &x in kids {
            let gx = &labels.group[x];
            let offset = if gx >= &scaled {
                (gx - &scaled).to_usize().filter(|&k| k <= max)
            } else {
                None
            };
            let k = offset.ok_or_else(|| Error::GroupWindow {
                child: x,
                parent: y,
                offset: if gx >= &scaled {
                    (gx - &scaled).to_string()
                } else {
                    format!("-{}", &scaled - gx)
                },
                max,
            })?;
            out.push((edge_key(x, y), k + 1));
        }
    }
    Ok(out)
}

/// Labels, order and queues in one go.
pub fn layout_layered(lm: &LayeredMatching) -> Result<(QueueLayout, VertexLabels)> {
    let labels = compute_labels(lm)?;
    let order = linear_order(lm, &labels)?;
    let assignment = assign_queues(lm, &labels)?;
    Ok((QueueLayout::new(order, assignment), labels))
}

/// A validated Δ-matched tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaMatchedInstance {
    delta: usize,
    root: usize,
    children: Vec<Vec<usize>>,
    matching: Vec<Edge>,
    depth: Vec<usize>,
    height: usize,
    leaves: Vec<usize>,
}

impl DeltaMatchedInstance {
    /// `children[v]` lists the children of `v` left to right. The matching
    /// pairs must cover every leaf exactly once and be non-crossing with
    /// respect to the left-to-right leaf order.
    pub fn new(delta: usize, children: Vec<Vec<usize>>, matching: Vec<(usize, usize)>) -> Result<Self> {
        if delta < 3 {
            return Err(Error::InvalidDelta(delta));
        }
        let n = children.len();
        if n == 0 {
            return Err(Error::InvalidInstance("empty tree".into()));
        }
        let mut parent = vec![None; n];
        for (v, kids) in children.iter().enumerate() {
            if kids.len() > delta - 1 {
                return Err(Error::InvalidInstance(format!(
                    "vertex {v} has {} children, more than {}",
                    kids.len(),
                    delta - 1
                )));
            }
            for &c in kids {
                if c >= n {
                    return Err(Error::UnknownVertex(c));
                }
                if parent[c].replace(v).is_some() {
                    return Err(Error::InvalidInstance(format!("vertex {c} has two parents")));
                }
            }
        }
        let roots: Vec<usize> = (0..n).filter(|&v| parent[v].is_none()).collect();
        let &[root] = roots.as_slice() else {
            return Err(Error::InvalidInstance(format!("expected one root, found {}", roots.len())));
        };
        let mut depth = vec![usize::MAX; n];
        depth[root] = 0;
        let mut queue = VecDeque::from([root]);
        let mut reached = 1;
        while let Some(v) = queue.pop_front() {
            for &c in &children[v] {
                depth[c] = depth[v] + 1;
                reached += 1;
                queue.push_back(c);
            }
        }
        if reached != n {
            return Err(Error::InvalidInstance("tree contains a cycle".into()));
        }
        let mut leaves = Vec::new();
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            if children[v].is_empty() {
                leaves.push(v);
            }
            stack.extend(children[v].iter().rev());
        }
        let height = depth[leaves[0]];
        if let Some(&l) = leaves.iter().find(|&&l| depth[l] != height) {
            return Err(Error::InvalidInstance(format!(
                "leaf {l} has depth {}, others {height}",
                depth[l]
            )));
        }
        if height == 0 {
            return Err(Error::InvalidInstance("a single vertex has no perfect matching".into()));
        }
        let mut pos = vec![usize::MAX; n];
        for (i, &l) in leaves.iter().enumerate() {
            pos[l] = i;
        }
        let mut intervals = Vec::with_capacity(matching.len());
        let mut edges = Vec::with_capacity(matching.len());
        for &(u, v) in &matching {
            if u >= n || v >= n {
                return Err(Error::UnknownVertex(u.max(v)));
            }
            if pos[u] == usize::MAX || pos[v] == usize::MAX {
                return Err(Error::InvalidInstance(format!("matching edge ({u}, {v}) is not between leaves")));
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            intervals.push((pos[u].min(pos[v]), pos[u].max(pos[v])));
            edges.push((u, v));
        }
        if 2 * edges.len() != leaves.len() {
            return Err(Error::InvalidInstance(format!(
                "{} matching edges cannot cover {} leaves exactly once",
                edges.len(),
                leaves.len()
            )));
        }
        innermost_nesters(leaves.len(), &intervals)?;
        Ok(DeltaMatchedInstance {
            delta,
            root,
            children,
            matching: edges,
            depth,
            height,
            leaves,
        })
    }

    pub fn delta(&self) -> usize {
        self.delta
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn n(&self) -> usize {
        self.children.len()
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn children(&self) -> &[Vec<usize>] {
        &self.children
    }

    pub fn matching(&self) -> &[Edge] {
        &self.matching
    }

    /// Leaves left to right.
    pub fn leaves(&self) -> &[usize] {
        &self.leaves
    }

    pub fn depth(&self, v: usize) -> usize {
        self.depth[v]
    }

    pub fn to_graph(&self) -> Graph {
        let tree = self
            .children
            .iter()
            .enumerate()
            .flat_map(|(v, kids)| kids.iter().map(move |&c| (v, c)));
        Graph::new(self.n(), tree.chain(self.matching.iter().copied()))
            .expect("validated instance is a simple graph")
    }

    pub fn layered(&self) -> LayeredMatching {
        let h = self.height;
        let mut layer_orders = vec![Vec::new(); h + 1];
        let mut stack = vec![self.root];
        while let Some(v) = stack.pop() {
            layer_orders[h - self.depth[v]].push(v);
            stack.extend(self.children[v].iter().rev());
        }
        LayeredMatching {
            delta: self.delta,
            root: self.root,
            children: self.children.clone(),
            layer: self.depth.iter().map(|&d| h - d).collect(),
            height: h,
            layer_orders,
            endpoint_sequence: self.leaves.clone(),
            edges: self.matching.clone(),
            weights: vec![BigUint::one(); self.matching.len()],
        }
    }
}

pub fn layout_delta_matched(instance: &DeltaMatchedInstance) -> Result<QueueLayout> {
    layout_layered(&instance.layered()).map(|(layout, _)| layout)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::fig5_instance;

    fn big(x: u32) -> BigUint {
        BigUint::from(x)
    }

    #[test]
    fn powers_of_two() {
        assert_eq!(layer_powers(3, 3), vec![big(1), big(2), big(4), big(8)]);
    }

    #[test]
    fn nesters_of_two_disjoint_chains() {
        let iv = [(0, 5), (1, 4), (2, 3), (6, 7)];
        assert_eq!(
            innermost_nesters(8, &iv).unwrap(),
            vec![None, Some(0), Some(1), None]
        );
        assert!(matches!(
            innermost_nesters(4, &[(0, 2), (1, 3)]),
            Err(Error::NotLaminar(0, 2, 1, 3))
        ));
    }

    #[test]
    fn smallest_instance_needs_two_queues() {
        let inst = DeltaMatchedInstance::new(3, vec![vec![1, 2], vec![], vec![]], vec![(1, 2)]).unwrap();
        let layout = layout_delta_matched(&inst).unwrap();
        assert_eq!(layout.order, vec![1, 2, 0]);
        assert_eq!(layout.num_queues, 2);
    }

    #[test]
    fn fig5_labels() {
        let inst = fig5_instance();
        let lm = inst.layered();
        let labels = compute_labels(&lm).unwrap();
        // matching edges in input order; nesting counts enclosing edges
        let nv: Vec<u32> = labels.nesting.iter().map(|x| x.to_u32().unwrap()).collect();
        assert_eq!(nv, vec![0, 0, 0, 0, 1, 2, 3, 4]);
        assert_eq!(labels.matching[0], big(0));
        assert_eq!(labels.group[0], big(0));
        // leaf 26 is matched innermost
        assert_eq!(labels.group[26], big(4));
    }

    #[test]
    fn rejects_bad_instances() {
        // crossing matching
        let kids = vec![vec![1, 2], vec![3, 4], vec![5, 6], vec![], vec![], vec![], vec![]];
        assert!(matches!(
            DeltaMatchedInstance::new(3, kids.clone(), vec![(3, 5), (4, 6)]),
            Err(Error::NotLaminar(..))
        ));
        // too many children
        assert!(DeltaMatchedInstance::new(3, vec![vec![1, 2, 3], vec![], vec![], vec![]], vec![]).is_err());
        // uneven leaf depth
        let uneven = vec![vec![1, 2], vec![3, 4], vec![], vec![], vec![]];
        assert!(DeltaMatchedInstance::new(3, uneven, vec![(3, 4)]).is_err());
        // uncovered leaf
        assert!(DeltaMatchedInstance::new(3, kids, vec![(3, 4)]).is_err());
        assert!(matches!(
            DeltaMatchedInstance::new(2, vec![vec![1, 2], vec![], vec![]], vec![(1, 2)]),
            Err(Error::InvalidDelta(2))
        ));
    }

    #[test]
    fn group_window_violation_is_reported() {
        let inst = DeltaMatchedInstance::new(3, vec![vec![1, 2], vec![], vec![]], vec![(1, 2)]).unwrap();
        let lm = inst.layered();
        let mut labels = compute_labels(&lm).unwrap();
        labels.group[1] = big(7);
        assert!(matches!(assign_queues(&lm, &labels), Err(Error::GroupWindow { child: 1, .. })));
    }
}
