//! Graph data model: simple undirected graphs on dense vertex ids, rotation
//! systems (combinatorial planar embeddings) and BFS layerings.

use std::cmp::Ordering;
use std::collections::VecDeque;
use std::fmt::Write;

use crate::error::{Error, Result};

/// Undirected edge with endpoints stored as `(min, max)`.
pub type Edge = (usize, usize);

#[inline]
pub fn edge_key(u: usize, v: usize) -> Edge {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// A simple undirected graph on vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph, rejecting self-loops, duplicate edges and out-of-range ids.
    /// Edges are kept sorted; adjacency lists follow that order.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut list = Vec::new();
        for (u, v) in edges {
            if u >= n {
                return Err(Error::UnknownVertex(u));
            }
            if v >= n {
                return Err(Error::UnknownVertex(v));
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            list.push(edge_key(u, v));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge(w[0].0, w[0].1));
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &list {
            adj[u].push(v);
            adj[v].push(u);
        }
        Ok(Graph { n, edges: list, adj })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> Result<usize> {
        self.adj
            .get(v)
            .map(Vec::len)
            .ok_or(Error::UnknownVertex(v))
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.binary_search(&edge_key(u, v)).is_ok()
    }

    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.edges.binary_search(&edge_key(u, v)).ok()
    }

    /// Number of connected components (isolated vertices count).
    pub fn components(&self) -> usize {
        let mut seen = vec![false; self.n];
        let mut count = 0;
        let mut stack = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            count += 1;
            seen[s] = true;
            stack.push(s);
            while let Some(v) = stack.pop() {
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        count
    }

    pub fn is_connected(&self) -> bool {
        self.components() <= 1
    }

    pub fn require_connected(&self) -> Result<()> {
        if self.is_connected() {
            Ok(())
        } else {
            Err(Error::Disconnected)
        }
    }

    /// Graphviz rendering for debugging.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph G {\n");
        for v in 0..self.n {
            let _ = writeln!(out, "  {v};");
        }
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "  {u} -- {v};");
        }
        out.push_str("}\n");
        out
    }
}

/// Cyclic counter-clockwise order of neighbors around every vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RotationSystem {
    order: Vec<Vec<usize>>,
    // per vertex: (neighbor, slot) sorted by neighbor
    slots: Vec<Vec<(usize, usize)>>,
    outer_face: Option<(usize, usize)>,
}

impl RotationSystem {
    /// Checks that each rotation lists every incident edge exactly once.
    pub fn new(graph: &Graph, order: Vec<Vec<usize>>) -> Result<Self> {
        if order.len() != graph.n() {
            return Err(Error::InvalidRotation(format!(
                "{} rotations for {} vertices",
                order.len(),
                graph.n()
            )));
        }
        let mut slots = Vec::with_capacity(order.len());
        for (v, rot) in order.iter().enumerate() {
            let mut s: Vec<(usize, usize)> = rot.iter().enumerate().map(|(i, &u)| (u, i)).collect();
            s.sort_unstable();
            let listed: Vec<usize> = s.iter().map(|p| p.0).collect();
            let mut expected = graph.neighbors(v).to_vec();
            expected.sort_unstable();
            if listed != expected {
                return Err(Error::InvalidRotation(format!(
                    "rotation at {v} is {rot:?}, neighbors are {expected:?}"
                )));
            }
            slots.push(s);
        }
        Ok(RotationSystem {
            order,
            slots,
            outer_face: None,
        })
    }

    /// Designates the outer face by a directed edge on its boundary.
    pub fn with_outer_face(mut self, graph: &Graph, dart: (usize, usize)) -> Result<Self> {
        if !graph.has_edge(dart.0, dart.1) {
            return Err(Error::InvalidRotation(format!(
                "outer face dart ({}, {}) is not an edge",
                dart.0, dart.1
            )));
        }
        self.outer_face = Some(dart);
        Ok(self)
    }

    pub fn outer_face(&self) -> Option<(usize, usize)> {
        self.outer_face
    }

    pub fn around(&self, v: usize) -> &[usize] {
        &self.order[v]
    }

    pub fn into_inner(self) -> Vec<Vec<usize>> {
        self.order
    }

    /// Slot of `u` in the rotation at `v`.
    pub fn slot(&self, v: usize, u: usize) -> Option<usize> {
        let s = &self.slots[v];
        s.binary_search_by_key(&u, |p| p.0).ok().map(|i| s[i].1)
    }

    /// Neighbor following `u` counter-clockwise around `v`.
    pub fn succ(&self, v: usize, u: usize) -> usize {
        let rot = &self.order[v];
        let i = self.slot(v, u).expect("not a neighbor");
        rot[(i + 1) % rot.len()]
    }

    pub fn pred(&self, v: usize, u: usize) -> usize {
        let rot = &self.order[v];
        let i = self.slot(v, u).expect("not a neighbor");
        rot[(i + rot.len() - 1) % rot.len()]
    }

    /// Traces the face containing dart `start`. A dart `(a, b)` is followed by
    /// `(b, succ_b(a))`.
    pub fn trace_face(&self, start: (usize, usize)) -> Vec<(usize, usize)> {
        let mut face = vec![start];
        let (mut a, mut b) = start;
        loop {
            let c = self.succ(b, a);
            a = b;
            b = c;
            if (a, b) == start {
                return face;
            }
            face.push((a, b));
        }
    }

    /// All faces as dart cycles. Isolated vertices carry no darts and are not listed.
    pub fn faces(&self) -> Vec<Vec<(usize, usize)>> {
        let offsets: Vec<usize> = self
            .order
            .iter()
            .scan(0, |acc, r| {
                let o = *acc;
                *acc += r.len();
                Some(o)
            })
            .collect();
        let total: usize = self.order.iter().map(Vec::len).sum();
        let mut used = vec![false; total];
        let mut faces = Vec::new();
        for a in 0..self.order.len() {
            for (i, &b) in self.order[a].iter().enumerate() {
                if used[offsets[a] + i] {
                    continue;
                }
                let face = self.trace_face((a, b));
                for &(x, y) in &face {
                    used[offsets[x] + self.slot(x, y).unwrap()] = true;
                }
                faces.push(face);
            }
        }
        faces
    }

    /// Euler check: a planar embedding of a graph with `c` components has
    /// `2c - n + m` faces, counting one face per isolated vertex.
    pub fn check_euler(&self, graph: &Graph) -> Result<usize> {
        let isolated = (0..graph.n()).filter(|&v| graph.neighbors(v).is_empty()).count();
        let faces = self.faces().len() + isolated;
        let expected = 2 * graph.components() as i64 - graph.n() as i64 + graph.m() as i64;
        if faces as i64 == expected {
            Ok(faces)
        } else {
            Err(Error::NotPlanar { faces, expected })
        }
    }
}

/// Counter-clockwise angular comparison of direction vectors, starting at the
/// positive x axis.
fn angle_cmp(a: (f64, f64), b: (f64, f64)) -> Ordering {
    let half = |d: (f64, f64)| u8::from(!(d.1 > 0.0 || (d.1 == 0.0 && d.0 > 0.0)));
    half(a).cmp(&half(b)).then_with(|| {
        let cross = a.0 * b.1 - a.1 * b.0;
        0.0.partial_cmp(&cross).unwrap_or(Ordering::Equal)
    })
}

/// Rotation at every vertex = neighbors sorted counter-clockwise by angle.
pub fn rotation_from_coordinates(graph: &Graph, coords: &[[f64; 2]]) -> Result<RotationSystem> {
    if coords.len() != graph.n() {
        return Err(Error::InvalidParams(format!(
            "{} coordinates for {} vertices",
            coords.len(),
            graph.n()
        )));
    }
    let mut order = Vec::with_capacity(graph.n());
    for v in 0..graph.n() {
        let dir = |u: usize| (coords[u][0] - coords[v][0], coords[u][1] - coords[v][1]);
        let mut nbrs = graph.neighbors(v).to_vec();
        for &u in &nbrs {
            if dir(u) == (0.0, 0.0) {
                return Err(Error::DegenerateCoordinates(u, u, v));
            }
        }
        nbrs.sort_by(|&a, &b| angle_cmp(dir(a), dir(b)).then(a.cmp(&b)));
        for w in nbrs.windows(2) {
            if angle_cmp(dir(w[0]), dir(w[1])) == Ordering::Equal {
                return Err(Error::DegenerateCoordinates(w[0], w[1], v));
            }
        }
        order.push(nbrs);
    }
    let rotation = RotationSystem::new(graph, order)?;
    rotation.check_euler(graph)?;
    Ok(rotation)
}

/// BFS tree with distances and layers `layer(v) = height - dist(v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BfsLayering {
    pub root: usize,
    pub parent: Vec<Option<usize>>,
    pub dist: Vec<usize>,
    pub height: usize,
    pub layer: Vec<usize>,
    /// Discovery order.
    pub order: Vec<usize>,
}

impl BfsLayering {
    pub fn is_tree_edge(&self, u: usize, v: usize) -> bool {
        self.parent[u] == Some(v) || self.parent[v] == Some(u)
    }

    pub fn tree_edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.parent
            .iter()
            .enumerate()
            .filter_map(|(v, p)| p.map(|p| edge_key(v, p)))
    }

    /// Re-checks the BFS invariants against `graph`.
    pub fn check(&self, graph: &Graph) -> Result<()> {
        let bad = |msg: String| Err(Error::CorruptedLayering(msg));
        if self.dist[self.root] != 0 || self.parent[self.root].is_some() {
            return bad("root must have distance 0 and no parent".into());
        }
        for v in 0..graph.n() {
            if let Some(p) = self.parent[v] {
                if self.dist[v] != self.dist[p] + 1 || !graph.has_edge(v, p) {
                    return bad(format!("vertex {v} is not one step below its parent {p}"));
                }
            } else if v != self.root {
                return bad(format!("vertex {v} has no parent"));
            }
            if self.layer[v] + self.dist[v] != self.height {
                return bad(format!("layer of {v} disagrees with its distance"));
            }
        }
        for &(u, v) in graph.edges() {
            if self.dist[u].abs_diff(self.dist[v]) > 1 {
                return bad(format!("edge ({u}, {v}) spans more than one layer"));
            }
        }
        Ok(())
    }
}

/// Deterministic BFS: each vertex scans its rotation starting just after the
/// edge to its parent; the root scans from the first entry of its rotation.
pub fn bfs_layering(graph: &Graph, root: usize, rotation: &RotationSystem) -> Result<BfsLayering> {
    if root >= graph.n() {
        return Err(Error::UnknownVertex(root));
    }
    let n = graph.n();
    let mut parent = vec![None; n];
    let mut dist = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    let mut queue = VecDeque::new();
    dist[root] = 0;
    queue.push_back(root);
    while let Some(v) = queue.pop_front() {
        order.push(v);
        let rot = rotation.around(v);
        let start = match parent[v] {
            Some(p) => rotation.slot(v, p).unwrap() + 1,
            None => 0,
        };
        for i in 0..rot.len() {
            let w = rot[(start + i) % rot.len()];
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                parent[w] = Some(v);
                queue.push_back(w);
            }
        }
    }
    if order.len() != n {
        return Err(Error::Disconnected);
    }
    let height = dist.iter().copied().max().unwrap_or(0);
    let layer = dist.iter().map(|d| height - d).collect();
    Ok(BfsLayering {
        root,
        parent,
        dist,
        height,
        layer,
        order,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4() -> Graph {
        Graph::new(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    fn path_with_chord() -> (Graph, RotationSystem) {
        // v1..v6 = 0..5, chord (v1, v3)
        let g = Graph::new(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 2)]).unwrap();
        let coords = [[0.0, 1.0], [1.0, 0.0], [2.0, 1.0], [3.0, 1.0], [4.0, 1.0], [5.0, 1.0]];
        let rot = rotation_from_coordinates(&g, &coords).unwrap();
        (g, rot)
    }

    #[test]
    fn rejects_loops_and_duplicates() {
        assert!(matches!(Graph::new(3, [(1, 1)]), Err(Error::SelfLoop(1))));
        assert!(matches!(
            Graph::new(3, [(0, 1), (1, 0)]),
            Err(Error::DuplicateEdge(0, 1))
        ));
        assert!(matches!(Graph::new(2, [(0, 2)]), Err(Error::UnknownVertex(2))));
    }

    #[test]
    fn degrees() {
        let g = k4();
        for v in 0..4 {
            assert_eq!(g.degree(v).unwrap(), 3);
        }
        let p = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(p.degree(0).unwrap(), 1);
        assert!(matches!(p.degree(7), Err(Error::UnknownVertex(7))));
    }

    #[test]
    fn square_rotation_follows_cycle() {
        let g = Graph::new(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let coords = [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]];
        let rot = rotation_from_coordinates(&g, &coords).unwrap();
        // corner 0: neighbor 1 at angle 0, neighbor 3 at angle 90
        assert_eq!(rot.around(0), &[1, 3]);
        assert_eq!(rot.around(2), &[3, 1]);
        assert_eq!(rot.check_euler(&g).unwrap(), 2);
    }

    #[test]
    fn k4_with_inner_vertex_has_four_faces() {
        let coords = [[0.0, 0.0], [4.0, 0.0], [2.0, 4.0], [2.0, 1.0]];
        let rot = rotation_from_coordinates(&k4(), &coords).unwrap();
        assert_eq!(rot.check_euler(&k4()).unwrap(), 4);
    }

    #[test]
    fn collinear_neighbors_are_degenerate() {
        let g = Graph::new(3, [(0, 1), (0, 2)]).unwrap();
        let coords = [[0.0, 0.0], [1.0, 0.0], [2.0, 0.0]];
        assert!(matches!(
            rotation_from_coordinates(&g, &coords),
            Err(Error::DegenerateCoordinates(1, 2, 0))
        ));
    }

    #[test]
    fn crossing_rotation_fails_euler() {
        // K4 with the rotation of a twisted drawing
        let g = k4();
        let rot = RotationSystem::new(&g, vec![vec![1, 2, 3], vec![0, 2, 3], vec![0, 1, 3], vec![0, 1, 2]])
            .unwrap();
        assert!(matches!(rot.check_euler(&g), Err(Error::NotPlanar { .. })));
    }

    #[test]
    fn rotation_must_list_neighbors() {
        let g = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        assert!(RotationSystem::new(&g, vec![vec![1], vec![2, 0], vec![1]]).is_ok());
        assert!(RotationSystem::new(&g, vec![vec![1], vec![0, 0], vec![1]]).is_err());
        assert!(RotationSystem::new(&g, vec![vec![1], vec![2], vec![1]]).is_err());
    }

    #[test]
    fn bfs_on_path_with_chord() {
        let (g, rot) = path_with_chord();
        let bfs = bfs_layering(&g, 1, &rot).unwrap();
        assert_eq!(bfs.dist, vec![1, 0, 1, 2, 3, 4]);
        assert_eq!(bfs.height, 4);
        assert_eq!(bfs.layer, vec![3, 4, 3, 2, 1, 0]);
        bfs.check(&g).unwrap();
        assert!(!bfs.is_tree_edge(0, 2));
    }

    #[test]
    fn bfs_star_and_grid() {
        let star = Graph::new(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let rot = RotationSystem::new(&star, vec![vec![1, 2, 3], vec![0], vec![0], vec![0]]).unwrap();
        let bfs = bfs_layering(&star, 0, &rot).unwrap();
        assert_eq!(bfs.height, 1);
        assert!(bfs.dist[1..].iter().all(|&d| d == 1));

        let grid = crate::generate::grid(3).unwrap();
        let bfs = bfs_layering(&grid.graph, 0, grid.rotation.as_ref().unwrap()).unwrap();
        assert_eq!(bfs.height, 4);
    }

    #[test]
    fn bfs_rejects_disconnected() {
        let g = Graph::new(3, [(0, 1)]).unwrap();
        let rot = RotationSystem::new(&g, vec![vec![1], vec![0], vec![]]).unwrap();
        assert!(matches!(bfs_layering(&g, 0, &rot), Err(Error::Disconnected)));
    }

    #[test]
    fn dot_lists_edges() {
        let dot = k4().to_dot();
        assert_eq!(dot.matches(" -- ").count(), 6);
    }
}
