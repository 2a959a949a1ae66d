//! Input normalization: minimum degree two, a degree-2 root, and subdivision
//! of non-tree binding edges and high-degree level edges so that every
//! non-tree edge joins two degree-2 vertices on one layer.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{bfs_layering, edge_key, BfsLayering, Edge, Graph, RotationSystem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VertexOrigin {
    /// One of the two triangle vertices attached to a degree-1 vertex.
    DegreeOneGadget,
    /// Splits an edge when no degree-2 vertex exists.
    RootEnabler,
    /// Splits a binding edge outside the BFS tree.
    BindingSplit,
    /// One of the two vertices splitting a level edge.
    LevelSplit,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgePath {
    pub edge: [usize; 2],
    /// Vertices from `edge[0]` to `edge[1]`, endpoints included.
    pub path: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AddedVertex {
    pub vertex: usize,
    pub origin: VertexOrigin,
}

/// Correspondence between the input graph and its normalized subdivision.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubdivisionRecord {
    pub original_n: usize,
    pub paths: Vec<EdgePath>,
    pub added: Vec<AddedVertex>,
    pub gadget_edges: Vec<[usize; 2]>,
}

impl SubdivisionRecord {
    pub fn identity(graph: &Graph) -> Self {
        SubdivisionRecord {
            original_n: graph.n(),
            paths: graph
                .edges()
                .iter()
                .map(|&(u, v)| EdgePath {
                    edge: [u, v],
                    path: vec![u, v],
                })
                .collect(),
            added: Vec::new(),
            gadget_edges: Vec::new(),
        }
    }

    /// Largest number of subdivision vertices on a single original edge.
    pub fn max_subdivisions(&self) -> usize {
        self.paths
            .iter()
            .map(|p| p.path.len() - 2)
            .max()
            .unwrap_or(0)
    }

    pub fn original_edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.paths.iter().map(|p| edge_key(p.edge[0], p.edge[1]))
    }

    /// Paths plus gadget edges must reproduce exactly the edge set of `g1`.
    pub fn check(&self, g1: &Graph) -> Result<()> {
        let mut rebuilt = BTreeSet::new();
        for p in &self.paths {
            let internal = p.path.len().saturating_sub(2);
            if p.path.len() < 2 || internal > 3 {
                return Err(Error::RecordMismatch(format!(
                    "edge {:?} maps to a path with {internal} internal vertices",
                    p.edge
                )));
            }
            if p.path[0] != p.edge[0] || *p.path.last().unwrap() != p.edge[1] {
                return Err(Error::RecordMismatch(format!("path of {:?} has wrong ends", p.edge)));
            }
            for w in p.path.windows(2) {
                rebuilt.insert(edge_key(w[0], w[1]));
            }
        }
        for e in &self.gadget_edges {
            rebuilt.insert(edge_key(e[0], e[1]));
        }
        let actual: BTreeSet<Edge> = g1.edges().iter().copied().collect();
        if rebuilt != actual || rebuilt.len() != self.paths.iter().map(|p| p.path.len() - 1).sum::<usize>() + self.gadget_edges.len() {
            return Err(Error::RecordMismatch("paths and gadget edges do not rebuild the graph".into()));
        }
        Ok(())
    }
}

/// A graph with its embedding and the record tying it back to the input.
#[derive(Clone, Debug)]
pub struct Embedded {
    pub graph: Graph,
    pub rotation: RotationSystem,
    pub record: SubdivisionRecord,
}

impl Embedded {
    pub fn new(graph: Graph, rotation: RotationSystem) -> Self {
        let record = SubdivisionRecord::identity(&graph);
        Embedded {
            graph,
            rotation,
            record,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Owner {
    Original(usize),
    Gadget,
}

/// Mutable embedded graph used while editing.
struct Builder {
    rot: Vec<Vec<usize>>,
    owner: HashMap<Edge, Owner>,
    record: SubdivisionRecord,
    outer_face: Option<(usize, usize)>,
}

impl Builder {
    fn from(emb: Embedded) -> Self {
        let mut owner = HashMap::with_capacity(emb.graph.m());
        for (i, p) in emb.record.paths.iter().enumerate() {
            for w in p.path.windows(2) {
                owner.insert(edge_key(w[0], w[1]), Owner::Original(i));
            }
        }
        for e in &emb.record.gadget_edges {
            owner.insert(edge_key(e[0], e[1]), Owner::Gadget);
        }
        Builder {
            outer_face: emb.rotation.outer_face(),
            rot: emb.rotation.into_inner(),
            owner,
            record: emb.record,
        }
    }

    fn degree(&self, v: usize) -> usize {
        self.rot[v].len()
    }

    fn new_vertex(&mut self, rot: Vec<usize>, origin: VertexOrigin) -> usize {
        let x = self.rot.len();
        self.rot.push(rot);
        self.record.added.push(AddedVertex { vertex: x, origin });
        x
    }

    fn replace_slot(&mut self, v: usize, old: usize, new: usize) {
        let slot = self.rot[v].iter().position(|&u| u == old).expect("missing rotation entry");
        self.rot[v][slot] = new;
    }

    /// Replaces edge `(a, b)` by the path `a - x - b`; `x` takes over the
    /// rotation slots of the removed edge.
    fn subdivide(&mut self, a: usize, b: usize, origin: VertexOrigin) -> usize {
        let owner = self.owner.remove(&edge_key(a, b)).expect("subdividing a missing edge");
        let x = self.new_vertex(vec![a, b], origin);
        self.replace_slot(a, b, x);
        self.replace_slot(b, a, x);
        self.owner.insert(edge_key(a, x), owner);
        self.owner.insert(edge_key(x, b), owner);
        match owner {
            Owner::Original(i) => {
                let path = &mut self.record.paths[i].path;
                let at = path
                    .windows(2)
                    .position(|w| edge_key(w[0], w[1]) == edge_key(a, b))
                    .unwrap();
                path.insert(at + 1, x);
            }
            Owner::Gadget => {
                let edges = &mut self.record.gadget_edges;
                let at = edges
                    .iter()
                    .position(|e| edge_key(e[0], e[1]) == edge_key(a, b))
                    .unwrap();
                edges[at] = [a, x];
                edges.push([x, b]);
            }
        }
        if let Some(dart) = self.outer_face {
            if dart == (a, b) {
                self.outer_face = Some((a, x));
            } else if dart == (b, a) {
                self.outer_face = Some((b, x));
            }
        }
        x
    }

    fn finish(self) -> Result<Embedded> {
        let n = self.rot.len();
        let graph = Graph::new(n, self.owner.keys().copied())?;
        let mut rotation = RotationSystem::new(&graph, self.rot)?;
        if let Some(dart) = self.outer_face {
            rotation = rotation.with_outer_face(&graph, dart)?;
        }
        Ok(Embedded {
            graph,
            rotation,
            record: self.record,
        })
    }
}

/// Attaches a pendant triangle to every degree-1 vertex.
pub fn ensure_min_degree_two(graph: Graph, rotation: RotationSystem) -> Result<Embedded> {
    let mut b = Builder::from(Embedded::new(graph, rotation));
    let low: Vec<usize> = (0..b.rot.len()).filter(|&v| b.degree(v) == 1).collect();
    for v in low {
        let p = b.rot[v][0];
        let v1 = b.new_vertex(vec![v], VertexOrigin::DegreeOneGadget);
        let v2 = b.new_vertex(vec![v1, v], VertexOrigin::DegreeOneGadget);
        b.rot[v1].push(v2);
        b.rot[v] = vec![p, v1, v2];
        for e in [[v, v1], [v, v2], [v1, v2]] {
            b.owner.insert(edge_key(e[0], e[1]), Owner::Gadget);
            b.record.gadget_edges.push(e);
        }
    }
    b.finish()
}

/// Picks the smallest-id degree-2 vertex, subdividing the smallest edge first
/// if there is none.
pub fn choose_root(emb: Embedded) -> Result<(Embedded, usize)> {
    if let Some(r) = (0..emb.graph.n()).find(|&v| emb.graph.neighbors(v).len() == 2) {
        return Ok((emb, r));
    }
    let &(u, v) = emb
        .graph
        .edges()
        .first()
        .ok_or_else(|| Error::InvalidParams("graph has no edges".into()))?;
    let mut b = Builder::from(emb);
    let r = b.subdivide(u, v, VertexOrigin::RootEnabler);
    Ok((b.finish()?, r))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EdgeKind {
    Tree,
    Level,
}

/// The normalized graph with its BFS layering; every non-tree edge is a
/// level edge between two degree-2 vertices.
#[derive(Clone, Debug)]
pub struct PreparedGraph {
    pub graph: Graph,
    pub rotation: RotationSystem,
    pub layering: BfsLayering,
    pub record: SubdivisionRecord,
    /// Parallel to `graph.edges()`.
    pub kinds: Vec<EdgeKind>,
    /// Degree parameter used for labels: `max(3, max degree)`.
    pub delta: usize,
}

impl PreparedGraph {
    pub fn level_edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.graph
            .edges()
            .iter()
            .zip(&self.kinds)
            .filter(|(_, k)| **k == EdgeKind::Level)
            .map(|(e, _)| *e)
    }

    /// Checks the structural guarantees of the normalization.
    pub fn check(&self) -> Result<()> {
        self.layering.check(&self.graph)?;
        self.record.check(&self.graph)?;
        for (&(u, v), kind) in self.graph.edges().iter().zip(&self.kinds) {
            match kind {
                EdgeKind::Tree if self.layering.is_tree_edge(u, v) => {}
                EdgeKind::Level
                    if self.layering.layer[u] == self.layering.layer[v]
                        && self.graph.neighbors(u).len() == 2
                        && self.graph.neighbors(v).len() == 2 => {}
                _ => {
                    return Err(Error::CorruptedLayering(format!(
                        "edge ({u}, {v}) is classified {kind:?} but violates it"
                    )))
                }
            }
        }
        Ok(())
    }
}

/// Subdivides non-tree binding edges once (the new vertex becomes a tree child
/// of the endpoint nearer the root, on the other endpoint's layer) and level
/// edges with an endpoint of degree above two twice, then re-layers the result.
pub fn subdivide_step1(emb: Embedded, layering: &BfsLayering) -> Result<PreparedGraph> {
    let graph = emb.graph.clone();
    if layering.parent.len() != graph.n() {
        return Err(Error::CorruptedLayering("layering does not cover the graph".into()));
    }
    let root = layering.root;
    let dist = &layering.dist;
    let mut b = Builder::from(emb);
    let mut level = Vec::new();
    for &(u, v) in graph.edges() {
        if layering.is_tree_edge(u, v) {
            continue;
        }
        match dist[u].abs_diff(dist[v]) {
            0 => level.push((u, v)),
            1 => {
                let (near, far) = if dist[u] < dist[v] { (u, v) } else { (v, u) };
                let x = b.subdivide(near, far, VertexOrigin::BindingSplit);
                level.push((far, x));
            }
            gap => {
                return Err(Error::CorruptedLayering(format!(
                    "edge ({u}, {v}) spans {gap} layers"
                )))
            }
        }
    }
    for (u, v) in level {
        if b.degree(u) > 2 || b.degree(v) > 2 {
            let x = b.subdivide(u, v, VertexOrigin::LevelSplit);
            b.subdivide(x, v, VertexOrigin::LevelSplit);
        }
    }
    let Embedded {
        graph: g1,
        rotation,
        record,
    } = b.finish()?;
    let layering1 = bfs_layering(&g1, root, &rotation)?;
    if (0..graph.n()).any(|v| layering1.dist[v] != dist[v]) {
        return Err(Error::CorruptedLayering(
            "subdivision changed distances of original vertices".into(),
        ));
    }
    let kinds = g1
        .edges()
        .iter()
        .map(|&(u, v)| {
            if layering1.is_tree_edge(u, v) {
                EdgeKind::Tree
            } else {
                EdgeKind::Level
            }
        })
        .collect();
    let prepared = PreparedGraph {
        delta: g1.max_degree().max(3),
        graph: g1,
        rotation,
        layering: layering1,
        record,
        kinds,
    };
    prepared.check()?;
    Ok(prepared)
}

/// Full normalization: degree-1 repair, root choice (or the given root),
/// BFS layering and subdivision.
pub fn prepare(graph: Graph, rotation: RotationSystem, root: Option<usize>) -> Result<PreparedGraph> {
    graph.require_connected()?;
    rotation.check_euler(&graph)?;
    let emb = ensure_min_degree_two(graph, rotation)?;
    let (emb, root) = match root {
        Some(r) if emb.graph.degree(r)? == 2 => (emb, r),
        Some(r) => {
            return Err(Error::InvalidParams(format!(
                "root {r} must have degree two after degree-1 repair"
            )))
        }
        None => choose_root(emb)?,
    };
    let layering = bfs_layering(&emb.graph, root, &emb.rotation)?;
    subdivide_step1(emb, &layering)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::graph::rotation_from_coordinates;

    fn embedded(f: crate::generate::Generated) -> (Graph, RotationSystem) {
        (f.graph, f.rotation.unwrap())
    }

    #[test]
    fn k2_gets_two_gadgets() {
        let g = Graph::new(2, [(0, 1)]).unwrap();
        let rot = RotationSystem::new(&g, vec![vec![1], vec![0]]).unwrap();
        let emb = ensure_min_degree_two(g, rot).unwrap();
        assert_eq!(emb.graph.n(), 6);
        assert_eq!(emb.graph.m(), 7);
        assert!((0..6).all(|v| emb.graph.neighbors(v).len() >= 2));
        emb.rotation.check_euler(&emb.graph).unwrap();
        emb.record.check(&emb.graph).unwrap();
    }

    #[test]
    fn cycle_is_untouched() {
        let (g, rot) = embedded(crate::generate::cycle(4).unwrap());
        let emb = ensure_min_degree_two(g.clone(), rot).unwrap();
        assert_eq!(emb.graph, g);
        let (emb, r) = choose_root(emb).unwrap();
        assert_eq!(r, 0);
        assert!(emb.record.added.is_empty());
    }

    #[test]
    fn star_gets_three_gadgets() {
        let (g, rot) = embedded(crate::generate::tree(3, 1).unwrap());
        let emb = ensure_min_degree_two(g, rot).unwrap();
        assert_eq!((emb.graph.n(), emb.graph.m()), (10, 12));
        assert_eq!(emb.record.gadget_edges.len(), 9);
    }

    #[test]
    fn k4_and_octahedron_need_root_enabler() {
        for (g, rot, n) in [
            {
                let f = fixtures::k4_embedded();
                (f.graph, f.rotation.unwrap(), 4)
            },
            {
                let f = fixtures::octahedron();
                (f.graph, f.rotation.unwrap(), 6)
            },
        ] {
            let (emb, r) = choose_root(Embedded::new(g, rot)).unwrap();
            assert_eq!(r, n);
            assert_eq!(emb.record.added, vec![AddedVertex { vertex: n, origin: VertexOrigin::RootEnabler }]);
            assert_eq!(emb.graph.neighbors(r).len(), 2);
            emb.rotation.check_euler(&emb.graph).unwrap();
        }
    }

    #[test]
    fn path_chord_level_edge_is_split_twice() {
        let f = fixtures::path_with_chord();
        let (g, rot) = (f.graph, f.rotation.unwrap());
        let bfs = bfs_layering(&g, 1, &rot).unwrap();
        let prepared = subdivide_step1(Embedded::new(g, rot), &bfs).unwrap();
        let chord = prepared.record.paths.iter().find(|p| p.edge == [0, 2]).unwrap();
        assert_eq!(chord.path.len(), 4);
        let (a, b) = (chord.path[1], chord.path[2]);
        assert_eq!(prepared.layering.layer[a], 2);
        assert_eq!(prepared.layering.layer[b], 2);
        assert_eq!(prepared.layering.parent[a], Some(0));
        assert_eq!(prepared.layering.parent[b], Some(2));
        assert_eq!(prepared.level_edges().collect::<Vec<_>>(), vec![edge_key(a, b)]);
    }

    #[test]
    fn binding_edge_split_once_leaves_level_residue() {
        // 4-cycle rooted at 0 plus pendant path: 0-1, 0-2, 1-3, 2-3 is a square;
        // add 3-4, 1-4 so (1,4) is a non-tree binding edge.
        let g = Graph::new(5, [(0, 1), (0, 2), (1, 3), (2, 3), (3, 4), (1, 4)]).unwrap();
        let coords = [[0.0, 0.0], [-1.0, -1.0], [1.0, -1.0], [0.0, -2.0], [-1.0, -3.0]];
        let rot = rotation_from_coordinates(&g, &coords).unwrap();
        let bfs = bfs_layering(&g, 0, &rot).unwrap();
        // 3 is reached first from 1 (rotation order), so (2,3) is binding non-tree
        let prepared = subdivide_step1(Embedded::new(g, rot), &bfs).unwrap();
        prepared.check().unwrap();
        let binding: Vec<_> = prepared
            .record
            .added
            .iter()
            .filter(|a| a.origin == VertexOrigin::BindingSplit)
            .collect();
        assert!(!binding.is_empty());
        for a in binding {
            let x = a.vertex;
            let p = prepared.layering.parent[x].unwrap();
            assert!(prepared.graph.neighbors(x).contains(&p));
        }
        assert!(prepared.record.max_subdivisions() <= 3);
    }

    #[test]
    fn degree_two_level_edge_untouched() {
        // triangle: root 0, level edge (1,2) with both endpoints of degree 2
        let (g, rot) = embedded(crate::generate::cycle(3).unwrap());
        let bfs = bfs_layering(&g, 0, &rot).unwrap();
        let prepared = subdivide_step1(Embedded::new(g.clone(), rot), &bfs).unwrap();
        assert_eq!(prepared.graph, g);
        assert_eq!(prepared.level_edges().collect::<Vec<_>>(), vec![(1, 2)]);
    }

    #[test]
    fn prepared_rebuilds_and_relayers() {
        for f in [fixtures::octahedron(), fixtures::k4_embedded(), crate::generate::grid(5).unwrap()] {
            let n = f.graph.n();
            let m = f.graph.m();
            let delta = f.graph.max_degree();
            let p = prepare(f.graph, f.rotation.unwrap(), None).unwrap();
            let again = bfs_layering(&p.graph, p.layering.root, &p.rotation).unwrap();
            assert_eq!(again, p.layering);
            assert!(p.graph.max_degree() <= delta.max(3));
            assert!(p.graph.n() <= n + 2 + 3 * m);
            p.rotation.check_euler(&p.graph).unwrap();
            for path in &p.record.paths {
                if path.path.len() == 4 {
                    let mid = edge_key(path.path[1], path.path[2]);
                    let i = p.graph.edge_index(mid.0, mid.1).unwrap();
                    assert_eq!(p.kinds[i], EdgeKind::Level);
                    for (a, b) in [(path.path[0], path.path[1]), (path.path[2], path.path[3])] {
                        assert!(p.layering.is_tree_edge(a, b));
                    }
                }
            }
        }
    }
}
